use proptest::prelude::*;

use pmspace::analysis::{limit_set, specialization_order, SequenceSpec};
use pmspace::catalog::{random_pm_space, MapSpec};
use pmspace::fixedpoint::{check_exhaustive, constant_map_bottom, exhaustive_condition_maps, Condition};
use pmspace::metrics::{bottom_indices, p_m};
use pmspace::{check_axioms, q, FinitePMSpace};

fn space() -> impl Strategy<Value = FinitePMSpace> {
    (any::<u64>(), 1usize..=7).prop_map(|(seed, n)| random_pm_space(seed, n).unwrap())
}

fn small_space() -> impl Strategy<Value = FinitePMSpace> {
    (any::<u64>(), 1usize..=3).prop_map(|(seed, n)| random_pm_space(seed, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_spaces_are_partial_metrics(s in space()) {
        prop_assert!(check_axioms(&s).passed());
    }

    #[test]
    fn json_roundtrip_is_identity(s in space()) {
        let back = FinitePMSpace::from_json_str(&s.to_json_string()).unwrap();
        prop_assert_eq!(back.points(), s.points());
        prop_assert_eq!(back.matrix(), s.matrix());
    }

    #[test]
    fn order_matches_matrix_and_induced_is_nonnegative(s in space()) {
        let o = specialization_order(&s).unwrap();
        for i in 0..s.len() {
            for j in 0..s.len() {
                prop_assert_eq!(o.ge(i, j), s.at(i, j) == s.diag(i));
                let pm = p_m(&s, s.point(i), s.point(j)).unwrap();
                prop_assert!(!pm.is_negative());
            }
        }
    }

    #[test]
    fn perturbed_matrix_reports_reproduce(seed in any::<u64>(), n in 2usize..=5, i in 0usize..5, j in 0usize..5, bump in 1i64..6) {
        let s = random_pm_space(seed, n).unwrap();
        let (i, j) = (i % n, j % n);
        let mut m = s.matrix().to_vec();
        m[i][j] = &m[i][j] + q(bump, 2);
        let t = FinitePMSpace::new(s.points().to_vec(), m).unwrap();
        let r = check_axioms(&t);
        prop_assert!(r.reproduces_on(&t));
        if i != j {
            prop_assert!(!r.passed());
        }
    }

    #[test]
    fn constant_maps_characterize_bottom(s in space()) {
        prop_assert!(constant_map_bottom(&s, &[q(0, 1), q(1, 2)]).unwrap().matches_bottom);
    }

    #[test]
    fn max_condition_survivors_fix_the_bottom_and_are_continuous_there(s in small_space(), a in 0i64..4) {
        let alpha = q(a, 4);
        let b = bottom_indices(&s);
        for m in exhaustive_condition_maps(&s, &[Condition::max(alpha)]).unwrap() {
            for &i in &b {
                prop_assert_eq!(s.diag(m.apply(i)), s.diag(b[0]));
            }
            let tmap = m.to_map_spec(&s);
            for i in 0..s.len() {
                for j in 0..s.len() {
                    let seq = SequenceSpec::periodic(vec![s.point(i).clone(), s.point(j).clone()]);
                    let img = SequenceSpec::periodic(vec![s.point(m.apply(i)).clone(), s.point(m.apply(j)).clone()]);
                    let lims = limit_set(&s, &seq).unwrap();
                    let img_lims = limit_set(&s, &img).unwrap();
                    for &x in &b {
                        if lims.contains(s.point(x)) {
                            prop_assert!(img_lims.contains(s.point(m.apply(x))), "{:?} at {}", m, x);
                        }
                    }
                }
            }
            prop_assert!(check_exhaustive(&s, &tmap, &Condition::max(q(a, 4))).unwrap().holds());
        }
    }

    #[test]
    fn min_condition_fixed_points_are_unique_and_bottom(s in small_space(), k in 1usize..=3) {
        let rho = s.diag(bottom_indices(&s)[0]).clone();
        for m in exhaustive_condition_maps(&s, &[Condition::min(k)]).unwrap() {
            let fixed = m.fixed_points();
            prop_assert!(fixed.len() <= 1);
            for x in fixed {
                prop_assert_eq!(s.diag(x), &rho);
            }
        }
    }

    #[test]
    fn bottom_constant_maps_meet_every_condition_grid(s in space(), a in 0i64..10) {
        let z = s.point(bottom_indices(&s)[0]).clone();
        let r = check_exhaustive(&s, &MapSpec::constant(z), &Condition::max(q(a, 10))).unwrap();
        prop_assert!(r.holds());
    }
}
