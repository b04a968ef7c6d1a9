//! Machine-checkable claims attached to catalog entries.
//!
//! Each fact re-derives its claim through the analyzers and solvers, reading
//! spaces and maps from the supplied [`Catalog`]; overriding a map
//! changes the verdict. Failures are verdicts, never errors: an analyzer
//! error turns into a failed fact carrying the message.

use serde::{Deserialize, Serialize};

use crate::analysis::{
    converges_to, is_cauchy, limit_set, properly_converges, CauchyVerdict, Mode, SequenceSpec, DEFAULT_HORIZON,
};
use crate::analysis::topology::{ball_cover_check, totally_bounded_at};
use crate::axioms::check_axioms;
use crate::catalog::{apex, apex_point, Catalog, CatalogSpace, MapSpec};
use crate::error::Result;
use crate::fixedpoint::{
    all_pairs, check_condition, check_contraction, constant_map_bottom, exhaustive_condition_maps, iterate,
    Condition, FiniteMap, IterateOptions, Scope,
};
use crate::metrics::{bottom_set, p_m};
use crate::point::Point;
use crate::rational::{q, Rational};
use crate::separation::separation_class;
use crate::space::PartialMetric;

/// Seed used for every sampled fact.
pub const FACT_SEED: u64 = 0;

/// Discrete points in the apex instance used for the net facts.
pub const APEX_FACT_SIZE: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub id: String,
    /// Catalog entry plus a one-line statement of the claim.
    pub anchor: String,
    pub passed: bool,
    pub details: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactSuiteResult {
    pub facts: Vec<Fact>,
    pub passed: usize,
    pub failed: usize,
}

impl FactSuiteResult {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn get(&self, id: &str) -> Option<&Fact> {
        self.facts.iter().find(|f| f.id == id)
    }
}

type Check<'a> = Box<dyn Fn(&Catalog) -> Result<(bool, String)> + 'a>;

struct FactDef<'a> {
    id: &'static str,
    entry: &'static str,
    claim: &'static str,
    check: Check<'a>,
}

fn fact<'a, F>(id: &'static str, entry: &'static str, claim: &'static str, f: F) -> FactDef<'a>
where
    F: Fn(&Catalog) -> Result<(bool, String)> + 'a,
{
    FactDef {
        id,
        entry,
        claim,
        check: Box::new(f),
    }
}

fn axioms_fact(entry: &'static str) -> FactDef<'static> {
    fact(
        match entry {
            "ex3.1" => "ex3.1.axioms",
            "ex3.2" => "ex3.2.axioms",
            "ex3.4" => "ex3.4.axioms",
            "ex4.4" => "ex4.4.axioms",
            "ex4.8" => "ex4.8.axioms",
            "ex5.4" => "ex5.4.axioms",
            "ex5.5" => "ex5.5.axioms",
            "ex5.6" => "ex5.6.axioms",
            "ex5.8" => "ex5.8.axioms",
            _ => "apex.axioms",
        },
        entry,
        "canonical sample satisfies the partial metric axioms",
        move |cat| {
            let s = cat.space(entry)?;
            let r = check_axioms(&s.canonical_finite());
            let meta = s.validate_sample(s.canonical_sample());
            Ok((
                r.passed() && meta.is_ok(),
                format!("{} points, axioms {:?}, metadata {:?}", s.canonical_sample().len(), r.verdict, meta),
            ))
        },
    )
}

/// `p_m(x,y) = |x-y|` on `pairs` consecutive sampled pairs.
fn induced_is_euclidean(s: &CatalogSpace, pairs: usize) -> Result<(bool, String)> {
    let pts = s.sample(FACT_SEED, 2 * pairs);
    for w in pts.chunks(2) {
        let (x, y) = (&w[0], &w[1]);
        let want = (x.as_num().unwrap() - y.as_num().unwrap()).abs();
        let got = p_m(s, x, y)?;
        if got != want {
            return Ok((false, format!("p_m({x},{y}) = {got}, expected {want}")));
        }
    }
    Ok((true, format!("{pairs} sampled pairs")))
}

fn fixed_points_of(s: &CatalogSpace, t: &MapSpec) -> Vec<Point> {
    s.canonical_sample()
        .iter()
        .filter(|x| t.apply(x).as_ref() == Some(*x))
        .cloned()
        .collect()
}

fn landmarks(s: &CatalogSpace) -> IterateOptions {
    IterateOptions::default().with_landmarks(s.canonical_sample().to_vec())
}

fn alpha_grid() -> [Rational; 3] {
    [q(0, 1), q(1, 2), q(3, 4)]
}

fn definitions() -> Vec<FactDef<'static>> {
    let mut v = Vec::new();

    // ex3.1
    v.push(axioms_fact("ex3.1"));
    v.push(fact("ex3.1.rho", "ex3.1", "self-distance infimum is 1 and is never attained", |cat| {
        let s = cat.space("ex3.1")?;
        let rho = s.rho()?;
        let mut pts = s.canonical_sample().to_vec();
        pts.extend(s.sample(FACT_SEED, 200));
        let attained = pts.iter().find(|x| s.p(x, x).map(|v| v == rho).unwrap_or(true));
        Ok((rho == Rational::one() && attained.is_none(), format!("rho = {rho}, attained at {attained:?}")))
    }));
    v.push(fact("ex3.1.induced", "ex3.1", "induced metric is |x-y|", |cat| {
        induced_is_euclidean(cat.space("ex3.1")?, 50)
    }));

    // ex3.2
    v.push(axioms_fact("ex3.2"));
    v.push(fact("ex3.2.converges", "ex3.2", "alternating {a},{b} converges to {a,b} with gap 0", |cat| {
        let s = cat.space("ex3.2")?;
        let seq = cat.generator("ex3.2.alternating")?;
        let r = converges_to(s, &seq, &Point::set("ab"), &Rational::zero(), 64)?;
        Ok((r.mode == Mode::Converges && r.achieved_gap.is_zero(), format!("{:?}, gap {}", r.mode, r.achieved_gap)))
    }));
    v.push(fact("ex3.2.not_cauchy", "ex3.2", "alternating {a},{b} is not Cauchy (values 1 and 2)", |cat| {
        let s = cat.space("ex3.2")?;
        let seq = cat.generator("ex3.2.alternating")?;
        let r = is_cauchy(s, &seq, &Rational::zero(), 64)?;
        let ok = r.verdict == CauchyVerdict::Refuted && r.low.value == q(1, 1) && r.high.value == q(2, 1);
        Ok((ok, format!("{:?}, values {} and {}", r.verdict, r.low.value, r.high.value)))
    }));

    // ex3.4
    v.push(axioms_fact("ex3.4"));
    v.push(fact("ex3.4.contraction", "ex3.4", "T is a 2/3-contraction on all sample pairs", |cat| {
        let s = cat.space("ex3.4")?;
        let r = check_contraction(s, &cat.map("ex3.4.T")?, &q(2, 3), &all_pairs(s.canonical_sample()))?;
        Ok((r.holds(), format!("{:?} over {} pairs, violation {:?}", r.verdict, r.pairs_checked, r.violation)))
    }));
    v.push(fact("ex3.4.bottom", "ex3.4", "bottom set of the sample is {-5}", |cat| {
        let b = bottom_set(&cat.space("ex3.4")?.canonical_finite());
        Ok((b == vec![Point::int(-5)], format!("{b:?}")))
    }));
    v.push(fact("ex3.4.iterate", "ex3.4", "every sample orbit reaches the fixed point -5 within 5 steps", |cat| {
        let s = cat.space("ex3.4")?;
        let t = cat.map("ex3.4.T")?;
        let opts = IterateOptions::default().with_budget(5);
        for x in s.canonical_sample() {
            let tr = iterate(s, &t, x, &opts)?;
            if tr.fixed_point() != Some(&Point::int(-5)) {
                return Ok((false, format!("from {x}: {:?}", tr.outcome)));
            }
        }
        Ok((true, format!("{} starts", s.canonical_sample().len())))
    }));
    v.push(fact(
        "ex3.4.discontinuous",
        "ex3.4",
        "1/n converges to each sampled x >= 0 but T(1/n) converges to no T(x)",
        |cat| {
            let s = cat.space("ex3.4")?;
            let t = cat.map("ex3.4.T")?;
            let inv = cat.generator("ex3.4.inv")?;
            let t_inv = cat.generator("ex3.4.T_inv")?;
            let mut notes = Vec::new();
            for x in s.canonical_sample().iter().filter(|x| !x.as_num().unwrap().is_negative()) {
                // The gap to 0 is exactly 1/n, so 0 needs a positive tolerance.
                let tol = if x.as_num().unwrap().is_zero() { q(1, 50) } else { Rational::zero() };
                let c = converges_to(s, &inv, x, &tol, 100)?;
                let tx = t.apply(x).expect("T is total on x >= 0");
                let d = converges_to(s, &t_inv, &tx, &Rational::zero(), 100)?;
                if !c.certified() || d.mode != Mode::Refuted {
                    return Ok((false, format!("at {x}: 1/n {:?}, T(1/n) -> {tx} {:?}", c.mode, d.mode)));
                }
                notes.push(format!("{x}:n0={}", c.tail_start.unwrap_or(0)));
            }
            Ok((true, notes.join(" ")))
        },
    ));

    // ex4.4
    v.push(axioms_fact("ex4.4"));
    v.push(fact("ex4.4.induced", "ex4.4", "induced metric is |x-y|", |cat| {
        induced_is_euclidean(cat.space("ex4.4")?, 50)
    }));
    v.push(fact("ex4.4.cover", "ex4.4", "the single ball around 1 covers the sample for every radius", |cat| {
        let f = cat.space("ex4.4")?.canonical_finite();
        for eps in [q(1, 10), q(1, 2), q(1, 1)] {
            let r = ball_cover_check(&f, &[Point::int(1)], &eps)?;
            if !r.covers {
                return Ok((false, format!("eps {eps}: {:?} uncovered", r.uncovered)));
            }
        }
        Ok((true, "eps in {1/10, 1/2, 1}".into()))
    }));

    // ex4.8
    v.push(axioms_fact("ex4.8"));
    v.push(fact("ex4.8.separated", "ex4.8", "distinct positive integers up to 50 sit at distance > 1", |cat| {
        let s = cat.space("ex4.8")?;
        for n in 1..=50 {
            for m in n + 1..=50 {
                let v = s.p(&Point::int(n), &Point::int(m))?;
                if v <= Rational::one() {
                    return Ok((false, format!("p({n},{m}) = {v}")));
                }
            }
        }
        Ok((true, "1225 pairs".into()))
    }));
    v.push(fact("ex4.8.converges", "ex4.8", "n converges to 0 at tol 1/25 with tail start 25", |cat| {
        let s = cat.space("ex4.8")?;
        let r = converges_to(s, &cat.generator("ex4.8.n")?, &Point::int(0), &q(1, 25), 50)?;
        Ok((r.certified() && r.tail_start == Some(25), format!("{:?}, n0 {:?}", r.mode, r.tail_start)))
    }));

    // ex5.4
    v.push(axioms_fact("ex5.4"));
    v.push(fact("ex5.4.max_condition", "ex5.4", "T satisfies the max-condition with alpha 1/2", |cat| {
        let s = cat.space("ex5.4")?;
        let cond = Condition::max(q(1, 2));
        let r = check_condition(s, &cat.map("ex5.4.T")?, &cond, &all_pairs(s.canonical_sample()), Scope::Sample)?;
        Ok((r.holds(), format!("{:?} over {} pairs", r.verdict, r.pairs_checked)))
    }));
    v.push(fact("ex5.4.iterate0", "ex5.4", "orbit of 0 is 1 - 2^-n and reaches 1", |cat| {
        let s = cat.space("ex5.4")?;
        let tr = iterate(s, &cat.map("ex5.4.T")?, &Point::int(0), &landmarks(s))?;
        let dyadic = tr
            .iterates
            .iter()
            .enumerate()
            .all(|(n, x)| *x == Point::Num(Rational::one() - Rational::dyadic(n as u32)));
        Ok((dyadic && tr.fixed_point() == Some(&Point::int(1)), format!("{:?} after {} steps", tr.outcome, tr.applications())))
    }));
    v.push(fact("ex5.4.iterate3", "ex5.4", "orbit of 3 is 2 + 2^-n and reaches 2", |cat| {
        let s = cat.space("ex5.4")?;
        let tr = iterate(s, &cat.map("ex5.4.T")?, &Point::int(3), &landmarks(s))?;
        let dyadic = tr
            .iterates
            .iter()
            .enumerate()
            .all(|(n, x)| *x == Point::Num(Rational::from_int(2) + Rational::dyadic(n as u32)));
        Ok((dyadic && tr.fixed_point() == Some(&Point::int(2)), format!("{:?} after {} steps", tr.outcome, tr.applications())))
    }));
    v.push(fact("ex5.4.fixed_points", "ex5.4", "fixed points in the sample are exactly 1 and 2", |cat| {
        let s = cat.space("ex5.4")?;
        let f = fixed_points_of(s, &cat.map("ex5.4.T")?);
        Ok((f == vec![Point::int(1), Point::int(2)], format!("{f:?}")))
    }));
    v.push(fact("ex5.4.bottom", "ex5.4", "bottom set of the sample is {0, 1/2, 3/4, 1}", |cat| {
        let b = bottom_set(&cat.space("ex5.4")?.canonical_finite());
        let want: Vec<Point> = ["0", "1/2", "3/4", "1"].iter().map(|s| s.parse().unwrap()).collect();
        Ok((b == want, format!("{b:?}")))
    }));
    v.push(fact("ex5.4.two_outside_bottom", "ex5.4", "the fixed point 2 is not in the bottom set", |cat| {
        let s = cat.space("ex5.4")?;
        let two = Point::int(2);
        let fixed = cat.map("ex5.4.T")?.apply(&two) == Some(two.clone());
        let outside = !bottom_set(&s.canonical_finite()).contains(&two);
        Ok((fixed && outside, format!("T(2)=2: {fixed}, 2 outside bottom: {outside}")))
    }));

    // ex5.5
    v.push(axioms_fact("ex5.5"));
    v.push(fact("ex5.5.converges", "ex5.5", "1/n converges to 0", |cat| {
        let r = converges_to(cat.space("ex5.5")?, &cat.generator("ex5.5.inv")?, &Point::int(0), &Rational::zero(), DEFAULT_HORIZON)?;
        Ok((r.certified() && r.achieved_gap.is_zero(), format!("{:?}, gap {}", r.mode, r.achieved_gap)))
    }));
    v.push(fact("ex5.5.not_proper", "ex5.5", "1/n does not converge properly to 0", |cat| {
        let r = properly_converges(cat.space("ex5.5")?, &cat.generator("ex5.5.inv")?, &Point::int(0), &Rational::zero(), DEFAULT_HORIZON)?;
        Ok((r.mode == Mode::Refuted, format!("{:?}, witness {:?}", r.mode, r.witness)))
    }));
    v.push(fact("ex5.5.constant_maps", "ex5.5", "constant maps meeting the max-condition are those onto (0,1]", |cat| {
        let r = constant_map_bottom(&cat.space("ex5.5")?.canonical_finite(), &alpha_grid())?;
        let ok = r.matches_bottom && !r.points.contains(&Point::int(0));
        Ok((ok, format!("{:?}", r.points)))
    }));

    // ex5.6
    v.push(axioms_fact("ex5.6"));
    v.push(fact("ex5.6.no_bottom", "ex5.6", "no sampled point attains the declared infimum 0", |cat| {
        let s = cat.space("ex5.6")?;
        let rho = s.rho()?;
        let mut pts = s.canonical_sample().to_vec();
        pts.extend(s.sample(FACT_SEED, 200));
        let hit = pts.iter().find(|x| s.p(x, x).map(|v| v == rho).unwrap_or(true));
        Ok((rho.is_zero() && hit.is_none(), format!("rho {rho}, attained at {hit:?}")))
    }));
    v.push(fact("ex5.6.constant_maps", "ex5.6", "every sampled constant map violates the max-condition", |cat| {
        let s = cat.space("ex5.6")?;
        let mut pts = s.canonical_sample().to_vec();
        for x in s.sample(FACT_SEED, 200) {
            if !pts.contains(&x) {
                pts.push(x);
            }
        }
        let pairs = all_pairs(&pts);
        for z in s.canonical_sample() {
            for a in alpha_grid() {
                let r = check_condition(s, &MapSpec::constant(z.clone()), &Condition::max(a.clone()), &pairs, Scope::Sample)?;
                if r.holds() {
                    return Ok((false, format!("T_{z} holds at alpha {a}")));
                }
            }
        }
        Ok((true, format!("{} constants x 3 alphas over {} pairs", s.canonical_sample().len(), pairs.len())))
    }));
    v.push(fact("ex5.6.zero_is_a_limit", "ex5.6", "0 is a limit of every sample sequence", |cat| {
        let s = cat.space("ex5.6")?;
        let f = s.canonical_finite();
        let pts = s.canonical_sample();
        let mut seqs: Vec<SequenceSpec> = pts.iter().cloned().map(SequenceSpec::constant).collect();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                seqs.push(SequenceSpec::periodic(vec![pts[i].clone(), pts[j].clone()]));
            }
        }
        seqs.push(SequenceSpec::periodic(pts.to_vec()));
        for seq in &seqs {
            if !limit_set(&f, seq)?.contains(&Point::int(0)) {
                return Ok((false, format!("{seq:?}")));
            }
        }
        let g = converges_to(s, &cat.generator("ex5.6.inv")?, &Point::int(0), &Rational::zero(), DEFAULT_HORIZON)?;
        Ok((g.certified(), format!("{} periodic sequences, 1/(n+1): {:?}", seqs.len(), g.mode)))
    }));
    v.push(fact("ex5.6.not_hausdorff", "ex5.6", "the ball topology is not Hausdorff", |cat| {
        let c = separation_class(&cat.space("ex5.6")?.canonical_finite())?;
        Ok((!c.hausdorff, format!("{c:?}")))
    }));

    // ex5.8
    v.push(axioms_fact("ex5.8"));
    v.push(fact("ex5.8.only_constant_a", "ex5.8", "T_a is the only self-map meeting the max-condition", |cat| {
        let f = cat.space("ex5.8")?.canonical_finite();
        let a = f.require_index(&Point::tag("a"))?;
        let want = vec![FiniteMap(vec![a; f.len()])];
        for alpha in alpha_grid() {
            let got = exhaustive_condition_maps(&f, &[Condition::max(alpha.clone())])?;
            if got != want {
                return Ok((false, format!("alpha {alpha}: {got:?}")));
            }
        }
        Ok((true, "alpha in {0, 1/2, 3/4}".into()))
    }));
    v.push(fact("ex5.8.constant_maps", "ex5.8", "constant maps recover the bottom set {a}", |cat| {
        let r = constant_map_bottom(&cat.space("ex5.8")?.canonical_finite(), &alpha_grid())?;
        Ok((r.matches_bottom && r.points == vec![Point::tag("a")], format!("{:?}", r.points)))
    }));

    // apex
    v.push(axioms_fact("apex"));
    v.push(fact("apex.nets", "apex", "one ball covers the space but X alone needs |X| balls at radius 1/2", |cat| {
        cat.space("apex")?;
        let s = apex(APEX_FACT_SIZE).canonical_finite();
        let whole = totally_bounded_at(&s, &q(1, 2))?;
        let xs: Vec<usize> = (0..APEX_FACT_SIZE)
            .map(|i| s.require_index(&apex_point(i)))
            .collect::<Result<_>>()?;
        let restricted = totally_bounded_at(&s.subspace(&xs)?, &q(1, 2))?;
        let ok = whole.size() == 1 && restricted.size() == APEX_FACT_SIZE;
        Ok((ok, format!("|X| = {APEX_FACT_SIZE}: net sizes {} and {}", whole.size(), restricted.size())))
    }));
    v
}

/// Runs every fact whose entry is present in `cat`, in id order.
pub fn fact_suite(cat: &Catalog) -> FactSuiteResult {
    let mut facts: Vec<Fact> = definitions()
        .into_iter()
        .filter(|d| cat.contains(d.entry))
        .map(|d| {
            let (passed, details) = match (d.check)(cat) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            Fact {
                id: d.id.to_string(),
                anchor: format!("{}: {}", d.entry, d.claim),
                passed,
                details,
            }
        })
        .collect();
    facts.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = facts.iter().filter(|f| f.passed).count();
    FactSuiteResult {
        failed: facts.len() - passed,
        passed,
        facts,
    }
}

/// Ids of every defined fact.
pub fn fact_ids() -> Vec<&'static str> {
    let mut ids: Vec<_> = definitions().iter().map(|d| d.id).collect();
    ids.sort();
    ids
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_suite_passes() {
        let r = fact_suite(&Catalog::standard());
        for f in r.facts.iter().filter(|f| !f.passed) {
            eprintln!("{} {}", f.id, f.details);
        }
        assert!(r.ok());
        assert_eq!(r.passed, fact_ids().len());
    }

    #[test]
    fn identity_override_breaks_fixed_point_facts() {
        let cat = Catalog::standard().with_map("ex5.4.T", MapSpec::identity());
        let r = fact_suite(&cat.subset(&["ex5.4"]));
        assert!(!r.ok());
        assert!(!r.get("ex5.4.fixed_points").unwrap().passed);
        assert!(!r.get("ex5.4.iterate0").unwrap().passed);
        assert!(r.get("ex5.4.bottom").unwrap().passed);
    }

    #[test]
    fn empty_subset_is_vacuous() {
        let r = fact_suite(&Catalog::standard().subset(&[]));
        assert!(r.ok());
        assert_eq!((r.passed, r.failed, r.facts.len()), (0, 0, 0));
    }
}
