//! Exhaustive search over all self-maps of a small finite space.

use serde::{Deserialize, Serialize};

use crate::catalog::MapSpec;
use crate::error::{PmError, Result};
use crate::fixedpoint::conditions::{all_pairs, check_condition, Condition, Scope};
use crate::point::Point;
use crate::space::FinitePMSpace;

pub const MAX_ENUMERATION_SIZE: usize = 5;

/// A self-map of `{0, .., n-1}` stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteMap(pub Vec<usize>);

impl FiniteMap {
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `T^k`; `k = 0` is the identity.
    pub fn power(&self, k: usize) -> FiniteMap {
        FiniteMap(
            (0..self.0.len())
                .map(|mut i| {
                    for _ in 0..k {
                        i = self.0[i];
                    }
                    i
                })
                .collect(),
        )
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == i).collect()
    }

    pub fn to_map_spec(&self, space: &FinitePMSpace) -> MapSpec {
        let table: Vec<(Point, Point)> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &j)| (space.point(i).clone(), space.point(j).clone()))
            .collect();
        MapSpec::from_table(&self.label(space), table)
    }

    /// `x->y,...` over the space's point ids.
    pub fn label(&self, space: &FinitePMSpace) -> String {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}->{}", space.point(i), space.point(j)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// All `n^n` self-maps in odometer order (first point varies fastest).
pub fn all_maps(n: usize) -> impl Iterator<Item = FiniteMap> {
    let total = if n == 0 { 0 } else { n.pow(n as u32) };
    (0..total).map(move |mut code| {
        FiniteMap(
            (0..n)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect(),
        )
    })
}

/// Maps satisfying every condition in `conditions` on all pairs.
pub fn exhaustive_condition_maps(space: &FinitePMSpace, conditions: &[Condition]) -> Result<Vec<FiniteMap>> {
    let n = space.len();
    if n > MAX_ENUMERATION_SIZE {
        return Err(PmError::Unsupported(format!(
            "exhaustive enumeration needs at most {MAX_ENUMERATION_SIZE} points, got {n}"
        )));
    }
    for c in conditions {
        c.validate()?;
    }
    let pairs = all_pairs(space.points());
    let mut out = Vec::new();
    'maps: for m in all_maps(n) {
        let tmap = m.to_map_spec(space);
        for c in conditions {
            if !check_condition(space, &tmap, c, &pairs, Scope::Exhaustive)?.holds() {
                continue 'maps;
            }
        }
        out.push(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{random_metric_space, Catalog};
    use crate::rational::q;

    #[test]
    fn odometer_order_and_count() {
        let maps: Vec<_> = all_maps(2).collect();
        assert_eq!(maps, vec![FiniteMap(vec![0, 0]), FiniteMap(vec![1, 0]), FiniteMap(vec![0, 1]), FiniteMap(vec![1, 1])]);
        assert_eq!(all_maps(4).count(), 256);
        assert_eq!(all_maps(0).count(), 0);
    }

    #[test]
    fn powers() {
        let m = FiniteMap(vec![1, 2, 2]);
        assert_eq!(m.power(0), FiniteMap(vec![0, 1, 2]));
        assert_eq!(m.power(2), FiniteMap(vec![2, 2, 2]));
        assert!(m.power(2).is_constant());
        assert_eq!(m.fixed_points(), vec![2]);
    }

    #[test]
    fn ex58_only_constant_a() {
        let s = Catalog::standard().space("ex5.8").unwrap().canonical_finite();
        for a in [q(0, 1), q(1, 2), q(3, 4)] {
            assert_eq!(exhaustive_condition_maps(&s, &[Condition::max(a)]).unwrap(), vec![FiniteMap(vec![0, 0])]);
        }
    }

    #[test]
    fn min_and_contraction_survivors_have_constant_square() {
        for seed in 0..5 {
            let s = random_metric_space(seed, 3).unwrap();
            let maps = exhaustive_condition_maps(&s, &[Condition::contraction(q(1, 2)), Condition::min(2)]).unwrap();
            assert!(!maps.is_empty());
            assert!(maps.iter().all(|m| m.power(2).is_constant()));
        }
    }

    #[test]
    fn sizes() {
        let one = FinitePMSpace::new(vec![Point::tag("x")], vec![vec![q(1, 1)]]).unwrap();
        assert_eq!(exhaustive_condition_maps(&one, &[Condition::min(3)]).unwrap(), vec![FiniteMap(vec![0])]);
        let six = random_metric_space(1, 6).unwrap();
        assert!(matches!(exhaustive_condition_maps(&six, &[]), Err(PmError::Unsupported(_))));
    }
}
