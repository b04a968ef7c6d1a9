//! Structural invariants checked on random spaces.

use serde::{Deserialize, Serialize};

use crate::analysis::{gdelta_diagonal, maximal_points, specialization_order};
use crate::axioms::check_axioms;
use crate::catalog::random_pm_space;
use crate::error::Result;
use crate::fixedpoint::{constant_map_bottom, exhaustive_condition_maps, Condition};
use crate::metrics::{bottom_indices, d_metric, p_bar, p_m};
use crate::rational::{q, Rational};
use crate::separation::separation_class;
use crate::space::FinitePMSpace;

/// Largest space on which survivors of the max-condition are enumerated.
pub const ENUMERATION_LIMIT: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCase {
    pub seed: u64,
    pub n: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyRun {
    pub start_seed: u64,
    pub count: u64,
    pub max_n: usize,
    pub passed: u64,
    pub failed: Vec<PropertyCase>,
}

fn metric_defect(n: usize, d: impl Fn(usize, usize) -> Result<Rational>) -> Result<Option<String>> {
    for i in 0..n {
        if !d(i, i)?.is_zero() {
            return Ok(Some(format!("nonzero self-distance at {i}")));
        }
        for j in 0..n {
            let dij = d(i, j)?;
            if dij != d(j, i)? {
                return Ok(Some(format!("asymmetric at ({i},{j})")));
            }
            if i != j && !dij.is_positive() {
                return Ok(Some(format!("zero distance at ({i},{j})")));
            }
            for k in 0..n {
                if dij > d(i, k)? + d(k, j)? {
                    return Ok(Some(format!("triangle fails at ({i},{j},{k})")));
                }
            }
        }
    }
    Ok(None)
}

/// Every invariant on one space; returns the names of those that fail.
pub fn check_space(s: &FinitePMSpace) -> Result<Vec<String>> {
    let mut fails = Vec::new();
    let ax = check_axioms(s);
    if !ax.passed() {
        fails.push(format!("axioms: {:?}", ax.violated_axiom));
        return Ok(fails);
    }
    let n = s.len();
    let pt = |i: usize| s.point(i);
    if let Some(m) = metric_defect(n, |i, j| p_m(s, pt(i), pt(j)))? {
        fails.push(format!("p_m: {m}"));
    }
    if let Some(m) = metric_defect(n, |i, j| d_metric(s, pt(i), pt(j)))? {
        fails.push(format!("D: {m}"));
    }
    let b = bottom_indices(s);
    if let Some(m) = metric_defect(b.len(), |i, j| p_bar(s, pt(b[i]), pt(b[j])))? {
        fails.push(format!("p_bar on bottom: {m}"));
    }
    if !specialization_order(s)?.is_partial_order() {
        fails.push("specialization order".into());
    }
    if !maximal_points(s)?.covers {
        fails.push("maximal-point cover".into());
    }
    if separation_class(s)?.t1 && !gdelta_diagonal(s)?.equals_diagonal {
        fails.push("diagonal".into());
    }
    let grid = [q(0, 1), q(1, 2), q(3, 4)];
    if !constant_map_bottom(s, &grid)?.matches_bottom {
        fails.push("constant-map bottom".into());
    }
    if n <= ENUMERATION_LIMIT {
        let rho = s.diag(b[0]).clone();
        'grid: for a in &grid {
            for m in exhaustive_condition_maps(s, &[Condition::max(a.clone())])? {
                for &i in &b {
                    if *s.diag(m.apply(i)) != rho {
                        fails.push(format!("bottom closure for {m:?}"));
                        break 'grid;
                    }
                    for &j in &b {
                        if s.at(m.apply(i), m.apply(j)) - &rho > a * (s.at(i, j) - &rho) {
                            fails.push(format!("reduced contraction for {m:?}"));
                            break 'grid;
                        }
                    }
                }
            }
        }
    }
    Ok(fails)
}

/// Checks `count` random spaces with seeds `start_seed..`, sizes cycling
/// through `1..=max_n`.
pub fn property_run(start_seed: u64, count: u64, max_n: usize) -> Result<PropertyRun> {
    let max_n = max_n.max(1);
    let mut failed = Vec::new();
    for seed in start_seed..start_seed.saturating_add(count) {
        let n = 1 + (seed % max_n as u64) as usize;
        let failures = check_space(&random_pm_space(seed, n)?)?;
        if !failures.is_empty() {
            failed.push(PropertyCase { seed, n, failures });
        }
    }
    Ok(PropertyRun {
        start_seed,
        count,
        max_n,
        passed: count - failed.len() as u64,
        failed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point;
    use crate::space::matrix_from_strs;

    #[test]
    fn small_run_passes() {
        let r = property_run(0, 21, 7).unwrap();
        assert!(r.failed.is_empty(), "{:?}", r.failed);
        assert_eq!(r.passed, 21);
    }

    #[test]
    fn broken_space_is_reported() {
        let s = FinitePMSpace::new(
            vec![Point::tag("a"), Point::tag("b")],
            matrix_from_strs(&[&["0", "1"], &["2", "0"]]).unwrap(),
        )
        .unwrap();
        assert_eq!(check_space(&s).unwrap().len(), 1);
    }
}
