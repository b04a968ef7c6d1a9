//! Topology probes on finite spaces: limits of periodic sequences, the
//! specialization order, maximal points, the diagonal as an intersection of
//! ball neighbourhoods, covers and nets.

use serde::{Deserialize, Serialize};

use crate::analysis::sequence::SequenceSpec;
use crate::axioms::check_axioms;
use crate::error::{PmError, Result};
use crate::metrics::{all_radius_candidates, ball_indices};
use crate::point::Point;
use crate::rational::Rational;
use crate::separation::{in_every_ball, separation_class};
use crate::space::FinitePMSpace;

fn require_valid(space: &FinitePMSpace) -> Result<()> {
    let r = check_axioms(space);
    if r.passed() {
        Ok(())
    } else {
        Err(PmError::NotPartialMetric(format!(
            "{} violated at {:?}",
            r.violated_axiom.map(|a| a.to_string()).unwrap_or_default(),
            r.witness
        )))
    }
}

fn cycle_indices(space: &FinitePMSpace, seq: &SequenceSpec) -> Result<(Vec<usize>, Vec<usize>)> {
    let (prefix, cycle) = seq.periodic_parts()?;
    let idx = |v: &[Point]| v.iter().map(|x| space.require_index(x)).collect::<Result<Vec<_>>>();
    Ok((idx(&prefix)?, idx(&cycle)?))
}

/// Every `x` with `lim p(x_n, x) = p(x, x)`, computed exactly from the
/// periodic tail. An explicit list is read as its own periodic extension.
pub fn limit_set(space: &FinitePMSpace, seq: &SequenceSpec) -> Result<Vec<Point>> {
    let (_, cycle) = cycle_indices(space, seq)?;
    Ok((0..space.len())
        .filter(|&x| cycle.iter().all(|&c| space.at(c, x) == space.diag(x)))
        .map(|x| space.point(x).clone())
        .collect())
}

/// `order[x][y]` iff `x ≽ y`, i.e. `y` lies in every ball around `x`,
/// i.e. `p(x,y) = p(x,x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializationOrder {
    pub points: Vec<Point>,
    pub order: Vec<Vec<bool>>,
}

impl SpecializationOrder {
    pub fn ge(&self, x: usize, y: usize) -> bool {
        self.order[x][y]
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.order.len()).all(|i| self.order[i][i])
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.order.len();
        (0..n).all(|i| (0..n).all(|j| i == j || !(self.order[i][j] && self.order[j][i])))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.order.len();
        (0..n).all(|i| {
            (0..n).all(|j| !self.order[i][j] || (0..n).all(|k| !self.order[j][k] || self.order[i][k]))
        })
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_reflexive() && self.is_antisymmetric() && self.is_transitive()
    }
}

pub fn specialization_order(space: &FinitePMSpace) -> Result<SpecializationOrder> {
    require_valid(space)?;
    let n = space.len();
    let order = (0..n)
        .map(|x| (0..n).map(|y| in_every_ball(space, x, y)).collect())
        .collect();
    Ok(SpecializationOrder {
        points: space.points().to_vec(),
        order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalPoints {
    pub points: Vec<Point>,
    /// Radii at which the union of balls around the maximal points was
    /// checked to be the whole space.
    pub radii_checked: Vec<Rational>,
    pub covers: bool,
}

pub(crate) fn maximal_indices(order: &SpecializationOrder) -> Vec<usize> {
    let n = order.order.len();
    (0..n)
        .filter(|&x| (0..n).all(|y| y == x || !order.ge(y, x)))
        .collect()
}

/// The `≽`-maximal points, plus a check that balls of any radius around
/// them cover the space.
pub fn maximal_points(space: &FinitePMSpace) -> Result<MaximalPoints> {
    let order = specialization_order(space)?;
    let max = maximal_indices(&order);
    let radii = all_radius_candidates(space);
    let mut covers = true;
    for eps in &radii {
        let mut hit = vec![false; space.len()];
        for &c in &max {
            for j in ball_indices(space, c, eps)? {
                hit[j] = true;
            }
        }
        if hit.iter().any(|h| !h) {
            covers = false;
            break;
        }
    }
    Ok(MaximalPoints {
        points: max.iter().map(|&i| space.point(i).clone()).collect(),
        radii_checked: radii,
        covers,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalReport {
    pub t1: bool,
    pub stabilization_n: u64,
    pub equals_diagonal: bool,
    /// Off-diagonal pairs surviving every neighbourhood (empty iff
    /// `equals_diagonal`).
    pub extra_pairs: Vec<(Point, Point)>,
}

/// Pairs `(i, j)` in `D_n = ∪_x B(x,1/n) × B(x,1/n)`.
fn d_n(space: &FinitePMSpace, n: u64) -> Result<Vec<Vec<bool>>> {
    let size = space.len();
    let eps = Rational::new(1, n as i64);
    let mut m = vec![vec![false; size]; size];
    for x in 0..size {
        let b = ball_indices(space, x, &eps)?;
        for &i in &b {
            for &j in &b {
                m[i][j] = true;
            }
        }
    }
    Ok(m)
}

/// Intersects `D_1 ⊇ D_2 ⊇ ...` up to `n0 = ceil(1/g)`, where `g` is the
/// smallest positive `p(x,y) - p(x,x)`. Below `g` no ball changes, so the
/// infinite intersection equals `D_{n0}`.
pub fn gdelta_diagonal(space: &FinitePMSpace) -> Result<DiagonalReport> {
    let t1 = separation_class(space)?.t1;
    let size = space.len();
    let g = (0..size)
        .flat_map(|x| (0..size).map(move |y| (x, y)))
        .map(|(x, y)| space.at(x, y) - space.diag(x))
        .filter(Rational::is_positive)
        .min();
    let n0: u64 = match &g {
        None => 1,
        Some(g) => {
            let c = g.recip().ceil();
            u64::try_from(c).map_err(|_| PmError::Unsupported("stabilization index too large".into()))?
        }
        .max(1),
    };
    let mut inter = vec![vec![true; size]; size];
    let mut prev: Option<Vec<Vec<bool>>> = None;
    for n in 1..=n0 {
        let dn = d_n(space, n)?;
        if let Some(p) = &prev {
            debug_assert!((0..size).all(|i| (0..size).all(|j| !dn[i][j] || p[i][j])));
        }
        for i in 0..size {
            for j in 0..size {
                inter[i][j] &= dn[i][j];
            }
        }
        prev = Some(dn);
    }
    let extra_pairs: Vec<(Point, Point)> = (0..size)
        .flat_map(|i| (0..size).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && inter[i][j])
        .map(|(i, j)| (space.point(i).clone(), space.point(j).clone()))
        .collect();
    Ok(DiagonalReport {
        t1,
        stabilization_n: n0,
        equals_diagonal: extra_pairs.is_empty(),
        extra_pairs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub covers: bool,
    pub uncovered: Option<Point>,
}

pub fn ball_cover_check(space: &FinitePMSpace, centers: &[Point], eps: &Rational) -> Result<CoverReport> {
    if !eps.is_positive() {
        return Err(PmError::Argument(format!("ball radius must be positive, got {eps}")));
    }
    let centers = centers
        .iter()
        .map(|c| space.require_index(c))
        .collect::<Result<Vec<_>>>()?;
    let mut hit = vec![false; space.len()];
    for &c in &centers {
        for j in ball_indices(space, c, eps)? {
            hit[j] = true;
        }
    }
    let uncovered = hit.iter().position(|h| !h).map(|i| space.point(i).clone());
    Ok(CoverReport {
        covers: uncovered.is_none(),
        uncovered,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Net {
    pub eps: Rational,
    pub centers: Vec<Point>,
}

impl Net {
    pub fn size(&self) -> usize {
        self.centers.len()
    }
}

/// Greedy ε-net: repeatedly takes the center whose ball covers the most
/// still-uncovered points (first index on ties). Always succeeds on a finite
/// space.
pub fn totally_bounded_at(space: &FinitePMSpace, eps: &Rational) -> Result<Net> {
    if !eps.is_positive() {
        return Err(PmError::Argument(format!("ball radius must be positive, got {eps}")));
    }
    let balls = (0..space.len())
        .map(|c| ball_indices(space, c, eps))
        .collect::<Result<Vec<_>>>()?;
    let mut covered = vec![false; space.len()];
    let mut centers = Vec::new();
    while covered.iter().any(|c| !c) {
        let gain = |c: usize| balls[c].iter().filter(|&&j| !covered[j]).count();
        let best = (0..space.len())
            .max_by(|&a, &b| gain(a).cmp(&gain(b)).then(b.cmp(&a)))
            .expect("nonempty space");
        for &j in &balls[best] {
            covered[j] = true;
        }
        centers.push(space.point(best).clone());
    }
    Ok(Net {
        eps: eps.clone(),
        centers,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Subsequence {
    /// The full sequence already converges.
    Whole,
    /// `x_{start}, x_{start+step}, ...`, all equal to one value.
    Constant { start: usize, step: usize, value: Point },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompactnessWitness {
    pub subsequence: Subsequence,
    pub limit: Point,
}

/// A convergent subsequence of a periodic sequence over a finite space: the
/// whole sequence when its limit set is nonempty, otherwise the constant
/// subsequence through the first cycle position.
pub fn seq_compact_witness(space: &FinitePMSpace, seq: &SequenceSpec) -> Result<CompactnessWitness> {
    let limits = limit_set(space, seq)?;
    if let Some(l) = limits.into_iter().next() {
        return Ok(CompactnessWitness {
            subsequence: Subsequence::Whole,
            limit: l,
        });
    }
    let (prefix, cycle) = seq.periodic_parts()?;
    let value = cycle[0].clone();
    space.require_index(&value)?;
    Ok(CompactnessWitness {
        subsequence: Subsequence::Constant {
            start: prefix.len() + 1,
            step: cycle.len(),
            value: value.clone(),
        },
        limit: value,
    })
}
