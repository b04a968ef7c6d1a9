//! Contraction, max-condition and min-condition checks over point pairs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::MapSpec;
use crate::error::{PmError, Result};
use crate::point::Point;
use crate::rational::{max_of, min_of, q, Rational};
use crate::space::{FinitePMSpace, PartialMetric};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Condition {
    /// `p(Tx,Ty) <= α p(x,y)`
    Contraction { alpha: Rational },
    /// `p(Tx,Ty) <= max{α p(x,y), p(x,x), p(y,y)}`
    MaxCondition { alpha: Rational },
    /// `min_{1<=i<=k} p(T^i x, T^i y) <= (p(x,x) + p(y,y)) / 2`
    MinCondition { k: usize },
}

impl Condition {
    pub fn contraction(alpha: Rational) -> Self {
        Condition::Contraction { alpha }
    }

    pub fn max(alpha: Rational) -> Self {
        Condition::MaxCondition { alpha }
    }

    pub fn min(k: usize) -> Self {
        Condition::MinCondition { k }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Condition::Contraction { alpha } | Condition::MaxCondition { alpha } => {
                if alpha.is_negative() || *alpha >= Rational::one() {
                    return Err(PmError::Argument(format!("alpha must lie in [0,1), got {alpha}")));
                }
            }
            Condition::MinCondition { k } => {
                if *k == 0 {
                    return Err(PmError::Argument("k must be at least 1".into()));
                }
            }
        }
        Ok(())
    }

    /// `(lhs, rhs)` at the pair `(x, y)`; the condition holds there iff
    /// `lhs <= rhs`.
    pub fn sides<S: PartialMetric + ?Sized>(
        &self,
        space: &S,
        map: &MapSpec,
        x: &Point,
        y: &Point,
    ) -> Result<(Rational, Rational)> {
        match self {
            Condition::Contraction { alpha } => {
                let (tx, ty) = (image(space, map, x)?, image(space, map, y)?);
                Ok((space.p(&tx, &ty)?, alpha * space.p(x, y)?))
            }
            Condition::MaxCondition { alpha } => {
                let (tx, ty) = (image(space, map, x)?, image(space, map, y)?);
                let rhs = max_of(&max_of(&(alpha * space.p(x, y)?), &space.p(x, x)?), &space.p(y, y)?);
                Ok((space.p(&tx, &ty)?, rhs))
            }
            Condition::MinCondition { k } => {
                let (mut tx, mut ty) = (x.clone(), y.clone());
                let mut lhs: Option<Rational> = None;
                for _ in 0..*k {
                    tx = image(space, map, &tx)?;
                    ty = image(space, map, &ty)?;
                    let v = space.p(&tx, &ty)?;
                    lhs = Some(match lhs {
                        Some(m) => min_of(&m, &v),
                        None => v,
                    });
                }
                let rhs = (space.p(x, x)? + space.p(y, y)?) * q(1, 2);
                Ok((lhs.expect("k >= 1"), rhs))
            }
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Contraction { alpha } => write!(f, "contraction(alpha={alpha})"),
            Condition::MaxCondition { alpha } => write!(f, "max_condition(alpha={alpha})"),
            Condition::MinCondition { k } => write!(f, "min_condition(k={k})"),
        }
    }
}

/// `T(x)`, failing if it is undefined or leaves the space.
pub fn image<S: PartialMetric + ?Sized>(space: &S, map: &MapSpec, x: &Point) -> Result<Point> {
    match map.apply(x) {
        Some(y) if space.contains(&y) => Ok(y),
        _ => Err(PmError::MapClosure {
            map: map.name().to_string(),
            from: x.to_string(),
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Every pair of a finite space was checked.
    Exhaustive,
    /// Only the supplied pairs (e.g. a canonical sample) were checked.
    Sample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionVerdict {
    HoldsOnSample,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub x: Point,
    pub y: Point,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub map: String,
    pub verdict: ConditionVerdict,
    pub scope: Scope,
    pub pairs_checked: usize,
    pub violation: Option<Violation>,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.verdict == ConditionVerdict::HoldsOnSample
    }

    /// Re-evaluates the violating pair; true iff it still shows `lhs > rhs`
    /// with the recorded values (vacuously true when nothing was violated).
    pub fn reproduces_on<S: PartialMetric + ?Sized>(&self, space: &S, map: &MapSpec) -> bool {
        match &self.violation {
            None => true,
            Some(v) => match self.condition.sides(space, map, &v.x, &v.y) {
                Ok((l, r)) => l == v.lhs && r == v.rhs && l > r,
                Err(_) => false,
            },
        }
    }
}

/// Unordered pairs `(x, y)` with `x` at or before `y`, diagonal included.
pub fn all_pairs(points: &[Point]) -> Vec<(Point, Point)> {
    let mut out = Vec::with_capacity(points.len() * (points.len() + 1) / 2);
    for (i, x) in points.iter().enumerate() {
        for y in &points[i..] {
            out.push((x.clone(), y.clone()));
        }
    }
    out
}

/// Checks `cond` on the given pairs; stops at the first violation.
pub fn check_condition<S: PartialMetric + ?Sized>(
    space: &S,
    map: &MapSpec,
    cond: &Condition,
    pairs: &[(Point, Point)],
    scope: Scope,
) -> Result<ConditionReport> {
    cond.validate()?;
    let mut checked = 0;
    let mut violation = None;
    for (x, y) in pairs {
        let (lhs, rhs) = cond.sides(space, map, x, y)?;
        checked += 1;
        if lhs > rhs {
            violation = Some(Violation {
                x: x.clone(),
                y: y.clone(),
                lhs,
                rhs,
            });
            break;
        }
    }
    Ok(ConditionReport {
        condition: cond.clone(),
        map: map.name().to_string(),
        verdict: if violation.is_some() {
            ConditionVerdict::Violated
        } else {
            ConditionVerdict::HoldsOnSample
        },
        scope,
        pairs_checked: checked,
        violation,
    })
}

/// Every pair of a finite space.
pub fn check_exhaustive(space: &FinitePMSpace, map: &MapSpec, cond: &Condition) -> Result<ConditionReport> {
    check_condition(space, map, cond, &all_pairs(space.points()), Scope::Exhaustive)
}

pub fn check_contraction<S: PartialMetric + ?Sized>(
    space: &S,
    map: &MapSpec,
    alpha: &Rational,
    pairs: &[(Point, Point)],
) -> Result<ConditionReport> {
    check_condition(space, map, &Condition::contraction(alpha.clone()), pairs, Scope::Sample)
}

pub fn check_condition_max<S: PartialMetric + ?Sized>(
    space: &S,
    map: &MapSpec,
    alpha: &Rational,
    pairs: &[(Point, Point)],
) -> Result<ConditionReport> {
    check_condition(space, map, &Condition::max(alpha.clone()), pairs, Scope::Sample)
}

pub fn check_condition_min<S: PartialMetric + ?Sized>(
    space: &S,
    map: &MapSpec,
    k: usize,
    pairs: &[(Point, Point)],
) -> Result<ConditionReport> {
    check_condition(space, map, &Condition::min(k), pairs, Scope::Sample)
}
