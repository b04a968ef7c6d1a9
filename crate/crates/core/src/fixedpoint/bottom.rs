//! Fixed points via the bottom set, and the constant-map description of it.

use serde::{Deserialize, Serialize};

use crate::catalog::MapSpec;
use crate::error::{PmError, Result};
use crate::fixedpoint::conditions::{all_pairs, check_condition, check_exhaustive, image, Condition, Scope, Violation};
use crate::metrics::bottom_indices;
use crate::point::Point;
use crate::rational::Rational;
use crate::space::{FinitePMSpace, PartialMetric};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
#[allow(clippy::large_enum_variant)]
pub enum BottomOutcome {
    FixedPoint {
        point: Point,
        /// Map applications from `x0` to the last distinct iterate.
        steps: usize,
        /// All fixed points of `T` inside the bottom set.
        bottom_fixed_points: Vec<Point>,
        unique_in_bottom: bool,
    },
    /// `T` sends a bottom point outside the bottom set, so the max-condition
    /// cannot hold; `witness` is a violating pair when one exists.
    Escape {
        from: Point,
        image: Point,
        witness: Option<Violation>,
    },
    BudgetExhausted { last: Point },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BottomSolution {
    pub rho: Rational,
    pub bottom: Vec<Point>,
    /// `p̄(Tx,Ty) <= α p̄(x,y)` on every bottom pair.
    pub reduced_contraction: bool,
    pub iterates: Vec<Point>,
    pub outcome: BottomOutcome,
}

impl BottomSolution {
    pub fn fixed_point(&self) -> Option<&Point> {
        match &self.outcome {
            BottomOutcome::FixedPoint { point, .. } => Some(point),
            _ => None,
        }
    }
}

/// Banach iteration for `T` on the bottom set of a finite space, measured
/// with `p̄ = p - ρ`, a metric there.
pub fn solve_on_bottom(
    space: &FinitePMSpace,
    map: &MapSpec,
    alpha: &Rational,
    x0: &Point,
    tol: &Rational,
    budget: usize,
) -> Result<BottomSolution> {
    let bottom: Vec<Point> = bottom_indices(space)
        .into_iter()
        .map(|i| space.point(i).clone())
        .collect();
    solve_on_bottom_sampled(space, &bottom, map, alpha, x0, tol, budget)
}

/// As [`solve_on_bottom`] on any space, given a finite sample of its bottom
/// set. Membership of an iterate in the bottom set is decided exactly by
/// `p(x,x) = ρ`.
pub fn solve_on_bottom_sampled<S: PartialMetric + ?Sized>(
    space: &S,
    bottom_sample: &[Point],
    map: &MapSpec,
    alpha: &Rational,
    x0: &Point,
    tol: &Rational,
    budget: usize,
) -> Result<BottomSolution> {
    Condition::max(alpha.clone()).validate()?;
    if budget == 0 {
        return Err(PmError::Argument("budget must be at least 1".into()));
    }
    if tol.is_negative() {
        return Err(PmError::Argument(format!("tolerance must be nonnegative, got {tol}")));
    }
    let rho = space.rho()?;
    let in_bottom = |x: &Point| -> Result<bool> { Ok(space.p(x, x)? == rho) };
    for b in bottom_sample {
        if !space.contains(b) || !in_bottom(b)? {
            return Err(PmError::Argument(format!("{b} is not in the bottom set")));
        }
    }
    if !space.contains(x0) || !in_bottom(x0)? {
        return Err(PmError::Argument(format!("{x0} is not in the bottom set")));
    }
    let bottom = bottom_sample.to_vec();
    let pbar = |x: &Point, y: &Point| -> Result<Rational> { Ok(space.p(x, y)? - &rho) };

    let escape = |from: &Point, img: Point, iterates: Vec<Point>| -> Result<BottomSolution> {
        let mut pts = bottom_sample.to_vec();
        for x in [from.clone(), img.clone()] {
            if !pts.contains(&x) {
                pts.push(x);
            }
        }
        let witness = check_condition(space, map, &Condition::max(alpha.clone()), &all_pairs(&pts), Scope::Sample)?.violation;
        Ok(BottomSolution {
            rho: rho.clone(),
            bottom: bottom_sample.to_vec(),
            reduced_contraction: false,
            iterates,
            outcome: BottomOutcome::Escape {
                from: from.clone(),
                image: img,
                witness,
            },
        })
    };

    let mut images = Vec::with_capacity(bottom.len());
    for b in &bottom {
        let y = image(space, map, b)?;
        if !in_bottom(&y)? {
            return escape(b, y, vec![x0.clone()]);
        }
        images.push(y);
    }
    let mut reduced_contraction = true;
    'pairs: for (i, x) in bottom.iter().enumerate() {
        for (j, y) in bottom.iter().enumerate() {
            if pbar(&images[i], &images[j])? > alpha * pbar(x, y)? {
                reduced_contraction = false;
                break 'pairs;
            }
        }
    }
    let bottom_fixed: Vec<Point> = bottom
        .iter()
        .zip(&images)
        .filter(|(b, t)| b == t)
        .map(|(b, _)| b.clone())
        .collect();

    // Stop rule: p̄(x_n, x_{n+1}) <= tol (1 - α) bounds p̄(x_{n+1}, x*) by tol.
    let threshold = tol * (Rational::one() - alpha);
    let mut x = x0.clone();
    let mut iterates = vec![x0.clone()];
    for _ in 0..budget {
        let y = image(space, map, &x)?;
        if !in_bottom(&y)? {
            iterates.push(y.clone());
            return escape(&x, y, iterates);
        }
        let done = y == x || pbar(&x, &y)? <= threshold;
        if y != x {
            iterates.push(y.clone());
        }
        if done {
            let mut point = y.clone();
            if y != x {
                for z in &bottom_fixed {
                    if pbar(&y, z)? <= *tol {
                        point = z.clone();
                        break;
                    }
                }
            }
            let steps = iterates.len() - 1;
            return Ok(BottomSolution {
                rho,
                bottom,
                reduced_contraction,
                iterates,
                outcome: BottomOutcome::FixedPoint {
                    point,
                    steps,
                    unique_in_bottom: bottom_fixed.len() <= 1,
                    bottom_fixed_points: bottom_fixed,
                },
            });
        }
        x = y;
    }
    Ok(BottomSolution {
        rho,
        bottom,
        reduced_contraction,
        iterates,
        outcome: BottomOutcome::BudgetExhausted { last: x },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantMapBottom {
    pub alphas: Vec<Rational>,
    /// `z` such that `T_z` satisfies the max-condition for every grid α.
    pub points: Vec<Point>,
    pub bottom: Vec<Point>,
    pub matches_bottom: bool,
}

/// Points whose constant map satisfies the max-condition on every pair, for
/// every α in the grid. An empty grid is treated as `{0}`, the binding case.
pub fn constant_map_bottom(space: &FinitePMSpace, alphas: &[Rational]) -> Result<ConstantMapBottom> {
    let alphas: Vec<Rational> = if alphas.is_empty() {
        vec![Rational::zero()]
    } else {
        alphas.to_vec()
    };
    for a in &alphas {
        Condition::max(a.clone()).validate()?;
    }
    let mut points = Vec::new();
    for z in space.points() {
        let tz = MapSpec::constant(z.clone());
        let mut ok = true;
        for a in &alphas {
            if !check_exhaustive(space, &tz, &Condition::max(a.clone()))?.holds() {
                ok = false;
                break;
            }
        }
        if ok {
            points.push(z.clone());
        }
    }
    let bottom: Vec<Point> = bottom_indices(space)
        .into_iter()
        .map(|i| space.point(i).clone())
        .collect();
    Ok(ConstantMapBottom {
        alphas,
        matches_bottom: points == bottom,
        points,
        bottom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{ex3_4_map, ex5_4_map, Catalog};
    use crate::rational::q;

    fn finite(id: &str) -> FinitePMSpace {
        Catalog::standard().space(id).unwrap().canonical_finite()
    }

    #[test]
    fn ex54_bottom_iteration() {
        let cat = Catalog::standard();
        let s = finite("ex5.4");
        // T(3/4) = 7/8 is not in the finite sample.
        let r = solve_on_bottom(&s, &ex5_4_map(), &q(1, 2), &Point::int(0), &q(1, 1000), 100);
        assert!(matches!(r, Err(PmError::MapClosure { .. })));

        let full = cat.space("ex5.4").unwrap();
        let bottom = ["0/1", "1/2", "3/4", "1/1"].map(|s| s.parse::<Point>().unwrap());
        let r = solve_on_bottom_sampled(full, &bottom, &ex5_4_map(), &q(1, 2), &Point::int(0), &q(1, 1000), 100).unwrap();
        assert_eq!(r.fixed_point(), Some(&Point::int(1)));
        assert!(r.reduced_contraction);
        assert_eq!(&r.iterates[..4], &[Point::int(0), Point::num(1, 2), Point::num(3, 4), Point::num(7, 8)]);
        match r.outcome {
            BottomOutcome::FixedPoint { bottom_fixed_points, unique_in_bottom, .. } => {
                assert_eq!(bottom_fixed_points, vec![Point::int(1)]);
                assert!(unique_in_bottom);
            }
            o => panic!("{o:?}"),
        }
        assert!(solve_on_bottom_sampled(full, &bottom, &ex5_4_map(), &q(1, 2), &Point::int(2), &q(1, 1000), 100).is_err());
    }

    #[test]
    fn constant_map_returns_in_one_step() {
        let s = finite("ex5.4");
        let z = Point::num(1, 2);
        let r = solve_on_bottom(&s, &MapSpec::constant(z.clone()), &q(1, 2), &Point::int(0), &q(1, 1000), 10).unwrap();
        assert_eq!(r.fixed_point(), Some(&z));
        assert!(matches!(r.outcome, BottomOutcome::FixedPoint { steps: 1, unique_in_bottom: true, .. }));
    }

    #[test]
    fn ex34_bottom_is_minus_five() {
        let s = finite("ex3.4");
        let r = solve_on_bottom(&s, &ex3_4_map(), &q(2, 3), &Point::int(-5), &Rational::zero(), 10).unwrap();
        assert_eq!(r.bottom, vec![Point::int(-5)]);
        assert_eq!(r.fixed_point(), Some(&Point::int(-5)));
    }

    #[test]
    fn escape_is_reported_with_witness() {
        let s = finite("ex5.8");
        let r = solve_on_bottom(&s, &MapSpec::constant(Point::tag("b")), &q(1, 2), &Point::tag("a"), &q(1, 10), 10).unwrap();
        match r.outcome {
            BottomOutcome::Escape { witness: Some(w), .. } => assert!(w.lhs > w.rhs),
            o => panic!("{o:?}"),
        }
        assert!(solve_on_bottom(&s, &MapSpec::identity(), &q(1, 2), &Point::tag("b"), &q(1, 10), 10).is_err());
    }

    #[test]
    fn constant_maps_recover_bottom() {
        let grid = [q(0, 1), q(1, 2), q(3, 4)];
        let r = constant_map_bottom(&finite("ex5.8"), &grid).unwrap();
        assert_eq!(r.points, vec![Point::tag("a")]);
        assert!(r.matches_bottom);

        let r = constant_map_bottom(&finite("ex5.5"), &grid).unwrap();
        assert_eq!(r.points, vec![Point::num(1, 2), Point::num(1, 3), Point::int(1)]);
        assert!(!r.points.contains(&Point::int(0)));
        assert!(r.matches_bottom);

        let one = FinitePMSpace::new(vec![Point::tag("x")], vec![vec![q(2, 1)]]).unwrap();
        assert_eq!(constant_map_bottom(&one, &[]).unwrap().points, vec![Point::tag("x")]);
        assert!(constant_map_bottom(&one, &[q(1, 1)]).is_err());
    }
}
