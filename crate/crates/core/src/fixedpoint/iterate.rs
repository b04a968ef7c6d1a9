//! Picard iteration with exact and windowed stopping rules.

use serde::{Deserialize, Serialize};

use crate::analysis::default_tol;
use crate::catalog::MapSpec;
use crate::error::{PmError, Result};
use crate::fixedpoint::conditions::image;
use crate::point::Point;
use crate::rational::{min_of, Rational};
use crate::space::PartialMetric;

pub const DEFAULT_WINDOW: usize = 8;
pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Clone, Debug)]
pub struct IterateOptions {
    pub tol: Rational,
    pub budget: usize,
    /// Consecutive small-gap steps required before the window certifies.
    pub window: usize,
    /// Candidate limits. After the window certifies, the iterate is matched
    /// against those landmarks that are exact fixed points.
    pub landmarks: Vec<Point>,
}

impl Default for IterateOptions {
    fn default() -> Self {
        IterateOptions {
            tol: default_tol(),
            budget: DEFAULT_BUDGET,
            window: DEFAULT_WINDOW,
            landmarks: Vec::new(),
        }
    }
}

impl IterateOptions {
    pub fn with_tol(mut self, tol: Rational) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_landmarks(mut self, landmarks: Vec<Point>) -> Self {
        self.landmarks = landmarks;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub n: usize,
    /// `p(x_n, x_{n+1})`
    pub p_next: Rational,
    /// `p(x_n, x_n)`
    pub p_self: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum Outcome {
    /// `point` is an exact fixed point. `reached` is false when the orbit
    /// only approaches it within the tolerance (landmark match).
    FixedPoint { point: Point, reached: bool },
    /// The window certified a Cauchy tail with self-distance `a`, but no
    /// landmark fixed point matched.
    CertifiedCauchy { a: Rational },
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub start: Point,
    pub iterates: Vec<Point>,
    pub steps: Vec<Step>,
    pub outcome: Outcome,
}

impl IterationTrace {
    pub fn fixed_point(&self) -> Option<&Point> {
        match &self.outcome {
            Outcome::FixedPoint { point, .. } => Some(point),
            _ => None,
        }
    }

    /// Number of map applications performed.
    pub fn applications(&self) -> usize {
        self.steps.len()
    }
}

fn match_landmark<S: PartialMetric + ?Sized>(
    space: &S,
    map: &MapSpec,
    x: &Point,
    landmarks: &[Point],
    tol: &Rational,
) -> Result<Option<Point>> {
    let pxx = space.p(x, x)?;
    for z in landmarks {
        if !space.contains(z) || map.apply(z).as_ref() != Some(z) {
            continue;
        }
        let pzz = space.p(z, z)?;
        let cross = (space.p(x, z)? - &pzz).abs();
        let own = (&pxx - &pzz).abs();
        if cross <= *tol && own <= *tol {
            return Ok(Some(z.clone()));
        }
    }
    Ok(None)
}

/// Iterates `x_{n+1} = T(x_n)` from `x0`.
///
/// Stops on an exact fixed point, or once `p(x_n,x_{n+1}) - min(p(x_n,x_n),
/// p(x_{n+1},x_{n+1})) <= tol` has held for `window` consecutive steps, or
/// when the budget runs out.
pub fn iterate<S: PartialMetric + ?Sized>(
    space: &S,
    map: &MapSpec,
    x0: &Point,
    opts: &IterateOptions,
) -> Result<IterationTrace> {
    if opts.budget == 0 {
        return Err(PmError::Argument("budget must be at least 1".into()));
    }
    if opts.tol.is_negative() {
        return Err(PmError::Argument(format!("tolerance must be nonnegative, got {}", opts.tol)));
    }
    if !space.contains(x0) {
        return Err(PmError::Domain(format!("{x0} is not a point of {}", space.name())));
    }
    let mut x = x0.clone();
    let mut iterates = vec![x.clone()];
    let mut steps = Vec::new();
    let mut streak = 0;
    for n in 0..opts.budget {
        let y = image(space, map, &x)?;
        let p_next = space.p(&x, &y)?;
        let p_self = space.p(&x, &x)?;
        let p_y = space.p(&y, &y)?;
        let gap = &p_next - min_of(&p_self, &p_y);
        steps.push(Step { n, p_next, p_self });
        if y == x {
            return Ok(IterationTrace {
                start: x0.clone(),
                iterates,
                steps,
                outcome: Outcome::FixedPoint { point: x, reached: true },
            });
        }
        iterates.push(y.clone());
        streak = if gap <= opts.tol { streak + 1 } else { 0 };
        if streak >= opts.window.max(1) {
            let outcome = match match_landmark(space, map, &y, &opts.landmarks, &opts.tol)? {
                Some(z) => Outcome::FixedPoint { point: z, reached: false },
                None => Outcome::CertifiedCauchy { a: p_y },
            };
            return Ok(IterationTrace {
                start: x0.clone(),
                iterates,
                steps,
                outcome,
            });
        }
        x = y;
    }
    Ok(IterationTrace {
        start: x0.clone(),
        iterates,
        steps,
        outcome: Outcome::BudgetExhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{ex3_4_map, ex5_4_map, Catalog};
    use crate::rational::q;
    use crate::space::FinitePMSpace;

    fn landmarks(cat: &Catalog, id: &str) -> IterateOptions {
        IterateOptions::default().with_landmarks(cat.space(id).unwrap().canonical_sample().to_vec())
    }

    #[test]
    fn ex54_from_zero_reaches_one() {
        let cat = Catalog::standard();
        let s = cat.space("ex5.4").unwrap();
        let t = iterate(s, &ex5_4_map(), &Point::int(0), &landmarks(&cat, "ex5.4")).unwrap();
        assert_eq!(t.fixed_point(), Some(&Point::int(1)));
        for (n, x) in t.iterates.iter().enumerate() {
            assert_eq!(*x, Point::Num(Rational::one() - Rational::dyadic(n as u32)));
        }
        assert_eq!(t.iterates[1], Point::num(1, 2));
        assert_eq!(t.iterates[3], Point::num(7, 8));
    }

    #[test]
    fn ex54_from_three_reaches_two() {
        let cat = Catalog::standard();
        let s = cat.space("ex5.4").unwrap();
        let t = iterate(s, &ex5_4_map(), &Point::int(3), &landmarks(&cat, "ex5.4")).unwrap();
        assert_eq!(t.fixed_point(), Some(&Point::int(2)));
        assert_eq!(&t.iterates[..3], &[Point::int(3), Point::num(5, 2), Point::num(9, 4)]);
    }

    #[test]
    fn without_landmarks_only_cauchy_is_claimed() {
        let s = Catalog::standard();
        let t = iterate(s.space("ex5.4").unwrap(), &ex5_4_map(), &Point::int(0), &IterateOptions::default()).unwrap();
        assert_eq!(t.outcome, Outcome::CertifiedCauchy { a: Rational::zero() });
    }

    #[test]
    fn ex34_three_steps() {
        let cat = Catalog::standard();
        let t = iterate(cat.space("ex3.4").unwrap(), &ex3_4_map(), &Point::num(1, 2), &IterateOptions::default()).unwrap();
        assert_eq!(t.iterates, vec![Point::num(1, 2), Point::int(-7), Point::int(-5)]);
        assert_eq!(t.applications(), 3);
        assert_eq!(t.outcome, Outcome::FixedPoint { point: Point::int(-5), reached: true });
    }

    #[test]
    fn budget_and_errors() {
        let s = FinitePMSpace::new(
            vec![Point::tag("a"), Point::tag("b")],
            vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]],
        )
        .unwrap();
        let swap = MapSpec::from_table("swap", vec![(Point::tag("a"), Point::tag("b")), (Point::tag("b"), Point::tag("a"))]);
        let t = iterate(&s, &swap, &Point::tag("a"), &IterateOptions::default().with_budget(5)).unwrap();
        assert_eq!(t.outcome, Outcome::BudgetExhausted);
        assert_eq!(t.applications(), 5);
        assert!(iterate(&s, &swap, &Point::tag("a"), &IterateOptions::default().with_budget(0)).is_err());
        let escape = MapSpec::constant(Point::tag("z"));
        assert!(matches!(
            iterate(&s, &escape, &Point::tag("a"), &IterateOptions::default()),
            Err(PmError::MapClosure { .. })
        ));
    }
}
