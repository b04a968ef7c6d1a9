//! Derived distances, bottom sets, balls.

use std::collections::BTreeSet;

use crate::error::{PmError, Result};
use crate::point::Point;
use crate::rational::{q, Rational};
use crate::space::{FinitePMSpace, PartialMetric};

/// Induced metric `2p(x,y) - p(x,x) - p(y,y)`.
pub fn p_m<S: PartialMetric + ?Sized>(space: &S, x: &Point, y: &Point) -> Result<Rational> {
    let pxy = space.p(x, y)?;
    let pxx = space.p(x, x)?;
    let pyy = space.p(y, y)?;
    Ok(&pxy + &pxy - pxx - pyy)
}

/// `p(x,y)` off the diagonal, `0` on it.
pub fn d_metric<S: PartialMetric + ?Sized>(space: &S, x: &Point, y: &Point) -> Result<Rational> {
    let pxy = space.p(x, y)?;
    Ok(if x == y { Rational::zero() } else { pxy })
}

/// `p(x,y) - rho_p`.
pub fn p_bar<S: PartialMetric + ?Sized>(space: &S, x: &Point, y: &Point) -> Result<Rational> {
    let pxy = space.p(x, y)?;
    Ok(pxy - space.rho()?)
}

/// Minimum self-distance and whether it is attained (always, for a finite
/// nonempty space).
pub fn rho_p(space: &FinitePMSpace) -> Result<(Rational, bool)> {
    Ok((space.rho()?, true))
}

/// Indices of points whose self-distance equals `rho_p`.
pub fn bottom_indices(space: &FinitePMSpace) -> Vec<usize> {
    let Ok(rho) = space.rho() else {
        return Vec::new();
    };
    (0..space.len()).filter(|&i| *space.diag(i) == rho).collect()
}

pub fn bottom_set(space: &FinitePMSpace) -> Vec<Point> {
    bottom_indices(space)
        .into_iter()
        .map(|i| space.point(i).clone())
        .collect()
}

fn require_positive(eps: &Rational) -> Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(PmError::Argument(format!("ball radius must be positive, got {eps}")))
    }
}

/// `y ∈ B(center, eps)`, i.e. `p(center, y) < p(center, center) + eps`.
pub fn ball_contains<S: PartialMetric + ?Sized>(
    space: &S,
    center: &Point,
    eps: &Rational,
    y: &Point,
) -> Result<bool> {
    require_positive(eps)?;
    let pcy = space.p(center, y)?;
    let pcc = space.p(center, center)?;
    Ok(pcy < pcc + eps)
}

/// Materialized ball of a finite space, as indices in space order.
pub fn ball_indices(space: &FinitePMSpace, center: usize, eps: &Rational) -> Result<Vec<usize>> {
    require_positive(eps)?;
    let bound = space.diag(center) + eps;
    Ok((0..space.len()).filter(|&j| *space.at(center, j) < bound).collect())
}

pub fn ball(space: &FinitePMSpace, center: &Point, eps: &Rational) -> Result<Vec<Point>> {
    let c = space.require_index(center)?;
    Ok(ball_indices(space, c, eps)?
        .into_iter()
        .map(|j| space.point(j).clone())
        .collect())
}

/// Largest matrix entry.
pub fn diameter(space: &FinitePMSpace) -> Rational {
    space
        .matrix()
        .iter()
        .flatten()
        .max()
        .cloned()
        .unwrap_or_else(Rational::zero)
}

/// Radii that realize every distinct ball around `center`.
///
/// Membership of `y` changes only at the thresholds `p(center,y) -
/// p(center,center)`, so the positive thresholds, the midpoints between
/// consecutive ones, half the smallest one and one past the largest one
/// together hit every ball.
pub fn radius_candidates(space: &FinitePMSpace, center: usize) -> Vec<Rational> {
    let gaps: BTreeSet<Rational> = (0..space.len())
        .map(|j| space.at(center, j) - space.diag(center))
        .filter(Rational::is_positive)
        .collect();
    expand_thresholds(&gaps)
}

/// Union of [`radius_candidates`] over all centers.
pub fn all_radius_candidates(space: &FinitePMSpace) -> Vec<Rational> {
    let gaps: BTreeSet<Rational> = (0..space.len())
        .flat_map(|i| (0..space.len()).map(move |j| (i, j)))
        .map(|(i, j)| space.at(i, j) - space.diag(i))
        .filter(Rational::is_positive)
        .collect();
    expand_thresholds(&gaps)
}

fn expand_thresholds(gaps: &BTreeSet<Rational>) -> Vec<Rational> {
    let half = q(1, 2);
    let mut out: BTreeSet<Rational> = gaps.clone();
    let sorted: Vec<&Rational> = gaps.iter().collect();
    for w in sorted.windows(2) {
        out.insert((w[0] + w[1]) * &half);
    }
    match (sorted.first(), sorted.last()) {
        (Some(lo), Some(hi)) => {
            out.insert(*lo * &half);
            out.insert(*hi + &Rational::one());
        }
        _ => {
            out.insert(Rational::one());
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::matrix_from_strs;

    fn ex58() -> FinitePMSpace {
        FinitePMSpace::new(
            vec![Point::tag("a"), Point::tag("b")],
            matrix_from_strs(&[&["0", "2"], &["2", "1"]]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn derived_values_on_two_points() {
        let s = ex58();
        let (a, b) = (Point::tag("a"), Point::tag("b"));
        assert_eq!(p_m(&s, &a, &b).unwrap(), q(3, 1));
        assert_eq!(p_m(&s, &b, &b).unwrap(), Rational::zero());
        assert_eq!(d_metric(&s, &b, &b).unwrap(), Rational::zero());
        assert_eq!(s.p(&b, &b).unwrap(), q(1, 1));
        assert_eq!(p_bar(&s, &b, &b).unwrap(), q(1, 1));
        assert_eq!(rho_p(&s).unwrap(), (q(0, 1), true));
        assert_eq!(bottom_set(&s), vec![a.clone()]);
        assert_eq!(diameter(&s), q(2, 1));
    }

    #[test]
    fn singleton_rho_and_diameter() {
        let s = FinitePMSpace::new(vec![Point::tag("x")], vec![vec![q(5, 1)]]).unwrap();
        assert_eq!(rho_p(&s).unwrap().0, q(5, 1));
        assert_eq!(bottom_set(&s), vec![Point::tag("x")]);
        let z = FinitePMSpace::new(vec![Point::tag("x")], vec![vec![q(0, 1)]]).unwrap();
        assert_eq!(diameter(&z), Rational::zero());
    }

    #[test]
    fn ball_is_strict_and_contains_center() {
        let s = ex58();
        let a = Point::tag("a");
        assert_eq!(ball(&s, &a, &q(2, 1)).unwrap(), vec![a.clone()]);
        assert_eq!(ball(&s, &a, &q(21, 10)).unwrap().len(), 2);
        for eps in [q(1, 1000), q(1, 1), q(7, 2)] {
            for x in s.points() {
                assert!(ball(&s, x, &eps).unwrap().contains(x));
            }
        }
        assert!(matches!(ball(&s, &a, &Rational::zero()), Err(PmError::Argument(_))));
        assert!(ball_contains(&s, &a, &q(-1, 2), &a).is_err());
    }

    #[test]
    fn metric_space_bottom_is_everything() {
        let pts: Vec<Point> = (0..4).map(Point::int).collect();
        let s = FinitePMSpace::from_fn(pts.clone(), |x, y| {
            Ok((x.as_num().unwrap() - y.as_num().unwrap()).abs())
        })
        .unwrap();
        assert_eq!(bottom_set(&s), pts);
    }

    #[test]
    fn candidates_cover_thresholds() {
        let s = ex58();
        // from a: gap 2; from b: gap 1
        assert_eq!(radius_candidates(&s, 0), vec![q(1, 1), q(2, 1), q(3, 1)]);
        assert_eq!(
            all_radius_candidates(&s),
            vec![q(1, 2), q(1, 1), q(3, 2), q(2, 1), q(3, 1)]
        );
    }
}
