//! Separation axioms of the ball topology on a finite space.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::metrics::{ball_indices, radius_candidates};
use crate::space::FinitePMSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationClass {
    pub t0: bool,
    pub t1: bool,
    pub hausdorff: bool,
}

/// `y` lies in every ball around `x`.
pub(crate) fn in_every_ball(space: &FinitePMSpace, x: usize, y: usize) -> bool {
    space.at(x, y) == space.diag(x)
}

pub fn separation_class(space: &FinitePMSpace) -> Result<SeparationClass> {
    let n = space.len();
    let pairs = || (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)));

    let t0 = pairs().all(|(i, j)| !(in_every_ball(space, i, j) && in_every_ball(space, j, i)));
    let t1 = pairs().all(|(i, j)| space.at(i, j) > space.diag(i) && space.at(i, j) > space.diag(j));

    let candidates: Vec<_> = (0..n).map(|i| radius_candidates(space, i)).collect();
    let mut hausdorff = true;
    'pairs: for (i, j) in pairs() {
        for ei in &candidates[i] {
            let bi = ball_indices(space, i, ei)?;
            for ej in &candidates[j] {
                let bj = ball_indices(space, j, ej)?;
                if bi.iter().all(|k| !bj.contains(k)) {
                    continue 'pairs;
                }
            }
        }
        hausdorff = false;
        break;
    }
    Ok(SeparationClass { t0, t1, hausdorff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point;
    use crate::rational::q;
    use crate::space::matrix_from_strs;

    #[test]
    fn two_point_with_large_cross_distance_is_t1() {
        let s = FinitePMSpace::new(
            vec![Point::tag("a"), Point::tag("b")],
            matrix_from_strs(&[&["0", "2"], &["2", "1"]]).unwrap(),
        )
        .unwrap();
        let c = separation_class(&s).unwrap();
        assert!(c.t0 && c.t1 && c.hausdorff);
    }

    #[test]
    fn apex_like_point_breaks_t1_and_hausdorff() {
        // p(0, y) = p(0, 0): every ball around 0 is the whole space
        let s = FinitePMSpace::new(
            vec![Point::int(0), Point::num(1, 2), Point::num(1, 3)],
            matrix_from_strs(&[&["1", "1", "1"], &["1", "1/2", "1"], &["1", "1", "1/3"]]).unwrap(),
        )
        .unwrap();
        let c = separation_class(&s).unwrap();
        assert!(c.t0);
        assert!(!c.t1);
        assert!(!c.hausdorff);
    }

    #[test]
    fn metric_spaces_are_hausdorff() {
        let pts: Vec<Point> = (0..5).map(Point::int).collect();
        let s = FinitePMSpace::from_fn(pts, |x, y| {
            Ok((x.as_num().unwrap() - y.as_num().unwrap()).abs() * q(1, 3))
        })
        .unwrap();
        assert_eq!(
            separation_class(&s).unwrap(),
            SeparationClass { t0: true, t1: true, hausdorff: true }
        );
    }
}
