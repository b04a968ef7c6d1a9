//! Axiom verification for finite spaces.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::point::Point;
use crate::rational::Rational;
use crate::space::FinitePMSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    /// `x = y` iff `p(x,x) = p(x,y) = p(y,y)`.
    P1,
    /// `p(x,x) <= p(y,x)`.
    P2,
    /// `p(x,y) = p(y,x)`.
    P3,
    /// `p(x,y) <= p(x,z) + p(z,y) - p(z,z)`.
    P4,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub verdict: Verdict,
    pub violated_axiom: Option<Axiom>,
    /// Offending points: `(x, y)` for P1-P3, `(x, y, z)` for P4.
    pub witness: Vec<Point>,
    /// The two sides of the failed comparison (empty on pass).
    pub lhs: Option<Rational>,
    pub rhs: Option<Rational>,
}

impl AxiomReport {
    fn pass() -> Self {
        AxiomReport {
            verdict: Verdict::Pass,
            violated_axiom: None,
            witness: Vec::new(),
            lhs: None,
            rhs: None,
        }
    }

    fn fail(axiom: Axiom, witness: Vec<Point>, lhs: Rational, rhs: Rational) -> Self {
        AxiomReport {
            verdict: Verdict::Fail,
            violated_axiom: Some(axiom),
            witness,
            lhs: Some(lhs),
            rhs: Some(rhs),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Re-evaluates the witness against `space`; true iff the recorded
    /// violation is reproduced exactly.
    pub fn reproduces_on(&self, space: &FinitePMSpace) -> bool {
        let Some(axiom) = self.violated_axiom else {
            return self.passed();
        };
        let idx: Option<Vec<usize>> = self.witness.iter().map(|w| space.index_of(w)).collect();
        let Some(idx) = idx else { return false };
        match (axiom, idx.as_slice()) {
            (Axiom::P1, &[i, j]) => violates_p1(space, i, j).is_some(),
            (Axiom::P2, &[i, j]) => violates_p2(space, i, j).is_some(),
            (Axiom::P3, &[i, j]) => violates_p3(space, i, j).is_some(),
            (Axiom::P4, &[i, j, k]) => violates_p4(space, i, j, k).is_some(),
            _ => false,
        }
    }
}

fn violates_p1(s: &FinitePMSpace, i: usize, j: usize) -> Option<(Rational, Rational)> {
    // The "x = y implies equality" direction is trivially true for i == j.
    (i != j && s.diag(i) == s.at(i, j) && s.at(i, j) == s.diag(j))
        .then(|| (s.diag(i).clone(), s.diag(j).clone()))
}

fn violates_p2(s: &FinitePMSpace, i: usize, j: usize) -> Option<(Rational, Rational)> {
    (s.diag(i) > s.at(j, i)).then(|| (s.diag(i).clone(), s.at(j, i).clone()))
}

fn violates_p3(s: &FinitePMSpace, i: usize, j: usize) -> Option<(Rational, Rational)> {
    (s.at(i, j) != s.at(j, i)).then(|| (s.at(i, j).clone(), s.at(j, i).clone()))
}

fn violates_p4(s: &FinitePMSpace, i: usize, j: usize, k: usize) -> Option<(Rational, Rational)> {
    let rhs = s.at(i, k) + s.at(k, j) - s.diag(k);
    (s.at(i, j) > &rhs).then(|| (s.at(i, j).clone(), rhs))
}

/// Checks P1-P4 exhaustively.
///
/// Scan order: every ordered pair `(i, j)` in lexicographic order is tested
/// against P1, P2, P3 in that order; then every triple `(i, j, k)` in
/// lexicographic order against P4. The first violation wins.
pub fn check_axioms(space: &FinitePMSpace) -> AxiomReport {
    let n = space.len();
    let pt = |i: usize| space.point(i).clone();
    for i in 0..n {
        for j in 0..n {
            if let Some((l, r)) = violates_p1(space, i, j) {
                return AxiomReport::fail(Axiom::P1, vec![pt(i), pt(j)], l, r);
            }
            if let Some((l, r)) = violates_p2(space, i, j) {
                return AxiomReport::fail(Axiom::P2, vec![pt(i), pt(j)], l, r);
            }
            if let Some((l, r)) = violates_p3(space, i, j) {
                return AxiomReport::fail(Axiom::P3, vec![pt(i), pt(j)], l, r);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if let Some((l, r)) = violates_p4(space, i, j, k) {
                    return AxiomReport::fail(Axiom::P4, vec![pt(i), pt(j), pt(k)], l, r);
                }
            }
        }
    }
    AxiomReport::pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::space::matrix_from_strs;

    fn ab(rows: &[&[&str]]) -> FinitePMSpace {
        FinitePMSpace::new(vec![Point::tag("a"), Point::tag("b")], matrix_from_strs(rows).unwrap()).unwrap()
    }

    #[test]
    fn two_point_partial_metric_passes() {
        let s = ab(&[&["0", "2"], &["2", "1"]]);
        assert!(check_axioms(&s).passed());
    }

    #[test]
    fn small_off_diagonal_fails_p2() {
        let s = ab(&[&["1", "0"], &["0", "0"]]);
        let r = check_axioms(&s);
        assert_eq!(r.violated_axiom, Some(Axiom::P2));
        assert_eq!(r.witness, vec![Point::tag("a"), Point::tag("b")]);
        assert_eq!((r.lhs.clone().unwrap(), r.rhs.clone().unwrap()), (q(1, 1), q(0, 1)));
        assert!(r.reproduces_on(&s));
    }

    #[test]
    fn asymmetry_fails_p3() {
        let s = ab(&[&["0", "1"], &["2", "0"]]);
        let r = check_axioms(&s);
        assert_eq!(r.violated_axiom, Some(Axiom::P3));
        assert!(r.reproduces_on(&s));
    }

    #[test]
    fn indistinguishable_points_fail_p1() {
        let s = ab(&[&["1", "1"], &["1", "1"]]);
        let r = check_axioms(&s);
        assert_eq!(r.violated_axiom, Some(Axiom::P1));
        assert!(r.reproduces_on(&s));
    }

    #[test]
    fn triangle_failure_is_p4() {
        let pts = vec![Point::tag("x"), Point::tag("y"), Point::tag("z")];
        let m = matrix_from_strs(&[&["0", "5", "1"], &["5", "0", "1"], &["1", "1", "0"]]).unwrap();
        let s = FinitePMSpace::new(pts, m).unwrap();
        let r = check_axioms(&s);
        assert_eq!(r.violated_axiom, Some(Axiom::P4));
        assert_eq!(r.witness, vec![Point::tag("x"), Point::tag("y"), Point::tag("z")]);
        assert_eq!(r.lhs, Some(q(5, 1)));
        assert_eq!(r.rhs, Some(q(2, 1)));
        assert!(r.reproduces_on(&s));
    }

    #[test]
    fn report_json_shape() {
        let s = ab(&[&["0", "1"], &["2", "0"]]);
        let v = serde_json::to_value(check_axioms(&s)).unwrap();
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["violated_axiom"], "P3");
        assert_eq!(v["witness"][1], "b");
    }
}
