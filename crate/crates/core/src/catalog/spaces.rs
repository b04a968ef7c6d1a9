//! Formula-backed example spaces.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{PmError, Result};
use crate::point::Point;
use crate::rational::{max_of, q, Rational};
use crate::space::{FinitePMSpace, PartialMetric};

type Eval = Arc<dyn Fn(&Point, &Point) -> Rational + Send + Sync>;
type Domain = Arc<dyn Fn(&Point) -> bool + Send + Sync>;
type Sampler = Arc<dyn Fn(u64, usize) -> Vec<Point> + Send + Sync>;

/// Analytically declared bottom set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BottomDecl {
    Empty,
    Points(Vec<Point>),
    /// Rational interval with open/closed ends.
    Interval {
        lo: Rational,
        hi: Rational,
        lo_closed: bool,
        hi_closed: bool,
    },
    /// Every point of the domain.
    Whole,
}

impl BottomDecl {
    pub fn is_empty(&self) -> bool {
        matches!(self, BottomDecl::Empty)
    }

    /// Membership for points already known to be in the domain.
    pub fn contains(&self, x: &Point) -> bool {
        match self {
            BottomDecl::Empty => false,
            BottomDecl::Points(v) => v.contains(x),
            BottomDecl::Interval { lo, hi, lo_closed, hi_closed } => match x.as_num() {
                Some(r) => {
                    let above = if *lo_closed { r >= lo } else { r > lo };
                    let below = if *hi_closed { r <= hi } else { r < hi };
                    above && below
                }
                None => false,
            },
            BottomDecl::Whole => true,
        }
    }
}

impl fmt::Display for BottomDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BottomDecl::Empty => f.write_str("empty"),
            BottomDecl::Points(v) => {
                let s: Vec<String> = v.iter().map(|p| p.to_string()).collect();
                write!(f, "{{{}}}", s.join(", "))
            }
            BottomDecl::Interval { lo, hi, lo_closed, hi_closed } => write!(
                f,
                "{}{}, {}{}",
                if *lo_closed { '[' } else { '(' },
                lo,
                hi,
                if *hi_closed { ']' } else { ')' }
            ),
            BottomDecl::Whole => f.write_str("whole space"),
        }
    }
}

/// A possibly infinite space given by a formula, with declared metadata and
/// a finite canonical sample used for desk-scale checks.
#[derive(Clone)]
pub struct CatalogSpace {
    name: String,
    eval: Eval,
    domain: Domain,
    declared_rho: Option<Rational>,
    declared_bottom: BottomDecl,
    canonical: Vec<Point>,
    sampler: Sampler,
}

impl fmt::Debug for CatalogSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogSpace")
            .field("name", &self.name)
            .field("declared_rho", &self.declared_rho)
            .field("declared_bottom", &self.declared_bottom)
            .field("canonical", &self.canonical)
            .finish()
    }
}

impl CatalogSpace {
    pub fn new<E, D, S>(
        name: &str,
        eval: E,
        domain: D,
        declared_rho: Option<Rational>,
        declared_bottom: BottomDecl,
        canonical: Vec<Point>,
        sampler: S,
    ) -> Self
    where
        E: Fn(&Point, &Point) -> Rational + Send + Sync + 'static,
        D: Fn(&Point) -> bool + Send + Sync + 'static,
        S: Fn(u64, usize) -> Vec<Point> + Send + Sync + 'static,
    {
        CatalogSpace {
            name: name.to_string(),
            eval: Arc::new(eval),
            domain: Arc::new(domain),
            declared_rho,
            declared_bottom,
            canonical,
            sampler: Arc::new(sampler),
        }
    }

    pub fn declared_rho(&self) -> Option<&Rational> {
        self.declared_rho.as_ref()
    }

    pub fn declared_bottom(&self) -> &BottomDecl {
        &self.declared_bottom
    }

    pub fn canonical_sample(&self) -> &[Point] {
        &self.canonical
    }

    /// Deterministic random sample of domain points.
    pub fn sample(&self, seed: u64, count: usize) -> Vec<Point> {
        (self.sampler)(seed, count)
    }

    /// The canonical sample as a finite space.
    pub fn canonical_finite(&self) -> FinitePMSpace {
        FinitePMSpace::restrict(self, &self.canonical).expect("canonical sample lies in the domain")
    }

    pub fn restrict_to(&self, points: &[Point]) -> Result<FinitePMSpace> {
        FinitePMSpace::restrict(self, points)
    }

    /// Declared bottom membership (domain points only).
    pub fn in_declared_bottom(&self, x: &Point) -> bool {
        self.contains(x) && self.declared_bottom.contains(x)
    }

    /// Validates sampled points against the declaration: symmetry on all
    /// pairs, self-distances not below the declared infimum, and declared
    /// bottom members attaining it.
    pub fn validate_sample(&self, points: &[Point]) -> std::result::Result<(), String> {
        for x in points {
            if !self.contains(x) {
                return Err(format!("{x} outside the domain"));
            }
        }
        for x in points {
            for y in points {
                if (self.eval)(x, y) != (self.eval)(y, x) {
                    return Err(format!("asymmetric at ({x}, {y})"));
                }
            }
        }
        if let Some(rho) = &self.declared_rho {
            for x in points {
                let pxx = (self.eval)(x, x);
                if &pxx < rho {
                    return Err(format!("p({x},{x}) = {pxx} below declared infimum {rho}"));
                }
                if self.declared_bottom.contains(x) && &pxx != rho {
                    return Err(format!("{x} declared bottom but p({x},{x}) = {pxx} != {rho}"));
                }
                if !self.declared_bottom.contains(x) && &pxx == rho {
                    return Err(format!("{x} attains {rho} but is not declared bottom"));
                }
            }
        }
        Ok(())
    }
}

impl PartialMetric for CatalogSpace {
    fn name(&self) -> &str {
        &self.name
    }

    fn contains(&self, x: &Point) -> bool {
        (self.domain)(x)
    }

    fn p(&self, x: &Point, y: &Point) -> Result<Rational> {
        for z in [x, y] {
            if !self.contains(z) {
                return Err(PmError::Domain(z.to_string()));
            }
        }
        Ok((self.eval)(x, y))
    }

    fn rho(&self) -> Result<Rational> {
        self.declared_rho
            .clone()
            .ok_or_else(|| PmError::MissingMetadata(self.name.clone()))
    }
}

fn num(x: &Point) -> &Rational {
    x.as_num().expect("numeric point")
}

fn nums(v: &[(i64, i64)]) -> Vec<Point> {
    v.iter().map(|&(a, b)| Point::num(a, b)).collect()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational in the open unit interval with denominator up to 64.
fn unit_open(r: &mut ChaCha8Rng) -> Rational {
    let d = r.gen_range(2..=64i64);
    q(r.gen_range(1..d), d)
}

fn in_closed(x: &Rational, lo: i64, hi: i64) -> bool {
    *x >= Rational::from_int(lo) && *x <= Rational::from_int(hi)
}

/// `(0,1)` with `p(x,y) = 1 + max{x,y}`.
pub fn ex3_1() -> CatalogSpace {
    CatalogSpace::new(
        "ex3.1",
        |x, y| Rational::one() + max_of(num(x), num(y)),
        |x| matches!(x.as_num(), Some(r) if r.is_positive() && *r < Rational::one()),
        Some(Rational::one()),
        BottomDecl::Empty,
        nums(&[(1, 10), (1, 4), (1, 3), (1, 2), (3, 4), (9, 10)]),
        |seed, count| {
            let mut r = rng(seed);
            (0..count).map(|_| Point::Num(unit_open(&mut r))).collect()
        },
    )
}

/// Subsets of `{a,b,c}` with `p(x,y) = |x ∪ y|`.
pub fn ex3_2() -> CatalogSpace {
    CatalogSpace::new(
        "ex3.2",
        |x, y| Rational::from_int((x.as_set().unwrap() | y.as_set().unwrap()).count_ones() as i64),
        |x| matches!(x.as_set(), Some(m) if m < 8),
        Some(Rational::zero()),
        BottomDecl::Points(vec![Point::Set(0)]),
        (0..8).map(Point::Set).collect(),
        |seed, count| {
            let mut r = rng(seed);
            (0..count).map(|_| Point::Set(r.gen_range(0..8))).collect()
        },
    )
}

/// Weight of the example built from the metric `|x-y|` and a 1-Lipschitz
/// weight function on `{-7,-6,-5} ∪ [0,∞)`.
fn ex3_4_weight(x: &Rational) -> Rational {
    if !x.is_negative() {
        Rational::from_int(3) + x
    } else if *x == Rational::from_int(-5) {
        Rational::zero()
    } else {
        Rational::one()
    }
}

pub fn ex3_4() -> CatalogSpace {
    CatalogSpace::new(
        "ex3.4",
        |x, y| {
            let (x, y) = (num(x), num(y));
            ((x - y).abs() + ex3_4_weight(x) + ex3_4_weight(y)) * q(1, 2)
        },
        |x| match x.as_num() {
            Some(r) => !r.is_negative() || [-7, -6, -5].iter().any(|&k| *r == Rational::from_int(k)),
            None => false,
        },
        Some(Rational::zero()),
        BottomDecl::Points(vec![Point::int(-5)]),
        nums(&[(-7, 1), (-6, 1), (-5, 1), (0, 1), (1, 2), (1, 3), (1, 4), (1, 1), (2, 1)]),
        |seed, count| {
            let mut r = rng(seed);
            (0..count)
                .map(|_| match r.gen_range(0..4) {
                    0 => Point::int([-7, -6, -5][r.gen_range(0..3)]),
                    1 => Point::num(1, 2 * r.gen_range(1..=20)),
                    2 => Point::Num(unit_open(&mut r) * Rational::from_int(r.gen_range(1..=5))),
                    _ => Point::int(r.gen_range(0..=4)),
                })
                .collect()
        },
    )
}

/// `(0,1]` with `p(x,y) = max{x,y}`; the infimum 0 is not attained.
pub fn ex4_4() -> CatalogSpace {
    CatalogSpace::new(
        "ex4.4",
        |x, y| max_of(num(x), num(y)),
        |x| matches!(x.as_num(), Some(r) if r.is_positive() && *r <= Rational::one()),
        Some(Rational::zero()),
        BottomDecl::Empty,
        nums(&[(1, 10), (1, 4), (1, 2), (3, 4), (1, 1)]),
        |seed, count| {
            let mut r = rng(seed);
            (0..count)
                .map(|_| {
                    if r.gen_ratio(1, 8) {
                        Point::int(1)
                    } else {
                        Point::Num(unit_open(&mut r))
                    }
                })
                .collect()
        },
    )
}

/// `{0} ∪ ℕ` where distinct positive integers sit at `1 + 1/n + 1/m`.
pub fn ex4_8() -> CatalogSpace {
    CatalogSpace::new(
        "ex4.8",
        |x, y| {
            let (n, m) = (num(x), num(y));
            if n == m {
                Rational::one()
            } else if n.is_zero() {
                Rational::one() + m.recip()
            } else if m.is_zero() {
                Rational::one() + n.recip()
            } else {
                Rational::one() + n.recip() + m.recip()
            }
        },
        |x| matches!(x.as_num(), Some(r) if r.is_integer() && !r.is_negative()),
        Some(Rational::one()),
        BottomDecl::Whole,
        (0..=10).map(Point::int).collect(),
        |seed, count| {
            let mut r = rng(seed);
            (0..count).map(|_| Point::int(r.gen_range(0..=1000))).collect()
        },
    )
}

/// `[0,1] ∪ [2,3]`: `max{x,y}` if either point is in `[2,3]`, else `|x-y|`.
pub fn ex5_4() -> CatalogSpace {
    CatalogSpace::new(
        "ex5.4",
        |x, y| {
            let (x, y) = (num(x), num(y));
            if in_closed(x, 2, 3) || in_closed(y, 2, 3) {
                max_of(x, y)
            } else {
                (x - y).abs()
            }
        },
        |x| matches!(x.as_num(), Some(r) if in_closed(r, 0, 1) || in_closed(r, 2, 3)),
        Some(Rational::zero()),
        BottomDecl::Interval {
            lo: Rational::zero(),
            hi: Rational::one(),
            lo_closed: true,
            hi_closed: true,
        },
        nums(&[(0, 1), (1, 2), (3, 4), (1, 1), (2, 1), (9, 4), (5, 2), (3, 1)]),
        |seed, count| {
            let mut r = rng(seed);
            (0..count)
                .map(|_| {
                    let u = if r.gen_ratio(1, 6) {
                        Rational::from_int(r.gen_range(0..=1))
                    } else {
                        unit_open(&mut r)
                    };
                    if r.gen_bool(0.5) {
                        Point::Num(u)
                    } else {
                        Point::Num(u + Rational::from_int(2))
                    }
                })
                .collect()
        },
    )
}

/// `[0,1]` where positive points have zero self-distance and everything
/// else sits at distance 1.
pub fn ex5_5() -> CatalogSpace {
    CatalogSpace::new(
        "ex5.5",
        |x, y| {
            if x == y && num(x).is_positive() {
                Rational::zero()
            } else {
                Rational::one()
            }
        },
        |x| matches!(x.as_num(), Some(r) if in_closed(r, 0, 1)),
        Some(Rational::zero()),
        BottomDecl::Interval {
            lo: Rational::zero(),
            hi: Rational::one(),
            lo_closed: false,
            hi_closed: true,
        },
        nums(&[(0, 1), (1, 2), (1, 3), (1, 1)]),
        |seed, count| {
            let mut r = rng(seed);
            (0..count)
                .map(|_| match r.gen_range(0..6) {
                    0 => Point::int(0),
                    1 => Point::int(1),
                    _ => Point::Num(unit_open(&mut r)),
                })
                .collect()
        },
    )
}

fn ex5_6_member(r: &Rational) -> bool {
    use num_traits::One;
    r.is_zero() || (r.numer().is_one() && *r.denom() >= 2.into())
}

/// `{1/(q+1)} ∪ {0}` with `p(x,x) = x` for `x > 0`, 1 otherwise. The
/// infimum 0 of self-distances is not attained.
pub fn ex5_6() -> CatalogSpace {
    CatalogSpace::new(
        "ex5.6",
        |x, y| {
            let x = num(x);
            if x == num(y) && x.is_positive() {
                x.clone()
            } else {
                Rational::one()
            }
        },
        |x| matches!(x.as_num(), Some(r) if ex5_6_member(r)),
        Some(Rational::zero()),
        BottomDecl::Empty,
        nums(&[(0, 1), (1, 2), (1, 3), (1, 4), (1, 5)]),
        |seed, count| {
            let mut r = rng(seed);
            (0..count)
                .map(|i| {
                    if i == 0 || r.gen_ratio(1, 10) {
                        Point::int(0)
                    } else {
                        Point::num(1, r.gen_range(2..=2000))
                    }
                })
                .collect()
        },
    )
}

/// Two points with `p(a,a)=0`, `p(b,b)=1`, `p(a,b)=2`.
pub fn ex5_8() -> CatalogSpace {
    CatalogSpace::new(
        "ex5.8",
        |x, y| {
            let (x, y) = (x.as_tag().unwrap(), y.as_tag().unwrap());
            match (x, y) {
                ("a", "a") => Rational::zero(),
                ("b", "b") => Rational::one(),
                _ => Rational::from_int(2),
            }
        },
        |x| matches!(x.as_tag(), Some("a") | Some("b")),
        Some(Rational::zero()),
        BottomDecl::Points(vec![Point::tag("a")]),
        vec![Point::tag("a"), Point::tag("b")],
        |seed, count| {
            let mut r = rng(seed);
            (0..count)
                .map(|_| Point::tag(if r.gen_bool(0.5) { "a" } else { "b" }))
                .collect()
        },
    )
}

/// Id of the `i`-th discrete point of the apex construction.
pub fn apex_point(i: usize) -> Point {
    Point::Tag(format!("x{i}"))
}

pub fn apex_top() -> Point {
    Point::tag("a")
}

fn apex_index(x: &Point) -> Option<usize> {
    x.as_tag()?.strip_prefix('x')?.parse().ok()
}

/// A discrete space `X = {x0, .., x(k-1)}` (distance 1 between distinct
/// points) plus an extra point `a` at distance 2 from everything, itself
/// included.
pub fn apex(k: usize) -> CatalogSpace {
    let two = Rational::from_int(2);
    let mut canonical: Vec<Point> = (0..k).map(apex_point).collect();
    canonical.push(apex_top());
    CatalogSpace::new(
        "apex",
        move |x, y| {
            if x.as_tag() == Some("a") || y.as_tag() == Some("a") {
                two.clone()
            } else if x == y {
                Rational::zero()
            } else {
                Rational::one()
            }
        },
        move |x| x.as_tag() == Some("a") || matches!(apex_index(x), Some(i) if i < k),
        Some(Rational::zero()),
        BottomDecl::Points((0..k).map(apex_point).collect()),
        canonical,
        move |seed, count| {
            let mut r = rng(seed);
            (0..count)
                .map(|_| {
                    let i = r.gen_range(0..=k);
                    if i == k {
                        apex_top()
                    } else {
                        apex_point(i)
                    }
                })
                .collect()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ex3_4_values() {
        let s = ex3_4();
        assert_eq!(s.p(&Point::int(0), &Point::int(1)).unwrap(), q(4, 1));
        assert_eq!(s.p(&Point::int(-5), &Point::int(-6)).unwrap(), q(1, 1));
        assert!(s.p(&Point::int(-1), &Point::int(0)).is_err());
    }

    #[test]
    fn ex4_8_values() {
        let s = ex4_8();
        assert_eq!(s.p(&Point::int(2), &Point::int(3)).unwrap(), q(11, 6));
        assert_eq!(s.p(&Point::int(4), &Point::int(0)).unwrap(), q(5, 4));
        assert_eq!(s.p(&Point::int(4), &Point::int(4)).unwrap(), q(1, 1));
    }

    #[test]
    fn ex5_4_branches() {
        let s = ex5_4();
        assert_eq!(s.p(&Point::num(1, 2), &Point::num(3, 4)).unwrap(), q(1, 4));
        assert_eq!(s.p(&Point::num(1, 2), &Point::num(9, 4)).unwrap(), q(9, 4));
        assert!(!s.contains(&Point::num(3, 2)));
    }

    #[test]
    fn ex5_6_domain() {
        let s = ex5_6();
        assert!(s.contains(&Point::num(1, 7)));
        assert!(s.contains(&Point::int(0)));
        assert!(!s.contains(&Point::num(2, 7)));
        assert!(!s.contains(&Point::int(1)));
    }

    #[test]
    fn samples_match_declarations() {
        for space in [ex3_1(), ex3_2(), ex3_4(), ex4_4(), ex4_8(), ex5_4(), ex5_5(), ex5_6(), ex5_8(), apex(5)] {
            space.validate_sample(space.canonical_sample()).unwrap();
            for seed in 0..4 {
                let pts = space.sample(seed, 40);
                assert_eq!(pts.len(), 40);
                space.validate_sample(&pts).unwrap_or_else(|e| panic!("{}: {e}", space.name()));
            }
        }
    }

    #[test]
    fn missing_rho_is_metadata_error() {
        let s = CatalogSpace::new(
            "bare",
            |_, _| Rational::one(),
            |_| true,
            None,
            BottomDecl::Empty,
            vec![],
            |_, _| vec![],
        );
        assert!(matches!(s.rho(), Err(PmError::MissingMetadata(_))));
    }
}
