//! Finite-horizon convergence and Cauchy analyzers.
//!
//! None of these functions asserts a true limit. A positive verdict is a
//! certificate over the terms `1..=N`: every gap from some tail index `n0`
//! onwards is within `tol`, and `n0` falls inside the final quarter of the
//! horizon. A refutation is issued only from exact information: a periodic
//! tail, or a generator marked `exact_tail` whose computed final-quarter gaps
//! repeat with a short period.

use serde::{Deserialize, Serialize};

use crate::analysis::sequence::SequenceSpec;
use crate::error::{PmError, Result};
use crate::metrics::p_m;
use crate::point::Point;
use crate::rational::{max_of, Rational};
use crate::space::PartialMetric;

/// Default tolerance `10^-6`.
pub fn default_tol() -> Rational {
    Rational::new(1, 1_000_000)
}

pub const DEFAULT_HORIZON: usize = 10_000;

/// Longest period searched for when reading exact tails of generators.
const MAX_TAIL_PERIOD: usize = 8;

/// Pairs sampled from the tail by the Cauchy analyzer.
const CAUCHY_TAIL_SAMPLES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Converges,
    ProperlyConverges,
    Inconclusive,
    Refuted,
}

/// Which quantity failed to approach `p(x,x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapKind {
    /// `|p(x_n, x) - p(x, x)|`
    Cross,
    /// `|p(x_n, x_n) - p(x, x)|`
    SelfDistance,
    /// `p_m(x_n, x)`
    Induced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapWitness {
    pub kind: GapKind,
    pub index: usize,
    pub term: Point,
    pub gap: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub mode: Mode,
    pub target: Point,
    /// Smallest `n0` with every gap in `n0..=N` within `tol`; `None` when
    /// even the last term misses.
    pub tail_start: Option<usize>,
    /// Largest gap over the certified tail (or over the final quarter when
    /// nothing is certified).
    pub achieved_gap: Rational,
    pub tol: Rational,
    pub horizon: usize,
    pub witness: Option<GapWitness>,
}

impl ConvergenceReport {
    pub fn certified(&self) -> bool {
        matches!(self.mode, Mode::Converges | Mode::ProperlyConverges)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict", content = "a")]
pub enum CauchyVerdict {
    CauchyTo(Rational),
    Inconclusive,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CauchyPair {
    pub n: usize,
    pub m: usize,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CauchyReport {
    pub verdict: CauchyVerdict,
    pub tail_start: usize,
    /// Smallest and largest pairwise value seen in the tail.
    pub low: CauchyPair,
    pub high: CauchyPair,
    pub tol: Rational,
    pub horizon: usize,
}

fn validate(seq: &SequenceSpec, tol: &Rational, horizon: usize) -> Result<usize> {
    if seq.is_empty() {
        return Err(PmError::Argument("empty sequence".into()));
    }
    if tol.is_negative() {
        return Err(PmError::Argument(format!("tolerance must be nonnegative, got {tol}")));
    }
    if horizon == 0 {
        return Err(PmError::Argument("horizon must be at least 1".into()));
    }
    Ok(seq.effective_horizon(horizon))
}

/// First index of the final quarter of `1..=n`.
pub fn final_quarter_start(n: usize) -> usize {
    (n - n / 4).max(1)
}

struct GapSeries {
    kind: GapKind,
    gaps: Vec<Rational>,
}

/// Certificate from a gap series: `(n0, max gap on n0..=N)`.
fn certify(gaps: &[Rational], tol: &Rational) -> (Option<usize>, Rational) {
    let mut n0 = None;
    let mut worst = Rational::zero();
    for (i, g) in gaps.iter().enumerate().rev() {
        if g > tol {
            break;
        }
        n0 = Some(i + 1);
        worst = max_of(&worst, g);
    }
    (n0, worst)
}

/// Shortest period `q <= MAX_TAIL_PERIOD` of `values` (if any).
fn tail_period<T: PartialEq>(values: &[T]) -> Option<usize> {
    (1..=MAX_TAIL_PERIOD.min(values.len().saturating_sub(1)).max(1))
        .find(|&q| q <= values.len() && (q..values.len()).all(|i| values[i] == values[i - q]))
}

fn points_of<S: PartialMetric + ?Sized>(space: &S, seq: &SequenceSpec, n: usize) -> Result<Vec<Point>> {
    let terms = seq.terms(n);
    if let Some(bad) = terms.iter().find(|t| !space.contains(t)) {
        return Err(PmError::Domain(bad.to_string()));
    }
    Ok(terms)
}

/// Exact gaps over the cycle of a periodic sequence, or `None` when the
/// sequence has no known periodic tail.
fn cycle_gaps<F>(seq: &SequenceSpec, mut gap: F) -> Result<Option<Vec<(Point, Rational)>>>
where
    F: FnMut(&Point) -> Result<Rational>,
{
    match seq {
        SequenceSpec::Periodic { cycle, .. } if !cycle.is_empty() => cycle
            .iter()
            .map(|c| Ok((c.clone(), gap(c)?)))
            .collect::<Result<Vec<_>>>()
            .map(Some),
        _ => Ok(None),
    }
}

fn analyze<S: PartialMetric + ?Sized>(
    space: &S,
    seq: &SequenceSpec,
    target: &Point,
    tol: &Rational,
    horizon: usize,
    series: Vec<GapKind>,
    success: Mode,
) -> Result<ConvergenceReport> {
    let n = validate(seq, tol, horizon)?;
    if !space.contains(target) {
        return Err(PmError::Domain(target.to_string()));
    }
    let terms = points_of(space, seq, n)?;
    let pxx = space.p(target, target)?;
    let gap_of = |kind: GapKind, t: &Point| -> Result<Rational> {
        Ok(match kind {
            GapKind::Cross => (space.p(t, target)? - &pxx).abs(),
            GapKind::SelfDistance => (space.p(t, t)? - &pxx).abs(),
            GapKind::Induced => p_m(space, t, target)?,
        })
    };

    let all: Vec<GapSeries> = series
        .iter()
        .map(|&kind| {
            let gaps = terms.iter().map(|t| gap_of(kind, t)).collect::<Result<Vec<_>>>()?;
            Ok(GapSeries { kind, gaps })
        })
        .collect::<Result<_>>()?;

    let quarter = final_quarter_start(terms.len());
    let mut tail_start = Some(1usize);
    let mut achieved = Rational::zero();
    for s in &all {
        let (n0, worst) = certify(&s.gaps, tol);
        tail_start = match (tail_start, n0) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        achieved = max_of(&achieved, &worst);
    }
    if let Some(n0) = tail_start {
        if n0 <= quarter {
            let achieved = all
                .iter()
                .flat_map(|s| s.gaps[n0 - 1..].iter())
                .fold(Rational::zero(), |a, g| max_of(&a, g));
            return Ok(ConvergenceReport {
                mode: success,
                target: target.clone(),
                tail_start: Some(n0),
                achieved_gap: achieved,
                tol: tol.clone(),
                horizon: terms.len(),
                witness: None,
            });
        }
    }

    // Largest final-quarter gap, reported with the uncertified verdicts.
    let (worst_kind, worst_idx) = all
        .iter()
        .flat_map(|s| (quarter..=terms.len()).map(move |i| (s.kind, i, &s.gaps[i - 1])))
        .fold(None::<(GapKind, usize, &Rational)>, |acc, cur| match acc {
            Some(a) if a.2 >= cur.2 => Some(a),
            _ => Some(cur),
        })
        .map(|(k, i, _)| (k, i))
        .expect("nonempty tail");
    let worst_series = all.iter().find(|s| s.kind == worst_kind).unwrap();
    let mut report = ConvergenceReport {
        mode: Mode::Inconclusive,
        target: target.clone(),
        tail_start,
        achieved_gap: worst_series.gaps[worst_idx - 1].clone(),
        tol: tol.clone(),
        horizon: terms.len(),
        witness: Some(GapWitness {
            kind: worst_kind,
            index: worst_idx,
            term: terms[worst_idx - 1].clone(),
            gap: worst_series.gaps[worst_idx - 1].clone(),
        }),
    };

    // Exact refutation from a periodic tail.
    for &kind in &series {
        if let Some(cg) = cycle_gaps(seq, |c| gap_of(kind, c))? {
            if let Some((pos, (term, gap))) = cg.iter().enumerate().find(|(_, (_, g))| g > tol) {
                let prefix = match seq {
                    SequenceSpec::Periodic { prefix, .. } => prefix.len(),
                    _ => 0,
                };
                report.mode = Mode::Refuted;
                report.witness = Some(GapWitness {
                    kind,
                    index: prefix + pos + 1,
                    term: term.clone(),
                    gap: gap.clone(),
                });
                return Ok(report);
            }
        }
    }

    // Exact-tail generators: a short-period gap pattern exceeding tol.
    if let SequenceSpec::Generator { exact_tail: true, .. } = seq {
        for s in &all {
            let tail = &s.gaps[quarter - 1..];
            if let Some(period) = tail_period(tail) {
                let last_window = &tail[tail.len() - period.min(tail.len())..];
                if let Some(off) = last_window.iter().position(|g| g > tol) {
                    let idx = terms.len() - last_window.len() + off + 1;
                    report.mode = Mode::Refuted;
                    report.witness = Some(GapWitness {
                        kind: s.kind,
                        index: idx,
                        term: terms[idx - 1].clone(),
                        gap: s.gaps[idx - 1].clone(),
                    });
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Plain convergence: `p(x_n, x) -> p(x, x)`.
pub fn converges_to<S: PartialMetric + ?Sized>(
    space: &S,
    seq: &SequenceSpec,
    target: &Point,
    tol: &Rational,
    horizon: usize,
) -> Result<ConvergenceReport> {
    analyze(space, seq, target, tol, horizon, vec![GapKind::Cross], Mode::Converges)
}

/// Proper convergence: plain convergence plus `p(x_n, x_n) -> p(x, x)`.
pub fn properly_converges<S: PartialMetric + ?Sized>(
    space: &S,
    seq: &SequenceSpec,
    target: &Point,
    tol: &Rational,
    horizon: usize,
) -> Result<ConvergenceReport> {
    let plain = converges_to(space, seq, target, tol, horizon)?;
    if plain.mode == Mode::Refuted {
        return Ok(plain);
    }
    analyze(
        space,
        seq,
        target,
        tol,
        horizon,
        vec![GapKind::Cross, GapKind::SelfDistance],
        Mode::ProperlyConverges,
    )
}

/// Convergence in the induced metric: `p_m(x_n, x) -> 0`.
pub fn converges_in_induced_metric<S: PartialMetric + ?Sized>(
    space: &S,
    seq: &SequenceSpec,
    target: &Point,
    tol: &Rational,
    horizon: usize,
) -> Result<ConvergenceReport> {
    analyze(space, seq, target, tol, horizon, vec![GapKind::Induced], Mode::Converges)
}

/// Evenly spread tail indices, always including both ends.
fn tail_indices(start: usize, end: usize) -> Vec<usize> {
    let len = end - start + 1;
    if len <= CAUCHY_TAIL_SAMPLES {
        return (start..=end).collect();
    }
    let mut v: Vec<usize> = (0..CAUCHY_TAIL_SAMPLES)
        .map(|k| start + k * (len - 1) / (CAUCHY_TAIL_SAMPLES - 1))
        .collect();
    v.dedup();
    v
}

fn pair_values<D>(idx: &[usize], mut dist: D) -> Result<Vec<CauchyPair>>
where
    D: FnMut(usize, usize) -> Result<Rational>,
{
    let mut out = Vec::with_capacity(idx.len() * (idx.len() + 1) / 2);
    for (a, &n) in idx.iter().enumerate() {
        for &m in &idx[a..] {
            out.push(CauchyPair { n, m, value: dist(n, m)? });
        }
    }
    Ok(out)
}

fn cauchy_with<D>(
    seq: &SequenceSpec,
    tol: &Rational,
    horizon: usize,
    terms: &[Point],
    mut dist: D,
) -> Result<CauchyReport>
where
    D: FnMut(&Point, &Point) -> Result<Rational>,
{
    let n = terms.len();
    let start = final_quarter_start(n);
    let idx = tail_indices(start, n);
    let pairs = pair_values(&idx, |i, j| dist(&terms[i - 1], &terms[j - 1]))?;
    let a = dist(&terms[n - 1], &terms[n - 1])?;

    let low = pairs.iter().min_by(|x, y| x.value.cmp(&y.value)).unwrap().clone();
    let high = pairs.iter().max_by(|x, y| x.value.cmp(&y.value)).unwrap().clone();
    let within = pairs.iter().all(|p| (&p.value - &a).abs() <= *tol);

    let mut report = CauchyReport {
        verdict: CauchyVerdict::Inconclusive,
        tail_start: start,
        low,
        high,
        tol: tol.clone(),
        horizon,
    };
    if within {
        report.verdict = CauchyVerdict::CauchyTo(a);
        return Ok(report);
    }

    let twice = tol + tol;
    // Periodic tails: the cycle's pairwise values are exact accumulation values.
    if let SequenceSpec::Periodic { prefix, cycle } = seq {
        if !cycle.is_empty() {
            let base = prefix.len();
            let cyc_idx: Vec<usize> = (1..=cycle.len()).map(|i| base + i).collect();
            let vals = pair_values(&cyc_idx, |i, j| {
                dist(&cycle[i - base - 1], &cycle[j - base - 1])
            })?;
            let lo = vals.iter().min_by(|x, y| x.value.cmp(&y.value)).unwrap().clone();
            let hi = vals.iter().max_by(|x, y| x.value.cmp(&y.value)).unwrap().clone();
            if &hi.value - &lo.value > twice {
                report.verdict = CauchyVerdict::Refuted;
                report.low = lo;
                report.high = hi;
            }
            return Ok(report);
        }
    }
    if seq.exact_tail() && &report.high.value - &report.low.value > twice {
        let tail = &terms[start - 1..];
        if tail_period(tail).is_some() {
            report.verdict = CauchyVerdict::Refuted;
        }
    }
    Ok(report)
}

/// Cauchy analysis on `p`: do tail pairs `p(x_n, x_m)` settle at one value?
pub fn is_cauchy<S: PartialMetric + ?Sized>(
    space: &S,
    seq: &SequenceSpec,
    tol: &Rational,
    horizon: usize,
) -> Result<CauchyReport> {
    let n = validate(seq, tol, horizon)?;
    let terms = points_of(space, seq, n)?;
    cauchy_with(seq, tol, n, &terms, |x, y| space.p(x, y))
}

/// Cauchy analysis in the induced metric `p_m`.
pub fn is_cauchy_induced<S: PartialMetric + ?Sized>(
    space: &S,
    seq: &SequenceSpec,
    tol: &Rational,
    horizon: usize,
) -> Result<CauchyReport> {
    let n = validate(seq, tol, horizon)?;
    let terms = points_of(space, seq, n)?;
    cauchy_with(seq, tol, n, &terms, |x, y| p_m(space, x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::rational::q;

    #[test]
    fn constant_sequences() {
        let cat = Catalog::standard();
        let s = cat.space("ex5.8").unwrap();
        let seq = SequenceSpec::constant(Point::tag("b"));
        let r = converges_to(s, &seq, &Point::tag("b"), &Rational::zero(), 20).unwrap();
        assert_eq!(r.mode, Mode::Converges);
        assert_eq!(r.tail_start, Some(1));
        let r = properly_converges(s, &seq, &Point::tag("b"), &q(1, 10), 20).unwrap();
        assert_eq!(r.mode, Mode::ProperlyConverges);
        let c = is_cauchy(s, &seq, &q(1, 10), 20).unwrap();
        assert_eq!(c.verdict, CauchyVerdict::CauchyTo(q(1, 1)));
    }

    #[test]
    fn alternating_subsets() {
        let cat = Catalog::standard();
        let s = cat.space("ex3.2").unwrap();
        let seq = cat.generator("ex3.2.alternating").unwrap();
        let r = converges_to(s, &seq, &Point::set("ab"), &Rational::zero(), 100).unwrap();
        assert_eq!(r.mode, Mode::Converges);
        assert_eq!(r.achieved_gap, Rational::zero());
        let c = is_cauchy(s, &seq, &q(1, 10), 100).unwrap();
        assert_eq!(c.verdict, CauchyVerdict::Refuted);
        assert_eq!((c.low.value, c.high.value), (q(1, 1), q(2, 1)));
    }

    #[test]
    fn integers_converge_to_zero() {
        let cat = Catalog::standard();
        let s = cat.space("ex4.8").unwrap();
        let seq = cat.generator("ex4.8.n").unwrap();
        let r = converges_to(s, &seq, &Point::int(0), &q(1, 25), 100).unwrap();
        assert_eq!(r.mode, Mode::Converges);
        assert_eq!(r.tail_start, Some(25));
        assert_eq!(r.achieved_gap, q(1, 25));
        let c = is_cauchy(s, &seq, &q(1, 1000), 10_000).unwrap();
        assert_eq!(c.verdict, CauchyVerdict::CauchyTo(q(1, 1)));
    }

    #[test]
    fn improper_convergence_is_refuted_exactly() {
        let cat = Catalog::standard();
        let s = cat.space("ex5.5").unwrap();
        let seq = cat.generator("ex5.5.inv").unwrap();
        let plain = converges_to(s, &seq, &Point::int(0), &default_tol(), DEFAULT_HORIZON).unwrap();
        assert_eq!(plain.mode, Mode::Converges);
        let proper = properly_converges(s, &seq, &Point::int(0), &default_tol(), DEFAULT_HORIZON).unwrap();
        assert_eq!(proper.mode, Mode::Refuted);
        let w = proper.witness.unwrap();
        assert_eq!(w.kind, GapKind::SelfDistance);
        assert_eq!(w.gap, q(1, 1));
    }

    #[test]
    fn slow_tail_is_inconclusive_not_refuted() {
        let cat = Catalog::standard();
        let s = cat.space("ex4.8").unwrap();
        let seq = cat.generator("ex4.8.n").unwrap();
        let r = converges_to(s, &seq, &Point::int(0), &default_tol(), 100).unwrap();
        assert_eq!(r.mode, Mode::Inconclusive);
        assert!(r.witness.is_some());
    }

    #[test]
    fn periodic_refutation_has_cycle_witness() {
        let cat = Catalog::standard();
        let s = cat.space("ex5.8").unwrap();
        let seq = cat.generator("ex5.8.alternating").unwrap();
        let r = converges_to(s, &seq, &Point::tag("a"), &q(1, 2), 50).unwrap();
        assert_eq!(r.mode, Mode::Refuted);
        let w = r.witness.unwrap();
        assert_eq!(w.term, Point::tag("b"));
        assert_eq!(w.index, 2);
    }

    #[test]
    fn argument_errors() {
        let cat = Catalog::standard();
        let s = cat.space("ex5.8").unwrap();
        let empty = SequenceSpec::Explicit(vec![]);
        assert!(matches!(
            converges_to(s, &empty, &Point::tag("a"), &q(1, 2), 5),
            Err(PmError::Argument(_))
        ));
        let seq = SequenceSpec::constant(Point::tag("a"));
        assert!(converges_to(s, &seq, &Point::tag("a"), &q(1, 2), 0).is_err());
        assert!(matches!(
            converges_to(s, &seq, &Point::tag("z"), &q(1, 2), 5),
            Err(PmError::Domain(_))
        ));
    }

    #[test]
    fn tail_period_detection() {
        assert_eq!(tail_period(&[1, 2, 1, 2, 1, 2]), Some(2));
        assert_eq!(tail_period(&[3, 3, 3]), Some(1));
        assert_eq!(tail_period(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]), None);
    }
}
