use std::collections::HashMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use pmspace::analysis::{
    ball_cover_check, converges_in_induced_metric, converges_to, gdelta_diagonal, is_cauchy,
    is_cauchy_induced, limit_set, maximal_points, properly_converges, seq_compact_witness, specialization_order,
    totally_bounded_at, CauchyVerdict, ConvergenceReport, SequenceJson, SequenceSpec, DEFAULT_HORIZON,
};
use pmspace::catalog::{random_pm_space_with, Catalog, CatalogSpace, MapSpec, RandomOptions, SPACE_IDS};
use pmspace::fixedpoint::{
    all_pairs, check_condition, constant_map_bottom, exhaustive_condition_maps, iterate, solve_on_bottom,
    solve_on_bottom_sampled, BottomOutcome, Condition, IterateOptions, Outcome, Scope,
};
use pmspace::metrics::bottom_set;
use pmspace::properties::property_run;
use pmspace::separation::separation_class;
use pmspace::{check_axioms, fact_suite, FinitePMSpace, PartialMetric, PmError, Point, Rational, Result};

use crate::args::*;

pub struct Report {
    pub json: Value,
    pub text: String,
    pub pass: bool,
}

fn report<T: Serialize>(value: &T, text: String, pass: bool) -> Result<Report> {
    Ok(Report {
        json: serde_json::to_value(value).map_err(|e| PmError::Json(e.to_string()))?,
        text,
        pass,
    })
}

enum Loaded {
    Finite(FinitePMSpace),
    Catalog(CatalogSpace),
}

impl Loaded {
    fn pm(&self) -> &dyn PartialMetric {
        match self {
            Loaded::Finite(s) => s,
            Loaded::Catalog(c) => c,
        }
    }

    fn finite(&self) -> FinitePMSpace {
        match self {
            Loaded::Finite(s) => s.clone(),
            Loaded::Catalog(c) => c.canonical_finite(),
        }
    }

    fn points(&self) -> Vec<Point> {
        match self {
            Loaded::Finite(s) => s.points().to_vec(),
            Loaded::Catalog(c) => c.canonical_sample().to_vec(),
        }
    }
}

fn load_space(cat: &Catalog, arg: &SpaceArg) -> Result<Loaded> {
    if cat.contains(&arg.space) {
        return Ok(Loaded::Catalog(cat.space(&arg.space)?.clone()));
    }
    let path = Path::new(&arg.space);
    if !path.exists() {
        return Err(PmError::UnknownName(arg.space.clone()));
    }
    let text = std::fs::read_to_string(path).map_err(|e| PmError::Argument(format!("{}: {e}", arg.space)))?;
    Ok(Loaded::Finite(FinitePMSpace::from_json_str(&text)?.named(&arg.space)))
}

fn load_map(cat: &Catalog, name: &str) -> Result<MapSpec> {
    match cat.map(name) {
        Ok(m) => Ok(m),
        Err(e) => {
            let path = Path::new(name);
            if !path.exists() {
                return Err(e);
            }
            let text = std::fs::read_to_string(path).map_err(|e| PmError::Argument(format!("{name}: {e}")))?;
            let table: HashMap<Point, Point> =
                serde_json::from_str(&text).map_err(|e| PmError::Json(format!("{name}: {e}")))?;
            Ok(MapSpec::from_table(name, table.into_iter().collect()))
        }
    }
}

fn point(s: &str) -> Result<Point> {
    s.parse()
}

fn require_positive(tol: &Rational, what: &str) -> Result<()> {
    if tol.is_positive() {
        Ok(())
    } else {
        Err(PmError::Argument(format!("{what} must be positive, got {tol}")))
    }
}

fn require_budget(b: usize) -> Result<()> {
    if b == 0 {
        Err(PmError::Argument("budget must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn condition(kind: CondKind, p: &CondParams) -> Condition {
    match kind {
        CondKind::Max => Condition::max(p.alpha.clone()),
        CondKind::Min => Condition::min(p.k),
        CondKind::Contraction => Condition::contraction(p.alpha.clone()),
    }
}

pub fn run(cli: Cli) -> Result<Report> {
    let cat = Catalog::standard();
    let seed = cli.seed;
    match cli.command {
        Command::Axioms(a) => {
            let s = load_space(&cat, &a)?.finite();
            let r = check_axioms(&s);
            let text = match &r.violated_axiom {
                None => format!("{}: all axioms hold on {} points", s.name(), s.len()),
                Some(ax) => format!("{}: {ax} fails at {:?} ({:?} vs {:?})", s.name(), r.witness, r.lhs, r.rhs),
            };
            let pass = r.passed();
            report(&r, text, pass)
        }
        Command::Analyze(AnalyzeCmd::Seq(a)) => analyze(&cat, a),
        Command::Topology(t) => topology(&cat, t),
        Command::Fixedpoint(f) => fixedpoint(&cat, f, seed),
        Command::Catalog(c) => catalog(&cat, c),
        Command::Random(RandomCmd::Generate(g)) => {
            let s = random_pm_space_with(seed, g.n, RandomOptions { metric_only: g.metric })?;
            let text = format!("random space, seed {seed}, {} points", g.n);
            report(&s.to_json(), text, true)
        }
        Command::Random(RandomCmd::PropertyRun(p)) => {
            let r = property_run(seed, p.count, p.max_n)?;
            let text = format!(
                "seed {seed}: {} of {} random spaces pass every invariant{}",
                r.passed,
                p.count,
                r.failed.iter().map(|c| format!("\n  seed {} (n={}): {:?}", c.seed, c.n, c.failures)).collect::<String>()
            );
            let pass = r.failed.is_empty();
            report(&r, text, pass)
        }
    }
}

fn convergence_text(r: &ConvergenceReport) -> String {
    format!(
        "{:?} to {} (tol {}, horizon {}, tail start {:?}, gap {})",
        r.mode, r.target, r.tol, r.horizon, r.tail_start, r.achieved_gap
    )
}

fn analyze(cat: &Catalog, a: SeqArgs) -> Result<Report> {
    let space = load_space(cat, &a.space)?;
    require_positive(&a.tol, "tolerance")?;
    let seq: SequenceSpec = match (&a.seq, &a.generator) {
        (_, Some(g)) => cat.generator(g)?,
        (Some(s), None) => {
            let text = if s.trim_start().starts_with('{') {
                s.clone()
            } else {
                std::fs::read_to_string(s).map_err(|e| PmError::Argument(format!("{s}: {e}")))?
            };
            let json: SequenceJson = serde_json::from_str(&text).map_err(|e| PmError::Json(e.to_string()))?;
            cat.resolve_sequence(json)?
        }
        (None, None) => return Err(PmError::Argument("give --seq or --generator".into())),
    };
    let horizon = a.horizon.or(seq.default_horizon()).unwrap_or(DEFAULT_HORIZON);
    let target = || -> Result<Point> {
        point(a.target.as_deref().ok_or_else(|| PmError::Argument("--target is required for this mode".into()))?)
    };
    let pm = space.pm();
    match a.mode {
        SeqMode::Converges | SeqMode::Proper | SeqMode::Induced => {
            let t = target()?;
            let r = match a.mode {
                SeqMode::Converges => converges_to(pm, &seq, &t, &a.tol, horizon)?,
                SeqMode::Proper => properly_converges(pm, &seq, &t, &a.tol, horizon)?,
                _ => converges_in_induced_metric(pm, &seq, &t, &a.tol, horizon)?,
            };
            let pass = r.certified();
            report(&r, convergence_text(&r), pass)
        }
        SeqMode::Cauchy | SeqMode::CauchyInduced => {
            let r = if a.mode == SeqMode::Cauchy {
                is_cauchy(pm, &seq, &a.tol, horizon)?
            } else {
                is_cauchy_induced(pm, &seq, &a.tol, horizon)?
            };
            let pass = matches!(r.verdict, CauchyVerdict::CauchyTo(_));
            let text = format!("{:?} (tail values {} .. {})", r.verdict, r.low.value, r.high.value);
            report(&r, text, pass)
        }
        SeqMode::LimitSet => {
            let l = limit_set(&space.finite(), &seq)?;
            let text = format!("limit set: {{{}}}", join(&l));
            report(&l, text, true)
        }
        SeqMode::Compact => {
            let w = seq_compact_witness(&space.finite(), &seq)?;
            let text = format!("{:?} converging to {}", w.subsequence, w.limit);
            report(&w, text, true)
        }
    }
}

fn join(points: &[Point]) -> String {
    points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

fn topology(cat: &Catalog, t: TopologyCmd) -> Result<Report> {
    match t {
        TopologyCmd::Separation(a) => {
            let c = separation_class(&load_space(cat, &a)?.finite())?;
            report(&c, format!("T0 {}, T1 {}, Hausdorff {}", c.t0, c.t1, c.hausdorff), true)
        }
        TopologyCmd::Gdelta(a) => {
            let r = gdelta_diagonal(&load_space(cat, &a)?.finite())?;
            let text = format!(
                "intersection stabilizes at n = {}; equals the diagonal: {} (T1: {})",
                r.stabilization_n, r.equals_diagonal, r.t1
            );
            report(&r, text, true)
        }
        TopologyCmd::Order(a) => {
            let o = specialization_order(&load_space(cat, &a)?.finite())?;
            let n = o.points.len();
            let pairs: Vec<String> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && o.ge(i, j))
                .map(|(i, j)| format!("{} >= {}", o.points[i], o.points[j]))
                .collect();
            let text = if pairs.is_empty() { "discrete order".into() } else { pairs.join("\n") };
            report(&o, text, true)
        }
        TopologyCmd::Maximal(a) => {
            let m = maximal_points(&load_space(cat, &a)?.finite())?;
            let text = format!("maximal points {{{}}}; balls around them cover: {}", join(&m.points), m.covers);
            let pass = m.covers;
            report(&m, text, pass)
        }
        TopologyCmd::Cover(a) => {
            let s = load_space(cat, &a.space)?.finite();
            let centers = a.centers.iter().map(|c| point(c)).collect::<Result<Vec<_>>>()?;
            let r = ball_cover_check(&s, &centers, &a.eps)?;
            let text = match &r.uncovered {
                None => format!("balls of radius {} cover the space", a.eps),
                Some(u) => format!("{u} is not covered at radius {}", a.eps),
            };
            let pass = r.covers;
            report(&r, text, pass)
        }
        TopologyCmd::Net(a) => {
            let mut s = load_space(cat, &a.space)?.finite();
            if let Some(r) = &a.restrict {
                let idx = r
                    .iter()
                    .map(|p| s.require_index(&point(p)?))
                    .collect::<Result<Vec<_>>>()?;
                s = s.subspace(&idx)?;
            }
            let n = totally_bounded_at(&s, &a.eps)?;
            let text = format!("net of size {} at radius {}: {{{}}}", n.size(), a.eps, join(&n.centers));
            report(&n, text, true)
        }
    }
}

fn fixedpoint(cat: &Catalog, f: FixedpointCmd, seed: u64) -> Result<Report> {
    match f {
        FixedpointCmd::Check(a) => {
            let space = load_space(cat, &a.space)?;
            let map = load_map(cat, &a.map)?;
            let cond = condition(a.cond, &a.params);
            let (pts, scope) = match (&space, a.pairs) {
                (Loaded::Finite(s), PairsKind::All) => (s.points().to_vec(), Scope::Exhaustive),
                (Loaded::Catalog(c), _) => {
                    let mut pts = c.canonical_sample().to_vec();
                    if a.pairs == PairsKind::Sample {
                        for x in c.sample(seed, a.extra) {
                            if !pts.contains(&x) {
                                pts.push(x);
                            }
                        }
                    }
                    (pts, Scope::Sample)
                }
                (Loaded::Finite(s), PairsKind::Sample) => (s.points().to_vec(), Scope::Sample),
            };
            let r = check_condition(space.pm(), &map, &cond, &all_pairs(&pts), scope)?;
            let text = match &r.violation {
                None => format!("{cond} holds for {} on {} pairs ({:?})", r.map, r.pairs_checked, r.scope),
                Some(v) => format!("{cond} violated for {} at ({}, {}): {} > {}", r.map, v.x, v.y, v.lhs, v.rhs),
            };
            let pass = r.holds();
            report(&r, text, pass)
        }
        FixedpointCmd::Iterate(a) => {
            let space = load_space(cat, &a.space)?;
            require_positive(&a.tol, "tolerance")?;
            require_budget(a.budget)?;
            let map = load_map(cat, &a.map)?;
            let opts = IterateOptions::default()
                .with_tol(a.tol)
                .with_budget(a.budget)
                .with_landmarks(space.points());
            let tr = iterate(space.pm(), &map, &point(&a.from)?, &opts)?;
            let text = match &tr.outcome {
                Outcome::FixedPoint { point, reached } => format!(
                    "fixed point {point} ({} after {} steps)",
                    if *reached { "reached exactly" } else { "approached within tolerance" },
                    tr.applications()
                ),
                Outcome::CertifiedCauchy { a } => format!("Cauchy tail with self-distance {a}, no fixed point identified"),
                Outcome::BudgetExhausted => format!("budget of {} steps exhausted", tr.applications()),
            };
            let pass = !matches!(tr.outcome, Outcome::BudgetExhausted);
            report(&tr, text, pass)
        }
        FixedpointCmd::Enumerate(a) => {
            let s = load_space(cat, &a.space)?.finite();
            let conds: Vec<Condition> = a.cond.iter().map(|&k| condition(k, &a.params)).collect();
            let maps = exhaustive_condition_maps(&s, &conds)?;
            let labels: Vec<String> = maps.iter().map(|m| m.label(&s)).collect();
            let text = format!(
                "{} of {} self-maps satisfy {}{}",
                labels.len(),
                s.len().pow(s.len() as u32),
                conds.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" and "),
                labels.iter().map(|l| format!("\n  {l}")).collect::<String>()
            );
            let json = serde_json::json!({ "conditions": conds, "maps": labels });
            report(&json, text, true)
        }
        FixedpointCmd::Bottom(a) => {
            let space = load_space(cat, &a.space)?;
            match &a.map {
                None => {
                    let r = constant_map_bottom(&space.finite(), &a.alpha)?;
                    let text = format!(
                        "constant maps meeting the max-condition: {{{}}}; bottom set {{{}}}; equal: {}",
                        join(&r.points),
                        join(&r.bottom),
                        r.matches_bottom
                    );
                    let pass = r.matches_bottom;
                    report(&r, text, pass)
                }
                Some(m) => {
                    require_budget(a.budget)?;
                    let map = load_map(cat, m)?;
                    let alpha = a.alpha.first().cloned().unwrap_or_else(default_alpha);
                    let r = match &space {
                        Loaded::Finite(s) => {
                            let from = match &a.from {
                                Some(x) => point(x)?,
                                None => bottom_set(s)[0].clone(),
                            };
                            solve_on_bottom(s, &map, &alpha, &from, &a.tol, a.budget)?
                        }
                        Loaded::Catalog(c) => {
                            let rho = c.rho()?;
                            let sample: Vec<Point> = c
                                .canonical_sample()
                                .iter()
                                .filter(|x| c.p(x, x).map(|v| v == rho).unwrap_or(false))
                                .cloned()
                                .collect();
                            let from = match &a.from {
                                Some(x) => point(x)?,
                                None => sample
                                    .first()
                                    .cloned()
                                    .ok_or_else(|| PmError::Argument("no sampled point attains the infimum".into()))?,
                            };
                            solve_on_bottom_sampled(c, &sample, &map, &alpha, &from, &a.tol, a.budget)?
                        }
                    };
                    let (text, pass) = match &r.outcome {
                        BottomOutcome::FixedPoint { point, unique_in_bottom, .. } => (
                            format!("fixed point {point} in the bottom set (unique among sampled bottom points: {unique_in_bottom})"),
                            true,
                        ),
                        BottomOutcome::Escape { from, image, witness } => (
                            format!("T({from}) = {image} leaves the bottom set; max-condition witness {witness:?}"),
                            false,
                        ),
                        BottomOutcome::BudgetExhausted { last } => (format!("budget exhausted at {last}"), false),
                    };
                    report(&r, text, pass)
                }
            }
        }
    }
}

fn default_alpha() -> Rational {
    Rational::new(1, 2)
}

fn catalog(cat: &Catalog, c: CatalogCmd) -> Result<Report> {
    match c {
        CatalogCmd::List => {
            let spaces: Vec<Value> = SPACE_IDS
                .iter()
                .map(|id| {
                    let s = cat.space(id).expect("registered");
                    serde_json::json!({
                        "id": id,
                        "declared_rho": s.declared_rho(),
                        "declared_bottom": s.declared_bottom().to_string(),
                        "sample": s.canonical_sample(),
                    })
                })
                .collect();
            let json = serde_json::json!({
                "spaces": spaces,
                "maps": cat.map_names(),
                "generators": cat.generator_ids(),
            });
            let text = format!(
                "spaces: {}\nmaps: {}, id, const.<point>\ngenerators: {}",
                SPACE_IDS.join(", "),
                cat.map_names().join(", "),
                cat.generator_ids().join(", ")
            );
            report(&json, text, true)
        }
        CatalogCmd::Export(a) => {
            if !cat.contains(&a.space) {
                return Err(PmError::UnknownName(a.space));
            }
            let s = cat.space(&a.space)?.canonical_finite();
            report(&s.to_json(), format!("{}: {} points", a.space, s.len()), true)
        }
        CatalogCmd::Verify(v) => {
            let scoped;
            let target = match &v.space {
                Some(ids) if !v.all => {
                    if let Some(bad) = ids.iter().find(|id| !cat.contains(id)) {
                        return Err(PmError::UnknownName(bad.clone()));
                    }
                    let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
                    scoped = cat.subset(&ids);
                    &scoped
                }
                _ => cat,
            };
            let r = fact_suite(target);
            let mut text: String = r
                .facts
                .iter()
                .map(|f| format!("{} {:<28} {}\n", if f.passed { "PASS" } else { "FAIL" }, f.id, f.details))
                .collect();
            text.push_str(&format!("{} passed, {} failed", r.passed, r.failed));
            let pass = r.ok();
            report(&r, text, pass)
        }
    }
}
