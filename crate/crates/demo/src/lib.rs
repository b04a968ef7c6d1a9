//! Browser bindings: an axiom checker for a typed-in matrix, an iteration
//! tracer for the catalog maps, and a ball/cover explorer.
//!
//! Every export takes and returns JSON text. Failures come back as
//! `{"error": "..."}` so the page only ever parses one shape.

use pmspace::analysis::{ball_cover_check, totally_bounded_at};
use pmspace::catalog::{catalog_map, catalog_space};
use pmspace::fixedpoint::{iterate, IterateOptions};
use pmspace::{check_axioms, FinitePMSpace, PartialMetric, Point, Rational, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn rational(s: &str) -> Result<Rational> {
    s.trim().parse()
}

fn point(s: &str) -> Result<Point> {
    s.trim().parse()
}

fn axioms_json(space_json: &str) -> Result<Value> {
    let space = FinitePMSpace::from_json_str(space_json)?;
    Ok(serde_json::to_value(check_axioms(&space)).expect("serializable"))
}

fn iterate_json(space: &str, map: &str, from: &str, tol: &str) -> Result<Value> {
    let s = catalog_space(space)?;
    let m = catalog_map(map)?;
    let opts = IterateOptions::default()
        .with_tol(rational(tol)?)
        .with_budget(500)
        .with_landmarks(s.canonical_sample().to_vec());
    let trace = iterate(&s, &m, &point(from)?, &opts)?;
    let steps: Vec<Value> = trace
        .iterates
        .windows(2)
        .map(|w| {
            json!({
                "x": w[0].to_string(),
                "next": w[1].to_string(),
                "p": s.p(&w[0], &w[1]).map(|r| r.to_string()).unwrap_or_default(),
            })
        })
        .collect();
    Ok(json!({ "steps": steps, "outcome": trace.outcome }))
}

fn cover_json(space_json: &str, centers: &str, eps: &str) -> Result<Value> {
    let space = FinitePMSpace::from_json_str(space_json)?;
    let eps = rational(eps)?;
    let centers = centers
        .split(',')
        .filter(|c| !c.trim().is_empty())
        .map(point)
        .collect::<Result<Vec<_>>>()?;
    let cover = ball_cover_check(&space, &centers, &eps)?;
    let mut balls = Vec::new();
    for c in &centers {
        let i = space.require_index(c)?;
        let members: Vec<String> = (0..space.len())
            .filter(|&j| space.at(i, j) < &(space.diag(i) + &eps))
            .map(|j| space.point(j).to_string())
            .collect();
        balls.push(json!({ "center": c.to_string(), "members": members }));
    }
    let net = totally_bounded_at(&space, &eps)?;
    Ok(json!({ "balls": balls, "cover": cover, "greedy_net": net }))
}

/// Axiom report for a space JSON document `{"points": [...], "p": [[...]]}`.
#[wasm_bindgen]
pub fn check_space(space_json: &str) -> String {
    respond(axioms_json(space_json))
}

/// Orbit of `from` under a catalog map, with the partial metric between
/// consecutive iterates.
#[wasm_bindgen]
pub fn trace_orbit(space: &str, map: &str, from: &str, tol: &str) -> String {
    respond(iterate_json(space, map, from, tol))
}

/// Open balls of radius `eps` around comma-separated centers, whether they
/// cover the space, and a greedy net at the same radius.
#[wasm_bindgen]
pub fn explore_balls(space_json: &str, centers: &str, eps: &str) -> String {
    respond(cover_json(space_json, centers, eps))
}
