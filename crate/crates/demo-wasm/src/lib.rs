//! Browser bindings: three operations over polynomial text, each returning a
//! JSON string. Errors come back as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use realslice::catalog::parse_system_document;
use realslice::interval::{certify_empty, enclose_critical_values, Budget, EnclosureOptions, IntervalBox};
use realslice::poly::{parse_poly_document, rational_from_f64};
use realslice::topology::{marching_squares, GridSpec};

/// Boxes per search; keeps a page responsive.
const DEMO_BUDGET: u64 = 200_000;

fn budget() -> Budget {
    Budget {
        max_boxes: DEMO_BUDGET,
        ..Budget::default()
    }
}

fn render(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn window(lo: f64, hi: f64) -> Result<(f64, f64), String> {
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok((lo, hi))
    } else {
        Err(format!("empty window {lo}:{hi}"))
    }
}

pub fn trace_curve_json(poly: &str, level: f64, lo: f64, hi: f64, n: usize) -> Result<Value, String> {
    let (lo, hi) = window(lo, hi)?;
    let q = parse_poly_document(poly).map_err(|e| e.to_string())?;
    if q.nvars() != 2 {
        return Err(format!("expected 2 variables, found {}", q.nvars()));
    }
    if !level.is_finite() {
        return Err("level is not finite".into());
    }
    let level = rational_from_f64(level);
    let grid = GridSpec::uniform(IntervalBox::cube(2, lo, hi), n).map_err(|e| e.to_string())?;
    let c = marching_squares(&q, &level, &grid).map_err(|e| e.to_string())?;
    Ok(json!({
        "components": c.num_components(),
        "all_closed": c.all_closed(),
        "vertices": c.vertices,
        "segments": c.segments,
        "vertex_component": c.vertex_component,
    }))
}

pub fn critical_values_json(poly: &str, lo: f64, hi: f64) -> Result<Value, String> {
    let (lo, hi) = window(lo, hi)?;
    let q = parse_poly_document(poly).map_err(|e| e.to_string())?;
    let opts = EnclosureOptions {
        budget: budget(),
        ..EnclosureOptions::default()
    };
    let cv = enclose_critical_values(&q, &IntervalBox::cube(q.nvars(), lo, hi), &opts);
    Ok(json!({
        "verdict": cv.certificate.verdict,
        "enclosures": cv.enclosures.iter().map(|iv| [iv.lo(), iv.hi()]).collect::<Vec<_>>(),
        "adequacy": cv.adequacy,
    }))
}

pub fn certify_empty_json(system: &str) -> Result<Value, String> {
    let sys = parse_system_document(system).map_err(|e| e.to_string())?;
    let cert = certify_empty(&sys.system, &budget());
    serde_json::to_value(&cert).map_err(|e| e.to_string())
}

/// Polyline of `{q = level}` on `[lo, hi]²` with `n` cells per axis.
#[wasm_bindgen]
pub fn trace_curve(poly: &str, level: f64, lo: f64, hi: f64, n: usize) -> String {
    render(trace_curve_json(poly, level, lo, hi, n))
}

/// Enclosures of the critical values of `q` on `[lo, hi]^k`.
#[wasm_bindgen]
pub fn critical_values(poly: &str, lo: f64, hi: f64) -> String {
    render(critical_values_json(poly, lo, hi))
}

/// Emptiness certificate for a system file.
#[wasm_bindgen]
pub fn certify_system(system: &str) -> String {
    render(certify_empty_json(system))
}
