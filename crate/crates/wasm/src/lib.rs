//! Browser bindings: signature sweeps, bound brackets, and reductions.
//! Every export returns JSON text.

use num_rational::Rational64;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use cobordism_core::bounds::{report_with_chain, ConstantMode, UpperChain};
use cobordism_core::link_model::LinkDescriptor;
use cobordism_core::reduction::plan;
use cobordism_core::signature::{signature_at, signature_from_above, LimitSide};
use cobordism_core::{BraidWord, Error};

fn opt(r: Option<Rational64>) -> Value {
    r.map_or(Value::Null, |v| json!(*v.numer() as f64 / *v.denom() as f64))
}

fn num(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `{theta, sigma}` at `i/steps` for `0 < i < steps`, one-sided limits at
/// jump points.
pub fn sweep(link: &str, steps: u32) -> Result<Value, Error> {
    if !(2..=5000).contains(&steps) {
        return Err(Error::InvalidParameter(format!("steps = {steps} outside 2..=5000")));
    }
    let d: LinkDescriptor = link.parse()?;
    let mut points = Vec::new();
    for i in 1..steps {
        let theta = Rational64::new(i as i64, steps as i64);
        let v = match signature_at(&d, theta, LimitSide::At) {
            Ok(v) => v,
            Err(Error::IrregularPoint { .. }) => signature_from_above(&d, theta, steps)?,
            Err(e) => return Err(e),
        };
        points.push(json!({ "theta": num(theta), "sigma": v.sigma }));
    }
    Ok(json!({ "link": d.to_string(), "points": points }))
}

/// Lower and upper bounds and the formula value for `n = 0..=n_max`.
pub fn bracket(link: &str, k: u32, n_max: u32) -> Result<Value, Error> {
    if n_max > 500 {
        return Err(Error::InvalidParameter(format!("n_max = {n_max} above 500")));
    }
    let d: LinkDescriptor = link.parse()?;
    let chain = UpperChain::new(&d, k)?;
    let mut rows = Vec::new();
    for n in 0..=n_max as u64 {
        let r = report_with_chain(&d, k, n, &chain, ConstantMode::Explicit)?;
        rows.push(json!({
            "n": n,
            "lower": num(r.lower),
            "upper": num(r.upper),
            "prediction": opt(r.prediction),
            "constant": opt(r.constant),
            "pass": r.pass,
        }));
    }
    Ok(json!({ "link": d.to_string(), "k": k, "rows": rows }))
}

/// Certificate summary and moves for a positive braid word.
pub fn reduction(braid: &str, k: u32) -> Result<Value, Error> {
    let w: BraidWord = braid.parse()?;
    if w.length() > 400 {
        return Err(Error::InvalidParameter("words longer than 400 letters".into()));
    }
    let cert = plan(&w, k)?;
    let r = cert.validate()?;
    let moves: Vec<String> = cert
        .moves
        .iter()
        .map(|m| serde_json::to_string(m).expect("move serialises"))
        .collect();
    Ok(json!({
        "word": w.to_string(),
        "k": k,
        "powers": r.n,
        "singles": r.j,
        "tail": r.tail_cost,
        "bound": r.bound,
        "moves": moves,
    }))
}

fn out(v: Result<Value, Error>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn signature_sweep(link: &str, steps: u32) -> Result<String, JsError> {
    out(sweep(link, steps))
}

#[wasm_bindgen]
pub fn bound_bracket(link: &str, k: u32, n_max: u32) -> Result<String, JsError> {
    out(bracket(link, k, n_max))
}

#[wasm_bindgen]
pub fn reduce_word(braid: &str, k: u32) -> Result<String, JsError> {
    out(reduction(braid, k))
}
