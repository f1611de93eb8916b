//! wasm-bindgen surface for the static page in `www/`.
//!
//! Every export returns a JSON string. The plain `*_json` functions are what
//! the native tests call; the exported wrappers only turn errors into `JsError`.

use monodromy_core::cyclo::{recognize_cyclotomic, AlphaList};
use monodromy_core::exact::format_rational;
use monodromy_core::nonresonant::{conjugation_gap, NonresonantProblem};
use monodromy_core::unipotent::{Basis, UnipotentProblem};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn err(e: impl ToString) -> String {
    e.to_string()
}

pub fn factor_json(alphas: &str) -> Result<Value, String> {
    let list = AlphaList::parse(alphas).map_err(err)?;
    let cyclotomic = recognize_cyclotomic(&list).map_err(err)?;
    let p = UnipotentProblem::new(list).map_err(err)?;
    let q = p.quotient();
    Ok(json!({
        "n": p.n(),
        "cyclotomic": cyclotomic,
        "polynomial": q.to_string(),
        "a": q.a,
        "b": q.b,
        "C": p.c().to_string(),
        "d": format_rational(&p.d()),
    }))
}

/// Same shape as the CLI's JSON, plus `text` with the matrices pretty-printed
/// so the page needs no fraction arithmetic of its own.
pub fn monodromy_json(alphas: &str, basis: &str) -> Result<Value, String> {
    let basis: Basis = basis.parse().map_err(err)?;
    let p = UnipotentProblem::parse(alphas).map_err(err)?;
    let t = p.triple(basis).map_err(err)?;
    let text: String = t.matrices().iter().map(|(name, m)| format!("{name} =\n{m}\n")).collect();
    Ok(json!({
        "n": p.n(),
        "basis": basis,
        "generators": p.generator_set(basis).into_iter().map(|g| g.name()).collect::<Vec<_>>(),
        "matrices": t,
        "relation_holds": t.relation_holds(),
        "text": text,
    }))
}

pub fn nonresonant_json(alphas: &str, betas: &str) -> Result<Value, String> {
    let p = NonresonantProblem::parse(alphas, betas).map_err(err)?;
    let t = p.triple();
    let gap = conjugation_gap(&p, &t.m1).map_err(err)?;
    let mut matrices = serde_json::Map::new();
    for (name, m) in [("M0", &t.m0), ("M1", &t.m1), ("Minf", &t.minf)] {
        let rows: Vec<Vec<[f64; 2]>> =
            (0..m.nrows()).map(|k| (0..m.ncols()).map(|l| [m[(k, l)].re, m[(k, l)].im]).collect()).collect();
        matrices.insert(name.into(), json!(rows));
    }
    Ok(json!({
        "n": p.n(),
        "matrices": matrices,
        "relation_residual": t.relation_residual(),
        "conjugation_gap": gap,
    }))
}

fn export(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn factor(alphas: &str) -> Result<String, JsError> {
    export(factor_json(alphas))
}

#[wasm_bindgen]
pub fn monodromy(alphas: &str, basis: &str) -> Result<String, JsError> {
    export(monodromy_json(alphas, basis))
}

#[wasm_bindgen]
pub fn nonresonant(alphas: &str, betas: &str) -> Result<String, JsError> {
    export(nonresonant_json(alphas, betas))
}
