//! Browser bindings: expansions, the Newton polygon as SVG, and the genus.
//!
//! The `*_text` functions are plain Rust so they can be tested natively; the
//! `#[wasm_bindgen]` wrappers only convert errors.

use dcpuiseux::algebra::field::{Field, Fp, Rationals};
use dcpuiseux::cli::{run, Cli, Command};
use dcpuiseux::ctx::Ctx;
use dcpuiseux::desing::genus;
use dcpuiseux::dynev::TriSet;
use dcpuiseux::parse::parse_poly;
use dcpuiseux::polygon::{newton_polygon, polygon_svg};
use dcpuiseux::polyring::TBPoly;
use dcpuiseux::Error;
use wasm_bindgen::prelude::*;

fn cli(command: Command, field: &str, x0: &str, prec: Option<usize>, json: bool, seed: u64) -> Cli {
    Cli {
        command,
        field: field.into(),
        x0: x0.into(),
        prec,
        json,
        seed: Some(seed),
        verify: true,
        trace: false,
        emit_polygon: None,
    }
}

fn outcome(c: &Cli) -> Result<String, String> {
    let out = run(c);
    match out.code {
        0 => Ok(out.stdout),
        _ => Err(out.stderr.trim_end().to_string()),
    }
}

/// Rational Puiseux expansions of `poly` above `x0` (an integer or `inf`), verified,
/// as text or as the versioned JSON report.
pub fn expansions_text(field: &str, x0: &str, poly: &str, prec: Option<usize>, json: bool, seed: u64) -> Result<String, String> {
    outcome(&cli(Command::Puiseux { poly: poly.into() }, field, x0, prec, json, seed))
}

/// Analytic factorization at `x0` modulo `X^{prec+1}`.
pub fn factors_text(field: &str, x0: &str, poly: &str, prec: usize) -> Result<String, String> {
    outcome(&cli(Command::Factor { poly: poly.into() }, field, x0, Some(prec), false, 0))
}

fn in_field<T>(field: &str, q: impl FnOnce(&Rationals) -> Result<T, Error>, p: impl FnOnce(&Fp) -> Result<T, Error>) -> Result<T, String> {
    let r = if field.eq_ignore_ascii_case("q") {
        q(&Rationals)
    } else {
        match field.trim().parse::<u64>() {
            Ok(n) => Fp::new(n).and_then(|k| p(&k)),
            Err(_) => return Err(format!("field must be a prime or Q, got `{field}`")),
        }
    };
    r.map_err(|e| e.to_string())
}

fn svg_in<K: Field>(k: &K, poly: &str, x0: i64, n: Option<usize>) -> Result<String, Error> {
    let f = parse_poly(k, poly)?.shift_x(k, &k.from_i64(x0));
    let t = TriSet::trivial(k);
    let h = TBPoly::from_bpoly(&t, &f, f.deg_x());
    Ok(polygon_svg(&h.support(&t), &newton_polygon(&t, &h), n))
}

/// Newton polygon of `F(X + x0, Y)` as a standalone SVG; `n` marks a truncation line.
pub fn polygon_text(field: &str, poly: &str, x0: i64, n: Option<usize>) -> Result<String, String> {
    in_field(field, |k| svg_in(k, poly, x0, n), |k| svg_in(k, poly, x0, n))
}

fn genus_in<K: Field>(k: &K, poly: &str, seed: u64) -> Result<i64, Error> {
    genus(&Ctx::new(seed), k, &parse_poly(k, poly)?)
}

pub fn genus_value(field: &str, poly: &str, seed: u64) -> Result<i64, String> {
    in_field(field, |k| genus_in(k, poly, seed), |k| genus_in(k, poly, seed))
}

fn js(e: String) -> JsError {
    JsError::new(&e)
}

#[wasm_bindgen]
pub fn expansions(field: &str, x0: &str, poly: &str, prec: Option<u32>, json: bool, seed: u32) -> Result<String, JsError> {
    expansions_text(field, x0, poly, prec.map(|p| p as usize), json, seed as u64).map_err(js)
}

#[wasm_bindgen]
pub fn factors(field: &str, x0: &str, poly: &str, prec: u32) -> Result<String, JsError> {
    factors_text(field, x0, poly, prec as usize).map_err(js)
}

#[wasm_bindgen]
pub fn polygon(field: &str, poly: &str, x0: i32, n: Option<u32>) -> Result<String, JsError> {
    polygon_text(field, poly, x0 as i64, n.map(|n| n as usize)).map_err(js)
}

#[wasm_bindgen(js_name = genus)]
pub fn curve_genus(field: &str, poly: &str, seed: u32) -> Result<i32, JsError> {
    genus_value(field, poly, seed as u64).map(|g| g as i32).map_err(js)
}
