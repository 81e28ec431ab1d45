//! wasm-bindgen entry points for the static page in `www/`.
//!
//! Each export returns a JSON string; the `*_json` functions are the same
//! computations without the JS types, so they run in native tests.

use gk2::gk2::weierstrass;
use gk2::{fengrao, quantum, CurveParams, NumericalSemigroup, Orbit};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest genus the page will sieve; keeps the tab responsive.
const MAX_GENUS: u64 = 100_000;

/// Largest number of rows one request may produce.
const MAX_ROWS: u64 = 20_000;

fn setup(q: u32, n: u32, orbit: &str) -> Result<(CurveParams, NumericalSemigroup), String> {
    if q > 5 {
        return Err(format!("q = {q} is above the supported maximum 5"));
    }
    let params = CurveParams::new(q as u64, n).map_err(|e| e.to_string())?;
    if params.genus > MAX_GENUS {
        return Err(format!(
            "genus {} is too large for the browser demo",
            params.genus
        ));
    }
    let orbit: Orbit = orbit.parse().map_err(|e: gk2::Error| e.to_string())?;
    let semigroup = weierstrass(&params, orbit).map_err(|e| e.to_string())?;
    Ok((params, semigroup))
}

fn check_rows(lo: u64, hi: u64) -> Result<(), String> {
    if lo == 0 || lo > hi {
        return Err(format!("invalid range [{lo}, {hi}]"));
    }
    if hi - lo + 1 > MAX_ROWS {
        return Err(format!("at most {MAX_ROWS} rows per request"));
    }
    Ok(())
}

pub fn semigroup_json(q: u32, n: u32, orbit: &str) -> Result<String, String> {
    let (p, s) = setup(q, n, orbit)?;
    Ok(json!({
        "q": p.q, "n": p.n, "genus": s.genus(), "conductor": s.conductor(),
        "generators": s.generators(), "gaps": s.gaps(),
        "symmetric": s.is_symmetric(), "length": p.code_length(),
    })
    .to_string())
}

pub fn fengrao_json(q: u32, n: u32, orbit: &str, lmax: u32) -> Result<String, String> {
    let (p, s) = setup(q, n, orbit)?;
    check_rows(1, lmax as u64)?;
    let rows = fengrao::table(&s, &p, 1..=lmax as u64).map_err(|e| e.to_string())?;
    let rows: Vec<_> = rows
        .iter()
        .map(|r| json!({"l": r.l, "k": r.dim, "rho": r.rho, "nu": r.nu, "d_ord": r.d_ord}))
        .collect();
    Ok(json!({"genus": p.genus, "rows": rows}).to_string())
}

pub fn quantum_json(q: u32, n: u32, orbit: &str, lmin: u32, lmax: u32) -> Result<String, String> {
    let (p, s) = setup(q, n, orbit)?;
    check_rows(lmin as u64, lmax as u64)?;
    let orbit: Orbit = orbit.parse().map_err(|e: gk2::Error| e.to_string())?;
    let ls: Vec<u64> = (lmin as u64..=lmax as u64).collect();
    let rows = quantum::table(&p, orbit, &s, &ls).map_err(|e| e.to_string())?;
    Ok(json!({"genus": p.genus, "length": p.code_length(), "rows": rows}).to_string())
}

#[wasm_bindgen]
pub fn semigroup(q: u32, n: u32, orbit: &str) -> Result<String, JsValue> {
    semigroup_json(q, n, orbit).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn fengrao_curve(q: u32, n: u32, orbit: &str, lmax: u32) -> Result<String, JsValue> {
    fengrao_json(q, n, orbit, lmax).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn quantum_ranges(
    q: u32,
    n: u32,
    orbit: &str,
    lmin: u32,
    lmax: u32,
) -> Result<String, JsValue> {
    quantum_json(q, n, orbit, lmin, lmax).map_err(|e| JsValue::from_str(&e))
}
