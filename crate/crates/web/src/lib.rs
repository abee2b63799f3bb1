//! Browser bindings: standard polynomials, embeddings between them and the
//! triangle check, each returning plain text for the demo page.

use std::fmt::Write as _;

use fflattice::bench::table_degrees;
use fflattice::{ExtField, FFElem, Prime, StdLattice};
use wasm_bindgen::prelude::*;

/// Largest degree the page accepts; decoration cost grows quickly.
pub const MAX_DEGREE: usize = 120;

fn lattice(p: u32) -> fflattice::Result<StdLattice> {
    Ok(StdLattice::new(Prime::new(p as u64)?))
}

fn check_degree(d: usize) -> fflattice::Result<()> {
    if d > MAX_DEGREE {
        return Err(fflattice::Error::OutOfRange(format!("degree {d} above the demo limit {MAX_DEGREE}")));
    }
    Ok(())
}

/// One `l: P_l` line per reachable degree up to `max`.
pub fn standard_polys_text(p: u32, max: usize) -> fflattice::Result<String> {
    check_degree(max)?;
    let lat = lattice(p)?;
    let mut out = String::new();
    for l in table_degrees(&lat, max) {
        writeln!(out, "{l}: {}", lat.add_field(l, None)?.standard_poly()).unwrap();
    }
    Ok(out)
}

/// `P_l`, `P_m` and the image of `s_l` modulo `P_m`, with its minimal
/// polynomial recomputed.
pub fn embed_text(p: u32, l: usize, m: usize) -> fflattice::Result<String> {
    check_degree(m)?;
    let lat = lattice(p)?;
    let (src, dst) = (lat.add_field(l, None)?, lat.add_field(m, None)?);
    let t = lat.image_over_standard_basis(l, m)?;
    let field = ExtField::new(dst.standard_poly().clone())?;
    let mp = FFElem::new(&field, t.clone())?.minimal_polynomial();
    let status = if mp == *src.standard_poly() { "ok" } else { "MISMATCH" };
    Ok(format!(
        "P_{l} = {}\nP_{m} = {}\nt = {}\nminimal polynomial of t: {mp} ({status})\n",
        src.standard_poly(),
        dst.standard_poly(),
        t
    ))
}

/// Every triangle `l | m | n` among the reachable degrees up to `max`.
pub fn verify_text(p: u32, max: usize) -> fflattice::Result<String> {
    check_degree(max)?;
    let lat = lattice(p)?;
    for l in table_degrees(&lat, max) {
        lat.add_field(l, None)?;
    }
    let r = lat.verify_lattice();
    let mut out = String::new();
    for t in &r.triangles {
        writeln!(out, "{} | {} | {}: {}", t.l, t.m, t.n, if t.passed { "ok" } else { "FAILED" }).unwrap();
    }
    writeln!(out, "{} triangles, {} failed", r.triangles.len(), r.failures().count()).unwrap();
    Ok(out)
}

fn js(r: fflattice::Result<String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn standard_polys(p: u32, max: u32) -> Result<String, JsError> {
    js(standard_polys_text(p, max as usize))
}

#[wasm_bindgen]
pub fn embed(p: u32, l: u32, m: u32) -> Result<String, JsError> {
    js(embed_text(p, l as usize, m as usize))
}

#[wasm_bindgen]
pub fn verify(p: u32, max: u32) -> Result<String, JsError> {
    js(verify_text(p, max as usize))
}
