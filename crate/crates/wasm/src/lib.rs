//! Browser bindings for the demo page: small JSON-in/JSON-out wrappers
//! around the crystal library, so the page needs no framework, only fetch
//! and SVG. The logic lives in plain functions and is tested on the host;
//! the `wasm_bindgen` exports are one-line shims.

use crystals::{
    build_b, convolve_samples, decompose, strata_census, tensor, Crystal, RootDatum, SeedTable,
    Weight,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn parse_weight(text: &str) -> Result<Weight, String> {
    let coords: Result<Vec<i64>, _> = text.split(',').map(|p| p.trim().parse()).collect();
    coords
        .map(Weight)
        .map_err(|_| format!("bad weight {text:?}: expected integers like 1,0,2"))
}

fn datum(ty: &str) -> Result<RootDatum, String> {
    RootDatum::from_type(ty).map_err(|e| e.to_string())
}

/// Render-ready view of a crystal: elements with their depth below the
/// component source (every `f` arrow goes one level down), plus the edges.
fn view_value(c: &Crystal) -> Value {
    let mut level = vec![0i64; c.len()];
    let mut component = vec![0usize; c.len()];
    for (ci, comp) in c.components().iter().enumerate() {
        // walk down from the source of the component
        let source = comp
            .iter()
            .copied()
            .find(|&b| (0..c.rank()).all(|i| c.e(b, i).is_none()))
            .unwrap_or(comp[0]);
        let mut queue = vec![source];
        while let Some(b) = queue.pop() {
            component[b] = ci;
            for i in 0..c.rank() {
                if let Some(dst) = c.f(b, i) {
                    level[dst] = level[b] + 1;
                    queue.push(dst);
                }
            }
        }
    }
    let elements: Vec<Value> = (0..c.len())
        .map(|id| {
            json!({
                "id": id,
                "wt": c.wt(id).coords(),
                "level": level[id],
                "component": component[id],
            })
        })
        .collect();
    let mut edges = Vec::new();
    for color in 0..c.rank() {
        for src in 0..c.len() {
            if let Some(dst) = c.f(src, color) {
                edges.push(json!({"src": src, "dst": dst, "color": color + 1}));
            }
        }
    }
    json!({
        "rank": c.rank(),
        "elements": elements,
        "edges": edges,
    })
}

pub fn build_view(ty: &str, hw: &str) -> Result<String, String> {
    let d = datum(ty)?;
    let seeds = SeedTable::for_datum(&d);
    let lam = parse_weight(hw)?;
    let b = build_b(&seeds, &lam).map_err(|e| e.to_string())?;
    Ok(json!({
        "hw": lam.coords(),
        "size": b.len(),
        "crystal": view_value(&b),
    })
    .to_string())
}

pub fn tensor_view(ty: &str, hw1: &str, hw2: &str) -> Result<String, String> {
    let d = datum(ty)?;
    let seeds = SeedTable::for_datum(&d);
    let b1 = build_b(&seeds, &parse_weight(hw1)?).map_err(|e| e.to_string())?;
    let b2 = build_b(&seeds, &parse_weight(hw2)?).map_err(|e| e.to_string())?;
    let t = tensor(&b1, &b2).map_err(|e| e.to_string())?;
    let report = decompose(&t, &seeds).map_err(|e| e.to_string())?;
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "hw": e.highest_weight.coords(),
                "mult": e.multiplicity,
                "components": e.components,
            })
        })
        .collect();
    Ok(json!({
        "size": t.len(),
        "crystal": view_value(&t),
        "entries": entries,
    })
    .to_string())
}

pub fn pgl2_view(
    lmax: i64,
    l1: i64,
    m1: i64,
    l2: i64,
    m2: i64,
    samples: u64,
) -> Result<String, String> {
    let prec = (2 * lmax + 8).max(32);
    let census: Vec<Value> = strata_census(lmax, prec, 1)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|(l, m)| json!([l, m]))
        .collect();
    let stats = convolve_samples(l1, m1, l2, m2, samples, 32, 42).map_err(|e| e.to_string())?;
    let labels: Vec<Value> = stats
        .labels
        .iter()
        .map(|(l, c)| json!({"label": l, "count": c}))
        .collect();
    let iwasawa: Vec<Value> = stats
        .iwasawa_labels
        .iter()
        .map(|(l, c)| json!({"label": l, "count": c}))
        .collect();
    Ok(json!({
        "census": census,
        "labels": labels,
        "iwasawa": iwasawa,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn wasm_build_view(ty: &str, hw: &str) -> Result<String, JsValue> {
    build_view(ty, hw).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn wasm_tensor_view(ty: &str, hw1: &str, hw2: &str) -> Result<String, JsValue> {
    tensor_view(ty, hw1, hw2).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn wasm_pgl2_view(
    lmax: i32,
    l1: i32,
    m1: i32,
    l2: i32,
    m2: i32,
    samples: u32,
) -> Result<String, JsValue> {
    pgl2_view(
        lmax as i64,
        l1 as i64,
        m1 as i64,
        l2 as i64,
        m2 as i64,
        samples as u64,
    )
    .map_err(|e| JsValue::from_str(&e))
}
