//! Serialization: the `crystal/1` JSON format, report JSON, and DOT export.
//!
//! A crystal file looks like
//! `{"format":"crystal/1","cartan":[[2]],"elements":[{"id":0,"wt":[1]},…],
//! "f":{"1":[[src,dst],…]}}` with colors as 1-based strings, element ids
//! dense from 0 and weights in Dynkin coordinates. Loading validates the
//! schema and the crystal axioms; saving emits canonical key order, so equal
//! crystals serialize to identical bytes.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::crystal::Crystal;
use crate::decompose::{BranchingReport, DecompositionReport, ReportEntry};
use crate::error::Error;
use crate::pgl2::ConvolutionStats;
use crate::root_data::{RootDatum, Weight};
use crate::Result;

/// Edge colors for DOT export, reused cyclically beyond eight colors.
pub const DOT_PALETTE: [&str; 8] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999",
];

fn schema_err(path: &str, reason: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        reason: reason.into(),
    }
}

/// The `crystal/1` value for a crystal.
pub fn crystal_to_json(c: &Crystal) -> Value {
    let elements: Vec<Value> = (0..c.len())
        .map(|id| json!({ "id": id, "wt": c.wt(id).coords() }))
        .collect();
    let mut f = Map::new();
    for color in 0..c.rank() {
        let edges: Vec<Value> = (0..c.len())
            .filter_map(|src| c.f(src, color).map(|dst| json!([src, dst])))
            .collect();
        f.insert((color + 1).to_string(), Value::Array(edges));
    }
    json!({
        "format": "crystal/1",
        "cartan": c.datum().cartan(),
        "elements": elements,
        "f": f,
    })
}

pub fn crystal_to_json_string(c: &Crystal) -> String {
    crystal_to_json(c).to_string()
}

/// Parses and fully validates a `crystal/1` value.
pub fn crystal_from_json(v: &Value) -> Result<Crystal> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema_err("$", "expected an object"))?;
    match obj.get("format").and_then(Value::as_str) {
        Some("crystal/1") => {}
        Some(other) => {
            return Err(schema_err(
                "format",
                format!("unsupported format {other:?}"),
            ))
        }
        None => return Err(schema_err("format", "missing format tag")),
    }
    let cartan_v = obj
        .get("cartan")
        .ok_or_else(|| schema_err("cartan", "missing"))?;
    let cartan: Vec<Vec<i64>> = serde_json::from_value(cartan_v.clone())
        .map_err(|e| schema_err("cartan", e.to_string()))?;
    let datum = RootDatum::new(cartan)?;
    let rank = datum.rank();

    let elements = obj
        .get("elements")
        .and_then(Value::as_array)
        .ok_or_else(|| schema_err("elements", "missing or not an array"))?;
    let n = elements.len();
    let mut weights: Vec<Option<Weight>> = vec![None; n];
    for (pos, el) in elements.iter().enumerate() {
        let path = format!("elements[{pos}]");
        let el = el
            .as_object()
            .ok_or_else(|| schema_err(&path, "expected an object"))?;
        let id = el
            .get("id")
            .and_then(Value::as_u64)
            .ok_or_else(|| schema_err(&path, "missing integer id"))? as usize;
        if id >= n {
            return Err(schema_err(
                &path,
                format!("id {id} out of the dense range 0..{n}"),
            ));
        }
        if weights[id].is_some() {
            return Err(schema_err(&path, format!("duplicate id {id}")));
        }
        let wt: Vec<i64> = serde_json::from_value(
            el.get("wt")
                .ok_or_else(|| schema_err(&path, "missing wt"))?
                .clone(),
        )
        .map_err(|e| schema_err(&path, e.to_string()))?;
        if wt.len() != rank {
            return Err(schema_err(
                &path,
                format!("weight has {} coordinates, expected {rank}", wt.len()),
            ));
        }
        weights[id] = Some(Weight(wt));
    }
    let weights: Vec<Weight> = weights
        .into_iter()
        .collect::<Option<_>>()
        .expect("dense ids imply every slot filled");

    let f_obj = obj
        .get("f")
        .and_then(Value::as_object)
        .ok_or_else(|| schema_err("f", "missing or not an object"))?;
    let mut f = vec![vec![None; n]; rank];
    for (key, edges) in f_obj {
        let color: usize = key
            .parse::<usize>()
            .ok()
            .filter(|&c| c >= 1 && c <= rank)
            .ok_or_else(|| schema_err("f", format!("color {key:?} not in 1..={rank}")))?;
        let edges = edges
            .as_array()
            .ok_or_else(|| schema_err(&format!("f.{key}"), "expected an array"))?;
        for (pos, pair) in edges.iter().enumerate() {
            let path = format!("f.{key}[{pos}]");
            let pair: Vec<u64> = serde_json::from_value(pair.clone())
                .map_err(|e| schema_err(&path, e.to_string()))?;
            let [src, dst] = pair.as_slice() else {
                return Err(schema_err(&path, "expected a [src, dst] pair"));
            };
            let (src, dst) = (*src as usize, *dst as usize);
            if src >= n || dst >= n {
                return Err(schema_err(
                    &path,
                    format!("edge [{src},{dst}] leaves the id range 0..{n}"),
                ));
            }
            if f[color - 1][src].is_some() {
                return Err(schema_err(
                    &path,
                    format!("element {src} has two outgoing edges of color {key}"),
                ));
            }
            f[color - 1][src] = Some(dst);
        }
    }

    let crystal = Crystal::new(datum, weights, f)?;
    let report = crystal.check_axioms();
    if !report.ok() {
        return Err(Error::AxiomViolation(
            report
                .violations
                .first()
                .cloned()
                .unwrap_or_else(|| "axiom violation".into()),
        ));
    }
    Ok(crystal)
}

pub fn save_crystal(c: &Crystal, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, crystal_to_json_string(c) + "\n")?;
    Ok(())
}

pub fn load_crystal(path: impl AsRef<Path>) -> Result<Crystal> {
    let text = std::fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text)?;
    crystal_from_json(&value)
}

fn entries_to_json(entries: &[ReportEntry]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| {
                json!({
                    "hw": e.highest_weight.coords(),
                    "mult": e.multiplicity,
                    "components": e.components,
                })
            })
            .collect(),
    )
}

pub fn decomposition_to_json(r: &DecompositionReport) -> Value {
    json!({
        "format": "decomposition/1",
        "total": r.total_elements,
        "entries": entries_to_json(&r.entries),
    })
}

pub fn branching_to_json(r: &BranchingReport) -> Value {
    let levi: Vec<usize> = r.levi.iter().map(|&i| i + 1).collect();
    json!({
        "format": "branching/1",
        "levi": levi,
        "total": r.total_elements,
        "entries": entries_to_json(&r.entries),
    })
}

pub fn convolution_to_json(s: &ConvolutionStats) -> Value {
    let count_map = |m: &std::collections::BTreeMap<i64, u64>| {
        let mut out = Map::new();
        for (&label, &count) in m {
            out.insert(label.to_string(), json!(count));
        }
        Value::Object(out)
    };
    json!({
        "l1": s.l1,
        "m1": s.m1,
        "l2": s.l2,
        "m2": s.m2,
        "samples": s.samples,
        "labels": count_map(&s.labels),
        "iwasawa": count_map(&s.iwasawa_labels),
    })
}

pub fn census_to_json(lmax: i64, strata: &std::collections::BTreeSet<(i64, i64)>) -> Value {
    let entries: Vec<Value> = strata.iter().map(|&(l, m)| json!([l, m])).collect();
    json!({
        "format": "census/1",
        "lmax": lmax,
        "strata": entries,
    })
}

pub fn strings_to_json(c: &Crystal, color: usize, strings: &[Vec<usize>]) -> Value {
    let entries: Vec<Value> = strings
        .iter()
        .map(|chain| {
            let weights: Vec<&[i64]> = chain.iter().map(|&b| c.wt(b).coords()).collect();
            json!({
                "top": chain[0],
                "length": chain.len(),
                "elements": chain,
                "weights": weights,
            })
        })
        .collect();
    json!({
        "format": "strings/1",
        "color": color + 1,
        "strings": entries,
    })
}

/// GraphViz rendering: one node per element labeled `id:wt`, one edge per
/// arrow labeled `f<i>`, one color per arrow label.
pub fn crystal_to_dot(c: &Crystal) -> String {
    let mut out = String::from("digraph crystal {\n  rankdir=TB;\n  node [shape=box];\n");
    for id in 0..c.len() {
        out.push_str(&format!("  n{id} [label=\"{id}:{}\"];\n", c.wt(id)));
    }
    for color in 0..c.rank() {
        let hex = DOT_PALETTE[color % DOT_PALETTE.len()];
        for src in 0..c.len() {
            if let Some(dst) = c.f(src, color) {
                out.push_str(&format!(
                    "  n{src} -> n{dst} [label=\"f{}\", color=\"{hex}\", fontcolor=\"{hex}\"];\n",
                    color + 1
                ));
            }
        }
    }
    out.push_str("}\n");
    out
}
