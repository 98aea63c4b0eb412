//! JSON views of analysis results.

use prodcurves_core::collapse::{Certificate, CollapseSequence, EmbeddabilityVerdict};
use prodcurves_core::fibers::{as_graph, FactorizationReport, FiberReport};
use prodcurves_core::treeembed::{CellwiseMap, Verification};
use prodcurves_core::{
    ClassificationFlags, FacePoset, HomologySummary, ProductSubcomplex, SurfaceSummary,
};
use serde_json::{json, Map, Value};

use crate::format::{graph_json, product_json, steps_json, Complex, EMBEDDING};

/// The top-level analysis report. Optional sections are omitted, not null.
pub struct AnalysisReport {
    pub seed: u64,
    pub input: Value,
    pub sections: Map<String, Value>,
}

impl AnalysisReport {
    pub fn new(c: &Complex, seed: u64) -> Self {
        let x = c.to_face_poset();
        AnalysisReport {
            seed,
            input: json!({ "digest": c.digest(), "format": c.format(), "cell_counts": x.counts() }),
            sections: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, v: Value) -> Self {
        self.sections.insert(key.to_string(), v);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut out = self.sections.clone();
        out.insert("tool".into(), tool());
        out.insert("seed".into(), json!(self.seed));
        out.insert("input".into(), self.input.clone());
        Value::Object(out)
    }
}

pub fn tool() -> Value {
    json!({ "name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION") })
}

pub fn flags(f: &ClassificationFlags) -> Value {
    json!({
        "n": f.n,
        "top_cover": f.top_cover,
        "ramified": f.ramified,
        "pseudo": f.pseudo,
        "simple": f.simple,
        "free_faces": f.free_faces,
        "combinatorial_components": f.combinatorial_components,
    })
}

pub fn homology(h: &HomologySummary) -> Value {
    let torsion: Vec<Vec<String>> = h
        .torsion
        .iter()
        .map(|t| t.iter().map(|d| d.to_string()).collect())
        .collect();
    json!({ "betti": h.betti, "torsion": torsion, "euler": h.euler })
}

pub fn surface(s: &SurfaceSummary) -> Value {
    json!({ "closed": s.closed, "orientable": s.orientable, "genus": s.genus, "chi": s.chi })
}

pub fn factorization(r: &FactorizationReport) -> Value {
    let vertex_fibers: Vec<Value> = r
        .rank_data
        .vertex_fibers
        .iter()
        .map(|(j, v, b)| json!({ "direction": j + 1, "vertex": v, "b1": b }))
        .collect();
    json!({
        "J_M": r.j_m.one_based(),
        "is_full_torus": r.is_full_torus,
        "torus_factors": r.torus_factors.iter().map(|t| graph_json(&as_graph(t))).collect::<Vec<_>>(),
        "residual": r.residual.as_ref().map(product_json),
        "rank_data": {
            "b1": r.rank_data.b1,
            "vertex_fibers": vertex_fibers,
            "fiber_sum": r.rank_data.fiber_sum,
            "at_least_n": r.rank_data.at_least_n,
            "at_least_fiber_sum": r.rank_data.at_least_fiber_sum,
            "circle_bound": r.rank_data.circle_bound,
        },
    })
}

pub fn fiber(base: &ProductSubcomplex, f: &FiberReport) -> Value {
    let components: Vec<Value> = f
        .component_profiles
        .iter()
        .map(|c| json!({ "top_cells": c.top_cells, "ramified": c.ramified, "pseudo": c.pseudo, "b1": c.b1 }))
        .collect();
    json!({
        "base_cell": if f.base_cell.coords().is_empty() { Vec::new() } else { base.coordinate_ids(&f.base_cell) },
        "top_cells": f.fiber.top_cells().iter().map(|c| f.fiber.coordinate_ids(c)).collect::<Vec<_>>(),
        "components": components,
    })
}

fn counts(c: &[usize]) -> Value {
    Value::Object(
        c.iter()
            .enumerate()
            .map(|(k, n)| (k.to_string(), json!(n)))
            .collect(),
    )
}

pub fn certificate(c: &Certificate, x: &FacePoset) -> Value {
    json!({
        "rule": c.rule,
        "b1": c.b1,
        "remainder": counts(&c.remainder_counts),
        "steps": steps_json(x, &c.steps),
        "corollaries": c.corollaries,
    })
}

pub fn verdict(v: &EmbeddabilityVerdict, x: &FacePoset) -> Value {
    json!({
        "b1": v.b1,
        "remainder_class": v.remainder_class.as_str(),
        "remainder": counts(&v.sequence.remainder.counts()),
        "certificate": v.certificate.as_ref().map(|c| certificate(c, x)),
        "readings_agree": v.readings_agree,
    })
}

pub fn sequence(s: &CollapseSequence, x: &FacePoset) -> Value {
    json!({
        "steps": steps_json(x, &s.steps),
        "remainder": counts(&s.remainder.counts()),
        "remainder_cells": s.remainder.labels(),
        "remainder_class": prodcurves_core::collapse::classify_remainder(&s.remainder).as_str(),
    })
}

pub fn verification(v: &Verification) -> Value {
    json!({
        "passed": v.passed(),
        "cells_checked": v.cells_checked,
        "pairs_checked": v.pairs_checked,
        "violation": v.violation.as_ref().map(|w| json!({
            "check": w.check, "cell": w.cell, "other": w.other, "detail": w.detail,
        })),
    })
}

/// Factors plus `map: { source cell: [target cell tuples] }`.
pub fn embedding(h: &CellwiseMap, v: &Verification) -> Value {
    let frame = ProductSubcomplex::empty(h.factors.clone());
    let map: Map<String, Value> = (0..h.source.len())
        .map(|c| {
            let cells: Vec<Vec<String>> =
                h.image[c].iter().map(|p| frame.coordinate_ids(p)).collect();
            (h.source.label(c).to_string(), json!(cells))
        })
        .collect();
    json!({
        "format": EMBEDDING,
        "factors": h.factors.iter().map(graph_json).collect::<Vec<_>>(),
        "map": map,
        "verification": verification(v),
    })
}
