//! On-disk schemas. Every writer produces canonical JSON: sorted keys, two
//! space indentation, integers only, trailing newline.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use prodcurves_core::collapse::CollapseStep;
use prodcurves_core::gallery::Payload;
use prodcurves_core::{CellRecord, FacePoset, Graph, ProductSubcomplex, SimplicialComplex};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const COMPLEX: &str = "prodcurves-complex/1";
pub const SIMPLICIAL: &str = "prodcurves-simplicial/1";
pub const CELLS: &str = "prodcurves-cells/1";
pub const WITNESS: &str = "prodcurves-witness/1";
pub const EMBEDDING: &str = "prodcurves-embedding/1";

/// A complex as read from disk.
#[derive(Debug, Clone)]
pub enum Complex {
    Product(ProductSubcomplex),
    Simplicial(SimplicialComplex),
    Cells(FacePoset),
}

impl Complex {
    pub fn format(&self) -> &'static str {
        match self {
            Complex::Product(_) => COMPLEX,
            Complex::Simplicial(_) => SIMPLICIAL,
            Complex::Cells(_) => CELLS,
        }
    }

    pub fn to_face_poset(&self) -> FacePoset {
        match self {
            Complex::Product(m) => m.to_face_poset(),
            Complex::Simplicial(k) => k.to_face_poset(),
            Complex::Cells(p) => p.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Complex::Product(m) => product_json(m),
            Complex::Simplicial(k) => json!({ "format": SIMPLICIAL, "simplices": k.facet_names() }),
            Complex::Cells(p) => cells_json(p),
        }
    }

    /// SHA-256 of the canonical serialization.
    pub fn digest(&self) -> String {
        let bytes = canonical(&self.to_json());
        let hash = Sha256::digest(bytes.as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl From<Payload> for Complex {
    fn from(p: Payload) -> Self {
        match p {
            Payload::Graph(g) => Complex::Product(ProductSubcomplex::full(vec![g])),
            Payload::Product(m) => Complex::Product(m),
            Payload::Poset(x) => Complex::Cells(x),
            Payload::Simplicial(k) => Complex::Simplicial(k),
        }
    }
}

pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn read_json(path: &Path) -> CliResult<Value> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

pub fn read_complex(path: &Path) -> CliResult<Complex> {
    parse_complex(&read_json(path)?)
}

pub fn graph_json(g: &Graph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!({ "id": e.id, "tail": g.vertex_id(e.tail), "head": g.vertex_id(e.head) }))
        .collect();
    json!({ "name": g.name(), "vertices": g.vertices(), "edges": edges })
}

pub fn product_json(m: &ProductSubcomplex) -> Value {
    let tops: Vec<Vec<String>> = m.top_cells().iter().map(|c| m.coordinate_ids(c)).collect();
    json!({
        "format": COMPLEX,
        "factors": m.factors().iter().map(graph_json).collect::<Vec<_>>(),
        "top_cells": tops,
    })
}

fn cells_json(p: &FacePoset) -> Value {
    let cells: Vec<Value> = (0..p.len())
        .map(|c| {
            let boundary: Vec<Value> = p
                .boundary(c)
                .iter()
                .map(|&(f, s)| json!([p.label(f), s]))
                .collect();
            json!({ "id": p.label(c), "dim": p.dim(c), "boundary": boundary })
        })
        .collect();
    json!({ "format": CELLS, "cells": cells })
}

pub fn witness_json(x: &FacePoset, steps: &[CollapseStep]) -> Value {
    json!({ "format": WITNESS, "steps": steps_json(x, steps) })
}

pub fn steps_json(x: &FacePoset, steps: &[CollapseStep]) -> Vec<Value> {
    steps
        .iter()
        .map(|s| json!({ "free": x.label(s.free_cell), "coface": x.label(s.coface) }))
        .collect()
}

/// Reads the `steps` of a witness file (or of a collapse report) against
/// the labels of `x`.
pub fn parse_witness(v: &Value, x: &FacePoset) -> CliResult<Vec<CollapseStep>> {
    let obj = object(v, "witness")?;
    let steps = array(field(obj, "steps", "witness")?, "steps")?;
    steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let o = object(s, "step")?;
            let cell = |key: &str| -> CliResult<usize> {
                let label = string(field(o, key, "step")?, key)?;
                x.find(label)
                    .ok_or_else(|| CliError::Schema(format!("step {i}: unknown cell `{label}`")))
            };
            Ok(CollapseStep {
                free_cell: cell("free")?,
                coface: cell("coface")?,
            })
        })
        .collect()
}

pub fn parse_complex(v: &Value) -> CliResult<Complex> {
    let obj = object(v, "complex")?;
    let format = string(field(obj, "format", "complex")?, "format")?;
    match format {
        COMPLEX => {
            only_keys(obj, &["format", "factors", "top_cells"])?;
            parse_product(obj).map(Complex::Product)
        }
        SIMPLICIAL => {
            only_keys(obj, &["format", "simplices"])?;
            let simplices = array(field(obj, "simplices", "complex")?, "simplices")?
                .iter()
                .map(|s| string_list(s, "simplex"))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Complex::Simplicial(SimplicialComplex::from_facets(
                &simplices,
            )?))
        }
        CELLS => {
            only_keys(obj, &["format", "cells"])?;
            parse_cells(obj).map(Complex::Cells)
        }
        other => Err(CliError::Schema(format!("unknown format `{other}`"))),
    }
}

fn parse_product(obj: &Map<String, Value>) -> CliResult<ProductSubcomplex> {
    let factors = array(field(obj, "factors", "complex")?, "factors")?
        .iter()
        .map(parse_graph)
        .collect::<CliResult<Vec<_>>>()?;
    if factors.is_empty() {
        return Err(CliError::Schema("`factors` is empty".into()));
    }
    let empty = ProductSubcomplex::empty(factors.clone());
    let tops = array(field(obj, "top_cells", "complex")?, "top_cells")?
        .iter()
        .map(|c| Ok(empty.parse_cell(&string_list(c, "top cell")?)?))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(ProductSubcomplex::build(factors, tops)?)
}

fn parse_graph(v: &Value) -> CliResult<Graph> {
    let obj = object(v, "factor")?;
    only_keys(obj, &["name", "vertices", "edges"])?;
    let name = string(field(obj, "name", "factor")?, "name")?;
    let vertices = string_list(field(obj, "vertices", "factor")?, "vertices")?;
    let edges = array(field(obj, "edges", "factor")?, "edges")?
        .iter()
        .map(|e| {
            let o = object(e, "edge")?;
            only_keys(o, &["id", "tail", "head"])?;
            Ok((
                string(field(o, "id", "edge")?, "id")?.to_string(),
                string(field(o, "tail", "edge")?, "tail")?.to_string(),
                string(field(o, "head", "edge")?, "head")?.to_string(),
            ))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Graph::build(name, vertices, edges)?)
}

fn parse_cells(obj: &Map<String, Value>) -> CliResult<FacePoset> {
    let cells = array(field(obj, "cells", "complex")?, "cells")?;
    let mut index = BTreeMap::new();
    for (i, c) in cells.iter().enumerate() {
        let id = string(field(object(c, "cell")?, "id", "cell")?, "id")?;
        if index.insert(id, i).is_some() {
            return Err(CliError::Schema(format!("duplicate cell id `{id}`")));
        }
    }
    let records = cells
        .iter()
        .map(|c| {
            let o = object(c, "cell")?;
            only_keys(o, &["id", "dim", "boundary"])?;
            let label = string(field(o, "id", "cell")?, "id")?.to_string();
            let dim = field(o, "dim", "cell")?.as_u64().ok_or_else(|| {
                CliError::Schema(format!(
                    "cell `{label}`: `dim` must be a nonnegative integer"
                ))
            })?;
            let boundary = array(field(o, "boundary", "cell")?, "boundary")?
                .iter()
                .map(|b| {
                    let pair = array(b, "boundary entry")?;
                    let (Some(face), Some(sign), 2) = (pair.first(), pair.get(1), pair.len())
                    else {
                        return Err(CliError::Schema(format!(
                            "cell `{label}`: boundary entries are [id, sign]"
                        )));
                    };
                    let face = string(face, "face")?;
                    let f = *index.get(face).ok_or_else(|| {
                        CliError::Schema(format!("cell `{label}`: unknown face `{face}`"))
                    })?;
                    let s = match sign.as_i64() {
                        Some(1) => 1,
                        Some(-1) => -1,
                        _ => {
                            return Err(CliError::Schema(format!(
                                "cell `{label}`: signs are 1 or -1"
                            )))
                        }
                    };
                    Ok((f, s))
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(CellRecord {
                label,
                dim: dim as usize,
                boundary,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(FacePoset::from_cells(records)?)
}

fn object<'a>(v: &'a Value, what: &str) -> CliResult<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| CliError::Schema(format!("{what} must be an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> CliResult<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| CliError::Schema(format!("`{what}` must be an array")))
}

fn string<'a>(v: &'a Value, what: &str) -> CliResult<&'a str> {
    v.as_str()
        .ok_or_else(|| CliError::Schema(format!("`{what}` must be a string")))
}

fn string_list(v: &Value, what: &str) -> CliResult<Vec<String>> {
    array(v, what)?
        .iter()
        .map(|s| string(s, what).map(str::to_string))
        .collect()
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> CliResult<&'a Value> {
    obj.get(key)
        .ok_or_else(|| CliError::Schema(format!("{what} is missing `{key}`")))
}

fn only_keys(obj: &Map<String, Value>, allowed: &[&str]) -> CliResult<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(CliError::Schema(format!("unexpected key `{k}`"))),
        None => Ok(()),
    }
}
