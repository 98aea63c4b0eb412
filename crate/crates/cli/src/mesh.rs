//! Schematic OFF export of 2-complexes.
//!
//! Factor vertices sit on unit circles, evenly spaced in id order. A vertex
//! `(p, q)` of a product of two graphs goes to
//! `(cos α_p, sin α_p, cos β_q + 0.3 sin β_q)`. Complexes without a product
//! structure put their vertices, in label order, on the curve
//! `(cos α, sin α, cos 2α)`.

use std::f64::consts::TAU;
use std::fmt::Write;

use prodcurves_core::{surface_summary, Coord, FacePoset, Graph};

use crate::error::{CliError, CliResult};
use crate::format::Complex;

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<Vec<usize>>,
    pub edges: usize,
    /// Set when the faces are not a coherently oriented closed surface.
    pub warning: Option<String>,
}

/// Angle of each vertex of `g`, spaced by the rank of its id.
fn angles(g: &Graph) -> Vec<f64> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by(|&a, &b| g.vertex_id(a).cmp(g.vertex_id(b)));
    let mut out = vec![0.0; order.len()];
    for (rank, &v) in order.iter().enumerate() {
        out[v] = TAU * rank as f64 / order.len() as f64;
    }
    out
}

pub fn build(c: &Complex) -> CliResult<Mesh> {
    let (x, point): (FacePoset, Vec<[f64; 3]>) = match c {
        Complex::Product(m) => {
            if m.factor_count() != 2 {
                return Err(CliError::NotExportable(format!(
                    "mesh layout needs two factors, found {}",
                    m.factor_count()
                )));
            }
            let (x, order) = m.to_face_poset_indexed();
            let (a, b) = (angles(&m.factors()[0]), angles(&m.factors()[1]));
            let point = order
                .iter()
                .map(|cell| match cell.coords() {
                    [Coord::V(p), Coord::V(q)] => {
                        [a[*p].cos(), a[*p].sin(), b[*q].cos() + 0.3 * b[*q].sin()]
                    }
                    _ => [0.0; 3],
                })
                .collect();
            (x, point)
        }
        other => {
            let x = other.to_face_poset();
            let mut verts = x.cells_of_dim(0);
            verts.sort_by(|&u, &v| x.label(u).cmp(x.label(v)));
            let mut point = vec![[0.0; 3]; x.len()];
            for (rank, &v) in verts.iter().enumerate() {
                let t = TAU * rank as f64 / verts.len() as f64;
                point[v] = [t.cos(), t.sin(), (2.0 * t).cos()];
            }
            (x, point)
        }
    };
    if x.dimension() != Some(2) {
        return Err(CliError::NotExportable(format!(
            "mesh export needs a 2-dimensional complex, found dimension {:?}",
            x.dimension()
        )));
    }
    let mut signs = vec![1i32; x.len()];
    let warning = match surface_summary(&x) {
        Ok(s) => match s.orientation {
            Some(o) => {
                for (cell, sign) in o {
                    signs[cell] = sign;
                }
                None
            }
            None => Some("non-orientable surface; faces keep their stored orientation".to_string()),
        },
        Err(e) => Some(format!(
            "not a closed surface ({e}); writing a polygon soup"
        )),
    };
    let verts = x.cells_of_dim(0);
    let mut slot = vec![usize::MAX; x.len()];
    for (i, &v) in verts.iter().enumerate() {
        slot[v] = i;
    }
    let faces = x
        .cells_of_dim(2)
        .into_iter()
        .map(|f| {
            let mut walk: Vec<usize> = x.boundary_walk(f).into_iter().map(|v| slot[v]).collect();
            if signs[f] < 0 {
                walk.reverse();
            }
            walk
        })
        .collect();
    Ok(Mesh {
        vertices: verts.iter().map(|&v| point[v]).collect(),
        faces,
        edges: x.cells_of_dim(1).len(),
        warning,
    })
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

pub fn to_off(m: &Mesh) -> String {
    let mut s = String::new();
    writeln!(s, "OFF").unwrap();
    writeln!(s, "{} {} {}", m.vertices.len(), m.faces.len(), m.edges).unwrap();
    for p in &m.vertices {
        writeln!(s, "{} {} {}", num(p[0]), num(p[1]), num(p[2])).unwrap();
    }
    for f in &m.faces {
        let ids: Vec<String> = f.iter().map(|i| i.to_string()).collect();
        writeln!(s, "{} {}", f.len(), ids.join(" ")).unwrap();
    }
    s
}
