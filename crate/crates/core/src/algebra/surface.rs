use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::homology::homology_summary;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poset::FacePoset;

/// Invariants of a closed connected surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceSummary {
    pub closed: bool,
    pub orientable: bool,
    /// Handle count when orientable, crosscap count otherwise.
    pub genus: i64,
    pub chi: i64,
    /// A sign per 2-cell (as `(cell, ±1)`) making every edge cancel, present
    /// exactly when the surface is orientable.
    pub orientation: Option<Vec<(usize, i32)>>,
}

/// Link of a vertex in a 2-complex: one node per edge at `v`, one link edge
/// per corner of a 2-cell at `v`.
pub fn vertex_link(x: &FacePoset, v: usize) -> Graph {
    let mut g = Graph::empty(x.label(v));
    let mut node = alloc::collections::BTreeMap::new();
    for &e in x.cofaces(v) {
        node.insert(e, g.add_vertex(x.label(e)).expect("edge labels are unique"));
    }
    let mut faces: Vec<usize> = x
        .cofaces(v)
        .iter()
        .flat_map(|&e| x.cofaces(e).iter().copied())
        .collect();
    faces.sort_unstable();
    faces.dedup();
    for f in faces {
        let at_v: Vec<usize> = x
            .boundary(f)
            .iter()
            .map(|b| b.0)
            .filter(|&e| node.contains_key(&e))
            .collect();
        if let [a, b] = at_v[..] {
            g.add_edge(x.label(f), node[&a], node[&b])
                .expect("corner joins two distinct edges");
        }
    }
    g
}

/// Recognizes closed connected surfaces. Anything else is reported as
/// [`Error::NotASurface`] naming the first offending cell.
pub fn surface_summary(x: &FacePoset) -> Result<SurfaceSummary> {
    match x.dimension() {
        Some(2) => {}
        found => {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: found.unwrap_or(0),
            })
        }
    }
    for e in x.cells_of_dim(1) {
        let k = x.cofaces(e).len();
        if k != 2 {
            return Err(Error::NotASurface {
                cell: x.label(e).to_string(),
                reason: format!("edge lies in {k} two-cells"),
            });
        }
    }
    for v in x.cells_of_dim(0) {
        let link = vertex_link(x, v);
        if link.vertex_count() == 0 || !link.profile().is_circle {
            return Err(Error::NotASurface {
                cell: x.label(v).to_string(),
                reason: "vertex link is not a single circle".to_string(),
            });
        }
    }
    let (labels, n) = x.component_labels();
    if n > 1 {
        let c = (0..x.len())
            .find(|&c| labels[c] != 0)
            .expect("second component");
        return Err(Error::NotASurface {
            cell: x.label(c).to_string(),
            reason: "surface is not connected".to_string(),
        });
    }
    let h = homology_summary(x);
    let chi = h.euler;
    let orientable = h.b(2) == 1;
    let genus = if orientable { (2 - chi) / 2 } else { 2 - chi };
    let orientation = if orientable {
        coherent_orientation(x)
    } else {
        None
    };
    Ok(SurfaceSummary {
        closed: true,
        orientable,
        genus,
        chi,
        orientation,
    })
}

/// Propagates signs across edges so that each edge receives opposite
/// induced orientations from its two 2-cells.
fn coherent_orientation(x: &FacePoset) -> Option<Vec<(usize, i32)>> {
    let faces = x.cells_of_dim(2);
    let mut sign = vec![0i32; x.len()];
    for &start in &faces {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for &(e, s) in x.boundary(f) {
                for &g in x.cofaces(e) {
                    if g == f {
                        continue;
                    }
                    let t = x.boundary(g).iter().find(|b| b.0 == e)?.1;
                    let want = -sign[f] * s * t;
                    if sign[g] == 0 {
                        sign[g] = want;
                        queue.push_back(g);
                    } else if sign[g] != want {
                        return None;
                    }
                }
            }
        }
    }
    Some(faces.into_iter().map(|f| (f, sign[f])).collect())
}
