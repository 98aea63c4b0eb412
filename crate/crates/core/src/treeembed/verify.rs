use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::{homology_summary, vertex_link};
use crate::graph::Graph;
use crate::poset::FacePoset;
use crate::product::{ProductCell, ProductSubcomplex};

/// A cell-to-subcomplex correspondence claimed to be an embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellwiseMap {
    pub source: FacePoset,
    pub factors: Vec<Graph>,
    /// Face-closed image of each source cell.
    pub image: Vec<BTreeSet<ProductCell>>,
}

impl CellwiseMap {
    /// The union of all images.
    pub fn target(&self) -> ProductSubcomplex {
        let cells: BTreeSet<ProductCell> = self.image.iter().flatten().cloned().collect();
        ProductSubcomplex::empty(self.factors.clone()).with_cells(cells)
    }

    /// Inclusion of a product subcomplex into itself.
    pub fn identity(m: &ProductSubcomplex) -> CellwiseMap {
        let (source, order) = m.to_face_poset_indexed();
        let image = order.iter().map(|c| m.closure_of([c.clone()])).collect();
        CellwiseMap {
            source,
            factors: m.factors().to_vec(),
            image,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: String,
    pub cell: String,
    pub other: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub cells_checked: usize,
    pub pairs_checked: usize,
    pub violation: Option<Violation>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Why a closed complex is not a 2-disc, or `None` if it is one.
pub fn disc_defect(p: &FacePoset) -> Option<String> {
    if p.dimension() != Some(2) {
        return Some("not 2-dimensional".into());
    }
    if !p.is_connected() {
        return Some("not connected".into());
    }
    let tops = p.closure(p.cells_of_dim(2));
    if tops.len() != p.len() {
        return Some("not pure".into());
    }
    let mut boundary = Graph::empty("boundary");
    let mut node = BTreeMap::new();
    for e in p.cells_of_dim(1) {
        match p.cofaces(e).len() {
            1 => {
                let (t, h) = p.edge_endpoints(e);
                for v in [t, h] {
                    node.entry(v)
                        .or_insert_with(|| boundary.add_vertex(p.label(v)).expect("unique"));
                }
                boundary
                    .add_edge(p.label(e), node[&t], node[&h])
                    .expect("regular edge");
            }
            2 => {}
            k => return Some(format!("edge `{}` lies in {k} two-cells", p.label(e))),
        }
    }
    if !boundary.profile().is_circle {
        return Some("boundary is not a single circle".into());
    }
    if p.euler() != 1 {
        return Some(format!("Euler characteristic {}", p.euler()));
    }
    for v in p.cells_of_dim(0) {
        let link = vertex_link(p, v);
        let prof = link.profile();
        if prof.components != 1 || link.degrees().iter().any(|&d| d > 2) {
            return Some(format!("link of `{}` is not an arc or circle", p.label(v)));
        }
    }
    None
}

/// Checks dimension, shape and intersection conditions of a cellwise map,
/// stopping at the first violation.
pub fn verify_cellwise_map(h: &CellwiseMap) -> Verification {
    let mut report = Verification {
        cells_checked: 0,
        pairs_checked: 0,
        violation: None,
    };
    let x = &h.source;
    let ambient = ProductSubcomplex::empty(h.factors.clone());
    let fail = |check: &str, a: usize, b: Option<usize>, detail: String| Violation {
        check: check.to_string(),
        cell: x.label(a).to_string(),
        other: b.map(|b| x.label(b).to_string()),
        detail,
    };
    if h.image.len() != x.len() {
        report.violation = Some(Violation {
            check: "domain".into(),
            cell: String::new(),
            other: None,
            detail: format!("{} images for {} cells", h.image.len(), x.len()),
        });
        return report;
    }
    for c in 0..x.len() {
        report.cells_checked += 1;
        if let Some(why) = cell_defect(h, &ambient, c) {
            report.violation = Some(fail("cell", c, None, why));
            return report;
        }
    }
    let closures: Vec<BTreeSet<usize>> = (0..x.len()).map(|c| x.closure([c])).collect();
    for a in 0..x.len() {
        for b in a + 1..x.len() {
            report.pairs_checked += 1;
            let got: BTreeSet<&ProductCell> = h.image[a].intersection(&h.image[b]).collect();
            let want: BTreeSet<&ProductCell> = closures[a]
                .intersection(&closures[b])
                .flat_map(|&r| h.image[r].iter())
                .collect();
            if got != want {
                report.violation = Some(fail(
                    "intersection",
                    a,
                    Some(b),
                    format!("images share {} cells, expected {}", got.len(), want.len()),
                ));
                return report;
            }
        }
    }
    report
}

fn cell_defect(h: &CellwiseMap, ambient: &ProductSubcomplex, c: usize) -> Option<String> {
    let x = &h.source;
    let img = &h.image[c];
    if img.is_empty() {
        return Some("empty image".into());
    }
    for cell in img {
        if ambient.check_cell(cell).is_err() {
            return Some("image cell outside the target factors".into());
        }
    }
    if &ambient.closure_of(img.iter().cloned()) != img {
        return Some("image is not face-closed".into());
    }
    let k = x.dim(c);
    let sub = ambient.with_cells(img.iter().cloned());
    if sub.dimension() != Some(k) {
        return Some(format!("image has dimension {:?}", sub.dimension()));
    }
    let face_union: BTreeSet<ProductCell> = x
        .boundary(c)
        .iter()
        .flat_map(|&(f, _)| h.image[f].iter().cloned())
        .collect();
    let p = sub.to_face_poset();
    match k {
        0 => {
            if img.len() != 1 {
                return Some("vertex image is not a single vertex".into());
            }
        }
        1 => {
            let g = p.one_skeleton();
            let prof = g.profile();
            let ends: BTreeSet<ProductCell> = x
                .boundary(c)
                .iter()
                .flat_map(|&(f, _)| h.image[f].iter().cloned())
                .collect();
            let deg_one: BTreeSet<String> = prof.endpoint_vertices.iter().cloned().collect();
            let want: BTreeSet<String> = ends.iter().map(|v| sub.label(v)).collect();
            if !prof.is_tree
                || g.degrees().iter().any(|&d| d > 2)
                || deg_one != want
                || want.len() != 2
            {
                return Some("edge image is not a simple path between its end images".into());
            }
        }
        2 => {
            if let Some(why) = disc_defect(&p) {
                return Some(format!("2-cell image is not a disc: {why}"));
            }
            if boundary_of_pure(&sub) != face_union {
                return Some("disc boundary differs from the images of the faces".into());
            }
        }
        _ => {
            if p.closure(p.cells_of_dim(k)).len() != p.len() {
                return Some("image is not pure".into());
            }
            let hs = homology_summary(&p);
            if hs.betti.iter().skip(1).any(|&b| b != 0) || hs.b(0) != 1 || hs.has_torsion() {
                return Some("image is not acyclic".into());
            }
            if boundary_of_pure(&sub) != face_union {
                return Some("image boundary differs from the images of the faces".into());
            }
            let faces = ambient
                .with_cells(face_union.iter().cloned())
                .to_face_poset();
            let hb = homology_summary(&faces);
            let sphere = hb.b(0) == 1
                && hb.b(k - 1) == 1
                && (1..k - 1).all(|i| hb.b(i) == 0)
                && !hb.has_torsion();
            if !sphere {
                return Some("image boundary is not a homology sphere".into());
            }
        }
    }
    None
}

/// Closure of the codimension-1 cells lying in exactly one top cell.
fn boundary_of_pure(sub: &ProductSubcomplex) -> BTreeSet<ProductCell> {
    let k = sub.dimension().unwrap_or(0);
    let mut count: BTreeMap<ProductCell, usize> = BTreeMap::new();
    for c in sub.cells_of_dim(k) {
        for (f, _) in c.signed_faces(sub.factors()) {
            *count.entry(f).or_insert(0) += 1;
        }
    }
    sub.closure_of(count.into_iter().filter(|(_, n)| *n == 1).map(|(f, _)| f))
}
