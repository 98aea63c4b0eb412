use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::verify::disc_defect;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::product::{Coord, ProductCell, ProductSubcomplex};

/// An edge path in a product of two graphs: `edges[i]` joins
/// `vertices[i]` and `vertices[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePath {
    pub vertices: Vec<[usize; 2]>,
    pub edges: Vec<ProductCell>,
}

impl EdgePath {
    pub fn point(v: [usize; 2]) -> Self {
        EdgePath {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    pub fn start(&self) -> [usize; 2] {
        self.vertices[0]
    }

    pub fn end(&self) -> [usize; 2] {
        *self.vertices.last().expect("paths have a vertex")
    }

    pub fn reversed(&self) -> EdgePath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        EdgePath { vertices, edges }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn extend(&mut self, other: &EdgePath) {
        debug_assert_eq!(self.end(), other.start());
        self.vertices.extend_from_slice(&other.vertices[1..]);
        self.edges.extend_from_slice(&other.edges);
    }

    /// All cells of the path, vertices included.
    pub fn cells(&self) -> BTreeSet<ProductCell> {
        let mut out: BTreeSet<ProductCell> = self.edges.iter().cloned().collect();
        for v in &self.vertices {
            out.insert(ProductCell::new(vec![Coord::V(v[0]), Coord::V(v[1])]));
        }
        out
    }
}

/// A maximal run of edges moving in one factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    /// Moves in the second role factor.
    pub vertical: bool,
    /// The vertex held constant, in the other role factor.
    pub fixed: usize,
    /// Vertices passed, in the moving factor, first to last.
    pub vertices: Vec<usize>,
    /// Edge ids of the moving factor.
    pub edges: Vec<usize>,
}

/// Alternating vertical/horizontal runs, first run vertical. When the input
/// started horizontally the two factors swap roles and `transposed` is set:
/// then "vertical" refers to the first factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseArc {
    pub transposed: bool,
    pub segments: Vec<Segment>,
    pub path: EdgePath,
}

impl StaircaseArc {
    /// Factor index playing the horizontal role, then the vertical one.
    pub fn roles(&self) -> [usize; 2] {
        if self.transposed {
            [1, 0]
        } else {
            [0, 1]
        }
    }
}

/// Splits a simple edge path into vertical and horizontal runs.
pub fn normalize_staircase(factors: &[Graph], path: &EdgePath) -> Result<StaircaseArc> {
    if factors.len() != 2 {
        return Err(Error::NotSimplePath("two factors expected".into()));
    }
    if path.edges.is_empty() || path.vertices.len() != path.edges.len() + 1 {
        return Err(Error::NotSimplePath(
            "a path needs at least one edge".into(),
        ));
    }
    let mut seen = BTreeSet::new();
    for v in &path.vertices {
        if !seen.insert(*v) {
            return Err(Error::NotSimplePath(format!(
                "vertex {v:?} is visited twice"
            )));
        }
    }
    // moving factor and edge id of each step
    let mut steps = Vec::with_capacity(path.edges.len());
    for (i, cell) in path.edges.iter().enumerate() {
        let (a, b) = (path.vertices[i], path.vertices[i + 1]);
        let step = match cell.coords() {
            [Coord::E(e), Coord::V(y)] if *y == a[1] && *y == b[1] => (0, *e),
            [Coord::V(x), Coord::E(e)] if *x == a[0] && *x == b[0] => (1, *e),
            _ => {
                return Err(Error::NotSimplePath(format!(
                    "step {i} is not an edge of the path"
                )))
            }
        };
        let g = &factors[step.0];
        if step.1 >= g.edge_count() {
            return Err(Error::NotSimplePath(format!(
                "step {i} names a missing edge"
            )));
        }
        let ed = g.edge(step.1);
        let (from, to) = (a[step.0], b[step.0]);
        if !((ed.tail == from && ed.head == to) || (ed.head == from && ed.tail == to)) {
            return Err(Error::NotSimplePath(format!(
                "step {i} does not join its endpoints"
            )));
        }
        steps.push(step);
    }
    let transposed = steps[0].0 == 0;
    let vertical_factor = if transposed { 0 } else { 1 };
    let mut segments: Vec<Segment> = Vec::new();
    for (i, &(f, e)) in steps.iter().enumerate() {
        let a = path.vertices[i];
        let b = path.vertices[i + 1];
        let vertical = f == vertical_factor;
        match segments.last_mut() {
            Some(s) if s.vertical == vertical => {
                s.vertices.push(b[f]);
                s.edges.push(e);
            }
            _ => segments.push(Segment {
                vertical,
                fixed: a[1 - f],
                vertices: vec![a[f], b[f]],
                edges: vec![e],
            }),
        }
    }
    Ok(StaircaseArc {
        transposed,
        segments,
        path: path.clone(),
    })
}

/// A pendant edge added to a factor graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pendant {
    pub factor: usize,
    pub base: usize,
    pub tip: usize,
    pub edge: usize,
}

/// One member of the disc family: `kind` 1–4 in the order
/// `v v′×w w′`, `v v′×w_j…w_{j+1}`, `v v′×w_{j+1}w′_{j+1}`,
/// `v_j…v_{j+1}×w_{j+1}w′_{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscItem {
    pub j: usize,
    pub kind: u8,
    pub cells: Vec<ProductCell>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseDisc {
    pub k1: Graph,
    pub k2: Graph,
    /// The 2-cells of the disc.
    pub disc: BTreeSet<ProductCell>,
    pub items: Vec<DiscItem>,
    pub pendants: Vec<Pendant>,
    /// `∂D ∖ A` as a path from the start of the arc to its end.
    pub free_boundary: EdgePath,
    pub transposed: bool,
}

impl StaircaseDisc {
    /// Closure of the disc's 2-cells.
    pub fn closure(&self) -> BTreeSet<ProductCell> {
        ProductSubcomplex::empty(vec![self.k1.clone(), self.k2.clone()])
            .closure_of(self.disc.iter().cloned())
    }
}

/// Builds the staircase disc on `a`, extending `k1` and `k2` by pendant
/// edges only. The result meets `k1 ⊠ k2` exactly in `a`.
pub fn staircase_disc(k1: &Graph, k2: &Graph, a: &StaircaseArc) -> Result<StaircaseDisc> {
    let old = [
        (k1.vertex_count(), k1.edge_count()),
        (k2.vertex_count(), k2.edge_count()),
    ];
    for v in &a.path.vertices {
        if v[0] >= old[0].0 || v[1] >= old[1].0 {
            return Err(Error::ArcNotInProduct(format!("vertex {v:?}")));
        }
    }
    for c in &a.path.edges {
        for (i, x) in c.coords().iter().enumerate() {
            let ok = match *x {
                Coord::V(v) => v < old[i].0,
                Coord::E(e) => e < old[i].1,
            };
            if !ok {
                return Err(Error::ArcNotInProduct(format!("edge {:?}", c.coords())));
            }
        }
    }
    let roles = a.roles();
    let mut factors = [k1.clone(), k2.clone()];
    let mut pendants: Vec<Pendant> = Vec::new();
    let mut by_base: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut pendant = |factors: &mut [Graph; 2], role: usize, base: usize| -> usize {
        let f = roles[role];
        *by_base.entry((f, base)).or_insert_with(|| {
            let g = &mut factors[f];
            let tip_id = g.fresh_id("p");
            let tip = g.add_vertex(&tip_id).expect("fresh id");
            let edge_id = g.fresh_id("q");
            let edge = g.add_edge(&edge_id, base, tip).expect("fresh id");
            pendants.push(Pendant {
                factor: f,
                base,
                tip,
                edge,
            });
            edge
        })
    };
    // role coordinates (h, v) to a product cell in factor order
    let cell = |h: Coord, v: Coord| -> ProductCell {
        let mut c = vec![Coord::V(0); 2];
        c[roles[0]] = h;
        c[roles[1]] = v;
        ProductCell::new(c)
    };
    let verticals: Vec<&Segment> = a.segments.iter().filter(|s| s.vertical).collect();
    let horizontals: Vec<&Segment> = a.segments.iter().filter(|s| !s.vertical).collect();
    let n = verticals.len() - 1;
    let ends_horizontal = horizontals.len() == verticals.len();
    let mut items = Vec::new();
    for (j, vs) in verticals.iter().enumerate() {
        let v_j = vs.fixed;
        let w_j = vs.vertices[0];
        let w_next = *vs.vertices.last().expect("nonempty segment");
        let full = j < n || ends_horizontal;
        let pv = pendant(&mut factors, 0, v_j);
        let pw = pendant(&mut factors, 1, w_j);
        items.push(DiscItem {
            j,
            kind: 1,
            cells: vec![cell(Coord::E(pv), Coord::E(pw))],
        });
        items.push(DiscItem {
            j,
            kind: 2,
            cells: vs
                .edges
                .iter()
                .map(|&e| cell(Coord::E(pv), Coord::E(e)))
                .collect(),
        });
        if full {
            let pw_next = pendant(&mut factors, 1, w_next);
            items.push(DiscItem {
                j,
                kind: 3,
                cells: vec![cell(Coord::E(pv), Coord::E(pw_next))],
            });
            let hs = horizontals[j];
            items.push(DiscItem {
                j,
                kind: 4,
                cells: hs
                    .edges
                    .iter()
                    .map(|&e| cell(Coord::E(e), Coord::E(pw_next)))
                    .collect(),
            });
        }
    }
    let disc: BTreeSet<ProductCell> = items.iter().flat_map(|i| i.cells.iter().cloned()).collect();
    let [k1n, k2n] = factors;
    let ambient = ProductSubcomplex::empty(vec![k1n.clone(), k2n.clone()]);
    let closed = ambient.with_cells(disc.iter().cloned());
    if let Some(why) = disc_defect(&closed.to_face_poset()) {
        return Err(Error::InvalidComplex(format!("staircase disc: {why}")));
    }
    let in_old = |c: &ProductCell| {
        c.coords().iter().enumerate().all(|(i, x)| match *x {
            Coord::V(v) => v < old[i].0,
            Coord::E(e) => e < old[i].1,
        })
    };
    let meet: BTreeSet<ProductCell> = closed
        .cells()
        .iter()
        .filter(|c| in_old(c))
        .cloned()
        .collect();
    if meet != a.path.cells() {
        return Err(Error::InvalidComplex(
            "staircase disc meets the product outside the arc".into(),
        ));
    }
    let free_boundary = free_boundary(&closed, &disc, &a.path)?;
    Ok(StaircaseDisc {
        k1: k1n,
        k2: k2n,
        disc,
        items,
        pendants,
        free_boundary,
        transposed: a.transposed,
    })
}

/// Walks the boundary edges of the disc that are not on the arc.
fn free_boundary(
    closed: &ProductSubcomplex,
    disc: &BTreeSet<ProductCell>,
    arc: &EdgePath,
) -> Result<EdgePath> {
    let factors = closed.factors();
    let mut count: BTreeMap<ProductCell, usize> = BTreeMap::new();
    for c in disc {
        for (f, _) in c.signed_faces(factors) {
            *count.entry(f).or_insert(0) += 1;
        }
    }
    let on_arc: BTreeSet<&ProductCell> = arc.edges.iter().collect();
    let mut adj: BTreeMap<[usize; 2], Vec<(ProductCell, [usize; 2])>> = BTreeMap::new();
    let mut total = 0;
    for (e, k) in &count {
        if *k != 1 || on_arc.contains(e) {
            continue;
        }
        total += 1;
        let ends: Vec<[usize; 2]> = e
            .signed_faces(factors)
            .into_iter()
            .map(|(v, _)| match v.coords() {
                [Coord::V(x), Coord::V(y)] => [*x, *y],
                _ => unreachable!("faces of edges are vertices"),
            })
            .collect();
        adj.entry(ends[0]).or_default().push((e.clone(), ends[1]));
        adj.entry(ends[1]).or_default().push((e.clone(), ends[0]));
    }
    let mut path = EdgePath::point(arc.start());
    let mut used = BTreeSet::new();
    let mut cur = arc.start();
    while cur != arc.end() {
        let next = adj
            .get(&cur)
            .and_then(|nb| nb.iter().find(|(e, _)| !used.contains(e)))
            .cloned();
        let Some((e, w)) = next else {
            return Err(Error::InvalidComplex("free boundary is not a path".into()));
        };
        used.insert(e.clone());
        path.edges.push(e);
        path.vertices.push(w);
        cur = w;
    }
    if used.len() != total {
        return Err(Error::InvalidComplex(
            "free boundary has extra edges".into(),
        ));
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::shapes;

    fn vpath(column: usize, ws: &[usize], es: &[usize]) -> EdgePath {
        EdgePath {
            vertices: ws.iter().map(|&w| [column, w]).collect(),
            edges: es
                .iter()
                .map(|&e| ProductCell::new(vec![Coord::V(column), Coord::E(e)]))
                .collect(),
        }
    }

    #[test]
    fn single_vertical_edge() {
        let k1 = shapes::path("A", 2);
        let k2 = shapes::path("B", 2);
        let p = vpath(0, &[0, 1], &[0]);
        let arc = normalize_staircase(&[k1.clone(), k2.clone()], &p).unwrap();
        assert_eq!(arc.segments.len(), 1);
        assert!(!arc.transposed);
        let d = staircase_disc(&k1, &k2, &arc).unwrap();
        assert_eq!(d.disc.len(), 2);
        assert_eq!(
            d.items.iter().map(|i| i.kind).collect::<Vec<_>>(),
            vec![1, 2]
        );
        assert_eq!(d.free_boundary.start(), [0, 0]);
        assert_eq!(d.free_boundary.end(), [0, 1]);
        assert_eq!(d.free_boundary.edges.len(), 5);
    }

    #[test]
    fn vertical_then_horizontal() {
        let k1 = shapes::path("A", 2);
        let k2 = shapes::path("B", 2);
        let mut p = vpath(0, &[0, 1], &[0]);
        p.extend(&EdgePath {
            vertices: vec![[0, 1], [1, 1]],
            edges: vec![ProductCell::new(vec![Coord::E(0), Coord::V(1)])],
        });
        let arc = normalize_staircase(&[k1.clone(), k2.clone()], &p).unwrap();
        assert_eq!(arc.segments.len(), 2);
        let d = staircase_disc(&k1, &k2, &arc).unwrap();
        assert_eq!(d.disc.len(), 4);
        assert_eq!(d.pendants.len(), 3);
    }

    #[test]
    fn runs_merge_and_transpose() {
        let k1 = shapes::path("A", 3);
        let k2 = shapes::path("B", 3);
        let p = vpath(0, &[0, 1, 2], &[0, 1]);
        let arc = normalize_staircase(&[k1.clone(), k2.clone()], &p).unwrap();
        assert_eq!(arc.segments.len(), 1);
        assert_eq!(arc.segments[0].edges, vec![0, 1]);
        let h = EdgePath {
            vertices: vec![[0, 0], [1, 0]],
            edges: vec![ProductCell::new(vec![Coord::E(0), Coord::V(0)])],
        };
        let arc = normalize_staircase(&[k1.clone(), k2.clone()], &h).unwrap();
        assert!(arc.transposed);
        let d = staircase_disc(&k1, &k2, &arc).unwrap();
        assert_eq!(d.disc.len(), 2);
    }

    #[test]
    fn revisited_column_reuses_pendant() {
        // up column 0, right, up column 1, left back to column 0, up again
        let k1 = shapes::path("A", 1);
        let k2 = shapes::path("B", 4);
        let v = |x: usize, y: usize| [x, y];
        let up = |x: usize, e: usize| ProductCell::new(vec![Coord::V(x), Coord::E(e)]);
        let side = |y: usize| ProductCell::new(vec![Coord::E(0), Coord::V(y)]);
        let p = EdgePath {
            vertices: vec![v(0, 0), v(0, 1), v(1, 1), v(1, 2), v(0, 2), v(0, 3)],
            edges: vec![up(0, 0), side(1), up(1, 1), side(2), up(0, 2)],
        };
        let arc = normalize_staircase(&[k1.clone(), k2.clone()], &p).unwrap();
        let d = staircase_disc(&k1, &k2, &arc).unwrap();
        let at_zero = d
            .pendants
            .iter()
            .filter(|p| p.factor == 0 && p.base == 0)
            .count();
        assert_eq!(at_zero, 1);
    }

    #[test]
    fn rejects_non_simple_and_outside_paths() {
        let k1 = shapes::circle("A", 2);
        let k2 = shapes::path("B", 1);
        let p = EdgePath {
            vertices: vec![[0, 0], [1, 0], [0, 0]],
            edges: vec![
                ProductCell::new(vec![Coord::E(0), Coord::V(0)]),
                ProductCell::new(vec![Coord::E(1), Coord::V(0)]),
            ],
        };
        assert!(matches!(
            normalize_staircase(&[k1.clone(), k2.clone()], &p),
            Err(Error::NotSimplePath(_))
        ));
        let small = shapes::path("B", 0);
        let q = vpath(0, &[0, 1], &[0]);
        let arc = normalize_staircase(&[k1.clone(), k2], &q).unwrap();
        assert!(matches!(
            staircase_disc(&k1, &small, &arc),
            Err(Error::ArcNotInProduct(_))
        ));
    }
}
