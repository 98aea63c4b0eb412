//! Deterministic constructions with their expected properties, re-checked
//! live on every build, plus seeded random collapsible complexes.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Display;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{homology_summary, surface_summary, HomologySummary};
use crate::classify::classify;
use crate::collapse::{classify_remainder, maximal_collapse, CollapseStep, Strategy};
use crate::error::{Error, Result};
use crate::fibers::{factorize, project, IndexSet};
use crate::graph::{shapes, Graph};
use crate::poset::{FacePoset, PosetBuilder};
use crate::product::{Coord, ProductCell, ProductSubcomplex};
use crate::simplicial::SimplicialComplex;
use crate::treeembed::disc_defect;

pub const NAMES: &[&str] = &[
    "theta",
    "circle",
    "torus",
    "theta_theta",
    "disc",
    "annulus",
    "square",
    "fan",
    "simplex2",
    "k4",
    "dunce_hat",
    "bing_house",
    "klein_bottle",
    "example_2B3",
    "example_2B4",
    "example_2F6",
    "staircase_2F6",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Graph(Graph),
    Product(ProductSubcomplex),
    Poset(FacePoset),
    Simplicial(SimplicialComplex),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Graph(_) => "graph",
            Payload::Product(_) => "product",
            Payload::Poset(_) => "cells",
            Payload::Simplicial(_) => "simplicial",
        }
    }

    pub fn to_face_poset(&self) -> FacePoset {
        match self {
            Payload::Graph(g) => g.to_face_poset(),
            Payload::Product(m) => m.to_face_poset(),
            Payload::Poset(x) => x.clone(),
            Payload::Simplicial(k) => k.to_face_poset(),
        }
    }
}

/// One expected outcome with what the pipeline actually produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub check: String,
    pub expected: String,
    pub observed: String,
}

impl Expectation {
    pub fn holds(&self) -> bool {
        self.expected == self.observed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GalleryItem {
    pub name: String,
    pub params: Vec<(String, i64)>,
    pub payload: Payload,
    pub expected: Vec<Expectation>,
}

impl GalleryItem {
    pub fn all_hold(&self) -> bool {
        self.expected.iter().all(Expectation::holds)
    }

    pub fn failures(&self) -> Vec<&Expectation> {
        self.expected.iter().filter(|e| !e.holds()).collect()
    }

    pub fn expectation(&self, check: &str) -> Option<&Expectation> {
        self.expected.iter().find(|e| e.check == check)
    }
}

#[derive(Default)]
struct Checks(Vec<Expectation>);

impl Checks {
    fn check(&mut self, check: &str, expected: impl Display, observed: impl Display) {
        self.0.push(Expectation {
            check: check.to_string(),
            expected: expected.to_string(),
            observed: observed.to_string(),
        });
    }

    fn betti(&mut self, h: &HomologySummary, expected: &[usize]) {
        self.check("betti", fmt_list(expected), fmt_list(&h.betti));
    }

    fn surface(&mut self, x: &FacePoset, orientable: bool, chi: i64) {
        match surface_summary(x) {
            Ok(s) => {
                self.check("closed", true, s.closed);
                self.check("orientable", orientable, s.orientable);
                self.check("chi", chi, s.chi);
            }
            Err(e) => self.check("closed", true, e),
        }
    }

    fn remainder(&mut self, x: &FacePoset, class: &str) {
        let seq = maximal_collapse(x, Strategy::LowestId);
        self.check(
            "remainder",
            class,
            classify_remainder(&seq.remainder).as_str(),
        );
    }
}

fn fmt_list<T: Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

struct Params<'a> {
    given: &'a [(&'a str, i64)],
    used: Vec<(String, i64)>,
}

impl<'a> Params<'a> {
    fn new(given: &'a [(&'a str, i64)]) -> Self {
        Params {
            given,
            used: Vec::new(),
        }
    }

    fn get(&mut self, key: &str, default: i64, min: i64) -> Result<usize> {
        let v = self
            .given
            .iter()
            .rev()
            .find(|(k, _)| *k == key)
            .map_or(default, |p| p.1);
        if v < min {
            return Err(Error::BadParams(format!(
                "{key} must be at least {min}, got {v}"
            )));
        }
        self.used.push((key.to_string(), v));
        Ok(v as usize)
    }

    fn finish(self) -> Result<Vec<(String, i64)>> {
        for (k, _) in self.given {
            if !self.used.iter().any(|(u, _)| u == k) {
                return Err(Error::BadParams(format!("unknown parameter `{k}`")));
            }
        }
        Ok(self.used)
    }
}

/// Builds the named item and runs its checks.
pub fn make(name: &str, params: &[(&str, i64)]) -> Result<GalleryItem> {
    let mut p = Params::new(params);
    let mut c = Checks::default();
    let payload = match name {
        "theta" => {
            let g = shapes::theta("P");
            let prof = g.profile();
            c.check("b1", 2, homology_summary(&g.to_face_poset()).b(1));
            c.check("endpoints", 0, prof.endpoint_vertices.len());
            Payload::Graph(g)
        }
        "circle" => {
            let k = p.get("k", 4, 2)?;
            let g = shapes::circle("C", k);
            c.check("b1", 1, homology_summary(&g.to_face_poset()).b(1));
            c.check("is_circle", true, g.profile().is_circle);
            Payload::Graph(g)
        }
        "k4" => {
            let g = k4();
            c.check("b1", 3, homology_summary(&g.to_face_poset()).b(1));
            Payload::Graph(g)
        }
        "torus" => {
            let a = p.get("p", 4, 2)?;
            let b = p.get("q", 4, 2)?;
            let m = ProductSubcomplex::full(vec![shapes::circle("C1", a), shapes::circle("C2", b)]);
            let x = m.to_face_poset();
            c.surface(&x, true, 0);
            c.check(
                "full_torus",
                true,
                factorize(&m).map(|f| f.is_full_torus).unwrap_or(false),
            );
            Payload::Product(m)
        }
        "theta_theta" => {
            let m = ProductSubcomplex::full(vec![shapes::theta("P"), shapes::theta("Q")]);
            c.betti(&homology_summary(&m.to_face_poset()), &[1, 4, 4]);
            Payload::Product(m)
        }
        "disc" => {
            let k = p.get("k", 6, 3)?;
            let facets: Vec<Vec<String>> = (0..k)
                .map(|i| vec!["c".into(), format!("o{i}"), format!("o{}", (i + 1) % k)])
                .collect();
            let s = SimplicialComplex::from_facets(&facets)?;
            let x = s.to_face_poset();
            c.betti(&homology_summary(&x), &[1, 0, 0]);
            c.check(
                "disc",
                "none",
                disc_defect(&x).unwrap_or_else(|| "none".into()),
            );
            c.remainder(&x, "point");
            Payload::Simplicial(s)
        }
        "annulus" => {
            let k = p.get("k", 4, 3)?;
            let mut facets: Vec<Vec<String>> = Vec::new();
            for i in 0..k {
                let j = (i + 1) % k;
                facets.push(vec![format!("i{i}"), format!("o{i}"), format!("o{j}")]);
                facets.push(vec![format!("i{i}"), format!("i{j}"), format!("o{j}")]);
            }
            let s = SimplicialComplex::from_facets(&facets)?;
            let x = s.to_face_poset();
            c.betti(&homology_summary(&x), &[1, 1, 0]);
            c.remainder(&x, "circle");
            Payload::Simplicial(s)
        }
        "square" => {
            let mut b = PosetBuilder::new();
            let v: Vec<usize> = ["v0", "v1", "v2", "v3"]
                .iter()
                .map(|l| b.vertex(l))
                .collect();
            b.polygon("Q", &v);
            let x = b.build()?;
            c.remainder(&x, "point");
            Payload::Poset(x)
        }
        "fan" => {
            let k = p.get("k", 3, 1)?;
            let facets: Vec<Vec<String>> = (0..k)
                .map(|i| vec!["c".into(), format!("v{i}"), format!("v{}", i + 1)])
                .collect();
            let s = SimplicialComplex::from_facets(&facets)?;
            let x = s.to_face_poset();
            c.check(
                "disc",
                "none",
                disc_defect(&x).unwrap_or_else(|| "none".into()),
            );
            c.remainder(&x, "point");
            Payload::Simplicial(s)
        }
        "simplex2" => {
            let boundary = p.get("boundary", 0, 0)? != 0;
            let s = if boundary {
                SimplicialComplex::from_facets(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]])?
            } else {
                SimplicialComplex::from_facets(&[vec!["a", "b", "c"]])?
            };
            let expect: &[usize] = if boundary { &[1, 1] } else { &[1, 0, 0] };
            c.betti(&homology_summary(&s.to_face_poset()), expect);
            Payload::Simplicial(s)
        }
        "dunce_hat" => {
            let s = dunce_hat();
            check_contractible_without_free_edges(&mut c, &s.to_face_poset());
            c.check("counts", "(8,24,17)", fmt_list(&s.to_face_poset().counts()));
            Payload::Simplicial(s)
        }
        "bing_house" => {
            let m = bing_house();
            check_contractible_without_free_edges(&mut c, &m.to_face_poset());
            Payload::Product(m)
        }
        "klein_bottle" => {
            let s = klein_bottle();
            let x = s.to_face_poset();
            c.surface(&x, false, 0);
            let h = homology_summary(&x);
            let tors: Vec<String> = h
                .torsion
                .get(1)
                .map_or(Vec::new(), |t| t.iter().map(|d| d.to_string()).collect());
            c.check("torsion_h1", "(2)", fmt_list(&tors));
            Payload::Simplicial(s)
        }
        "example_2B3" => {
            let m = example_2b3();
            let x = m.to_face_poset();
            c.surface(&x, true, -4);
            check_projections(&mut c, &m)?;
            Payload::Product(m)
        }
        "example_2B4" => {
            let n = p.get("n", 4, 4)?;
            let m = example_2b4(n);
            let x = m.to_face_poset();
            c.surface(&x, true, -2 * n as i64);
            c.check("involution_invariant", true, swap_invariant(&m));
            c.check("diagonal_disjoint", true, diagonal_disjoint(&m));
            check_projections(&mut c, &m)?;
            let h = homology_summary(&x);
            c.check("b1", 2 + 2 * n, h.b(1));
            match factorize(&m) {
                Ok(f) => c.check("j_m", "{}", f.j_m.to_string()),
                Err(e) => c.check("j_m", "{}", e),
            }
            Payload::Product(m)
        }
        "example_2F6" => {
            let (x, parts) = example_2f6()?;
            check_2f6(&mut c, &x, &parts);
            Payload::Poset(x)
        }
        "staircase_2F6" => {
            let steps = p.get("N", 3, 1)?;
            let (m, d, a) = staircase_2f6(steps);
            let p_cells: BTreeSet<ProductCell> = m
                .cells()
                .iter()
                .filter(|cell| !d.contains(*cell) || a.contains(*cell))
                .cloned()
                .collect();
            let meet: BTreeSet<ProductCell> = d.intersection(&p_cells).cloned().collect();
            c.check("disc_meets_product_in_arc", true, meet == a);
            let dp = ProductSubcomplex::from_closed(m.factors().to_vec(), d.clone())?;
            c.check(
                "disc",
                "none",
                disc_defect(&dp.to_face_poset()).unwrap_or_else(|| "none".into()),
            );
            c.betti(&homology_summary(&m.to_face_poset()), &[1, 4, 4]);
            Payload::Product(m)
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(GalleryItem {
        name: name.to_string(),
        params: p.finish()?,
        payload,
        expected: c.0,
    })
}

fn check_contractible_without_free_edges(c: &mut Checks, x: &FacePoset) {
    c.betti(&homology_summary(x), &[1, 0, 0]);
    match classify(x, 2) {
        Ok(f) => {
            c.check("ramified", true, f.ramified);
            c.check("pseudo", false, f.pseudo);
            c.check("free_faces", 0, f.free_faces.len());
        }
        Err(e) => c.check("ramified", true, e),
    }
}

/// Both projections are onto and their images are ramified 1-manifolds.
fn check_projections(c: &mut Checks, m: &ProductSubcomplex) -> Result<()> {
    for j in 0..2 {
        let q = project(m, &IndexSet::single(2, j)?)?;
        let g = &m.factors()[j];
        c.check(
            &format!("onto_{}", j + 1),
            g.vertex_count() + g.edge_count(),
            q.len(),
        );
        let ramified = classify(&q.to_face_poset(), 1)
            .map(|f| f.ramified)
            .unwrap_or(false);
        c.check(&format!("ramified_image_{}", j + 1), true, ramified);
    }
    Ok(())
}

fn swap_invariant(m: &ProductSubcomplex) -> bool {
    m.cells()
        .iter()
        .all(|cell| m.contains(&ProductCell::new(vec![cell.0[1], cell.0[0]])))
}

fn coord_vertices(g: &Graph, c: Coord) -> [usize; 2] {
    match c {
        Coord::V(v) => [v, v],
        Coord::E(e) => [g.edge(e).tail, g.edge(e).head],
    }
}

/// No cell `σ × τ` has `cl σ ∩ cl τ ≠ ∅`.
fn diagonal_disjoint(m: &ProductSubcomplex) -> bool {
    let g = &m.factors()[0];
    m.cells().iter().all(|cell| {
        let a = coord_vertices(g, cell.0[0]);
        let b = coord_vertices(g, cell.0[1]);
        a.iter().all(|v| !b.contains(v))
    })
}

fn k4() -> Graph {
    let mut g = Graph::empty("K4");
    for i in 0..4 {
        g.add_vertex(&format!("v{i}")).unwrap();
    }
    for i in 0..4 {
        for j in i + 1..4 {
            g.add_edge(&format!("e{i}{j}"), i, j).unwrap();
        }
    }
    g
}

/// An 8-vertex dunce hat: a triangle whose three sides, each split in
/// three, are glued `1→2→3→1` in the same direction.
pub fn dunce_hat() -> SimplicialComplex {
    const T: [[u8; 3]; 17] = [
        [1, 2, 4],
        [1, 2, 7],
        [1, 2, 8],
        [1, 3, 5],
        [1, 3, 6],
        [1, 3, 8],
        [1, 4, 7],
        [1, 5, 6],
        [2, 3, 4],
        [2, 3, 5],
        [2, 3, 6],
        [2, 5, 7],
        [2, 6, 8],
        [3, 4, 8],
        [4, 6, 7],
        [4, 6, 8],
        [5, 6, 7],
    ];
    let facets: Vec<Vec<String>> = T
        .iter()
        .map(|t| t.iter().map(|v| v.to_string()).collect())
        .collect();
    SimplicialComplex::from_facets(&facets).expect("fixed triangulation")
}

/// Square-grid Klein bottle on 9 vertices: the grid `Z_3 × [0,3]` with
/// `(i,3) ~ (−i,0)`.
pub fn klein_bottle() -> SimplicialComplex {
    let v = |i: i64, j: i64| -> String {
        let (i, j) = if j == 3 {
            ((-i).rem_euclid(3), 0)
        } else {
            (i.rem_euclid(3), j)
        };
        format!("k{i}{j}")
    };
    let mut facets = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let (a, b, c, d) = (v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1));
            facets.push(vec![a.clone(), b, c.clone()]);
            facets.push(vec![a, c, d]);
        }
    }
    SimplicialComplex::from_facets(&facets).expect("fixed triangulation")
}

/// Bing's house with two rooms as a cubical complex in `[0,5]×[0,3]×[0,4]`.
/// The floor sits at height 2; a tube at `[3,4]×[1,2]` runs from the roof
/// down into the lower room, a tube at `[1,2]×[1,2]` from the bottom up
/// into the upper room, and one wall in each room ties its tube to the
/// outer wall.
pub fn bing_house() -> ProductSubcomplex {
    let dims = [5usize, 3, 4];
    let factors: Vec<Graph> = ["x", "y", "z"]
        .iter()
        .zip(dims)
        .map(|(n, k)| shapes::path(n, k))
        .collect();
    let mut cells = Vec::new();
    // unit square normal to `axis` at height `h`, lower corner (r, s)
    let mut sq = |axis: usize, h: usize, r: usize, s: usize| {
        let mut c = [Coord::V(0); 3];
        let others: Vec<usize> = (0..3).filter(|&i| i != axis).collect();
        c[axis] = Coord::V(h);
        c[others[0]] = Coord::E(r);
        c[others[1]] = Coord::E(s);
        cells.push(ProductCell::new(c.to_vec()));
    };
    for x in 0..5 {
        for y in 0..3 {
            if (x, y) != (3, 1) {
                sq(2, 4, x, y);
            }
            if (x, y) != (1, 1) {
                sq(2, 0, x, y);
            }
            if (x, y) != (3, 1) && (x, y) != (1, 1) {
                sq(2, 2, x, y);
            }
        }
    }
    for z in 0..4 {
        for x in 0..5 {
            sq(1, 0, x, z);
            sq(1, 3, x, z);
        }
        for y in 0..3 {
            sq(0, 0, y, z);
            sq(0, 5, y, z);
        }
    }
    for (x0, zs) in [(3usize, 2..4usize), (1, 0..2)] {
        for z in zs {
            sq(0, x0, 1, z);
            sq(0, x0 + 1, 1, z);
            sq(1, 1, x0, z);
            sq(1, 2, x0, z);
        }
    }
    for z in 2..4 {
        sq(1, 1, 4, z);
    }
    for z in 0..2 {
        sq(1, 1, 0, z);
    }
    ProductSubcomplex::build(factors, cells).expect("cells lie in the grid")
}

/// Finite core of the surface `N ⊂ Y₁ × Y₂`: four arcs `α₀, α₁, β₁, β₂`
/// from `a` to `b`, and two circles `T_i = L₀ ∪ A_i ∪ L₁ ∪ B_i`.
pub fn example_2b3() -> ProductSubcomplex {
    let y1 = Graph::build(
        "Y1",
        ["a", "b"],
        ["al0", "al1", "be1", "be2"].map(|e| (e.to_string(), "a".to_string(), "b".to_string())),
    )
    .unwrap();
    let e = |id: &str, t: &str, h: &str| (id.to_string(), t.to_string(), h.to_string());
    let y2 = Graph::build(
        "Y2",
        ["u0", "v0", "u1", "v1"],
        vec![
            e("L0", "u0", "v0"),
            e("L1", "u1", "v1"),
            e("A0", "v0", "u1"),
            e("A1", "v0", "u1"),
            e("B0", "v1", "u0"),
            e("B1", "v1", "u0"),
        ],
    )
    .unwrap();
    let pairs: [(&str, &[&str]); 4] = [
        ("al0", &["L0", "A0", "L1", "B0"]),
        ("al1", &["L0", "A1", "L1", "B1"]),
        ("be1", &["A0", "A1"]),
        ("be2", &["B0", "B1"]),
    ];
    let mut cells = Vec::new();
    for (a, bs) in pairs {
        for b in bs {
            cells.push(ProductCell::new(vec![
                Coord::E(y1.edge_index(a).unwrap()),
                Coord::E(y2.edge_index(b).unwrap()),
            ]));
        }
    }
    ProductSubcomplex::build(vec![y1, y2], cells).unwrap()
}

/// The graph `P = S¹×{0,1} ∪ {z_j}×I` with `n` rungs, and
/// `M = ⋃ S_j × S_{j+2}` minus the open squares `I_{j+1} × I_{j+3}`.
pub fn example_2b4(n: usize) -> ProductSubcomplex {
    let mut p = Graph::empty("P");
    for j in 0..n {
        p.add_vertex(&format!("z{j}_0")).unwrap();
        p.add_vertex(&format!("z{j}_1")).unwrap();
    }
    let bottom = |j: usize| 2 * (j % n);
    for j in 0..n {
        p.add_edge(&format!("A{j}_0"), bottom(j), bottom(j + 1))
            .unwrap();
        p.add_edge(&format!("A{j}_1"), bottom(j) + 1, bottom(j + 1) + 1)
            .unwrap();
        p.add_edge(&format!("I{j}"), bottom(j), bottom(j) + 1)
            .unwrap();
    }
    let rung = |j: usize| 3 * (j % n) + 2;
    let circle = |j: usize| [rung(j), 3 * (j % n), 3 * (j % n) + 1, rung(j + 1)];
    let mut cells = BTreeSet::new();
    for j in 0..n {
        for a in circle(j) {
            for b in circle(j + 2) {
                cells.insert(ProductCell::new(vec![Coord::E(a), Coord::E(b)]));
            }
        }
    }
    for j in 0..n {
        cells.remove(&ProductCell::new(vec![
            Coord::E(rung(j + 1)),
            Coord::E(rung(j + 3)),
        ]));
    }
    ProductSubcomplex::build(vec![p.clone(), p], cells.into_iter().collect()).unwrap()
}

/// Cell ids of the pieces of `X = (P × P) ∪ D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parts2F6 {
    /// Cells of the subdivided `P × P`.
    pub product: Vec<usize>,
    /// Cells of the disc `D`.
    pub disc: Vec<usize>,
    /// Cells of the arc `A`.
    pub arc: Vec<usize>,
    /// Cells subdividing the open square `s0 × s0`.
    pub interior: Vec<usize>,
    /// The corner `(a0,a0)`.
    pub corner: usize,
}

/// `θ ⊠ θ` with `s0 × s0` cut into four polygons around a 2-edge arc `A`
/// from the corner `(a0,a0)`, plus a fan disc `D` on `A`.
pub fn example_2f6() -> Result<(FacePoset, Parts2F6)> {
    let pp = ProductSubcomplex::full(vec![shapes::theta("P"), shapes::theta("P")]);
    let (base, cells) = pp.to_face_poset_indexed();
    let target = ProductCell::new(vec![Coord::E(0), Coord::E(0)]);
    let mut b = PosetBuilder::new();
    let mut remap = vec![usize::MAX; base.len()];
    for c in 0..base.len() {
        if cells[c] == target {
            continue;
        }
        let bd = base
            .boundary(c)
            .iter()
            .map(|&(f, s)| (remap[f], s))
            .collect();
        remap[c] = b.cell(base.label(c), base.dim(c), bd);
    }
    let find = |l: &str| remap[base.find(l).unwrap()];
    let (c00, c10, c11, c01) = (
        find("(a0,a0)"),
        find("(a1,a0)"),
        find("(a1,a1)"),
        find("(a0,a1)"),
    );
    let (bottom, right, top, left) = (
        find("(s0,a0)"),
        find("(a1,s0)"),
        find("(s0,a1)"),
        find("(a0,s0)"),
    );
    let _ = (c10, c11, c01);
    let m1 = b.vertex("m1");
    let m2 = b.vertex("m2");
    let a0 = b.edge("A0", c00, m1);
    let a1 = b.edge("A1", m1, m2);
    let g1 = b.edge("g1", m2, c10);
    let g2 = b.edge("g2", m2, c11);
    let g3 = b.edge("g3", m2, c01);
    let q = [
        b.polygon_from_edges("(s0,s0).0", &[bottom, g1, a1, a0]),
        b.polygon_from_edges("(s0,s0).1", &[right, g2, g1]),
        b.polygon_from_edges("(s0,s0).2", &[top, g3, g2]),
        b.polygon_from_edges("(s0,s0).3", &[left, g3, a1, a0]),
    ];
    let d = b.vertex("d");
    let d0 = b.edge("d0", c00, d);
    let d1 = b.edge("d1", m1, d);
    let d2 = b.edge("d2", m2, d);
    let t0 = b.polygon_from_edges("D.0", &[a0, d1, d0]);
    let t1 = b.polygon_from_edges("D.1", &[a1, d2, d1]);
    let x = b.build()?;
    let disc_all: Vec<usize> = x.closure([t0, t1]).into_iter().collect();
    let mut interior = vec![m1, m2, a0, a1, g1, g2, g3];
    interior.extend(q);
    let parts = Parts2F6 {
        product: (0..x.len()).filter(|&c| c < d).collect(),
        disc: disc_all,
        arc: vec![c00, m1, m2, a0, a1],
        interior,
        corner: c00,
    };
    Ok((x, parts))
}

fn check_2f6(c: &mut Checks, x: &FacePoset, parts: &Parts2F6) {
    let disc_top: Vec<usize> = parts
        .disc
        .iter()
        .copied()
        .filter(|&t| x.dim(t) == 2)
        .collect();
    let arc_edges: Vec<usize> = parts
        .arc
        .iter()
        .copied()
        .filter(|&e| x.dim(e) == 1)
        .collect();
    // (i): each arc edge has exactly one disc 2-cell on it
    let on_boundary = arc_edges
        .iter()
        .all(|&e| x.cofaces(e).iter().filter(|t| disc_top.contains(t)).count() == 1);
    c.check("arc_in_disc_boundary", true, on_boundary);
    // (ii)
    let corner_degree = arc_edges
        .iter()
        .filter(|&&e| {
            let (t, h) = x.edge_endpoints(e);
            t == parts.corner || h == parts.corner
        })
        .count();
    c.check("corner_is_arc_endpoint", 1, corner_degree);
    // (iii)
    let inside = parts
        .arc
        .iter()
        .filter(|&&a| a != parts.corner)
        .all(|a| parts.interior.contains(a));
    c.check("arc_inside_one_square", true, inside);
    let prod: BTreeSet<usize> = parts.product.iter().copied().collect();
    let meet: BTreeSet<usize> = parts
        .disc
        .iter()
        .copied()
        .filter(|d| prod.contains(d))
        .collect();
    let arc: BTreeSet<usize> = parts.arc.iter().copied().collect();
    c.check("disc_meets_product_in_arc", true, meet == arc);
    let (sub, _) = x
        .restrict(
            &(0..x.len())
                .map(|i| parts.disc.contains(&i))
                .collect::<Vec<_>>(),
        )
        .unwrap();
    c.check(
        "disc",
        "none",
        disc_defect(&sub).unwrap_or_else(|| "none".into()),
    );
    c.betti(&homology_summary(x), &[1, 4, 4]);
    let seq = maximal_collapse(x, Strategy::LowestId);
    let kept: BTreeSet<usize> = seq.kept.iter().copied().collect();
    c.check("collapse_reaches_product", true, kept == prod);
}

/// Truncation of the curve-embedding staircase: `s0` carries points
/// `a2, …, a_{N+2}` running towards `a0`, each with a whisker `a_k b_k`.
/// Returns `(P × P) ∪ D★`, the closed disc `D★` and the arc `A★`.
pub fn staircase_2f6(
    steps: usize,
) -> (
    ProductSubcomplex,
    BTreeSet<ProductCell>,
    BTreeSet<ProductCell>,
) {
    let last = steps + 2;
    let mut y = Graph::empty("Y");
    let a0 = y.add_vertex("a0").unwrap();
    let a1 = y.add_vertex("a1").unwrap();
    let a: Vec<usize> = (0..=last)
        .map(|k| match k {
            0 => a0,
            1 => a1,
            _ => y.add_vertex(&format!("a{k}")).unwrap(),
        })
        .collect();
    let mut along = vec![usize::MAX; last + 1];
    y.add_edge("a1a2", a1, a[2]).unwrap();
    for k in 2..last {
        along[k] = y
            .add_edge(&format!("a{k}a{}", k + 1), a[k], a[k + 1])
            .unwrap();
    }
    y.add_edge(&format!("a{last}a0"), a[last], a0).unwrap();
    y.add_edge("s1", a0, a1).unwrap();
    y.add_edge("s2", a0, a1).unwrap();
    let p_vertices: BTreeSet<usize> = (0..y.vertex_count()).collect();
    let p_edges: BTreeSet<usize> = (0..y.edge_count()).collect();
    let whisker: Vec<usize> = (0..=last)
        .map(|k| {
            if k < 2 {
                usize::MAX
            } else {
                y.add_pendant(a[k], &format!("b{k}"), &format!("a{k}b{k}"))
                    .unwrap()
                    .1
            }
        })
        .collect();
    let p = y.subgraph(&p_vertices, &p_edges);
    let sq = |u: usize, v: usize| ProductCell::new(vec![Coord::E(u), Coord::E(v)]);
    let pt_edge = |v: usize, e: usize| ProductCell::new(vec![Coord::V(v), Coord::E(e)]);
    let edge_pt = |e: usize, v: usize| ProductCell::new(vec![Coord::E(e), Coord::V(v)]);
    let mut disc = Vec::new();
    let mut arc = Vec::new();
    for k in 2..=steps + 1 {
        disc.push(sq(whisker[k], whisker[k]));
        disc.push(sq(whisker[k], along[k]));
        disc.push(sq(whisker[k], whisker[k + 1]));
        disc.push(sq(along[k], whisker[k + 1]));
        arc.push(pt_edge(a[k], along[k]));
        arc.push(edge_pt(along[k], a[k + 1]));
    }
    let mut tops: Vec<ProductCell> = ProductSubcomplex::full(vec![p.clone(), p])
        .top_cells()
        .into_iter()
        .collect();
    tops.extend(disc.iter().cloned());
    let m = ProductSubcomplex::build(vec![y.clone(), y], tops).unwrap();
    let d = m.closure_of(disc);
    let a = m.closure_of(arc);
    (m, d, a)
}

/// A complex grown from a point by `size` random elementary expansions,
/// with the collapse that undoes them.
pub fn random_collapsible(seed: u64, size: usize) -> (FacePoset, Vec<CollapseStep>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = PosetBuilder::new();
    let mut verts = vec![b.vertex("v0")];
    // (id, tail, head)
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut undo = Vec::with_capacity(size);
    let mut cells = 0usize;
    for _ in 0..size {
        let path = if !edges.is_empty() && rng.gen_bool(0.5) {
            random_path(&mut rng, &verts, &edges)
        } else {
            None
        };
        match path {
            Some((walk, es)) => {
                let e = b.edge(&format!("f{}", edges.len()), walk[0], *walk.last().unwrap());
                edges.push((e, walk[0], *walk.last().unwrap()));
                let mut bd = es;
                bd.push(e);
                let t = b.polygon_from_edges(&format!("t{cells}"), &bd);
                cells += 1;
                undo.push(CollapseStep {
                    free_cell: e,
                    coface: t,
                });
            }
            None => {
                let at = *verts.choose(&mut rng).unwrap();
                let v = b.vertex(&format!("v{}", verts.len()));
                let e = b.edge(&format!("f{}", edges.len()), at, v);
                verts.push(v);
                edges.push((e, at, v));
                undo.push(CollapseStep {
                    free_cell: v,
                    coface: e,
                });
            }
        }
    }
    undo.reverse();
    (
        b.build().expect("expansions keep the complex regular"),
        undo,
    )
}

/// A simple edge path of length 1..=4 from a random vertex, as its vertex
/// walk and edge list.
fn random_path(
    rng: &mut ChaCha8Rng,
    verts: &[usize],
    edges: &[(usize, usize, usize)],
) -> Option<(Vec<usize>, Vec<usize>)> {
    let target = rng.gen_range(1..=4);
    let mut walk = vec![*verts.choose(rng).unwrap()];
    let mut used = Vec::new();
    while used.len() < target {
        let cur = *walk.last().unwrap();
        let next: Vec<&(usize, usize, usize)> = edges
            .iter()
            .filter(|(_, t, h)| {
                let other = if *t == cur {
                    *h
                } else if *h == cur {
                    *t
                } else {
                    return false;
                };
                !walk.contains(&other)
            })
            .collect();
        let Some(&&(e, t, h)) = next.choose(rng) else {
            break;
        };
        walk.push(if t == cur { h } else { t });
        used.push(e);
    }
    (!used.is_empty()).then_some((walk, used))
}
