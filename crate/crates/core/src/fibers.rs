//! Projections `p_J`, fibers `P_J(τ)`, circle directions `J_M` and the
//! torus factorization of ramified manifolds in products of graphs.
//!
//! Index sets are 0-based internally and displayed 1-based.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::homology_summary;
use crate::classify::classify;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::product::{Coord, ProductCell, ProductSubcomplex};

/// A subset `J` of the factor indices `{0, …, n−1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet {
    n: usize,
    members: Vec<usize>,
}

impl IndexSet {
    /// Members are 0-based; duplicates are merged.
    pub fn new(n: usize, members: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&j| j >= n) {
            return Err(Error::IndexOutOfRange(bad));
        }
        Ok(IndexSet {
            n,
            members: set.into_iter().collect(),
        })
    }

    /// Parses 1-based indices as written by users.
    pub fn from_one_based(n: usize, members: &[usize]) -> Result<Self> {
        let mut zero = Vec::with_capacity(members.len());
        for &j in members {
            if j == 0 || j > n {
                return Err(Error::IndexOutOfRange(j));
            }
            zero.push(j - 1);
        }
        Self::new(n, &zero)
    }

    pub fn full(n: usize) -> Self {
        IndexSet {
            n,
            members: (0..n).collect(),
        }
    }

    pub fn single(n: usize, j: usize) -> Result<Self> {
        Self::new(n, &[j])
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.members.binary_search(&j).is_ok()
    }

    pub fn complement(&self) -> IndexSet {
        IndexSet {
            n: self.n,
            members: (0..self.n).filter(|&j| !self.contains(j)).collect(),
        }
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.members.iter().map(|j| j + 1).collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, j) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", j + 1)?;
        }
        f.write_str("}")
    }
}

/// Shape data of one connected component of a fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentProfile {
    pub top_cells: usize,
    pub ramified: bool,
    pub pseudo: bool,
    pub b1: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub base_cell: ProductCell,
    pub fiber: ProductSubcomplex,
    pub component_profiles: Vec<ComponentProfile>,
}

/// Rank data: `b_1(M)` against the fiber bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankData {
    pub b1: usize,
    /// For each direction `j`: the chosen vertex of `K'_{{j}^c}` (by label)
    /// and `b_1(P_j(v_j))`, maximal over vertices, smallest label on ties.
    pub vertex_fibers: Vec<(usize, String, usize)>,
    pub fiber_sum: usize,
    pub at_least_n: bool,
    pub at_least_fiber_sum: bool,
    /// `|J_M| ≥ n − k` when `b_1 = n + k` with `k < n`; `None` otherwise.
    pub circle_bound: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationReport {
    pub j_m: IndexSet,
    /// `p_j(M)` for each `j ∈ J_M`, as one-factor complexes.
    pub torus_factors: Vec<ProductSubcomplex>,
    /// `p_{J_M^c}(M)`; `None` when `J_M` is everything.
    pub residual: Option<ProductSubcomplex>,
    pub is_full_torus: bool,
    pub rank_data: RankData,
}

/// `p_J(M)`: coordinate restriction of every cell.
pub fn project(m: &ProductSubcomplex, j: &IndexSet) -> Result<ProductSubcomplex> {
    if j.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    check_ambient(m, j)?;
    let factors: Vec<Graph> = j
        .members()
        .iter()
        .map(|&i| m.factors()[i].clone())
        .collect();
    let cells = m.cells().iter().map(|c| c.restrict(j.members())).collect();
    Ok(ProductSubcomplex::from_closed(factors, cells).expect("projections are face-closed"))
}

fn check_ambient(m: &ProductSubcomplex, j: &IndexSet) -> Result<()> {
    if j.ambient() != m.factor_count() {
        return Err(Error::IndexOutOfRange(j.ambient()));
    }
    Ok(())
}

/// `P_J(τ)`: closure of the `n_J`-cells `σ` with `σ × τ ∈ M`.
pub fn fiber(m: &ProductSubcomplex, tau: &ProductCell, j: &IndexSet) -> Result<FiberReport> {
    if j.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    check_ambient(m, j)?;
    let jc = j.complement();
    let in_projection = if jc.is_empty() {
        tau.coords().is_empty()
    } else {
        tau.coords().len() == jc.len() && m.cells().iter().any(|c| c.restrict(jc.members()) == *tau)
    };
    if !in_projection {
        return Err(Error::CellNotInProjection(format!("{:?}", tau.coords())));
    }
    let nj = j.len();
    let tops = m
        .cells()
        .iter()
        .filter(|c| c.restrict(jc.members()) == *tau)
        .map(|c| c.restrict(j.members()))
        .filter(|s| s.dim() == nj);
    let factors: Vec<Graph> = j
        .members()
        .iter()
        .map(|&i| m.factors()[i].clone())
        .collect();
    let fib = ProductSubcomplex::build(factors, tops.collect()).expect("coordinates are valid");
    let component_profiles = component_profiles(&fib, nj);
    Ok(FiberReport {
        base_cell: tau.clone(),
        fiber: fib,
        component_profiles,
    })
}

fn component_profiles(x: &ProductSubcomplex, n: usize) -> Vec<ComponentProfile> {
    let p = x.to_face_poset();
    let (labels, count) = p.component_labels();
    (0..count)
        .map(|k| {
            let keep: Vec<bool> = labels.iter().map(|&l| l == k).collect();
            let (part, _) = p.restrict(&keep).expect("components are face-closed");
            let flags = classify(&part, n).expect("fiber has dimension n_J");
            ComponentProfile {
                top_cells: part.cells_of_dim(n).len(),
                ramified: flags.ramified,
                pseudo: flags.pseudo,
                b1: homology_summary(&part).b(1),
            }
        })
        .collect()
}

/// The graph carried by a one-factor complex.
pub fn as_graph(x: &ProductSubcomplex) -> Graph {
    assert_eq!(x.factor_count(), 1, "one factor expected");
    let mut vs = BTreeSet::new();
    let mut es = BTreeSet::new();
    for c in x.cells() {
        match c.coords()[0] {
            Coord::V(v) => {
                vs.insert(v);
            }
            Coord::E(e) => {
                es.insert(e);
            }
        }
    }
    x.factors()[0].subgraph(&vs, &es)
}

fn require_ramified(m: &ProductSubcomplex) -> Result<()> {
    let n = m.factor_count();
    let flags = classify(&m.to_face_poset(), n).map_err(|_| Error::NotRamified)?;
    if flags.ramified {
        Ok(())
    } else {
        Err(Error::NotRamified)
    }
}

/// `J_M = { j : p_j(M) is a circle }`. When `M` is connected the vertex
/// fiber characterization of circle directions is checked as well.
pub fn circle_directions(m: &ProductSubcomplex) -> Result<IndexSet> {
    require_ramified(m)?;
    let n = m.factor_count();
    let connected = m.to_face_poset().is_connected();
    let mut members = Vec::new();
    for j in 0..n {
        let js = IndexSet::single(n, j)?;
        let is_circle = as_graph(&project(m, &js)?).profile().is_circle;
        if is_circle {
            members.push(j);
        }
        if connected && n > 1 {
            let base = project(m, &js.complement())?;
            for v in base.cells_of_dim(0) {
                let f = fiber(m, v, &js)?;
                if as_graph(&f.fiber).profile().is_circle != is_circle {
                    return Err(Error::FactorizationMismatch(format!(
                        "direction {} disagrees with the fiber over {}",
                        j + 1,
                        base.label(v)
                    )));
                }
            }
        }
    }
    IndexSet::new(n, &members)
}

/// Splits off the circle directions and verifies the product structure cell
/// for cell.
pub fn factorize(m: &ProductSubcomplex) -> Result<FactorizationReport> {
    let j_m = circle_directions(m)?;
    let n = m.factor_count();
    let mut torus_factors = Vec::new();
    for &j in j_m.members() {
        torus_factors.push(project(m, &IndexSet::single(n, j)?)?);
    }
    let mut residual = None;
    let mut is_full_torus = false;
    if j_m.len() == n {
        is_full_torus = true;
        let prod = product_of(&torus_factors);
        if prod.cells() != m.cells() {
            return Err(Error::FactorizationMismatch(
                "complex differs from the product of its circle projections".into(),
            ));
        }
    } else if j_m.is_empty() {
        residual = Some(m.clone());
    } else {
        let torus = project(m, &j_m)?;
        if product_of(&torus_factors).cells() != torus.cells() {
            return Err(Error::FactorizationMismatch(
                "circle projections do not span a torus".into(),
            ));
        }
        let rest = project(m, &j_m.complement())?;
        let jc = j_m.complement();
        let mut merged = BTreeSet::new();
        for a in torus.cells() {
            for b in rest.cells() {
                merged.insert(ProductCell::merge(j_m.members(), a, jc.members(), b));
            }
        }
        if &merged != m.cells() {
            return Err(Error::FactorizationMismatch(
                "complex is not the product of torus and residual".into(),
            ));
        }
        if !circle_directions(&rest)?.is_empty() {
            return Err(Error::FactorizationMismatch(
                "residual still projects onto a circle".into(),
            ));
        }
        residual = Some(rest);
    }
    let rank_data = rank_data(m, &j_m)?;
    Ok(FactorizationReport {
        j_m,
        torus_factors,
        residual,
        is_full_torus,
        rank_data,
    })
}

fn product_of(parts: &[ProductSubcomplex]) -> ProductSubcomplex {
    let mut it = parts.iter();
    let first = it.next().expect("at least one factor").clone();
    it.fold(first, |acc, p| acc.product(p))
}

fn rank_data(m: &ProductSubcomplex, j_m: &IndexSet) -> Result<RankData> {
    let n = m.factor_count();
    let b1 = homology_summary(&m.to_face_poset()).b(1);
    let mut vertex_fibers = Vec::new();
    if n > 1 {
        for j in 0..n {
            let js = IndexSet::single(n, j)?;
            let base = project(m, &js.complement())?;
            let mut best: Option<(String, usize)> = None;
            let mut by_label: BTreeMap<String, &ProductCell> = BTreeMap::new();
            for v in base.cells_of_dim(0) {
                by_label.insert(base.label(v), v);
            }
            for (label, v) in by_label {
                let b = as_graph(&fiber(m, v, &js)?.fiber).profile().b1;
                if best.as_ref().is_none_or(|(_, bb)| b > *bb) {
                    best = Some((label, b));
                }
            }
            if let Some((label, b)) = best {
                vertex_fibers.push((j, label, b));
            }
        }
    }
    let fiber_sum = vertex_fibers.iter().map(|x| x.2).sum();
    let circle_bound = if b1 >= n && b1 - n < n {
        Some(j_m.len() >= n - (b1 - n))
    } else {
        None
    };
    Ok(RankData {
        b1,
        vertex_fibers,
        fiber_sum,
        at_least_n: b1 >= n,
        at_least_fiber_sum: b1 >= fiber_sum,
        circle_bound,
    })
}
