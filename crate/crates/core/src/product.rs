//! Product cell structures `K_1 ⊠ … ⊠ K_n` on products of graphs and their
//! face-closed subcomplexes.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poset::{CellRecord, FacePoset};

/// One factor of a product cell: a vertex or an edge of that factor graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    V(usize),
    E(usize),
}

impl Coord {
    pub fn is_edge(self) -> bool {
        matches!(self, Coord::E(_))
    }
}

/// A product cell `σ_1 × … × σ_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductCell(pub Vec<Coord>);

impl ProductCell {
    pub fn new(coords: Vec<Coord>) -> Self {
        ProductCell(coords)
    }

    pub fn coords(&self) -> &[Coord] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.iter().filter(|c| c.is_edge()).count()
    }

    /// Signed codimension-1 faces following
    /// `∂(σ_1×…×σ_n) = Σ_i (−1)^{dim σ_1+…+dim σ_{i−1}} σ_1×…×∂σ_i×…×σ_n`.
    pub fn signed_faces(&self, factors: &[Graph]) -> Vec<(ProductCell, i32)> {
        let mut out = Vec::new();
        let mut prefix = 0;
        for (i, c) in self.0.iter().enumerate() {
            if let Coord::E(e) = *c {
                let sign = if prefix % 2 == 0 { 1 } else { -1 };
                let edge = factors[i].edge(e);
                let mut tail = self.0.clone();
                tail[i] = Coord::V(edge.tail);
                let mut head = self.0.clone();
                head[i] = Coord::V(edge.head);
                out.push((ProductCell(tail), -sign));
                out.push((ProductCell(head), sign));
                prefix += 1;
            }
        }
        out
    }

    /// Coordinates restricted to the (sorted) index list `idx`.
    pub fn restrict(&self, idx: &[usize]) -> ProductCell {
        ProductCell(idx.iter().map(|&i| self.0[i]).collect())
    }

    /// Product of two cells over concatenated factor lists.
    pub fn concat(&self, other: &ProductCell) -> ProductCell {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ProductCell(v)
    }

    /// Merges a cell over index set `j` with a cell over its complement.
    pub fn merge(j: &[usize], a: &ProductCell, jc: &[usize], b: &ProductCell) -> ProductCell {
        let n = j.len() + jc.len();
        let mut v = vec![Coord::V(0); n];
        for (k, &i) in j.iter().enumerate() {
            v[i] = a.0[k];
        }
        for (k, &i) in jc.iter().enumerate() {
            v[i] = b.0[k];
        }
        ProductCell(v)
    }
}

/// A face-closed set of product cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSubcomplex {
    factors: Vec<Graph>,
    cells: BTreeSet<ProductCell>,
}

struct Label<'a>(&'a [Graph], &'a ProductCell);

impl fmt::Display for Label<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.1 .0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match *c {
                Coord::V(v) => f.write_str(self.0[i].vertex_id(v))?,
                Coord::E(e) => f.write_str(&self.0[i].edge(e).id)?,
            }
        }
        f.write_str(")")
    }
}

impl ProductSubcomplex {
    /// Face closure of the given top cells.
    pub fn build(factors: Vec<Graph>, top_cells: Vec<ProductCell>) -> Result<Self> {
        let mut m = ProductSubcomplex {
            factors,
            cells: BTreeSet::new(),
        };
        for c in &top_cells {
            m.check_cell(c)?;
        }
        m.cells = m.close(top_cells);
        Ok(m)
    }

    /// The whole product `K_1 ⊠ … ⊠ K_n`.
    pub fn full(factors: Vec<Graph>) -> Self {
        let mut cells: Vec<Vec<Coord>> = vec![Vec::new()];
        for g in &factors {
            let mut next = Vec::new();
            for prefix in &cells {
                for v in 0..g.vertex_count() {
                    let mut p = prefix.clone();
                    p.push(Coord::V(v));
                    next.push(p);
                }
                for e in 0..g.edge_count() {
                    let mut p = prefix.clone();
                    p.push(Coord::E(e));
                    next.push(p);
                }
            }
            cells = next;
        }
        ProductSubcomplex {
            factors,
            cells: cells.into_iter().map(ProductCell).collect(),
        }
    }

    /// Empty subcomplex over the given factors.
    pub fn empty(factors: Vec<Graph>) -> Self {
        ProductSubcomplex {
            factors,
            cells: BTreeSet::new(),
        }
    }

    pub fn check_cell(&self, c: &ProductCell) -> Result<()> {
        if c.0.len() != self.factors.len() {
            return Err(Error::BadCoordinate(format!(
                "cell has {} coordinates for {} factors",
                c.0.len(),
                self.factors.len()
            )));
        }
        for (i, x) in c.0.iter().enumerate() {
            let ok = match *x {
                Coord::V(v) => v < self.factors[i].vertex_count(),
                Coord::E(e) => e < self.factors[i].edge_count(),
            };
            if !ok {
                return Err(Error::BadCoordinate(format!("coordinate {i} out of range")));
            }
        }
        Ok(())
    }

    /// Parses a cell from per-factor vertex or edge ids.
    pub fn parse_cell<S: AsRef<str>>(&self, ids: &[S]) -> Result<ProductCell> {
        if ids.len() != self.factors.len() {
            return Err(Error::BadCoordinate(format!(
                "expected {} coordinates, got {}",
                self.factors.len(),
                ids.len()
            )));
        }
        let mut v = Vec::with_capacity(ids.len());
        for (g, id) in self.factors.iter().zip(ids) {
            let id = id.as_ref();
            if let Some(x) = g.vertex_index(id) {
                v.push(Coord::V(x));
            } else if let Some(e) = g.edge_index(id) {
                v.push(Coord::E(e));
            } else {
                return Err(Error::BadCoordinate(format!(
                    "`{id}` is not a cell of factor `{}`",
                    g.name()
                )));
            }
        }
        Ok(ProductCell(v))
    }

    fn close<I: IntoIterator<Item = ProductCell>>(&self, cells: I) -> BTreeSet<ProductCell> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<ProductCell> = cells.into_iter().collect();
        while let Some(c) = stack.pop() {
            if out.contains(&c) {
                continue;
            }
            for (f, _) in c.signed_faces(&self.factors) {
                stack.push(f);
            }
            out.insert(c);
        }
        out
    }

    /// Face closure of arbitrary cells over the same factors.
    pub fn closure_of<I: IntoIterator<Item = ProductCell>>(
        &self,
        cells: I,
    ) -> BTreeSet<ProductCell> {
        self.close(cells)
    }

    /// Subcomplex over the same factors generated by `cells`.
    pub fn with_cells<I: IntoIterator<Item = ProductCell>>(&self, cells: I) -> ProductSubcomplex {
        ProductSubcomplex {
            factors: self.factors.clone(),
            cells: self.close(cells),
        }
    }

    pub fn from_closed(factors: Vec<Graph>, cells: BTreeSet<ProductCell>) -> Result<Self> {
        let m = ProductSubcomplex { factors, cells };
        for c in &m.cells {
            m.check_cell(c)?;
        }
        if !m.is_face_closed() {
            return Err(Error::InvalidComplex("cell set is not face-closed".into()));
        }
        Ok(m)
    }

    pub fn factors(&self) -> &[Graph] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn cells(&self) -> &BTreeSet<ProductCell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &ProductCell) -> bool {
        self.cells.contains(c)
    }

    pub fn dimension(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim()).max()
    }

    pub fn cells_of_dim(&self, k: usize) -> impl Iterator<Item = &ProductCell> {
        self.cells.iter().filter(move |c| c.dim() == k)
    }

    /// Cells that are not proper faces of other cells.
    pub fn top_cells(&self) -> Vec<ProductCell> {
        let mut covered = BTreeSet::new();
        for c in &self.cells {
            for (f, _) in c.signed_faces(&self.factors) {
                covered.insert(f);
            }
        }
        self.cells
            .iter()
            .filter(|c| !covered.contains(*c))
            .cloned()
            .collect()
    }

    pub fn is_face_closed(&self) -> bool {
        self.cells.iter().all(|c| {
            c.signed_faces(&self.factors)
                .iter()
                .all(|(f, _)| self.cells.contains(f))
        })
    }

    pub fn label(&self, c: &ProductCell) -> String {
        format!("{}", Label(&self.factors, c))
    }

    /// Per-factor ids of a cell.
    pub fn coordinate_ids(&self, c: &ProductCell) -> Vec<String> {
        c.0.iter()
            .enumerate()
            .map(|(i, x)| match *x {
                Coord::V(v) => String::from(self.factors[i].vertex_id(v)),
                Coord::E(e) => self.factors[i].edge(e).id.clone(),
            })
            .collect()
    }

    /// Lowers to a face poset; cells are ordered by dimension, then by cell
    /// order. The returned vector maps poset index to product cell.
    pub fn to_face_poset_indexed(&self) -> (FacePoset, Vec<ProductCell>) {
        let mut order: Vec<ProductCell> = self.cells.iter().cloned().collect();
        order.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        let index: alloc::collections::BTreeMap<&ProductCell, usize> =
            order.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let records = order
            .iter()
            .map(|c| CellRecord {
                label: self.label(c),
                dim: c.dim(),
                boundary: c
                    .signed_faces(&self.factors)
                    .into_iter()
                    .map(|(f, s)| (index[&f], s))
                    .collect(),
            })
            .collect();
        let poset = FacePoset::from_cells(records).expect("product cells are regular");
        (poset, order)
    }

    pub fn to_face_poset(&self) -> FacePoset {
        self.to_face_poset_indexed().0
    }

    /// Product complex over the concatenated factor list.
    pub fn product(&self, other: &ProductSubcomplex) -> ProductSubcomplex {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        let mut cells = BTreeSet::new();
        for a in &self.cells {
            for b in &other.cells {
                cells.insert(a.concat(b));
            }
        }
        ProductSubcomplex { factors, cells }
    }

    /// Reorders factors: new factor `i` is old factor `perm[i]`.
    pub fn permute_factors(&self, perm: &[usize]) -> ProductSubcomplex {
        let factors = perm.iter().map(|&p| self.factors[p].clone()).collect();
        let cells = self
            .cells
            .iter()
            .map(|c| ProductCell(perm.iter().map(|&p| c.0[p]).collect()))
            .collect();
        ProductSubcomplex { factors, cells }
    }

    /// Checks the proper-cell property by enumeration: whenever the open
    /// cell of `σ` meets the closed cell `τ`, `σ` must be a face of `τ`.
    pub fn has_proper_cells(&self) -> bool {
        let cells: Vec<&ProductCell> = self.cells.iter().collect();
        for tau in &cells {
            let face_set = self.close([(*tau).clone()]);
            for sigma in &cells {
                if self.open_meets_closed(sigma, tau) && !face_set.contains(*sigma) {
                    return false;
                }
            }
        }
        true
    }

    /// Factorwise point-set test: open `σ_i` meets closed `τ_i` in graph `i`.
    fn open_meets_closed(&self, sigma: &ProductCell, tau: &ProductCell) -> bool {
        sigma
            .0
            .iter()
            .zip(&tau.0)
            .enumerate()
            .all(|(i, (s, t))| match (*s, *t) {
                (Coord::V(a), Coord::V(b)) => a == b,
                (Coord::V(a), Coord::E(e)) => {
                    let edge = self.factors[i].edge(e);
                    edge.tail == a || edge.head == a
                }
                (Coord::E(_), Coord::V(_)) => false,
                (Coord::E(a), Coord::E(b)) => a == b,
            })
    }
}

/// Free function form of [`ProductSubcomplex::build`].
pub fn build_product(
    factors: Vec<Graph>,
    top_cells: Vec<ProductCell>,
) -> Result<ProductSubcomplex> {
    ProductSubcomplex::build(factors, top_cells)
}
