//! Representation-neutral regular CW skeleton: cells, dimensions and signed
//! codimension-1 incidences.
//!
//! Edge boundaries are stored as `[(tail, -1), (head, +1)]`. Boundaries of
//! 2-cells are stored in cyclic walk order, each edge signed `+1` when the walk
//! traverses it from tail to head.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::UnionFind;

/// One cell as supplied to [`FacePoset::from_cells`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellRecord {
    pub label: String,
    pub dim: usize,
    pub boundary: Vec<(usize, i32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacePoset {
    labels: Vec<String>,
    dims: Vec<usize>,
    boundary: Vec<Vec<(usize, i32)>>,
    cofaces: Vec<Vec<usize>>,
    lookup: BTreeMap<String, usize>,
}

impl FacePoset {
    /// Validates the records and puts 2-cell boundaries in cyclic order.
    pub fn from_cells(records: Vec<CellRecord>) -> Result<Self> {
        let n = records.len();
        let mut labels = Vec::with_capacity(n);
        let mut dims = Vec::with_capacity(n);
        let mut boundary = Vec::with_capacity(n);
        let mut lookup = BTreeMap::new();
        for (i, r) in records.into_iter().enumerate() {
            if lookup.insert(r.label.clone(), i).is_some() {
                return Err(Error::DuplicateId(r.label));
            }
            labels.push(r.label);
            dims.push(r.dim);
            boundary.push(r.boundary);
        }
        let mut cofaces = vec![Vec::new(); n];
        for (c, faces) in boundary.iter().enumerate() {
            for &(f, _) in faces {
                if f >= n {
                    return Err(Error::InvalidComplex(format!(
                        "cell `{}` references missing face #{f}",
                        labels[c]
                    )));
                }
                cofaces[f].push(c);
            }
        }
        let mut poset = FacePoset {
            labels,
            dims,
            boundary,
            cofaces,
            lookup,
        };
        poset.validate_local()?;
        for c in 0..n {
            if poset.dims[c] == 2 {
                let ordered = poset.cyclic_boundary(c)?;
                poset.boundary[c] = ordered;
            }
        }
        poset.check_boundary_squared()?;
        Ok(poset)
    }

    fn validate_local(&self) -> Result<()> {
        for c in 0..self.len() {
            let d = self.dims[c];
            let faces = &self.boundary[c];
            let mut seen = BTreeSet::new();
            for &(f, s) in faces {
                if self.dims[f] + 1 != d {
                    return Err(self.invalid(c, "face of wrong dimension"));
                }
                if s == 0 {
                    return Err(self.invalid(c, "zero incidence"));
                }
                if !seen.insert(f) {
                    return Err(self.invalid(c, "repeated face"));
                }
            }
            match d {
                0 if !faces.is_empty() => return Err(self.invalid(c, "vertex with faces")),
                1 => {
                    let mut signs: Vec<i32> = faces.iter().map(|x| x.1).collect();
                    signs.sort();
                    if faces.len() != 2 || signs != [-1, 1] {
                        return Err(self.invalid(c, "edge needs two distinct endpoints"));
                    }
                }
                _ if d >= 2 && faces.len() < 2 => {
                    return Err(self.invalid(c, "cell boundary too small"));
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn invalid(&self, c: usize, why: &str) -> Error {
        Error::InvalidComplex(format!("cell `{}`: {why}", self.labels[c]))
    }

    /// Orders the edges of a 2-cell into a closed walk, checking that they
    /// form a single cycle traversed coherently with the stored signs.
    fn cyclic_boundary(&self, c: usize) -> Result<Vec<(usize, i32)>> {
        let faces = &self.boundary[c];
        let mut at_vertex: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, &(e, _)) in faces.iter().enumerate() {
            let (t, h) = self.edge_endpoints(e);
            at_vertex.entry(t).or_default().push(k);
            at_vertex.entry(h).or_default().push(k);
        }
        if at_vertex.values().any(|ks| ks.len() != 2) {
            return Err(self.invalid(c, "boundary is not a simple closed cycle"));
        }
        let mut order = Vec::with_capacity(faces.len());
        let mut used = vec![false; faces.len()];
        let mut k = 0;
        let (e0, s0) = faces[0];
        let (t0, h0) = self.edge_endpoints(e0);
        let start = if s0 > 0 { t0 } else { h0 };
        let mut cur = start;
        loop {
            let (e, s) = faces[k];
            let (t, h) = self.edge_endpoints(e);
            let (from, to) = if s > 0 { (t, h) } else { (h, t) };
            if from != cur {
                return Err(self.invalid(c, "boundary signs are not coherent"));
            }
            used[k] = true;
            order.push((e, s));
            cur = to;
            if cur == start {
                break;
            }
            k = match at_vertex[&cur].iter().find(|&&j| !used[j]) {
                Some(&j) => j,
                None => return Err(self.invalid(c, "boundary walk is stuck")),
            };
        }
        if order.len() != faces.len() {
            return Err(self.invalid(c, "boundary has more than one cycle"));
        }
        Ok(order)
    }

    fn check_boundary_squared(&self) -> Result<()> {
        for c in 0..self.len() {
            if self.dims[c] < 2 {
                continue;
            }
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(f, s) in &self.boundary[c] {
                for &(g, t) in &self.boundary[f] {
                    *acc.entry(g).or_insert(0) += (s * t) as i64;
                }
            }
            if acc.values().any(|v| *v != 0) {
                return Err(self.invalid(c, "boundary of boundary is nonzero"));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self, c: usize) -> usize {
        self.dims[c]
    }

    pub fn label(&self, c: usize) -> &str {
        &self.labels[c]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.lookup.get(label).copied()
    }

    pub fn boundary(&self, c: usize) -> &[(usize, i32)] {
        &self.boundary[c]
    }

    pub fn cofaces(&self, c: usize) -> &[usize] {
        &self.cofaces[c]
    }

    /// Largest cell dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.dims.iter().copied().max()
    }

    pub fn cells_of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.dims[c] == k).collect()
    }

    /// Number of cells in each dimension `0..=dimension`.
    pub fn counts(&self) -> Vec<usize> {
        let top = self.dimension().map_or(0, |d| d + 1);
        let mut out = vec![0; top];
        for &d in &self.dims {
            out[d] += 1;
        }
        out
    }

    pub fn euler(&self) -> i64 {
        self.dims
            .iter()
            .map(|&d| if d % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// `(tail, head)` of a 1-cell.
    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        let b = &self.boundary[e];
        if b[0].1 < 0 {
            (b[0].0, b[1].0)
        } else {
            (b[1].0, b[0].0)
        }
    }

    /// Vertices of a 2-cell in boundary walk order.
    pub fn boundary_walk(&self, c: usize) -> Vec<usize> {
        self.boundary[c]
            .iter()
            .map(|&(e, s)| {
                let (t, h) = self.edge_endpoints(e);
                if s > 0 {
                    t
                } else {
                    h
                }
            })
            .collect()
    }

    /// All faces of the given cells, including the cells themselves.
    pub fn closure<I: IntoIterator<Item = usize>>(&self, cells: I) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<usize> = cells.into_iter().collect();
        while let Some(c) = stack.pop() {
            if out.insert(c) {
                stack.extend(self.boundary[c].iter().map(|x| x.0));
            }
        }
        out
    }

    pub fn vertices_of(&self, c: usize) -> BTreeSet<usize> {
        self.closure([c])
            .into_iter()
            .filter(|&f| self.dims[f] == 0)
            .collect()
    }

    /// Connected components as a label per cell.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.len());
        for c in 0..self.len() {
            for &(f, _) in &self.boundary[c] {
                uf.union(c, f);
            }
        }
        uf.labels()
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.component_labels().1 == 1
    }

    /// Restriction to a face-closed subset, keeping labels. Returns the new
    /// complex and, for each new cell, its index in `self`.
    pub fn restrict(&self, keep: &[bool]) -> Result<(FacePoset, Vec<usize>)> {
        let mut new_index = vec![usize::MAX; self.len()];
        let mut old = Vec::new();
        for c in 0..self.len() {
            if keep[c] {
                new_index[c] = old.len();
                old.push(c);
            }
        }
        let mut records = Vec::with_capacity(old.len());
        for &c in &old {
            let mut b = Vec::with_capacity(self.boundary[c].len());
            for &(f, s) in &self.boundary[c] {
                if !keep[f] {
                    return Err(Error::InvalidComplex(format!(
                        "restriction is not face-closed at `{}`",
                        self.labels[c]
                    )));
                }
                b.push((new_index[f], s));
            }
            records.push(CellRecord {
                label: self.labels[c].clone(),
                dim: self.dims[c],
                boundary: b,
            });
        }
        Ok((FacePoset::from_cells(records)?, old))
    }

    /// Subcomplex generated by the given cells.
    pub fn subcomplex<I: IntoIterator<Item = usize>>(&self, cells: I) -> FacePoset {
        let cl = self.closure(cells);
        let mut keep = vec![false; self.len()];
        for c in cl {
            keep[c] = true;
        }
        self.restrict(&keep).expect("closures are face-closed").0
    }

    /// The same complex with cells reordered: new cell `i` is old `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> FacePoset {
        let mut inv = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let records = perm
            .iter()
            .map(|&p| CellRecord {
                label: self.labels[p].clone(),
                dim: self.dims[p],
                boundary: self.boundary[p].iter().map(|&(f, s)| (inv[f], s)).collect(),
            })
            .collect();
        FacePoset::from_cells(records).expect("permutation preserves validity")
    }

    /// Same cells with every label replaced.
    pub fn relabeled<F: FnMut(usize, &str) -> String>(&self, mut f: F) -> Result<FacePoset> {
        let records = (0..self.len())
            .map(|c| CellRecord {
                label: f(c, &self.labels[c]),
                dim: self.dims[c],
                boundary: self.boundary[c].clone(),
            })
            .collect();
        FacePoset::from_cells(records)
    }

    /// Cell records suitable for serialization.
    pub fn records(&self) -> Vec<CellRecord> {
        (0..self.len())
            .map(|c| CellRecord {
                label: self.labels[c].clone(),
                dim: self.dims[c],
                boundary: self.boundary[c].clone(),
            })
            .collect()
    }

    /// The graph formed by the 0- and 1-cells.
    pub fn one_skeleton(&self) -> crate::graph::Graph {
        let mut g = crate::graph::Graph::empty("skeleton");
        let mut map = BTreeMap::new();
        for v in self.cells_of_dim(0) {
            map.insert(v, g.add_vertex(&self.labels[v]).expect("labels unique"));
        }
        for e in self.cells_of_dim(1) {
            let (t, h) = self.edge_endpoints(e);
            g.add_edge(&self.labels[e], map[&t], map[&h])
                .expect("edges are regular");
        }
        g
    }
}

/// Incremental construction of a [`FacePoset`].
#[derive(Debug, Default, Clone)]
pub struct PosetBuilder {
    records: Vec<CellRecord>,
    edges_by_pair: BTreeMap<(usize, usize), Vec<usize>>,
}

impl PosetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn vertex(&mut self, label: &str) -> usize {
        self.push(label, 0, Vec::new())
    }

    pub fn edge(&mut self, label: &str, tail: usize, head: usize) -> usize {
        let id = self.push(label, 1, vec![(tail, -1), (head, 1)]);
        self.edges_by_pair
            .entry((tail.min(head), tail.max(head)))
            .or_default()
            .push(id);
        id
    }

    pub fn cell(&mut self, label: &str, dim: usize, boundary: Vec<(usize, i32)>) -> usize {
        self.push(label, dim, boundary)
    }

    /// Edge between two vertices, created with label `a-b` if absent. Fails
    /// to be unique only when parallel edges were added explicitly.
    pub fn edge_between(&mut self, a: usize, b: usize) -> usize {
        if let Some(es) = self.edges_by_pair.get(&(a.min(b), a.max(b))) {
            return es[0];
        }
        let label = format!("{}-{}", self.records[a].label, self.records[b].label);
        self.edge(&label, a, b)
    }

    /// 2-cell bounded by the closed vertex walk `cycle`.
    pub fn polygon(&mut self, label: &str, cycle: &[usize]) -> usize {
        let k = cycle.len();
        let mut faces = Vec::with_capacity(k);
        for i in 0..k {
            let (a, b) = (cycle[i], cycle[(i + 1) % k]);
            let e = self.edge_between(a, b);
            let tail = self.records[e].boundary.iter().find(|x| x.1 < 0).unwrap().0;
            faces.push((e, if tail == a { 1 } else { -1 }));
        }
        self.push(label, 2, faces)
    }

    /// 2-cell bounded by the given edges, signs chosen so the boundary is a
    /// coherent walk starting along the first edge.
    pub fn polygon_from_edges(&mut self, label: &str, edges: &[usize]) -> usize {
        let ends = |r: &CellRecord| {
            let t = r.boundary.iter().find(|x| x.1 < 0).unwrap().0;
            let h = r.boundary.iter().find(|x| x.1 > 0).unwrap().0;
            (t, h)
        };
        let mut faces = Vec::with_capacity(edges.len());
        let (t0, h0) = ends(&self.records[edges[0]]);
        // walk forward from the shared vertex of the first two edges
        let mut cur = if edges.len() > 1 {
            let (t1, h1) = ends(&self.records[edges[1]]);
            if h0 == t1 || h0 == h1 {
                faces.push((edges[0], 1));
                h0
            } else {
                faces.push((edges[0], -1));
                t0
            }
        } else {
            faces.push((edges[0], 1));
            h0
        };
        for &e in &edges[1..] {
            let (t, h) = ends(&self.records[e]);
            if t == cur {
                faces.push((e, 1));
                cur = h;
            } else {
                faces.push((e, -1));
                cur = t;
            }
        }
        self.push(label, 2, faces)
    }

    pub fn label(&self, c: usize) -> &str {
        &self.records[c].label
    }

    fn push(&mut self, label: &str, dim: usize, boundary: Vec<(usize, i32)>) -> usize {
        self.records.push(CellRecord {
            label: label.to_string(),
            dim,
            boundary,
        });
        self.records.len() - 1
    }

    pub fn build(self) -> Result<FacePoset> {
        FacePoset::from_cells(self.records)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> FacePoset {
        let mut b = PosetBuilder::new();
        let v: Vec<usize> = ["a", "b", "c"].iter().map(|l| b.vertex(l)).collect();
        b.polygon("t", &v);
        b.build().unwrap()
    }

    #[test]
    fn polygon_builder_orders_boundary() {
        let p = triangle();
        assert_eq!(p.counts(), vec![3, 3, 1]);
        let t = p.find("t").unwrap();
        assert_eq!(p.boundary_walk(t).len(), 3);
        assert_eq!(p.euler(), 1);
        assert!(p.is_connected());
    }

    #[test]
    fn bigon_is_regular() {
        let mut b = PosetBuilder::new();
        let x = b.vertex("x");
        let y = b.vertex("y");
        let e = b.edge("e", x, y);
        let f = b.edge("f", x, y);
        b.polygon_from_edges("d", &[e, f]);
        let p = b.build().unwrap();
        assert_eq!(p.euler(), 1);
    }

    #[test]
    fn rejects_bad_cells() {
        let mut b = PosetBuilder::new();
        let x = b.vertex("x");
        b.cell("e", 1, vec![(x, -1), (x, 1)]);
        assert!(b.build().is_err());

        let mut b = PosetBuilder::new();
        let x = b.vertex("x");
        let y = b.vertex("y");
        let z = b.vertex("z");
        let e1 = b.edge("e1", x, y);
        let e2 = b.edge("e2", y, z);
        // open path is not a cycle
        b.cell("t", 2, vec![(e1, 1), (e2, 1)]);
        assert!(b.build().is_err());

        let mut b = PosetBuilder::new();
        let x = b.vertex("x");
        let y = b.vertex("y");
        let e = b.edge("e", x, y);
        let f = b.edge("f", x, y);
        // incoherent signs: both traversed x -> y
        b.cell("d", 2, vec![(e, 1), (f, 1)]);
        assert!(b.build().is_err());
    }

    #[test]
    fn restriction_must_be_face_closed() {
        let p = triangle();
        let mut keep = vec![true; p.len()];
        keep[p.find("a").unwrap()] = false;
        assert!(p.restrict(&keep).is_err());
        let t = p.find("t").unwrap();
        keep = vec![true; p.len()];
        keep[t] = false;
        let (q, old) = p.restrict(&keep).unwrap();
        assert_eq!(q.counts(), vec![3, 3]);
        assert_eq!(old.len(), 6);
    }

    #[test]
    fn permutation_keeps_structure() {
        let p = triangle();
        let perm: Vec<usize> = (0..p.len()).rev().collect();
        let q = p.permuted(&perm);
        assert_eq!(q.counts(), p.counts());
        assert_eq!(q.label(0), p.label(p.len() - 1));
    }
}
