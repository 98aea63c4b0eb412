//! Abstract simplicial complexes, cones, skeleta, barycentric subdivision and
//! the order-complex triangulation of regular CW complexes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poset::{CellRecord, FacePoset};

/// Simplices are sorted vertex-index lists; vertices are kept sorted by id so
/// index order is id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

/// A subdivision together with its carrier: each new simplex lies in the
/// closed cell `carrier[i]` of the old complex.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// For each new vertex, the old simplex (or cell) it is the barycenter of.
    pub barycenter_of: Vec<usize>,
    /// For each new simplex, the smallest old simplex (or cell) containing it.
    pub carrier: Vec<usize>,
}

impl SimplicialComplex {
    /// Closure of the given facets, vertices named by id.
    pub fn from_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self> {
        let mut names = BTreeSet::new();
        for f in facets {
            for v in f {
                names.insert(v.as_ref().to_string());
            }
        }
        let vertices: Vec<String> = names.into_iter().collect();
        let pos: BTreeMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut idx_facets = Vec::with_capacity(facets.len());
        for f in facets {
            idx_facets.push(f.iter().map(|v| pos[v.as_ref()]).collect::<Vec<_>>());
        }
        Self::from_index_facets(vertices, idx_facets)
    }

    /// Closure of index facets over the given vertex names (which need not be
    /// sorted; they are re-sorted here).
    pub fn from_index_facets(vertices: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|a, b| vertices[*a].cmp(&vertices[*b]));
        let mut rank = vec![0; vertices.len()];
        for (r, &o) in order.iter().enumerate() {
            rank[o] = r;
        }
        let sorted_names: Vec<String> = order.iter().map(|&o| vertices[o].clone()).collect();
        for w in sorted_names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateId(w[0].clone()));
            }
        }
        let mut all = BTreeSet::new();
        for f in facets {
            let mut s: Vec<usize> = f.iter().map(|&v| rank[v]).collect();
            s.sort_unstable();
            let len = s.len();
            s.dedup();
            if s.len() != len {
                return Err(Error::InvalidComplex(format!(
                    "simplex repeats a vertex: {:?}",
                    f
                )));
            }
            if s.is_empty() {
                continue;
            }
            if s.len() > 20 {
                return Err(Error::InvalidComplex("simplex dimension too large".into()));
            }
            for mask in 1u32..(1 << s.len()) {
                let sub: Vec<usize> = (0..s.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| s[i])
                    .collect();
                all.insert(sub);
            }
        }
        for v in 0..sorted_names.len() {
            all.insert(vec![v]);
        }
        let mut simplices: Vec<Vec<usize>> = all.into_iter().collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(SimplicialComplex {
            vertices: sorted_names,
            simplices,
            index,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Simplices ordered by dimension, then lexicographically.
    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(name))
            .ok()
    }

    pub fn simplex_label(&self, i: usize) -> String {
        let names: Vec<&str> = self.simplices[i]
            .iter()
            .map(|&v| self.vertices[v].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut covered = BTreeSet::new();
        for s in &self.simplices {
            if s.len() > 1 {
                for skip in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(skip);
                    covered.insert(f);
                }
            }
        }
        self.simplices
            .iter()
            .filter(|s| !covered.contains(*s))
            .cloned()
            .collect()
    }

    /// Facets as vertex-name lists.
    pub fn facet_names(&self) -> Vec<Vec<String>> {
        self.facets()
            .into_iter()
            .map(|f| f.iter().map(|&v| self.vertices[v].clone()).collect())
            .collect()
    }

    /// Faces in the standard alternating order: face `i` omits vertex `i`.
    pub fn signed_faces(&self, i: usize) -> Vec<(usize, i32)> {
        let s = &self.simplices[i];
        if s.len() < 2 {
            return Vec::new();
        }
        (0..s.len())
            .map(|skip| {
                let mut f = s.clone();
                f.remove(skip);
                (self.index[&f], if skip % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }

    /// Lowers to a face poset whose cell `i` is simplex `i`.
    pub fn to_face_poset(&self) -> FacePoset {
        let records = (0..self.len())
            .map(|i| CellRecord {
                label: self.simplex_label(i),
                dim: self.simplices[i].len() - 1,
                boundary: self.signed_faces(i),
            })
            .collect();
        FacePoset::from_cells(records).expect("simplicial complexes are regular")
    }

    /// The subcomplex of simplices of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> SimplicialComplex {
        let facets: Vec<Vec<usize>> = self
            .simplices
            .iter()
            .filter(|s| s.len() <= k + 1)
            .cloned()
            .collect();
        let used: BTreeSet<usize> = facets.iter().flatten().copied().collect();
        self.induced(&used, facets)
    }

    /// Subcomplex generated by the listed simplices (indices into `self`).
    pub fn subcomplex(&self, simplices: &[usize]) -> SimplicialComplex {
        let facets: Vec<Vec<usize>> = simplices
            .iter()
            .map(|&i| self.simplices[i].clone())
            .collect();
        let used: BTreeSet<usize> = facets.iter().flatten().copied().collect();
        self.induced(&used, facets)
    }

    fn induced(&self, used: &BTreeSet<usize>, facets: Vec<Vec<usize>>) -> SimplicialComplex {
        let remap: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let names = used.iter().map(|&v| self.vertices[v].clone()).collect();
        let facets = facets
            .into_iter()
            .map(|f| f.iter().map(|v| remap[v]).collect())
            .collect();
        SimplicialComplex::from_index_facets(names, facets).expect("subcomplex of a valid complex")
    }

    /// Cone with a new apex vertex.
    pub fn cone(&self, apex: &str) -> Result<SimplicialComplex> {
        if self.vertex_index(apex).is_some() {
            return Err(Error::DuplicateId(apex.to_string()));
        }
        let mut names = self.vertices.clone();
        names.push(apex.to_string());
        let a = names.len() - 1;
        let facets = self
            .facets()
            .into_iter()
            .map(|mut f| {
                f.push(a);
                f
            })
            .collect();
        SimplicialComplex::from_index_facets(names, facets)
    }

    /// Barycentric subdivision: vertices are the simplices of `self`,
    /// simplices are chains under inclusion.
    pub fn barycentric_subdivision(&self) -> Subdivision {
        let faces_of = |i: usize| -> Vec<usize> {
            let s = &self.simplices[i];
            let mut out = Vec::new();
            if s.len() > 1 {
                for mask in 1u32..((1u32 << s.len()) - 1) {
                    let sub: Vec<usize> = (0..s.len())
                        .filter(|b| mask & (1 << b) != 0)
                        .map(|b| s[b])
                        .collect();
                    out.push(self.index[&sub]);
                }
            }
            out
        };
        let names = (0..self.len()).map(|i| self.simplex_label(i)).collect();
        chains_subdivision(self.len(), names, faces_of)
    }

    /// Triangulation of a regular CW complex by the order complex of its face
    /// poset (a new vertex per cell, a simplex per chain of cells).
    pub fn order_complex(poset: &FacePoset) -> Subdivision {
        let names = poset.labels().to_vec();
        chains_subdivision(poset.len(), names, |c| {
            let mut cl = poset.closure([c]);
            cl.remove(&c);
            cl.into_iter().collect()
        })
    }
}

/// Builds the complex of chains `c_0 < … < c_r` where `<` is "proper face of",
/// given all proper faces of each element. Names must be unique.
fn chains_subdivision<F>(n: usize, names: Vec<String>, proper_faces: F) -> Subdivision
where
    F: Fn(usize) -> Vec<usize>,
{
    let faces: Vec<Vec<usize>> = (0..n).map(&proper_faces).collect();
    let mut by_size: Vec<usize> = (0..n).collect();
    by_size.sort_by_key(|&c| faces[c].len());
    // chains[c]: every chain whose top element is c, bottom-up
    let mut chains: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for &c in &by_size {
        let mut mine = vec![vec![c]];
        for &f in &faces[c] {
            for ch in &chains[f] {
                let mut x = ch.clone();
                x.push(c);
                mine.push(x);
            }
        }
        chains[c] = mine;
    }
    let element_by_name: BTreeMap<String, usize> = names
        .iter()
        .enumerate()
        .map(|(c, s)| (s.clone(), c))
        .collect();
    let facets: Vec<Vec<usize>> = chains.into_iter().flatten().collect();
    let complex = SimplicialComplex::from_index_facets(names, facets)
        .expect("chains of a poset form a simplicial complex");
    let barycenter_of: Vec<usize> = complex
        .vertices()
        .iter()
        .map(|v| element_by_name[v])
        .collect();
    let carrier = complex
        .simplices()
        .iter()
        .map(|s| {
            // the top of a chain has the most faces
            s.iter()
                .map(|&v| barycenter_of[v])
                .max_by_key(|&c| faces[c].len())
                .expect("nonempty simplex")
        })
        .collect();
    Subdivision {
        complex,
        barycenter_of,
        carrier,
    }
}
