//! Combinatorial recognition of ramified, pseudo and simple n-manifolds by
//! counting incidences of codimension-1 cells.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::UnionFind;
use crate::poset::FacePoset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationFlags {
    pub n: usize,
    /// Every cell is a face of an n-cell.
    pub top_cover: bool,
    /// Top cover, and every (n−1)-cell lies in at least two n-cells.
    pub ramified: bool,
    /// Top cover, and every (n−1)-cell lies in exactly two n-cells.
    pub pseudo: bool,
    /// Ramified and the n-cells form one chain component.
    pub simple: bool,
    /// (n−1)-cells lying in exactly one n-cell.
    pub free_faces: Vec<String>,
    /// Chain components of the n-cells, as label lists.
    pub combinatorial_components: Vec<Vec<String>>,
}

/// Classifies `x` against the claimed dimension `n`.
pub fn classify(x: &FacePoset, n: usize) -> Result<ClassificationFlags> {
    if let Some(d) = x.dimension() {
        if d > n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: d,
            });
        }
    }
    let tops = x.cells_of_dim(n);
    let mut covered = vec![false; x.len()];
    for c in x.closure(tops.iter().copied()) {
        covered[c] = true;
    }
    let top_cover = !x.is_empty() && covered.iter().all(|&b| b);

    let mut free_faces = Vec::new();
    let mut at_least_two = true;
    let mut exactly_two = true;
    if n > 0 {
        for f in x.cells_of_dim(n - 1) {
            let k = x.cofaces(f).len();
            if k == 1 {
                free_faces.push(String::from(x.label(f)));
            }
            at_least_two &= k >= 2;
            exactly_two &= k == 2;
        }
    }
    let ramified = top_cover && at_least_two;
    let pseudo = top_cover && exactly_two;

    // n-cells sharing an (n−1)-cell are adjacent
    let slot: alloc::collections::BTreeMap<usize, usize> =
        tops.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut uf = UnionFind::new(tops.len());
    if n > 0 {
        for f in x.cells_of_dim(n - 1) {
            let cof = x.cofaces(f);
            for w in cof.windows(2) {
                uf.union(slot[&w[0]], slot[&w[1]]);
            }
        }
    }
    let (labels, count) = uf.labels();
    let mut combinatorial_components = vec![Vec::new(); count];
    for (i, &c) in tops.iter().enumerate() {
        combinatorial_components[labels[i]].push(String::from(x.label(c)));
    }
    let simple = ramified && count == 1;
    Ok(ClassificationFlags {
        n,
        top_cover,
        ramified,
        pseudo,
        simple,
        free_faces,
        combinatorial_components,
    })
}
