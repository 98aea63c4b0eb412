use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::poset::FacePoset;

/// Betti numbers, torsion coefficients and Euler characteristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologySummary {
    /// `b_0 … b_d` for a complex of dimension `d`.
    pub betti: Vec<usize>,
    /// Torsion invariant factors of `H_k`, per degree.
    pub torsion: Vec<Vec<BigUint>>,
    pub euler: i64,
}

impl HomologySummary {
    pub fn b(&self, k: usize) -> usize {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|t| !t.is_empty())
    }

    /// `Σ (−1)^k b_k`.
    pub fn euler_from_betti(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// `∂_1, ∂_2, …, ∂_d`. Matrix `k−1` in the result is `∂_k`, with a row per
/// `(k−1)`-cell and a column per `k`-cell, both in cell-index order.
pub fn boundary_matrices(x: &FacePoset) -> Vec<IntMatrix> {
    let top = match x.dimension() {
        Some(d) => d,
        None => return Vec::new(),
    };
    let by_dim: Vec<Vec<usize>> = (0..=top).map(|k| x.cells_of_dim(k)).collect();
    let mut pos = vec![0; x.len()];
    for cells in &by_dim {
        for (i, &c) in cells.iter().enumerate() {
            pos[c] = i;
        }
    }
    (1..=top)
        .map(|k| {
            let mut m = IntMatrix::zeros(by_dim[k - 1].len(), by_dim[k].len());
            for (j, &c) in by_dim[k].iter().enumerate() {
                for &(f, s) in x.boundary(c) {
                    let i = pos[f];
                    m.set(i, j, m.get(i, j) + s as i64);
                }
            }
            m
        })
        .collect()
}

/// Integral homology via Smith normal forms of the boundary matrices.
pub fn homology_summary(x: &FacePoset) -> HomologySummary {
    let counts = x.counts();
    let d = counts.len();
    let snfs: Vec<_> = boundary_matrices(x).iter().map(smith_normal_form).collect();
    let rank = |k: usize| -> usize {
        if k == 0 || k >= d {
            0
        } else {
            snfs[k - 1].rank
        }
    };
    let betti = (0..d).map(|k| counts[k] - rank(k) - rank(k + 1)).collect();
    let torsion = (0..d)
        .map(|k| {
            if k + 1 < d {
                snfs[k].torsion()
            } else {
                Vec::new()
            }
        })
        .collect();
    HomologySummary {
        betti,
        torsion,
        euler: x.euler(),
    }
}
