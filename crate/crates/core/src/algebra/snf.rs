//! Smith normal form over the integers.
//!
//! Elimination first runs in `i64` with checked arithmetic; if any step would
//! overflow it restarts in arbitrary precision, so results never wrap.

#![allow(clippy::needless_range_loop)]

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Rank and invariant factors `d_1 | d_2 | … | d_r`, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub rank: usize,
    pub invariant_factors: Vec<BigUint>,
}

impl SnfResult {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.invariant_factors
            .iter()
            .filter(|d| **d > BigUint::from(1u32))
            .cloned()
            .collect()
    }

    pub fn divisibility_chain_holds(&self) -> bool {
        self.invariant_factors
            .windows(2)
            .all(|w| !w[0].is_zero() && (&w[1] % &w[0]).is_zero())
    }
}

trait Entry: Clone + Sized {
    fn is_zero(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> Ordering;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Self;
    fn is_multiple_of(&self, d: &Self) -> bool;
    /// `self − q·b`, `None` on overflow.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn add(&self, b: &Self) -> Option<Self>;
    fn to_biguint_abs(&self) -> BigUint;
}

impl Entry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn is_multiple_of(&self, d: &Self) -> bool {
        self % d == 0
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|p| self.checked_sub(p))
    }
    fn add(&self, b: &Self) -> Option<Self> {
        self.checked_add(*b)
    }
    fn to_biguint_abs(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn is_multiple_of(&self, d: &Self) -> bool {
        Integer::is_multiple_of(self, d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn to_biguint_abs(&self) -> BigUint {
        self.abs()
            .to_biguint()
            .expect("absolute value is nonnegative")
    }
}

struct Overflow;

/// Smith normal form of `m`, choosing minimal-magnitude pivots.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let small: Vec<Vec<i64>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    match reduce(small, m.rows(), m.cols()) {
        Ok(r) => r,
        Err(Overflow) => {
            let big: Vec<Vec<BigInt>> = (0..m.rows())
                .map(|i| m.row(i).iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            match reduce(big, m.rows(), m.cols()) {
                Ok(r) => r,
                Err(Overflow) => unreachable!("arbitrary precision cannot overflow"),
            }
        }
    }
}

fn reduce<T: Entry>(mut a: Vec<Vec<T>>, rows: usize, cols: usize) -> Result<SnfResult, Overflow> {
    let mut diag: Vec<T> = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        let Some((pi, pj)) = min_entry(&a, t, rows, cols) else {
            break;
        };
        swap_to(&mut a, t, pi, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].quot(&a[t][t]);
                    row_sub(&mut a, i, t, &q, cols)?;
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].quot(&a[t][t]);
                    col_sub(&mut a, j, t, &q, rows)?;
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // a remainder smaller than the pivot survived in row or column t
                let mut best = (t, t);
                for i in t..rows {
                    if !a[i][t].is_zero() && a[i][t].abs_cmp(&a[best.0][best.1]) == Ordering::Less {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if !a[t][j].is_zero() && a[t][j].abs_cmp(&a[best.0][best.1]) == Ordering::Less {
                        best = (t, j);
                    }
                }
                swap_to(&mut a, t, best.0, best.1);
                continue;
            }
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[i][j].is_zero() && !a[i][j].is_multiple_of(&a[t][t]))
            });
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[t][j].add(&a[i][j]).ok_or(Overflow)?;
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    let invariant_factors: Vec<BigUint> = diag.iter().map(|d| d.to_biguint_abs()).collect();
    Ok(SnfResult {
        rank: invariant_factors.len(),
        invariant_factors,
    })
}

fn min_entry<T: Entry>(a: &[Vec<T>], t: usize, rows: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..rows {
        for j in t..cols {
            if a[i][j].is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[i][j].abs_cmp(&a[bi][bj]) != Ordering::Less => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn swap_to<T>(a: &mut [Vec<T>], t: usize, i: usize, j: usize) {
    a.swap(t, i);
    if j != t {
        for row in a.iter_mut() {
            row.swap(t, j);
        }
    }
}

fn row_sub<T: Entry>(
    a: &mut [Vec<T>],
    i: usize,
    t: usize,
    q: &T,
    cols: usize,
) -> Result<(), Overflow> {
    for j in t..cols {
        if a[t][j].is_zero() {
            continue;
        }
        let v = a[i][j].sub_mul(q, &a[t][j]).ok_or(Overflow)?;
        a[i][j] = v;
    }
    Ok(())
}

fn col_sub<T: Entry>(
    a: &mut [Vec<T>],
    j: usize,
    t: usize,
    q: &T,
    rows: usize,
) -> Result<(), Overflow> {
    for i in t..rows {
        if a[i][t].is_zero() {
            continue;
        }
        let v = a[i][j].sub_mul(q, &a[i][t]).ok_or(Overflow)?;
        a[i][j] = v;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn factors(r: &SnfResult) -> Vec<u64> {
        r.invariant_factors
            .iter()
            .map(|d| d.try_into().unwrap())
            .collect()
    }

    #[test]
    fn identity_and_diagonal() {
        let r = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!((r.rank, factors(&r)), (3, vec![1, 1, 1]));
        let r = smith_normal_form(&IntMatrix::from_rows(vec![vec![2, 0], vec![0, 4]]));
        assert_eq!(factors(&r), vec![2, 4]);
        let r = smith_normal_form(&IntMatrix::from_rows(vec![vec![4, 0], vec![0, 6]]));
        assert_eq!(factors(&r), vec![2, 12]);
        assert!(r.divisibility_chain_holds());
    }

    #[test]
    fn zero_and_empty() {
        let r = smith_normal_form(&IntMatrix::zeros(3, 2));
        assert_eq!(r.rank, 0);
        let r = smith_normal_form(&IntMatrix::zeros(0, 4));
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2;
        let m = IntMatrix::from_rows(vec![vec![big, big - 1], vec![big - 1, -big]]);
        let r = smith_normal_form(&m);
        assert_eq!(r.rank, 2);
        assert!(r.divisibility_chain_holds());
        // product of invariant factors equals |det|
        let det =
            BigInt::from(big) * BigInt::from(-big) - BigInt::from(big - 1) * BigInt::from(big - 1);
        let prod: BigUint = r.invariant_factors.iter().product();
        assert_eq!(prod, det.abs().to_biguint().unwrap());
    }
}
