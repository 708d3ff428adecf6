//! Linear automorphisms of `(Z/2)^k` and isomorphism search between degree
//! vectors indexed by characters.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{parity, rref, span};

/// A `k x k` matrix over F_2, stored column-wise as bitmasks: `cols[i]` is the image of `e_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct F2Matrix {
    k: usize,
    cols: Vec<usize>,
}

impl F2Matrix {
    pub fn identity(k: usize) -> Self {
        F2Matrix {
            k,
            cols: (0..k).map(|i| 1 << i).collect(),
        }
    }

    pub fn from_columns(cols: Vec<usize>) -> Self {
        F2Matrix {
            k: cols.len(),
            cols,
        }
    }

    pub fn rank_k(&self) -> usize {
        self.k
    }

    pub fn columns(&self) -> &[usize] {
        &self.cols
    }

    pub fn apply(&self, v: usize) -> usize {
        self.cols
            .iter()
            .enumerate()
            .filter(|(i, _)| v >> i & 1 == 1)
            .fold(0, |acc, (_, &c)| acc ^ c)
    }

    pub fn transpose(&self) -> Self {
        let cols = (0..self.k)
            .map(|j| {
                (0..self.k)
                    .filter(|&i| self.cols[i] >> j & 1 == 1)
                    .fold(0, |acc, i| acc | 1 << i)
            })
            .collect();
        F2Matrix { k: self.k, cols }
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &F2Matrix) -> Self {
        F2Matrix {
            k: self.k,
            cols: other.cols.iter().map(|&c| self.apply(c)).collect(),
        }
    }

    pub fn is_invertible(&self) -> bool {
        rref(&self.cols).len() == self.k
    }

    pub fn inverse(&self) -> Option<Self> {
        // Gauss-Jordan on rows of [A | I], with rows as bitmasks of width 2k.
        let k = self.k;
        let a = self.transpose();
        let mut rows: Vec<usize> = (0..k).map(|i| a.cols[i] | 1 << (k + i)).collect();
        for col in 0..k {
            let pivot = (col..k).find(|&r| rows[r] >> col & 1 == 1)?;
            rows.swap(col, pivot);
            for r in 0..k {
                if r != col && rows[r] >> col & 1 == 1 {
                    rows[r] ^= rows[col];
                }
            }
        }
        let inv_rows: Vec<usize> = rows.iter().map(|&r| r >> k).collect();
        Some(F2Matrix { k, cols: inv_rows }.transpose())
    }

    /// `chi o M` as a character bitmask, i.e. `M^T chi`.
    pub fn pull_back_character(&self, chi: usize) -> usize {
        (0..self.k)
            .filter(|&i| parity(chi & self.cols[i]) == 1)
            .fold(0, |acc, i| acc | 1 << i)
    }
}

impl fmt::Display for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in 0..self.k {
            let line: String = (0..self.k)
                .map(|c| {
                    if self.cols[c] >> row & 1 == 1 {
                        '1'
                    } else {
                        '0'
                    }
                })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Find `M` in `GL(k, F_2)` with `l_a(chi o M) = l_b(chi)` for every character `chi`.
pub fn find_isomorphism(k: usize, l_a: &[i64], l_b: &[i64]) -> Option<F2Matrix> {
    let mut found = None;
    search(k, l_a, l_b, &mut |m| {
        found = Some(m);
        false
    });
    let m = found?;
    debug_assert!(maps_degrees(&m, l_a, l_b));
    maps_degrees(&m, l_a, l_b).then_some(m)
}

/// Every such `M`; with `l_a = l_b` this is the stabilizer of the vector.
pub fn find_all_isomorphisms(k: usize, l_a: &[i64], l_b: &[i64]) -> Vec<F2Matrix> {
    let mut out = Vec::new();
    search(k, l_a, l_b, &mut |m| {
        out.push(m);
        true
    });
    out
}

/// Post-check that `m` carries `l_a` onto `l_b`.
pub fn maps_degrees(m: &F2Matrix, l_a: &[i64], l_b: &[i64]) -> bool {
    m.is_invertible()
        && l_a.len() == l_b.len()
        && (0..l_b.len()).all(|chi| l_a[m.pull_back_character(chi)] == l_b[chi])
}

// Backtracking over images of the dual basis: `images[i]` is `M^T eps_{i+1}`.
// A candidate must carry the right degree and keep every character of the
// already-fixed span consistent.
fn search(k: usize, l_a: &[i64], l_b: &[i64], emit: &mut dyn FnMut(F2Matrix) -> bool) {
    let n = 1usize << k;
    if l_a.len() != n || l_b.len() != n {
        return;
    }
    let mut sa = l_a.to_vec();
    let mut sb = l_b.to_vec();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb || l_a[0] != l_b[0] {
        return;
    }
    let mut images = vec![0usize; k];
    // map[chi] = image of chi under the partial map, for chi in the fixed span.
    let mut map = vec![0usize; n];
    rec(0, k, l_a, l_b, &mut images, &mut map, emit);
}

fn rec(
    depth: usize,
    k: usize,
    l_a: &[i64],
    l_b: &[i64],
    images: &mut Vec<usize>,
    map: &mut Vec<usize>,
    emit: &mut dyn FnMut(F2Matrix) -> bool,
) -> bool {
    if depth == k {
        let t = F2Matrix::from_columns(images.clone());
        return emit(t.transpose());
    }
    let fixed = span(&images[..depth]);
    let basis_char = 1usize << depth;
    for cand in 1..1usize << k {
        if l_a[cand] != l_b[basis_char] || fixed.binary_search(&cand).is_ok() {
            continue;
        }
        let lower = 1usize << depth;
        let ok = (0..lower).all(|chi| {
            let img = map[chi] ^ cand;
            l_a[img] == l_b[chi | basis_char]
        });
        if !ok {
            continue;
        }
        for chi in 0..lower {
            map[chi | basis_char] = map[chi] ^ cand;
        }
        images[depth] = cand;
        if !rec(depth + 1, k, l_a, l_b, images, map, emit) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_for_equal_vectors() {
        let l = vec![0, 4, 2, 2];
        assert_eq!(find_isomorphism(2, &l, &l), Some(F2Matrix::identity(2)));
    }

    #[test]
    fn coordinate_swap() {
        let la = vec![0, 4, 2, 2];
        let lb = vec![0, 2, 4, 2];
        let m = find_isomorphism(2, &la, &lb).unwrap();
        assert_eq!(m, F2Matrix::from_columns(vec![0b10, 0b01]));
    }

    #[test]
    fn dependent_and_independent_triples_differ() {
        // three degree-3 characters: dependent (eps1, eps2, eps1+eps2) versus independent
        let mut dep = vec![2i64; 8];
        dep[0] = 0;
        for c in [0b001, 0b010, 0b011] {
            dep[c] = 3;
        }
        let mut ind = vec![2i64; 8];
        ind[0] = 0;
        for c in [0b001, 0b010, 0b100] {
            ind[c] = 3;
        }
        assert!(find_isomorphism(3, &dep, &ind).is_none());
        // exhaust GL(3, F_2) directly
        let mut count = 0;
        for a in 1..8 {
            for b in 1..8 {
                for c in 1..8 {
                    let m = F2Matrix::from_columns(vec![a, b, c]);
                    if m.is_invertible() {
                        count += 1;
                        assert!(!maps_degrees(&m, &dep, &ind));
                    }
                }
            }
        }
        assert_eq!(count, 168);
    }

    #[test]
    fn stabilizer_of_a_type_vector() {
        // l(eps1) = 4, everything else 2: the stabilizer fixes eps1 in the dual.
        let mut l = vec![2i64; 16];
        l[0] = 0;
        l[1] = 4;
        assert_eq!(find_all_isomorphisms(4, &l, &l).len(), 20160 / 15);
    }

    #[test]
    fn inverse_and_transpose() {
        let m = F2Matrix::from_columns(vec![0b011, 0b110, 0b100]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv), F2Matrix::identity(3));
        assert_eq!(m.transpose().transpose(), m);
        assert!(F2Matrix::from_columns(vec![0b11, 0b11]).inverse().is_none());
    }
}
