//! Dense GF(2) linear algebra on packed rows.

use num_rational::Ratio;

use super::LiftError;
use crate::graph::ParityCheckMatrix;

/// Largest code dimension enumerated by [`min_distance_bruteforce`].
pub const MAX_BRUTEFORCE_DIMENSION: usize = 32;

/// Binary matrix with rows packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix {
            cols,
            words,
            rows: vec![vec![0; words]; rows],
        }
    }

    pub fn from_sparse(h: &ParityCheckMatrix) -> Self {
        let mut out = Self::zeros(h.m(), h.n());
        for (i, j) in h.entries() {
            out.set(i, j);
        }
        out
    }

    pub fn from_dense(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut out = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if v & 1 == 1 {
                    out.set(i, j);
                }
            }
        }
        out
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i][j / 64] |= 1 << (j % 64);
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..self.cols {
            if top == self.rows.len() {
                break;
            }
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (top..self.rows.len()).find(|&r| self.rows[r][w] & bit != 0) else {
                continue;
            };
            self.rows.swap(top, p);
            let pivot = self.rows[top].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != top && row[w] & bit != 0 {
                    for (a, b) in row[w..].iter_mut().zip(&pivot[w..]) {
                        *a ^= b;
                    }
                }
            }
            pivots.push(col);
            top += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of the right null space `{x : M x = 0}`, one packed vector per element.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u64; self.words];
            v[free / 64] |= 1 << (free % 64);
            for (r, &p) in pivots.iter().enumerate() {
                if m.rows[r][free / 64] >> (free % 64) & 1 == 1 {
                    v[p / 64] |= 1 << (p % 64);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Rank over GF(2).
pub fn gf2_rank(h: &ParityCheckMatrix) -> usize {
    BitMatrix::from_sparse(h).rank()
}

/// Design rate `(n - rank H) / n`, exact.
pub fn code_rate(h: &ParityCheckMatrix) -> Ratio<usize> {
    Ratio::new(h.n() - gf2_rank(h), h.n())
}

/// Minimum Hamming weight of a nonzero codeword, by enumerating all `2^k`
/// codewords in Gray-code order. `Ok(None)` when the code is `{0}`.
pub fn min_distance_bruteforce(h: &ParityCheckMatrix) -> Result<Option<usize>, LiftError> {
    let basis = BitMatrix::from_sparse(h).nullspace();
    let k = basis.len();
    if k > MAX_BRUTEFORCE_DIMENSION {
        return Err(LiftError::DimensionTooLarge {
            dimension: k,
            limit: MAX_BRUTEFORCE_DIMENSION,
        });
    }
    if k == 0 {
        return Ok(None);
    }
    let words = basis[0].len();
    let mut word = vec![0u64; words];
    let mut best = usize::MAX;
    for step in 1u64..(1u64 << k) {
        let flip = step.trailing_zeros() as usize;
        for (a, b) in word.iter_mut().zip(&basis[flip]) {
            *a ^= b;
        }
        let w: usize = word.iter().map(|x| x.count_ones() as usize).sum();
        best = best.min(w);
    }
    Ok(Some(best))
}
