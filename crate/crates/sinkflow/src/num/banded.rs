// SPDX-License-Identifier: MIT OR Apache-2.0

//! Unpivoted LU factorization of banded matrices.
//!
//! The elliptic strip operators assembled in this crate are (block)
//! diagonally dominant with smooth coefficients, so elimination without
//! pivoting is stable in practice; a pivot-size guard converts any breakdown
//! into a structured error instead of silent noise. Without pivoting the
//! band widths do not grow, memory is `n·(kl + ku + 1)`, and the
//! factorization is deterministic.
//!
//! Storage is row-wise: matrix row `i` keeps its band entries
//! `A[i][j], j ∈ [i − kl, i + ku]` in a contiguous slice, which makes the
//! elimination inner loop a contiguous AXPY.

use super::LinAlgError;
use crate::tol;

/// Banded matrix with `kl` sub-diagonals and `ku` super-diagonals.
#[derive(Debug, Clone)]
pub struct BandedMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    /// Row-major band storage: entry `(i, j)` at `rows[i*width + (j − i + kl)]`.
    rows: Vec<f64>,
    factored: bool,
}

impl BandedMatrix {
    /// Zero matrix of order `n` with the given band widths.
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = kl + ku + 1;
        Self { n, kl, ku, width, rows: vec![0.0; n * width], factored: false }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Whether `(i, j)` lies inside the band.
    #[inline]
    pub fn in_band(&self, i: usize, j: usize) -> bool {
        j + self.kl >= i && j <= i + self.ku && j < self.n
    }

    #[inline]
    fn offset(&self, i: usize, j: usize) -> usize {
        debug_assert!(self.in_band(i, j), "({i},{j}) outside band kl={} ku={}", self.kl, self.ku);
        i * self.width + (j + self.kl - i)
    }

    /// Set entry `(i, j)`; panics (debug) outside the band.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let o = self.offset(i, j);
        self.rows[o] = v;
    }

    /// Add to entry `(i, j)`.
    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let o = self.offset(i, j);
        self.rows[o] += v;
    }

    /// Entry `(i, j)` (zero outside the band).
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if self.in_band(i, j) {
            self.rows[i * self.width + (j + self.kl - i)]
        } else {
            0.0
        }
    }

    /// `y = A·x` on the unfactored matrix (for residual checks).
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert!(!self.factored, "matvec requires the unfactored matrix");
        assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let j_lo = i.saturating_sub(self.kl);
            let j_hi = (i + self.ku).min(self.n - 1);
            let row = &self.rows[i * self.width..(i + 1) * self.width];
            let mut acc = 0.0;
            for j in j_lo..=j_hi {
                acc += row[j + self.kl - i] * x[j];
            }
            y[i] = acc;
        }
        y
    }

    /// Unpivoted in-place LU factorization.
    ///
    /// After success, `L` (unit diagonal implied) occupies the sub-diagonal
    /// band and `U` the diagonal and super-diagonal band.
    pub fn factor(&mut self) -> Result<(), LinAlgError> {
        assert!(!self.factored, "matrix already factored");
        let (n, kl, ku, width) = (self.n, self.kl, self.ku, self.width);
        for k in 0..n {
            let pivot = self.rows[k * width + kl];
            if pivot.abs() < tol::NUM_PIVOT_MIN {
                return Err(LinAlgError::ZeroPivot { index: k, value: pivot });
            }
            let i_hi = (k + kl).min(n - 1);
            if k == i_hi {
                continue;
            }
            // Columns of row k to the right of the pivot.
            let j_hi = (k + ku).min(n - 1);
            let ncols = j_hi - k; // may be 0 near the right edge
            let (head, tail) = self.rows.split_at_mut((k + 1) * width);
            let row_k = &head[k * width..];
            let pivot_row = &row_k[kl + 1..kl + 1 + ncols];
            for i in k + 1..=i_hi {
                let row_i = &mut tail[(i - k - 1) * width..(i - k) * width];
                let off = k + kl - i; // position of A[i][k] in row i
                let l = row_i[off] / pivot;
                row_i[off] = l;
                if l != 0.0 {
                    let seg = &mut row_i[off + 1..off + 1 + ncols];
                    for (x, &u) in seg.iter_mut().zip(pivot_row) {
                        *x -= l * u;
                    }
                }
            }
        }
        self.factored = true;
        Ok(())
    }

    /// Solve `A·x = b` in place using the stored factors.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        assert!(self.factored, "call factor() first");
        assert_eq!(b.len(), self.n);
        let (n, kl, ku, width) = (self.n, self.kl, self.ku, self.width);
        // Forward: L has unit diagonal.
        for i in 1..n {
            let k_lo = i.saturating_sub(kl);
            let row = &self.rows[i * width..];
            let mut acc = 0.0;
            for k in k_lo..i {
                acc += row[k + kl - i] * b[k];
            }
            b[i] -= acc;
        }
        // Backward with U.
        for i in (0..n).rev() {
            let j_hi = (i + ku).min(n - 1);
            let row = &self.rows[i * width..];
            let mut acc = 0.0;
            for j in i + 1..=j_hi {
                acc += row[j + kl - i] * b[j];
            }
            b[i] = (b[i] - acc) / row[kl];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dense unpivoted Gauss for cross-checking small systems.
    fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
        let n = b.len();
        for k in 0..n {
            for i in k + 1..n {
                let l = a[i][k] / a[k][k];
                for j in k..n {
                    a[i][j] -= l * a[k][j];
                }
                b[i] -= l * b[k];
            }
        }
        for i in (0..n).rev() {
            let mut acc = b[i];
            for j in i + 1..n {
                acc -= a[i][j] * b[j];
            }
            b[i] = acc / a[i][i];
        }
        b
    }

    #[test]
    fn matches_dense_elimination() {
        // Deterministic pseudo-random diagonally dominant band, kl=3, ku=2.
        let n = 40;
        let (kl, ku) = (3, 2);
        let mut band = BandedMatrix::zeros(n, kl, ku);
        let mut dense = vec![vec![0.0; n]; n];
        let mut state = 123_456_789_u64;
        let mut next = || {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1);
            ((state >> 33) as f64) / (u32::MAX as f64) - 0.5
        };
        for i in 0..n {
            for j in i.saturating_sub(kl)..=(i + ku).min(n - 1) {
                let v = if i == j { 6.0 + next() } else { next() };
                band.set(i, j, v);
                dense[i][j] = v;
            }
        }
        let b: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
        let x_ref = dense_solve(dense, b.clone());

        let resid_check = band.clone();
        band.factor().unwrap();
        let mut x = b.clone();
        band.solve_in_place(&mut x);
        for i in 0..n {
            assert!((x[i] - x_ref[i]).abs() < 1e-10, "i={i}");
        }
        // Residual of the banded solution against the original matrix.
        let ax = resid_check.matvec(&x);
        for i in 0..n {
            assert!((ax[i] - b[i]).abs() < 1e-12, "residual at {i}");
        }
    }

    #[test]
    fn zero_pivot_is_reported() {
        let mut band = BandedMatrix::zeros(3, 1, 1);
        band.set(0, 0, 1.0);
        band.set(0, 1, 2.0);
        band.set(1, 0, 0.5);
        band.set(1, 1, 1.0); // becomes 0 after elimination of row 0
        band.set(1, 2, 1.0);
        band.set(2, 1, 1.0);
        band.set(2, 2, 1.0);
        let err = band.factor().unwrap_err();
        assert!(matches!(err, LinAlgError::ZeroPivot { index: 1, .. }));
    }
}
