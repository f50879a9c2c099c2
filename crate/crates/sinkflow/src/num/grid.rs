// SPDX-License-Identifier: MIT OR Apache-2.0

//! Dense row-major 2-D array with the differencing helpers used on
//! rectangular solution grids.
//!
//! Derivative helpers are second order: centered three-point stencils in the
//! interior and one-sided three-point (first derivative) or four-point
//! (second derivative) stencils at the edges, all on uniform spacing.

/// Dense row-major matrix of `f64`: entry `(i, j)` lives at `i*n_cols + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2 {
    n_rows: usize,
    n_cols: usize,
    data: Vec<f64>,
}

impl Grid2 {
    /// Zero-filled grid.
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self { n_rows, n_cols, data: vec![0.0; n_rows * n_cols] }
    }

    /// Build from a function of the index pair.
    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut g = Self::zeros(n_rows, n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                g.data[i * n_cols + j] = f(i, j);
            }
        }
        g
    }

    /// Wrap an existing row-major buffer.
    pub fn from_vec(n_rows: usize, n_cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n_rows * n_cols, "buffer length must be n_rows*n_cols");
        Self { n_rows, n_cols, data }
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        self.data[i * self.n_cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        &mut self.data[i * self.n_cols + j]
    }

    /// Contiguous row `i`.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    /// Mutable contiguous row `i`.
    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    /// Column `j` copied into a fresh vector.
    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.n_rows).map(|i| self.at(i, j)).collect()
    }

    /// Underlying row-major slice.
    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, &v| m.max(v.abs()))
    }

    /// Entry-wise map into a new grid.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Entry-wise combination `f(self, other)` into a new grid.
    pub fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// First derivative along rows (d/d row-coordinate) on uniform spacing
    /// `h`: centered interior, one-sided three-point edges.
    pub fn deriv_rows(&self, h: f64) -> Self {
        let mut out = Self::zeros(self.n_rows, self.n_cols);
        let n = self.n_rows;
        assert!(n >= 3, "need at least 3 rows to difference");
        for j in 0..self.n_cols {
            for i in 0..n {
                let v = if i == 0 {
                    (-3.0 * self.at(0, j) + 4.0 * self.at(1, j) - self.at(2, j)) / (2.0 * h)
                } else if i == n - 1 {
                    (3.0 * self.at(n - 1, j) - 4.0 * self.at(n - 2, j) + self.at(n - 3, j))
                        / (2.0 * h)
                } else {
                    (self.at(i + 1, j) - self.at(i - 1, j)) / (2.0 * h)
                };
                *out.at_mut(i, j) = v;
            }
        }
        out
    }

    /// First derivative along columns on uniform spacing `h`.
    pub fn deriv_cols(&self, h: f64) -> Self {
        let mut out = Self::zeros(self.n_rows, self.n_cols);
        let n = self.n_cols;
        assert!(n >= 3, "need at least 3 columns to difference");
        for i in 0..self.n_rows {
            let r = self.row(i);
            let o = out.row_mut(i);
            o[0] = (-3.0 * r[0] + 4.0 * r[1] - r[2]) / (2.0 * h);
            for j in 1..n - 1 {
                o[j] = (r[j + 1] - r[j - 1]) / (2.0 * h);
            }
            o[n - 1] = (3.0 * r[n - 1] - 4.0 * r[n - 2] + r[n - 3]) / (2.0 * h);
        }
        out
    }

    /// Second derivative along rows on uniform spacing `h`: centered
    /// interior, one-sided four-point edges (both second-order accurate).
    pub fn deriv2_rows(&self, h: f64) -> Self {
        let mut out = Self::zeros(self.n_rows, self.n_cols);
        let n = self.n_rows;
        assert!(n >= 4, "need at least 4 rows for edge second derivatives");
        let h2 = h * h;
        for j in 0..self.n_cols {
            for i in 0..n {
                let v = if i == 0 {
                    (2.0 * self.at(0, j) - 5.0 * self.at(1, j) + 4.0 * self.at(2, j)
                        - self.at(3, j))
                        / h2
                } else if i == n - 1 {
                    (2.0 * self.at(n - 1, j) - 5.0 * self.at(n - 2, j) + 4.0 * self.at(n - 3, j)
                        - self.at(n - 4, j))
                        / h2
                } else {
                    (self.at(i + 1, j) - 2.0 * self.at(i, j) + self.at(i - 1, j)) / h2
                };
                *out.at_mut(i, j) = v;
            }
        }
        out
    }

    /// First derivative along rows with fourth-order five-point interior
    /// stencils; the two rows nearest each edge fall back to second-order
    /// (one-sided three-point at the edge, centered at its neighbor).
    pub fn deriv5_rows(&self, h: f64) -> Self {
        let mut out = Self::zeros(self.n_rows, self.n_cols);
        let n = self.n_rows;
        assert!(n >= 5, "need at least 5 rows for five-point stencils");
        for j in 0..self.n_cols {
            for i in 0..n {
                let v = if i == 0 {
                    (-3.0 * self.at(0, j) + 4.0 * self.at(1, j) - self.at(2, j)) / (2.0 * h)
                } else if i == 1 {
                    (self.at(2, j) - self.at(0, j)) / (2.0 * h)
                } else if i == n - 2 {
                    (self.at(n - 1, j) - self.at(n - 3, j)) / (2.0 * h)
                } else if i == n - 1 {
                    (3.0 * self.at(n - 1, j) - 4.0 * self.at(n - 2, j) + self.at(n - 3, j))
                        / (2.0 * h)
                } else {
                    (-self.at(i + 2, j) + 8.0 * self.at(i + 1, j) - 8.0 * self.at(i - 1, j)
                        + self.at(i - 2, j))
                        / (12.0 * h)
                };
                *out.at_mut(i, j) = v;
            }
        }
        out
    }

    /// First derivative along columns with fourth-order five-point interior
    /// stencils; see [`Grid2::deriv5_rows`] for the edge treatment.
    pub fn deriv5_cols(&self, h: f64) -> Self {
        let mut out = Self::zeros(self.n_rows, self.n_cols);
        let n = self.n_cols;
        assert!(n >= 5, "need at least 5 columns for five-point stencils");
        for i in 0..self.n_rows {
            let r = self.row(i);
            let o = out.row_mut(i);
            o[0] = (-3.0 * r[0] + 4.0 * r[1] - r[2]) / (2.0 * h);
            o[1] = (r[2] - r[0]) / (2.0 * h);
            for j in 2..n - 2 {
                o[j] = (-r[j + 2] + 8.0 * r[j + 1] - 8.0 * r[j - 1] + r[j - 2]) / (12.0 * h);
            }
            o[n - 2] = (r[n - 1] - r[n - 3]) / (2.0 * h);
            o[n - 1] = (3.0 * r[n - 1] - 4.0 * r[n - 2] + r[n - 3]) / (2.0 * h);
        }
        out
    }

    /// Second derivative along columns on uniform spacing `h`.
    pub fn deriv2_cols(&self, h: f64) -> Self {
        let mut out = Self::zeros(self.n_rows, self.n_cols);
        let n = self.n_cols;
        assert!(n >= 4, "need at least 4 columns for edge second derivatives");
        let h2 = h * h;
        for i in 0..self.n_rows {
            let r = self.row(i);
            let o = out.row_mut(i);
            o[0] = (2.0 * r[0] - 5.0 * r[1] + 4.0 * r[2] - r[3]) / h2;
            for j in 1..n - 1 {
                o[j] = (r[j + 1] - 2.0 * r[j] + r[j - 1]) / h2;
            }
            o[n - 1] = (2.0 * r[n - 1] - 5.0 * r[n - 2] + 4.0 * r[n - 3] - r[n - 4]) / h2;
        }
        out
    }
}
