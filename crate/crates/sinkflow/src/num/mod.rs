// SPDX-License-Identifier: MIT OR Apache-2.0

//! Small numerical kernels shared across the solver modules.
//!
//! Everything here is deterministic, allocation-conscious and free of
//! module-specific conventions: dense row-major 2-D storage, tridiagonal and
//! banded direct solves, monotone interpolation/inversion, trapezoid-family
//! quadrature with exponential tail closure, and least-squares rate/slope
//! fits with confidence intervals.

pub mod banded;
pub mod fit;
pub mod grid;
pub mod interp;
pub mod quad;
pub mod tridiag;

pub use banded::BandedMatrix;
pub use grid::Grid2;

/// Error raised by the direct linear-algebra kernels.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinAlgError {
    /// An unpivoted elimination met a pivot below the guard threshold.
    #[error("pivot {value:.3e} below guard threshold at elimination step {index}")]
    ZeroPivot { index: usize, value: f64 },
    /// Inconsistent dimensions were passed to a kernel.
    #[error("dimension mismatch: {0}")]
    Shape(String),
}
