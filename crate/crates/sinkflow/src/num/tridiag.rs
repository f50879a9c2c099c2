// SPDX-License-Identifier: MIT OR Apache-2.0

//! Thomas algorithm for tridiagonal systems.
//!
//! Unpivoted forward elimination with a zero-pivot guard; the marching
//! schemes in this crate produce strictly diagonally dominant systems, so
//! pivoting is unnecessary and determinism is preserved.

use super::LinAlgError;
use crate::tol;

/// Solve the tridiagonal system in place.
///
/// * `lower[i]` multiplies `x[i]` in equation `i + 1` (length `n − 1`),
/// * `diag[i]` multiplies `x[i]` in equation `i` (length `n`),
/// * `upper[i]` multiplies `x[i + 1]` in equation `i` (length `n − 1`),
/// * `rhs` holds the right-hand side on entry and the solution on exit.
///
/// `scratch` must have length `n`; it is overwritten. Keeping it caller-owned
/// lets marching loops reuse one allocation.
pub fn solve_in_place(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &mut [f64],
    scratch: &mut [f64],
) -> Result<(), LinAlgError> {
    let n = diag.len();
    if lower.len() != n - 1 || upper.len() != n - 1 || rhs.len() != n || scratch.len() != n {
        return Err(LinAlgError::Shape(format!(
            "tridiagonal sizes: diag {n}, lower {}, upper {}, rhs {}, scratch {}",
            lower.len(),
            upper.len(),
            rhs.len(),
            scratch.len()
        )));
    }
    // Forward sweep: scratch holds the modified super-diagonal.
    let mut piv = diag[0];
    if piv.abs() < tol::NUM_PIVOT_MIN {
        return Err(LinAlgError::ZeroPivot { index: 0, value: piv });
    }
    scratch[0] = upper[0] / piv;
    rhs[0] /= piv;
    for i in 1..n {
        piv = diag[i] - lower[i - 1] * scratch[i - 1];
        if piv.abs() < tol::NUM_PIVOT_MIN {
            return Err(LinAlgError::ZeroPivot { index: i, value: piv });
        }
        if i < n - 1 {
            scratch[i] = upper[i] / piv;
        }
        rhs[i] = (rhs[i] - lower[i - 1] * rhs[i - 1]) / piv;
    }
    // Back substitution.
    for i in (0..n - 1).rev() {
        rhs[i] -= scratch[i] * rhs[i + 1];
    }
    Ok(())
}

/// Convenience wrapper allocating its own scratch and output.
pub fn solve(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &[f64],
) -> Result<Vec<f64>, LinAlgError> {
    let mut x = rhs.to_vec();
    let mut scratch = vec![0.0; diag.len()];
    solve_in_place(lower, diag, upper, &mut x, &mut scratch)?;
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_manufactured_solution() {
        // -x'' = f discretized: A = tridiag(-1, 2, -1), exact solution known.
        let n = 50;
        let x_true: Vec<f64> = (0..n).map(|i| ((i * 7) % 11) as f64 * 0.3 - 1.0).collect();
        let lower = vec![-1.0; n - 1];
        let diag = vec![2.0; n];
        let upper = vec![-1.0; n - 1];
        let mut rhs = vec![0.0; n];
        for i in 0..n {
            rhs[i] = 2.0 * x_true[i];
            if i > 0 {
                rhs[i] -= x_true[i - 1];
            }
            if i < n - 1 {
                rhs[i] -= x_true[i + 1];
            }
        }
        let x = solve(&lower, &diag, &upper, &rhs).unwrap();
        for i in 0..n {
            assert!((x[i] - x_true[i]).abs() < 1e-11, "i={i}");
        }
    }

    #[test]
    fn rejects_singular_matrix() {
        let err = solve(&[1.0], &[0.0, 1.0], &[1.0], &[1.0, 1.0]).unwrap_err();
        assert!(matches!(err, LinAlgError::ZeroPivot { index: 0, .. }));
    }
}
