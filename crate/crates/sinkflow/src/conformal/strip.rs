// SPDX-License-Identifier: MIT OR Apache-2.0

//! Second-order solver for the transformed elliptic problem on the fixed
//! rectangle `(τ, σ) ∈ [−T, T] × [−1, 1]`.
//!
//! Pulling the curved channel back through `σ = θ/u(τ)` (with `u` the wall
//! angle as a function of log-radius) turns the harmonic equation for the
//! stream deviation `w = ψ − σ` into the variable-coefficient form
//!
//! ```text
//! w_ττ + (σ²a² + 1/u²) w_σσ − 2σa w_τσ + σ(a² − a′) w_σ = rhs ,
//! a = u′/u ,
//! ```
//!
//! with Dirichlet data on all four edges. Centered second-order stencils
//! (nine points because of the mixed term) produce a banded system solved
//! directly when the grid is small enough; larger grids fall back to
//! σ-line relaxation (each τ-line solved implicitly in σ, successively
//! over-relaxed). Both paths finish with the same stencil-residual check.

use std::f64::consts::PI;

use super::ConformalError;
use crate::num::banded::BandedMatrix;
use crate::num::grid::Grid2;
use crate::num::tridiag;
use crate::tol;

/// Coefficient data of the rectangle problem, sampled on the τ-grid.
pub(crate) struct RectProblem<'a> {
    pub tau: &'a [f64],
    pub sigma: &'a [f64],
    /// Wall angle `u(τ)`.
    pub u: &'a [f64],
    /// Logarithmic derivative `a = u′/u`.
    pub a: &'a [f64],
    /// Its derivative `a′ = u″/u − a²`.
    pub ap: &'a [f64],
}

/// Linear-solve strategy for the rectangle problem.
#[derive(Clone, Copy, Debug)]
pub(crate) enum RectMethod {
    /// Direct when `N_τ·N_σ` is at most [`DIRECT_LIMIT`], relaxation above.
    Auto,
    Direct,
    Relaxation { max_sweeps: usize },
}

/// Grid-size product up to which the banded factorization is used.
pub(crate) const DIRECT_LIMIT: usize = 400_000;
/// Default sweep cap for the relaxation fallback.
pub(crate) const RELAX_DEFAULT_SWEEPS: usize = 200_000;
/// Residual is evaluated every this many relaxation sweeps.
const RELAX_CHECK_EVERY: usize = 25;

struct NodeCoeffs {
    /// σσ coefficient `σ²a² + 1/u²`.
    css: f64,
    /// Mixed-derivative coefficient `−2σa`.
    cmix: f64,
    /// First-derivative coefficient `σ(a² − a′)`.
    cs: f64,
}

impl<'a> RectProblem<'a> {
    #[inline]
    fn coeffs(&self, i: usize, j: usize) -> NodeCoeffs {
        let a = self.a[i];
        let ap = self.ap[i];
        let u = self.u[i];
        let sg = self.sigma[j];
        NodeCoeffs {
            css: sg * sg * a * a + 1.0 / (u * u),
            cmix: -2.0 * sg * a,
            cs: sg * (a * a - ap),
        }
    }

    fn spacings(&self) -> (f64, f64) {
        (self.tau[1] - self.tau[0], self.sigma[1] - self.sigma[0])
    }
}

/// The source the stream deviation solves against: `σ(a′ − a²)` at interior
/// nodes (edge entries are never read).
pub(crate) fn default_rhs(p: &RectProblem) -> Grid2 {
    Grid2::from_fn(p.tau.len(), p.sigma.len(), |i, j| p.sigma[j] * (p.ap[i] - p.a[i] * p.a[i]))
}

/// Max-norm of the interior stencil residual `rhs − M[w]`.
pub(crate) fn residual_inf(p: &RectProblem, rhs: &Grid2, w: &Grid2) -> f64 {
    let (nt, ns) = (p.tau.len(), p.sigma.len());
    let (ht, hs) = p.spacings();
    let mut worst = 0.0_f64;
    for i in 1..nt - 1 {
        for j in 1..ns - 1 {
            let c = p.coeffs(i, j);
            let wtt = (w.at(i + 1, j) - 2.0 * w.at(i, j) + w.at(i - 1, j)) / (ht * ht);
            let wss = (w.at(i, j + 1) - 2.0 * w.at(i, j) + w.at(i, j - 1)) / (hs * hs);
            let wts = (w.at(i + 1, j + 1) - w.at(i + 1, j - 1) - w.at(i - 1, j + 1)
                + w.at(i - 1, j - 1))
                / (4.0 * ht * hs);
            let ws = (w.at(i, j + 1) - w.at(i, j - 1)) / (2.0 * hs);
            let m = wtt + c.css * wss + c.cmix * wts + c.cs * ws;
            worst = worst.max((rhs.at(i, j) - m).abs());
        }
    }
    worst
}

/// Solve `M[w] = rhs` with Dirichlet boundary data.
///
/// `edge`, when given, supplies the boundary values (only its edge entries
/// are read); otherwise the data is homogeneous. The returned grid carries
/// the boundary data and the solved interior. Fails with `NoConvergence`
/// when the final stencil residual exceeds the solver contract
/// [`tol::CONF_SOLVE_RESIDUAL`] · (‖rhs‖_∞ + 1).
pub(crate) fn solve_rect(
    p: &RectProblem,
    rhs: &Grid2,
    edge: Option<&Grid2>,
    method: RectMethod,
) -> Result<Grid2, ConformalError> {
    let (nt, ns) = (p.tau.len(), p.sigma.len());
    assert!(nt >= 5 && ns >= 5, "rectangle grid needs at least 5x5 nodes");
    assert_eq!(p.u.len(), nt);
    assert_eq!(p.a.len(), nt);
    assert_eq!(p.ap.len(), nt);
    assert_eq!((rhs.n_rows(), rhs.n_cols()), (nt, ns));

    let mut w = Grid2::zeros(nt, ns);
    if let Some(e) = edge {
        assert_eq!((e.n_rows(), e.n_cols()), (nt, ns));
        for i in 0..nt {
            *w.at_mut(i, 0) = e.at(i, 0);
            *w.at_mut(i, ns - 1) = e.at(i, ns - 1);
        }
        for j in 0..ns {
            *w.at_mut(0, j) = e.at(0, j);
            *w.at_mut(nt - 1, j) = e.at(nt - 1, j);
        }
    }

    let tol_eff = tol::CONF_SOLVE_RESIDUAL * (rhs.max_abs() + 1.0);
    match method {
        RectMethod::Direct => solve_direct(p, rhs, &mut w)?,
        RectMethod::Relaxation { max_sweeps } => {
            solve_slor(p, rhs, &mut w, max_sweeps, tol_eff)?
        }
        RectMethod::Auto => {
            if nt * ns <= DIRECT_LIMIT {
                solve_direct(p, rhs, &mut w)?;
            } else {
                solve_slor(p, rhs, &mut w, RELAX_DEFAULT_SWEEPS, tol_eff)?;
            }
        }
    }

    let residual = residual_inf(p, rhs, &w);
    if residual > tol_eff {
        return Err(ConformalError::NoConvergence { residual, tolerance: tol_eff });
    }
    Ok(w)
}

/// Nine-point stencil entries for the interior node `(i, j)`:
/// `(di, dj, coefficient)`.
fn stencil(c: &NodeCoeffs, ht: f64, hs: f64) -> [(isize, isize, f64); 9] {
    let ht2 = ht * ht;
    let hs2 = hs * hs;
    let mix = c.cmix / (4.0 * ht * hs);
    [
        (-1, 0, 1.0 / ht2),
        (1, 0, 1.0 / ht2),
        (0, 0, -2.0 / ht2 - 2.0 * c.css / hs2),
        (0, -1, c.css / hs2 - c.cs / (2.0 * hs)),
        (0, 1, c.css / hs2 + c.cs / (2.0 * hs)),
        (1, 1, mix),
        (-1, -1, mix),
        (1, -1, -mix),
        (-1, 1, -mix),
    ]
}

fn solve_direct(p: &RectProblem, rhs: &Grid2, w: &mut Grid2) -> Result<(), ConformalError> {
    let (nt, ns) = (p.tau.len(), p.sigma.len());
    let (ht, hs) = p.spacings();
    let nti = nt - 2;
    let nsi = ns - 2;
    let n = nti * nsi;
    // Mixed-term corners reach (i±1, j±1): band width nsi + 1.
    let band = nsi + 1;
    let mut mat = BandedMatrix::zeros(n, band, band);
    let mut b = vec![0.0; n];
    let idx = |i: usize, j: usize| (i - 1) * nsi + (j - 1);
    for i in 1..nt - 1 {
        for j in 1..ns - 1 {
            let row = idx(i, j);
            b[row] = rhs.at(i, j);
            let c = p.coeffs(i, j);
            for (di, dj, coef) in stencil(&c, ht, hs) {
                let ii = (i as isize + di) as usize;
                let jj = (j as isize + dj) as usize;
                if (1..nt - 1).contains(&ii) && (1..ns - 1).contains(&jj) {
                    mat.add(row, idx(ii, jj), coef);
                } else {
                    b[row] -= coef * w.at(ii, jj);
                }
            }
        }
    }
    mat.factor()?;
    mat.solve_in_place(&mut b);
    for i in 1..nt - 1 {
        for j in 1..ns - 1 {
            *w.at_mut(i, j) = b[idx(i, j)];
        }
    }
    Ok(())
}

fn solve_slor(
    p: &RectProblem,
    rhs: &Grid2,
    w: &mut Grid2,
    max_sweeps: usize,
    tol_eff: f64,
) -> Result<(), ConformalError> {
    let (nt, ns) = (p.tau.len(), p.sigma.len());
    let (ht, hs) = p.spacings();
    let nsi = ns - 2;
    // Over-relaxation factor sized for the explicitly coupled τ-direction.
    let omega = (2.0 / (1.0 + (PI / (nt as f64 - 1.0)).sin())).min(1.95);
    let mut lower = vec![0.0; nsi - 1];
    let mut diag = vec![0.0; nsi];
    let mut upper = vec![0.0; nsi - 1];
    let mut line = vec![0.0; nsi];
    let mut scratch = vec![0.0; nsi];
    let mix_sum = |w: &Grid2, i: usize, j: usize| {
        w.at(i + 1, j + 1) + w.at(i - 1, j - 1) - w.at(i + 1, j - 1) - w.at(i - 1, j + 1)
    };
    for sweep in 1..=max_sweeps {
        for i in 1..nt - 1 {
            for j in 1..ns - 1 {
                let k = j - 1;
                let c = p.coeffs(i, j);
                let sub = c.css / (hs * hs) - c.cs / (2.0 * hs);
                let sup = c.css / (hs * hs) + c.cs / (2.0 * hs);
                diag[k] = -2.0 / (ht * ht) - 2.0 * c.css / (hs * hs);
                let mut r = rhs.at(i, j)
                    - (w.at(i + 1, j) + w.at(i - 1, j)) / (ht * ht)
                    - c.cmix / (4.0 * ht * hs) * mix_sum(w, i, j);
                if k == 0 {
                    r -= sub * w.at(i, 0);
                } else {
                    lower[k - 1] = sub;
                }
                if k == nsi - 1 {
                    r -= sup * w.at(i, ns - 1);
                } else {
                    upper[k] = sup;
                }
                line[k] = r;
            }
            tridiag::solve_in_place(&lower, &diag, &upper, &mut line, &mut scratch)?;
            for j in 1..ns - 1 {
                let old = w.at(i, j);
                *w.at_mut(i, j) = old + omega * (line[j - 1] - old);
            }
        }
        if sweep % RELAX_CHECK_EVERY == 0 && residual_inf(p, rhs, w) <= tol_eff {
            return Ok(());
        }
    }
    // Let the caller's residual check report the achieved level.
    Ok(())
}
