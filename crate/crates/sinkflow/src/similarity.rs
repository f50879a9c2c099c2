// SPDX-License-Identifier: MIT OR Apache-2.0

//! Self-similar wall profile of sink flow in a wedge and its rescalings.
//!
//! The boundary layer of a pure sink flow in a straight wedge is governed
//! by the similarity problem
//!
//! ```text
//! f‴ − (f′)² + 1 = 0,   f(0) = f′(0) = 0,   f′(+∞) = 1,
//! ```
//!
//! which has the classical closed-form solution
//!
//! ```text
//! f′(η̃) = 3 tanh²(x) − 2 = 1 − 3 sech²(x),   x = η̃/√2 + artanh√(2/3).
//! ```
//!
//! This module provides that solution analytically (values, three
//! derivatives, antiderivative), an independent shooting solver used to
//! validate it, and the two rescaled views consumed downstream:
//!
//! * the slip profile `A_p(η) = −½ f′(√(angle/2)·η)`, which solves
//!   `−angle·A_p² − A_p″ + angle/4 = 0` and carries the wall-layer
//!   displacement moment `∫ (A_p + ½) dη`;
//! * its von Mises image `ω*(Z) = (2A_p)²` with
//!   `Z(η) = −√2 ∫₀^η A_p`, the fixed point of the marching scheme in the
//!   boundary-layer module.
//!
//! `angle` is the local wedge half-angle: the downstream (`β`) profile
//! describes the layer far out in the channel, the upstream (`α`) profile
//! the layer near the vertex.

use thiserror::Error;

use crate::num::quad::trapz;
use crate::tol;

use std::f64::consts::SQRT_2;

/// Shift `artanh √(2/3)` placing the wall at `f′ = 0`.
#[inline]
pub fn x_shift() -> f64 {
    (2.0f64 / 3.0).sqrt().atanh()
}

/// Closed-form `f(η̃)` (antiderivative of `f′` vanishing at the wall).
pub fn f_closed(eta_t: f64) -> f64 {
    let x = eta_t / SQRT_2 + x_shift();
    SQRT_2 * (x - 3.0 * x.tanh() - x_shift() + 6.0f64.sqrt())
}

/// Closed-form `f′(η̃) = 3 tanh²(x) − 2`.
pub fn fprime_closed(eta_t: f64) -> f64 {
    let t = (eta_t / SQRT_2 + x_shift()).tanh();
    3.0 * t * t - 2.0
}

/// Closed-form `f″(η̃) = 3√2 · tanh(x) sech²(x)`.
pub fn fpp_closed(eta_t: f64) -> f64 {
    let x = eta_t / SQRT_2 + x_shift();
    let t = x.tanh();
    3.0 * SQRT_2 * t * (1.0 - t * t)
}

/// Closed-form `f‴(η̃) = 3(1 − t²)(1 − 3t²)`, `t = tanh(x)`.
pub fn fppp_closed(eta_t: f64) -> f64 {
    let t = (eta_t / SQRT_2 + x_shift()).tanh();
    3.0 * (1.0 - t * t) * (1.0 - 3.0 * t * t)
}

/// Displacement moment `∫₀^∞ (A_p + ½) dη = ½√(2/angle)·(3√2 − 2√3)`.
pub fn displacement_moment(angle: f64) -> f64 {
    0.5 * (2.0 / angle).sqrt() * (3.0 * SQRT_2 - 2.0 * 3.0f64.sqrt())
}

/// Stretched coordinate `Z(η) = f(√(angle/2)·η)/√angle`.
pub fn z_of_eta(angle: f64, eta: f64) -> f64 {
    f_closed((angle / 2.0).sqrt() * eta) / angle.sqrt()
}

/// Invert `Z(η̃/k)`: the `η̃` with `f(η̃) = √angle·z`.
///
/// `f` is convex and strictly increasing for `η̃ > 0`, so Newton from a
/// quadratic (small `z`) or linear-asymptote (large `z`) initial guess
/// converges; iterates are clamped to `η̃ ≥ 0`.
fn eta_tilde_of_z(angle: f64, z: f64) -> f64 {
    let target = angle.sqrt() * z;
    if target <= 0.0 {
        return 0.0;
    }
    // f(η̃) → η̃ − √2(3 − √6) as η̃ → ∞; f(η̃) ≈ (1/√3)η̃² at the wall.
    let mut eta = if target > 1.0 {
        target + SQRT_2 * (3.0 - 6.0f64.sqrt())
    } else {
        (SQRT_2 * target * 3.0f64.sqrt()).sqrt()
    };
    for _ in 0..100 {
        let step = (f_closed(eta) - target) / fprime_closed(eta).max(1e-300);
        eta = (eta - step).max(0.0);
        if step.abs() < 1e-14 * eta.abs().max(1.0) {
            break;
        }
    }
    eta
}

/// Inverse stretching `η(Z)`.
pub fn eta_of_z(angle: f64, z: f64) -> f64 {
    eta_tilde_of_z(angle, z) / (angle / 2.0).sqrt()
}

/// `ω*(Z) = f′(η̃(Z))²`, the von Mises image of the slip profile.
pub fn omega_star_at(angle: f64, z: f64) -> f64 {
    let fp = fprime_closed(eta_tilde_of_z(angle, z));
    fp * fp
}

/// `dω*/dZ = 2√angle · f″` and `√ω*·d²ω*/dZ² = 2·angle·f‴` at `Z`.
pub fn omega_star_derivs(angle: f64, z: f64) -> (f64, f64) {
    let eta_t = eta_tilde_of_z(angle, z);
    (2.0 * angle.sqrt() * fpp_closed(eta_t), 2.0 * angle * fppp_closed(eta_t))
}

/// Errors from the shooting validator.
#[derive(Debug, Error)]
pub enum SimilarityError {
    #[error("shooting function does not change sign on f''(0) in [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },
}

/// Result of integrating the similarity problem by shooting.
#[derive(Debug, Clone)]
pub struct ShootingResult {
    /// Converged wall shear `f″(0)` (exact value `2/√3`).
    pub fpp0: f64,
    pub eta_tilde: Vec<f64>,
    pub f: Vec<f64>,
    pub fp: Vec<f64>,
    pub fpp: Vec<f64>,
}

/// Solve the similarity problem by bisection shooting on `f″(0)`.
///
/// Integrates `f‴ = (f′)² − 1` with fixed-step fourth-order Runge–Kutta
/// (`h = 1e−3`) and bisects `f″(0)` on `[0.5, 2.0]` against the sign of
/// `f′(η̃_max) − 1` (runaway trajectories are cut off at `|f′| > 10`).
///
/// The connecting trajectory is exponentially unstable (`e^{√2·η̃}`), so a
/// forward integration cannot hold the far field to round-off over a long
/// grid no matter how well `f″(0)` converged. The returned profile
/// therefore switches to the exact asymptote
/// `1 − f′ ∝ e^{−√2·η̃}` once the deficit falls below
/// [`tol::SIM_TAIL_SWITCH`], which caps the profile error near `2e−10`.
pub fn solve_fse_shooting(eta_max: f64, tol: f64) -> Result<ShootingResult, SimilarityError> {
    let h = 1e-3;
    let n = (eta_max / h).round() as usize;

    // One RK4 step of (f, f′, f″).
    let step = |y: [f64; 3]| -> [f64; 3] {
        let rhs = |y: [f64; 3]| [y[1], y[2], y[1] * y[1] - 1.0];
        let k1 = rhs(y);
        let k2 = rhs([y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1], y[2] + 0.5 * h * k1[2]]);
        let k3 = rhs([y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1], y[2] + 0.5 * h * k2[2]]);
        let k4 = rhs([y[0] + h * k3[0], y[1] + h * k3[1], y[2] + h * k3[2]]);
        [
            y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            y[2] + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
        ]
    };

    // Sign of f′(η̃_max) − 1 for a trial wall shear (with runaway cutoff).
    let overshoots = |c: f64| -> bool {
        let mut y = [0.0, 0.0, c];
        for _ in 0..n {
            y = step(y);
            if y[1].abs() > 10.0 {
                return y[1] > 0.0;
            }
        }
        y[1] > 1.0
    };

    let (mut lo, mut hi) = (0.5, 2.0);
    if overshoots(lo) || !overshoots(hi) {
        return Err(SimilarityError::BracketFailure { lo, hi });
    }
    // Bisect to the floating-point fixpoint: trajectory deviations are
    // amplified like e^{√2·η̃}, so any slack in the wall shear would
    // dominate the far-field profile. `tol` (≤ 1e−8 by contract) is
    // guaranteed a fortiori.
    debug_assert!(tol > 0.0 && tol <= 1e-8 + 1e-20, "tol contract violated: {tol}");
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if overshoots(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let fpp0 = 0.5 * (lo + hi);

    // Profile build: forward march, then the exact exponential asymptote.
    let mut eta_tilde = Vec::with_capacity(n + 1);
    let mut f = Vec::with_capacity(n + 1);
    let mut fp = Vec::with_capacity(n + 1);
    let mut fpp = Vec::with_capacity(n + 1);
    let mut y = [0.0, 0.0, fpp0];
    let mut switch: Option<(f64, f64, f64)> = None; // (η̃_m, f_m, d_m)
    for i in 0..=n {
        let et = i as f64 * h;
        let (fv, fpv, fppv) = match switch {
            None => {
                let d = 1.0 - y[1];
                if d <= tol::SIM_TAIL_SWITCH {
                    switch = Some((et, y[0], d));
                    (y[0], 1.0 - d, SQRT_2 * d)
                } else {
                    (y[0], y[1], y[2])
                }
            }
            Some((em, fm, dm)) => {
                let de = et - em;
                let d = dm * (-SQRT_2 * de).exp();
                (fm + de - dm * (1.0 - (-SQRT_2 * de).exp()) / SQRT_2, 1.0 - d, SQRT_2 * d)
            }
        };
        eta_tilde.push(et);
        f.push(fv);
        fp.push(fpv);
        fpp.push(fppv);
        if switch.is_none() && i < n {
            y = step(y);
        }
    }
    Ok(ShootingResult { fpp0, eta_tilde, f, fp, fpp })
}

/// Similarity profile rescaled to a wedge half-angle, with its von Mises
/// image on a graded grid.
#[derive(Debug, Clone)]
pub struct SimilarityProfile {
    /// Wedge half-angle entering the stretching `√(angle/2)`.
    pub angle: f64,
    /// Uniform physical grid `η ∈ [0, η_max]`.
    pub eta: Vec<f64>,
    /// Stretched nodes `η̃ = √(angle/2)·η`.
    pub eta_tilde: Vec<f64>,
    pub f: Vec<f64>,
    pub fp: Vec<f64>,
    pub fpp: Vec<f64>,
    /// Slip profile `A_p(η) = −½ f′(η̃)`.
    pub ap: Vec<f64>,
    /// Graded grid `Z_j = Z_max (j/N)²` clustered at the degenerate wall.
    pub z: Vec<f64>,
    /// `ω*(Z_j)`.
    pub omega_star: Vec<f64>,
}

/// Build the rescaled profile for one wedge half-angle.
///
/// All fields are filled from the closed form; the graded `Z`-grid
/// resolves the `√ω` degeneracy at the wall.
pub fn limit_profiles(angle: f64, eta_max: f64, n_eta: usize) -> SimilarityProfile {
    let k = (angle / 2.0).sqrt();
    let n = n_eta.max(2);
    let eta: Vec<f64> = (0..=n).map(|i| eta_max * i as f64 / n as f64).collect();
    let eta_tilde: Vec<f64> = eta.iter().map(|&e| k * e).collect();
    let f: Vec<f64> = eta_tilde.iter().map(|&et| f_closed(et)).collect();
    let fp: Vec<f64> = eta_tilde.iter().map(|&et| fprime_closed(et)).collect();
    let fpp: Vec<f64> = eta_tilde.iter().map(|&et| fpp_closed(et)).collect();
    let ap: Vec<f64> = fp.iter().map(|&v| -0.5 * v).collect();
    let z_max = f[n] / angle.sqrt();
    let z: Vec<f64> = (0..=n)
        .map(|j| {
            let t = j as f64 / n as f64;
            z_max * t * t
        })
        .collect();
    let omega_star: Vec<f64> = z.iter().map(|&zj| omega_star_at(angle, zj)).collect();
    SimilarityProfile { angle, eta, eta_tilde, f, fp, fpp, ap, z, omega_star }
}

impl SimilarityProfile {
    /// Wall-layer displacement moment by quadrature over the stored grid
    /// plus the analytic exponential tail beyond it.
    pub fn moment_on_grid(&self) -> f64 {
        let integrand: Vec<f64> = self.ap.iter().map(|&a| a + 0.5).collect();
        let d_last = integrand[integrand.len() - 1];
        let k = (self.angle / 2.0).sqrt();
        // (A_p + ½) ∝ e^{−√2·k·η} beyond the grid.
        trapz(&self.eta, &integrand) + d_last / (SQRT_2 * k)
    }
}
