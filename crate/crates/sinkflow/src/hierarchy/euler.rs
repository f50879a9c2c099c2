// SPDX-License-Identifier: MIT OR Apache-2.0

//! Harmonic Euler corrections on the truncated strip.
//!
//! Each correction order `m` carries an outer stream-function update
//! `Φ_e^m(ξ, ψ)` solving the Laplace problem whose wall data is the
//! displacement of the order-`m−1` wall layer:
//!
//! ```text
//! ΔΦ_e^m = 0,   Φ_e^m(ξ, ±1) = ±Q·Φ_b^{m−1}(ξ, 0),
//! Φ_e^m(±L, ψ) = Q·I^{m−1,±}·ψ,
//! ```
//!
//! with `I^{m−1,±}` the `ξ`-limits of the wall trace. The layer trace is
//! known on the (shorter) station window; beyond it the data is extended by
//! its end values, which makes the far edges and the wall data agree at the
//! corners. The solve reuses the conformal module's rectangle kernel with
//! unit wall angle and vanishing log-derivative, which reduces its operator
//! to the plain five-point Laplacian; the grid is the chart's own `(ξ, ψ)`
//! tensor grid, so `66 049` nodes stay well inside the direct banded path.
//!
//! Besides the field itself, the solve hands back the two wall seeds the
//! potential tables grow from: the imposed trace (sign flipped) and the
//! one-sided second-order normal derivative `(1/Q)·∂_ψΦ_e^m` at the wall,
//! interpolated onto the stations.

use crate::conformal::strip::{residual_inf, solve_rect, RectMethod, RectProblem};
use crate::conformal::StripFields;
use crate::num::grid::Grid2;
use crate::num::interp::interp_cubic;

use super::HierarchyError;

/// One solved Euler correction order.
#[derive(Debug, Clone)]
pub(crate) struct EulerOrder {
    /// `Φ_e^m` on the chart `(ξ, ψ)` grid.
    pub phi_e: Grid2,
    /// Interior five-point residual of the solve.
    pub residual: f64,
    /// Wall data actually imposed, on the chart `ξ` grid (station trace with
    /// constant extension beyond the window).
    pub trace_chart: Vec<f64>,
    /// `(1/Q)·∂_ψΦ_e^m|_{ψ=−1}` on the chart `ξ` grid.
    pub p1_chart: Vec<f64>,
    /// The same normal derivative sampled at the stations — the wall trace
    /// of the order-`m` layer.
    pub p1_stations: Vec<f64>,
}

/// Solve the order-`m` correction for a given wall trace `Φ_b^{m−1}(ξ, 0)`
/// on the (decreasing) station grid.
pub(crate) fn euler_correction(
    strip: &StripFields,
    stations: &[f64],
    trace: &[f64],
    q: f64,
) -> Result<EulerOrder, HierarchyError> {
    assert_eq!(stations.len(), trace.len());
    let xi = &strip.xi_grid;
    let psi = &strip.psi_grid;
    let (nt, ns) = (xi.len(), psi.len());

    // Stations run downstream (decreasing ξ); interpolation wants them
    // ascending.
    let stations_inc: Vec<f64> = stations.iter().rev().copied().collect();
    let trace_inc: Vec<f64> = trace.iter().rev().copied().collect();
    let (x_lo, x_hi) = (stations_inc[0], *stations_inc.last().unwrap());
    let (i_minus, i_plus) = (trace_inc[0], *trace_inc.last().unwrap());

    let trace_chart: Vec<f64> = xi
        .iter()
        .map(|&x| {
            if x <= x_lo {
                i_minus
            } else if x >= x_hi {
                i_plus
            } else {
                interp_cubic(&stations_inc, &trace_inc, x)
            }
        })
        .collect();

    let edge = Grid2::from_fn(nt, ns, |i, j| {
        if j == 0 {
            -q * trace_chart[i]
        } else if j == ns - 1 {
            q * trace_chart[i]
        } else if i == 0 {
            q * i_minus * psi[j]
        } else if i == nt - 1 {
            q * i_plus * psi[j]
        } else {
            0.0
        }
    });

    let unit = vec![1.0; nt];
    let zero = vec![0.0; nt];
    let problem = RectProblem { tau: xi, sigma: psi, u: &unit, a: &zero, ap: &zero };
    let rhs = Grid2::zeros(nt, ns);
    let phi_e = solve_rect(&problem, &rhs, Some(&edge), RectMethod::Auto)
        .map_err(|source| HierarchyError::NoConvergence { stage: "euler correction", source })?;
    let residual = residual_inf(&problem, &rhs, &phi_e);

    let h_psi = psi[1] - psi[0];
    let p1_chart: Vec<f64> = (0..nt)
        .map(|i| {
            (-3.0 * phi_e.at(i, 0) + 4.0 * phi_e.at(i, 1) - phi_e.at(i, 2)) / (2.0 * h_psi * q)
        })
        .collect();
    let p1_stations: Vec<f64> =
        stations.iter().map(|&x| interp_cubic(xi, &p1_chart, x)).collect();

    Ok(EulerOrder { phi_e, residual, trace_chart, p1_chart, p1_stations })
}

// ═══════════════════════════════════════════════════════════════════════════
// Tests
// ═══════════════════════════════════════════════════════════════════════════

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;
    use std::sync::OnceLock;

    use crate::conformal::{build_chart, ChartParams, ConformalMap};
    use crate::geometry::{make_curve, CurveKind};
    use crate::testutil::default_chart;
    use crate::tol;

    use super::*;

    /// Straight-wedge chart at a reduced resolution — metric identities are
    /// exact there, so coarse grids suffice.
    pub(crate) fn straight_chart() -> &'static ConformalMap {
        static CHART: OnceLock<ConformalMap> = OnceLock::new();
        CHART.get_or_init(|| {
            let beta = PI / 3.0;
            let curve = make_curve(CurveKind::StraightWedge, beta, beta, 1.0).unwrap();
            let params = ChartParams {
                t_max: 16.0,
                n_t: 901,
                n_sigma: 41,
                strip_half_length: None,
                n_xi: 385,
                n_psi: 65,
            };
            build_chart(&curve, &params).unwrap()
        })
    }

    fn stations_for(strip: &StripFields) -> Vec<f64> {
        let l = strip.xi_grid.last().unwrap();
        let x0 = l - 1.0;
        let n = (2.0 * x0 / 0.04).round() as usize;
        (0..=n).map(|i| x0 - i as f64 * 0.04).collect()
    }

    #[test]
    fn constant_trace_yields_the_exact_linear_field() {
        let strip = straight_chart().strip().unwrap();
        let stations = stations_for(strip);
        let c0 = 0.7;
        let q = 1.3;
        let trace = vec![c0; stations.len()];
        let sol = euler_correction(strip, &stations, &trace, q).unwrap();

        // Harmonic with data Q·c0·ψ on the whole boundary: the discrete
        // solution is that linear function to solver accuracy.
        let mut worst = 0.0_f64;
        for i in 0..strip.xi_grid.len() {
            for j in 0..strip.psi_grid.len() {
                worst = worst.max((sol.phi_e.at(i, j) - q * c0 * strip.psi_grid[j]).abs());
            }
        }
        assert!(worst < 1e-9, "deviation from linear solution {worst:.3e}");
        // One-sided differencing of an exactly linear field is exact.
        for v in &sol.p1_stations {
            assert!((v - c0).abs() < 1e-9);
        }
        assert!(sol.residual < 1e-9);
    }

    #[test]
    fn smoothed_trace_correction_is_odd_and_localized() {
        let chart = default_chart();
        let strip = chart.strip().unwrap();
        let stations = stations_for(strip);
        // A saturating synthetic trace with the shape of a displacement
        // moment transitioning between its two wedge limits.
        let trace: Vec<f64> =
            stations.iter().map(|&x| 0.65 + 0.11 * (x / 3.0).tanh()).collect();
        let q = 1.0;
        let sol = euler_correction(strip, &stations, &trace, q).unwrap();

        let (nt, ns) = (strip.xi_grid.len(), strip.psi_grid.len());
        // Antisymmetric data on a symmetric grid: odd in ψ to rounding.
        let scale = sol.phi_e.max_abs();
        let mut odd = 0.0_f64;
        for i in 0..nt {
            for j in 0..ns {
                odd = odd.max((sol.phi_e.at(i, j) + sol.phi_e.at(i, ns - 1 - j)).abs());
            }
        }
        assert!(odd < tol::HIER_ODD_SYMMETRY * scale, "odd defect {odd:.3e}");

        // The deviation from the locally-linear profile Q·trace(ξ)·ψ is
        // largest where the trace varies and decays toward the truncation
        // edges, where the data is constant.
        let dev = |i: usize| {
            (0..ns)
                .map(|j| (sol.phi_e.at(i, j) - q * sol.trace_chart[i] * strip.psi_grid[j]).abs())
                .fold(0.0_f64, f64::max)
        };
        let dev_max = (0..nt).map(dev).fold(0.0_f64, f64::max);
        let edge_band = nt / 16;
        let dev_edge = (0..nt)
            .filter(|&i| i < edge_band || i >= nt - edge_band)
            .map(dev)
            .fold(0.0_f64, f64::max);
        assert!(
            dev_edge < 0.05 * dev_max,
            "correction not localized: edge {dev_edge:.3e} vs max {dev_max:.3e}"
        );
        // Beyond the station window the imposed data holds the end values.
        assert!((sol.trace_chart[0] - trace.last().unwrap()).abs() < 1e-14);
        assert!((sol.trace_chart[nt - 1] - trace[0]).abs() < 1e-14);
    }
}
