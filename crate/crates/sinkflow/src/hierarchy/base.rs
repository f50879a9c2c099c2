// SPDX-License-Identifier: MIT OR Apache-2.0

//! Leading-layer fields resampled onto the expansion grid.
//!
//! The von Mises march delivers `u_p`, `v_p` on a per-station graded `Z`
//! grid whose physical thickness coordinate `η(X, Z)` differs from station
//! to station. The correction hierarchy instead works on a fixed tensor
//! grid: a subsampled set of stations (every `stride`-th march station, so
//! the spacing stays uniform) times one uniform `η` grid shared by all
//! stations. This module performs that resampling once and derives the
//! handful of leading-order fields every later order consumes:
//!
//! * `u_p`, `v_p` — cubic interpolation of the reconstructed fields in `η`;
//! * `u_p_ξ`, `u_p_η` — centred second-order differences on the fixed grid;
//! * `u_b0 = u_p + ½` — the decaying form of the leading layer;
//! * `Φ_b0(ξ, η) = ∫_η^∞ u_b0 dη′` with a fitted exponential tail, its wall
//!   trace (the quantity whose `ξ`-limits are the leading moments), and
//!   `v_b0 = ∂_ξΦ_b0`.

use crate::num::grid::Grid2;
use crate::num::interp::interp_cubic_many;
use crate::num::quad::{cumtrapz4_uniform, exp_tail_integral};
use crate::prandtl0::VonMisesField;

use super::HierarchyError;

/// Leading-order layer data on the fixed `(ξ, η)` expansion grid.
#[derive(Debug, Clone)]
pub(crate) struct LayerBase {
    /// Subsampled stations `ξ_i`, strictly decreasing, uniformly spaced.
    pub stations: Vec<f64>,
    /// Uniform thickness grid `η_j ∈ [0, η_max]`.
    pub eta: Vec<f64>,
    /// Grid spacings: `h_eta > 0`, and the signed station step
    /// `stations[1] − stations[0] = −d_xi`.
    pub h_eta: f64,
    pub d_xi: f64,
    pub u_p: Grid2,
    pub v_p: Grid2,
    pub u_p_xi: Grid2,
    pub u_p_eta: Grid2,
    pub u_b0: Grid2,
    pub phi_b0: Grid2,
    pub v_b0: Grid2,
    /// Wall trace `Φ_b0(ξ, 0)` per station.
    pub phi0_wall: Vec<f64>,
}

impl LayerBase {
    pub fn build(
        field: &VonMisesField,
        stride: usize,
        eta: Vec<f64>,
    ) -> Result<Self, HierarchyError> {
        let (u_full, v_full, eta_full) = match (field.u_p(), field.v_p(), field.eta_of_z()) {
            (Some(u), Some(v), Some(e)) => (u, v, e),
            _ => {
                return Err(HierarchyError::InvalidParams(
                    "leading layer must be reconstructed before building the hierarchy".into(),
                ))
            }
        };
        let x_full = field.x_grid();
        let rows: Vec<usize> = (0..x_full.len()).step_by(stride).collect();
        if rows.len() < 5 {
            return Err(HierarchyError::InvalidParams(format!(
                "station subsampling leaves {} stations; need at least 5",
                rows.len()
            )));
        }
        let stations: Vec<f64> = rows.iter().map(|&r| x_full[r]).collect();
        let d_xi = stations[0] - stations[1];

        let eta_span = eta_full.row(rows[0]).last().copied().unwrap_or(0.0);
        let eta_top = *eta.last().unwrap();
        if eta_top > eta_span {
            return Err(HierarchyError::InvalidParams(format!(
                "expansion grid reaches eta = {eta_top:.3} but the reconstructed layer \
                 only extends to {eta_span:.3}; lower eta_max_factor or raise the march Z range"
            )));
        }

        let (ns, ne) = (stations.len(), eta.len());
        let h_eta = eta[1] - eta[0];
        let mut u_p = Grid2::zeros(ns, ne);
        let mut v_p = Grid2::zeros(ns, ne);
        for (i, &r) in rows.iter().enumerate() {
            let e_row = eta_full.row(r);
            u_p.row_mut(i).copy_from_slice(&interp_cubic_many(e_row, u_full.row(r), &eta));
            v_p.row_mut(i).copy_from_slice(&interp_cubic_many(e_row, v_full.row(r), &eta));
        }

        let u_p_xi = u_p.deriv_rows(-d_xi);
        let u_p_eta = u_p.deriv_cols(h_eta);
        let u_b0 = u_p.map(|v| v + 0.5);
        let (phi_b0, phi0_wall) = integrate_decaying(&u_b0, &eta, h_eta);
        let v_b0 = phi_b0.deriv_rows(-d_xi);

        Ok(LayerBase {
            stations,
            eta,
            h_eta,
            d_xi,
            u_p,
            v_p,
            u_p_xi,
            u_p_eta,
            u_b0,
            phi_b0,
            v_b0,
            phi0_wall,
        })
    }
}

/// Row-wise `Φ(ξ, η) = ∫_η^∞ u dη′` for a decaying field, closing the part
/// beyond the grid with a fitted single-rate exponential tail. Returns the
/// grid and its wall trace `Φ(ξ, 0)`.
pub(crate) fn integrate_decaying(u: &Grid2, eta: &[f64], h: f64) -> (Grid2, Vec<f64>) {
    let (ns, ne) = (u.n_rows(), u.n_cols());
    let mut phi = Grid2::zeros(ns, ne);
    let mut wall = vec![0.0; ns];
    for i in 0..ns {
        let row = u.row(i);
        let cum = cumtrapz4_uniform(h, row);
        let total = cum[ne - 1] + exp_tail_integral(eta, row).0;
        let out = phi.row_mut(i);
        for j in 0..ne {
            out[j] = total - cum[j];
        }
        wall[i] = total;
    }
    (phi, wall)
}
