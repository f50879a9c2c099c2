// SPDX-License-Identifier: MIT OR Apache-2.0

//! Wall Taylor tables feeding the force-term evaluation.
//!
//! The force term needs two families of `ψ`-derivative traces at the lower
//! wall, each delivered as transverse-power tables indexed `[k][station]`:
//!
//! * **Metric family** `∂_ψ^k(J_ξ/J)`, `∂_ψ^k(J_ξξ/J)`, `∂_ψ^k(J_ψ/J)`,
//!   `∂_ψ^k(J_ψψ/J)` — reconstructed from just two wall columns of the
//!   chart, `L = ln J` and `L_ψ = J_ψ/J`, using the harmonicity of `ln J`
//!   on the strip: `∂_ψ²L = −∂_ξ²L` converts every transverse derivative
//!   into tangential differencing of wall data, and products of first
//!   derivatives close the quotient rules:
//!
//!   ```text
//!   J_ξ/J = L_ξ,     J_ξξ/J = L_ξξ + L_ξ²,
//!   J_ψ/J = L_ψ,     J_ψψ/J = L_ψψ + L_ψ²,
//!   ```
//!
//!   so `∂_ψ^k` of each follows by Leibniz from the chain
//!   `t_k = ∂_ψ^k L|_w`, `t_{k+2} = −t_k″`. The chain is differenced on
//!   the chart's own uniform `ξ` grid (where the data is smooth) and only
//!   then interpolated onto the stations.
//!
//! * **Potential family** `P^m_k = (1/Q)·∂_ψ^k Φ_e^m|_w` — seeded by the
//!   imposed wall value `P^m_0 = −Φ_b^{m−1}(ξ, 0)` and the solved normal
//!   derivative `P^m_1`, then closed transversely the same way
//!   (`P^m_{k+2} = −(P^m_k)″`, harmonic `Φ_e^m`), here differenced
//!   directly on the uniform station grid. First `ξ`-derivatives of every
//!   entry are tabulated alongside, because the boundary velocity
//!   reconstructions differentiate the tables tangentially as well.

use crate::conformal::StripFields;
use crate::num::interp::interp_cubic;

/// `ψ`-derivative tables of the four metric ratios at the lower wall,
/// indexed `[k][station]`; `laplace_ratio` is the sum table for
/// `(J_ξξ + J_ψψ)/J`.
#[derive(Debug, Clone)]
pub struct BoundaryTaylor {
    pub jxi_over_j: Vec<Vec<f64>>,
    pub jxixi_over_j: Vec<Vec<f64>>,
    pub jpsi_over_j: Vec<Vec<f64>>,
    pub jpsipsi_over_j: Vec<Vec<f64>>,
    pub laplace_ratio: Vec<Vec<f64>>,
}

/// Centred first difference with one-sided second-order ends. The step may
/// be signed (decreasing grids pass a negative `h`).
fn d1(v: &[f64], h: f64) -> Vec<f64> {
    let n = v.len();
    let mut out = vec![0.0; n];
    out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for i in 1..n - 1 {
        out[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    }
    out[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    out
}

/// Three-point second difference with copied-in one-sided ends.
fn d2(v: &[f64], h: f64) -> Vec<f64> {
    let n = v.len();
    let h2 = h * h;
    let mut out = vec![0.0; n];
    for i in 1..n - 1 {
        out[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
    }
    out[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
    out[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
    out
}

fn binomial(k: usize, i: usize) -> f64 {
    let mut c = 1.0;
    for t in 0..i {
        c = c * (k - t) as f64 / (t + 1) as f64;
    }
    c
}

/// Leibniz product table: `out[k] = Σ_i C(k,i)·a[i]⊙b[k−i]`.
fn leibniz(a: &[Vec<f64>], b: &[Vec<f64>], k: usize) -> Vec<f64> {
    let n = a[0].len();
    let mut out = vec![0.0; n];
    for i in 0..=k {
        let c = binomial(k, i);
        let (ai, bk) = (&a[i], &b[k - i]);
        for p in 0..n {
            out[p] += c * ai[p] * bk[p];
        }
    }
    out
}

fn interp_to_stations(chart_xi: &[f64], vals: &[f64], stations: &[f64]) -> Vec<f64> {
    stations.iter().map(|&x| interp_cubic(chart_xi, vals, x)).collect()
}

/// Build the metric tables to transverse depth `k = 0..=depth` on the
/// station grid.
pub(crate) fn boundary_taylor(
    strip: &StripFields,
    stations: &[f64],
    depth: usize,
) -> BoundaryTaylor {
    let xi = &strip.xi_grid;
    let h = xi[1] - xi[0];
    let n = xi.len();

    // Transverse chain of ln J at the wall.
    let mut t: Vec<Vec<f64>> = Vec::with_capacity(depth + 3);
    t.push((0..n).map(|i| strip.ln_j.at(i, 0)).collect());
    t.push((0..n).map(|i| strip.j_psi_over_j.at(i, 0)).collect());
    for k in 0..depth + 1 {
        let next: Vec<f64> = d2(&t[k], h).iter().map(|&v| -v).collect();
        t.push(next);
    }
    let t_xi: Vec<Vec<f64>> = t.iter().map(|tk| d1(tk, h)).collect();

    let mut g1 = Vec::with_capacity(depth + 1);
    let mut g2 = Vec::with_capacity(depth + 1);
    let mut g3 = Vec::with_capacity(depth + 1);
    let mut g4 = Vec::with_capacity(depth + 1);
    let mut g24 = Vec::with_capacity(depth + 1);
    let t_shift = &t[1..];
    for k in 0..=depth {
        let lxi_sq = leibniz(&t_xi, &t_xi, k);
        let lpsi_sq = leibniz(t_shift, t_shift, k);
        let g2k: Vec<f64> = (0..n).map(|p| -t[k + 2][p] + lxi_sq[p]).collect();
        let g4k: Vec<f64> = (0..n).map(|p| t[k + 2][p] + lpsi_sq[p]).collect();
        let g24k: Vec<f64> = (0..n).map(|p| lxi_sq[p] + lpsi_sq[p]).collect();
        g1.push(interp_to_stations(xi, &t_xi[k], stations));
        g2.push(interp_to_stations(xi, &g2k, stations));
        g3.push(interp_to_stations(xi, &t[k + 1], stations));
        g4.push(interp_to_stations(xi, &g4k, stations));
        g24.push(interp_to_stations(xi, &g24k, stations));
    }

    BoundaryTaylor {
        jxi_over_j: g1,
        jxixi_over_j: g2,
        jpsi_over_j: g3,
        jpsipsi_over_j: g4,
        laplace_ratio: g24,
    }
}

/// Potential tables `P^m_k` and their tangential derivatives `(P^m_k)′`,
/// indexed `[order][k][station]`.
#[derive(Debug, Clone)]
pub(crate) struct PotentialTables {
    pub p: Vec<Vec<Vec<f64>>>,
    pub dp: Vec<Vec<Vec<f64>>>,
    depth: usize,
    h: f64,
}

impl PotentialTables {
    /// Start the ladder with the leading potential: `P^0_0 = −½`,
    /// `P^0_1 = +½`, all higher entries zero.
    pub fn leading(n_stations: usize, depth: usize, signed_h: f64) -> Self {
        let mut tables =
            PotentialTables { p: Vec::new(), dp: Vec::new(), depth, h: signed_h };
        tables.push_order(
            vec![-0.5; n_stations],
            vec![0.5; n_stations],
        );
        tables
    }

    /// Append order `m` from its two wall seeds: `p0 = −Φ_b^{m−1}(ξ, 0)` and
    /// the solved `p1 = (1/Q)·∂_ψΦ_e^m|_w`, both on the station grid.
    pub fn push_order(&mut self, p0: Vec<f64>, p1: Vec<f64>) {
        let mut chain: Vec<Vec<f64>> = Vec::with_capacity(self.depth + 1);
        chain.push(p0);
        chain.push(p1);
        for k in 0..self.depth.saturating_sub(1) {
            let next: Vec<f64> = d2(&chain[k], self.h).iter().map(|&v| -v).collect();
            chain.push(next);
        }
        let dchain: Vec<Vec<f64>> = chain.iter().map(|c| d1(c, self.h)).collect();
        self.p.push(chain);
        self.dp.push(dchain);
    }

    /// Number of orders held (order indices `0..orders`).
    pub fn orders(&self) -> usize {
        self.p.len()
    }
}

// ═══════════════════════════════════════════════════════════════════════════
// Tests
// ═══════════════════════════════════════════════════════════════════════════

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_difference_kernels_are_exact_on_polynomials() {
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(5, 0), 1.0);
        assert_eq!(binomial(5, 5), 1.0);

        // d1/d2 are exact on quadratics, including the one-sided ends.
        let h = 0.1;
        let xs: Vec<f64> = (0..9).map(|i| i as f64 * h).collect();
        let v: Vec<f64> = xs.iter().map(|&x| 2.0 - 3.0 * x + 0.5 * x * x).collect();
        let dv = d1(&v, h);
        let ddv = d2(&v, h);
        for (i, &x) in xs.iter().enumerate() {
            assert!((dv[i] - (-3.0 + x)).abs() < 1e-12);
            assert!((ddv[i] - 1.0).abs() < 1e-11);
        }

        // A signed step flips first derivatives only.
        let rev: Vec<f64> = v.iter().rev().copied().collect();
        let drev = d1(&rev, -h);
        for i in 0..xs.len() {
            assert!((drev[i] - dv[xs.len() - 1 - i]).abs() < 1e-12);
        }
    }

    #[test]
    fn potential_ladder_keeps_leading_constants() {
        let t = PotentialTables::leading(12, 5, -0.04);
        assert_eq!(t.orders(), 1);
        assert!(t.p[0][0].iter().all(|&v| v == -0.5));
        assert!(t.p[0][1].iter().all(|&v| v == 0.5));
        for k in 2..=5 {
            assert!(t.p[0][k].iter().all(|&v| v == 0.0), "P^0_{k} must vanish");
        }
        for k in 0..=5 {
            assert!(t.dp[0][k].iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn harmonic_closure_reproduces_an_analytic_harmonic_function() {
        // Φ = e^{λξ}·sin(λ(ψ+1))/λ is harmonic in (ξ, ψ̃ = ψ+1) with
        // ∂_ψ^k Φ|_{ψ=−1} alternating between e^{λξ}λ^{k−1}·{0, 1, 0, −λ², …}.
        let lam = 0.7_f64;
        let n = 101;
        let h = -0.03_f64;
        let xs: Vec<f64> = (0..n).map(|i| 1.0 + i as f64 * h).collect();
        let p0: Vec<f64> = xs.iter().map(|&x| 0.0 * x).collect();
        let p1: Vec<f64> = xs.iter().map(|&x| (lam * x).exp()).collect();
        let mut t = PotentialTables::leading(n, 5, h);
        t.push_order(p0, p1);
        // P^1_3 = −(P^1_1)″ = −λ²e^{λξ}; check away from the one-sided ends.
        for i in 2..n - 2 {
            let want = -lam * lam * (lam * xs[i]).exp();
            let got = t.p[1][3][i];
            assert!(
                (got - want).abs() < 2e-4 * want.abs(),
                "closure at station {i}: {got:.6e} vs {want:.6e}"
            );
            let dwant = -lam * lam * lam * (lam * xs[i]).exp();
            assert!((t.dp[1][3][i] - dwant).abs() < 2e-4 * dwant.abs());
        }
    }
}
