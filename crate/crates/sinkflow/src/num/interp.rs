// SPDX-License-Identifier: MIT OR Apache-2.0

//! One-dimensional interpolation on monotone grids.
//!
//! Profiles in this crate live on strictly increasing (sometimes graded)
//! grids and are smooth away from walls, so 4-point Lagrange interpolation
//! gives `O(h⁴)` accuracy without the global coupling of splines. For
//! monotone profiles we also need the inverse map (find `x` with
//! `f(x) = y`), done by bracketing plus local polynomial refinement.

/// Index of the left grid node of the interval containing `x`.
///
/// For `x` outside `[xs[0], xs[n-1]]` returns the first / last interval so
/// callers extrapolate with the boundary stencil.
#[inline]
pub fn bracket(xs: &[f64], x: f64) -> usize {
    debug_assert!(xs.len() >= 2);
    match xs.partition_point(|&v| v <= x) {
        0 => 0,
        p if p >= xs.len() => xs.len() - 2,
        p => p - 1,
    }
}

/// 4-point Lagrange interpolation of `ys` at `x` (3-point near the ends).
///
/// `xs` must be strictly increasing with at least two nodes.
pub fn interp_cubic(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n == 2 {
        let t = (x - xs[0]) / (xs[1] - xs[0]);
        return ys[0] * (1.0 - t) + ys[1] * t;
    }
    if n == 3 {
        return lagrange(&xs[0..3], &ys[0..3], x);
    }
    let i = bracket(xs, x);
    // Center a 4-node stencil on the interval [i, i+1].
    let lo = i.saturating_sub(1).min(n - 4);
    lagrange(&xs[lo..lo + 4], &ys[lo..lo + 4], x)
}

/// Interpolate many values (same grid, repeated calls).
pub fn interp_cubic_many(xs: &[f64], ys: &[f64], targets: &[f64]) -> Vec<f64> {
    targets.iter().map(|&x| interp_cubic(xs, ys, x)).collect()
}

fn lagrange(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for (j, (&xj, &yj)) in xs.iter().zip(ys).enumerate() {
        let mut w = 1.0;
        for (k, &xk) in xs.iter().enumerate() {
            if k != j {
                w *= (x - xk) / (xj - xk);
            }
        }
        acc += w * yj;
    }
    acc
}

/// Solve `f(x) = y` for a strictly monotone sampled function.
///
/// `ys` may be increasing or decreasing. The root is bracketed by binary
/// search on the samples, then refined by inverse cubic interpolation
/// (interpolating `x` as a function of `y` on the 4-node stencil), which is
/// exact when the underlying function is smooth to `O(h⁴)`.
///
/// Returns `None` if `y` lies outside the sampled range.
pub fn invert_monotone(xs: &[f64], ys: &[f64], y: f64) -> Option<f64> {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 2 {
        return None;
    }
    let increasing = ys[n - 1] > ys[0];
    let (lo_v, hi_v) = if increasing { (ys[0], ys[n - 1]) } else { (ys[n - 1], ys[0]) };
    if y < lo_v || y > hi_v {
        return None;
    }
    // Binary search for the containing interval.
    let (mut a, mut b) = (0usize, n - 1);
    while b - a > 1 {
        let m = (a + b) / 2;
        let above = if increasing { ys[m] <= y } else { ys[m] >= y };
        if above {
            a = m;
        } else {
            b = m;
        }
    }
    if n < 4 {
        let t = (y - ys[a]) / (ys[b] - ys[a]);
        return Some(xs[a] * (1.0 - t) + xs[b] * t);
    }
    let lo = a.saturating_sub(1).min(n - 4);
    // Inverse interpolation: roles of x and y swapped. Valid because ys is
    // strictly monotone on the stencil.
    let ys_sten = &ys[lo..lo + 4];
    let xs_sten = &xs[lo..lo + 4];
    Some(lagrange(ys_sten, xs_sten, y))
}

/// Derivative of the degree-`(n−1)` Lagrange interpolant through
/// `(xs, ys)` evaluated at `x` (intended for small stencils, `n ≤ 5`).
pub fn poly_deriv_at(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    let mut acc = 0.0;
    for (j, (&xj, &yj)) in xs.iter().zip(ys).enumerate() {
        let mut lj = 0.0;
        for (m, &xm) in xs.iter().enumerate() {
            if m == j {
                continue;
            }
            let mut term = 1.0 / (xj - xm);
            for (k, &xk) in xs.iter().enumerate() {
                if k != j && k != m {
                    term *= (x - xk) / (xj - xk);
                }
            }
            lj += term;
        }
        acc += lj * yj;
    }
    acc
}

/// Derivative of sampled data at every node, via 5-point local Lagrange
/// stencils (clamped at the ends; lower degree when fewer nodes exist).
///
/// On uniform grids the interior stencil reduces to the classical
/// fourth-order formula `(−f[i+2] + 8f[i+1] − 8f[i−1] + f[i−2]) / (12h)`;
/// the same code handles mildly graded grids at third-to-fourth order.
pub fn deriv_samples(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let w = n.min(5);
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(2).min(n - w);
            poly_deriv_at(&xs[lo..lo + w], &ys[lo..lo + w], xs[i])
        })
        .collect()
}

/// Cubic Hermite segment with analytic evaluation and derivative.
///
/// Fits value and first derivative at both ends of `[x0, x1]`; used where a
/// function and its derivative are both tabulated and a differentiable
/// local model is needed (for example arc-length reparametrization with
/// Newton refinement).
#[derive(Debug, Clone, Copy)]
pub struct HermiteSegment {
    x0: f64,
    h: f64,
    y0: f64,
    y1: f64,
    d0: f64,
    d1: f64,
}

impl HermiteSegment {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64, d0: f64, d1: f64) -> Self {
        Self { x0, h: x1 - x0, y0, y1, d0, d1 }
    }

    /// Value at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let t = (x - self.x0) / self.h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.y0 + h10 * self.h * self.d0 + h01 * self.y1 + h11 * self.h * self.d1
    }

    /// Derivative `dy/dx` at `x`.
    pub fn deriv(&self, x: f64) -> f64 {
        let t = (x - self.x0) / self.h;
        let t2 = t * t;
        let dh00 = 6.0 * t2 - 6.0 * t;
        let dh10 = 3.0 * t2 - 4.0 * t + 1.0;
        let dh01 = -6.0 * t2 + 6.0 * t;
        let dh11 = 3.0 * t2 - 2.0 * t;
        (dh00 * self.y0 + dh01 * self.y1) / self.h + dh10 * self.d0 + dh11 * self.d1
    }

    /// Solve `eval(x) = y` by Newton from the midpoint, with bisection
    /// safeguarding inside `[x0, x1]`. Requires the segment be monotone,
    /// which holds when both end derivatives share the sign of `y1 − y0`.
    pub fn invert(&self, y: f64, iters: usize, tol: f64) -> f64 {
        let (mut lo, mut hi) = (self.x0, self.x0 + self.h);
        let increasing = self.y1 > self.y0;
        let mut x = 0.5 * (lo + hi);
        for _ in 0..iters {
            let f = self.eval(x) - y;
            if (f > 0.0) == increasing {
                hi = x;
            } else {
                lo = x;
            }
            let d = self.deriv(x);
            let mut step = if d != 0.0 { -f / d } else { 0.0 };
            let mut xn = x + step;
            if !(lo..=hi).contains(&xn) {
                xn = 0.5 * (lo + hi);
                step = xn - x;
            }
            x = xn;
            if step.abs() < tol {
                break;
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_is_exact_on_cubics() {
        let xs: Vec<f64> = (0..20).map(|i| 0.1 * i as f64).collect();
        let f = |x: f64| 1.0 - 2.0 * x + 0.5 * x * x - 0.25 * x * x * x;
        let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        for &x in &[0.05, 0.317, 1.0, 1.84, 1.95] {
            assert!((interp_cubic(&xs, &ys, x) - f(x)).abs() < 1e-13);
        }
    }

    #[test]
    fn cubic_converges_fourth_order() {
        let f = |x: f64| (1.3 * x).sin();
        let err = |n: usize| {
            let xs: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
            let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
            (0..200)
                .map(|k| {
                    let x = 0.15 + 0.7 * k as f64 / 199.0;
                    (interp_cubic(&xs, &ys, x) - f(x)).abs()
                })
                .fold(0.0_f64, f64::max)
        };
        let (e1, e2) = (err(33), err(65));
        let order = (e1 / e2).log2();
        assert!(order > 3.5, "observed order {order}");
    }

    #[test]
    fn node_derivatives_are_fourth_order() {
        let f = |x: f64| (0.9 * x).cos();
        let fp = |x: f64| -0.9 * (0.9 * x).sin();
        let err = |n: usize| {
            let xs: Vec<f64> = (0..n).map(|i| 2.0 * i as f64 / (n - 1) as f64).collect();
            let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
            let ds = deriv_samples(&xs, &ys);
            xs.iter().zip(&ds).map(|(&x, &d)| (d - fp(x)).abs()).fold(0.0_f64, f64::max)
        };
        let (e1, e2) = (err(41), err(81));
        assert!((e1 / e2).log2() > 3.5, "observed order {}", (e1 / e2).log2());
        // Exact on quartics (degree-4 interpolant).
        let xs: Vec<f64> = (0..9).map(|i| 0.3 * i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| x.powi(4) - x * x + 2.0).collect();
        let ds = deriv_samples(&xs, &ys);
        for (&x, &d) in xs.iter().zip(&ds) {
            assert!((d - (4.0 * x.powi(3) - 2.0 * x)).abs() < 1e-11);
        }
    }

    #[test]
    fn inversion_round_trips() {
        let xs: Vec<f64> = (0..50).map(|i| 0.05 * i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| x + 0.3 * x.sin()).collect();
        for &x_true in &[0.123_f64, 0.9, 1.77, 2.3] {
            let y = x_true + 0.3 * x_true.sin();
            let x = invert_monotone(&xs, &ys, y).unwrap();
            assert!((x - x_true).abs() < 1e-8, "x={x} vs {x_true}");
        }
        // Decreasing branch.
        let yd: Vec<f64> = xs.iter().map(|&x| 2.0 - x * x * 0.3).collect();
        let x = invert_monotone(&xs, &yd, 2.0 - 0.3 * 1.21).unwrap();
        assert!((x - 1.1).abs() < 1e-9);
        assert!(invert_monotone(&xs, &ys, -1.0).is_none());
    }

    #[test]
    fn hermite_matches_cubic_exactly() {
        // A cubic is reproduced exactly by Hermite data at the ends.
        let f = |x: f64| 2.0 + x - x * x + 0.5 * x * x * x;
        let fp = |x: f64| 1.0 - 2.0 * x + 1.5 * x * x;
        let seg = HermiteSegment::new(1.0, 2.0, f(1.0), f(2.0), fp(1.0), fp(2.0));
        for &x in &[1.0, 1.25, 1.6, 2.0] {
            assert!((seg.eval(x) - f(x)).abs() < 1e-14);
            assert!((seg.deriv(x) - fp(x)).abs() < 1e-13);
        }
        let y = f(1.37);
        let x = seg.invert(y, 40, 1e-15);
        assert!((x - 1.37).abs() < 1e-12);
    }
}
