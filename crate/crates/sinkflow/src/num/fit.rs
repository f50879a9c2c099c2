// SPDX-License-Identifier: MIT OR Apache-2.0

//! Least-squares fits for convergence-rate and decay-rate diagnostics.
//!
//! Every asymptotic claim verified in this crate reduces to "this quantity
//! scales like `x^p`" or "like `e^{−c·t}`", checked by a straight-line fit
//! in the appropriate log coordinates. Confidence half-widths use the
//! two-sided 95% Student-t quantile so that sweeps with as few as four
//! points still report honest uncertainty.

/// Two-sided 97.5% Student-t quantiles for 1–30 degrees of freedom.
const T_975: [f64; 30] = [
    12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
    2.201, 2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
    2.080, 2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042,
];

/// 97.5% t-quantile for `dof` degrees of freedom (normal limit beyond 30).
pub fn t_quantile_975(dof: usize) -> f64 {
    if dof == 0 {
        f64::INFINITY
    } else if dof <= 30 {
        T_975[dof - 1]
    } else {
        1.96
    }
}

/// Straight-line least squares `y ≈ a + b·x`, returning `(a, b)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let b = sxy / sxx;
    (my - b * mx, b)
}

/// Result of a straight-line fit with a 95% confidence half-width on the
/// slope.
#[derive(Debug, Clone, Copy)]
pub struct SlopeFit {
    pub intercept: f64,
    pub slope: f64,
    /// Half-width of the two-sided 95% confidence interval for the slope;
    /// zero when there are only two points (no residual degrees of freedom).
    pub slope_ci95: f64,
}

/// Straight-line fit with slope confidence interval.
pub fn linear_fit_ci(xs: &[f64], ys: &[f64]) -> SlopeFit {
    let (a, b) = linear_fit(xs, ys);
    let n = xs.len();
    if n <= 2 {
        return SlopeFit { intercept: a, slope: b, slope_ci95: 0.0 };
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|&x| (x - mx) * (x - mx)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let r = y - (a + b * x);
            r * r
        })
        .sum();
    let dof = n - 2;
    let se = (ss_res / dof as f64 / sxx).sqrt();
    SlopeFit { intercept: a, slope: b, slope_ci95: t_quantile_975(dof) * se }
}

/// Slope of `ln y` against `ln x` (power-law exponent). All inputs must be
/// strictly positive.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> SlopeFit {
    let lx: Vec<f64> = xs.iter().map(|&x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|&y| y.ln()).collect();
    linear_fit_ci(&lx, &ly)
}

/// Exponential model `y ≈ sign · amplitude · e^{−rate·t}` fitted through
/// `ln |y|`.
#[derive(Debug, Clone, Copy)]
pub struct ExpFit {
    pub amplitude: f64,
    /// Decay rate; positive means the samples shrink as `t` grows.
    pub rate: f64,
    pub rate_ci95: f64,
}

/// Fit a single exponential to samples of constant sign.
///
/// Returns `None` when fewer than three samples remain or any sample is
/// zero / of inconsistent sign (the log-linear model would be meaningless).
pub fn fit_exp_rate(ts: &[f64], ys: &[f64]) -> Option<ExpFit> {
    debug_assert_eq!(ts.len(), ys.len());
    if ts.len() < 3 {
        return None;
    }
    let sign = ys[0].signum();
    if sign == 0.0 || ys.iter().any(|&y| y == 0.0 || y.signum() != sign) {
        return None;
    }
    let ly: Vec<f64> = ys.iter().map(|&y| y.abs().ln()).collect();
    let fit = linear_fit_ci(ts, &ly);
    Some(ExpFit { amplitude: fit.intercept.exp(), rate: -fit.slope, rate_ci95: fit.slope_ci95 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_power_law() {
        let xs = [1e-4, 3e-4, 1e-3, 3e-3, 1e-2];
        let ys: Vec<f64> = xs.iter().map(|&x: &f64| 2.7 * x.powf(1.5)).collect();
        let fit = loglog_slope(&xs, &ys);
        assert!((fit.slope - 1.5).abs() < 1e-12);
        assert!(fit.slope_ci95 < 1e-10);
    }

    #[test]
    fn recovers_exponential_decay() {
        let ts: Vec<f64> = (0..40).map(|i| 0.25 * i as f64).collect();
        let ys: Vec<f64> = ts.iter().map(|&t| -0.8 * (-1.3 * t).exp()).collect();
        let fit = fit_exp_rate(&ts, &ys).unwrap();
        assert!((fit.rate - 1.3).abs() < 1e-12);
        assert!((fit.amplitude - 0.8).abs() < 1e-12);
    }

    #[test]
    fn rejects_sign_changes() {
        let ts = [0.0, 1.0, 2.0, 3.0];
        let ys = [1.0, -0.5, 0.25, -0.125];
        assert!(fit_exp_rate(&ts, &ys).is_none());
    }

    #[test]
    fn confidence_interval_covers_noise() {
        // Noisy slope-2 data: CI must contain the true slope.
        let xs: Vec<f64> = (0..12).map(|i| 0.3 * i as f64).collect();
        let mut state = 42_u64;
        let mut noise = || {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1);
            (((state >> 33) as f64) / (u32::MAX as f64) - 0.5) * 0.05
        };
        let ys: Vec<f64> = xs.iter().map(|&x| 1.0 + 2.0 * x + noise()).collect();
        let fit = linear_fit_ci(&xs, &ys);
        assert!((fit.slope - 2.0).abs() < fit.slope_ci95);
        assert!(fit.slope_ci95 < 0.1);
    }

    #[test]
    fn t_table_limits() {
        assert!((t_quantile_975(1) - 12.706).abs() < 1e-12);
        assert!((t_quantile_975(30) - 2.042).abs() < 1e-12);
        assert!((t_quantile_975(1000) - 1.96).abs() < 1e-12);
    }
}
