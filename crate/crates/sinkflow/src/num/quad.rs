// SPDX-License-Identifier: MIT OR Apache-2.0

//! Quadrature on sampled data.
//!
//! Besides plain (cumulative) trapezoid rules this module provides a
//! fourth-order *corrected* cumulative trapezoid: coordinate constructions
//! in this crate integrate fields that were themselves produced by a
//! second-order solve, and the plain trapezoid's `O(h²)` bias would
//! dominate every downstream identity check. The corrected rule
//!
//! ```text
//! I[i+1] = I[i] + h/24 · (−f[i−1] + 13 f[i] + 13 f[i+1] − f[i+2])
//! ```
//!
//! is exact on cubics, needs no derivative data, and reduces to the plain
//! trapezoid only on the first and last interval. Crucially it is exact on
//! *constants* interval-by-interval, so exactly-linear coordinate maps stay
//! exact.

use super::fit::fit_exp_rate;

/// Trapezoid rule on an arbitrary strictly increasing grid.
pub fn trapz(xs: &[f64], fs: &[f64]) -> f64 {
    debug_assert_eq!(xs.len(), fs.len());
    let mut acc = 0.0;
    for i in 1..xs.len() {
        acc += 0.5 * (xs[i] - xs[i - 1]) * (fs[i] + fs[i - 1]);
    }
    acc
}

/// Trapezoid rule with uniform spacing `h`.
pub fn trapz_uniform(h: f64, fs: &[f64]) -> f64 {
    if fs.len() < 2 {
        return 0.0;
    }
    let interior: f64 = fs[1..fs.len() - 1].iter().sum();
    h * (0.5 * (fs[0] + fs[fs.len() - 1]) + interior)
}

/// Cumulative trapezoid on an arbitrary grid; `out[0] = 0`.
pub fn cumtrapz(xs: &[f64], fs: &[f64]) -> Vec<f64> {
    debug_assert_eq!(xs.len(), fs.len());
    let mut out = vec![0.0; xs.len()];
    for i in 1..xs.len() {
        out[i] = out[i - 1] + 0.5 * (xs[i] - xs[i - 1]) * (fs[i] + fs[i - 1]);
    }
    out
}

/// Fourth-order cumulative quadrature on a uniform grid; `out[0] = 0`.
///
/// Interior intervals use the two-point-corrected trapezoid above (exact on
/// cubics); the first and last interval fall back to the plain trapezoid.
/// With fewer than four samples the whole rule degenerates to the plain
/// trapezoid.
pub fn cumtrapz4_uniform(h: f64, fs: &[f64]) -> Vec<f64> {
    let n = fs.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n < 4 {
        for i in 1..n {
            out[i] = out[i - 1] + 0.5 * h * (fs[i] + fs[i - 1]);
        }
        return out;
    }
    out[1] = 0.5 * h * (fs[0] + fs[1]);
    for i in 1..n - 2 {
        out[i + 1] = out[i]
            + h / 24.0 * (-fs[i - 1] + 13.0 * fs[i] + 13.0 * fs[i + 1] - fs[i + 2]);
    }
    out[n - 1] = out[n - 2] + 0.5 * h * (fs[n - 2] + fs[n - 1]);
    out
}

/// Integral of an exponentially decaying tail beyond the last sample.
///
/// Fits `A·e^{−c·t}` to the trailing samples and returns
/// `(∫_{t_last}^{∞} f dt, ok)`. A leftover already at rounding-noise level
/// (`|f_last| ≤ 1e−13`) short-circuits to a zero tail — fitting noise can
/// fabricate a near-zero rate and a wild `f_last/rate`. Otherwise, when the
/// fit is unusable (sign changes, non-decay, too few points) the tail is
/// reported as zero with `ok = false`, so callers can surface a truncation
/// warning.
pub fn exp_tail_integral(ts: &[f64], fs: &[f64]) -> (f64, bool) {
    debug_assert_eq!(ts.len(), fs.len());
    let n = ts.len();
    let f_last = *fs.last().unwrap_or(&0.0);
    let negligible = f_last.abs() <= 1e-13;
    if negligible {
        return (0.0, true);
    }
    // Trailing window: up to 30 samples, stopping at any sign change or zero.
    let mut lo = n;
    let sign = f_last.signum();
    while lo > 0 && n - lo < 30 {
        let v = fs[lo - 1];
        if v == 0.0 || v.signum() != sign {
            break;
        }
        lo -= 1;
    }
    if n - lo < 5 {
        return (0.0, negligible);
    }
    match fit_exp_rate(&ts[lo..], &fs[lo..]) {
        Some(fit) if fit.rate > 0.0 => (f_last / fit.rate, true),
        _ => (0.0, negligible),
    }
}
