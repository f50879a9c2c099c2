// SPDX-License-Identifier: MIT OR Apache-2.0

//! Channel boundary curves: admissibility checks and the wall-angle map.
//!
//! A convergent channel is bounded by a wall curve `(x(s), y(s))`
//! parametrized by arc length, leaving the vertex at opening half-angle
//! `α` and straightening to half-angle `β ≥ α` far away, with turning
//! angle `θ̃(s)` and curvature `κ = dθ̃/ds`. Admissibility asks for
//!
//! * unit-speed parametrization (`ẋ² + ẏ² = 1`),
//! * convexity (`κ ≥ 0`), and
//! * curvature nonincreasing in `s`,
//!
//! which together make the radius `r(s) = √(x² + y²)` strictly increasing
//! (`dr/ds ≥ sin²α`), so the wall is the graph of a polar-angle function
//! `g(r)` with `g(0) = α`, `g(∞) = β`, `g′ ≥ 0`. The downstream conformal
//! chart consumes `g` through [`NozzleCurve::angle_log_derivs`], which
//! returns `u = g(e^τ)` together with its first two `τ`-derivatives.
//!
//! Three curve families are supported:
//!
//! | kind            | turning angle                        | source          |
//! |-----------------|--------------------------------------|-----------------|
//! | `StraightWedge` | `θ̃ ≡ β` (α = β)                     | closed form     |
//! | `SmoothedWedge` | `θ̃ = β − (β−α)e^{−s/ℓ}`             | integrated      |
//! | `Tabulated`     | differenced from `(s, x, y)` samples | CSV `s,x,y`     |
//!
//! Positions for the integrated family come from fixed-step fourth-order
//! quadrature of `(ẋ, ẏ) = (cos θ̃, sin θ̃)` (the right-hand side depends
//! on `s` only, so the classical Runge–Kutta step collapses to Simpson's
//! rule). Beyond the truncation horizon `S_max = 30·max(ℓ,1)` the wall is
//! continued as an exactly straight ray, where the remaining curvature of
//! the exponential family is below `1e−12`.

use std::io::Read;

use serde::Serialize;
use thiserror::Error;

use crate::num::interp::deriv_samples;
use crate::num::interp::interp_cubic;
use crate::tol;

/// Curve family selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CurveKind {
    /// Straight rays at a single angle (`α = β`, `κ ≡ 0`).
    StraightWedge,
    /// Exponential turning-angle blend from `α` to `β` on scale `ℓ`.
    SmoothedWedge,
    /// Arbitrary sampled wall (tangents and curvature by differencing).
    Tabulated,
}

/// One arc-length sample of the wall curve.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurveSample {
    pub s: f64,
    pub x: f64,
    pub y: f64,
    /// Turning angle `θ̃(s)` of the unit tangent.
    pub theta: f64,
    /// Curvature `κ(s) = dθ̃/ds`.
    pub kappa: f64,
}

/// Errors from curve construction and evaluation.
#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("invalid angles: require 0 < alpha <= beta <= pi/2 and alpha = beta for straight wedges (alpha={alpha}, beta={beta})")]
    InvalidAngles { alpha: f64, beta: f64 },
    #[error("blend length must be positive and finite, got {value}")]
    InvalidBlendLength { value: f64 },
    #[error("radius {r} outside the covered range [{r_min}, {r_max}]")]
    OutOfRange { r: f64, r_min: f64, r_max: f64 },
    #[error("arc length must be strictly increasing: row {index} has s = {s} not above its predecessor")]
    NonMonotoneSamples { index: usize, s: f64 },
    #[error("unusable curve samples: {0}")]
    BadSamples(String),
}

/// Straight-ray continuation of the wall beyond the last stored node.
#[derive(Debug, Clone, Copy)]
struct RayExtension {
    x_end: f64,
    y_end: f64,
    cos_end: f64,
    sin_end: f64,
    r_end: f64,
    /// Projection of the end point on the ray direction,
    /// `b = x_end·cos + y_end·sin` (used by the closed-form inversion).
    b: f64,
}

/// Wall curve of a convergent channel, immutable after construction.
///
/// All evaluation methods are pure; the type is `Send + Sync` and safe to
/// share across threads.
#[derive(Debug, Clone)]
pub struct NozzleCurve {
    kind: CurveKind,
    alpha: f64,
    beta: f64,
    blend_length: Option<f64>,
    /// Node arrays at monotone arc lengths.
    s: Vec<f64>,
    x: Vec<f64>,
    y: Vec<f64>,
    theta: Vec<f64>,
    kappa: Vec<f64>,
    r: Vec<f64>,
    /// Straight continuation past the last node (`None` for tabulated
    /// curves, whose radial span is a hard boundary).
    ray: Option<RayExtension>,
}

/// Result of checking the admissibility hypotheses on the sample grid.
///
/// Failures are report entries, never errors: an inadmissible curve is
/// still a curve, it just lands outside the regime where the downstream
/// pipeline is trustworthy.
#[derive(Debug, Clone, Serialize)]
pub struct HypothesisReport {
    /// `|ẋ² + ẏ² − 1|` stays below [`tol::GEOM_ARC_LENGTH`].
    pub arc_length_ok: bool,
    pub arc_length_worst_s: f64,
    pub arc_length_worst_dev: f64,
    /// `κ ≥ 0` up to [`tol::GEOM_KAPPA_NONNEG_SLACK`].
    pub convex_ok: bool,
    pub convex_worst_s: f64,
    pub convex_min_kappa: f64,
    /// Successive sampled curvatures never increase by more than
    /// [`tol::GEOM_KAPPA_DECREASE_SLACK`].
    pub curvature_decreasing_ok: bool,
    pub curvature_worst_s: f64,
    pub curvature_max_increase: f64,
}

impl HypothesisReport {
    /// All three hypotheses hold.
    pub fn passes(&self) -> bool {
        self.arc_length_ok && self.convex_ok && self.curvature_decreasing_ok
    }
}

/// Build an analytic curve family.
///
/// `blend_length` is the relaxation scale `ℓ` of the smoothed wedge and is
/// ignored for straight wedges. Straight wedges must have `α = β`.
pub fn make_curve(
    kind: CurveKind,
    alpha: f64,
    beta: f64,
    blend_length: f64,
) -> Result<NozzleCurve, GeometryError> {
    if !(alpha > 0.0 && alpha <= beta && beta <= std::f64::consts::FRAC_PI_2) {
        return Err(GeometryError::InvalidAngles { alpha, beta });
    }
    match kind {
        CurveKind::StraightWedge => {
            if alpha != beta {
                return Err(GeometryError::InvalidAngles { alpha, beta });
            }
            Ok(NozzleCurve::integrate(kind, alpha, beta, None))
        }
        CurveKind::SmoothedWedge => {
            if !(blend_length > 0.0 && blend_length.is_finite()) {
                return Err(GeometryError::InvalidBlendLength { value: blend_length });
            }
            Ok(NozzleCurve::integrate(kind, alpha, beta, Some(blend_length)))
        }
        CurveKind::Tabulated => Err(GeometryError::BadSamples(
            "tabulated curves carry their own samples; use NozzleCurve::from_samples".into(),
        )),
    }
}

impl NozzleCurve {
    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    /// Opening half-angle at the vertex.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Opening half-angle at infinity.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn blend_length(&self) -> Option<f64> {
        self.blend_length
    }

    pub fn n_samples(&self) -> usize {
        self.s.len()
    }

    pub fn sample(&self, i: usize) -> CurveSample {
        CurveSample { s: self.s[i], x: self.x[i], y: self.y[i], theta: self.theta[i], kappa: self.kappa[i] }
    }

    /// Radii covered by evaluation: `(r_min, r_max)`; `r_max` is infinite
    /// for curves with a straight continuation.
    pub fn radial_span(&self) -> (f64, f64) {
        let r_max = if self.ray.is_some() { f64::INFINITY } else { *self.r.last().unwrap() };
        (0.0, r_max)
    }

    /// Turning angle `θ̃(s)` (interpolated for tabulated curves).
    pub fn turning_angle(&self, s: f64) -> f64 {
        match self.kind {
            CurveKind::StraightWedge => self.beta,
            CurveKind::SmoothedWedge => {
                let ell = self.blend_length.unwrap();
                if s >= self.s_end() {
                    self.end_theta()
                } else {
                    self.beta - (self.beta - self.alpha) * (-s / ell).exp()
                }
            }
            CurveKind::Tabulated => interp_cubic(&self.s, &self.theta, s),
        }
    }

    /// Curvature `κ(s)` (interpolated for tabulated curves).
    pub fn curvature(&self, s: f64) -> f64 {
        match self.kind {
            CurveKind::StraightWedge => 0.0,
            CurveKind::SmoothedWedge => {
                let ell = self.blend_length.unwrap();
                if s >= self.s_end() {
                    0.0
                } else {
                    (self.beta - self.alpha) / ell * (-s / ell).exp()
                }
            }
            CurveKind::Tabulated => interp_cubic(&self.s, &self.kappa, s),
        }
    }

    fn s_end(&self) -> f64 {
        *self.s.last().unwrap()
    }

    fn end_theta(&self) -> f64 {
        *self.theta.last().unwrap()
    }

    fn integrate(kind: CurveKind, alpha: f64, beta: f64, ell: Option<f64>) -> Self {
        let scale = ell.unwrap_or(1.0);
        let h = scale.min(1.0) / 200.0;
        let s_max = 30.0 * scale.max(1.0);
        let n = (s_max / h).round() as usize;
        let theta_of = |s: f64| match kind {
            CurveKind::StraightWedge => beta,
            _ => beta - (beta - alpha) * (-s / scale).exp(),
        };
        let kappa_of = |s: f64| match kind {
            CurveKind::StraightWedge => 0.0,
            _ => (beta - alpha) / scale * (-s / scale).exp(),
        };
        let mut s = Vec::with_capacity(n + 1);
        let mut x = Vec::with_capacity(n + 1);
        let mut y = Vec::with_capacity(n + 1);
        s.push(0.0);
        x.push(0.0);
        y.push(0.0);
        for i in 0..n {
            let si = i as f64 * h;
            // Simpson step of the tangent (RK4 for an s-only right-hand side).
            let t1 = theta_of(si);
            let t2 = theta_of(si + 0.5 * h);
            let t4 = theta_of(si + h);
            x.push(x[i] + h / 6.0 * (t1.cos() + 4.0 * t2.cos() + t4.cos()));
            y.push(y[i] + h / 6.0 * (t1.sin() + 4.0 * t2.sin() + t4.sin()));
            s.push(si + h);
        }
        let theta: Vec<f64> = s.iter().map(|&si| theta_of(si)).collect();
        let kappa: Vec<f64> = s.iter().map(|&si| kappa_of(si)).collect();
        let r: Vec<f64> = x.iter().zip(&y).map(|(&xv, &yv)| xv.hypot(yv)).collect();
        let (x_end, y_end) = (*x.last().unwrap(), *y.last().unwrap());
        let th_end = *theta.last().unwrap();
        let (sin_end, cos_end) = th_end.sin_cos();
        let ray = RayExtension {
            x_end,
            y_end,
            cos_end,
            sin_end,
            r_end: *r.last().unwrap(),
            b: x_end * cos_end + y_end * sin_end,
        };
        Self { kind, alpha, beta, blend_length: ell, s, x, y, theta, kappa, r, ray: Some(ray) }
    }

    /// Build a tabulated curve from `(s, x, y)` rows.
    ///
    /// Tangent angles come from fifth-order-stencil differencing of the
    /// positions, curvature from differencing the tangent angle; `α` and
    /// `β` are read off the first and last tangent. At least five rows are
    /// required and `s` must be strictly increasing.
    pub fn from_samples(rows: &[(f64, f64, f64)]) -> Result<Self, GeometryError> {
        if rows.len() < 5 {
            return Err(GeometryError::BadSamples(format!(
                "need at least 5 rows to difference tangents, got {}",
                rows.len()
            )));
        }
        for (i, w) in rows.windows(2).enumerate() {
            if !(w[1].0 > w[0].0) {
                return Err(GeometryError::NonMonotoneSamples { index: i + 1, s: w[1].0 });
            }
        }
        let s: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let x: Vec<f64> = rows.iter().map(|r| r.1).collect();
        let y: Vec<f64> = rows.iter().map(|r| r.2).collect();
        let xd = deriv_samples(&s, &x);
        let yd = deriv_samples(&s, &y);
        let theta: Vec<f64> = xd.iter().zip(&yd).map(|(&c, &sv)| sv.atan2(c)).collect();
        let kappa = deriv_samples(&s, &theta);
        let r: Vec<f64> = x.iter().zip(&y).map(|(&xv, &yv)| xv.hypot(yv)).collect();
        let alpha = theta[0];
        let beta = theta[theta.len() - 1];
        Ok(Self {
            kind: CurveKind::Tabulated,
            alpha,
            beta,
            blend_length: None,
            s,
            x,
            y,
            theta,
            kappa,
            r,
            ray: None,
        })
    }

    /// Read a tabulated curve from CSV with header `s,x,y`.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self, GeometryError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        {
            let headers = rdr.headers().map_err(|e| GeometryError::BadSamples(e.to_string()))?;
            let expect = ["s", "x", "y"];
            let got: Vec<&str> = headers.iter().collect();
            if got != expect {
                return Err(GeometryError::BadSamples(format!(
                    "expected header s,x,y got {}",
                    got.join(",")
                )));
            }
        }
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| GeometryError::BadSamples(e.to_string()))?;
            let parse = |k: usize| -> Result<f64, GeometryError> {
                rec.get(k)
                    .ok_or_else(|| GeometryError::BadSamples(format!("row {i}: missing column {k}")))?
                    .parse::<f64>()
                    .map_err(|e| GeometryError::BadSamples(format!("row {i}: {e}")))
            };
            rows.push((parse(0)?, parse(1)?, parse(2)?));
        }
        Self::from_samples(&rows)
    }

    /// Position and first two arc-length derivatives at `s`.
    ///
    /// Positions interpolate the stored nodes with a cubic Hermite segment
    /// (tangents are known exactly at the nodes); first and second
    /// derivatives use the turning angle at `s` itself, keeping the
    /// returned frame consistent with the arc-length parametrization.
    fn point_at(&self, s: f64) -> (f64, f64, f64, f64, f64, f64) {
        if let Some(ray) = &self.ray {
            if s > self.s_end() {
                let d = s - self.s_end();
                return (
                    ray.x_end + d * ray.cos_end,
                    ray.y_end + d * ray.sin_end,
                    ray.cos_end,
                    ray.sin_end,
                    0.0,
                    0.0,
                );
            }
        }
        let n = self.s.len();
        let i = self.s.partition_point(|&v| v <= s).saturating_sub(1).min(n - 2);
        let (s0, s1) = (self.s[i], self.s[i + 1]);
        let h = s1 - s0;
        let t = (s - s0) / h;
        let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        let h10 = t * (1.0 - t) * (1.0 - t);
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        let (sin0, cos0) = self.theta[i].sin_cos();
        let (sin1, cos1) = self.theta[i + 1].sin_cos();
        let xv = h00 * self.x[i] + h10 * h * cos0 + h01 * self.x[i + 1] + h11 * h * cos1;
        let yv = h00 * self.y[i] + h10 * h * sin0 + h01 * self.y[i + 1] + h11 * h * sin1;
        let th = self.turning_angle(s);
        let tp = self.curvature(s);
        let (sin_t, cos_t) = th.sin_cos();
        (xv, yv, cos_t, sin_t, -tp * sin_t, tp * cos_t)
    }

    /// Invert `r(s)` by bracketing on the node radii plus Newton on the
    /// interpolated curve. Well-posed because `dr/ds ≥ sin²α > 0` for
    /// admissible curves.
    fn s_of_r(&self, r: f64) -> f64 {
        if let Some(ray) = &self.ray {
            if r >= ray.r_end {
                let d = -ray.b + (ray.b * ray.b + r * r - ray.r_end * ray.r_end).sqrt();
                return self.s_end() + d;
            }
        }
        let n = self.r.len();
        let lo = self.r.partition_point(|&v| v < r).saturating_sub(1).min(n - 2);
        let (s0, s1) = (self.s[lo], self.s[lo + 1]);
        let (r0, r1) = (self.r[lo], self.r[lo + 1]);
        let mut s = if r1 > r0 { s0 + (s1 - s0) * (r - r0) / (r1 - r0) } else { s0 };
        for _ in 0..40 {
            let (xv, yv, xd, yd, _, _) = self.point_at(s);
            let rv = xv.hypot(yv);
            let drds = if rv > 0.0 { (xv * xd + yv * yd) / rv } else { 1.0 };
            let ds = (rv - r) / drds;
            s -= ds;
            if ds.abs() < 1e-15 * s.abs().max(1.0) {
                break;
            }
        }
        s
    }

    /// Wall angle as a function of log-radius: returns
    /// `(u, u′, u″) = (g(e^τ), r g′, r d(r g′)/dr)` at `r = e^τ`.
    ///
    /// This is the exact data the conformal chart needs; `polar_angle`
    /// derives the plain `(g, g′)` pair from it.
    pub fn angle_log_derivs(&self, r: f64) -> Result<(f64, f64, f64), GeometryError> {
        let (r_min, r_max) = self.radial_span();
        if !(r > r_min && r <= r_max) {
            return Err(GeometryError::OutOfRange { r, r_min, r_max });
        }
        if self.kind == CurveKind::StraightWedge {
            return Ok((self.beta, 0.0, 0.0));
        }
        if self.kind == CurveKind::Tabulated {
            // Below the first positive-radius node there is no table to
            // invert; fall back to a linear angle model anchored at the
            // vertex angle. There `g − α ∝ r`, so both log-derivatives
            // equal `r g′`.
            let i0 = self.r.iter().position(|&v| v > 0.0).unwrap_or(0);
            let r_anchor = self.r[i0];
            if r < r_anchor {
                let g_anchor = self.y[i0].atan2(self.x[i0]);
                let slope = (g_anchor - self.alpha) / r_anchor;
                return Ok((self.alpha + slope * r, slope * r, slope * r));
            }
        }
        let s = self.s_of_r(r);
        let (xv, yv, xd, yd, xdd, ydd) = self.point_at(s);
        let g = yv.atan2(xv);
        let num = yd * xv - xd * yv;
        let den = xv * xd + yv * yd;
        let up = num / den;
        let num_d = ydd * xv - xdd * yv;
        let den_d = 1.0 + xv * xdd + yv * ydd;
        let d_rgp_ds = (num_d * den - num * den_d) / (den * den);
        let rv = xv.hypot(yv);
        let drds = den / rv;
        Ok((g, up, rv * d_rgp_ds / drds))
    }

    /// Polar angle of the wall and its radial derivative: `(g(r), g′(r))`.
    ///
    /// Round-off-scale negative `g′` (above [`tol::GEOM_GPRIME_FLOOR`]) is
    /// clamped to zero so that convex curves always report `g′ ≥ 0`;
    /// genuine convexity violations pass through with their sign intact.
    pub fn polar_angle(&self, r: f64) -> Result<(f64, f64), GeometryError> {
        let (g, up, _) = self.angle_log_derivs(r)?;
        let mut gp = up / r;
        if gp < 0.0 && gp >= tol::GEOM_GPRIME_FLOOR {
            gp = 0.0;
        }
        Ok((g, gp))
    }
}

/// Check the admissibility hypotheses on the stored sample grid.
///
/// The arc-length identity is verified honestly by differencing the stored
/// positions (validating the integrator as well as tabulated inputs);
/// convexity and curvature decrease are checked on the sampled curvature.
pub fn check_hypotheses(curve: &NozzleCurve) -> HypothesisReport {
    let n = curve.s.len();
    let xd = deriv_samples(&curve.s, &curve.x);
    let yd = deriv_samples(&curve.s, &curve.y);
    let mut worst_dev = 0.0;
    let mut worst_dev_s = curve.s[0];
    for i in 0..n {
        let dev = (xd[i] * xd[i] + yd[i] * yd[i] - 1.0).abs();
        if dev > worst_dev {
            worst_dev = dev;
            worst_dev_s = curve.s[i];
        }
    }
    let mut min_kappa = f64::INFINITY;
    let mut min_kappa_s = curve.s[0];
    for i in 0..n {
        if curve.kappa[i] < min_kappa {
            min_kappa = curve.kappa[i];
            min_kappa_s = curve.s[i];
        }
    }
    let mut max_increase = f64::NEG_INFINITY;
    let mut max_increase_s = curve.s[0];
    for i in 0..n - 1 {
        let inc = curve.kappa[i + 1] - curve.kappa[i];
        if inc > max_increase {
            max_increase = inc;
            max_increase_s = curve.s[i];
        }
    }
    HypothesisReport {
        arc_length_ok: worst_dev <= tol::GEOM_ARC_LENGTH,
        arc_length_worst_s: worst_dev_s,
        arc_length_worst_dev: worst_dev,
        convex_ok: min_kappa >= -tol::GEOM_KAPPA_NONNEG_SLACK,
        convex_worst_s: min_kappa_s,
        convex_min_kappa: min_kappa,
        curvature_decreasing_ok: max_increase <= tol::GEOM_KAPPA_DECREASE_SLACK,
        curvature_worst_s: max_increase_s,
        curvature_max_increase: max_increase,
    }
}
