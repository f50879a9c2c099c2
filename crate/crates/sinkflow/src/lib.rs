// SPDX-License-Identifier: MIT OR Apache-2.0

//! Viscous flow through an infinite convergent channel, built end to end:
//!
//! 1. [`geometry`] — admissible nozzle boundary curves, curvature checks, and
//!    the polar-angle function of the upper wall.
//! 2. [`conformal`] — the harmonic stream coordinate and the conformal chart
//!    `(ξ, ψ)` of the channel, with the metric factor `J` and the
//!    favourable-pressure margin `μ`.
//! 3. [`similarity`] — the closed-form self-similar wall profile, its
//!    shooting-method cross-check, and the limit profiles entering the
//!    boundary-layer analysis.
//! 4. [`prandtl0`] — the leading-order boundary layer, marched in von Mises
//!    variables by a semi-implicit tridiagonal scheme and mapped back to
//!    physical layer velocities.
//! 5. [`hierarchy`] — the higher-order correction stack: harmonic outer
//!    corrections, linearized layer corrections with the general force-term
//!    evaluator, and far-field layer profiles via an explicit Green's
//!    function.
//! 6. [`farfield`] — the viscous far-field profile ODE with flux constraint,
//!    solved by damped Newton in a primitive-variable formulation, plus the
//!    layered closed-form approximation it is compared against.
//! 7. [`composite`] — the assembled composite stream function, its velocity
//!    field, the equation residual, and the scaling studies.
//!
//! The [`config`], [`io`] and [`pipeline`] modules provide deterministic
//! orchestration for the command-line driver.
//!
//! # Conventions
//!
//! * The channel is symmetric about its axis; `ψ ∈ [−1, 1]` spans it wall to
//!   wall and `ξ` runs along it, increasing away from the vertex.
//! * `Q > 0` is the magnitude of the (inward) mass flux, `ε > 0` the
//!   viscosity; the small parameter of every expansion is `√(ε/Q)`.
//! * All numerical tolerances live in [`tol`], each with a documented basis.

pub mod composite;
pub mod config;
pub mod conformal;
pub mod farfield;
pub mod geometry;
pub mod hierarchy;
pub mod io;
pub mod num;
pub mod pipeline;
pub mod prandtl0;
pub mod similarity;
pub mod tol;

#[cfg(test)]
pub(crate) mod testutil {
    //! Fixtures shared across module test suites.

    use std::f64::consts::PI;
    use std::sync::OnceLock;

    use crate::conformal::{build_chart, ChartParams, ConformalMap};
    use crate::geometry::{make_curve, CurveKind};

    /// Default smoothed-wedge chart (`α = π/6`, `β = π/3`, unit blend) at the
    /// default resolution — the expensive fixture several modules start from.
    /// Built once per test binary.
    pub fn default_chart() -> &'static ConformalMap {
        static CHART: OnceLock<ConformalMap> = OnceLock::new();
        CHART.get_or_init(|| {
            let curve = make_curve(CurveKind::SmoothedWedge, PI / 6.0, PI / 3.0, 1.0).unwrap();
            build_chart(&curve, &ChartParams::default()).unwrap()
        })
    }
}
