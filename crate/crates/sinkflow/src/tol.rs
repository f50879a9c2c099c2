// SPDX-License-Identifier: MIT OR Apache-2.0

//! Centralized numerical tolerances with their justification.
//!
//! Every threshold used by library invariant checks, unit tests and the
//! acceptance suite is defined here. No ad-hoc magic numbers in call sites.
//!
//! # Tolerance categories
//!
//! | Category | Basis | Typical size |
//! |----------|-------|--------------|
//! | Closed form | exact formula evaluated in f64 | 1e-12 … 1e-9 |
//! | Imposed | boundary data written into the arrays | 1e-12 |
//! | Iterative | solver stopping criteria | 1e-10 |
//! | Discretization | second-order stencils at default grids | 1e-6 … 5e-3 |
//! | Asymptotic | fitted rates/slopes vs. theoretical exponents | ±0.3 … ±0.5 |

// ═══════════════════════════════════════════════════════════════════
// Geometry
// ═══════════════════════════════════════════════════════════════════

/// Arc-length identity `ẋ² + ẏ² = 1` at every curve sample.
///
/// Constructed curves carry analytic tangents (error is pure rounding);
/// tabulated curves are differenced with fourth-order stencils, whose
/// truncation stays below this at sample spacings ≤ 5e-3.
pub const GEOM_ARC_LENGTH: f64 = 1e-8;

/// Turning-angle endpoint checks `θ̃(0) = α` and `θ̃(S_max) ≈ β`.
///
/// The smoothed family approaches β like `e^{−S_max/ℓ}`; with the default
/// horizon `S_max = 30·max(ℓ,1)` the remainder is below 1e-12, so 1e-6
/// leaves four orders of slack for tabulated input.
pub const GEOM_ANGLE_ENDPOINT: f64 = 1e-6;

/// Slack on the convexity inequality `κ ≥ 0` at samples.
///
/// Tabulated curvature is a *double* difference of positions. With
/// millimeter-scale steps (h ≈ 2e-3) the one-sided end stencils leave
/// O(h⁴)-level noise in the tangent angle that differencing amplifies by
/// 1/h, giving curvature noise up to ~1e-7 exactly where flat starts have
/// κ = 0. 1e-6 absorbs that while staying orders of magnitude below any
/// physically meaningful sign violation.
pub const GEOM_KAPPA_NONNEG_SLACK: f64 = 1e-6;

/// Slack on the monotone-decrease inequality `κ(s_{i+1}) ≤ κ(s_i)`.
///
/// Interior curvature samples (away from the noisy one-sided end stencils
/// that size [`GEOM_KAPPA_NONNEG_SLACK`]) are centered differences with
/// far smaller error, and consecutive-sample increments of a genuinely
/// increasing curvature scale like κ′·h ≫ 1e-9.
pub const GEOM_KAPPA_DECREASE_SLACK: f64 = 1e-9;

/// Lower slack for the returned polar-angle derivative `g′ ≥ −1e-10`.
///
/// `g′` is a quotient of integrated quantities; exact nonnegativity holds in
/// the continuum, this bound allows accumulated quadrature rounding.
pub const GEOM_GPRIME_FLOOR: f64 = -1e-10;

/// Wall-angle limits `g(r_min) → α`, `g(r_max) → β` for `S_max ≥ 20ℓ`.
///
/// Discretization plus the exponential tail of the turning angle; 1e-4 is
/// the contract for the default horizon.
pub const GEOM_ANGLE_LIMIT: f64 = 1e-4;

/// Slack on the radial-growth bounds `sin²α ≤ dr/ds ≤ 1` at samples.
///
/// The bounds are exact in the continuum; samples carry quadrature rounding.
pub const GEOM_DRDS_SLACK: f64 = 1e-9;

// ═══════════════════════════════════════════════════════════════════
// Conformal chart
// ═══════════════════════════════════════════════════════════════════

/// Geometry is treated as singular when the wall angle drops below this.
///
/// The transformed elliptic operator divides by `g(e^t)`; admissible curves
/// keep `g ≥ α > 0`, so anything near 1e-12 signals corrupt input.
pub const CONF_SINGULAR_G: f64 = 1e-12;

/// Stopping residual for the strip linear solve (direct or relaxed).
///
/// Normalized by the max-norm of the right-hand side plus one. The direct
/// banded factorization lands near 1e-13; iterative fallback must reach the
/// same contract.
pub const CONF_SOLVE_RESIDUAL: f64 = 1e-10;

/// Straight-wedge exactness: `ψ = θ/β` and `−½J_ξ/J = β`.
///
/// For straight walls the transformed source vanishes identically, the chart
/// is affine in the grid variables, and log-metric differencing is exact up
/// to rounding amplified by grid size; 1e-6 is generous.
pub const CONF_STRAIGHT_WEDGE: f64 = 1e-6;

/// Relative tolerance on boundary limits of `−½J_ξ/J` (→ β and α) and of
/// the flow angle `q` (→ βψ, αψ), checked two units inside the strip ends.
pub const CONF_LIMIT_REL: f64 = 1e-2;

/// Window for observed refinement order of the strip solve.
///
/// Centered second-order stencils on smooth coefficients; the order estimate
/// from three nested grids fluctuates with the error's sign structure.
pub const CONF_ORDER_MIN: f64 = 1.7;
/// See [`CONF_ORDER_MIN`].
pub const CONF_ORDER_MAX: f64 = 2.3;

/// Interior bound for the radial Cauchy–Riemann check `r·∂ξ/∂r = ψ_θ` at the
/// default grid, restricted to [`CONF_CR_INTERIOR_FRAC`] of the cross-channel
/// coordinate (and the five-point stencil margin in the axial direction).
///
/// The residual equals `σu′·(ξ_σ + u ψ_t)`, so it inherits the conjugate
/// defect ([`CONF_CR_CONJUGATE`]): a wall-concentrated error layer of the
/// second-order solve. On the interior region the measured default-grid
/// residual is 6.8e-7, decaying rapidly under refinement; wall-adjacent
/// accuracy is covered by the boundary-limit checks ([`CONF_LIMIT_REL`])
/// instead.
pub const CONF_CR_RADIAL: f64 = 1e-6;

/// Interior bound for the conjugate Cauchy–Riemann defect `ξ_σ/u + ψ_t` on
/// the same region (measured 6.2e-6 at the default grid).
pub const CONF_CR_CONJUGATE: f64 = 1e-5;

/// Cross-channel fraction defining "interior" for the Cauchy–Riemann checks:
/// nodes with `|σ| ≤ 3/4`. The one-sided σ-stencils and the solve's edge
/// truncation leave a first-order error layer hugging the walls (measured
/// 2.5e-4 two cells in); three quarters of the half-width keeps every default
/// and refinement grid clear of it.
pub const CONF_CR_INTERIOR_FRAC: f64 = 0.75;

/// Upper slack for `μ ≤ min(α,β) + slack`.
///
/// The continuum bound is an infimum attained only in the upstream limit; on
/// the truncated chart the wall quantity approaches the limit from above, so
/// the discrete minimum overshoots by the leftover tail (measured +1.5e-4 at
/// the default truncation).
pub const CONF_MU_UPPER_SLACK: f64 = 1e-3;

/// Agreement of chart-level scalars (ξ-offset `c₀`, pressure margin μ, min
/// ψ_θ) with prototype-measured frozen values.
///
/// Looser than [`NUM_FROZEN_MIRROR`]: the resampling interpolant differs
/// between implementations (4-point Lagrange vs. spline), which moves
/// interpolated metric quantities at the 1e-7 level on default grids.
pub const CONF_FROZEN_CHART: f64 = 1e-5;

/// Interior margin slack: the interior of the chart must satisfy
/// `q_ψ ≥ μ − CONF_INTERIOR_MARGIN_SLACK`.
///
/// In the continuum `q_ψ` attains its minimum on the walls (it is harmonic),
/// with equality in the far-field limit; a strict discrete inequality cannot
/// survive second-order differencing, so an O(h²)-scale slack is required.
pub const CONF_INTERIOR_MARGIN_SLACK: f64 = 1e-3;

/// Relative agreement of μ under doubling of both strip grid counts.
pub const CONF_MU_REFINE_REL: f64 = 2e-2;

/// Interior bound at the default grids for the discrete Laplacian of the
/// log-metric derivative `J_ξ/J` on the resampled strip (a harmonic function
/// in the continuum chart).
///
/// Restricted to `|ψ| ≤ 3/4` plus a five-row ξ-margin for the same reason as
/// [`CONF_CR_INTERIOR_FRAC`]: the wall error layer, twice differenced at
/// ψ-spacing, swamps the signal near `|ψ| = 1` (measured 0.49 there vs.
/// 6.6e-4 on the interior at defaults).
pub const CONF_HARMONICITY_DEFAULT: f64 = 5e-3;

/// Minimum decrease factor of interior Cauchy–Riemann and harmonicity
/// residuals per doubling of all grid counts — "at least second order"
/// (factor 4). Measured factors at the default family are 37–70, reflecting
/// the shrinking wall layer on top of the O(h²) bulk.
pub const CONF_REFINE_RATIO_MIN: f64 = 4.0;

/// Noise floor for far-field decay fits of `max_θ |ψ − θ/β|`.
///
/// The geometric forcing of the default family dies super-exponentially, so
/// the measured deviation bottoms out at accumulated rounding; fits only use
/// stations above this floor.
pub const CONF_DECAY_FLOOR: f64 = 1e-12;

/// The fitted far-field decay rate of `|ψ − θ/β|` must be at least this.
///
/// Lower bound λ = 1/4 from the theory; the observed rate is fitted and
/// asserted to dominate it.
pub const CONF_DECAY_RATE_MIN: f64 = 0.25;

// ═══════════════════════════════════════════════════════════════════
// Similarity profile
// ═══════════════════════════════════════════════════════════════════

/// Pointwise ODE residual `|f‴ − (f′)² + 1|` of the closed-form profile.
///
/// Both sides are evaluated from independent closed-form expressions; the
/// residual is pure rounding, and a fourth-order finite-difference
/// cross-check of f‴ stays below 1e-9 at step 1e-3.
pub const SIM_FSE_RESIDUAL: f64 = 1e-9;

/// Shooting must recover the closed-form wall shear `f″(0) = 2/√3`.
///
/// Bisection collapses the bracket to machine width; 1e-8 is the published
/// contract with eight orders of headroom over the bracket width.
pub const SIM_SHOOTING_FPP0: f64 = 1e-8;

/// Shot profile vs. closed form, max over the grid.
///
/// The forward map amplifies initial-slope error like `e^{√2 η̃}`; the
/// integration hands off to the exact exponential tail once the deficit
/// `1 − f′` drops below [`SIM_TAIL_SWITCH`], which caps the amplification.
pub const SIM_SHOOT_VS_CLOSED: f64 = 1e-8;

/// Deficit level at which the shot solution switches to its analytic tail.
///
/// Switching at 1e-6 (η̃ ≈ 10) keeps the unstable-mode amplification below
/// `e^{√2·10} ≈ 1.4e6`, i.e. machine-level seed error stays ≤ 1e-9, while
/// the tail formula's own relative defect there is ≈ 2e-6 of a 1e-6 deficit.
pub const SIM_TAIL_SWITCH: f64 = 1e-6;

/// Far-field saturation `|f′(η̃_max) − 1| < 1e-10` for `η̃_max ≥ 20`.
pub const SIM_FP_SATURATION: f64 = 1e-10;

/// Pointwise residual of the profile equation for the limit profile
/// `A_p`, and boundary data of its von Mises image.
///
/// Evaluated from closed forms; pure rounding, 1e-8 contract.
pub const SIM_LIMIT_RESIDUAL: f64 = 1e-8;

/// Residual of the von Mises image equation `−2a·ω + √ω·ω″ + 2a` with
/// closed-form derivatives.
pub const SIM_OMEGA_RESIDUAL: f64 = 1e-7;

/// Round trip `η ↦ Z ↦ η` through the layer-thickness map and its inverse.
pub const SIM_ROUND_TRIP: f64 = 1e-8;

// ═══════════════════════════════════════════════════════════════════
// Leading-order layer march
// ═══════════════════════════════════════════════════════════════════

/// Floor inserted under `√ω` in the lagged diffusion coefficient.
///
/// Keeps each station linear-tridiagonal; the floor only acts inside the
/// first graded cell, whose width vanishes quadratically.
pub const VM_OMEGA_FLOOR: f64 = 1e-14;

/// Post-step clamp slack: accepted stations are clamped to `[0, 1 + 1e-12]`.
pub const VM_CLAMP_SLACK: f64 = 1e-12;

/// A step is rejected (halved and retried) when the new station exceeds
/// `1 + 1e-6`; undershoot below `-`[`VM_CLAMP_SLACK`] likewise rejects.
///
/// Values in `[-1e-12, 0)` are rounding undershoot of the implicit solve at
/// the wall-adjacent node and are clamped, not rejected.
pub const VM_STEP_BOUND_SLACK: f64 = 1e-6;

/// Slack on the favorable-pressure precondition `A(X) ≥ 2μ`.
///
/// Chart-derived coefficients satisfy the inequality exactly (the margin is
/// a minimum over the same wall samples); the slack only forgives rounding
/// in externally supplied tables.
pub const VM_DEGENERATE_SLACK: f64 = 1e-8;

/// Maximum-principle slack for accepted solutions:
/// `−1e-8 ≤ ω ≤ 1 + 1e-8` and `∂ω/∂Z ≥ −1e-8`.
///
/// The semi-implicit scheme is monotone for the realized coefficient sizes;
/// 1e-8 absorbs rounding in the tridiagonal sweeps.
pub const VM_BOUND_SLACK: f64 = 1e-8;

/// Fixed-point drift budget for the constant-coefficient march.
///
/// The discrete stationary state differs from the continuum profile by the
/// Z-truncation offset; at the acceptance resolution (N_Z = 1600) the
/// measured offset is 4.6e-7, inside this budget over 1000 stations.
pub const VM_FIXED_POINT_DRIFT: f64 = 1e-6;

/// Fixed-point drift budget at the default resolution (N_Z = 400).
///
/// The stationary offset scales like N_Z^-2: measured 7.4e-6 at 400,
/// 1.8e-6 at 800, 4.6e-7 at 1600. Module tests march at the default grid.
pub const VM_FIXED_POINT_DRIFT_DEFAULT: f64 = 1e-5;

/// Wall slope `dω/dZ(X, 0)` below this signals separation; the
/// reconstruction refuses to run.
pub const VM_WALL_SLOPE_MIN: f64 = 1e-10;

/// Safety factor on all fitted decay rates vs. their theoretical exponents.
///
/// The theory gives lower bounds with non-constructive constants; fits must
/// reach at least 0.9 of each bound.
pub const DECAY_RATE_SAFETY: f64 = 0.9;

/// Max-norm budget for the layer-equation residual of the reconstructed
/// fields at default resolution (second-order differencing of marched data).
pub const VM_PE_RESIDUAL: f64 = 5e-3;

/// Layer-equation residual budget for the manufactured smooth-coefficient
/// march (measured 4.3e-4 at the default resolution, 1.4e-4 refined).
pub const VM_PE_RESIDUAL_MANUFACTURED: f64 = 1e-3;

/// Minimum decrease factor of the layer-equation residual when both dX and
/// the Z grid are refined 2x (measured ratio 3.05; first order in dX
/// dominates, so 2.0 is the asymptote and 1.8 the floor).
pub const VM_PE_REFINE_MIN: f64 = 1.8;

/// Round trip `η(Z)` against the similarity thickness map for a stationary
/// profile (measured 6.1e-8 with the graded quadrature).
pub const VM_ETA_ROUND_TRIP: f64 = 1e-6;

/// Relative error budget for the extrapolated discrete wall slope against
/// the closed-form similarity shear (measured 1.5e-6).
pub const VM_WALL_SLOPE_REL: f64 = 1e-4;

/// Residual budget for the inflow-station ODE checked with closed-form
/// similarity derivatives.
pub const VM_INIT_RESIDUAL: f64 = 1e-7;

/// Raw far-field deficit `1 − ω⁺(Z_max)` before the boundary clamp at the
/// default `Z_max = 12/√μ` (measured 3.4e-8; the built station is exact).
pub const VM_INIT_FAR_DEFICIT: f64 = 1e-6;

/// Slack on reconstructed-field inequalities `u_p > −1/2 − slack` and
/// `∂²u_p/∂η² ≥ −slack` (direct η-stencil measured min −4.8e-8).
pub const VM_RECON_SLACK: f64 = 1e-6;

/// Bound on `sup |ω_X|/ω` for smooth coefficient families (measured 0.31
/// manufactured, 0.28 chart) and its refinement stability window.
pub const VM_OMX_RATIO_MAX: f64 = 0.5;
/// Relative drift of the `sup |ω_X|/ω` measurement under 2x refinement
/// (measured 0.026).
pub const VM_OMX_RATIO_STABILITY: f64 = 0.15;

/// Floor for the measured near-wall shear constant `m₀` on the default
/// chart (measured 0.177).
pub const VM_M0_MIN: f64 = 0.1;

/// Ceiling for the measured Z-decay envelope constant `c₀` in
/// `1 − ω ≤ c₀ e^{−√μ Z}` (measured 1.0000 — the bound is saturated at the
/// wall, never exceeded).
pub const VM_C0_MAX: f64 = 1.5;

/// Plateau bound for `sup_Z |ω − ω₀|` over the downstream half-window of
/// the default chart march.
///
/// The chart coefficient is constant to machine precision downstream
/// (double-exponential wedge convergence), so the deviation sits at the
/// discrete-stationarity offset (measured 1.04e-5) instead of decaying at a
/// fittable rate; the rate content is certified on synthetic
/// exponential-tail coefficients.
pub const VM_INFLOW_PLATEAU: f64 = 5e-5;

/// Insensitivity of the march to the start station: doubling the start
/// changes ω on the common window by less than this.
pub const VM_START_INSENSITIVITY: f64 = 1e-4;

/// Consecutive-station difference once a constant-coefficient march has
/// settled into its discrete fixed point (measured ≈ 2e-15 — the iteration
/// is contractive and terminal stations agree to rounding).
pub const VM_TERMINAL_DRIFT: f64 = 1e-12;

/// Far-field approach of the reconstructed velocity: `|u_p(Z_max) + 1/2|`.
/// After the boundary clamp `ω(Z_max) = 1` this is exact; the budget covers
/// unclamped intermediates.
pub const VM_UP_FAR: f64 = 1e-4;

/// Envelope constants for the profile-comparison bounds
/// `m₁ω⁺ ≤ ω ≤ M₁ω⁺`: measured `m₁` must exceed 0.5 and `M₁` stay below 2.
pub const VM_M1_MIN: f64 = 0.5;
/// See [`VM_M1_MIN`].
pub const VM_M1_MAX: f64 = 2.0;

// ═══════════════════════════════════════════════════════════════════
// Correction hierarchy
// ═══════════════════════════════════════════════════════════════════

/// General force-term evaluator vs. the hand-coded first-order expression.
///
/// Identical inputs, algebraically identical sums evaluated along different
/// code paths; difference is pure rounding on O(30) term products.
pub const HIER_FORCE_MATCH: f64 = 1e-12;

/// Imposed wall trace `u_b^m(ξ,0) = (1/Q)∂_ψΦ_e^m|_{wall}`.
pub const HIER_TRACE_IMPOSED: f64 = 1e-8;

/// Wronskian identity `φ₁φ₂′ − φ₁′φ₂ = 1` of the Green pair on the grid.
pub const HIER_WRONSKIAN: f64 = 1e-8;

/// Residual of the far-field layer ODE after Green-function assembly,
/// checked with fourth-order stencils.
pub const HIER_LAYER_ODE_RESIDUAL: f64 = 1e-7;

/// Two routes to the moments (profile integral vs. strip-trace limit) must
/// agree to this relative tolerance.
pub const HIER_MOMENT_REL: f64 = 1e-3;

/// March end states vs. far-field layer profiles, relative to the profile's
/// max-norm.
pub const HIER_LIMIT_REL: f64 = 2e-2;

/// Stationarity drift of the straight-wedge layer march started from the
/// discrete steady state.
pub const HIER_STATIONARY_DRIFT: f64 = 1e-6;

/// Odd symmetry of outer corrections under antisymmetric boundary data.
pub const HIER_ODD_SYMMETRY: f64 = 1e-8;

// ═══════════════════════════════════════════════════════════════════
// Far-field profile solve
// ═══════════════════════════════════════════════════════════════════

/// Largest admissible expansion parameter `√(ε/Q)`.
///
/// Engineering choice validated by Newton convergence across the sweep.
pub const FF_DELTA_CONFIG: f64 = 0.1;

/// Newton stopping residual, scaled by `Q²` (the equation's natural size).
pub const FF_NEWTON_RESIDUAL: f64 = 1e-10;

/// Maximum Newton step halvings before declaring a stall.
pub const FF_NEWTON_MAX_HALVINGS: u32 = 30;

/// Flux accounting of assembled and solved profiles, relative to `Q`.
///
/// Flux is carried by the construction's own antiderivative (layer
/// integrals enter through their moments), so the identity telescopes to
/// rounding; quadrature of the stiff profile itself is *not* used.
pub const FF_FLUX: f64 = 1e-10;

/// Endpoint values of the assembled profile must vanish to this.
pub const FF_ENDPOINT: f64 = 1e-12;

/// Non-positivity slack for the solved profile (its uniqueness class).
pub const FF_NONPOS_SLACK: f64 = 1e-10;

/// First-integral constancy across the channel, scaled by `Q²`.
///
/// Requires fourth-order evaluation of the second derivative and the
/// layer-resolving grid below; second-order stencils at 30 nodes per layer
/// width would float near 4e-4·Q².
pub const FF_BERNOULLI_REL: f64 = 1e-6;

/// Minimum grid nodes per boundary-layer width `√(ε/Q)` (hard assert).
pub const FF_MIN_NODES_PER_LAYER: usize = 30;

/// Target grid nodes per layer width used when auto-refining.
///
/// Chosen so that doubling the grid moves the profile by less than
/// [`FF_REFINE_ABS`]·Q: second-order error ∝ (nodes/width)⁻².
pub const FF_TARGET_NODES_PER_LAYER: usize = 200;

/// Profile change under grid doubling, relative to `Q`.
pub const FF_REFINE_ABS: f64 = 1e-6;

/// Sup-norm agreement of seeded multi-start solutions, relative to `Q`.
pub const FF_UNIQUE_AGREE: f64 = 1e-8;

/// Slope window half-widths for the profile error scaling exponents.
pub const FF_SLOPE_WINDOW_SUP: f64 = 0.4;
/// See [`FF_SLOPE_WINDOW_SUP`]; derivative-level fits get a wider window.
pub const FF_SLOPE_WINDOW_DERIV: f64 = 0.5;

/// Mid-channel value of the assembled profile approaches `−Q/2` like
/// `Q·e^{−c√(Q/ε)}`; this is the asserted decay constant `c`.
///
/// The true tail constant is the layer decay rate `√(2β) ≈ 1.45`; asserting
/// c = 1 leaves margin for the moment-offset bookkeeping.
pub const FF_MID_CHANNEL_C: f64 = 1.0;

// ═══════════════════════════════════════════════════════════════════
// Composite assembly
// ═══════════════════════════════════════════════════════════════════

/// Wall traces of the modified composite: values `±Q/2` and normal
/// derivative 0, to rounding.
pub const COMP_WALL_TRACE: f64 = 1e-12;

/// Odd symmetry of the straight-wedge composite in ψ.
pub const COMP_ODD_SYMMETRY: f64 = 1e-10;

/// Slope window half-width for the residual norm vs. `√(ε/Q)`.
pub const COMP_RES_SLOPE_WINDOW: f64 = 0.5;

/// Slope window half-width for the velocity-error norms vs. `√(εQ)`.
pub const COMP_THM_SLOPE_WINDOW: f64 = 0.3;

/// Residual at the strip ends must fall below this fraction of the
/// mid-strip sup (the far-field splice suppresses the non-decaying tail).
pub const COMP_TAIL_FRACTION: f64 = 1e-3;

/// Station-wise flux identity `−∫Ū dψ = Q`, relative to `Q`.
///
/// Measured through the stream function's wall-to-wall difference, which the
/// assembly imposes exactly.
pub const COMP_FLUX_REL: f64 = 1e-8;

/// Pointwise covariance of the velocity field under joint rescaling of
/// `(Q, ε)` at fixed `ε/Q`, relative to `Q`.
pub const COMP_RESCALE_REL: f64 = 1e-8;

/// ξ-limit consistency of composite velocities with the far-field
/// profiles, relative to `Q`.
pub const COMP_XI_LIMIT_REL: f64 = 1e-3;

// ═══════════════════════════════════════════════════════════════════
// Generic numerics
// ═══════════════════════════════════════════════════════════════════

/// Zero-pivot guard for the unpivoted banded factorization.
///
/// The strip operators are diagonally dominant M-matrix-like systems;
/// pivots this small mean the assembly is broken, not that pivoting is
/// needed.
pub const NUM_PIVOT_MIN: f64 = 1e-300;

/// Relative agreement required from frozen-value regression tests that
/// mirror an independently validated reference implementation of the same
/// algorithm (same arithmetic, different language/runtime).
pub const NUM_FROZEN_MIRROR: f64 = 1e-9;

/// Tight frozen-value tolerance for short closed-form computations.
pub const NUM_FROZEN_CLOSED_FORM: f64 = 1e-12;
