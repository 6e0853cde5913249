//! Gravitational phase accumulated by a pair of massive worldlines.
//!
//! Two masses following worldlines x_A(t), x_B(t) pick up a relative quantum
//! phase from their mutual gravitational interaction. This module computes
//! that phase under four interchangeable propagator kernels:
//!
//! * `Static`: instantaneous 1/r interaction evaluated at equal times,
//!   weighted by the proper-time measure of both particles.
//! * `Retarded`: the signal leaves B on the past light cone of A's current
//!   event, producing the Lienard-Wiechert weight 1/(r (1 - r_hat . beta)).
//! * `InvariantInterval`: a manifestly covariant kernel supported on the
//!   light cone plus a principal-value tail off the cone,
//!   delta(interval^2) + (1/pi^2) PV 1/interval^2, with the squared interval
//!   computed directly from coordinates.
//! * `TwistorDetKernel`: the same covariant kernel, but with the squared
//!   interval recovered from the determinant combination of twistor scalar
//!   kernels on the point-incident lines, exercising the full algebraic
//!   reduction path instead of coordinate geometry.
//!
//! The last two must agree to tight tolerance; the first two are their
//! non-relativistic and half-relativistic limits. All four collapse to the
//! closed form G m_A m_B T / (hbar r) for static masses, which is the anchor
//! every integration test checks against.
//!
//! Quadrature is the adaptive Gauss-Legendre pair from [`crate::quad`],
//! split at worldline sample times so the rule only sees smooth pieces.
//! Light-cone crossings are located per piece by bisection (the squared
//! interval is exactly quadratic in the inner time for linearly interpolated
//! worldlines), and the principal-value tail excises a fixed fraction of the
//! inner window around each crossing, symmetrically, so the leading
//! divergence cancels.

use std::cell::{Cell, RefCell};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::bitwistor::{
    invariant_i, point_to_bitwistor, BitwistorWorldline, PiBasis,
};
use crate::error::{AlgebraError, PhaseError};
use crate::kernel::{det_kernel, KernelValue, REDUCTION_CONSTANT};
use crate::quad::{fixed_mesh, integrate_with_breakpoints, QuadResult};
use crate::spinor::SpacetimePoint;
use crate::twistor::InfinityTwistor;
use crate::worldline::{common_window, SpacetimeWorldline};

/// Coupling constants of the problem. SI values are the default; unit tests
/// and the static-limit study often run with all three set to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Newton's constant, m^3 kg^-1 s^-2 in SI mode.
    pub g_newton: f64,
    /// Reduced Planck constant, J s in SI mode.
    pub hbar: f64,
    /// Speed of light, m/s in SI mode.
    pub c: f64,
}

impl PhysicalConstants {
    /// CODATA 2018 recommended values.
    pub fn codata2018() -> Self {
        PhysicalConstants {
            g_newton: 6.67430e-11,
            hbar: 1.054571817e-34,
            c: 2.99792458e8,
        }
    }

    /// G = hbar = c = 1.
    pub fn natural() -> Self {
        PhysicalConstants {
            g_newton: 1.0,
            hbar: 1.0,
            c: 1.0,
        }
    }

    pub fn validate(&self) -> Result<(), PhaseError> {
        if !(self.g_newton > 0.0) || !self.g_newton.is_finite() {
            return Err(PhaseError::BadConstants("g_newton"));
        }
        if !(self.hbar > 0.0) || !self.hbar.is_finite() {
            return Err(PhaseError::BadConstants("hbar"));
        }
        if !(self.c > 0.0) || !self.c.is_finite() {
            return Err(PhaseError::BadConstants("c"));
        }
        Ok(())
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata2018()
    }
}

/// Propagator kernel selecting how the interaction travels between the
/// worldlines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelChoice {
    Static,
    Retarded,
    InvariantInterval,
    TwistorDetKernel,
}

impl KernelChoice {
    /// The identifier reported in results for this kernel.
    pub fn kernel_id(self) -> KernelId {
        match self {
            KernelChoice::Static => KernelId::NewtonianStatic,
            KernelChoice::Retarded => KernelId::Retarded,
            KernelChoice::InvariantInterval => KernelId::InvariantInterval,
            KernelChoice::TwistorDetKernel => KernelId::TwistorDetKernel,
        }
    }
}

impl FromStr for KernelChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "static" => Ok(KernelChoice::Static),
            "retarded" => Ok(KernelChoice::Retarded),
            "invariant_interval" => Ok(KernelChoice::InvariantInterval),
            "twistor_detkernel" => Ok(KernelChoice::TwistorDetKernel),
            other => Err(format!(
                "unknown kernel '{other}' (expected static, retarded, \
                 invariant_interval or twistor_detkernel)"
            )),
        }
    }
}

/// Identifier attached to every phase result naming the kernel that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelId {
    #[serde(rename = "newtonian_static")]
    NewtonianStatic,
    #[serde(rename = "retarded")]
    Retarded,
    #[serde(rename = "invariant_interval")]
    InvariantInterval,
    #[serde(rename = "twistor_detkernel")]
    TwistorDetKernel,
    #[serde(rename = "custom_F")]
    CustomF,
}

impl KernelId {
    pub fn token(self) -> &'static str {
        match self {
            KernelId::NewtonianStatic => "newtonian_static",
            KernelId::Retarded => "retarded",
            KernelId::InvariantInterval => "invariant_interval",
            KernelId::TwistorDetKernel => "twistor_detkernel",
            KernelId::CustomF => "custom_F",
        }
    }
}

impl fmt::Display for KernelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Whether the interaction integrals weight each worldline by its proper
/// time (the physical choice) or by plain coordinate time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeMeasure {
    #[default]
    ProperTime,
    CoordinateTime,
}

/// Tunable knobs of the phase integrators. The defaults are tight enough
/// that quadrature error never competes with the physical tolerances the
/// test suite asserts.
#[derive(Debug, Clone)]
pub struct PhaseOptions {
    /// Relative quadrature tolerance.
    pub rel_tol: f64,
    /// Absolute quadrature tolerance floor, in radians.
    pub abs_tol: f64,
    /// Minimum admissible separation; closer approaches are reported as
    /// collisions rather than integrated through the 1/r divergence.
    pub r_min: f64,
    /// Half-width of the exclusion window around each light-cone crossing
    /// in the principal-value tail, as a fraction of the inner window.
    pub pv_window_fraction: f64,
    /// Maximum tolerated fraction of the inner window excised by
    /// principal-value windows before the integral is declared ill-posed.
    pub max_singular_fraction: f64,
    pub measure: TimeMeasure,
    /// Primed-spinor basis used when building point-incident lines for the
    /// twistor kernel route.
    pub pi_basis: PiBasis,
}

impl Default for PhaseOptions {
    fn default() -> Self {
        PhaseOptions {
            rel_tol: 1e-11,
            abs_tol: 1e-14,
            r_min: 1e-9,
            pv_window_fraction: 1e-6,
            max_singular_fraction: 0.01,
            measure: TimeMeasure::ProperTime,
            pi_basis: PiBasis::default(),
        }
    }
}

/// Outcome of a phase integration.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PhaseResult {
    /// Accumulated phase in radians, sign included (attractive
    /// interactions give negative phase).
    pub phi: f64,
    /// Propagated quadrature error estimate, radians.
    pub abs_error_estimate: f64,
    pub kernel_id: KernelId,
    /// Light-cone grazes skipped and principal-value windows excised while
    /// integrating; zero for the kernels that have no singular set.
    pub excluded_singular_samples: u64,
}

impl PhaseResult {
    /// |phi|, the magnitude compared against interferometric predictions.
    pub fn magnitude(&self) -> f64 {
        self.phi.abs()
    }
}

/// Magnitude of the phase two static masses a distance `r` apart accumulate
/// over a duration `t`: G m_a m_b t / (hbar r).
pub fn closed_form_phase(
    m_a: f64,
    m_b: f64,
    r: f64,
    duration: f64,
    consts: &PhysicalConstants,
) -> Result<f64, PhaseError> {
    consts.validate()?;
    if !(m_a > 0.0 && m_a.is_finite()) || !(m_b > 0.0 && m_b.is_finite()) {
        return Err(PhaseError::InvalidArgument("masses must be positive"));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(PhaseError::InvalidArgument("separation must be positive"));
    }
    if !(duration >= 0.0 && duration.is_finite()) {
        return Err(PhaseError::InvalidArgument(
            "duration must be non-negative",
        ));
    }
    Ok(consts.g_newton * m_a * m_b * duration / (consts.hbar * r))
}

/// Signed closed form: the interaction is attractive, so the accumulated
/// phase is negative.
pub fn closed_form_phase_signed(
    m_a: f64,
    m_b: f64,
    r: f64,
    duration: f64,
    consts: &PhysicalConstants,
) -> Result<f64, PhaseError> {
    Ok(-closed_form_phase(m_a, m_b, r, duration, consts)?)
}

fn separation(a: [f64; 3], b: [f64; 3]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}

fn measure_factor(
    w: &SpacetimeWorldline,
    t: f64,
    consts: &PhysicalConstants,
    opts: &PhaseOptions,
) -> f64 {
    match opts.measure {
        TimeMeasure::ProperTime => w.gamma_inv(t, consts.c),
        TimeMeasure::CoordinateTime => 1.0,
    }
}

/// Non-relativistic phase: -(G m_a m_b / hbar) times the time integral of
/// the inverse separation over the common window, no proper-time weights.
pub fn newtonian_phase(
    wa: &SpacetimeWorldline,
    wb: &SpacetimeWorldline,
    consts: &PhysicalConstants,
) -> Result<PhaseResult, PhaseError> {
    newtonian_phase_with(wa, wb, consts, &PhaseOptions::default())
}

/// [`newtonian_phase`] with explicit integration options.
pub fn newtonian_phase_with(
    wa: &SpacetimeWorldline,
    wb: &SpacetimeWorldline,
    consts: &PhysicalConstants,
    opts: &PhaseOptions,
) -> Result<PhaseResult, PhaseError> {
    consts.validate()?;
    let (lo, hi) = require_overlap(wa, wb)?;
    let collision: Cell<Option<(f64, f64)>> = Cell::new(None);
    let integrand = |t: f64| {
        let r = separation(wa.position(t), wb.position(t));
        if r < opts.r_min {
            if collision.get().is_none() {
                collision.set(Some((t, r)));
            }
            return 0.0;
        }
        1.0 / r
    };
    let mut cuts = wa.breakpoints_within(lo, hi);
    cuts.extend(wb.breakpoints_within(lo, hi));
    let q = integrate_with_breakpoints(integrand, lo, hi, &cuts, opts.rel_tol, opts.abs_tol);
    if let Some((t, r)) = collision.get() {
        return Err(PhaseError::Collision {
            t,
            r,
            r_min: opts.r_min,
        });
    }
    let prefactor = -consts.g_newton * wa.mass() * wb.mass() / consts.hbar;
    Ok(PhaseResult {
        phi: prefactor * q.value,
        abs_error_estimate: prefactor.abs() * q.abs_error,
        kernel_id: KernelId::NewtonianStatic,
        excluded_singular_samples: 0,
    })
}

fn require_overlap(
    wa: &SpacetimeWorldline,
    wb: &SpacetimeWorldline,
) -> Result<(f64, f64), PhaseError> {
    common_window(wa, wb).ok_or_else(|| {
        let (a0, a1) = wa.window();
        let (b0, b1) = wb.window();
        PhaseError::NoOverlap { a0, a1, b0, b1 }
    })
}

/// Phase under the chosen propagator kernel with default options.
pub fn bilocal_phase(
    wa: &SpacetimeWorldline,
    wb: &SpacetimeWorldline,
    kernel: KernelChoice,
    consts: &PhysicalConstants,
) -> Result<PhaseResult, PhaseError> {
    bilocal_phase_with(wa, wb, kernel, consts, &PhaseOptions::default())
}

/// Phase under the chosen propagator kernel.
///
/// The instantaneous `Static` kernel requires the time windows to overlap;
/// the causal kernels integrate A over its own window and let the
/// interaction connect to whatever part of B's window the light cone (or
/// the tail) reaches.
pub fn bilocal_phase_with(
    wa: &SpacetimeWorldline,
    wb: &SpacetimeWorldline,
    kernel: KernelChoice,
    consts: &PhysicalConstants,
    opts: &PhaseOptions,
) -> Result<PhaseResult, PhaseError> {
    consts.validate()?;
    match kernel {
        KernelChoice::Static => static_kernel_phase(wa, wb, consts, opts),
        KernelChoice::Retarded => retarded_phase(wa, wb, consts, opts),
        KernelChoice::InvariantInterval => {
            cone_pv_phase(wa, wb, consts, opts, DeltaRoute::Coordinates)
        }
        KernelChoice::TwistorDetKernel => {
            cone_pv_phase(wa, wb, consts, opts, DeltaRoute::TwistorLines)
        }
    }
}

/// Instantaneous 1/r kernel with proper-time weights on both legs.
fn static_kernel_phase(
    wa: &SpacetimeWorldline,
    wb: &SpacetimeWorldline,
    consts: &PhysicalConstants,
    opts: &PhaseOptions,
) -> Result<PhaseResult, PhaseError> {
    let (lo, hi) = require_overlap(wa, wb)?;
    let collision: Cell<Option<(f64, f64)>> = Cell::new(None);
    let integrand = |t: f64| {
        let r = separation(wa.position(t), wb.position(t));
        if r < opts.r_min {
            if collision.get().is_none() {
                collision.set(Some((t, r)));
            }
            return 0.0;
        }
        measure_factor(wa, t, consts, opts) * measure_factor(wb, t, consts, opts) / r
    };
    let mut cuts = wa.breakpoints_within(lo, hi);
    cuts.extend(wb.breakpoints_within(lo, hi));
    let q = integrate_with_breakpoints(integrand, lo, hi, &cuts, opts.rel_tol, opts.abs_tol);
    if let Some((t, r)) = collision.get() {
        return Err(PhaseError::Collision {
            t,
            r,
            r_min: opts.r_min,
        });
    }
    let prefactor = -consts.g_newton * wa.mass() * wb.mass() / consts.hbar;
    Ok(PhaseResult {
        phi: prefactor * q.value,
        abs_error_estimate: prefactor.abs() * q.abs_error,
        kernel_id: KernelId::NewtonianStatic,
        excluded_singular_samples: 0,
    })
}

/// Retarded kernel: for each outer time t the inner leg contributes from
/// the single retarded time t' solving t - t' = r(t, t')/c, with the
/// Lienard-Wiechert weight 1/(r (1 - r_hat . beta_B)).
fn retarded_phase(
    wa: &SpacetimeWorldline,
    wb: &SpacetimeWorldline,
    consts: &PhysicalConstants,
    opts: &PhaseOptions,
) -> Result<PhaseResult, PhaseError> {
    let (a0, a1) = wa.window();
    let (b0, b1) = wb.window();
    let collision: Cell<Option<(f64, f64)>> = Cell::new(None);
    let integrand = |t: f64| {
        let xa = wa.position(t);
        // Light-cone residual h(t') = c (t - t') - r(t'); strictly
        // decreasing in t' for subluminal motion, so bisection finds the
        // unique retarded time if the window brackets it.
        let h = |tp: f64| consts.c * (t - tp) - separation(xa, wb.position(tp));
        let (hl, hr) = (h(b0), h(b1));
        if hl < 0.0 || hr > 0.0 {
            return 0.0;
        }
        let tp = bisect(&h, b0, b1, hl);
        let xb = wb.position(tp);
        let r = separation(xa, xb);
        if r < opts.r_min {
            if collision.get().is_none() {
                collision.set(Some((t, r)));
            }
            return 0.0;
        }
        let v = wb.velocity(tp);
        let rvec = [xb[0] - xa[0], xb[1] - xa[1], xb[2] - xa[2]];
        // r (1 - r_hat . beta) expanded to avoid dividing by r twice.
        let denom = r - (rvec[0] * v[0] + rvec[1] * v[1] + rvec[2] * v[2]) / consts.c;
        measure_factor(wa, t, consts, opts) * measure_factor(wb, tp, consts, opts) / denom
    };
    let cuts = wa.breakpoints_within(a0, a1);
    let q = integrate_with_breakpoints(integrand, a0, a1, &cuts, opts.rel_tol, opts.abs_tol);
    if let Some((t, r)) = collision.get() {
        return Err(PhaseError::Collision {
            t,
            r,
            r_min: opts.r_min,
        });
    }
    let prefactor = -consts.g_newton * wa.mass() * wb.mass() / consts.hbar;
    Ok(PhaseResult {
        phi: prefactor * q.value,
        abs_error_estimate: prefactor.abs() * q.abs_error,
        kernel_id: KernelId::Retarded,
        excluded_singular_samples: 0,
    })
}

/// Bisection for a root of `f` in [lo, hi] given f(lo) = flo with a sign
/// change across the interval. The midpoint test stops the loop once the
/// interval is a single floating-point step wide; the iteration cap covers
/// the worst case of a light-time-scale root inside a seconds-scale
/// bracket, where that takes over a hundred halvings.
fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    for _ in 0..140 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// How the covariant kernel obtains the squared interval between events.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DeltaRoute {
    /// Directly from coordinate differences.
    Coordinates,
    /// Through the determinant combination of twistor scalar kernels on
    /// point-incident lines, translated to the pair midpoint so the
    /// contraction stays well conditioned at laboratory scales.
    TwistorLines,
}

/// Shared state of one covariant-kernel integration.
struct ConeContext<'a> {
    wa: &'a SpacetimeWorldline,
    wb: &'a SpacetimeWorldline,
    consts: &'a PhysicalConstants,
    opts: &'a PhaseOptions,
    route: DeltaRoute,
    algebra_error: RefCell<Option<AlgebraError>>,
    grazes: Cell<u64>,
    pv_windows: Cell<u64>,
    worst_fraction: Cell<f64>,
    worst_roots: Cell<u64>,
    max_inner_error: Cell<f64>,
}

impl ConeContext<'_> {
    /// Squared invariant interval between A's event at `t` and B's event at
    /// `tp`, by the route chosen for this integration.
    fn delta_sq(&self, t: f64, tp: f64) -> f64 {
        let xa = self.wa.position(t);
        let xb = self.wb.position(tp);
        match self.route {
            DeltaRoute::Coordinates => {
                let dt = self.consts.c * (t - tp);
                let dx = xb[0] - xa[0];
                let dy = xb[1] - xa[1];
                let dz = xb[2] - xa[2];
                -dt * dt + dx * dx + dy * dy + dz * dz
            }
            DeltaRoute::TwistorLines => {
                match self.delta_sq_twistor(t, xa, tp, xb) {
                    Ok(v) => v,
                    Err(e) => {
                        let mut slot = self.algebra_error.borrow_mut();
                        slot.get_or_insert(e);
                        f64::NAN
                    }
                }
            }
        }
    }

    fn delta_sq_twistor(
        &self,
        t: f64,
        xa: [f64; 3],
        tp: f64,
        xb: [f64; 3],
    ) -> Result<f64, AlgebraError> {
        self.twistor_interval_core(self.consts.c * (t - tp), xa, xb)
    }

    /// Twistor-route squared interval from the light-time gap c (t - tp)
    /// and the two spatial positions.
    ///
    /// Working in length units with the pair midpoint as origin keeps the
    /// line components of order of the separation instead of the lab time
    /// times c; taking the time gap as one number (rather than forming it
    /// from two nearby absolute times inside) lets near-cone callers pass
    /// it at full precision.
    fn twistor_interval_core(
        &self,
        time_gap: f64,
        xa: [f64; 3],
        xb: [f64; 3],
    ) -> Result<f64, AlgebraError> {
        let mid = [
            0.5 * (xa[0] + xb[0]),
            0.5 * (xa[1] + xb[1]),
            0.5 * (xa[2] + xb[2]),
        ];
        let pa = SpacetimePoint::natural(
            0.5 * time_gap,
            xa[0] - mid[0],
            xa[1] - mid[1],
            xa[2] - mid[2],
        );
        let pb = SpacetimePoint::natural(
            -0.5 * time_gap,
            xb[0] - mid[0],
            xb[1] - mid[1],
            xb[2] - mid[2],
        );
        let la = point_to_bitwistor(&pa, &self.opts.pi_basis, 1.0)?;
        let lb = point_to_bitwistor(&pb, &self.opts.pi_basis, 1.0)?;
        let ia = la.infinity_trace(InfinityTwistor::PiBlock);
        let ib = lb.infinity_trace(InfinityTwistor::PiBlock);
        // Inverse of the normalized determinant kernel, arranged so the
        // value passes smoothly through zero on the light cone.
        Ok((invariant_i(&la, &lb) * REDUCTION_CONSTANT / (ia * ib)).re)
    }

    /// Spatial distance between A's event at `t` and B's event at `tp`.
    fn separation_at(&self, t: f64, tp: f64) -> f64 {
        let xa = self.wa.position(t);
        let xb = self.wb.position(tp);
        let dx = xb[0] - xa[0];
        let dy = xb[1] - xa[1];
        let dz = xb[2] - xa[2];
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    /// Light-cone crossings of A's event at `t` along B's window.
    ///
    /// The squared interval vanishes exactly where c |t - tp| equals the
    /// spatial separation, so the crossings are the roots of the gap
    /// c |t - tp| - r(tp), strictly monotone in tp on each side of t for a
    /// subluminal inner worldline, leaving at most one root per side,
    /// found by bracketed bisection. Two representation choices matter at
    /// laboratory scales, where the light-time across the separation sits
    /// twelve orders of magnitude below the window itself. First, scanning
    /// the squared interval for sign changes cannot work: it swings
    /// through fifteen orders of magnitude while staying positive only on
    /// that sliver. Second, the bisection runs on the offset u = |t - tp|,
    /// not on tp: u carries full floating-point resolution near the root,
    /// while an absolute tp would quantize the offset at the spacing of
    /// the outer time and poison every quantity derived from it.
    fn cone_crossings(&self, t: f64) -> ConeCrossings {
        let (b0, b1) = self.wb.window();
        let c = self.consts.c;
        let mut out = ConeCrossings::default();
        for past in [true, false] {
            // Offset domain keeping t -+ u inside B's window.
            let (u_lo, u_hi) = if past {
                ((t - b1).max(0.0), t - b0)
            } else {
                ((b0 - t).max(0.0), b1 - t)
            };
            if !(u_hi > u_lo) {
                continue;
            }
            // Rises strictly in u from -r (or the window-edge value) to
            // its value at the far edge; a crossing exists iff it changes
            // sign across the domain.
            let gap = |u: f64| {
                let tp = if past { t - u } else { t + u };
                c * u - self.separation_at(t, tp)
            };
            let glo = gap(u_lo);
            let ghi = gap(u_hi);
            let signed = |u: f64| if past { u } else { -u };
            if glo == 0.0 {
                // A crossing exactly on the domain edge gets no certified
                // slope and only half a neighborhood; hand it to the
                // exclusion windows instead of the on-cone sum.
                out.grazes.push(if past { t - u_lo } else { t + u_lo });
            } else if ghi == 0.0 {
                out.grazes.push(if past { t - u_hi } else { t + u_hi });
            } else if glo < 0.0 && ghi > 0.0 {
                let u = bisect(&gap, u_lo, u_hi, glo);
                out.transversal.push(Crossing {
                    tp: if past { t - u } else { t + u },
                    offset: signed(u),
                });
            }
        }
        out.transversal
            .sort_by(|x, y| x.tp.partial_cmp(&y.tp).unwrap());
        out
    }

    /// d(delta_sq)/dtp at a located crossing, analytic from the coordinate
    /// geometry, conditioned on the stored offset: the term 2 c^2 (t - tp)
    /// evaluated through absolute times would lose seven digits at
    /// laboratory scales before the speed of light squares onto it.
    fn crossing_slope(&self, t: f64, crossing: &Crossing) -> f64 {
        let xa = self.wa.position(t);
        let xb = self.wb.position(crossing.tp);
        let v = self.wb.velocity(crossing.tp);
        let c2 = self.consts.c * self.consts.c;
        2.0 * c2 * crossing.offset
            + 2.0 * ((xb[0] - xa[0]) * v[0] + (xb[1] - xa[1]) * v[1] + (xb[2] - xa[2]) * v[2])
    }

    /// Refine a coordinate-located crossing on the twistor interval and
    /// read the slope off the same probes, so the on-cone weight comes
    /// entirely from twistor evaluations.
    ///
    /// Probes sit at fixed fractions of the crossing offset, far enough in
    /// to stay away from the opposite crossing, and the refinement again
    /// bisects the offset, never an absolute time.
    fn twistor_crossing(&self, t: f64, crossing: &Crossing) -> (f64, f64) {
        let xa = self.wa.position(t);
        let dsq_at = |offset: f64| {
            let xb = self.wb.position(t - offset);
            match self.twistor_interval_core(self.consts.c * offset, xa, xb) {
                Ok(v) => v,
                Err(e) => {
                    let mut slot = self.algebra_error.borrow_mut();
                    slot.get_or_insert(e);
                    f64::NAN
                }
            }
        };
        let o0 = crossing.offset;
        let (o_in, o_out) = (0.75 * o0, 1.25 * o0);
        let s_in = dsq_at(o_in);
        let s_out = dsq_at(o_out);
        // d(delta_sq)/dtp = -d/d(offset); the secant over the symmetric
        // probe pair lands on the crossing up to curvature terms the
        // surrounding quadrature cannot see.
        let slope = -(s_out - s_in) / (o_out - o_in);
        let refined = if s_in * s_out < 0.0 {
            let (lo, hi, flo) = if o0 > 0.0 {
                (o_in, o_out, s_in)
            } else {
                (o_out, o_in, s_out)
            };
            t - bisect(&dsq_at, lo, hi, flo)
        } else {
            crossing.tp
        };
        (refined, slope)
    }
}

/// One transversal light-cone crossing: the inner time `tp` for measure
/// and window bookkeeping, and the full-precision offset t - tp that every
/// conditioning-sensitive quantity is derived from.
#[derive(Debug, Clone, Copy)]
struct Crossing {
    tp: f64,
    offset: f64,
}

/// Crossings of the light cone along the inner window: transversal roots
/// carry the delta-function weight, grazes are window-edge touches whose
/// weight is uncertified and which only the exclusion windows may handle.
#[derive(Debug, Default)]
struct ConeCrossings {
    transversal: Vec<Crossing>,
    grazes: Vec<f64>,
}

impl ConeCrossings {
    fn all(&self) -> impl Iterator<Item = f64> + '_ {
        self.transversal
            .iter()
            .map(|c| c.tp)
            .chain(self.grazes.iter().copied())
    }
}

/// Merge overlapping exclusion intervals (already sorted by start).
fn merge_windows(mut spans: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    spans.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(spans.len());
    for (lo, hi) in spans {
        match merged.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    merged
}

/// Append the cell edges for one gap between exclusion windows: geometric
/// grading from both ends inward starting at the window scale `w` (either
/// end may sit next to an excised light-cone crossing, where the integrand
/// ramps like the inverse distance), split further at worldline samples.
fn grade_piece(lo: f64, hi: f64, w: f64, samples: &[f64], edges: &mut Vec<f64>) {
    edges.clear();
    edges.push(lo);
    let half = 0.5 * (hi - lo);
    let mut offset = 3.0 * w;
    for _ in 0..64 {
        if offset >= half {
            break;
        }
        edges.push(lo + offset);
        edges.push(hi - offset);
        offset *= 4.0;
    }
    edges.extend(samples.iter().copied().filter(|&s| s > lo && s < hi));
    edges.push(hi);
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
    edges.dedup();
}

/// Covariant kernel: on-cone contribution delta(interval^2) collapsed over
/// the crossings, plus the principal-value tail of 1/interval^2 off the
/// cone, with prefactor -G c m_a m_b / hbar and 1/pi^2 on the tail.
///
/// The two terms are integrated in separate passes. The tail pass evaluates
/// its inner integral on a fixed geometric mesh rather than adaptively:
/// the exclusion windows travel with the outer time, and adaptive
/// refinement decisions flipping from one outer sample to the next would
/// make the outer integrand look rough at exactly the tolerance the outer
/// rule is trying to certify.
fn cone_pv_phase(
    wa: &SpacetimeWorldline,
    wb: &SpacetimeWorldline,
    consts: &PhysicalConstants,
    opts: &PhaseOptions,
    route: DeltaRoute,
) -> Result<PhaseResult, PhaseError> {
    let ctx = ConeContext {
        wa,
        wb,
        consts,
        opts,
        route,
        algebra_error: RefCell::new(None),
        grazes: Cell::new(0),
        pv_windows: Cell::new(0),
        worst_fraction: Cell::new(0.0),
        worst_roots: Cell::new(0),
        max_inner_error: Cell::new(0.0),
    };
    let (a0, a1) = wa.window();
    let (b0, b1) = wb.window();
    let span_b = b1 - b0;
    let half_width = opts.pv_window_fraction * span_b;
    let inv_pi_sq = 1.0 / (std::f64::consts::PI * std::f64::consts::PI);
    let cuts_a = wa.breakpoints_within(a0, a1);
    let sample_times: Vec<f64> = wb.samples().iter().map(|s| s.t).collect();

    // Pass 1: the on-cone sum, smooth in t wherever crossings stay
    // transversal and interior.
    let cone_outer = |t: f64| {
        let crossings = ctx.cone_crossings(t);
        ctx.grazes.set(ctx.grazes.get() + crossings.grazes.len() as u64);
        let mut sum = 0.0;
        for crossing in &crossings.transversal {
            let (root, slope) = match route {
                DeltaRoute::Coordinates => (crossing.tp, ctx.crossing_slope(t, crossing)),
                DeltaRoute::TwistorLines => ctx.twistor_crossing(t, crossing),
            };
            let slope = slope.abs();
            // Near-tangential crossings carry a large but integrable
            // weight and stay; only a slope the division cannot survive
            // is dropped, as a graze.
            if slope < 1e-300 {
                ctx.grazes.set(ctx.grazes.get() + 1);
            } else {
                sum += measure_factor(wb, root, consts, opts) / slope;
            }
        }
        measure_factor(wa, t, consts, opts) * sum
    };
    let cone_q: QuadResult<f64> =
        integrate_with_breakpoints(cone_outer, a0, a1, &cuts_a, opts.rel_tol, opts.abs_tol);
    if let Some(e) = ctx.algebra_error.borrow_mut().take() {
        return Err(PhaseError::Algebra(e));
    }

    // Pass 2: the principal-value tail over the inner window minus the
    // exclusion spans around each crossing.
    let tail_outer = |t: f64| {
        let dsq_t = |tp: f64| ctx.delta_sq(t, tp);
        let crossings = ctx.cone_crossings(t);
        let spans: Vec<(f64, f64)> = crossings
            .all()
            .map(|root| ((root - half_width).max(b0), (root + half_width).min(b1)))
            .collect();
        let merged = merge_windows(spans);
        ctx.pv_windows.set(ctx.pv_windows.get() + merged.len() as u64);
        let excluded_len: f64 = merged.iter().map(|(lo, hi)| hi - lo).sum();
        let fraction = excluded_len / span_b;
        if fraction > ctx.worst_fraction.get() {
            ctx.worst_fraction.set(fraction);
            ctx.worst_roots.set(merged.len() as u64);
        }

        let mut gaps: Vec<(f64, f64)> = Vec::with_capacity(merged.len() + 1);
        let mut gap_lo = b0;
        for (lo, hi) in &merged {
            if *lo > gap_lo {
                gaps.push((gap_lo, *lo));
            }
            gap_lo = gap_lo.max(*hi);
        }
        if gap_lo < b1 {
            gaps.push((gap_lo, b1));
        }

        let mut tail = 0.0;
        let mut mesh: Vec<f64> = Vec::new();
        let mut inner_err = 0.0;
        for (lo, hi) in gaps {
            grade_piece(lo, hi, half_width, &sample_times, &mut mesh);
            let q = fixed_mesh(
                |tp| measure_factor(wb, tp, consts, opts) / dsq_t(tp),
                &mesh,
            );
            tail += q.value;
            inner_err += q.abs_error;
        }
        let prev = ctx.max_inner_error.get();
        ctx.max_inner_error.set(prev.max(inner_err));
        measure_factor(wa, t, consts, opts) * tail
    };
    // The tail is orders of magnitude below the cone term whenever the
    // cone is crossed at all, so it gets a looser relative target.
    let tail_q: QuadResult<f64> = integrate_with_breakpoints(
        tail_outer,
        a0,
        a1,
        &cuts_a,
        opts.rel_tol.max(1e-9),
        opts.abs_tol,
    );
    if let Some(e) = ctx.algebra_error.borrow_mut().take() {
        return Err(PhaseError::Algebra(e));
    }
    if ctx.worst_fraction.get() > opts.max_singular_fraction {
        // Report the worst inner sweep in units of exclusion windows: how
        // many were cut against how many would fill the allowed fraction.
        let capacity = (opts.max_singular_fraction / (2.0 * opts.pv_window_fraction)).ceil();
        return Err(PhaseError::SingularExcess {
            excluded: ctx.worst_roots.get(),
            total: capacity as u64,
        });
    }

    let prefactor = -consts.g_newton * consts.c * wa.mass() * wb.mass() / consts.hbar;
    let kernel_id = match route {
        DeltaRoute::Coordinates => KernelId::InvariantInterval,
        DeltaRoute::TwistorLines => KernelId::TwistorDetKernel,
    };
    Ok(PhaseResult {
        phi: prefactor * (cone_q.value + inv_pi_sq * tail_q.value),
        abs_error_estimate: prefactor.abs()
            * (cone_q.abs_error
                + inv_pi_sq
                    * (tail_q.abs_error + ctx.max_inner_error.get() * (a1 - a0))),
        kernel_id,
        excluded_singular_samples: ctx.grazes.get() + ctx.pv_windows.get(),
    })
}

/// Phase from a user-supplied functional of the two line invariants.
///
/// The functional receives the epsilon invariant of the pair of interpolated
/// lines and the determinant-combination kernel value, and its output is
/// integrated over the rectangle of both family parameters. The real part
/// is the phase; any imaginary residue is folded into the error estimate.
pub fn general_phase_functional(
    fam_a: &BitwistorWorldline,
    fam_b: &BitwistorWorldline,
    functional: impl Fn(C64, KernelValue) -> C64,
    opts: &PhaseOptions,
) -> Result<PhaseResult, PhaseError> {
    let (a0, a1) = fam_a.domain();
    let (b0, b1) = fam_b.domain();
    if !(a1 > a0) || !(b1 > b0) {
        return Err(PhaseError::InvalidArgument(
            "line families must span a nonzero parameter range",
        ));
    }
    let algebra_error: RefCell<Option<AlgebraError>> = RefCell::new(None);
    let bad_value: Cell<Option<(f64, f64)>> = Cell::new(None);
    let max_inner_error = Cell::new(0.0_f64);
    let cuts_b: Vec<f64> = fam_b.samples().iter().map(|s| s.0).collect();

    let outer = |tau: f64| {
        let line_a = match fam_a.bitwistor_at(tau) {
            Ok(l) => l,
            Err(e) => {
                algebra_error.borrow_mut().get_or_insert(e);
                return C64::new(f64::NAN, f64::NAN);
            }
        };
        let inner = |tau_p: f64| {
            let line_b = match fam_b.bitwistor_at(tau_p) {
                Ok(l) => l,
                Err(e) => {
                    algebra_error.borrow_mut().get_or_insert(e);
                    return C64::new(f64::NAN, f64::NAN);
                }
            };
            let value = functional(invariant_i(&line_a, &line_b), det_kernel(&line_a, &line_b));
            if !value.re.is_finite() || !value.im.is_finite() {
                if bad_value.get().is_none() {
                    bad_value.set(Some((tau, tau_p)));
                }
                return C64::new(0.0, 0.0);
            }
            value
        };
        let q = integrate_with_breakpoints(
            inner,
            b0,
            b1,
            &cuts_b,
            (opts.rel_tol * 0.1).max(1e-13),
            opts.abs_tol,
        );
        let prev = max_inner_error.get();
        max_inner_error.set(prev.max(q.abs_error));
        q.value
    };

    let cuts_a: Vec<f64> = fam_a.samples().iter().map(|s| s.0).collect();
    let q = integrate_with_breakpoints(outer, a0, a1, &cuts_a, opts.rel_tol, opts.abs_tol);

    if let Some(e) = algebra_error.borrow_mut().take() {
        return Err(PhaseError::Algebra(e));
    }
    if let Some((tau, tau_p)) = bad_value.get() {
        return Err(PhaseError::NonFiniteFunctional { tau, tau_p });
    }
    Ok(PhaseResult {
        phi: q.value.re,
        abs_error_estimate: q.abs_error
            + q.value.im.abs()
            + max_inner_error.get() * (a1 - a0),
        kernel_id: KernelId::CustomF,
        excluded_singular_samples: 0,
    })
}

/// One velocity point of the static-limit study.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StudyRow {
    /// Peak speed of the oscillating mass as a fraction of c.
    pub velocity_fraction: f64,
    pub phi_newtonian: f64,
    pub phi_relativistic: f64,
    /// |phi_rel - phi_newt| / |phi_newt|.
    pub relative_deviation: f64,
}

/// Outcome of the static-limit study: deviations per velocity plus the
/// fitted power of the leading correction.
#[derive(Debug, Clone, Serialize)]
pub struct StaticLimitStudy {
    pub rows: Vec<StudyRow>,
    /// Least-squares slope of ln(deviation) against ln(v/c).
    pub fitted_order: f64,
    /// Root-mean-square residual of that fit.
    pub fit_residual: f64,
}

/// Drive one mass transversally at increasing peak speeds and measure how
/// fast the relativistic (retarded, proper-time weighted) phase converges
/// to the non-relativistic one as the speed drops. The leading correction
/// is expected to be quadratic in v/c.
///
/// Mass A sits at the origin for the whole duration; mass B oscillates
/// transversally at distance `separation` through three full periods. B's
/// samples extend one sixth of the duration past both ends so every
/// retarded time lands inside its window and edge effects vanish.
pub fn static_limit_study(
    separation: f64,
    duration: f64,
    velocity_fractions: &[f64],
    consts: &PhysicalConstants,
    opts: &PhaseOptions,
) -> Result<StaticLimitStudy, PhaseError> {
    consts.validate()?;
    if !(separation > 0.0 && separation.is_finite()) {
        return Err(PhaseError::InvalidArgument("separation must be positive"));
    }
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(PhaseError::InvalidArgument("duration must be positive"));
    }
    if velocity_fractions.is_empty() {
        return Err(PhaseError::InvalidArgument(
            "at least one velocity fraction is required",
        ));
    }
    for &v in velocity_fractions {
        if !(v >= 0.0) || v >= 1.0 {
            return Err(PhaseError::InvalidArgument(
                "velocity fractions must lie in [0, 1)",
            ));
        }
    }

    let omega = 3.0 * std::f64::consts::TAU / duration;
    let margin = duration / 6.0;
    // Sampling density: around a thousand points per oscillation period,
    // so linear interpolation error stays far below the smallest deviation
    // the fit has to resolve.
    let n_inner = 4001;
    let wa = SpacetimeWorldline::static_line(1.0, [0.0; 3], 0.0, duration, 9)?;

    let mut rows = Vec::with_capacity(velocity_fractions.len());
    for &v in velocity_fractions {
        let amplitude = v * consts.c / omega;
        let wb = SpacetimeWorldline::sampled_from_fn(
            1.0,
            |t| [separation, amplitude * (omega * t).sin(), 0.0],
            -margin,
            duration + margin,
            n_inner,
            consts.c,
        )?;
        let phi_n = newtonian_phase_with(&wa, &wb, consts, opts)?.phi;
        let phi_r = bilocal_phase_with(&wa, &wb, KernelChoice::Retarded, consts, opts)?.phi;
        rows.push(StudyRow {
            velocity_fraction: v,
            phi_newtonian: phi_n,
            phi_relativistic: phi_r,
            relative_deviation: ((phi_r - phi_n) / phi_n).abs(),
        });
    }

    // Fit ln(dev) = order * ln(v) + const over the rows with a usable
    // deviation; v = 0 rows certify the degenerate limit instead.
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.velocity_fraction > 0.0 && r.relative_deviation > 0.0)
        .map(|r| (r.velocity_fraction.ln(), r.relative_deviation.ln()))
        .collect();
    let (fitted_order, fit_residual) = fit_line(&pts);
    Ok(StaticLimitStudy {
        rows,
        fitted_order,
        fit_residual,
    })
}

/// Ordinary least squares y = a x + b; returns (a, rms residual). Fewer
/// than two points give a NaN slope, which downstream assertions treat as
/// an honest failure.
fn fit_line(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return (f64::NAN, f64::NAN);
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = pts
        .iter()
        .map(|p| {
            let e = p.1 - slope * p.0 - intercept;
            e * e
        })
        .sum();
    (slope, (ss / n).sqrt())
}
