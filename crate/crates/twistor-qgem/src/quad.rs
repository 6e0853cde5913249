//! Adaptive one-dimensional quadrature on a Gauss-Legendre 7/15 pair.
//!
//! Each cell is evaluated with 7-point and 15-point Gauss-Legendre rules;
//! their difference drives bisection until the local error fits within the
//! cell's share of the requested tolerance. Nodes and weights are computed
//! once by Newton iteration on the Legendre recurrence, so there are no
//! transcribed magic constants to get wrong.
//!
//! The phase integrals built on top integrate piecewise-smooth functions
//! with known breakpoints (worldline samples, light-cone exclusion edges);
//! [`integrate_with_breakpoints`] splits there first so the adaptive rule
//! only ever sees smooth pieces.

use std::ops::{Add, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;

const MAX_DEPTH: usize = 48;

/// Cells are not split below this fraction of the original interval.
/// Structure that narrow is indistinguishable from floating-point noise of
/// the integrand at the tolerances this library serves, and subdividing
/// into it lets noise inflate the cell tree without bound.
const MIN_WIDTH_FRACTION: f64 = 1e-12;

/// Hard cap on integrand evaluations per adaptive call. An integrand that
/// is noise-limited across the whole domain stops refining here and the
/// residual shows up in the error estimate instead of in the runtime.
const MAX_EVALS: usize = 500_000;

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    /// Accumulated error estimate (difference of the embedded rules plus
    /// any cells abandoned at the refinement caps).
    pub abs_error: f64,
    pub evaluations: usize,
}

/// Values an adaptive rule can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> {
    fn zero() -> Self;
    fn scale(self, s: f64) -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Legendre P_n(x) and derivative via the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let mut p0 = 1.0;
        let mut p1 = x;
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

fn rule7() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(7))
}

fn rule15() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(15))
}

fn apply_rule<T: QuadValue>(
    f: &mut impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    rule: &[(f64, f64)],
) -> T {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = T::zero();
    for &(x, w) in rule {
        acc = acc + f(mid + half * x).scale(w);
    }
    acc.scale(half)
}

fn adapt<T: QuadValue>(
    f: &mut impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
    width_floor: f64,
    evals: &mut usize,
) -> (T, f64) {
    let coarse = apply_rule(f, a, b, rule7());
    let fine = apply_rule(f, a, b, rule15());
    *evals += 22;
    let err = (fine - coarse).magnitude();
    if err <= tol
        || depth >= MAX_DEPTH
        || (b - a) <= width_floor
        || *evals >= MAX_EVALS
    {
        return (fine, err);
    }
    let mid = 0.5 * (a + b);
    let (left, el) = adapt(f, a, mid, tol * 0.5, depth + 1, width_floor, evals);
    let (right, er) = adapt(f, mid, b, tol * 0.5, depth + 1, width_floor, evals);
    (left + right, el + er)
}

/// Adaptively integrate `f` over `[a, b]` to roughly
/// `max(abs_tol, rel_tol * |integral|)`.
pub fn integrate<T: QuadValue>(
    mut f: impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> QuadResult<T> {
    if a == b {
        return QuadResult {
            value: T::zero(),
            abs_error: 0.0,
            evaluations: 0,
        };
    }
    let mut evals = 0;
    let width_floor = (b - a).abs() * MIN_WIDTH_FRACTION;
    // A first pass sizes the tolerance; refinement then targets it.
    let pilot = apply_rule(&mut f, a, b, rule15());
    evals += 15;
    let tol = abs_tol.max(rel_tol * pilot.magnitude());
    let (value, err) = adapt(&mut f, a, b, tol, 0, width_floor, &mut evals);
    // If refinement revealed a much larger integral, tighten once more.
    let better_tol = abs_tol.max(rel_tol * value.magnitude());
    if err > better_tol && better_tol > tol {
        let (value2, err2) = adapt(&mut f, a, b, better_tol, 0, width_floor, &mut evals);
        return QuadResult {
            value: value2,
            abs_error: err2,
            evaluations: evals,
        };
    }
    QuadResult {
        value,
        abs_error: err,
        evaluations: evals,
    }
}

/// Evaluate the 7/15 pair once per consecutive cell of `edges` without any
/// adaptive refinement.
///
/// The caller supplies a mesh already shaped to the integrand (for example
/// geometrically graded toward a near-singularity). Because no refinement
/// decisions are made, the result varies smoothly with any parameter the
/// integrand and mesh depend smoothly on, which matters when this value is
/// itself integrated by the adaptive rule: decision noise would otherwise
/// masquerade as roughness of the outer integrand.
pub fn fixed_mesh<T: QuadValue>(mut f: impl FnMut(f64) -> T, edges: &[f64]) -> QuadResult<T> {
    let mut value = T::zero();
    let mut err = 0.0;
    let mut evals = 0;
    for pair in edges.windows(2) {
        if pair[1] <= pair[0] {
            continue;
        }
        let coarse = apply_rule(&mut f, pair[0], pair[1], rule7());
        let fine = apply_rule(&mut f, pair[0], pair[1], rule15());
        evals += 22;
        value = value + fine;
        err += (fine - coarse).magnitude();
    }
    QuadResult {
        value,
        abs_error: err,
        evaluations: evals,
    }
}

/// Integrate over `[a, b]` split at the given interior breakpoints (sorted
/// or not, duplicates and out-of-range values ignored).
pub fn integrate_with_breakpoints<T: QuadValue>(
    mut f: impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    rel_tol: f64,
    abs_tol: f64,
) -> QuadResult<T> {
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&t| t > a && t < b)
        .collect();
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();
    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(a);
    edges.extend(cuts);
    edges.push(b);
    let mut total = T::zero();
    let mut err = 0.0;
    let mut evals = 0;
    let span = (b - a).abs();
    for pair in edges.windows(2) {
        let frac = ((pair[1] - pair[0]).abs() / span).max(1e-3);
        let r = integrate(&mut f, pair[0], pair[1], rel_tol, abs_tol * frac);
        total = total + r.value;
        err += r.abs_error;
        evals += r.evaluations;
    }
    QuadResult {
        value: total,
        abs_error: err,
        evaluations: evals,
    }
}
