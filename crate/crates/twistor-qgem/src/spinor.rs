//! Two-component spinors and their spacetime encoding.
//!
//! The two spinor index families (unprimed and primed) are distinguished at
//! the type level with zero-sized markers, so contracting a primed spinor
//! against an unprimed bracket is a compile error rather than a silent bug.
//!
//! A real spacetime point enters the algebra through its Hermitian 2x2
//! matrix
//!
//! ```text
//!     X = [ t + z    x + i y ]
//!         [ x - i y  t - z   ]
//! ```
//!
//! whose determinant is `t^2 - x^2 - y^2 - z^2`, minus the squared interval
//! in the (-,+,+,+) signature used throughout this crate.

use std::marker::PhantomData;

use num_complex::Complex64;

use crate::error::AlgebraError;
use crate::mat::Mat2;

pub type C64 = Complex64;

/// Marker for the unprimed spinor index family (the omega slot).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unprimed;

/// Marker for the primed spinor index family (the pi slot).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Primed;

/// A two-component complex spinor tagged with its index family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor2<Ix> {
    pub c: [C64; 2],
    _ix: PhantomData<Ix>,
}

impl<Ix> Spinor2<Ix> {
    pub fn new(c0: C64, c1: C64) -> Self {
        Spinor2 {
            c: [c0, c1],
            _ix: PhantomData,
        }
    }

    pub fn from_re(c0: f64, c1: f64) -> Self {
        Self::new(C64::new(c0, 0.0), C64::new(c1, 0.0))
    }

    pub fn zero() -> Self {
        Self::from_re(0.0, 0.0)
    }

    pub fn norm(&self) -> f64 {
        (self.c[0].norm_sqr() + self.c[1].norm_sqr()).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.c[0] * s, self.c[1] * s)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.c[0] + other.c[0], self.c[1] + other.c[1])
    }
}

/// Antisymmetric two-index bracket `eps(a, b) = a0 b1 - a1 b0`.
///
/// Both arguments must carry the same index family; mixing families does not
/// type-check.
pub fn eps_bracket<Ix>(a: &Spinor2<Ix>, b: &Spinor2<Ix>) -> C64 {
    a.c[0] * b.c[1] - a.c[1] * b.c[0]
}

/// Coordinate convention for spacetime points.
///
/// In `Si` mode the time coordinate is seconds and space is meters; the
/// incidence layer multiplies time by the configured speed of light before
/// forming the point matrix. In `Natural` mode all four coordinates share a
/// unit and the speed of light is taken as 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    Si,
    Natural,
}

impl UnitMode {
    pub fn label(self) -> &'static str {
        match self {
            UnitMode::Si => "si",
            UnitMode::Natural => "natural",
        }
    }
}

/// A real spacetime point with an explicit unit convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    /// Time coordinate; seconds in `Si` mode, length units in `Natural` mode.
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub mode: UnitMode,
}

impl SpacetimePoint {
    pub fn natural(t: f64, x: f64, y: f64, z: f64) -> Self {
        SpacetimePoint {
            t,
            x,
            y,
            z,
            mode: UnitMode::Natural,
        }
    }

    pub fn si(t: f64, x: f64, y: f64, z: f64) -> Self {
        SpacetimePoint {
            t,
            x,
            y,
            z,
            mode: UnitMode::Si,
        }
    }

    /// Time expressed in length units: `c * t` in SI mode, `t` otherwise.
    pub fn time_as_length(&self, c_light: f64) -> f64 {
        match self.mode {
            UnitMode::Si => c_light * self.t,
            UnitMode::Natural => self.t,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Hermitian point matrix with time converted to length units.
    pub fn point_matrix(&self, c_light: f64) -> PointMatrix {
        let t = self.time_as_length(c_light);
        let (x, y, z) = (self.x, self.y, self.z);
        PointMatrix(Mat2([
            [C64::new(t + z, 0.0), C64::new(x, y)],
            [C64::new(x, -y), C64::new(t - z, 0.0)],
        ]))
    }
}

/// Free-function form of [`SpacetimePoint::point_matrix`].
pub fn point_to_matrix(x: &SpacetimePoint, c_light: f64) -> PointMatrix {
    x.point_matrix(c_light)
}

/// Squared interval between two points in the (-,+,+,+) signature:
/// `-dt^2 + dx^2 + dy^2 + dz^2` with time in length units.
///
/// Mixing unit modes is rejected because the subtraction would silently
/// compare seconds against meters.
pub fn minkowski_interval_sq(
    a: &SpacetimePoint,
    b: &SpacetimePoint,
    c_light: f64,
) -> Result<f64, AlgebraError> {
    if a.mode != b.mode {
        return Err(AlgebraError::UnitMismatch(a.mode.label(), b.mode.label()));
    }
    let dt = a.time_as_length(c_light) - b.time_as_length(c_light);
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    let dz = a.z - b.z;
    Ok(-dt * dt + dx * dx + dy * dy + dz * dz)
}

/// The Hermitian 2x2 matrix of a real spacetime point.
///
/// Acting on a primed spinor it produces an unprimed one; this is the index
/// transmutation at the heart of the incidence relation, and it is the only
/// sanctioned way to cross between the two families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMatrix(pub Mat2);

impl PointMatrix {
    /// Contract the point matrix against a primed spinor, yielding the
    /// unprimed spinor `X pi` (no factor of i; the incidence layer adds it).
    #[must_use]
    pub fn apply(&self, pi: &Spinor2<Primed>) -> Spinor2<Unprimed> {
        let v = self.0.mul_vec(pi.c);
        Spinor2::new(v[0], v[1])
    }

    /// `det X = t^2 - x^2 - y^2 - z^2`, minus the squared interval from the
    /// origin.
    pub fn det(&self) -> C64 {
        self.0.det()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn eps_bracket_frozen_value() {
        // a = (2, 3i), b = (1, -i): eps = 2*(-i) - 3i*1 = -5i.
        let a: Spinor2<Primed> = Spinor2::new(C64::new(2.0, 0.0), C64::new(0.0, 3.0));
        let b: Spinor2<Primed> = Spinor2::new(C64::new(1.0, 0.0), C64::new(0.0, -1.0));
        let e = eps_bracket(&a, &b);
        assert_abs_diff_eq!(e.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.im, -5.0, epsilon = 1e-15);
    }

    #[test]
    fn eps_bracket_antisymmetry() {
        let a: Spinor2<Unprimed> = Spinor2::new(C64::new(0.3, -1.2), C64::new(2.0, 0.7));
        let b: Spinor2<Unprimed> = Spinor2::new(C64::new(-0.5, 0.1), C64::new(1.1, 1.9));
        let ab = eps_bracket(&a, &b);
        let ba = eps_bracket(&b, &a);
        assert_abs_diff_eq!((ab + ba).norm(), 0.0, epsilon = 1e-15);
        let aa = eps_bracket(&a, &a);
        assert_abs_diff_eq!(aa.norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn point_matrix_layout() {
        // (t, x, y, z) = (0, 1, 1, 0) gives [[0, 1+i], [1-i, 0]].
        let p = SpacetimePoint::natural(0.0, 1.0, 1.0, 0.0);
        let m = p.point_matrix(1.0);
        assert_abs_diff_eq!(m.0 .0[0][0].norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.0 .0[0][1].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.0 .0[0][1].im, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.0 .0[1][0].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.0 .0[1][0].im, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.0 .0[1][1].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn det_equals_minus_interval_from_origin() {
        let p = SpacetimePoint::natural(1.7, 0.4, -2.1, 0.9);
        let origin = SpacetimePoint::natural(0.0, 0.0, 0.0, 0.0);
        let det = p.point_matrix(1.0).det();
        let s2 = minkowski_interval_sq(&p, &origin, 1.0).unwrap();
        assert_abs_diff_eq!(det.re, -s2, epsilon = 1e-12);
        assert_abs_diff_eq!(det.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn si_mode_scales_time_by_c() {
        let c_light = 2.99792458e8;
        let p = SpacetimePoint::si(2.0, 0.0, 0.0, 0.0);
        let q = SpacetimePoint::si(0.0, 0.0, 0.0, 0.0);
        let s2 = minkowski_interval_sq(&p, &q, c_light).unwrap();
        let expected = -(c_light * 2.0) * (c_light * 2.0);
        assert_abs_diff_eq!(s2 / expected, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn unit_mismatch_is_rejected() {
        let p = SpacetimePoint::si(1.0, 0.0, 0.0, 0.0);
        let q = SpacetimePoint::natural(1.0, 0.0, 0.0, 0.0);
        assert!(matches!(
            minkowski_interval_sq(&p, &q, 1.0),
            Err(AlgebraError::UnitMismatch(_, _))
        ));
    }
}
