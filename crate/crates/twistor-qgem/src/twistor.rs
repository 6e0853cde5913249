//! Twistors, the incidence relation, infinity-twistor contractions, and the
//! symmetry transformations used by the invariance tests.
//!
//! A twistor bundles an unprimed spinor `omega` with a primed spinor `pi`.
//! The incidence relation `omega = i X pi` attaches a twistor to a spacetime
//! point through the point's Hermitian matrix. Contractions against the
//! infinity twistor single out the metric structure: with the omega block
//! populated, the contraction of two point-incident twistors carries the
//! dependence on the points, which is what the downstream kernel reduction
//! measures.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::AlgebraError;
use crate::mat::{Mat2, Mat4};
use crate::spinor::{eps_bracket, Primed, SpacetimePoint, Spinor2, Unprimed};

pub type C64 = Complex64;

/// A twistor `Z = (omega, pi)` viewed as a four-component complex column
/// `(omega0, omega1, pi0, pi1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Twistor {
    pub omega: Spinor2<Unprimed>,
    pub pi: Spinor2<Primed>,
}

impl Twistor {
    pub fn new(omega: Spinor2<Unprimed>, pi: Spinor2<Primed>) -> Self {
        Twistor { omega, pi }
    }

    pub fn components(&self) -> [C64; 4] {
        [self.omega.c[0], self.omega.c[1], self.pi.c[0], self.pi.c[1]]
    }

    pub fn from_components(c: [C64; 4]) -> Self {
        Twistor {
            omega: Spinor2::new(c[0], c[1]),
            pi: Spinor2::new(c[2], c[3]),
        }
    }

    pub fn norm(&self) -> f64 {
        self.components()
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.omega.is_finite() && self.pi.is_finite()
    }
}

/// Build the twistor incident with the point `x`: `omega = i X pi`.
///
/// The time coordinate enters in length units, so SI-mode points need the
/// speed of light; natural-mode points ignore it.
pub fn incident_twistor(
    x: &SpacetimePoint,
    pi: &Spinor2<Primed>,
    c_light: f64,
) -> Result<Twistor, AlgebraError> {
    let norm = pi.norm();
    if norm < f64::MIN_POSITIVE {
        return Err(AlgebraError::ZeroSpinor { norm });
    }
    if !x.is_finite() || !pi.is_finite() {
        return Err(AlgebraError::NonFinite("incident_twistor input"));
    }
    let m = x.point_matrix(c_light);
    let xpi = m.apply(pi);
    let i = C64::new(0.0, 1.0);
    Ok(Twistor::new(xpi.scale(i), *pi))
}

/// Norm of the incidence defect `omega - i X pi` for a twistor against a
/// candidate point. Zero (to rounding) exactly when the twistor is incident
/// with the point.
pub fn incidence_residual(z: &Twistor, x: &SpacetimePoint, c_light: f64) -> f64 {
    let m = x.point_matrix(c_light);
    let xpi = m.apply(&z.pi);
    let i = C64::new(0.0, 1.0);
    let d0 = z.omega.c[0] - i * xpi.c[0];
    let d1 = z.omega.c[1] - i * xpi.c[1];
    (d0.norm_sqr() + d1.norm_sqr()).sqrt()
}

/// The infinity twistor, identified by which 2x2 antisymmetric block is
/// populated.
///
/// The omega block is the working convention: contractions of point-incident
/// twistors then depend on the points, so the kernel reduction has content.
/// The pi block is its dual; it yields point-independent contractions (the
/// pi spinors pass through incidence untouched) and serves as a diagnostic
/// mode and as the trace direction in which line normalizations cancel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InfinityTwistor {
    #[default]
    OmegaBlock,
    PiBlock,
}

impl InfinityTwistor {
    /// The dual convention (the epsilon-dual swaps the two blocks).
    pub fn dual(self) -> Self {
        match self {
            InfinityTwistor::OmegaBlock => InfinityTwistor::PiBlock,
            InfinityTwistor::PiBlock => InfinityTwistor::OmegaBlock,
        }
    }

    /// The antisymmetric 4x4 array realizing the contraction.
    pub fn as_matrix(&self) -> Mat4 {
        let mut m = Mat4::zero();
        let one = C64::new(1.0, 0.0);
        match self {
            InfinityTwistor::OmegaBlock => {
                m.0[0][1] = one;
                m.0[1][0] = -one;
            }
            InfinityTwistor::PiBlock => {
                m.0[2][3] = one;
                m.0[3][2] = -one;
            }
        }
        m
    }
}

/// Infinity-twistor contraction of two twistors.
///
/// With the omega block populated this is `eps(omega_z, omega_w)`; with the
/// pi block, `eps(pi_z, pi_w)`. Antisymmetric and bilinear either way.
pub fn inf_contract(z: &Twistor, w: &Twistor, i: InfinityTwistor) -> C64 {
    match i {
        InfinityTwistor::OmegaBlock => eps_bracket(&z.omega, &w.omega),
        InfinityTwistor::PiBlock => eps_bracket(&z.pi, &w.pi),
    }
}

/// Multiply all four twistor components by a nonzero scalar (projective
/// rescaling).
pub fn rescale(z: &Twistor, lambda: C64) -> Result<Twistor, AlgebraError> {
    if lambda.norm() < f64::MIN_POSITIVE {
        return Err(AlgebraError::ZeroScale);
    }
    Ok(Twistor::new(z.omega.scale(lambda), z.pi.scale(lambda)))
}

/// Fully antisymmetric contraction of four twistors: the determinant of the
/// 4x4 matrix whose columns are their components.
pub fn eps4_contract(z1: &Twistor, z2: &Twistor, z3: &Twistor, z4: &Twistor) -> C64 {
    Mat4::det_of_columns([
        z1.components(),
        z2.components(),
        z3.components(),
        z4.components(),
    ])
}

/// A unimodular 4x4 complex transformation acting on twistor components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl4Transform {
    m: Mat4,
}

impl Sl4Transform {
    pub const UNIMODULAR_TOL: f64 = 1e-10;

    /// Validate unimodularity; rejects matrices with `|det - 1|` above
    /// tolerance.
    pub fn new(m: Mat4) -> Result<Self, AlgebraError> {
        if !m.is_finite() {
            return Err(AlgebraError::NonFinite("Sl4Transform entries"));
        }
        let deviation = (m.det() - C64::new(1.0, 0.0)).norm();
        if deviation > Self::UNIMODULAR_TOL {
            return Err(AlgebraError::NonUnimodular { deviation });
        }
        Ok(Sl4Transform { m })
    }

    pub fn identity() -> Self {
        Sl4Transform {
            m: Mat4::identity(),
        }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.m
    }

    /// Apply to a twistor viewed as a four-component column.
    #[must_use]
    pub fn apply(&self, z: &Twistor) -> Twistor {
        Twistor::from_components(self.m.mul_vec(z.components()))
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn compose(&self, other: &Sl4Transform) -> Result<Self, AlgebraError> {
        let mut m = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    m.0[i][j] += self.m.0[i][k] * other.m.0[k][j];
                }
            }
        }
        Sl4Transform::new(m)
    }
}

/// Apply a unimodular transformation to a twistor.
pub fn sl4_act(g: &Sl4Transform, z: &Twistor) -> Twistor {
    g.apply(z)
}

/// An invertible 2x2 complex matrix mixing the two constituents of a
/// twistor line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gl2Transform {
    m: Mat2,
}

impl Gl2Transform {
    pub const SINGULAR_TOL: f64 = 1e-10;

    pub fn new(m: Mat2) -> Result<Self, AlgebraError> {
        if !m.is_finite() {
            return Err(AlgebraError::NonFinite("Gl2Transform entries"));
        }
        let det = m.det().norm();
        if det < Self::SINGULAR_TOL {
            return Err(AlgebraError::SingularTransform { det });
        }
        Ok(Gl2Transform { m })
    }

    pub fn identity() -> Self {
        Gl2Transform {
            m: Mat2::identity(),
        }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn det(&self) -> C64 {
        self.m.det()
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.m.0[i][j]
    }
}

/// Deterministic random unimodular transform for a given seed.
pub fn random_sl4(seed: u64) -> Sl4Transform {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample::sl4_from_rng(&mut rng)
}

/// Deterministic random constituent-mixing transform with `|det|` in
/// `[0.1, 10]` for a given seed.
pub fn random_gl2(seed: u64) -> Gl2Transform {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample::gl2_from_rng(&mut rng)
}

/// Samplers for randomized property tests. All draw from caller-provided
/// generators so suites control seeding and determinism.
pub mod sample {
    use super::*;

    pub fn complex_from_rng<R: Rng>(rng: &mut R) -> C64 {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }

    /// Random twistor with components uniform in the complex unit square.
    pub fn twistor_from_rng<R: Rng>(rng: &mut R) -> Twistor {
        Twistor::from_components([
            complex_from_rng(rng),
            complex_from_rng(rng),
            complex_from_rng(rng),
            complex_from_rng(rng),
        ])
    }

    /// Random primed spinor bounded away from zero.
    pub fn primed_from_rng<R: Rng>(rng: &mut R) -> Spinor2<Primed> {
        loop {
            let s = Spinor2::new(complex_from_rng(rng), complex_from_rng(rng));
            if s.norm() > 0.1 {
                return s;
            }
        }
    }

    /// Random natural-unit point with coordinates uniform in
    /// `[-range, range]`.
    pub fn point_from_rng<R: Rng>(rng: &mut R, range: f64) -> SpacetimePoint {
        SpacetimePoint::natural(
            rng.gen_range(-range..range),
            rng.gen_range(-range..range),
            rng.gen_range(-range..range),
            rng.gen_range(-range..range),
        )
    }

    /// Random unimodular transform: uniform complex entries rescaled by a
    /// principal fourth root so the determinant lands on 1 exactly (to
    /// rounding).
    pub fn sl4_from_rng<R: Rng>(rng: &mut R) -> Sl4Transform {
        loop {
            let mut m = Mat4::zero();
            for i in 0..4 {
                for j in 0..4 {
                    m.0[i][j] = complex_from_rng(rng);
                }
            }
            let d = m.det();
            if d.norm() < 1e-3 {
                continue;
            }
            let s = d.powf(-0.25);
            let m = m.scale(s);
            if let Ok(g) = Sl4Transform::new(m) {
                return g;
            }
        }
    }

    /// Random constituent mix with `|det|` uniform on a log scale in
    /// `[0.1, 10]`.
    pub fn gl2_from_rng<R: Rng>(rng: &mut R) -> Gl2Transform {
        loop {
            let m = Mat2([
                [complex_from_rng(rng), complex_from_rng(rng)],
                [complex_from_rng(rng), complex_from_rng(rng)],
            ]);
            let d = m.det().norm();
            if d < 1e-6 {
                continue;
            }
            let target = 10f64.powf(rng.gen_range(-1.0..1.0));
            let scale = C64::new((target / d).sqrt(), 0.0);
            let mut scaled = m;
            for row in scaled.0.iter_mut() {
                for c in row.iter_mut() {
                    *c *= scale;
                }
            }
            if let Ok(g) = Gl2Transform::new(scaled) {
                return g;
            }
        }
    }
}
