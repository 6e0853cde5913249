//! Bitwistors: antisymmetrized twistor pairs with Plücker coordinates.
//!
//! A pair of independent twistors spans a line in twistor space; its
//! Plücker matrix `X^{ab} = (Z^a W^b - Z^b W^a)/2` is antisymmetric and
//! simple (decomposable). Lines built from two twistors incident with the
//! same spacetime point encode that point, and the fully antisymmetric
//! epsilon contraction of two such lines factorizes into the squared
//! spacetime separation times the primed-spinor normalizations. That
//! factorization is what the kernel layer consumes.

use num_complex::Complex64;

use crate::error::AlgebraError;
use crate::mat::{Mat2, Mat4};
use crate::spinor::{eps_bracket, Primed, SpacetimePoint, Spinor2, UnitMode};
use crate::twistor::{incident_twistor, InfinityTwistor, Sl4Transform, Gl2Transform, Twistor};
use crate::worldline::SpacetimeWorldline;

pub type C64 = Complex64;

/// Relative wedge-norm threshold below which a twistor pair counts as
/// linearly dependent.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// A pair of independent primed spinors used to build point-incident lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiBasis {
    pub p1: Spinor2<Primed>,
    pub p2: Spinor2<Primed>,
}

impl PiBasis {
    pub fn new(p1: Spinor2<Primed>, p2: Spinor2<Primed>) -> Result<Self, AlgebraError> {
        let wedge = eps_bracket(&p1, &p2).norm();
        let scale = p1.norm() * p2.norm();
        if wedge <= DEGENERACY_TOL * scale || scale < f64::MIN_POSITIVE {
            return Err(AlgebraError::DegeneratePair { wedge, scale });
        }
        Ok(PiBasis { p1, p2 })
    }

    /// Bracket `eps(p1, p2)` of the basis spinors.
    pub fn bracket(&self) -> C64 {
        eps_bracket(&self.p1, &self.p2)
    }
}

impl Default for PiBasis {
    fn default() -> Self {
        PiBasis {
            p1: Spinor2::from_re(1.0, 0.0),
            p2: Spinor2::from_re(0.0, 1.0),
        }
    }
}

/// Plücker matrix of an ordered twistor pair: `(Z^a W^b - Z^b W^a)/2`.
pub fn wedge_matrix(z: &Twistor, w: &Twistor) -> Mat4 {
    let zc = z.components();
    let wc = w.components();
    let mut m = Mat4::zero();
    for a in 0..4 {
        for b in 0..4 {
            m.0[a][b] = (zc[a] * wc[b] - zc[b] * wc[a]) * 0.5;
        }
    }
    m
}

/// Fully antisymmetric epsilon contraction of two antisymmetric arrays:
/// `eps_{abcd} X^{ab} Y^{cd}`.
pub fn eps_contract_arrays(x: &Mat4, y: &Mat4) -> C64 {
    4.0 * (x.0[0][1] * y.0[2][3] - x.0[0][2] * y.0[1][3] + x.0[0][3] * y.0[1][2]
        + x.0[1][2] * y.0[0][3]
        - x.0[1][3] * y.0[0][2]
        + x.0[2][3] * y.0[0][1])
}

/// Frobenius norm of a 4x4 array.
fn frobenius(m: &Mat4) -> f64 {
    m.0.iter()
        .flatten()
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Simplicity residual of an antisymmetric array: `|eps_{abcd} X^{ab}
/// X^{cd}|` normalized by the squared Frobenius norm. Decomposable
/// (simple) bivectors give zero; the zero array is reported as residual
/// zero (degenerate by convention).
pub fn simplicity_residual_array(x: &Mat4) -> f64 {
    let n2 = {
        let n = frobenius(x);
        n * n
    };
    if n2 < f64::MIN_POSITIVE {
        return 0.0;
    }
    eps_contract_arrays(x, x).norm() / n2
}

/// An ordered pair of independent twistors with cached Plücker coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bitwistor {
    z: Twistor,
    w: Twistor,
    plucker: Mat4,
}

impl Bitwistor {
    /// Build from an ordered pair, rejecting (nearly) dependent pairs.
    pub fn from_pair(z: Twistor, w: Twistor) -> Result<Self, AlgebraError> {
        if !z.is_finite() || !w.is_finite() {
            return Err(AlgebraError::NonFinite("bitwistor constituents"));
        }
        let plucker = wedge_matrix(&z, &w);
        let wedge = frobenius(&plucker);
        let scale = z.norm() * w.norm();
        if wedge <= DEGENERACY_TOL * scale || scale < f64::MIN_POSITIVE {
            return Err(AlgebraError::DegeneratePair { wedge, scale });
        }
        Ok(Bitwistor { z, w, plucker })
    }

    pub fn z(&self) -> &Twistor {
        &self.z
    }

    pub fn w(&self) -> &Twistor {
        &self.w
    }

    pub fn plucker(&self) -> &Mat4 {
        &self.plucker
    }

    pub fn component(&self, a: usize, b: usize) -> C64 {
        self.plucker.0[a][b]
    }

    /// Infinity-twistor trace `I_{ab} X^{ab}`. With the pi block this is
    /// the bracket of the constituent primed spinors, the normalization
    /// that cancels out of the reduced line kernel.
    pub fn infinity_trace(&self, i: InfinityTwistor) -> C64 {
        match i {
            InfinityTwistor::OmegaBlock => 2.0 * self.plucker.0[0][1],
            InfinityTwistor::PiBlock => 2.0 * self.plucker.0[2][3],
        }
    }
}

/// Simplicity residual of a bitwistor's Plücker coordinates.
pub fn simplicity_check(x: &Bitwistor) -> f64 {
    simplicity_residual_array(&x.plucker)
}

/// Mix the constituents by an invertible 2x2 matrix:
/// `(z', w') = (g00 z + g10 w, g01 z + g11 w)`.
///
/// The Plücker matrix scales by exactly `det g`.
pub fn gl2_act(x: &Bitwistor, g: &Gl2Transform) -> Result<Bitwistor, AlgebraError> {
    let zc = x.z.components();
    let wc = x.w.components();
    let mut znew = [C64::new(0.0, 0.0); 4];
    let mut wnew = [C64::new(0.0, 0.0); 4];
    for k in 0..4 {
        znew[k] = g.entry(0, 0) * zc[k] + g.entry(1, 0) * wc[k];
        wnew[k] = g.entry(0, 1) * zc[k] + g.entry(1, 1) * wc[k];
    }
    Bitwistor::from_pair(Twistor::from_components(znew), Twistor::from_components(wnew))
}

/// Transform both constituents by a unimodular 4x4 matrix.
pub fn sl4_act_bitwistor(g: &Sl4Transform, x: &Bitwistor) -> Result<Bitwistor, AlgebraError> {
    Bitwistor::from_pair(g.apply(&x.z), g.apply(&x.w))
}

/// Epsilon invariant of two lines: `eps_{abcd} X_A^{ab} X_B^{cd}`.
///
/// Equals the determinant of the 4x4 matrix with columns
/// `(Z_A, W_A, Z_B, W_B)`; symmetric in its arguments; invariant under
/// simultaneous unimodular transformations; scales by `det(g_A) det(g_B)`
/// under constituent mixes.
pub fn invariant_i(a: &Bitwistor, b: &Bitwistor) -> C64 {
    eps_contract_arrays(&a.plucker, &b.plucker)
}

/// Recover the spacetime point of a point-incident line.
///
/// Solves the two incidence relations for the Hermitian point matrix via
/// `X = -i [omega1 omega2][pi1 pi2]^{-1}` and returns the point in natural
/// units (time in length units). Lines whose primed parts are dependent
/// have no finite incidence point; non-Hermitian solutions signal a line
/// that does not come from a real point.
pub fn line_to_point(x: &Bitwistor) -> Result<SpacetimePoint, AlgebraError> {
    let z = &x.z;
    let w = &x.w;
    let pi_mat = Mat2([[z.pi.c[0], w.pi.c[0]], [z.pi.c[1], w.pi.c[1]]]);
    let pi_scale = z.pi.norm() * w.pi.norm();
    let det = pi_mat.det();
    if det.norm() <= 1e-12 * pi_scale.max(f64::MIN_POSITIVE) {
        return Err(AlgebraError::LineAtInfinity { eps: det.norm() });
    }
    let omega_mat = Mat2([[z.omega.c[0], w.omega.c[0]], [z.omega.c[1], w.omega.c[1]]]);
    let point = omega_mat.mul(&pi_mat.inverse());
    let minus_i = C64::new(0.0, -1.0);
    let m = [
        [point.0[0][0] * minus_i, point.0[0][1] * minus_i],
        [point.0[1][0] * minus_i, point.0[1][1] * minus_i],
    ];
    // A real point gives a Hermitian matrix; measure the defect relative to
    // the matrix scale so large coordinates are not penalized.
    let scale: f64 = m.iter().flatten().map(|c| c.norm()).sum::<f64>().max(1.0);
    let herm_residual = ((m[0][0] - m[0][0].conj()).norm()
        + (m[1][1] - m[1][1].conj()).norm()
        + (m[0][1] - m[1][0].conj()).norm())
        / scale;
    if herm_residual > 1e-8 {
        return Err(AlgebraError::NonRealPoint {
            residual: herm_residual,
        });
    }
    let t = (m[0][0].re + m[1][1].re) / 2.0;
    let zc = (m[0][0].re - m[1][1].re) / 2.0;
    let xc = (m[0][1].re + m[1][0].re) / 2.0;
    let yc = (m[0][1].im - m[1][0].im) / 2.0;
    Ok(SpacetimePoint::natural(t, xc, yc, zc))
}

/// [`line_to_point`] with the time coordinate converted back to the
/// requested unit mode (seconds for SI).
pub fn line_to_point_in(
    x: &Bitwistor,
    mode: UnitMode,
    c_light: f64,
) -> Result<SpacetimePoint, AlgebraError> {
    let p = line_to_point(x)?;
    Ok(match mode {
        UnitMode::Natural => p,
        UnitMode::Si => SpacetimePoint::si(p.t / c_light, p.x, p.y, p.z),
    })
}

/// Build the point-incident line at `x` from a primed basis.
pub fn point_to_bitwistor(
    x: &SpacetimePoint,
    basis: &PiBasis,
    c_light: f64,
) -> Result<Bitwistor, AlgebraError> {
    let z = incident_twistor(x, &basis.p1, c_light)?;
    let w = incident_twistor(x, &basis.p2, c_light)?;
    Bitwistor::from_pair(z, w)
}

/// A one-parameter family of lines sampled along a worldline, parameterized
/// by proper time.
#[derive(Debug, Clone)]
pub struct BitwistorWorldline {
    /// Strictly increasing proper times with the line at each sample.
    samples: Vec<(f64, Bitwistor)>,
    /// The worldline the family was built from, when applicable.
    source: Option<SpacetimeWorldline>,
    pi_basis: PiBasis,
    c_light: f64,
}

impl BitwistorWorldline {
    pub fn samples(&self) -> &[(f64, Bitwistor)] {
        &self.samples
    }

    pub fn source(&self) -> Option<&SpacetimeWorldline> {
        self.source.as_ref()
    }

    pub fn pi_basis(&self) -> &PiBasis {
        &self.pi_basis
    }

    pub fn c_light(&self) -> f64 {
        self.c_light
    }

    /// Proper-time span of the family.
    pub fn domain(&self) -> (f64, f64) {
        (
            self.samples.first().map(|s| s.0).unwrap_or(0.0),
            self.samples.last().map(|s| s.0).unwrap_or(0.0),
        )
    }

    /// Constituent twistors at an interior parameter value, interpolating
    /// components linearly between samples. Linear interpolation is exact
    /// for linearly interpolated worldlines because incidence is linear in
    /// the point matrix.
    pub fn constituents_at(&self, tau: f64) -> (Twistor, Twistor) {
        let s = &self.samples;
        let n = s.len();
        if tau <= s[0].0 {
            return (*s[0].1.z(), *s[0].1.w());
        }
        if tau >= s[n - 1].0 {
            return (*s[n - 1].1.z(), *s[n - 1].1.w());
        }
        let idx = match s.binary_search_by(|probe| probe.0.partial_cmp(&tau).unwrap()) {
            Ok(i) => return (*s[i].1.z(), *s[i].1.w()),
            Err(i) => i - 1,
        };
        let (t0, ref b0) = s[idx];
        let (t1, ref b1) = s[idx + 1];
        let u = (tau - t0) / (t1 - t0);
        let lerp = |a: &Twistor, b: &Twistor| {
            let ac = a.components();
            let bc = b.components();
            let mut out = [C64::new(0.0, 0.0); 4];
            for k in 0..4 {
                out[k] = ac[k] * (1.0 - u) + bc[k] * u;
            }
            Twistor::from_components(out)
        };
        (lerp(b0.z(), b1.z()), lerp(b0.w(), b1.w()))
    }

    /// Interpolated line at an interior parameter value.
    pub fn bitwistor_at(&self, tau: f64) -> Result<Bitwistor, AlgebraError> {
        let (z, w) = self.constituents_at(tau);
        Bitwistor::from_pair(z, w)
    }

    /// Map every sample through a unimodular transformation. The source
    /// worldline reference is dropped since the transformed family no
    /// longer matches it pointwise.
    pub fn sl4_map(&self, g: &Sl4Transform) -> Result<Self, AlgebraError> {
        let mut samples = Vec::with_capacity(self.samples.len());
        for (tau, b) in &self.samples {
            samples.push((*tau, sl4_act_bitwistor(g, b)?));
        }
        Ok(BitwistorWorldline {
            samples,
            source: None,
            pi_basis: self.pi_basis,
            c_light: self.c_light,
        })
    }
}

/// Replace a sampled worldline by its family of point-incident lines, one
/// per sample, parameterized by proper time.
pub fn worldline_to_bitwistors(
    wl: &SpacetimeWorldline,
    basis: &PiBasis,
    c_light: f64,
) -> Result<BitwistorWorldline, AlgebraError> {
    let taus = wl.proper_times(c_light);
    let mut samples = Vec::with_capacity(wl.samples().len());
    for (k, sample) in wl.samples().iter().enumerate() {
        let p = SpacetimePoint::si(sample.t, sample.x, sample.y, sample.z);
        let b = point_to_bitwistor(&p, basis, c_light)?;
        samples.push((taus[k], b));
    }
    Ok(BitwistorWorldline {
        samples,
        source: Some(wl.clone()),
        pi_basis: *basis,
        c_light,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinor::minkowski_interval_sq;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Brute-force epsilon contraction over all 24 index permutations.
    fn eps_contract_bruteforce(x: &Mat4, y: &Mat4) -> C64 {
        fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<(Vec<usize>, f64)>) {
            if k == items.len() {
                let mut sign = 1.0;
                for i in 0..items.len() {
                    for j in (i + 1)..items.len() {
                        if items[i] > items[j] {
                            sign = -sign;
                        }
                    }
                }
                out.push((items.clone(), sign));
                return;
            }
            for i in k..items.len() {
                items.swap(k, i);
                permutations(items, k + 1, out);
                items.swap(k, i);
            }
        }
        let mut perms = Vec::new();
        permutations(&mut vec![0, 1, 2, 3], 0, &mut perms);
        let mut total = c(0.0, 0.0);
        for (p, sign) in perms {
            total += sign * x.0[p[0]][p[1]] * y.0[p[2]][p[3]];
        }
        total
    }

    fn random_bitwistor(rng: &mut ChaCha8Rng) -> Bitwistor {
        loop {
            let z = crate::twistor::sample::twistor_from_rng(rng);
            let w = crate::twistor::sample::twistor_from_rng(rng);
            if let Ok(b) = Bitwistor::from_pair(z, w) {
                return b;
            }
        }
    }

    #[test]
    fn basis_pair_plucker_entries() {
        let e0 = Twistor::from_components([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let e1 = Twistor::from_components([c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let b = Bitwistor::from_pair(e0, e1).unwrap();
        assert_abs_diff_eq!(b.component(0, 1).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(b.component(1, 0).re, -0.5, epsilon = 1e-15);
        let off: f64 = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| !((i == 0 && j == 1) || (i == 1 && j == 0)))
            .map(|(i, j)| b.component(i, j).norm())
            .sum();
        assert_abs_diff_eq!(off, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn parallel_pair_is_degenerate() {
        let z = Twistor::from_components([c(1.0, 2.0), c(0.5, -1.0), c(0.0, 0.3), c(2.0, 0.0)]);
        let w = Twistor::from_components([
            c(1.0, 2.0) * c(0.7, -0.2),
            c(0.5, -1.0) * c(0.7, -0.2),
            c(0.0, 0.3) * c(0.7, -0.2),
            c(2.0, 0.0) * c(0.7, -0.2),
        ]);
        assert!(matches!(
            Bitwistor::from_pair(z, w),
            Err(AlgebraError::DegeneratePair { .. })
        ));
    }

    #[test]
    fn constructed_lines_are_simple_and_antisymmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let b = random_bitwistor(&mut rng);
            assert!(simplicity_check(&b) < 1e-12);
            for i in 0..4 {
                for j in 0..4 {
                    assert!((b.component(i, j) + b.component(j, i)).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn sum_of_two_wedges_is_not_simple() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let b1 = random_bitwistor(&mut rng);
        let b2 = random_bitwistor(&mut rng);
        let mut total = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                total.0[i][j] = b1.component(i, j) + b2.component(i, j);
            }
        }
        let residual = simplicity_residual_array(&total);
        assert!(residual > 1e-3, "expected O(1) residual, got {residual}");
    }

    #[test]
    fn epsilon_contraction_matches_bruteforce_and_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = random_bitwistor(&mut rng);
            let b = random_bitwistor(&mut rng);
            let fast = invariant_i(&a, &b);
            let brute = eps_contract_bruteforce(a.plucker(), b.plucker());
            assert!((fast - brute).norm() <= 1e-13 * brute.norm().max(1.0));
            let det = Mat4::det_of_columns([
                a.z().components(),
                a.w().components(),
                b.z().components(),
                b.w().components(),
            ]);
            assert!((fast - det).norm() <= 1e-12 * det.norm().max(1.0));
            let sym = invariant_i(&b, &a);
            assert!((fast - sym).norm() <= 1e-13 * fast.norm().max(1.0));
        }
    }

    #[test]
    fn shared_constituent_kills_the_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let z = crate::twistor::sample::twistor_from_rng(&mut rng);
        let w1 = crate::twistor::sample::twistor_from_rng(&mut rng);
        let w2 = crate::twistor::sample::twistor_from_rng(&mut rng);
        let a = Bitwistor::from_pair(z, w1).unwrap();
        let b = Bitwistor::from_pair(z, w2).unwrap();
        assert!(invariant_i(&a, &b).norm() < 1e-13);
    }

    #[test]
    fn gl2_action_scales_plucker_by_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let b = random_bitwistor(&mut rng);
            let g = crate::twistor::sample::gl2_from_rng(&mut rng);
            let gb = gl2_act(&b, &g).unwrap();
            let d = g.det();
            for i in 0..4 {
                for j in 0..4 {
                    let expected = b.component(i, j) * d;
                    let got = gb.component(i, j);
                    assert!(
                        (got - expected).norm() <= 1e-12 * expected.norm().max(1e-6),
                        "plucker mismatch at ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn unimodular_constituent_mix_preserves_plucker() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let b = random_bitwistor(&mut rng);
        let lambda = c(1.7, 0.4);
        let g = Gl2Transform::new(Mat2([
            [lambda, c(0.0, 0.0)],
            [c(0.0, 0.0), c(1.0, 0.0) / lambda],
        ]))
        .unwrap();
        let gb = gl2_act(&b, &g).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((gb.component(i, j) - b.component(i, j)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn invariant_of_incident_lines_is_interval_times_brackets() {
        let xa = SpacetimePoint::natural(0.3, 1.0, -2.0, 0.5);
        let xb = SpacetimePoint::natural(-1.1, 0.2, 0.7, 3.0);
        let basis = PiBasis::default();
        let a = point_to_bitwistor(&xa, &basis, 1.0).unwrap();
        let b = point_to_bitwistor(&xb, &basis, 1.0).unwrap();
        let inv = invariant_i(&a, &b);
        let s2 = minkowski_interval_sq(&xa, &xb, 1.0).unwrap();
        // Default basis brackets are 1, so the invariant is the interval.
        assert_abs_diff_eq!(inv.re, s2, epsilon = 1e-12 * s2.abs().max(1.0));
        assert_abs_diff_eq!(inv.im, 0.0, epsilon = 1e-12 * s2.abs().max(1.0));
        // A generic basis multiplies in its bracket squared.
        let p1 = Spinor2::new(c(1.0, 0.5), c(-0.3, 0.8));
        let p2 = Spinor2::new(c(0.2, -1.1), c(0.9, 0.4));
        let basis2 = PiBasis::new(p1, p2).unwrap();
        let a2 = point_to_bitwistor(&xa, &basis2, 1.0).unwrap();
        let b2 = point_to_bitwistor(&xb, &basis2, 1.0).unwrap();
        let inv2 = invariant_i(&a2, &b2);
        let br = basis2.bracket();
        let expected = br * br * s2;
        assert!((inv2 - expected).norm() <= 1e-12 * expected.norm());
    }

    #[test]
    fn pi_trace_is_basis_bracket() {
        let basis = PiBasis::new(
            Spinor2::new(c(2.0, 0.0), c(0.0, 1.0)),
            Spinor2::new(c(-1.0, 0.5), c(0.7, 0.0)),
        )
        .unwrap();
        let b = point_to_bitwistor(&SpacetimePoint::natural(0.9, -0.4, 1.3, 0.2), &basis, 1.0)
            .unwrap();
        let trace = b.infinity_trace(InfinityTwistor::PiBlock);
        assert!((trace - basis.bracket()).norm() < 1e-14);
    }

    #[test]
    fn line_to_point_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let basis = PiBasis::default();
        for _ in 0..100 {
            let p = crate::twistor::sample::point_from_rng(&mut rng, 10.0);
            let b = point_to_bitwistor(&p, &basis, 1.0).unwrap();
            let q = line_to_point(&b).unwrap();
            let scale = 1.0 + (p.t.powi(2) + p.x.powi(2) + p.y.powi(2) + p.z.powi(2)).sqrt();
            let dist = ((q.t - p.t).powi(2)
                + (q.x - p.x).powi(2)
                + (q.y - p.y).powi(2)
                + (q.z - p.z).powi(2))
            .sqrt();
            assert!(dist < 1e-10 * scale, "round trip drifted by {dist}");
        }
    }

    #[test]
    fn parallel_pi_parts_are_a_line_at_infinity() {
        let pi = Spinor2::<Primed>::from_re(1.0, 2.0);
        let z = Twistor::new(Spinor2::from_re(1.0, 0.0), pi);
        let w = Twistor::new(Spinor2::from_re(0.0, 1.0), pi.scale(c(2.0, 0.0)));
        let b = Bitwistor::from_pair(z, w).unwrap();
        assert!(matches!(
            line_to_point(&b),
            Err(AlgebraError::LineAtInfinity { .. })
        ));
    }

    #[test]
    fn uniform_motion_component_dependence() {
        // For a uniformly moving point with the default basis, the mixed
        // omega-pi components are affine in time, the pi-block entry is
        // constant, and the omega-block entry is quadratic.
        let basis = PiBasis::default();
        let pos = |t: f64| SpacetimePoint::natural(t, 0.3 + 0.25 * t, -0.1 + 0.4 * t, 0.8 * t);
        let ts = [0.0, 1.0, 2.0];
        let lines: Vec<Bitwistor> = ts
            .iter()
            .map(|&t| point_to_bitwistor(&pos(t), &basis, 1.0).unwrap())
            .collect();
        let second_difference = |f: &dyn Fn(&Bitwistor) -> C64| {
            f(&lines[0]) - 2.0 * f(&lines[1]) + f(&lines[2])
        };
        for &(i, j) in &[(0usize, 2usize), (0, 3), (1, 2), (1, 3)] {
            assert!(second_difference(&|b| b.component(i, j)).norm() < 1e-12);
        }
        assert!((lines[0].component(2, 3) - lines[2].component(2, 3)).norm() < 1e-14);
        assert!(second_difference(&|b| b.component(0, 1)).norm() > 1e-3);
    }
}
