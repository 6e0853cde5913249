//! Scalar and line kernels from infinity-twistor contractions, and the
//! numerical reduction of the line kernel to the inverse squared spacetime
//! separation.
//!
//! The scalar kernel is the reciprocal contraction `1/<Z W>`. For a pair of
//! point-incident lines two determinant-flavored combinations exist:
//!
//! * [`reciprocal_det_kernel`]: the determinant of the 2x2 matrix of scalar
//!   kernel values, `K(Z_A,Z_B) K(W_A,W_B) - K(Z_A,W_B) K(W_A,Z_B)`. Its
//!   reciprocal structure is not multilinear, so it carries no clean
//!   transformation weight; it is kept as a diagnostic and its measured
//!   behavior is part of the probe report.
//! * [`det_kernel`]: the ratio of the dual infinity-twistor traces to the
//!   mutual epsilon invariant. The primed-spinor normalizations cancel in
//!   this ratio, leaving exactly the inverse squared separation of the two
//!   incidence points; it is basis independent, weight zero under
//!   constituent mixes, and is the object every downstream phase
//!   computation uses.
//!
//! [`reduction_check`] measures the proportionality constant between
//! `det_kernel` and `1/(x_A - x_B)^2` over random point pairs; under the
//! fixed conventions of this crate (point matrix without a `1/sqrt(2)`,
//! mostly-plus signature, half-weighted Plücker matrix) the measured
//! constant is exactly 1 and is frozen as [`REDUCTION_CONSTANT`].

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitwistor::{gl2_act, invariant_i, point_to_bitwistor, Bitwistor, PiBasis};
use crate::error::AlgebraError;
use crate::spinor::{minkowski_interval_sq, SpacetimePoint};
use crate::twistor::{inf_contract, sample, InfinityTwistor, Twistor};

pub type C64 = Complex64;

/// Relative magnitude below which a contraction counts as singular.
pub const SINGULARITY_TOL: f64 = 1e-10;

/// Proportionality constant between [`det_kernel`] and the inverse squared
/// separation, measured once by [`reduction_check`] under the crate's fixed
/// conventions and frozen. The measured imaginary part and the deviation of
/// the real part from 1 are both below 1e-14, so the frozen value is exact.
pub const REDUCTION_CONSTANT: f64 = 1.0;

/// A kernel evaluation with an explicit near-singularity flag.
///
/// When `singular` is set the configuration sits within tolerance of a zero
/// contraction (a null-incidence configuration); `value` is zeroed rather
/// than letting an overflow escape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelValue {
    pub value: C64,
    pub singular: bool,
}

impl KernelValue {
    fn from_reciprocal(denom: C64, scale: f64) -> Self {
        if denom.norm() < SINGULARITY_TOL * scale.max(f64::MIN_POSITIVE) {
            KernelValue {
                value: C64::new(0.0, 0.0),
                singular: true,
            }
        } else {
            KernelValue {
                value: C64::new(1.0, 0.0) / denom,
                singular: false,
            }
        }
    }
}

fn block_norm(z: &Twistor, i: InfinityTwistor) -> f64 {
    match i {
        InfinityTwistor::OmegaBlock => z.omega.norm(),
        InfinityTwistor::PiBlock => z.pi.norm(),
    }
}

/// Scalar twistor kernel `1/<Z W>` under a chosen infinity-twistor
/// convention. Homogeneous of degree (-1, -1) in its arguments.
pub fn scalar_kernel_with(z: &Twistor, w: &Twistor, i: InfinityTwistor) -> KernelValue {
    let denom = inf_contract(z, w, i);
    let scale = block_norm(z, i) * block_norm(w, i);
    KernelValue::from_reciprocal(denom, scale)
}

/// Scalar twistor kernel under the working omega-block convention.
pub fn scalar_kernel(z: &Twistor, w: &Twistor) -> KernelValue {
    scalar_kernel_with(z, w, InfinityTwistor::default())
}

/// The 2x2 matrix of cross contractions between the constituents of two
/// lines: rows indexed by `(Z_A, W_A)`, columns by `(Z_B, W_B)`.
pub fn contraction_matrix(a: &Bitwistor, b: &Bitwistor, i: InfinityTwistor) -> [[C64; 2]; 2] {
    [
        [
            inf_contract(a.z(), b.z(), i),
            inf_contract(a.z(), b.w(), i),
        ],
        [
            inf_contract(a.w(), b.z(), i),
            inf_contract(a.w(), b.w(), i),
        ],
    ]
}

/// Determinant of the cross-contraction matrix. Multilinear in the four
/// constituents, so it scales by exactly `det g` under a constituent mix of
/// either line.
pub fn numerator_det(a: &Bitwistor, b: &Bitwistor, i: InfinityTwistor) -> C64 {
    let m = contraction_matrix(a, b, i);
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Literal determinant of the 2x2 matrix of scalar kernel values
/// (diagnostic; see the module docs). Computed from [`scalar_kernel`]
/// entries; the singular flag propagates from any of the four contractions.
pub fn reciprocal_det_kernel(a: &Bitwistor, b: &Bitwistor) -> KernelValue {
    let i = InfinityTwistor::default();
    let k = [
        [scalar_kernel_with(a.z(), b.z(), i), scalar_kernel_with(a.z(), b.w(), i)],
        [scalar_kernel_with(a.w(), b.z(), i), scalar_kernel_with(a.w(), b.w(), i)],
    ];
    let singular = k.iter().flatten().any(|v| v.singular);
    if singular {
        return KernelValue {
            value: C64::new(0.0, 0.0),
            singular: true,
        };
    }
    KernelValue {
        value: k[0][0].value * k[1][1].value - k[0][1].value * k[1][0].value,
        singular: false,
    }
}

/// The same diagnostic combination computed directly from reciprocals of
/// contraction products, used to cross-check [`reciprocal_det_kernel`].
pub fn reciprocal_det_kernel_direct(a: &Bitwistor, b: &Bitwistor) -> KernelValue {
    let i = InfinityTwistor::default();
    let m = contraction_matrix(a, b, i);
    let scale = block_norm(a.z(), i)
        * block_norm(a.w(), i)
        * block_norm(b.z(), i)
        * block_norm(b.w(), i);
    let diag = m[0][0] * m[1][1];
    let anti = m[0][1] * m[1][0];
    let scale2 = scale * scale;
    if diag.norm() < SINGULARITY_TOL * scale2.max(f64::MIN_POSITIVE)
        || anti.norm() < SINGULARITY_TOL * scale2.max(f64::MIN_POSITIVE)
    {
        return KernelValue {
            value: C64::new(0.0, 0.0),
            singular: true,
        };
    }
    KernelValue {
        value: C64::new(1.0, 0.0) / diag - C64::new(1.0, 0.0) / anti,
        singular: false,
    }
}

/// Frobenius norm of a line's Plücker coordinates.
fn plucker_norm(x: &Bitwistor) -> f64 {
    x.plucker()
        .0
        .iter()
        .flatten()
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// The production line kernel: dual infinity-twistor traces over the mutual
/// epsilon invariant.
///
/// For lines incident with real points this equals
/// `REDUCTION_CONSTANT / (x_A - x_B)^2` identically: the epsilon invariant
/// factorizes into the squared separation times both primed-spinor
/// brackets, and the traces supply exactly those brackets. The value is
/// independent of the primed basis, invariant under constituent mixes
/// (weight zero), and symmetric under swapping a line's constituents.
pub fn det_kernel(a: &Bitwistor, b: &Bitwistor) -> KernelValue {
    let inv = invariant_i(a, b);
    let scale = plucker_norm(a) * plucker_norm(b);
    if inv.norm() < SINGULARITY_TOL * scale.max(f64::MIN_POSITIVE) {
        return KernelValue {
            value: C64::new(0.0, 0.0),
            singular: true,
        };
    }
    let ta = a.infinity_trace(InfinityTwistor::PiBlock);
    let tb = b.infinity_trace(InfinityTwistor::PiBlock);
    KernelValue {
        value: ta * tb / inv,
        singular: false,
    }
}

/// [`det_kernel`] divided by the frozen reduction constant, so the value is
/// exactly the inverse squared separation for point-incident lines.
pub fn normalized_det_kernel(a: &Bitwistor, b: &Bitwistor) -> KernelValue {
    let k = det_kernel(a, b);
    KernelValue {
        value: k.value / REDUCTION_CONSTANT,
        singular: k.singular,
    }
}

/// Squared spacetime separation recovered from the normalized line kernel.
pub fn interval_sq_from_lines(a: &Bitwistor, b: &Bitwistor) -> Option<f64> {
    let k = normalized_det_kernel(a, b);
    if k.singular {
        return None;
    }
    Some((C64::new(1.0, 0.0) / k.value).re)
}

/// Outcome of measuring `det_kernel * (x_A - x_B)^2` over sampled point
/// pairs, with a repeat under a second, randomly drawn primed basis.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionReport {
    pub sample_count: usize,
    /// Samples excluded as (near-)null separated.
    pub excluded: usize,
    /// Per-sample ratios under the primary basis (omitted from serialized
    /// summaries; written separately as CSV by the CLI).
    #[serde(skip)]
    pub ratios: Vec<C64>,
    pub mean_ratio: C64,
    /// `max |ratio - mean| / |mean|` over kept samples.
    pub relative_spread: f64,
    /// Maximum phase deviation (radians) of any ratio from the mean.
    pub phase_spread: f64,
    /// Maximum relative deviation between per-sample ratios under the two
    /// bases.
    pub cross_basis_deviation: f64,
    /// Relative deviation of the measured mean from [`REDUCTION_CONSTANT`].
    pub constant_deviation: f64,
}

fn ratio_for_pair(
    pair: &(SpacetimePoint, SpacetimePoint),
    basis: &PiBasis,
) -> Result<Option<C64>, AlgebraError> {
    let s2 = minkowski_interval_sq(&pair.0, &pair.1, 1.0)?;
    let a = point_to_bitwistor(&pair.0, basis, 1.0)?;
    let b = point_to_bitwistor(&pair.1, basis, 1.0)?;
    let k = det_kernel(&a, &b);
    if k.singular {
        return Ok(None);
    }
    Ok(Some(k.value * s2))
}

/// Measure the reduction ratio `det_kernel * interval^2` over point pairs.
///
/// Near-null pairs are excluded and counted, never silently dropped. The
/// whole measurement repeats under a second primed basis drawn from `seed`
/// to verify that the spinor normalizations cancel. Pair evaluations run in
/// parallel; results reduce in index order, so the report is deterministic
/// for fixed inputs regardless of thread count.
pub fn reduction_check(
    pairs: &[(SpacetimePoint, SpacetimePoint)],
    basis: &PiBasis,
    seed: u64,
) -> Result<ReductionReport, AlgebraError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alt_basis = loop {
        let p1 = sample::primed_from_rng(&mut rng);
        let p2 = sample::primed_from_rng(&mut rng);
        if let Ok(b) = PiBasis::new(p1, p2) {
            break b;
        }
    };

    let primary: Result<Vec<Option<C64>>, AlgebraError> = pairs
        .par_iter()
        .map(|pair| ratio_for_pair(pair, basis))
        .collect();
    let primary = primary?;
    let alternate: Result<Vec<Option<C64>>, AlgebraError> = pairs
        .par_iter()
        .map(|pair| ratio_for_pair(pair, &alt_basis))
        .collect();
    let alternate = alternate?;

    let mut ratios = Vec::new();
    let mut cross: f64 = 0.0;
    let mut excluded = 0;
    let mut kept_pairs = Vec::new();
    for (r1, r2) in primary.iter().zip(alternate.iter()) {
        match (r1, r2) {
            (Some(a), Some(b)) => {
                ratios.push(*a);
                kept_pairs.push((*a, *b));
            }
            _ => excluded += 1,
        }
    }
    if ratios.is_empty() {
        return Err(AlgebraError::NonFinite(
            "reduction check: every sample was excluded as near-null",
        ));
    }
    let mean = ratios.iter().sum::<C64>() / ratios.len() as f64;
    let mean_norm = mean.norm().max(f64::MIN_POSITIVE);
    let mut spread: f64 = 0.0;
    let mut phase_spread: f64 = 0.0;
    for r in &ratios {
        spread = spread.max((r - mean).norm() / mean_norm);
        phase_spread = phase_spread.max((r / mean).arg().abs());
    }
    for (a, b) in &kept_pairs {
        cross = cross.max((a - b).norm() / mean_norm);
    }
    Ok(ReductionReport {
        sample_count: pairs.len(),
        excluded,
        mean_ratio: mean,
        relative_spread: spread,
        phase_spread,
        cross_basis_deviation: cross,
        constant_deviation: (mean - C64::new(REDUCTION_CONSTANT, 0.0)).norm()
            / REDUCTION_CONSTANT,
        ratios,
    })
}

/// Draw well-separated natural-unit point pairs: coordinates uniform in
/// `[-range, range]`, squared interval magnitude above `min_interval_sq`.
pub fn sample_point_pairs(
    n: usize,
    seed: u64,
    range: f64,
    min_interval_sq: f64,
) -> Vec<(SpacetimePoint, SpacetimePoint)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let a = sample::point_from_rng(&mut rng, range);
        let b = sample::point_from_rng(&mut rng, range);
        let s2 = minkowski_interval_sq(&a, &b, 1.0).expect("same unit mode by construction");
        if s2.abs() > min_interval_sq {
            out.push((a, b));
        }
    }
    out
}

/// Measured scaling exponents of the kernel combinations under random
/// constituent mixes of the first line.
///
/// Each exponent is the through-origin slope of
/// `log |value(g a, b) / value(a, b)|` against `log |det g|`; residuals are
/// root-mean-square deviations from the fitted line. The numerator
/// determinant is multilinear, so its exponent is exactly 1; the production
/// kernel is weight zero, so its exponent is 0. The reciprocal diagnostic is
/// not a power of `det g` alone, which its residual makes visible.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingProbeReport {
    pub trials: usize,
    pub numerator_exponent: f64,
    pub numerator_fit_residual: f64,
    pub det_kernel_exponent: f64,
    pub det_kernel_fit_residual: f64,
    pub reciprocal_exponent: f64,
    pub reciprocal_fit_residual: f64,
    /// Trials skipped because the transformed reciprocal diagnostic was
    /// singular.
    pub reciprocal_skipped: usize,
    /// Set when the sampled determinants cluster at magnitude 1, leaving the
    /// slope unconstrained.
    pub degenerate: bool,
}

fn fit_through_origin(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    if sxx < 1e-12 {
        return (0.0, 0.0);
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let slope = sxy / sxx;
    let mut ss = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let d = y - slope * x;
        ss += d * d;
    }
    (slope, (ss / xs.len() as f64).sqrt())
}

/// Measure how the three kernel combinations scale under random
/// constituent mixes applied to the first line.
pub fn gl2_scaling_probe(
    a: &Bitwistor,
    b: &Bitwistor,
    trials: usize,
    seed: u64,
) -> Result<ScalingProbeReport, AlgebraError> {
    let i = InfinityTwistor::default();
    let base_num = numerator_det(a, b, i);
    let base_det = det_kernel(a, b);
    let base_rec = reciprocal_det_kernel(a, b);
    if base_det.singular || base_rec.singular || base_num.norm() < f64::MIN_POSITIVE {
        return Err(AlgebraError::NonFinite(
            "scaling probe baseline kernel is singular",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs = Vec::with_capacity(trials);
    let mut y_num = Vec::with_capacity(trials);
    let mut y_det = Vec::with_capacity(trials);
    let mut xs_rec = Vec::with_capacity(trials);
    let mut y_rec = Vec::with_capacity(trials);
    let mut skipped = 0;
    for _ in 0..trials {
        let g = sample::gl2_from_rng(&mut rng);
        let ga = gl2_act(a, &g)?;
        let x = g.det().norm().ln();
        xs.push(x);
        y_num.push((numerator_det(&ga, b, i).norm() / base_num.norm()).ln());
        let kd = det_kernel(&ga, b);
        y_det.push(if kd.singular {
            0.0
        } else {
            (kd.value.norm() / base_det.value.norm()).ln()
        });
        let kr = reciprocal_det_kernel(&ga, b);
        if kr.singular {
            skipped += 1;
        } else {
            xs_rec.push(x);
            y_rec.push((kr.value.norm() / base_rec.value.norm()).ln());
        }
    }
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let degenerate = sxx < 1e-8;
    let (num_slope, num_res) = fit_through_origin(&xs, &y_num);
    let (det_slope, det_res) = fit_through_origin(&xs, &y_det);
    let (rec_slope, rec_res) = fit_through_origin(&xs_rec, &y_rec);
    Ok(ScalingProbeReport {
        trials,
        numerator_exponent: num_slope,
        numerator_fit_residual: num_res,
        det_kernel_exponent: det_slope,
        det_kernel_fit_residual: det_res,
        reciprocal_exponent: rec_slope,
        reciprocal_fit_residual: rec_res,
        reciprocal_skipped: skipped,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinor::Spinor2;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_line_pair(seed: u64) -> (Bitwistor, Bitwistor) {
        let pairs = sample_point_pairs(1, seed, 5.0, 0.1);
        let basis = PiBasis::default();
        (
            point_to_bitwistor(&pairs[0].0, &basis, 1.0).unwrap(),
            point_to_bitwistor(&pairs[0].1, &basis, 1.0).unwrap(),
        )
    }

    #[test]
    fn scalar_kernel_matches_contraction_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let z = sample::twistor_from_rng(&mut rng);
            let w = sample::twistor_from_rng(&mut rng);
            let k = scalar_kernel(&z, &w);
            if k.singular {
                continue;
            }
            // Oracle: full 4x4 contraction through the infinity-twistor array.
            let m = InfinityTwistor::default().as_matrix();
            let zc = z.components();
            let wc = w.components();
            let mut contraction = c(0.0, 0.0);
            for a in 0..4 {
                for b in 0..4 {
                    contraction += m.0[a][b] * zc[a] * wc[b];
                }
            }
            assert!((k.value * contraction - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn scalar_kernel_self_contraction_is_singular() {
        let z = Twistor::from_components([c(1.0, 2.0), c(0.3, -0.4), c(0.5, 0.0), c(0.0, 1.0)]);
        assert!(scalar_kernel(&z, &z).singular);
    }

    #[test]
    fn scalar_kernel_homogeneity_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..50 {
            let z = sample::twistor_from_rng(&mut rng);
            let w = sample::twistor_from_rng(&mut rng);
            let k = scalar_kernel(&z, &w);
            if k.singular {
                continue;
            }
            let lambda = sample::complex_from_rng(&mut rng) + c(1.5, 0.0);
            let mu = sample::complex_from_rng(&mut rng) + c(1.5, 0.0);
            let zs = crate::twistor::rescale(&z, lambda).unwrap();
            let ws = crate::twistor::rescale(&w, mu).unwrap();
            let ks = scalar_kernel(&zs, &ws);
            let expected = k.value / (lambda * mu);
            assert!((ks.value - expected).norm() <= 1e-14 * expected.norm());
        }
    }

    #[test]
    fn det_kernel_of_identical_lines_is_singular() {
        let (a, _) = random_line_pair(30);
        assert!(det_kernel(&a, &a).singular);
        assert!(reciprocal_det_kernel(&a, &a).singular);
    }

    #[test]
    fn equal_time_spatial_pair_reduces_to_inverse_r_squared() {
        let xa = SpacetimePoint::natural(0.0, 0.0, 0.0, 0.0);
        let xb = SpacetimePoint::natural(0.0, 3.0, 0.0, 0.0);
        let basis = PiBasis::default();
        let a = point_to_bitwistor(&xa, &basis, 1.0).unwrap();
        let b = point_to_bitwistor(&xb, &basis, 1.0).unwrap();
        let k = normalized_det_kernel(&a, &b);
        assert!(!k.singular);
        assert_abs_diff_eq!(k.value.re, 1.0 / 9.0, epsilon = 1e-14);
        assert_abs_diff_eq!(k.value.im, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(interval_sq_from_lines(&a, &b).unwrap(), 9.0, epsilon = 1e-12);
    }

    #[test]
    fn constituent_swap_negates_reciprocal_but_not_det_kernel() {
        let (a, b) = random_line_pair(31);
        let swapped = Bitwistor::from_pair(*b.w(), *b.z()).unwrap();
        let rec = reciprocal_det_kernel(&a, &b);
        let rec_swapped = reciprocal_det_kernel(&a, &swapped);
        assert!((rec.value + rec_swapped.value).norm() <= 1e-12 * rec.value.norm());
        let det = det_kernel(&a, &b);
        let det_swapped = det_kernel(&a, &swapped);
        assert!((det.value - det_swapped.value).norm() <= 1e-12 * det.value.norm());
    }

    #[test]
    fn reciprocal_kernel_two_formulas_agree() {
        for seed in 40..60 {
            let (a, b) = random_line_pair(seed);
            let k1 = reciprocal_det_kernel(&a, &b);
            let k2 = reciprocal_det_kernel_direct(&a, &b);
            assert_eq!(k1.singular, k2.singular);
            if !k1.singular {
                assert!((k1.value - k2.value).norm() <= 1e-13 * k1.value.norm().max(1e-30));
            }
        }
    }

    #[test]
    fn det_kernel_is_basis_independent_and_translation_invariant() {
        let xa = SpacetimePoint::natural(0.4, -1.0, 2.0, 0.3);
        let xb = SpacetimePoint::natural(-0.7, 1.5, 0.2, -2.2);
        let basis2 = PiBasis::new(
            Spinor2::new(c(0.8, -0.5), c(1.2, 0.4)),
            Spinor2::new(c(-0.1, 0.9), c(0.6, -1.3)),
        )
        .unwrap();
        let mk = |x: &SpacetimePoint, basis: &PiBasis| point_to_bitwistor(x, basis, 1.0).unwrap();
        let k_default = det_kernel(&mk(&xa, &PiBasis::default()), &mk(&xb, &PiBasis::default()));
        let k_alt = det_kernel(&mk(&xa, &basis2), &mk(&xb, &basis2));
        assert!((k_default.value - k_alt.value).norm() <= 1e-12 * k_default.value.norm());

        let shift = 100.0;
        let xa_s = SpacetimePoint::natural(xa.t + shift, xa.x - shift, xa.y + shift, xa.z);
        let xb_s = SpacetimePoint::natural(xb.t + shift, xb.x - shift, xb.y + shift, xb.z);
        let k_shifted = det_kernel(
            &mk(&xa_s, &PiBasis::default()),
            &mk(&xb_s, &PiBasis::default()),
        );
        assert!(
            (k_default.value - k_shifted.value).norm() <= 1e-9 * k_default.value.norm(),
            "translation changed the kernel: {} vs {}",
            k_default.value,
            k_shifted.value
        );
    }

    #[test]
    fn reduction_check_has_tiny_spread_and_unit_constant() {
        let pairs = sample_point_pairs(200, 77, 5.0, 0.1);
        let report = reduction_check(&pairs, &PiBasis::default(), 78).unwrap();
        assert_eq!(report.sample_count, 200);
        assert_eq!(report.excluded, 0);
        assert!(report.relative_spread < 1e-10, "spread {}", report.relative_spread);
        assert!(report.phase_spread < 1e-10);
        assert!(report.cross_basis_deviation < 1e-10);
        assert!(report.constant_deviation < 1e-12);
    }

    #[test]
    fn reduction_check_excludes_near_null_pairs() {
        let near_null = (
            SpacetimePoint::natural(0.0, 0.0, 0.0, 0.0),
            SpacetimePoint::natural(1.0, 1.0 + 1e-13, 0.0, 0.0),
        );
        let mut pairs = sample_point_pairs(10, 79, 5.0, 0.1);
        pairs.push(near_null);
        let report = reduction_check(&pairs, &PiBasis::default(), 80).unwrap();
        assert_eq!(report.excluded, 1);
        assert!(report.relative_spread < 1e-10);
    }

    #[test]
    fn scaling_probe_measures_the_expected_exponents() {
        let (a, b) = random_line_pair(90);
        let report = gl2_scaling_probe(&a, &b, 400, 91).unwrap();
        assert!(!report.degenerate);
        assert_abs_diff_eq!(report.numerator_exponent, 1.0, epsilon = 1e-10);
        assert!(report.numerator_fit_residual < 1e-10);
        assert_abs_diff_eq!(report.det_kernel_exponent, 0.0, epsilon = 1e-10);
        assert!(report.det_kernel_fit_residual < 1e-10);
        // The reciprocal diagnostic is not a power law in det(g); the fit
        // residual records how far it strays.
        assert!(report.reciprocal_fit_residual > 1e-2);
        let again = gl2_scaling_probe(&a, &b, 400, 91).unwrap();
        assert_eq!(report.numerator_exponent, again.numerator_exponent);
        assert_eq!(report.reciprocal_fit_residual, again.reciprocal_fit_residual);
    }
}
