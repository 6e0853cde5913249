//! Seeded property suites with machine-readable, thread-count-independent
//! reports.
//!
//! Each named property draws its inputs from its own random stream, derived
//! by hashing the run seed together with the property name. Streams are
//! therefore independent of suite composition: adding, removing, or
//! reordering properties never shifts the draws of the others. Inputs are
//! generated sequentially, evaluated in parallel, and reduced in index
//! order, so a report is byte-identical across runs and across thread
//! counts for a fixed `(suite, seed, trials)` triple.
//!
//! The suites:
//!
//! * `algebra`: construction-level identities with fixed tolerances (point
//!   recovery from lines, point-matrix determinants, kernel homogeneity,
//!   Plücker covariance, the simplicity quadric);
//! * `invariance`: behavior under group actions (epsilon invariant under
//!   SL(4,C), simplicity preservation, the infinity-twistor contraction
//!   breaking full SL(4,C), and the constituent-mix exponent probe);
//! * `reduction`: the line-kernel-to-inverse-interval measurement over
//!   sampled point pairs, including the cross-basis repeat.
//!
//! Reports carry no timestamps; provenance (when a run happened, with which
//! tool version and configuration) lives in the separate [`RunManifest`].

use std::fmt;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bitwistor::{
    gl2_act, invariant_i, line_to_point, point_to_bitwistor, simplicity_check, sl4_act_bitwistor,
    Bitwistor, PiBasis,
};
use crate::error::{AlgebraError, PhaseError};
use crate::kernel::{
    gl2_scaling_probe, reduction_check, sample_point_pairs, scalar_kernel, ReductionReport,
    ScalingProbeReport, REDUCTION_CONSTANT,
};
use crate::mat::C64;
use crate::spinor::minkowski_interval_sq;
use crate::twistor::{sample, sl4_act, InfinityTwistor, Twistor};

/// Which property suite to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Invariance,
    Reduction,
    All,
}

impl Suite {
    pub fn token(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Invariance => "invariance",
            Suite::Reduction => "reduction",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "algebra" => Ok(Suite::Algebra),
            "invariance" => Ok(Suite::Invariance),
            "reduction" => Ok(Suite::Reduction),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite '{other}' (expected algebra, invariance, reduction, or all)"
            )),
        }
    }
}

/// Direction of the pass condition: most properties bound a residual from
/// above, the symmetry-breaking witness bounds a deviation from below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Goal {
    Below,
    Above,
}

/// Outcome of one named property check.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub trials: usize,
    /// Headline measurement the threshold applies to.
    pub measured: f64,
    pub threshold: f64,
    /// Whether passing requires `measured` below or above `threshold`.
    pub goal: Goal,
    pub passed: bool,
    /// Human-readable account of what was measured, with secondary numbers.
    pub detail: String,
}

impl PropertyResult {
    fn below(
        name: &'static str,
        trials: usize,
        measured: f64,
        threshold: f64,
        detail: String,
    ) -> Self {
        PropertyResult {
            name,
            trials,
            measured,
            threshold,
            goal: Goal::Below,
            passed: measured.is_finite() && measured < threshold,
            detail,
        }
    }

    fn above(
        name: &'static str,
        trials: usize,
        measured: f64,
        threshold: f64,
        detail: String,
    ) -> Self {
        PropertyResult {
            name,
            trials,
            measured,
            threshold,
            goal: Goal::Above,
            passed: measured.is_finite() && measured > threshold,
            detail,
        }
    }
}

/// Results of one suite, with the full probe reports the headline numbers
/// were read from.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub properties: Vec<PropertyResult>,
    /// Exponent probe measurements, present when the suite runs the probe.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scaling_probe: Option<ScalingProbeReport>,
    /// Reduction measurement, present when the suite runs the check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionReport>,
    pub passed: bool,
}

/// Top-level verification report: the suites that ran and the verdict.
///
/// Deterministic for fixed `(suite, seed, trials)`; contains no timestamps.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub tool_version: &'static str,
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("verify report serializes")
    }

    /// One `pass`/`FAIL` line per property, for terminal use.
    pub fn summary_lines(&self) -> String {
        let mut out = String::new();
        for suite in &self.suites {
            for p in &suite.properties {
                let verdict = if p.passed { "pass" } else { "FAIL" };
                let rel = match p.goal {
                    Goal::Below => "<",
                    Goal::Above => ">",
                };
                out.push_str(&format!(
                    "[{verdict}] {}/{}: measured {:.3e} ({rel} {:.0e}, {} trials)\n",
                    suite.suite, p.name, p.measured, p.threshold, p.trials
                ));
            }
        }
        out
    }
}

/// Provenance record emitted alongside every CLI run.
///
/// The manifest is the only output that carries timestamps; numerical
/// reports stay byte-identical for a fixed `(command, seed, config)` triple.
/// Timestamps are milliseconds since the Unix epoch.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub seed: u64,
    /// SHA-256 of the effective configuration, hex encoded.
    pub config_digest: String,
    pub tool_version: &'static str,
    pub started: u64,
    pub finished: u64,
}

fn unix_millis() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

impl RunManifest {
    /// Start the clock for a run whose effective configuration serializes
    /// to `config` bytes.
    pub fn begin(command: impl Into<String>, seed: u64, config: &[u8]) -> Self {
        RunManifest {
            command: command.into(),
            seed,
            config_digest: sha256_hex(config),
            tool_version: env!("CARGO_PKG_VERSION"),
            started: unix_millis(),
            finished: 0,
        }
    }

    pub fn finish(&mut self) {
        self.finished = unix_millis();
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}

/// Hex SHA-256 digest, used to fingerprint run configurations.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Derive the seed of a property's private random stream from the run seed
/// and the property name.
fn property_seed(seed: u64, name: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(b"twistor-qgem.verify\0");
    hasher.update(name.as_bytes());
    hasher.update(seed.to_le_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}

fn stream(seed: u64, name: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(property_seed(seed, name))
}

/// Draw a line from an independent twistor pair, retrying past the
/// (measure-zero) degenerate draws so the stream stays deterministic.
fn line_from_rng(rng: &mut ChaCha8Rng) -> Result<Bitwistor, AlgebraError> {
    for _ in 0..64 {
        let z = sample::twistor_from_rng(rng);
        let w = sample::twistor_from_rng(rng);
        if let Ok(line) = Bitwistor::from_pair(z, w) {
            return Ok(line);
        }
    }
    Err(AlgebraError::NonFinite(
        "could not draw an independent twistor pair",
    ))
}

/// Draw a complex scale bounded away from zero so reciprocals stay tame.
fn scale_from_rng(rng: &mut ChaCha8Rng) -> C64 {
    loop {
        let s = sample::complex_from_rng(rng);
        if s.norm() > 0.25 {
            return s;
        }
    }
}

fn max_in_order(values: Vec<f64>) -> f64 {
    values.into_iter().fold(0.0f64, f64::max)
}

fn min_in_order(values: Vec<f64>) -> f64 {
    values.into_iter().fold(f64::INFINITY, f64::min)
}

/// Points sampled through the line representation come back with their
/// coordinates intact: `point -> bitwistor -> point` round-trips to
/// rounding over randomly drawn real points and primed bases.
fn prop_line_point_roundtrip(seed: u64, trials: usize) -> Result<PropertyResult, AlgebraError> {
    const NAME: &str = "line_point_roundtrip";
    const TOL: f64 = 1e-10;
    let mut rng = stream(seed, NAME);
    let mut inputs = Vec::with_capacity(trials);
    for _ in 0..trials {
        let point = sample::point_from_rng(&mut rng, 5.0);
        let basis = PiBasis::new(
            sample::primed_from_rng(&mut rng),
            sample::primed_from_rng(&mut rng),
        )?;
        inputs.push((point, basis));
    }
    let deviations: Result<Vec<f64>, AlgebraError> = inputs
        .par_iter()
        .map(|(point, basis)| {
            let line = point_to_bitwistor(point, basis, 1.0)?;
            let back = line_to_point(&line)?;
            let original = [point.t, point.x, point.y, point.z];
            let recovered = [back.t, back.x, back.y, back.z];
            let scale = original.iter().fold(1.0f64, |m, c| m.max(c.abs()));
            let dev = original
                .iter()
                .zip(recovered.iter())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            Ok(dev / scale)
        })
        .collect();
    let worst = max_in_order(deviations?);
    Ok(PropertyResult::below(
        NAME,
        trials,
        worst,
        TOL,
        format!("max relative coordinate deviation {worst:.3e} after point -> line -> point"),
    ))
}

/// The determinant of the Hermitian point matrix equals the quadratic form
/// `t^2 - x^2 - y^2 - z^2`, which is minus the squared interval against the
/// origin in the (-,+,+,+) signature.
fn prop_point_matrix_determinant(seed: u64, trials: usize) -> Result<PropertyResult, AlgebraError> {
    const NAME: &str = "point_matrix_determinant";
    const TOL: f64 = 1e-12;
    let mut rng = stream(seed, NAME);
    let points: Vec<_> = (0..trials)
        .map(|_| sample::point_from_rng(&mut rng, 5.0))
        .collect();
    let deviations: Result<Vec<f64>, AlgebraError> = points
        .par_iter()
        .map(|p| {
            let det = p.point_matrix(1.0).det();
            let (t, x, y, z) = (p.t, p.x, p.y, p.z);
            let direct = t * t - x * x - y * y - z * z;
            let origin = crate::spinor::SpacetimePoint::natural(0.0, 0.0, 0.0, 0.0);
            let interval = minkowski_interval_sq(p, &origin, 1.0)?;
            let scale = (t * t + x * x + y * y + z * z).max(f64::MIN_POSITIVE);
            let dev = (det - C64::new(direct, 0.0))
                .norm()
                .max((direct + interval).abs());
            Ok(dev / scale)
        })
        .collect();
    let worst = max_in_order(deviations?);
    Ok(PropertyResult::below(
        NAME,
        trials,
        worst,
        TOL,
        format!(
            "max relative deviation {worst:.3e} between det X, the quadratic form, and minus \
             the interval routine"
        ),
    ))
}

/// The scalar kernel is homogeneous of degree (-1, -1): rescaling the
/// arguments by `a` and `b` divides the kernel by `a b` to rounding.
fn prop_scalar_kernel_homogeneity(seed: u64, trials: usize) -> Result<PropertyResult, AlgebraError> {
    const NAME: &str = "scalar_kernel_homogeneity";
    const TOL: f64 = 1e-14;
    let mut rng = stream(seed, NAME);
    let mut inputs = Vec::with_capacity(trials);
    let mut skipped = 0usize;
    while inputs.len() < trials {
        let z = sample::twistor_from_rng(&mut rng);
        let w = sample::twistor_from_rng(&mut rng);
        if scalar_kernel(&z, &w).singular {
            skipped += 1;
            continue;
        }
        let a = scale_from_rng(&mut rng);
        let b = scale_from_rng(&mut rng);
        inputs.push((z, w, a, b));
    }
    let deviations: Result<Vec<f64>, AlgebraError> = inputs
        .par_iter()
        .map(|(z, w, a, b)| {
            let base = scalar_kernel(z, w).value;
            let za = crate::twistor::rescale(z, *a)?;
            let wb = crate::twistor::rescale(w, *b)?;
            let scaled = scalar_kernel(&za, &wb);
            if scaled.singular {
                return Err(AlgebraError::NonFinite(
                    "rescaled kernel became singular",
                ));
            }
            Ok((scaled.value * a * b - base).norm() / base.norm())
        })
        .collect();
    let worst = max_in_order(deviations?);
    Ok(PropertyResult::below(
        NAME,
        trials,
        worst,
        TOL,
        format!(
            "max relative deviation {worst:.3e} of K(aZ, bW) * ab from K(Z, W); \
             {skipped} near-singular draws resampled"
        ),
    ))
}

/// Constituent mixes scale the Plücker matrix by exactly `det g`.
fn prop_plucker_gl2_covariance(seed: u64, trials: usize) -> Result<PropertyResult, AlgebraError> {
    const NAME: &str = "plucker_gl2_covariance";
    const TOL: f64 = 1e-12;
    let mut rng = stream(seed, NAME);
    let mut inputs = Vec::with_capacity(trials);
    for _ in 0..trials {
        let line = line_from_rng(&mut rng)?;
        let g = sample::gl2_from_rng(&mut rng);
        inputs.push((line, g));
    }
    let deviations: Result<Vec<f64>, AlgebraError> = inputs
        .par_iter()
        .map(|(line, g)| {
            let mixed = gl2_act(line, g)?;
            let det = g.det();
            let mut dev = 0.0f64;
            let mut scale = 0.0f64;
            for a in 0..4 {
                for b in 0..4 {
                    let expected = det * line.component(a, b);
                    dev = dev.max((mixed.component(a, b) - expected).norm());
                    scale = scale.max(expected.norm());
                }
            }
            Ok(dev / scale.max(f64::MIN_POSITIVE))
        })
        .collect();
    let worst = max_in_order(deviations?);
    Ok(PropertyResult::below(
        NAME,
        trials,
        worst,
        TOL,
        format!("max relative deviation {worst:.3e} of the mixed Plücker matrix from det(g) X"),
    ))
}

/// Plücker matrices of twistor pairs satisfy the simplicity quadric
/// `eps_{abcd} X^{ab} X^{cd} = 0`.
fn prop_simplicity_quadric(seed: u64, trials: usize) -> Result<PropertyResult, AlgebraError> {
    const NAME: &str = "simplicity_quadric";
    const TOL: f64 = 1e-12;
    let mut rng = stream(seed, NAME);
    let lines: Result<Vec<_>, _> = (0..trials).map(|_| line_from_rng(&mut rng)).collect();
    let lines = lines?;
    let residuals: Vec<f64> = lines.par_iter().map(simplicity_check).collect();
    let worst = max_in_order(residuals);
    Ok(PropertyResult::below(
        NAME,
        trials,
        worst,
        TOL,
        format!("max normalized simplicity residual {worst:.3e} over wedge-built lines"),
    ))
}

/// The epsilon invariant `I_AB` is unchanged by simultaneous unimodular
/// transformations of both lines.
fn prop_invariant_sl4(seed: u64, trials: usize) -> Result<PropertyResult, AlgebraError> {
    const NAME: &str = "invariant_sl4";
    const TOL: f64 = 1e-10;
    let mut rng = stream(seed, NAME);
    let mut inputs = Vec::with_capacity(trials);
    while inputs.len() < trials {
        let a = line_from_rng(&mut rng)?;
        let b = line_from_rng(&mut rng)?;
        // A tiny invariant would turn rounding into a huge relative error;
        // such draws are measure-zero and resampled.
        if invariant_i(&a, &b).norm() < 1e-3 {
            continue;
        }
        let g = sample::sl4_from_rng(&mut rng);
        inputs.push((a, b, g));
    }
    let deviations: Result<Vec<f64>, AlgebraError> = inputs
        .par_iter()
        .map(|(a, b, g)| {
            let base = invariant_i(a, b);
            let ga = sl4_act_bitwistor(g, a)?;
            let gb = sl4_act_bitwistor(g, b)?;
            Ok((invariant_i(&ga, &gb) - base).norm() / base.norm())
        })
        .collect();
    let worst = max_in_order(deviations?);
    Ok(PropertyResult::below(
        NAME,
        trials,
        worst,
        TOL,
        format!("max relative change {worst:.3e} of I_AB under simultaneous SL(4,C) maps"),
    ))
}

/// Unimodular transformations preserve simplicity: transformed lines still
/// sit on the quadric.
fn prop_simplicity_sl4(seed: u64, trials: usize) -> Result<PropertyResult, AlgebraError> {
    const NAME: &str = "simplicity_sl4";
    const TOL: f64 = 1e-12;
    let mut rng = stream(seed, NAME);
    let mut inputs = Vec::with_capacity(trials);
    for _ in 0..trials {
        let line = line_from_rng(&mut rng)?;
        let g = sample::sl4_from_rng(&mut rng);
        inputs.push((line, g));
    }
    let residuals: Result<Vec<f64>, AlgebraError> = inputs
        .par_iter()
        .map(|(line, g)| Ok(simplicity_check(&sl4_act_bitwistor(g, line)?)))
        .collect();
    let worst = max_in_order(residuals?);
    Ok(PropertyResult::below(
        NAME,
        trials,
        worst,
        TOL,
        format!("max simplicity residual {worst:.3e} after SL(4,C) maps"),
    ))
}

/// The fixed infinity twistor is not SL(4,C)-covariant: a generic
/// unimodular map changes the scalar contraction by a finite amount. The
/// measured minimum change witnesses the symmetry breaking that lets the
/// conformally flat kernel single out a metric.
fn prop_infinity_breaks_sl4(seed: u64, trials: usize) -> Result<PropertyResult, AlgebraError> {
    const NAME: &str = "infinity_breaks_sl4";
    const TOL: f64 = 1e-6;
    let mut rng = stream(seed, NAME);
    let mut inputs = Vec::with_capacity(trials);
    while inputs.len() < trials {
        let z = sample::twistor_from_rng(&mut rng);
        let w = sample::twistor_from_rng(&mut rng);
        if scalar_kernel(&z, &w).singular {
            continue;
        }
        let g = sample::sl4_from_rng(&mut rng);
        inputs.push((z, w, g));
    }
    let changes: Vec<f64> = inputs
        .par_iter()
        .map(|(z, w, g)| {
            let base = inf_contract_default(z, w);
            let mapped = inf_contract_default(&sl4_act(g, z), &sl4_act(g, w));
            (mapped - base).norm() / base.norm()
        })
        .collect();
    let least = min_in_order(changes);
    Ok(PropertyResult::above(
        NAME,
        trials,
        least,
        TOL,
        format!(
            "min relative change {least:.3e} of the infinity contraction under generic \
             SL(4,C) maps; invariance would put this at rounding level"
        ),
    ))
}

fn inf_contract_default(z: &Twistor, w: &Twistor) -> C64 {
    crate::twistor::inf_contract(z, w, InfinityTwistor::default())
}

/// The numerator determinant carries constituent-mix weight exactly one:
/// the fitted exponent of `det g` is 1 with negligible residual.
fn prop_gl2_numerator_exponent(
    seed: u64,
    trials: usize,
    probe: &ScalingProbeReport,
) -> PropertyResult {
    const NAME: &str = "gl2_numerator_exponent";
    const TOL: f64 = 1e-10;
    let measured = (probe.numerator_exponent - 1.0).abs();
    PropertyResult::below(
        NAME,
        trials,
        measured,
        TOL,
        format!(
            "fitted exponent {:.12} (residual {:.3e}) for the numerator determinant under \
             constituent mixes; stream seed {seed}",
            probe.numerator_exponent, probe.numerator_fit_residual
        ),
    )
}

/// The probe also fits the production kernel and the reciprocal diagnostic.
/// The production kernel's exponent is reported, not asserted; the pass
/// condition is only that the fit converged (small residual). The
/// reciprocal diagnostic's poor fit is expected and recorded in the detail.
fn prop_gl2_det_kernel_probe(trials: usize, probe: &ScalingProbeReport) -> PropertyResult {
    const NAME: &str = "gl2_det_kernel_probe";
    const TOL: f64 = 1e-6;
    PropertyResult::below(
        NAME,
        trials,
        probe.det_kernel_fit_residual,
        TOL,
        format!(
            "production kernel exponent {:.12} measured (weight zero expected, value reported \
             not asserted); reciprocal diagnostic exponent {:.6} with residual {:.3e} over \
             {} kept trials is not a clean power law",
            probe.det_kernel_exponent,
            probe.reciprocal_exponent,
            probe.reciprocal_fit_residual,
            trials - probe.reciprocal_skipped,
        ),
    )
}

/// Reduction measurement: `det_kernel * interval^2` is constant over point
/// pairs, basis independent, and equal to the frozen constant.
fn reduction_properties(
    seed: u64,
    trials: usize,
) -> Result<(Vec<PropertyResult>, ReductionReport), AlgebraError> {
    const TOL: f64 = 1e-10;
    let pairs = sample_point_pairs(trials, property_seed(seed, "reduction_pairs"), 5.0, 0.1);
    let report = reduction_check(&pairs, &PiBasis::default(), property_seed(seed, "reduction_basis"))?;
    let kept = report.sample_count - report.excluded;
    let props = vec![
        PropertyResult::below(
            "reduction_spread",
            trials,
            report.relative_spread,
            TOL,
            format!(
                "relative spread {:.3e} of det_kernel * interval^2 over {kept} kept pairs \
                 ({} excluded as near-null)",
                report.relative_spread, report.excluded
            ),
        ),
        PropertyResult::below(
            "reduction_phase",
            trials,
            report.phase_spread,
            TOL,
            format!(
                "max phase deviation {:.3e} rad of the ratios from their mean",
                report.phase_spread
            ),
        ),
        PropertyResult::below(
            "reduction_cross_basis",
            trials,
            report.cross_basis_deviation,
            TOL,
            format!(
                "max relative deviation {:.3e} between ratios under two primed bases",
                report.cross_basis_deviation
            ),
        ),
        PropertyResult::below(
            "reduction_constant",
            trials,
            report.constant_deviation,
            TOL,
            format!(
                "mean ratio {:.12}{:+.3e}i vs frozen constant {REDUCTION_CONSTANT}",
                report.mean_ratio.re, report.mean_ratio.im
            ),
        ),
    ];
    Ok((props, report))
}

fn algebra_suite(seed: u64, trials: usize) -> Result<SuiteReport, AlgebraError> {
    let properties = vec![
        prop_line_point_roundtrip(seed, trials)?,
        prop_point_matrix_determinant(seed, trials)?,
        prop_scalar_kernel_homogeneity(seed, trials)?,
        prop_plucker_gl2_covariance(seed, trials)?,
        // The quadric is cheap to test, so it gets a tenfold sample.
        prop_simplicity_quadric(seed, trials.saturating_mul(10))?,
    ];
    Ok(seal("algebra", properties, None, None))
}

fn invariance_suite(seed: u64, trials: usize) -> Result<SuiteReport, AlgebraError> {
    let mut rng = stream(seed, "gl2_probe_lines");
    let a = line_from_rng(&mut rng)?;
    let b = line_from_rng(&mut rng)?;
    let probe = gl2_scaling_probe(&a, &b, trials, property_seed(seed, "gl2_probe"))?;
    let properties = vec![
        prop_invariant_sl4(seed, trials)?,
        prop_simplicity_sl4(seed, trials)?,
        prop_infinity_breaks_sl4(seed, trials)?,
        prop_gl2_numerator_exponent(seed, trials, &probe),
        prop_gl2_det_kernel_probe(trials, &probe),
    ];
    Ok(seal("invariance", properties, Some(probe), None))
}

fn reduction_suite(seed: u64, trials: usize) -> Result<SuiteReport, AlgebraError> {
    let (properties, report) = reduction_properties(seed, trials)?;
    Ok(seal("reduction", properties, None, Some(report)))
}

fn seal(
    suite: &str,
    properties: Vec<PropertyResult>,
    scaling_probe: Option<ScalingProbeReport>,
    reduction: Option<ReductionReport>,
) -> SuiteReport {
    let passed = properties.iter().all(|p| p.passed);
    SuiteReport {
        suite: suite.to_string(),
        properties,
        scaling_probe,
        reduction,
        passed,
    }
}

/// Run the named suite (or all of them) with `trials` samples per property.
pub fn run_verification(suite: Suite, seed: u64, trials: usize) -> Result<VerifyReport, PhaseError> {
    if trials == 0 {
        return Err(PhaseError::InvalidArgument("trials must be at least 1"));
    }
    let suites = match suite {
        Suite::Algebra => vec![algebra_suite(seed, trials)?],
        Suite::Invariance => vec![invariance_suite(seed, trials)?],
        Suite::Reduction => vec![reduction_suite(seed, trials)?],
        Suite::All => vec![
            algebra_suite(seed, trials)?,
            invariance_suite(seed, trials)?,
            reduction_suite(seed, trials)?,
        ],
    };
    let passed = suites.iter().all(|s| s.passed);
    Ok(VerifyReport {
        tool_version: env!("CARGO_PKG_VERSION"),
        suite: suite.token().to_string(),
        seed,
        trials,
        suites,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_the_documented_trial_counts() {
        let report = run_verification(Suite::All, 42, 1000).unwrap();
        for suite in &report.suites {
            for p in &suite.properties {
                assert!(p.passed, "{}/{} failed: {}", suite.suite, p.name, p.detail);
            }
        }
        assert!(report.passed);
        assert_eq!(report.suites.len(), 3);
    }

    #[test]
    fn reports_are_byte_identical_for_a_fixed_seed() {
        let a = run_verification(Suite::All, 7, 200).unwrap().to_json_string();
        let b = run_verification(Suite::All, 7, 200).unwrap().to_json_string();
        assert_eq!(a, b);
    }

    #[test]
    fn reports_differ_across_seeds() {
        let a = run_verification(Suite::Reduction, 1, 50).unwrap().to_json_string();
        let b = run_verification(Suite::Reduction, 2, 50).unwrap().to_json_string();
        assert_ne!(a, b);
    }

    #[test]
    fn property_streams_are_independent_of_suite_composition() {
        let alone = prop_simplicity_quadric(9, 100).unwrap();
        let in_suite = algebra_suite(9, 10).unwrap();
        let from_suite = in_suite
            .properties
            .iter()
            .find(|p| p.name == "simplicity_quadric")
            .unwrap();
        assert_eq!(alone.measured, from_suite.measured);
    }

    #[test]
    fn zero_trials_is_rejected() {
        assert!(run_verification(Suite::All, 1, 0).is_err());
    }

    #[test]
    fn suite_tokens_round_trip() {
        for suite in [Suite::Algebra, Suite::Invariance, Suite::Reduction, Suite::All] {
            assert_eq!(suite.token().parse::<Suite>().unwrap(), suite);
        }
        assert!("spectral".parse::<Suite>().is_err());
    }

    #[test]
    fn manifest_digest_depends_on_the_config_bytes() {
        let mut m1 = RunManifest::begin("verify all", 42, b"{\"trials\":1000}");
        m1.finish();
        let m2 = RunManifest::begin("verify all", 42, b"{\"trials\":2000}");
        assert_ne!(m1.config_digest, m2.config_digest);
        assert_eq!(m1.config_digest.len(), 64);
        assert!(m1.finished >= m1.started);
    }
}
