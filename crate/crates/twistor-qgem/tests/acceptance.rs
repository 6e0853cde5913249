//! Acceptance gate: one test per headline claim, each printing a single
//! pass line with the measured numbers (run with `--nocapture` to see
//! them). Tolerances are pinned here and nowhere weakened; a regression in
//! any of these is a scientific failure of the crate, not a flaky test.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::process::Command;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twistor_qgem::bitwistor::{
    gl2_act, invariant_i, simplicity_check, sl4_act_bitwistor, Bitwistor, PiBasis,
};
use twistor_qgem::kernel::{gl2_scaling_probe, reduction_check, sample_point_pairs, scalar_kernel};
use twistor_qgem::phase::{
    bilocal_phase, closed_form_phase_signed, newtonian_phase, static_limit_study, KernelChoice,
    PhaseOptions, PhysicalConstants,
};
use twistor_qgem::qgem::{
    binary_entropy_bits, run_protocol, sweep, Geometry, ProtocolConfig, SweepAxis,
};
use twistor_qgem::twistor::{rescale, sample};
use twistor_qgem::worldline::SpacetimeWorldline;

fn random_line(rng: &mut ChaCha8Rng) -> Bitwistor {
    loop {
        let z = sample::twistor_from_rng(rng);
        let w = sample::twistor_from_rng(rng);
        if let Ok(line) = Bitwistor::from_pair(z, w) {
            return line;
        }
    }
}

/// Ratio det_kernel * interval^2 is constant to 1e-10 over 1000
/// well-separated pairs, independent of the primed basis to 1e-10, in
/// under five seconds.
#[test]
fn criterion_1_reduction_identity() {
    let started = Instant::now();
    let pairs = sample_point_pairs(1000, 42, 5.0, 0.1);
    let report = reduction_check(&pairs, &PiBasis::default(), 42).unwrap();
    let elapsed = started.elapsed();

    assert!(
        report.relative_spread < 1e-10,
        "ratio spread {} breaches 1e-10",
        report.relative_spread
    );
    assert!(
        report.cross_basis_deviation < 1e-10,
        "basis dependence {} breaches 1e-10",
        report.cross_basis_deviation
    );
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "reduction check took {elapsed:?}, over the 5 s budget"
    );
    println!(
        "[PASS] criterion 1: reduction ratio spread {:.3e}, cross-basis {:.3e}, {} pairs in {:?}",
        report.relative_spread, report.cross_basis_deviation, report.sample_count, elapsed
    );
}

/// I_AB is invariant under 1000 random unimodular maps to 1e-10, and ten
/// thousand wedge-built lines sit on the simplicity quadric to 1e-12.
#[test]
fn criterion_2_epsilon_invariance_and_simplicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst_invariance = 0.0f64;
    for _ in 0..1000 {
        let a = random_line(&mut rng);
        let b = random_line(&mut rng);
        let base = invariant_i(&a, &b);
        if base.norm() < 1e-3 {
            continue;
        }
        let g = sample::sl4_from_rng(&mut rng);
        let ga = sl4_act_bitwistor(&g, &a).unwrap();
        let gb = sl4_act_bitwistor(&g, &b).unwrap();
        let change = (invariant_i(&ga, &gb) - base).norm() / base.norm();
        worst_invariance = worst_invariance.max(change);
    }
    assert!(
        worst_invariance < 1e-10,
        "I_AB moved by {worst_invariance} under a unimodular map"
    );

    let mut worst_simplicity = 0.0f64;
    for _ in 0..10_000 {
        let line = random_line(&mut rng);
        worst_simplicity = worst_simplicity.max(simplicity_check(&line));
    }
    assert!(
        worst_simplicity < 1e-12,
        "simplicity residual {worst_simplicity} breaches 1e-12"
    );
    println!(
        "[PASS] criterion 2: I_AB invariance {worst_invariance:.3e} over 1000 maps, \
         simplicity {worst_simplicity:.3e} over 10000 lines"
    );
}

/// The scalar kernel is homogeneous of degree (-1, -1) to 1e-14, and
/// constituent mixes scale the Plücker matrix by det(g) to 1e-12.
#[test]
fn criterion_3_homogeneity_and_covariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst_homogeneity = 0.0f64;
    let mut done = 0;
    while done < 1000 {
        let z = sample::twistor_from_rng(&mut rng);
        let w = sample::twistor_from_rng(&mut rng);
        if scalar_kernel(&z, &w).singular {
            continue;
        }
        let a = loop {
            let s = sample::complex_from_rng(&mut rng);
            if s.norm() > 0.25 {
                break s;
            }
        };
        let b = loop {
            let s = sample::complex_from_rng(&mut rng);
            if s.norm() > 0.25 {
                break s;
            }
        };
        let base = scalar_kernel(&z, &w).value;
        let scaled = scalar_kernel(&rescale(&z, a).unwrap(), &rescale(&w, b).unwrap());
        assert!(!scaled.singular);
        let dev = (scaled.value * a * b - base).norm() / base.norm();
        worst_homogeneity = worst_homogeneity.max(dev);
        done += 1;
    }
    assert!(
        worst_homogeneity < 1e-14,
        "homogeneity deviation {worst_homogeneity} breaches 1e-14"
    );

    let mut worst_covariance = 0.0f64;
    for _ in 0..1000 {
        let line = random_line(&mut rng);
        let g = sample::gl2_from_rng(&mut rng);
        let mixed = gl2_act(&line, &g).unwrap();
        let det = g.det();
        let mut dev = 0.0f64;
        let mut scale = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let expected = det * line.component(i, j);
                dev = dev.max((mixed.component(i, j) - expected).norm());
                scale = scale.max(expected.norm());
            }
        }
        worst_covariance = worst_covariance.max(dev / scale.max(f64::MIN_POSITIVE));
    }
    assert!(
        worst_covariance < 1e-12,
        "Plücker covariance deviation {worst_covariance} breaches 1e-12"
    );
    println!(
        "[PASS] criterion 3: kernel homogeneity {worst_homogeneity:.3e}, Plücker det(g) \
         covariance {worst_covariance:.3e}"
    );
}

/// The numerator determinant scales as (det g)^1 to 1e-10 with a clean
/// fit; the production kernel's exponent is measured and reported (it is
/// weight zero), with the reciprocal diagnostic's misfit on record.
#[test]
fn criterion_4_gl2_scaling_probe() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let a = random_line(&mut rng);
    let b = random_line(&mut rng);
    let probe = gl2_scaling_probe(&a, &b, 1000, 42).unwrap();

    assert!(!probe.degenerate, "sampled determinants were degenerate");
    let numerator_error = (probe.numerator_exponent - 1.0).abs();
    assert!(
        numerator_error < 1e-10,
        "numerator exponent {} is off unity by {numerator_error}",
        probe.numerator_exponent
    );
    assert!(
        probe.numerator_fit_residual < 1e-6,
        "numerator fit residual {} breaches 1e-6",
        probe.numerator_fit_residual
    );
    assert!(
        probe.det_kernel_fit_residual < 1e-6,
        "production kernel fit residual {} breaches 1e-6",
        probe.det_kernel_fit_residual
    );
    println!(
        "[PASS] criterion 4: numerator exponent {:.12} (residual {:.1e}); production kernel \
         exponent measured at {:.12} (residual {:.1e}); reciprocal diagnostic exponent {:.6} \
         with residual {:.3e} reported, not asserted",
        probe.numerator_exponent,
        probe.numerator_fit_residual,
        probe.det_kernel_exponent,
        probe.det_kernel_fit_residual,
        probe.reciprocal_exponent,
        probe.reciprocal_fit_residual
    );
}

/// The standard static fixture (two 1e-14 kg masses, 0.2 mm apart, 2 s)
/// accumulates |phi| = 0.6328 +- 1e-4 rad through the closed form, the
/// time-domain quadrature, the retarded kernel, and the twistor
/// determinant kernel.
#[test]
fn criterion_5_static_fixture_phase() {
    let consts = PhysicalConstants::codata2018();
    let (m, r, duration) = (1e-14, 2e-4, 2.0);
    let wa = SpacetimeWorldline::static_line(m, [0.0, 0.0, 0.0], 0.0, duration, 9).unwrap();
    let wb = SpacetimeWorldline::static_line(m, [r, 0.0, 0.0], 0.0, duration, 9).unwrap();

    let mut measured = Vec::new();
    let closed = closed_form_phase_signed(m, m, r, duration, &consts).unwrap();
    measured.push(("closed_form", closed));
    let quad = newtonian_phase(&wa, &wb, &consts).unwrap();
    measured.push(("quadrature", quad.phi));
    let retarded = bilocal_phase(&wa, &wb, KernelChoice::Retarded, &consts).unwrap();
    measured.push(("retarded", retarded.phi));
    let twistor = bilocal_phase(&wa, &wb, KernelChoice::TwistorDetKernel, &consts).unwrap();
    measured.push(("twistor_detkernel", twistor.phi));

    for (route, phi) in &measured {
        let deviation = (phi.abs() - 0.6328).abs();
        assert!(
            deviation < 1e-4,
            "{route}: |phi| = {} misses 0.6328 by {deviation}",
            phi.abs()
        );
    }
    println!(
        "[PASS] criterion 5: |phi| = {} (closed), {} (quad), {} (retarded), {} (twistor) \
         all within 1e-4 of 0.6328",
        measured[0].1.abs(),
        measured[1].1.abs(),
        measured[2].1.abs(),
        measured[3].1.abs()
    );
}

/// The relativistic-to-Newtonian deviation shrinks with at least
/// quadratic order: the fitted exponent over v/c in {0.2, 0.1, 0.05,
/// 0.025} is at least 1.8.
#[test]
fn criterion_6_static_limit_order() {
    let consts = PhysicalConstants::natural();
    let study = static_limit_study(
        1.0,
        24.0,
        &[0.2, 0.1, 0.05, 0.025],
        &consts,
        &PhaseOptions::default(),
    )
    .unwrap();
    assert!(
        study.fitted_order >= 1.8,
        "fitted convergence order {} is below 1.8 (residual {})",
        study.fitted_order,
        study.fit_residual
    );
    println!(
        "[PASS] criterion 6: static-limit convergence order {:.3} (fit residual {:.2e}) \
         over v/c = 0.2 .. 0.025",
        study.fitted_order, study.fit_residual
    );
}

fn two_distance_config(effective_phase: f64) -> ProtocolConfig {
    let consts = PhysicalConstants::codata2018();
    let (r0, r1, duration): (f64, f64, f64) = (2e-4, 1e-4, 2.0);
    let k = effective_phase / (2.0 * (1.0 / r0 - 1.0 / r1)).abs();
    let mass = (k * consts.hbar / (consts.g_newton * duration)).sqrt();
    ProtocolConfig {
        m_a: mass,
        m_b: mass,
        duration,
        geometry: Geometry::Separations {
            r_ll: r0,
            r_lr: r1,
            r_rl: r1,
            r_rr: r0,
        },
        phase_backend: Default::default(),
        constants: None,
    }
}

/// Protocol anchors: a symmetric geometry stays separable (C < 1e-12),
/// the pi design is maximally entangled (C = 1 +- 1e-12), the pi/2 design
/// lands on sin(pi/4) -- the value the 5-decimal anchor 0.70711 rounds --
/// against the partial-trace oracle; and negativity and entropy follow
/// C/2 and the binary entropy of (1 + sqrt(1 - C^2))/2 on every sweep
/// point to 1e-10.
#[test]
fn criterion_7_protocol_anchors() {
    // Equal separations on all four branches cancel the phases exactly.
    let mut symmetric = two_distance_config(PI);
    symmetric.geometry = Geometry::Separations {
        r_ll: 2e-4,
        r_lr: 2e-4,
        r_rl: 2e-4,
        r_rr: 2e-4,
    };
    let separable = run_protocol(&symmetric).unwrap();
    assert!(
        separable.concurrence < 1e-12,
        "zero effective phase left concurrence {}",
        separable.concurrence
    );
    assert!(separable.separable);

    let maximal = run_protocol(&two_distance_config(PI)).unwrap();
    assert!(
        (maximal.concurrence - 1.0).abs() < 1e-12,
        "pi design concurrence {} misses 1",
        maximal.concurrence
    );

    // 0.70711 is sin(pi/4) printed to five decimals; its own rounding gap
    // (3.2e-6) exceeds the 1e-6 tolerance, so the assertion anchors on the
    // exact value and checks the printed one at its printed precision.
    let half = run_protocol(&two_distance_config(PI / 2.0)).unwrap();
    assert!(
        (half.concurrence - FRAC_1_SQRT_2).abs() < 1e-6,
        "pi/2 design concurrence {} misses sin(pi/4) = {FRAC_1_SQRT_2}",
        half.concurrence
    );
    assert!(
        (half.concurrence - 0.70711).abs() < 5e-6,
        "pi/2 design concurrence {} is not 0.70711 to five decimals",
        half.concurrence
    );
    // The negativity (partial-transpose eigenvalues) and entropy (reduced
    // density matrix) come from independent constructions; at the pi/2
    // point they must tie back to the concurrence.
    assert!((half.negativity - half.concurrence / 2.0).abs() < 1e-10);

    let config = two_distance_config(PI);
    let values: Vec<f64> = (1..=16).map(|k| 0.125 * k as f64).collect();
    let report = sweep(&config, SweepAxis::T, &values);
    assert!(report.failures.is_empty());
    assert_eq!(report.points.len(), values.len());
    for point in &report.points {
        let c = point.concurrence;
        assert!(
            (point.negativity - c / 2.0).abs() < 1e-10,
            "negativity {} vs C/2 = {} at T = {}",
            point.negativity,
            c / 2.0,
            point.axis_value
        );
        let mu = (1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0;
        let expected_entropy = binary_entropy_bits(mu);
        assert!(
            (point.entropy_bits - expected_entropy).abs() < 1e-10,
            "entropy {} vs H2({mu}) = {expected_entropy} at T = {}",
            point.entropy_bits,
            point.axis_value
        );
    }
    println!(
        "[PASS] criterion 7: separable C = {:.1e}, pi design C = {}, pi/2 design C = {:.10} \
         (sin(pi/4) = {FRAC_1_SQRT_2:.10}); negativity and entropy tied to C on all {} sweep \
         points to 1e-10",
        separable.concurrence,
        maximal.concurrence,
        half.concurrence,
        report.points.len()
    );
}

/// `verify all --seed 42` produces byte-identical reports at one and at
/// four rayon threads (timestamps live only in the stderr manifest).
#[test]
fn criterion_8_cli_determinism() {
    let exe = env!("CARGO_BIN_EXE_twistor-qgem");
    let run = |threads: &str| {
        let output = Command::new(exe)
            .args(["verify", "all", "--seed", "42"])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .expect("binary runs");
        assert!(
            output.status.success(),
            "verify all failed: {}",
            String::from_utf8_lossy(&output.stderr)
        );
        output.stdout
    };
    let first = run("1");
    let second = run("1");
    let fourth = run("4");
    assert_eq!(first, second, "same seed, same thread count, different bytes");
    assert_eq!(first, fourth, "report bytes depend on the thread count");
    println!(
        "[PASS] criterion 8: verify all --seed 42 reports byte-identical across runs and \
         thread counts ({} bytes)",
        first.len()
    );
}
