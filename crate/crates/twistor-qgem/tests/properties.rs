//! Property-based invariants over randomized inputs.
//!
//! These complement the seeded `verify` suites: proptest explores the
//! input space adaptively and shrinks failures to minimal counterexamples,
//! while the suites provide fixed-seed, reportable measurements of the
//! same identities.

use proptest::prelude::*;

use twistor_qgem::bitwistor::{
    gl2_act, invariant_i, line_to_point, point_to_bitwistor, simplicity_check, Bitwistor, PiBasis,
};
use twistor_qgem::kernel::{det_kernel, scalar_kernel};
use twistor_qgem::mat::{C64, Mat2};
use twistor_qgem::phase::{closed_form_phase_signed, PhysicalConstants};
use twistor_qgem::qgem::{entanglement_measures, joint_state, BranchPhases, Geometry};
use twistor_qgem::spinor::{eps_bracket, minkowski_interval_sq, Primed, SpacetimePoint, Spinor2};
use twistor_qgem::twistor::{rescale, Gl2Transform, Twistor};

fn complex() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| C64::new(re, im))
}

fn primed_spinor() -> impl Strategy<Value = Spinor2<Primed>> {
    (complex(), complex())
        .prop_map(|(a, b)| Spinor2::new(a, b))
        .prop_filter("spinor bounded away from zero", |s| s.norm() > 0.1)
}

fn twistor() -> impl Strategy<Value = Twistor> {
    [complex(), complex(), complex(), complex()].prop_map(Twistor::from_components)
}

fn line() -> impl Strategy<Value = Bitwistor> {
    (twistor(), twistor())
        .prop_filter_map("independent twistor pair", |(z, w)| {
            Bitwistor::from_pair(z, w).ok()
        })
}

fn point() -> impl Strategy<Value = SpacetimePoint> {
    (-5.0f64..5.0, -5.0f64..5.0, -5.0f64..5.0, -5.0f64..5.0)
        .prop_map(|(t, x, y, z)| SpacetimePoint::natural(t, x, y, z))
}

fn pi_basis() -> impl Strategy<Value = PiBasis> {
    (primed_spinor(), primed_spinor())
        .prop_filter_map("independent primed pair", |(p1, p2)| PiBasis::new(p1, p2).ok())
}

proptest! {
    #[test]
    fn bracket_is_antisymmetric(a in primed_spinor(), b in primed_spinor()) {
        let ab = eps_bracket(&a, &b);
        let ba = eps_bracket(&b, &a);
        // Floating-point negation is exact, and both orders multiply the
        // same pairs, so this holds to the bit.
        prop_assert_eq!(ab, -ba);
        prop_assert_eq!(eps_bracket(&a, &a), C64::new(0.0, 0.0));
    }

    #[test]
    fn interval_is_symmetric_and_translation_invariant(
        a in point(),
        b in point(),
        shift in point(),
    ) {
        let ab = minkowski_interval_sq(&a, &b, 1.0).unwrap();
        let ba = minkowski_interval_sq(&b, &a, 1.0).unwrap();
        prop_assert_eq!(ab, ba);

        let translate = |p: &SpacetimePoint| {
            SpacetimePoint::natural(p.t + shift.t, p.x + shift.x, p.y + shift.y, p.z + shift.z)
        };
        let shifted = minkowski_interval_sq(&translate(&a), &translate(&b), 1.0).unwrap();
        // Translation moves the coordinates but not their differences;
        // only the subtraction rounding of the shifted coordinates is left.
        prop_assert!((shifted - ab).abs() <= 1e-12 * (1.0 + ab.abs()));
    }

    #[test]
    fn points_survive_the_line_representation(p in point(), basis in pi_basis()) {
        let line = point_to_bitwistor(&p, &basis, 1.0).unwrap();
        prop_assert!(simplicity_check(&line) < 1e-12);
        let back = line_to_point(&line).unwrap();
        let scale = 1.0 + p.t.abs().max(p.x.abs()).max(p.y.abs()).max(p.z.abs());
        prop_assert!((back.t - p.t).abs() <= 1e-10 * scale);
        prop_assert!((back.x - p.x).abs() <= 1e-10 * scale);
        prop_assert!((back.y - p.y).abs() <= 1e-10 * scale);
        prop_assert!((back.z - p.z).abs() <= 1e-10 * scale);
    }

    #[test]
    fn line_kernel_inverts_the_interval(a in point(), b in point(), basis in pi_basis()) {
        let s2 = minkowski_interval_sq(&a, &b, 1.0).unwrap();
        prop_assume!(s2.abs() > 0.1);
        let la = point_to_bitwistor(&a, &basis, 1.0).unwrap();
        let lb = point_to_bitwistor(&b, &basis, 1.0).unwrap();
        let k = det_kernel(&la, &lb);
        prop_assert!(!k.singular);
        prop_assert!((k.value * s2 - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn epsilon_invariant_is_symmetric(a in line(), b in line()) {
        let ab = invariant_i(&a, &b);
        let ba = invariant_i(&b, &a);
        let scale = ab.norm().max(ba.norm()).max(f64::MIN_POSITIVE);
        prop_assert!((ab - ba).norm() / scale < 1e-12);
    }

    #[test]
    fn scalar_kernel_is_homogeneous(
        z in twistor(),
        w in twistor(),
        a in complex(),
        b in complex(),
    ) {
        prop_assume!(a.norm() > 0.25 && b.norm() > 0.25);
        let base = scalar_kernel(&z, &w);
        prop_assume!(!base.singular);
        let scaled = scalar_kernel(&rescale(&z, a).unwrap(), &rescale(&w, b).unwrap());
        prop_assert!(!scaled.singular);
        let dev = (scaled.value * a * b - base.value).norm() / base.value.norm();
        prop_assert!(dev < 1e-13, "homogeneity deviation {}", dev);
    }

    #[test]
    fn constituent_mixes_scale_by_the_determinant(
        x in line(),
        entries in [complex(), complex(), complex(), complex()],
    ) {
        let m = Mat2([[entries[0], entries[1]], [entries[2], entries[3]]]);
        prop_assume!(m.det().norm() > 1e-2);
        let g = Gl2Transform::new(m).unwrap();
        let mixed = gl2_act(&x, &g).unwrap();
        let det = g.det();
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let expected = det * x.component(i, j);
                worst = worst.max((mixed.component(i, j) - expected).norm());
                scale = scale.max(expected.norm());
            }
        }
        prop_assert!(worst <= 1e-12 * scale.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn concurrence_follows_the_sine_of_the_effective_phase(
        phi_ll in -20.0f64..20.0,
        phi_lr in -20.0f64..20.0,
        phi_rl in -20.0f64..20.0,
        phi_rr in -20.0f64..20.0,
    ) {
        let phases = BranchPhases { phi_ll, phi_lr, phi_rl, phi_rr };
        let state = joint_state(&phases);
        let m = entanglement_measures(&state);
        let expected = (phases.effective_phase() / 2.0).sin().abs();
        prop_assert!((m.concurrence - expected).abs() < 1e-12);
        // Pure-state consistency between the three measures.
        prop_assert!((m.negativity - m.concurrence / 2.0).abs() < 1e-10);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&m.entropy_bits));
    }

    #[test]
    fn closed_form_phase_scales_by_its_factors(
        m_a in 1e-15f64..1e-13,
        m_b in 1e-15f64..1e-13,
        r in 1e-5f64..1e-3,
        t in 0.5f64..4.0,
        factor in 1.1f64..3.0,
    ) {
        let consts = PhysicalConstants::codata2018();
        let base = closed_form_phase_signed(m_a, m_b, r, t, &consts).unwrap();
        let scaled_mass = closed_form_phase_signed(factor * m_a, m_b, r, t, &consts).unwrap();
        let scaled_time = closed_form_phase_signed(m_a, m_b, r, factor * t, &consts).unwrap();
        let scaled_r = closed_form_phase_signed(m_a, m_b, factor * r, t, &consts).unwrap();
        let rel = |x: f64, y: f64| (x - y).abs() / y.abs();
        prop_assert!(rel(scaled_mass, factor * base) < 1e-12);
        prop_assert!(rel(scaled_time, factor * base) < 1e-12);
        prop_assert!(rel(scaled_r, base / factor) < 1e-12);
    }

    #[test]
    fn geometry_scaling_multiplies_every_separation(
        r_ll in 1e-5f64..1e-3,
        r_lr in 1e-5f64..1e-3,
        r_rl in 1e-5f64..1e-3,
        r_rr in 1e-5f64..1e-3,
        factor in 0.5f64..2.0,
    ) {
        let g = Geometry::Separations { r_ll, r_lr, r_rl, r_rr };
        let base = g.separations().unwrap();
        let scaled = g.scaled(factor).separations().unwrap();
        for (s, b) in scaled.iter().zip(base.iter()) {
            prop_assert!((s - factor * b).abs() <= 1e-15 * s.abs());
        }
    }
}
