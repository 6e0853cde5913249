//! Two-mass interferometric entanglement protocol.
//!
//! Each of two masses is placed in a superposition of a left and a right
//! arm. During the hold time every branch pair (LL, LR, RL, RR) accumulates
//! the gravitational phase of its own geometry, so the joint state picks up
//! four generally different phases. Whenever the combination
//! `phi_LR + phi_RL - phi_LL - phi_RR` is not a multiple of 2 pi the joint
//! state cannot be written as a product and the masses end up entangled;
//! measuring that entanglement witnesses that gravity coupled to the
//! superposed positions.
//!
//! The protocol layer builds the four branch geometries, delegates the
//! phases to any of the [`crate::phase`] backends, assembles the joint
//! state, and quantifies the entanglement three independent ways:
//! concurrence from the amplitudes, negativity from the partially
//! transposed density matrix, and entropy of the reduced state. For a pure
//! two-qubit state these are in exact functional relation, which the test
//! suite exploits as a cross-check on all three implementations.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use nalgebra::Matrix4;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::ProtocolError;
use crate::phase::{
    bilocal_phase_with, closed_form_phase_signed, newtonian_phase_with, KernelChoice,
    PhaseOptions, PhysicalConstants,
};
use crate::worldline::SpacetimeWorldline;

/// Concurrence below which the joint state is declared separable.
pub const SEPARABILITY_TOL: f64 = 1e-12;

/// Which engine computes the per-branch phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PhaseBackend {
    /// Closed form G m_a m_b T / (hbar r) per branch; exact for the static
    /// protocol and by far the fastest.
    #[default]
    #[serde(rename = "closed_form")]
    ClosedForm,
    /// Numerical time integration of the instantaneous 1/r kernel.
    #[serde(rename = "newtonian_integrated")]
    NewtonianIntegrated,
    #[serde(rename = "bilocal:static")]
    BilocalStatic,
    #[serde(rename = "bilocal:retarded")]
    BilocalRetarded,
    #[serde(rename = "bilocal:invariant_interval")]
    BilocalInvariantInterval,
    #[serde(rename = "bilocal:twistor_detkernel")]
    BilocalTwistorDetKernel,
}

impl PhaseBackend {
    pub fn token(self) -> &'static str {
        match self {
            PhaseBackend::ClosedForm => "closed_form",
            PhaseBackend::NewtonianIntegrated => "newtonian_integrated",
            PhaseBackend::BilocalStatic => "bilocal:static",
            PhaseBackend::BilocalRetarded => "bilocal:retarded",
            PhaseBackend::BilocalInvariantInterval => "bilocal:invariant_interval",
            PhaseBackend::BilocalTwistorDetKernel => "bilocal:twistor_detkernel",
        }
    }
}

impl fmt::Display for PhaseBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for PhaseBackend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "closed_form" => Ok(PhaseBackend::ClosedForm),
            "newtonian_integrated" => Ok(PhaseBackend::NewtonianIntegrated),
            "bilocal:static" => Ok(PhaseBackend::BilocalStatic),
            "bilocal:retarded" => Ok(PhaseBackend::BilocalRetarded),
            "bilocal:invariant_interval" => Ok(PhaseBackend::BilocalInvariantInterval),
            "bilocal:twistor_detkernel" => Ok(PhaseBackend::BilocalTwistorDetKernel),
            other => Err(format!(
                "unknown phase backend '{other}' (expected closed_form, \
                 newtonian_integrated or bilocal:<kernel>)"
            )),
        }
    }
}

/// Arm geometry of the two interferometers, either as the four
/// branch separations directly or as explicit arm positions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Geometry {
    /// Branch separations in meters, indexed by (arm of A, arm of B).
    Separations {
        r_ll: f64,
        r_lr: f64,
        r_rl: f64,
        r_rr: f64,
    },
    /// Explicit left/right arm positions of both masses, meters.
    Positions {
        arms_a: [[f64; 3]; 2],
        arms_b: [[f64; 3]; 2],
    },
}

impl Geometry {
    /// Branch separations in LL, LR, RL, RR order.
    pub fn separations(&self) -> Result<[f64; 4], ProtocolError> {
        let r = match *self {
            Geometry::Separations {
                r_ll,
                r_lr,
                r_rl,
                r_rr,
            } => [r_ll, r_lr, r_rl, r_rr],
            Geometry::Positions { arms_a, arms_b } => {
                let dist = |p: [f64; 3], q: [f64; 3]| {
                    let d = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
                    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
                };
                [
                    dist(arms_a[0], arms_b[0]),
                    dist(arms_a[0], arms_b[1]),
                    dist(arms_a[1], arms_b[0]),
                    dist(arms_a[1], arms_b[1]),
                ]
            }
        };
        for (k, &v) in r.iter().enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                let branch = ["LL", "LR", "RL", "RR"][k];
                return Err(ProtocolError::InvalidConfig(format!(
                    "branch {branch} separation must be positive and finite, got {v}"
                )));
            }
        }
        Ok(r)
    }

    /// Scale every separation (or every coordinate) by a factor.
    pub fn scaled(&self, factor: f64) -> Geometry {
        match *self {
            Geometry::Separations {
                r_ll,
                r_lr,
                r_rl,
                r_rr,
            } => Geometry::Separations {
                r_ll: r_ll * factor,
                r_lr: r_lr * factor,
                r_rl: r_rl * factor,
                r_rr: r_rr * factor,
            },
            Geometry::Positions { arms_a, arms_b } => {
                let scale = |arms: [[f64; 3]; 2]| {
                    arms.map(|p| [p[0] * factor, p[1] * factor, p[2] * factor])
                };
                Geometry::Positions {
                    arms_a: scale(arms_a),
                    arms_b: scale(arms_b),
                }
            }
        }
    }
}

/// Full description of one protocol run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolConfig {
    /// Mass of particle A, kg.
    pub m_a: f64,
    /// Mass of particle B, kg.
    pub m_b: f64,
    /// Hold time during which the branches interact, seconds.
    pub duration: f64,
    pub geometry: Geometry,
    #[serde(default)]
    pub phase_backend: PhaseBackend,
    /// Overrides for the coupling constants; CODATA 2018 when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<PhysicalConstants>,
}

impl ProtocolConfig {
    pub fn validate(&self) -> Result<(), ProtocolError> {
        if !(self.m_a > 0.0 && self.m_a.is_finite()) {
            return Err(ProtocolError::InvalidConfig(format!(
                "m_a must be positive and finite, got {}",
                self.m_a
            )));
        }
        if !(self.m_b > 0.0 && self.m_b.is_finite()) {
            return Err(ProtocolError::InvalidConfig(format!(
                "m_b must be positive and finite, got {}",
                self.m_b
            )));
        }
        if !(self.duration > 0.0 && self.duration.is_finite()) {
            return Err(ProtocolError::InvalidConfig(format!(
                "duration must be positive and finite, got {}",
                self.duration
            )));
        }
        self.geometry.separations()?;
        if let Some(c) = &self.constants {
            c.validate()?;
        }
        Ok(())
    }

    pub fn constants(&self) -> PhysicalConstants {
        self.constants.unwrap_or_default()
    }

    pub fn from_json_file(path: &Path) -> Result<Self, ProtocolError> {
        let text = fs::read_to_string(path).map_err(|source| ProtocolError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text, &path.display().to_string())
    }

    /// Parse a config from JSON; `origin` labels schema diagnostics.
    pub fn from_json_str(text: &str, origin: &str) -> Result<Self, ProtocolError> {
        let config: ProtocolConfig =
            serde_json::from_str(text).map_err(|e| ProtocolError::Schema {
                path: origin.to_string(),
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization cannot fail")
    }
}

/// The four accumulated branch phases, radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchPhases {
    pub phi_ll: f64,
    pub phi_lr: f64,
    pub phi_rl: f64,
    pub phi_rr: f64,
}

impl BranchPhases {
    /// The entangling combination phi_LR + phi_RL - phi_LL - phi_RR; all
    /// common phase drops out of every entanglement measure, so only this
    /// number matters.
    pub fn effective_phase(&self) -> f64 {
        self.phi_lr + self.phi_rl - self.phi_ll - self.phi_rr
    }
}

/// Accumulated phase for each branch geometry under the configured backend.
///
/// The protocol holds the arms static, so each branch is a pair of
/// motionless worldlines at that branch's separation, and any backend must
/// agree with the closed form up to its own kernel corrections.
pub fn branch_phases(config: &ProtocolConfig) -> Result<BranchPhases, ProtocolError> {
    config.validate()?;
    let consts = config.constants();
    let r = config.geometry.separations()?;
    let opts = PhaseOptions::default();
    let mut phi = [0.0_f64; 4];
    for (k, &r_branch) in r.iter().enumerate() {
        phi[k] = match config.phase_backend {
            PhaseBackend::ClosedForm => closed_form_phase_signed(
                config.m_a,
                config.m_b,
                r_branch,
                config.duration,
                &consts,
            )?,
            PhaseBackend::NewtonianIntegrated => {
                let (wa, wb) = branch_pair(config, r_branch)?;
                newtonian_phase_with(&wa, &wb, &consts, &opts)?.phi
            }
            PhaseBackend::BilocalStatic
            | PhaseBackend::BilocalRetarded
            | PhaseBackend::BilocalInvariantInterval
            | PhaseBackend::BilocalTwistorDetKernel => {
                let kernel = match config.phase_backend {
                    PhaseBackend::BilocalStatic => KernelChoice::Static,
                    PhaseBackend::BilocalRetarded => KernelChoice::Retarded,
                    PhaseBackend::BilocalInvariantInterval => KernelChoice::InvariantInterval,
                    _ => KernelChoice::TwistorDetKernel,
                };
                let (wa, wb) = branch_pair(config, r_branch)?;
                bilocal_phase_with(&wa, &wb, kernel, &consts, &opts)?.phi
            }
        };
    }
    Ok(BranchPhases {
        phi_ll: phi[0],
        phi_lr: phi[1],
        phi_rl: phi[2],
        phi_rr: phi[3],
    })
}

fn branch_pair(
    config: &ProtocolConfig,
    r: f64,
) -> Result<(SpacetimeWorldline, SpacetimeWorldline), ProtocolError> {
    let make = |mass: f64, x: f64| {
        SpacetimeWorldline::static_line(mass, [x, 0.0, 0.0], 0.0, config.duration, 9)
            .map_err(crate::error::PhaseError::from)
    };
    Ok((make(config.m_a, 0.0)?, make(config.m_b, r)?))
}

/// Joint two-qubit state in the (LL, LR, RL, RR) basis after the hold:
/// every branch starts at amplitude 1/2 and picks up its phase.
pub fn joint_state(phases: &BranchPhases) -> [C64; 4] {
    let amp = |phi: f64| 0.5 * C64::new(0.0, phi).exp();
    [
        amp(phases.phi_ll),
        amp(phases.phi_lr),
        amp(phases.phi_rl),
        amp(phases.phi_rr),
    ]
}

/// Entanglement quantified three independent ways.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EntanglementMeasures {
    /// 2 |a_LL a_RR - a_LR a_RL| straight from the amplitudes.
    pub concurrence: f64,
    /// Magnitude of the negative eigenvalue of the partial transpose.
    pub negativity: f64,
    /// Von Neumann entropy of the reduced state of either mass, bits.
    pub entropy_bits: f64,
    /// True when the concurrence is below [`SEPARABILITY_TOL`].
    pub separable: bool,
}

/// Compute concurrence, negativity and reduced entropy of a pure two-qubit
/// state given in the (LL, LR, RL, RR) basis.
///
/// The three routes share no code: concurrence reads the amplitudes,
/// negativity diagonalizes the partially transposed 4x4 density matrix,
/// and the entropy diagonalizes the partial trace. Keeping them independent
/// turns their exact pure-state relations into a real consistency check.
pub fn entanglement_measures(state: &[C64; 4]) -> EntanglementMeasures {
    let concurrence = 2.0 * (state[0] * state[3] - state[1] * state[2]).norm();

    // Density matrix rho = |psi><psi|, partially transposed on the second
    // qubit: rho^TB[(i,j),(k,l)] = a_(i,l) conj(a_(k,j)).
    let idx = |i: usize, j: usize| 2 * i + j;
    let mut pt = Matrix4::<C64>::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    pt[(idx(i, j), idx(k, l))] = state[idx(i, l)] * state[idx(k, j)].conj();
                }
            }
        }
    }
    let eigen = pt.symmetric_eigen();
    let negativity: f64 = eigen
        .eigenvalues
        .iter()
        .filter(|&&ev| ev < 0.0)
        .map(|&ev| -ev)
        .sum();

    // Reduced state of mass A: rho_A[i,k] = sum_j a_(i,j) conj(a_(k,j)).
    let rho00 = (state[0] * state[0].conj() + state[1] * state[1].conj()).re;
    let rho11 = (state[2] * state[2].conj() + state[3] * state[3].conj()).re;
    let rho01 = state[0] * state[2].conj() + state[1] * state[3].conj();
    let gap = 0.5 * ((rho00 - rho11) * (rho00 - rho11) + 4.0 * rho01.norm_sqr()).sqrt();
    let mid = 0.5 * (rho00 + rho11);
    let entropy_bits = plogp(mid + gap) + plogp(mid - gap);

    EntanglementMeasures {
        concurrence,
        negativity,
        entropy_bits,
        separable: concurrence < SEPARABILITY_TOL,
    }
}

fn plogp(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Binary entropy in bits; the pure-state entropy is h2 of the larger
/// Schmidt weight (1 + sqrt(1 - C^2)) / 2.
pub fn binary_entropy_bits(p: f64) -> f64 {
    plogp(p) + plogp(1.0 - p)
}

/// Everything one protocol run produces.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub branch_phases: BranchPhases,
    /// phi_LR + phi_RL - phi_LL - phi_RR, radians.
    pub effective_phase: f64,
    pub concurrence: f64,
    pub negativity: f64,
    pub entropy_bits: f64,
    pub separable: bool,
}

/// Run the full protocol: branch phases, joint state, measures.
pub fn run_protocol(config: &ProtocolConfig) -> Result<EntanglementReport, ProtocolError> {
    let phases = branch_phases(config)?;
    let state = joint_state(&phases);
    let m = entanglement_measures(&state);
    Ok(EntanglementReport {
        branch_phases: phases,
        effective_phase: phases.effective_phase(),
        concurrence: m.concurrence,
        negativity: m.negativity,
        entropy_bits: m.entropy_bits,
        separable: m.separable,
    })
}

/// Which configuration parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    /// Hold time, seconds.
    T,
    /// Both masses together, kg.
    M,
    /// Geometry scale factor applied to every separation.
    R,
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepAxis::T => "t",
            SweepAxis::M => "m",
            SweepAxis::R => "r",
        })
    }
}

impl FromStr for SweepAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "t" | "T" => Ok(SweepAxis::T),
            "m" | "M" => Ok(SweepAxis::M),
            "r" | "R" => Ok(SweepAxis::R),
            other => Err(format!("unknown sweep axis '{other}' (expected t, m or r)")),
        }
    }
}

/// One evaluated sweep point.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SweepPoint {
    pub axis_value: f64,
    pub phi_ll: f64,
    pub phi_lr: f64,
    pub phi_rl: f64,
    pub phi_rr: f64,
    pub delta_phi: f64,
    pub concurrence: f64,
    pub negativity: f64,
    pub entropy_bits: f64,
    pub separable: bool,
}

/// A sweep point that failed, with the reason.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepFailure {
    pub axis_value: f64,
    pub message: String,
}

/// Sweep outcome; points and failures both keep the input order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    pub axis: SweepAxis,
    pub points: Vec<SweepPoint>,
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    /// Render as CSV with one row per successful point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "axis_value,phi_ll,phi_lr,phi_rl,phi_rr,delta_phi,concurrence,negativity,entropy_bits,separable\n",
        );
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                p.axis_value,
                p.phi_ll,
                p.phi_lr,
                p.phi_rl,
                p.phi_rr,
                p.delta_phi,
                p.concurrence,
                p.negativity,
                p.entropy_bits,
                p.separable
            ));
        }
        out
    }
}

fn with_axis_value(
    config: &ProtocolConfig,
    axis: SweepAxis,
    value: f64,
) -> ProtocolConfig {
    let mut c = config.clone();
    match axis {
        SweepAxis::T => c.duration = value,
        SweepAxis::M => {
            c.m_a = value;
            c.m_b = value;
        }
        SweepAxis::R => c.geometry = c.geometry.scaled(value),
    }
    c
}

/// Run the protocol across a parameter axis. Points are evaluated in
/// parallel but reported in input order, and a failing point is recorded
/// rather than aborting the rest of the sweep.
pub fn sweep(config: &ProtocolConfig, axis: SweepAxis, values: &[f64]) -> SweepReport {
    let results: Vec<Result<SweepPoint, SweepFailure>> = values
        .par_iter()
        .map(|&v| {
            let point_config = with_axis_value(config, axis, v);
            match run_protocol(&point_config) {
                Ok(report) => Ok(SweepPoint {
                    axis_value: v,
                    phi_ll: report.branch_phases.phi_ll,
                    phi_lr: report.branch_phases.phi_lr,
                    phi_rl: report.branch_phases.phi_rl,
                    phi_rr: report.branch_phases.phi_rr,
                    delta_phi: report.effective_phase,
                    concurrence: report.concurrence,
                    negativity: report.negativity,
                    entropy_bits: report.entropy_bits,
                    separable: report.separable,
                }),
                Err(e) => Err(SweepFailure {
                    axis_value: v,
                    message: e.to_string(),
                }),
            }
        })
        .collect();
    let mut points = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(p) => points.push(p),
            Err(f) => failures.push(f),
        }
    }
    SweepReport {
        axis,
        points,
        failures,
    }
}
