//! Error types shared across the library.

use thiserror::Error;

/// Errors from spinor, twistor, and bitwistor algebra.
#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("spinor is zero (norm {norm:.3e}); cannot build an incident twistor")]
    ZeroSpinor { norm: f64 },

    #[error("rescaling factor is zero")]
    ZeroScale,

    #[error("matrix is not unimodular: |det - 1| = {deviation:.3e}")]
    NonUnimodular { deviation: f64 },

    #[error("transform is singular: |det| = {det:.3e}")]
    SingularTransform { det: f64 },

    #[error("twistor pair is degenerate (wedge norm {wedge:.3e} vs scale {scale:.3e})")]
    DegeneratePair { wedge: f64, scale: f64 },

    #[error("line lies at infinity: pi spinors are parallel (|eps| = {eps:.3e})")]
    LineAtInfinity { eps: f64 },

    #[error("line does not correspond to a real point: hermiticity residual {residual:.3e}")]
    NonRealPoint { residual: f64 },

    #[error("unit modes differ: {0} vs {1}")]
    UnitMismatch(&'static str, &'static str),

    #[error("non-finite value produced in {0}")]
    NonFinite(&'static str),
}

/// Errors from worldline construction and file I/O.
#[derive(Debug, Error)]
pub enum WorldlineError {
    #[error("worldline needs at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("sample times must be strictly increasing: t[{index}] = {t} does not exceed its predecessor")]
    NonMonotonicTime { index: usize, t: f64 },

    #[error("mass must be positive and finite, got {0}")]
    BadMass(f64),

    #[error("non-finite coordinate in sample {index}")]
    NonFiniteSample { index: usize },

    #[error("segment {index} is superluminal: speed {speed:.6e} exceeds c = {c:.6e}")]
    Superluminal { index: usize, speed: f64, c: f64 },

    #[error("worldline file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("worldline schema error in {path} at line {line}, column {column}: {message}")]
    Schema {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
}

/// Errors from phase integration.
#[derive(Debug, Error)]
pub enum PhaseError {
    #[error("worldlines do not overlap in time: [{a0}, {a1}] vs [{b0}, {b1}]")]
    NoOverlap { a0: f64, a1: f64, b0: f64, b1: f64 },

    #[error("worldlines approach within r_min = {r_min:.3e} m (separation {r:.3e} at t = {t:.6e})")]
    Collision { t: f64, r: f64, r_min: f64 },

    #[error("too many quadrature samples near the light cone: {excluded} of {total} nodes excluded")]
    SingularExcess { excluded: u64, total: u64 },

    #[error("phase functional returned a non-finite value at (tau, tau') = ({tau}, {tau_p})")]
    NonFiniteFunctional { tau: f64, tau_p: f64 },

    #[error("physical constants must be positive: {0}")]
    BadConstants(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    #[error(transparent)]
    Worldline(#[from] WorldlineError),
}

/// Errors from the entanglement protocol layer.
#[derive(Debug, Error)]
pub enum ProtocolError {
    #[error("protocol config: {0}")]
    InvalidConfig(String),

    #[error("protocol config file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("protocol schema error in {path} at line {line}, column {column}: {message}")]
    Schema {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Phase(#[from] PhaseError),
}
