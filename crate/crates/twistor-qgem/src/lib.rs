//! Numerical twistor algebra and gravitationally induced entanglement phases.
//!
//! This crate implements a chain of numerical constructions linking twistor
//! geometry to a two-mass entanglement protocol:
//!
//! * two-component spinors, spacetime points as Hermitian 2x2 matrices, and
//!   the incidence relation `omega = i X pi` ([`spinor`], [`twistor`]);
//! * bitwistors (antisymmetrized twistor pairs) with Plücker coordinates,
//!   the simplicity constraint, and the epsilon invariant `I_AB`
//!   ([`bitwistor`]);
//! * scalar and determinant kernels built from infinity-twistor
//!   contractions, with a numerically verified reduction of the line kernel
//!   to the inverse squared spacetime separation ([`kernel`]);
//! * bilocal interaction phases over sampled worldlines with four kernel
//!   backends (instantaneous, retarded, invariant-interval, twistor) and a
//!   static-limit convergence study ([`worldline`], [`phase`]);
//! * the two-mass superposition protocol: branch phases, the joint
//!   two-qubit state, and entanglement measures cross-checked against an
//!   independent partial-trace oracle ([`qgem`]);
//! * seeded, deterministic property suites behind a CLI ([`verify`]).
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --example spinor_algebra      # brackets, point matrices, intervals
//! cargo run --example incidence_lines    # incident twistors and point recovery
//! cargo run --example conformal_invariants # simplicity and SL(4,C) invariance
//! cargo run --example kernel_reduction   # line kernel vs squared separation
//! cargo run --example gl2_probe          # GL(2,C) scaling exponents
//! cargo run --example newtonian_phase    # four phase backends, one number
//! cargo run --example static_limit      # velocity convergence study
//! cargo run --example qgem_entanglement  # branch phases to entanglement
//! ```
//!
//! The command-line front end (`twistor-qgem`) exposes the same machinery as
//! the `verify`, `reduce-check`, `phase`, and `qgem` subcommands; see the
//! repository README for file formats and exit-code conventions.

pub mod bitwistor;
pub mod error;
pub mod kernel;
pub mod mat;
pub mod phase;
pub mod qgem;
pub mod quad;
pub mod spinor;
pub mod twistor;
pub mod verify;
pub mod worldline;

pub use error::{AlgebraError, PhaseError, ProtocolError, WorldlineError};
