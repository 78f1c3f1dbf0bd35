//! Numerical certification of quantum phase estimation (QPE).
//!
//! The crate has two independent routes to every quantity of interest:
//!
//! * [`circuit`] builds the QPE unitaries from controlled powers and an
//!   inverse Fourier transform and reads measurement probabilities off a
//!   dense statevector. It knows nothing about the closed forms.
//! * [`analytic`] evaluates the closed-form states, amplitudes and bounds
//!   directly.
//!
//! [`harness`] registers every theorem-level claim as a node in an acyclic
//! check graph, runs the nodes in dependency order against both routes and
//! collects a [`harness::CheckReport`].

pub mod analytic;
pub mod circuit;
pub mod config;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod phase;
pub mod tolerances;

pub use analytic::{FailureBounds, PhaseGeometry, PrecisionSpec};
pub use circuit::{MeasurementDistribution, QpeInstance};
pub use config::{OutputFormat, PhaseKind, RunConfig};
pub use error::{Error, Result};
pub use harness::{CheckGraph, CheckReport, CheckResult, CheckStatus};
pub use linalg::{Complex, Matrix, NumberKet, StateVector, UnitaryMatrix};
pub use phase::Phase;
pub use tolerances::Tolerances;

/// Hard limit on the total number of simulated qubits (first plus second
/// register).
pub const MAX_QUBITS: u32 = 14;
