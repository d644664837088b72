//! Workbench for the Lovász Local Lemma in the variable framework.
//!
//! The crate is organised around a few data types:
//!
//! * [`Instance`]: variables with finite distributions and bad events over them,
//! * [`Table`]: the fallback values consumed by resampling,
//! * [`process::ProcessTrace`]: a recorded Moser–Tardos run,
//! * [`witness::Pile`] and [`witness::WitnessTree`]: certificates of resampling history,
//! * [`entropy`]: Følner intervals, quasi-tilings and the block code.

pub mod approx;
pub mod apps;
pub mod certify;
pub mod entropy;
pub mod graph;
pub mod instance;
pub mod process;
pub mod stats;
pub mod table;
pub mod witness;

pub use certify::{check_eps_correct, check_glll, check_slll, suggest_omega, CertificateKind, CorrectnessCertificate};
pub use instance::{BadEvent, EventSpec, Instance, InstanceError, Variable};
pub use process::{run, solve, violated_domains, ProcessTrace, RunStatus, SelectionRule};
pub use table::Table;

/// Absolute tolerance for floating-point certificate comparisons.
pub const TOL: f64 = 1e-12;

/// Default cap on assignments enumerated when computing an event probability.
pub const ENUM_CAP: u64 = 1 << 24;

/// Default step limit of a resampling run.
pub const DEFAULT_STEP_LIMIT: usize = 1_000_000;
