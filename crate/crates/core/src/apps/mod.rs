//! Instance generators and verified pipelines for coloring applications.

mod acyclic;
mod goodcolor;
mod hypergraph;
mod listcolor;
mod nonrep;
mod regularize;

pub use acyclic::{brute_force_acyclic, enumerate_cycles, gen_acyclic, is_acyclic_coloring, AcyclicInstance};
pub use goodcolor::{
    good_partial_coloring, goodness_instance, greedy_extend, is_good, repeated_colors, retained_set, Extension,
    GoodColoringOutcome,
};
pub use hypergraph::{gen_hypergraph_2col, Hypergraph2Col, Topology};
pub use listcolor::{
    brute_force_list_coloring, check_hypothesis, list_coloring_instance, list_coloring_lll, random_sparse_lists,
    HypothesisViolation, ListAssignment, ListColoringOutcome,
};
pub use nonrep::{brute_force_nonrepetitive, enumerate_paths, gen_nonrepetitive, is_nonrepetitive, NonrepInstance};
pub use regularize::{regularize, Regularized};

use thiserror::Error;

use crate::graph::GraphError;
use crate::instance::InstanceError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AppError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("graph has maximum degree {max} > {d}")]
    DegreeTooLarge { max: usize, d: usize },
    #[error("graph is not {0}-regular")]
    NotRegular(usize),
    #[error("graph contains a triangle")]
    Triangle,
    #[error("enumeration exceeded the budget of {0} objects")]
    Budget(usize),
    #[error("step limit reached after {steps} steps with {surviving} violated domains")]
    StepLimit { steps: usize, surviving: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Default cap on enumerated paths or cycles.
pub const DEFAULT_BUDGET: usize = 2_000_000;
