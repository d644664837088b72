//! Piles, witness trees and the index bound.

mod bound;
mod pile;
mod tree;

pub use bound::{verify_index_bound, IndexBoundReport};
pub use pile::{appears_in, enumerate_piles, traceback, validate_pile, Pile, PileElement, PileReport, ResampleHistory};
pub use tree::{enumerate_trees, pile_to_tree, tree_to_pile, tree_weight, tree_weight_sums, DomainOrder, Seq, TreeCaps, TreeEnumeration, WitnessTree};

use thiserror::Error;

use crate::table::TableError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WitnessError {
    #[error("domain {domain} is not violated at step {step}")]
    NotViolated { domain: usize, step: usize },
    #[error("step {0} is beyond the recorded trace")]
    StepOutOfRange(usize),
    #[error("variable set {0:?} is not an event domain")]
    UnknownDomain(Vec<usize>),
    #[error("not a pile: {0}")]
    NotAPile(String),
    #[error("pile is not neat")]
    NotNeat,
    #[error("pile has {0} top elements; exactly one is required")]
    Tops(usize),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Certificate(#[from] crate::certify::CertifyError),
    #[error("certificate does not validate (margin {0})")]
    InvalidCertificate(f64),
}
