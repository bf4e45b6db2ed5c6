//! Quantum cluster seeds attached to words.
//!
//! Inside this module seed slots are 0-based: slot `s` holds the variable
//! attached to word position `s + 1`.

pub mod equivalence;
pub mod lambda;
pub mod matrix;
pub mod qpoly;
pub mod script;
pub mod seed;
pub mod torus;
pub mod tsystem;

use thiserror::Error;

use crate::lusztig::{ExponentVector, LusztigError};
use crate::words::WordError;

pub use equivalence::{seed_equivalence_report, seed_equivalence_report_capped, EquivalenceReport, EXACT_LENGTH_CAP};
pub use lambda::{check_compatibility, solve_lambda};
pub use matrix::{gls_matrix, ExchangeMatrix, LambdaMatrix};
pub use qpoly::LaurentQ;
pub use script::{move_to_mutation_script, MutationScript};
pub use seed::{leading_parameter, mutate_pair, ClusterVariable, ExchangeRecord, Seed};
pub use torus::{QuantumLaurent, Torus};
pub use tsystem::{tsystem_check, TSystemMode, TSystemReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error("no integral skew-symmetric matrix is compatible with the exchange matrix")]
    NoIntegralSolution,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("torus contexts differ")]
    ContextMismatch,
    #[error("slot {0} is frozen")]
    FrozenIndex(usize),
    #[error("division is not exact: {0}")]
    NonExactDivision(String),
    #[error("tropical exchange monomials {0} and {1} are incomparable")]
    TropicalIncomparable(ExponentVector, ExponentVector),
    #[error("permutation does not map the exchange set into itself")]
    ExchangeSetNotPreserved,
    #[error("not a permutation of the slots")]
    InvalidPermutation,
    #[error("B has a nonzero entry at ({row},{col}) outside the kept rows")]
    ZeroBlockViolated { row: usize, col: usize },
    #[error("mutation slot {0} is frozen in the current seed")]
    MutationIndexFrozen(usize),
    #[error("minor {0} is not reachable as a cluster variable")]
    MinorNotReachable(ExponentVector),
    #[error(transparent)]
    Lusztig(#[from] LusztigError),
    #[error(transparent)]
    Word(#[from] WordError),
}
