//! Independent brute-force checks for the closed-form bounds: explicit state
//! vectors, parameter scans, random mixed qubits, soundness trials for
//! propagation and exhaustive subgraph enumeration for the classical bound.
//!
//! Everything here is deliberately plain `f64` and built from state vectors
//! or enumeration rather than from the formulas it is meant to check.

mod states;
mod subgraph;
mod trials;

use thiserror::Error;

pub use states::{
    haar_pure_states, mixed_qubit_envelope, overlap_matrix, random_mixed_qubit_triples, MixedQubitTriple,
    ParameterizedTriple, PureState, QubitDensityMatrix,
};
pub use subgraph::{connected_subgraph_lower, connected_subgraph_lower_all, MAX_SUBGRAPH_VERTICES};
pub use trials::{
    check_containment, rect_grid_extremes, soundness_trial, trial_seed, triangle_scan, ContainmentFailure,
    SoundnessReport,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state has squared norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("{size} vertices exceeds the enumeration limit of {max}")]
    TooLarge { size: usize, max: usize },
    #[error("no connected edge subset after {attempts} draws")]
    DisconnectedSample { attempts: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
