//! Bounds on unknown pairwise overlaps `|⟨ψ_i|ψ_j⟩|²` of quantum states.
//!
//! Given some measured overlaps between otherwise unknown states, this crate
//! infers intervals for the rest under three models (pure states of any
//! dimension, qubits, classical/diagonal states), detects data that breaks
//! classical or qubit expectations, and ships brute-force oracles that check
//! every closed-form bound independently.
//!
//! The interval, bound, propagation and witness code is generic over
//! [`Scalar`] (`f32` or `f64`); the `*64` aliases below are what most callers
//! want. The oracle and polytope modules work in `f64` only.
//!
//! ```
//! use overlap_bounds::{complete_and_tighten, Model, OverlapGraph64, PropagationOptions};
//!
//! // Two states each with overlap 3/4 to a common reference.
//! let g = OverlapGraph64::from_measured(3, &[(0, 1, 0.75), (0, 2, 0.75)]).unwrap();
//! let out = complete_and_tighten(&g, Model::PureQudit, PropagationOptions::for_vertices(3)).unwrap();
//! let r12 = out.complete.value(1, 2).unwrap().interval();
//! assert!((r12.lo() - 0.25).abs() < 1e-12 && r12.hi() == 1.0);
//! ```

pub mod bounds;
pub mod error;
pub mod graph;
pub mod interval;
pub mod oracle;
pub mod polytope;
pub mod propagation;
pub mod scalar;
pub mod witness;

pub use bounds::{f_minus, f_plus, triangle_interval, triangle_interval_lifted, Model, TriangleInputs};
pub use error::{GraphViolation, ValidationReport, ValueError};
pub use graph::{all_pairs, pair_key, validate_graph, Edge, OverlapGraph, Provenance, RawEdge};
pub use interval::{Interval, OverlapValue};
pub use propagation::{
    classical_chain, classical_lower_map, complete_and_tighten, ClassicalChain, InferenceResult, Infeasible,
    InfeasibilityWitness, PropagationOptions, Propagator,
};
pub use scalar::Scalar;
pub use witness::{
    classicality_check, classicality_check_pair, dimension_witness, max_violation_search, max_violation_states,
    ClassicalityVerdict, DimensionVerdict, Inequality, Violation, ViolationExtremum, ViolationKind, WitnessError,
};

pub type Interval64 = Interval<f64>;
pub type Interval32 = Interval<f32>;
pub type OverlapValue64 = OverlapValue<f64>;
pub type OverlapGraph64 = OverlapGraph<f64>;
pub type OverlapGraph32 = OverlapGraph<f32>;
pub type InferenceResult64 = InferenceResult<f64>;
pub type Infeasible64 = Infeasible<f64>;
