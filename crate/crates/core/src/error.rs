use std::fmt;

use thiserror::Error;

/// A single number or interval that cannot represent an overlap.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValueError {
    #[error("value {0} is outside [0, 1]")]
    OutOfRange(f64),
    #[error("value is NaN")]
    NotANumber,
    #[error("interval [{lo}, {hi}] has lo > hi")]
    Inverted { lo: f64, hi: f64 },
}

/// One broken invariant of an overlap graph.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphViolation {
    #[error("graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("edge {{{i}, {j}}}: {source}")]
    OutOfRangeWeight {
        i: usize,
        j: usize,
        #[source]
        source: ValueError,
    },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{i}, {j}}}")]
    DuplicateEdge { i: usize, j: usize },
    #[error("edge {{{i}, {j}}} references a vertex outside 0..{n}")]
    BadVertexIndex { i: usize, j: usize, n: usize },
}

/// Every violation found while validating a graph, in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<GraphViolation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} graph violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}
