//! Overlap graphs: vertices are unknown states, edges carry overlap values.

use std::collections::BTreeMap;

use crate::error::{GraphViolation, ValidationReport};
use crate::interval::OverlapValue;
use crate::scalar::Scalar;

/// Canonical `(min, max)` key for an unordered vertex pair.
pub fn pair_key(i: usize, j: usize) -> (usize, usize) {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

/// All unordered pairs of `0..n` in lexicographic order.
pub fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Measured,
    Inferred,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge<T> {
    pub value: OverlapValue<T>,
    pub provenance: Provenance,
}

/// Unvalidated edge as it comes from a caller or a document.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RawEdge<T> {
    pub i: usize,
    pub j: usize,
    pub value: OverlapValue<T>,
    pub provenance: Provenance,
}

impl<T: Scalar> RawEdge<T> {
    pub fn measured(i: usize, j: usize, value: OverlapValue<T>) -> Self {
        Self {
            i,
            j,
            value,
            provenance: Provenance::Measured,
        }
    }
}

/// Check every graph invariant and report all violations, not just the first.
pub fn validate_graph<T: Scalar>(n: usize, edges: &[RawEdge<T>]) -> Result<(), ValidationReport> {
    let mut violations = Vec::new();
    if n < 2 {
        violations.push(GraphViolation::TooFewVertices(n));
    }
    let mut seen = BTreeMap::new();
    for e in edges {
        if e.i >= n || e.j >= n {
            violations.push(GraphViolation::BadVertexIndex { i: e.i, j: e.j, n });
            continue;
        }
        if e.i == e.j {
            violations.push(GraphViolation::SelfLoop(e.i));
            continue;
        }
        if let Err(source) = e.value.validate() {
            violations.push(GraphViolation::OutOfRangeWeight { i: e.i, j: e.j, source });
        }
        let key = pair_key(e.i, e.j);
        if seen.insert(key, ()).is_some() {
            violations.push(GraphViolation::DuplicateEdge { i: key.0, j: key.1 });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(ValidationReport { violations })
    }
}

/// A validated graph of overlap values. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct OverlapGraph<T> {
    n: usize,
    edges: BTreeMap<(usize, usize), Edge<T>>,
}

impl<T: Scalar> OverlapGraph<T> {
    pub fn new(n: usize, edges: &[RawEdge<T>]) -> Result<Self, ValidationReport> {
        validate_graph(n, edges)?;
        let edges = edges
            .iter()
            .map(|e| {
                // Re-normalize so near-boundary inputs are stored clamped.
                let value = match e.value {
                    OverlapValue::Exact(v) => OverlapValue::Exact(v.unit_clamp()),
                    OverlapValue::Range(iv) => OverlapValue::Range(iv),
                };
                (
                    pair_key(e.i, e.j),
                    Edge {
                        value,
                        provenance: e.provenance,
                    },
                )
            })
            .collect();
        Ok(Self { n, edges })
    }

    /// Graph whose edges are all measured exact values.
    pub fn from_measured(n: usize, edges: &[(usize, usize, T)]) -> Result<Self, ValidationReport> {
        let raw: Vec<_> = edges
            .iter()
            .map(|&(i, j, v)| RawEdge::measured(i, j, OverlapValue::Exact(v)))
            .collect();
        Self::new(n, &raw)
    }

    pub(crate) fn from_parts(n: usize, edges: BTreeMap<(usize, usize), Edge<T>>) -> Self {
        Self { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, i: usize, j: usize) -> Option<&Edge<T>> {
        self.edges.get(&pair_key(i, j))
    }

    pub fn value(&self, i: usize, j: usize) -> Option<OverlapValue<T>> {
        self.edge(i, j).map(|e| e.value)
    }

    /// Edges in canonical pair order.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), &Edge<T>)> {
        self.edges.iter().map(|(k, e)| (*k, e))
    }

    pub fn measured_edges(&self) -> impl Iterator<Item = ((usize, usize), &Edge<T>)> {
        self.edges()
            .filter(|(_, e)| e.provenance == Provenance::Measured)
    }

    /// Adjacency lists in ascending order.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in self.edges.keys() {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Component label of every vertex; labels are the smallest vertex index
    /// of each component.
    pub fn components(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n];
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = start;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = start;
                        stack.push(w);
                    }
                }
            }
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }
}
