//! Completing an overlap graph and tightening the inferred intervals.
//!
//! Every vertex pair starts either from its edge value or from `[0, 1]`.
//! A sweep applies the interval-lifted triangle bound through every apex and
//! intersects the results into the pair's interval. Sweeps are synchronous:
//! all implied intervals of a sweep are computed from the state left by the
//! previous sweep, so the outcome of a sweep does not depend on the order in
//! which pairs are visited.
//!
//! Measured edges are never modified. They are still intersected with their
//! implied intervals, and an empty intersection proves the data infeasible.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::bounds::{triangle_interval_lifted, Model};
use crate::graph::{all_pairs, pair_key, Edge, OverlapGraph, Provenance};
use crate::interval::{Interval, OverlapValue};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PropagationOptions<T> {
    pub max_iters: usize,
    /// Stop once no inferred endpoint moves by more than this in a sweep.
    pub change_tol: T,
}

impl<T: Scalar> PropagationOptions<T> {
    /// `100·n²` sweeps, change tolerance 1e-12 (clamped below by `T`'s
    /// resolution).
    pub fn for_vertices(n: usize) -> Self {
        let tol = T::lit(1e-12).max(T::epsilon());
        Self {
            max_iters: (100 * n * n).max(1),
            change_tol: tol,
        }
    }
}

/// A triangle whose implied interval for `pair` misses what is already known.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InfeasibilityWitness<T> {
    /// The pair `{B, C}` whose interval came up empty.
    pub pair: (usize, usize),
    /// The common neighbour `A` supplying the implied interval.
    pub apex: usize,
    /// What was known about the pair before this triangle was applied.
    pub current: Interval<T>,
    /// What the triangle through `apex` allows.
    pub implied: Interval<T>,
    /// Whether `pair` is a measured edge.
    pub measured: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Error)]
#[error(
    "overlaps are infeasible: pair ({}, {}) via apex {} has {} but the triangle allows {} (sweep {sweep})",
    .witness.pair.0, .witness.pair.1, .witness.apex, .witness.current, .witness.implied
)]
pub struct Infeasible<T: Scalar> {
    pub witness: InfeasibilityWitness<T>,
    pub sweep: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InferenceResult<T> {
    /// Every vertex pair, measured edges copied verbatim.
    pub complete: OverlapGraph<T>,
    pub iterations: usize,
    pub converged: bool,
    /// The input graph was disconnected; cross-component pairs stay `[0, 1]`.
    pub disconnected: bool,
}

/// Sweep-by-sweep driver behind [`complete_and_tighten`].
#[derive(Clone, Debug)]
pub struct Propagator<T> {
    n: usize,
    model: Model,
    state: Vec<Interval<T>>,
    measured: Vec<Option<OverlapValue<T>>>,
    component: Vec<usize>,
    sweeps: usize,
}

impl<T: Scalar> Propagator<T> {
    pub fn new(g: &OverlapGraph<T>, model: Model) -> Self {
        let n = g.n();
        let mut state = vec![Interval::full(); n * n];
        let mut measured = vec![None; n * n];
        for ((i, j), e) in g.edges() {
            let iv = e.value.interval();
            state[i * n + j] = iv;
            state[j * n + i] = iv;
            if e.provenance == Provenance::Measured {
                measured[i * n + j] = Some(e.value);
                measured[j * n + i] = Some(e.value);
            }
        }
        Self {
            n,
            model,
            state,
            measured,
            component: g.components(),
            sweeps: 0,
        }
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    pub fn is_disconnected(&self) -> bool {
        self.component.iter().any(|&c| c != 0)
    }

    /// Current interval for the pair `{i, j}`.
    pub fn interval(&self, i: usize, j: usize) -> Interval<T> {
        self.state[i * self.n + j]
    }

    /// One synchronous sweep. Returns the largest endpoint change among
    /// inferred pairs.
    pub fn sweep(&mut self) -> Result<T, Infeasible<T>> {
        let n = self.n;
        self.sweeps += 1;
        let mut next = self.state.clone();
        // Apex-major order fixes which triangle is reported as the witness
        // when several conflict in the same sweep.
        for a in 0..n {
            for b in 0..n {
                if b == a {
                    continue;
                }
                let ab = self.state[a * n + b];
                if ab.is_full() {
                    continue;
                }
                for c in b + 1..n {
                    if c == a || self.component[b] != self.component[c] {
                        continue;
                    }
                    let ac = self.state[a * n + c];
                    if ac.is_full() {
                        continue;
                    }
                    let implied = triangle_interval_lifted(ab, ac, self.model);
                    let current = next[b * n + c];
                    match current.intersect(&implied) {
                        Some(tight) => next[b * n + c] = tight,
                        None => {
                            return Err(Infeasible {
                                witness: InfeasibilityWitness {
                                    pair: (b, c),
                                    apex: a,
                                    current,
                                    implied,
                                    measured: self.measured[b * n + c].is_some(),
                                },
                                sweep: self.sweeps,
                            })
                        }
                    }
                }
            }
        }
        let mut change = T::zero();
        for (b, c) in all_pairs(n) {
            if self.measured[b * n + c].is_some() {
                continue;
            }
            let tight = next[b * n + c];
            change = change.max(tight.distance(&self.state[b * n + c]));
            self.state[b * n + c] = tight;
            self.state[c * n + b] = tight;
        }
        Ok(change)
    }

    /// Snapshot of the current state as a complete graph.
    pub fn to_graph(&self) -> OverlapGraph<T> {
        let n = self.n;
        let edges: BTreeMap<_, _> = all_pairs(n)
            .map(|(i, j)| {
                let edge = match self.measured[i * n + j] {
                    Some(value) => Edge {
                        value,
                        provenance: Provenance::Measured,
                    },
                    None => Edge {
                        value: OverlapValue::Range(self.state[i * n + j]),
                        provenance: Provenance::Inferred,
                    },
                };
                ((i, j), edge)
            })
            .collect();
        OverlapGraph::from_parts(n, edges)
    }
}

/// Fill in every missing pair and tighten all inferred intervals to a
/// fixpoint (or until `opts.max_iters` sweeps have run).
pub fn complete_and_tighten<T: Scalar>(
    g: &OverlapGraph<T>,
    model: Model,
    opts: PropagationOptions<T>,
) -> Result<InferenceResult<T>, Infeasible<T>> {
    let mut prop = Propagator::new(g, model);
    let mut converged = false;
    while prop.sweeps() < opts.max_iters.max(1) {
        if prop.sweep()? <= opts.change_tol {
            converged = true;
            break;
        }
    }
    Ok(InferenceResult {
        complete: prop.to_graph(),
        iterations: prop.sweeps(),
        converged,
        disconnected: prop.is_disconnected(),
    })
}

/// Best chain of measured edges between two vertices for the classical
/// connected-subgraph inequality.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalChain<T> {
    /// `1 − Σ (1 − r)` along the chain, clamped at 0.
    pub bound: T,
    /// Vertices from `k` to `l`.
    pub path: Vec<usize>,
}

impl<T: Scalar> fmt::Display for ClassicalChain<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.path.iter().map(|v| v.to_string()).collect();
        write!(f, "{} via {}", self.bound, names.join("-"))
    }
}

fn measured_weights<T: Scalar>(g: &OverlapGraph<T>) -> Vec<Option<T>> {
    let n = g.n();
    let mut w = vec![None; n * n];
    for ((i, j), e) in g.measured_edges() {
        let d = T::one() - e.value.lo();
        w[i * n + j] = Some(d);
        w[j * n + i] = Some(d);
    }
    w
}

/// Dijkstra over measured edges with weight `1 − r`. With `skip_direct` the
/// edge `{k, l}` itself is ignored, which leaves the non-trivial instances of
/// the inequality for a measured pair.
pub fn classical_chain<T: Scalar>(g: &OverlapGraph<T>, k: usize, l: usize, skip_direct: bool) -> Option<ClassicalChain<T>> {
    let n = g.n();
    let w = measured_weights(g);
    let skip = pair_key(k, l);
    let mut dist: Vec<Option<T>> = vec![None; n];
    let mut prev = vec![usize::MAX; n];
    let mut done = vec![false; n];
    dist[k] = Some(T::zero());
    loop {
        let mut best: Option<(usize, T)> = None;
        for v in 0..n {
            if done[v] {
                continue;
            }
            if let Some(d) = dist[v] {
                if best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((v, d));
                }
            }
        }
        let Some((u, du)) = best else { break };
        done[u] = true;
        if u == l {
            break;
        }
        for v in 0..n {
            if done[v] || (skip_direct && pair_key(u, v) == skip) {
                continue;
            }
            if let Some(wuv) = w[u * n + v] {
                let cand = du + wuv;
                if dist[v].is_none_or(|dv| cand < dv) {
                    dist[v] = Some(cand);
                    prev[v] = u;
                }
            }
        }
    }
    let d = dist[l]?;
    let mut path = vec![l];
    let mut v = l;
    while v != k {
        v = prev[v];
        path.push(v);
    }
    path.reverse();
    Some(ClassicalChain {
        bound: (T::one() - d).max(T::zero()),
        path,
    })
}

/// Classical lower bound for every vertex pair from measured edges:
/// `1 − d(k, l)` with `d` the shortest path under weights `1 − r`, clamped at
/// 0. Pairs in different components get 0. Range-valued edges contribute
/// their lower end.
pub fn classical_lower_map<T: Scalar>(g: &OverlapGraph<T>) -> BTreeMap<(usize, usize), T> {
    let n = g.n();
    let mut dist = measured_weights(g);
    for v in 0..n {
        dist[v * n + v] = Some(T::zero());
    }
    for m in 0..n {
        for i in 0..n {
            let Some(dim) = dist[i * n + m] else { continue };
            for j in 0..n {
                if let Some(dmj) = dist[m * n + j] {
                    let cand = dim + dmj;
                    if dist[i * n + j].is_none_or(|d| cand < d) {
                        dist[i * n + j] = Some(cand);
                    }
                }
            }
        }
    }
    all_pairs(n)
        .map(|(i, j)| {
            let lower = dist[i * n + j].map_or(T::zero(), |d| (T::one() - d).max(T::zero()));
            ((i, j), lower)
        })
        .collect()
}
