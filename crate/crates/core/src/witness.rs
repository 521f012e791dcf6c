//! Classicality violations, qubit dimension witnesses and the maximal gap
//! between quantum and classical triangle bounds.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use thiserror::Error;

use crate::bounds::{f_minus, triangle_interval, Model, TriangleInputs};
use crate::error::ValueError;
use crate::graph::{pair_key, OverlapGraph, Provenance};
use crate::interval::Interval;
use crate::oracle::PureState;
use crate::propagation::classical_chain;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WitnessError {
    #[error("pair ({0}, {1}) has no measured overlap to check")]
    MissingEdge(usize, usize),
    #[error("grid_steps = {0} is below the minimum of 16")]
    GridTooCoarse(usize),
}

/// Which classical inequality an instance belongs to. For a target pair
/// `{B, C}` with apex `A`:
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Inequality {
    /// `r_bc ≥ r_ab + r_ac − 1`
    TriangleLower,
    /// `r_bc ≤ r_ab − r_ac + 1`
    TriangleUpperAb,
    /// `r_bc ≤ r_ac − r_ab + 1`
    TriangleUpperAc,
    /// `r_kl ≥ 1 − m + Σ r` along a chain of three or more measured edges.
    Chain,
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Inequality::TriangleLower => "triangle-lower",
            Inequality::TriangleUpperAb => "triangle-upper-ab",
            Inequality::TriangleUpperAc => "triangle-upper-ac",
            Inequality::Chain => "chain-lower",
        })
    }
}

/// One violated inequality instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation<T> {
    pub inequality: Inequality,
    /// The pair whose measured overlap breaks the bound.
    pub target: (usize, usize),
    /// Triangle instances: `[apex, b, c]`. Chains: the path from `k` to `l`.
    pub vertices: Vec<usize>,
    /// Classical bound implied by the other overlaps.
    pub bound: T,
    /// Always positive.
    pub magnitude: T,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ClassicalityVerdict<T> {
    ConsistentWithClassical,
    NonClassical(Vec<Violation<T>>),
}

impl<T> ClassicalityVerdict<T> {
    pub fn violations(&self) -> &[Violation<T>] {
        match self {
            Self::ConsistentWithClassical => &[],
            Self::NonClassical(v) => v,
        }
    }

    pub fn is_classical(&self) -> bool {
        matches!(self, Self::ConsistentWithClassical)
    }
}

fn measured<T: Scalar>(g: &OverlapGraph<T>, i: usize, j: usize) -> Option<Interval<T>> {
    g.edge(i, j)
        .filter(|e| e.provenance == Provenance::Measured)
        .map(|e| e.value.interval())
}

/// Violations whose target is the measured pair `{b, c}`. A range-valued
/// measurement only counts as violating when every value in the range does.
fn pair_violations<T: Scalar>(g: &OverlapGraph<T>, b: usize, c: usize, tol: T) -> Vec<Violation<T>> {
    let one = T::one();
    let Some(bc) = measured(g, b, c) else { return Vec::new() };
    let mut out = Vec::new();
    for a in 0..g.n() {
        if a == b || a == c {
            continue;
        }
        let (Some(ab), Some(ac)) = (measured(g, a, b), measured(g, a, c)) else { continue };
        let checks = [
            (Inequality::TriangleLower, ab.lo() + ac.lo() - one, ab.lo() + ac.lo() - one - bc.hi()),
            (Inequality::TriangleUpperAb, ab.hi() - ac.lo() + one, bc.lo() - (ab.hi() - ac.lo() + one)),
            (Inequality::TriangleUpperAc, ac.hi() - ab.lo() + one, bc.lo() - (ac.hi() - ab.lo() + one)),
        ];
        for (inequality, bound, magnitude) in checks {
            if magnitude > tol {
                out.push(Violation {
                    inequality,
                    target: (b, c),
                    vertices: vec![a, b, c],
                    bound,
                    magnitude,
                });
            }
        }
    }
    // Two-edge chains are the triangle-lower instances above.
    if let Some(chain) = classical_chain(g, b, c, true) {
        let magnitude = chain.bound - bc.hi();
        if chain.path.len() > 3 && magnitude > tol {
            out.push(Violation {
                inequality: Inequality::Chain,
                target: (b, c),
                vertices: chain.path,
                bound: chain.bound,
                magnitude,
            });
        }
    }
    out
}

fn verdict<T>(violations: Vec<Violation<T>>) -> ClassicalityVerdict<T> {
    if violations.is_empty() {
        ClassicalityVerdict::ConsistentWithClassical
    } else {
        ClassicalityVerdict::NonClassical(violations)
    }
}

/// Check every triangle and chain inequality whose target pair is measured.
pub fn classicality_check<T: Scalar>(g: &OverlapGraph<T>, tol: T) -> ClassicalityVerdict<T> {
    let targets: Vec<_> = g.measured_edges().map(|(k, _)| k).collect();
    verdict(targets.into_iter().flat_map(|(b, c)| pair_violations(g, b, c, tol)).collect())
}

/// Check only the inequalities targeting `{b, c}`.
pub fn classicality_check_pair<T: Scalar>(g: &OverlapGraph<T>, b: usize, c: usize, tol: T) -> Result<ClassicalityVerdict<T>, WitnessError> {
    let (b, c) = pair_key(b, c);
    if measured(g, b, c).is_none() {
        return Err(WitnessError::MissingEdge(b, c));
    }
    Ok(verdict(pair_violations(g, b, c, tol)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DimensionVerdict {
    ConsistentWithQubits,
    RequiresDimensionAtLeast3,
    InfeasibleForPureStates,
}

impl fmt::Display for DimensionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ConsistentWithQubits => "ConsistentWithQubits",
            Self::RequiresDimensionAtLeast3 => "RequiresDimensionAtLeast3",
            Self::InfeasibleForPureStates => "InfeasibleForPureStates",
        })
    }
}

/// Classify a fully measured triangle. Data outside the pure-state envelope
/// is reported as infeasible before any dimension claim is made.
pub fn dimension_witness<T: Scalar>(r_ab: T, r_ac: T, r_bc: T, tol: T) -> Result<DimensionVerdict, ValueError> {
    let inputs = TriangleInputs::new(r_ab, r_ac)?;
    let r_bc = crate::interval::unit_value(r_bc)?;
    let qudit = triangle_interval(inputs, Model::PureQudit);
    if !qudit.contains(r_bc, tol) {
        return Ok(DimensionVerdict::InfeasibleForPureStates);
    }
    // Can only fire when r_ab + r_ac <= 1; above that line both lower ends agree.
    if r_bc < f_minus(inputs.r_ab(), inputs.r_ac()) - tol {
        return Ok(DimensionVerdict::RequiresDimensionAtLeast3);
    }
    Ok(DimensionVerdict::ConsistentWithQubits)
}

/// Which classical triangle bound the quantum bound is compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// `r_bc ≥ r_ab + r_ac − 1` against `cos²(β+γ)`.
    LowerBound,
    /// `r_bc ≤ 1 − |r_ab − r_ac|` against `cos²(β−γ)`.
    UpperBound,
}

/// Maximizer of the quantum-vs-classical gap in the frame `r_ab = cos²β`,
/// `r_ac = cos²γ` (state-space angles, half the Bloch-sphere angles).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ViolationExtremum {
    pub d: f64,
    pub beta: f64,
    pub gamma: f64,
    pub kind: ViolationKind,
}

impl ViolationExtremum {
    /// Bloch-sphere angles between the middle state of the great-circle
    /// configuration and its two neighbours.
    pub fn bloch_separations(&self) -> (f64, f64) {
        match self.kind {
            ViolationKind::LowerBound => (2.0 * self.beta, 2.0 * self.gamma),
            ViolationKind::UpperBound => (2.0 * self.beta.min(self.gamma), 2.0 * (self.beta - self.gamma).abs()),
        }
    }
}

/// The gap `D(β, γ)`, or `None` where it is not defined (for the lower
/// bound, outside `cos²β + cos²γ > 1`).
pub fn violation_gap(kind: ViolationKind, beta: f64, gamma: f64) -> Option<f64> {
    let (cb, cg) = (beta.cos().powi(2), gamma.cos().powi(2));
    match kind {
        ViolationKind::LowerBound => (cb + cg > 1.0).then(|| cb + cg - 1.0 - (beta + gamma).cos().powi(2)),
        ViolationKind::UpperBound => Some((beta - gamma).cos().powi(2) - (1.0 - (cb - cg).abs())),
    }
}

fn objective(kind: ViolationKind, beta: f64, gamma: f64) -> f64 {
    violation_gap(kind, beta, gamma).unwrap_or(f64::NEG_INFINITY)
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section maximization of `f` on `[a, b]`.
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-13 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Maximize `D` over `β, γ ∈ [0, π/2]`: a `grid_steps²` grid (first strict
/// maximum in lexicographic `(β, γ)` order) followed by `refine_iters`
/// rounds of coordinatewise golden-section search within one grid cell of
/// the current point.
pub fn max_violation_search(kind: ViolationKind, grid_steps: usize, refine_iters: usize) -> Result<ViolationExtremum, WitnessError> {
    if grid_steps < 16 {
        return Err(WitnessError::GridTooCoarse(grid_steps));
    }
    let h = FRAC_PI_2 / (grid_steps - 1) as f64;
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..grid_steps {
        let beta = h * i as f64;
        for j in 0..grid_steps {
            let gamma = h * j as f64;
            let v = objective(kind, beta, gamma);
            if v > best.0 {
                best = (v, beta, gamma);
            }
        }
    }
    let (_, mut beta, mut gamma) = best;
    for _ in 0..refine_iters {
        let (lo, hi) = ((beta - h).max(0.0), (beta + h).min(FRAC_PI_2));
        let nb = golden_max(|b| objective(kind, b, gamma), lo, hi);
        if objective(kind, nb, gamma) >= objective(kind, beta, gamma) {
            beta = nb;
        }
        let (lo, hi) = ((gamma - h).max(0.0), (gamma + h).min(FRAC_PI_2));
        let ng = golden_max(|g| objective(kind, beta, g), lo, hi);
        if objective(kind, beta, ng) >= objective(kind, beta, gamma) {
            gamma = ng;
        }
    }
    Ok(ViolationExtremum {
        d: objective(kind, beta, gamma),
        beta,
        gamma,
        kind,
    })
}

/// Explicit qubit triples `[A, B, C]` attaining a gap of 1/4.
///
/// Lower bound: three states on a great circle at consecutive Bloch angles
/// of π/3 with `A` in the middle, so `r_ab = r_ac = 3/4`, `r_bc = 1/4`.
/// Upper bound: `r_ab = 1/4`, `r_ac = r_bc = 3/4`, breaking
/// `r_bc ≤ r_ab − r_ac + 1 = 1/2`.
pub fn max_violation_states(kind: ViolationKind) -> [PureState; 3] {
    let s3 = 3f64.sqrt();
    let st = |a: f64, b: f64| PureState::from_real(&[a, b]).expect("nonzero");
    match kind {
        ViolationKind::LowerBound => [st(1.0, 0.0), st(s3 / 2.0, 0.5), st(s3 / 2.0, -0.5)],
        ViolationKind::UpperBound => [st(1.0, 0.0), st(0.5, s3 / 2.0), st(s3 / 2.0, 0.5)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::overlap_matrix;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn triangle(ab: f64, ac: f64, bc: f64) -> OverlapGraph<f64> {
        OverlapGraph::from_measured(3, &[(0, 1, ab), (0, 2, ac), (1, 2, bc)]).unwrap()
    }

    #[test]
    fn maximal_violation_triangle_is_nonclassical() {
        let v = classicality_check(&triangle(0.75, 0.75, 0.25), 1e-9);
        let lower: Vec<_> = v
            .violations()
            .iter()
            .filter(|x| x.inequality == Inequality::TriangleLower)
            .collect();
        assert_eq!(lower.len(), 1);
        assert_eq!(lower[0].target, (1, 2));
        assert_eq!(lower[0].vertices, vec![0, 1, 2]);
        assert_abs_diff_eq!(lower[0].magnitude, 0.25, epsilon = 1e-12);
        assert!(v.violations().iter().all(|x| x.magnitude > 0.0));
    }

    #[test]
    fn identical_states_are_classical() {
        assert!(classicality_check(&triangle(1.0, 1.0, 1.0), 1e-9).is_classical());
    }

    #[test]
    fn explicit_classical_certificate_is_classical() {
        // Diagonal states p_A = (1, 0), p_B = (1, 0), p_C = (1/2, 1/2).
        let pa = [1.0, 0.0];
        let pb = [1.0, 0.0];
        let pc = [0.5, 0.5];
        let dot = |x: [f64; 2], y: [f64; 2]| x[0] * y[0] + x[1] * y[1];
        let g = triangle(dot(pa, pb), dot(pa, pc), dot(pb, pc));
        assert_eq!(g.value(0, 2).unwrap().lo(), 0.5);
        assert!(classicality_check(&g, 1e-9).is_classical());
    }

    #[test]
    fn missing_target_edge() {
        let g = OverlapGraph::from_measured(3, &[(0, 1, 0.75), (0, 2, 0.75)]).unwrap();
        assert_eq!(classicality_check_pair(&g, 2, 1, 1e-9), Err(WitnessError::MissingEdge(1, 2)));
        assert!(classicality_check_pair(&g, 0, 1, 1e-9).unwrap().is_classical());
    }

    #[test]
    fn long_chain_violation() {
        // 0-1-2-3 chain of 0.95s forces r_03 ≥ 0.85 classically.
        let g = OverlapGraph::from_measured(4, &[(0, 1, 0.95), (1, 2, 0.95), (2, 3, 0.95), (0, 3, 0.5)]).unwrap();
        let v = classicality_check(&g, 1e-9);
        let chain: Vec<_> = v.violations().iter().filter(|x| x.inequality == Inequality::Chain).collect();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain[0].target, (0, 3));
        assert_eq!(chain[0].vertices, vec![0, 1, 2, 3]);
        assert_abs_diff_eq!(chain[0].magnitude, 0.35, epsilon = 1e-12);
    }

    #[test]
    fn ranges_only_violate_when_every_value_does() {
        let raw = [
            crate::graph::RawEdge::measured(0, 1, crate::OverlapValue::range(0.7, 0.8).unwrap()),
            crate::graph::RawEdge::measured(0, 2, crate::OverlapValue::Exact(0.75)),
            crate::graph::RawEdge::measured(1, 2, crate::OverlapValue::range(0.2, 0.5).unwrap()),
        ];
        let g = OverlapGraph::new(3, &raw).unwrap();
        // Lower bound at the low ends is 0.45 < 0.5 = hi of the target.
        assert!(classicality_check_pair(&g, 1, 2, 1e-9).unwrap().is_classical());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension_witness(0.0, 0.0, 0.0, 1e-9).unwrap(), DimensionVerdict::RequiresDimensionAtLeast3);
        assert_eq!(dimension_witness(0.0, 0.0, 1.0, 1e-9).unwrap(), DimensionVerdict::ConsistentWithQubits);
        assert_eq!(dimension_witness(0.75, 0.75, 0.25, 1e-9).unwrap(), DimensionVerdict::ConsistentWithQubits);
        assert_eq!(dimension_witness(1.0, 1.0, 0.0, 1e-9).unwrap(), DimensionVerdict::InfeasibleForPureStates);
        assert!(dimension_witness(1.5, 0.0, 0.0, 1e-9).is_err());
    }

    #[test]
    fn witness_never_fires_above_the_line() {
        for i in 0..=50 {
            for j in 0..=50 {
                let (x, y) = (i as f64 / 50.0, j as f64 / 50.0);
                if x + y <= 1.0 {
                    continue;
                }
                let lo = f_minus(x, y);
                assert_ne!(dimension_witness(x, y, lo, 1e-9).unwrap(), DimensionVerdict::RequiresDimensionAtLeast3);
            }
        }
    }

    #[test]
    fn lower_gap_is_a_quarter() {
        let e = max_violation_search(ViolationKind::LowerBound, 64, 40).unwrap();
        assert_abs_diff_eq!(e.d, 0.25, epsilon = 1e-9);
        assert_abs_diff_eq!(e.beta, PI / 6.0, epsilon = 1e-6);
        assert_abs_diff_eq!(e.gamma, PI / 6.0, epsilon = 1e-6);
        let (s1, s2) = e.bloch_separations();
        assert_abs_diff_eq!(s1, PI / 3.0, epsilon = 1e-6);
        assert_abs_diff_eq!(s2, PI / 3.0, epsilon = 1e-6);
    }

    #[test]
    fn upper_gap_is_a_quarter() {
        let e = max_violation_search(ViolationKind::UpperBound, 64, 40).unwrap();
        assert_abs_diff_eq!(e.d, 0.25, epsilon = 1e-9);
        let (s1, s2) = e.bloch_separations();
        assert_abs_diff_eq!(s1, PI / 3.0, epsilon = 1e-6);
        assert_abs_diff_eq!(s2, PI / 3.0, epsilon = 1e-6);
    }

    #[test]
    fn diagonal_lower_gap_is_a_quarter() {
        let best = (0..=100_000)
            .map(|k| FRAC_PI_2 * k as f64 / 100_000.0)
            .filter_map(|b| violation_gap(ViolationKind::LowerBound, b, b))
            .fold(f64::NEG_INFINITY, f64::max);
        assert_abs_diff_eq!(best, 0.25, epsilon = 1e-9);
    }

    #[test]
    fn coarse_grid_rejected() {
        assert_eq!(
            max_violation_search(ViolationKind::LowerBound, 8, 1),
            Err(WitnessError::GridTooCoarse(8))
        );
    }

    #[test]
    fn explicit_states_hit_the_gap() {
        let r = overlap_matrix(&max_violation_states(ViolationKind::LowerBound)).unwrap();
        assert_abs_diff_eq!(r[0][1], 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(r[0][2], 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(r[1][2], 0.25, epsilon = 1e-12);

        let r = overlap_matrix(&max_violation_states(ViolationKind::UpperBound)).unwrap();
        assert_abs_diff_eq!(r[0][1], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(r[0][2], 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(r[1][2], 0.75, epsilon = 1e-12);
        let g = triangle(r[0][1], r[0][2], r[1][2]);
        let v = classicality_check_pair(&g, 1, 2, 1e-9).unwrap();
        let upper = v
            .violations()
            .iter()
            .find(|x| x.inequality == Inequality::TriangleUpperAb)
            .unwrap();
        assert_abs_diff_eq!(upper.magnitude, 0.25, epsilon = 1e-12);
    }
}
