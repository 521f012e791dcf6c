//! Grid scans and Monte Carlo soundness trials.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::states::{haar_pure_states_with, overlap_matrix, ParameterizedTriple};
use super::OracleError;
use crate::bounds::{triangle_interval, Model, TriangleInputs};
use crate::graph::{all_pairs, OverlapGraph};
use crate::interval::Interval;
use crate::propagation::{complete_and_tighten, InfeasibilityWitness, PropagationOptions};

const CONTAINMENT_TOL: f64 = 1e-9;
const RESAMPLE_CAP: usize = 1_000;

/// Deterministic per-trial seed derived from a master seed (SplitMix64).
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Observed `(min, max)` of `r_bc` over a `steps × steps` grid of the free
/// parameters `(α, φ)`, with `β, γ` fixed by the two known overlaps.
pub fn triangle_scan(r_ab: f64, r_ac: f64, steps: usize) -> Result<(f64, f64), OracleError> {
    if steps < 64 {
        return Err(OracleError::InvalidArgument(format!("steps = {steps} < 64")));
    }
    let (beta, gamma) = ParameterizedTriple::angles_for(r_ab, r_ac);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..steps {
        let alpha = FRAC_PI_2 * i as f64 / (steps - 1) as f64;
        for j in 0..steps {
            // φ = π lands on the grid when steps is even.
            let phi = TAU * j as f64 / steps as f64;
            let r = ParameterizedTriple { alpha, beta, gamma, phi }.r_bc();
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    Ok((lo, hi))
}

/// Hull of the pointwise triangle interval over a `steps × steps` grid of
/// the rectangle `ix × iy`.
pub fn rect_grid_extremes(ix: Interval<f64>, iy: Interval<f64>, model: Model, steps: usize) -> Result<Interval<f64>, OracleError> {
    if steps < 100 {
        return Err(OracleError::InvalidArgument(format!("steps = {steps} < 100")));
    }
    let at = |iv: Interval<f64>, k: usize| iv.lo() + iv.width() * k as f64 / (steps - 1) as f64;
    let mut acc: Option<Interval<f64>> = None;
    for i in 0..steps {
        let x = at(ix, i).min(1.0);
        for j in 0..steps {
            let y = at(iy, j).min(1.0);
            let t = triangle_interval(TriangleInputs::new(x, y).expect("grid inside [0,1]"), model);
            acc = Some(acc.map_or(t, |a| a.hull(&t)));
        }
    }
    Ok(acc.expect("nonempty grid"))
}

/// A held-out overlap that fell outside its inferred interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContainmentFailure {
    pub pair: (usize, usize),
    pub truth: f64,
    pub interval: Interval<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SoundnessReport {
    pub n: usize,
    pub model: Model,
    pub measured: Vec<(usize, usize)>,
    /// Number of held-out pairs compared against their inferred interval.
    pub checked: usize,
    pub failures: Vec<ContainmentFailure>,
    /// Propagation rejected data that came from real states.
    pub infeasible: Option<InfeasibilityWitness<f64>>,
    /// Edge subsets drawn before a connected one came up.
    pub attempts: usize,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.infeasible.is_none()
    }
}

/// Feed the `measured` entries of a true overlap matrix to propagation and
/// check that every other true overlap lands in its inferred interval.
pub fn check_containment(overlaps: &[Vec<f64>], measured: &[(usize, usize)], model: Model) -> Result<SoundnessReport, OracleError> {
    let n = overlaps.len();
    let edges: Vec<_> = measured.iter().map(|&(i, j)| (i, j, overlaps[i][j].clamp(0.0, 1.0))).collect();
    let g = OverlapGraph::from_measured(n, &edges).map_err(|e| OracleError::InvalidArgument(e.to_string()))?;
    let mut report = SoundnessReport {
        n,
        model,
        measured: measured.to_vec(),
        checked: 0,
        failures: Vec::new(),
        infeasible: None,
        attempts: 1,
    };
    match complete_and_tighten(&g, model, PropagationOptions::for_vertices(n)) {
        Err(inf) => report.infeasible = Some(inf.witness),
        Ok(out) => {
            for (i, j) in all_pairs(n) {
                if g.edge(i, j).is_some() {
                    continue;
                }
                let interval = out.complete.value(i, j).expect("complete graph").interval();
                report.checked += 1;
                let truth = overlaps[i][j];
                if !interval.contains(truth, CONTAINMENT_TOL) {
                    report.failures.push(ContainmentFailure { pair: (i, j), truth, interval });
                }
            }
        }
    }
    Ok(report)
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let w = if a == v { b } else if b == v { a } else { continue };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Sample `n` Haar states in dimension `d`, keep each pair's overlap as a
/// measurement with probability `edge_fraction` (redrawing until the kept
/// edges connect the graph), run propagation and check containment.
pub fn soundness_trial(n: usize, d: usize, edge_fraction: f64, model: Model, seed: u64) -> Result<SoundnessReport, OracleError> {
    if n < 3 {
        return Err(OracleError::InvalidArgument(format!("n = {n} < 3")));
    }
    if d < 2 {
        return Err(OracleError::InvalidArgument(format!("d = {d} < 2")));
    }
    if !(edge_fraction > 0.0 && edge_fraction <= 1.0) {
        return Err(OracleError::InvalidArgument(format!("edge_fraction = {edge_fraction} outside (0, 1]")));
    }
    match model {
        Model::Classical => {
            return Err(OracleError::InvalidArgument("soundness trials need a quantum model".into()));
        }
        Model::Qubit if d != 2 => {
            return Err(OracleError::InvalidArgument(format!("qubit model needs d = 2, got {d}")));
        }
        _ => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states = haar_pure_states_with(&mut rng, n, d);
    let overlaps = overlap_matrix(&states)?;
    let mut pairs: Vec<_> = all_pairs(n).collect();
    for attempt in 1..=RESAMPLE_CAP {
        pairs.shuffle(&mut rng);
        let mut kept: Vec<_> = pairs
            .iter()
            .copied()
            .filter(|_| rng.random::<f64>() < edge_fraction)
            .collect();
        if kept.len() == pairs.len() && kept.len() > 1 {
            // Keep at least one pair unmeasured so there is something to check.
            kept.pop();
        }
        if !is_connected(n, &kept) {
            continue;
        }
        kept.sort_unstable();
        let mut report = check_containment(&overlaps, &kept, model)?;
        report.attempts = attempt;
        return Ok(report);
    }
    Err(OracleError::DisconnectedSample { attempts: RESAMPLE_CAP })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{f_minus, f_plus};
    use crate::oracle::states::PureState;

    #[test]
    fn scan_at_three_quarters() {
        let (lo, hi) = triangle_scan(0.75, 0.75, 128).unwrap();
        assert!((lo - 0.25).abs() < 1e-3);
        assert!((hi - 1.0).abs() < 1e-3);
    }

    #[test]
    fn scan_with_identical_b() {
        let (lo, hi) = triangle_scan(1.0, 0.37, 64).unwrap();
        assert!((lo - 0.37).abs() < 1e-12 && (hi - 0.37).abs() < 1e-12);
    }

    #[test]
    fn scan_below_the_line_reaches_zero() {
        let (lo, hi) = triangle_scan(0.3, 0.4, 128).unwrap();
        assert!(lo < 1e-3);
        assert!((hi - f_plus(0.3, 0.4)).abs() < 1e-3);
        assert!(triangle_scan(0.3, 0.4, 10).is_err());
    }

    #[test]
    fn scan_reaches_f_plus_at_three_quarters_one_quarter() {
        let (_, hi) = triangle_scan(0.75, 0.25, 128).unwrap();
        assert!((hi - 0.75).abs() < 1e-3);
    }

    #[test]
    fn rect_grid_degenerate_and_overlapping() {
        let p = Interval::point(0.3).unwrap();
        let q = Interval::point(0.9).unwrap();
        let g = rect_grid_extremes(p, q, Model::PureQudit, 100).unwrap();
        let t = triangle_interval(TriangleInputs::new(0.3, 0.9).unwrap(), Model::PureQudit);
        assert_eq!(g, t);
        let a = Interval::new(0.2, 0.5).unwrap();
        let b = Interval::new(0.4, 0.8).unwrap();
        assert_eq!(rect_grid_extremes(a, b, Model::PureQudit, 100).unwrap().hi(), 1.0);
    }

    #[test]
    fn full_star_in_dimension_three() {
        let states = crate::oracle::haar_pure_states(3, 3, 11);
        let r = overlap_matrix(&states).unwrap();
        let report = check_containment(&r, &[(0, 1), (0, 2)], Model::PureQudit).unwrap();
        assert!(report.passed());
        assert_eq!(report.checked, 1);
        let lo = if r[0][1] + r[0][2] > 1.0 { f_minus(r[0][1], r[0][2]) } else { 0.0 };
        assert!(r[1][2] >= lo - 1e-9 && r[1][2] <= f_plus(r[0][1], r[0][2]) + 1e-9);
    }

    #[test]
    fn identical_states_on_a_cycle_infer_one_everywhere() {
        let states: Vec<_> = (0..5).map(|_| PureState::basis(2, 1)).collect();
        let r = overlap_matrix(&states).unwrap();
        let cycle = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
        for model in [Model::PureQudit, Model::Qubit] {
            let report = check_containment(&r, &cycle, model).unwrap();
            assert!(report.passed());
            assert_eq!(report.checked, 5);
        }
    }

    #[test]
    fn trials_are_deterministic_and_validate_arguments() {
        let a = soundness_trial(6, 3, 0.5, Model::PureQudit, 42).unwrap();
        let b = soundness_trial(6, 3, 0.5, Model::PureQudit, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.passed());
        assert!(soundness_trial(6, 3, 0.5, Model::Qubit, 42).is_err());
        assert!(soundness_trial(6, 2, 0.5, Model::Classical, 42).is_err());
        assert!(soundness_trial(2, 2, 0.5, Model::PureQudit, 42).is_err());
        assert!(soundness_trial(5, 2, 0.0, Model::PureQudit, 42).is_err());
        assert!(matches!(
            soundness_trial(7, 2, 0.01, Model::Qubit, 1),
            Err(OracleError::DisconnectedSample { .. })
        ));
    }

    #[test]
    fn trial_seeds_differ() {
        assert_ne!(trial_seed(7, 0), trial_seed(7, 1));
        assert_eq!(trial_seed(7, 3), trial_seed(7, 3));
    }
}
