//! Oracle cross-checks exposed through `obound verify`.

use std::f64::consts::{FRAC_PI_3, PI};

use overlap_bounds::oracle::{
    connected_subgraph_lower_all, mixed_qubit_envelope, random_mixed_qubit_triples, soundness_trial, trial_seed,
    triangle_scan,
};
use overlap_bounds::polytope::{check_boole_inequalities, facet_dimension, BooleInequality};
use overlap_bounds::{
    classical_lower_map, max_violation_search, triangle_interval, Model, OverlapGraph64, TriangleInputs,
    ViolationKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Triangle,
    MixedQubit,
    Propagation,
    Polytope,
    ClassicalPaths,
    MaxViolation,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub details: Value,
}

impl SuiteReport {
    fn new(suite: Suite, seed: u64, tolerance: f64) -> Self {
        let name = clap::ValueEnum::to_possible_value(&suite).expect("no skipped variants");
        Self {
            suite: name.get_name().to_string(),
            seed,
            cases: 0,
            failures: 0,
            max_error: 0.0,
            tolerance,
            passed: false,
            details: Value::Null,
        }
    }

    fn record(&mut self, error: f64) {
        self.cases += 1;
        self.max_error = self.max_error.max(error);
        if error.is_nan() || error > self.tolerance {
            self.failures += 1;
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.failures == 0 && self.cases > 0;
        self
    }
}

pub fn run(suite: Suite, seed: u64, trials: usize, m: usize) -> anyhow::Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = match suite {
        Suite::Triangle => {
            let mut r = SuiteReport::new(suite, seed, 1e-3);
            for _ in 0..trials {
                let (x, y): (f64, f64) = (rng.random(), rng.random());
                let (lo, hi) = triangle_scan(x, y, 256)?;
                let want = triangle_interval(TriangleInputs::new(x, y)?, Model::PureQudit);
                r.record((lo - want.lo()).abs().max((hi - want.hi()).abs()));
            }
            r
        }
        Suite::MixedQubit => {
            let mut r = SuiteReport::new(suite, seed, 1e-9);
            for t in random_mixed_qubit_triples(trials, seed) {
                let (lo, hi) = mixed_qubit_envelope(t.r_ab, t.r_ac);
                r.record((lo - t.r_bc).max(t.r_bc - hi).max(0.0));
            }
            r
        }
        Suite::Propagation => {
            let mut r = SuiteReport::new(suite, seed, 1e-9);
            let mut held_out = 0;
            for k in 0..trials as u64 {
                let n = rng.random_range(3..=7);
                let d = rng.random_range(2..=4);
                let report = soundness_trial(n, d, 0.5, Model::PureQudit, trial_seed(seed, k))?;
                held_out += report.checked;
                let worst = report
                    .failures
                    .iter()
                    .map(|f| (f.interval.lo() - f.truth).max(f.truth - f.interval.hi()))
                    .fold(0.0, f64::max);
                r.record(if report.infeasible.is_some() { f64::INFINITY } else { worst });
            }
            r.details = json!({ "held_out_pairs": held_out });
            r
        }
        Suite::Polytope => {
            let mut r = SuiteReport::new(suite, seed, 0.0);
            let boole = check_boole_inequalities(m)?;
            let mut rows = Vec::new();
            for check in &boole.checks {
                let dim = facet_dimension(m, check.inequality)?;
                r.record(check.violations as f64 + if dim == m { 0.0 } else { 1.0 });
                rows.push(json!({
                    "inequality": check.inequality.to_string(),
                    "violations": check.violations,
                    "saturating": check.saturating,
                    "facet_dimension": dim,
                }));
            }
            debug_assert_eq!(rows.len(), BooleInequality::listed(m).len());
            r.details = json!({ "m": m, "vertices": boole.vertices, "inequalities": rows });
            r
        }
        Suite::ClassicalPaths => {
            let mut r = SuiteReport::new(suite, seed, 1e-12);
            for _ in 0..trials {
                let g = random_connected_graph(&mut rng);
                let fast = classical_lower_map(&g);
                for (pair, want) in connected_subgraph_lower_all(&g)? {
                    let got = fast.get(&pair).copied().unwrap_or(f64::NAN);
                    r.record((got - want).abs());
                }
            }
            r
        }
        Suite::MaxViolation => {
            let mut r = SuiteReport::new(suite, seed, 1e-6);
            let mut rows = Vec::new();
            for kind in [ViolationKind::LowerBound, ViolationKind::UpperBound] {
                let ext = max_violation_search(kind, 181, 40)?;
                let (s1, s2) = ext.bloch_separations();
                r.record((ext.d - 0.25).abs().max((s1 - FRAC_PI_3).abs()).max((s2 - FRAC_PI_3).abs()));
                rows.push(json!({
                    "kind": format!("{kind:?}"),
                    "d": format!("{:.6}", ext.d),
                    "beta_over_pi": ext.beta / PI,
                    "gamma_over_pi": ext.gamma / PI,
                    "bloch_separations_over_pi": [s1 / PI, s2 / PI],
                }));
            }
            r.details = json!(rows);
            r
        }
    };
    Ok(report.finish())
}

fn random_connected_graph(rng: &mut ChaCha8Rng) -> OverlapGraph64 {
    let n = rng.random_range(3..=6);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v, rng.random::<f64>()));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !edges.iter().any(|&(a, b, _)| (a, b) == (i, j)) && rng.random_bool(0.4) {
                edges.push((i, j, rng.random()));
            }
        }
    }
    OverlapGraph64::from_measured(n, &edges).expect("generated edges are valid")
}
