//! Explicit state vectors and qubit density matrices.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, UnitBall};

use super::OracleError;

const NORM_TOL: f64 = 1e-12;

/// A normalized pure state `|ψ⟩ ∈ ℂ^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amps: Vec<Complex64>,
}

impl PureState {
    /// Wrap amplitudes that are already normalized.
    pub fn new(amps: Vec<Complex64>) -> Result<Self, OracleError> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(OracleError::NotNormalized(norm));
        }
        Ok(Self { amps })
    }

    /// Normalize arbitrary nonzero amplitudes.
    pub fn normalized(mut amps: Vec<Complex64>) -> Result<Self, OracleError> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(OracleError::NotNormalized(norm * norm));
        }
        for a in &mut amps {
            *a /= norm;
        }
        Ok(Self { amps })
    }

    /// Real amplitudes, normalized.
    pub fn from_real(amps: &[f64]) -> Result<Self, OracleError> {
        Self::normalized(amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// `|k⟩` in dimension `d`.
    pub fn basis(d: usize, k: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); d];
        amps[k] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64, OracleError> {
        if self.dim() != other.dim() {
            return Err(OracleError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap(&self, other: &Self) -> Result<f64, OracleError> {
        Ok(self.inner(other)?.norm_sqr())
    }
}

/// Pairwise overlap matrix `r_ij = |⟨ψ_i|ψ_j⟩|²`.
pub fn overlap_matrix(states: &[PureState]) -> Result<Vec<Vec<f64>>, OracleError> {
    let n = states.len();
    let mut r = vec![vec![1.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = states[i].overlap(&states[j])?;
            r[i][j] = v;
            r[j][i] = v;
        }
    }
    Ok(r)
}

/// `n` independent Haar-random states in dimension `d`, deterministic in `seed`.
pub fn haar_pure_states(n: usize, d: usize, seed: u64) -> Vec<PureState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_pure_states_with(&mut rng, n, d)
}

pub(crate) fn haar_pure_states_with<R: Rng>(rng: &mut R, n: usize, d: usize) -> Vec<PureState> {
    (0..n)
        .map(|_| loop {
            let amps: Vec<Complex64> = (0..d)
                .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
                .collect();
            if let Ok(s) = PureState::normalized(amps) {
                break s;
            }
        })
        .collect()
}

/// Three pure states in the canonical frame
///
/// ```text
/// |A⟩ = |0⟩
/// |B⟩ = cos β |0⟩ + sin β |1⟩
/// |C⟩ = cos γ |0⟩ + e^{iφ} sin γ sin α |1⟩ + sin γ cos α |2⟩
/// ```
///
/// which reaches every overlap triple of three pure states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParameterizedTriple {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub phi: f64,
}

impl ParameterizedTriple {
    pub fn new(alpha: f64, beta: f64, gamma: f64, phi: f64) -> Result<Self, OracleError> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if !(0.0..=FRAC_PI_2).contains(&v) {
                return Err(OracleError::InvalidArgument(format!("{name} = {v} outside [0, π/2]")));
            }
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(OracleError::InvalidArgument(format!("phi = {phi} outside [0, 2π)")));
        }
        Ok(Self { alpha, beta, gamma, phi })
    }

    /// Angles that reproduce the two given overlaps with `A`.
    pub fn angles_for(r_ab: f64, r_ac: f64) -> (f64, f64) {
        (r_ab.clamp(0.0, 1.0).sqrt().acos(), r_ac.clamp(0.0, 1.0).sqrt().acos())
    }

    pub fn states(&self) -> [PureState; 3] {
        let c = |re: f64| Complex64::new(re, 0.0);
        let (sa, ca) = self.alpha.sin_cos();
        let (sb, cb) = self.beta.sin_cos();
        let (sg, cg) = self.gamma.sin_cos();
        let a = vec![c(1.0), c(0.0), c(0.0)];
        let b = vec![c(cb), c(sb), c(0.0)];
        let cc = vec![c(cg), Complex64::from_polar(sg * sa, self.phi), c(sg * ca)];
        [PureState { amps: a }, PureState { amps: b }, PureState { amps: cc }]
    }

    /// `r_bc` from the explicit vectors.
    pub fn r_bc(&self) -> f64 {
        let [_, b, c] = self.states();
        b.inner(&c).expect("same dimension").norm_sqr()
    }
}

/// Qubit density matrix `[[ρ₀, ρ₁], [ρ̄₁, 1 − ρ₀]]` with `|ρ₁|² ≤ ρ₀(1 − ρ₀)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitDensityMatrix {
    rho0: f64,
    rho1: Complex64,
}

impl QubitDensityMatrix {
    pub fn new(rho0: f64, rho1: Complex64) -> Result<Self, OracleError> {
        if !(0.0..=1.0).contains(&rho0) {
            return Err(OracleError::InvalidArgument(format!("diagonal entry {rho0} outside [0, 1]")));
        }
        if rho1.norm_sqr() > rho0 * (1.0 - rho0) + NORM_TOL {
            return Err(OracleError::InvalidArgument(format!(
                "|ρ₁|² = {} exceeds ρ₀(1 − ρ₀) = {}",
                rho1.norm_sqr(),
                rho0 * (1.0 - rho0)
            )));
        }
        Ok(Self { rho0, rho1 })
    }

    /// `(I + x·X + y·Y + z·Z) / 2` for a Bloch vector of length at most 1.
    pub fn from_bloch(v: [f64; 3]) -> Result<Self, OracleError> {
        let [x, y, z] = v;
        Self::new((1.0 + z) / 2.0, Complex64::new(x, -y) / 2.0)
    }

    pub fn rho0(&self) -> f64 {
        self.rho0
    }

    pub fn rho1(&self) -> Complex64 {
        self.rho1
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        [
            [Complex64::new(self.rho0, 0.0), self.rho1],
            [self.rho1.conj(), Complex64::new(1.0 - self.rho0, 0.0)],
        ]
    }

    /// Linear fidelity `tr(ρσ)`.
    pub fn linear_fidelity(&self, other: &Self) -> f64 {
        let a = self.matrix();
        let b = other.matrix();
        let mut tr = Complex64::new(0.0, 0.0);
        for (i, row) in a.iter().enumerate() {
            for (k, &aik) in row.iter().enumerate() {
                tr += aik * b[k][i];
            }
        }
        tr.re
    }
}

/// Three qubit density matrices and their pairwise linear fidelities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixedQubitTriple {
    pub a: QubitDensityMatrix,
    pub b: QubitDensityMatrix,
    pub c: QubitDensityMatrix,
    pub r_ab: f64,
    pub r_ac: f64,
    pub r_bc: f64,
}

impl MixedQubitTriple {
    pub fn new(a: QubitDensityMatrix, b: QubitDensityMatrix, c: QubitDensityMatrix) -> Self {
        Self {
            a,
            b,
            c,
            r_ab: a.linear_fidelity(&b),
            r_ac: a.linear_fidelity(&c),
            r_bc: b.linear_fidelity(&c),
        }
    }
}

/// `n` triples of qubit states with Bloch vectors uniform in the unit ball.
pub fn random_mixed_qubit_triples(n: usize, seed: u64) -> Vec<MixedQubitTriple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        let v: [f64; 3] = UnitBall.sample(&mut rng);
        QubitDensityMatrix::from_bloch(v).expect("unit ball sample is a valid state")
    };
    (0..n)
        .map(|_| {
            let (a, b, c) = (draw(), draw(), draw());
            MixedQubitTriple::new(a, b, c)
        })
        .collect()
}

/// Mixed-qubit envelope
/// `r± = r_ab r_ac + (1 − r_ab)(1 − r_ac) ± 2√(r_ab r_ac (1 − r_ab)(1 − r_ac))`.
pub fn mixed_qubit_envelope(r_ab: f64, r_ac: f64) -> (f64, f64) {
    let base = r_ab * r_ac + (1.0 - r_ab) * (1.0 - r_ac);
    let cross = 2.0 * (r_ab * r_ac * (1.0 - r_ab) * (1.0 - r_ac)).max(0.0).sqrt();
    (base - cross, base + cross)
}
