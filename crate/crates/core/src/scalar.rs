//! Scalar abstraction shared by the interval, bound and propagation code.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating point type the bound machinery is generic over: `f32` or `f64`.
///
/// The two tolerances are per-type because the `f64` values (1e-9 for
/// emptiness, 1e-12 for boundary clamping) sit below `f32` resolution.
pub trait Scalar: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Slack allowed before two intervals are declared disjoint.
    const EMPTY_TOL: f64;
    /// Inputs within this distance of 0 or 1 are snapped onto the boundary.
    const CLAMP_TOL: f64;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn empty_tol() -> Self {
        Self::lit(Self::EMPTY_TOL)
    }

    fn clamp_tol() -> Self {
        Self::lit(Self::CLAMP_TOL)
    }

    /// Clamp into `[0, 1]` unconditionally. Only for outputs of formulas whose
    /// range is guaranteed mathematically.
    fn unit_clamp(self) -> Self {
        self.max(Self::zero()).min(Self::one())
    }
}

impl Scalar for f64 {
    const EMPTY_TOL: f64 = 1e-9;
    const CLAMP_TOL: f64 = 1e-12;
}

impl Scalar for f32 {
    const EMPTY_TOL: f64 = 1e-5;
    const CLAMP_TOL: f64 = 1e-6;
}
