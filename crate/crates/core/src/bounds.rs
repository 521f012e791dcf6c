//! Closed-form range of the third overlap of a state triple given the other
//! two.
//!
//! With `r_ab = cos²β` and `r_ac = cos²γ` the unknown `r_bc` of pure states
//! ranges over `[cos²(β+γ), cos²(β−γ)]`, except that for qudits the lower
//! end drops to 0 once `r_ab + r_ac <= 1`. Qubits (pure or mixed) keep the
//! ungated lower end. Classical (commuting) states obey the tighter
//! Boole-type inequalities.

use std::fmt;

use crate::error::ValueError;
use crate::interval::{unit_value, Interval};
use crate::scalar::Scalar;

/// Which family of states the overlaps are assumed to come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    /// Pure states of any dimension.
    PureQudit,
    /// Qubit states, pure or mixed.
    Qubit,
    /// States diagonal in one fixed basis.
    Classical,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::PureQudit => "qudit",
            Model::Qubit => "qubit",
            Model::Classical => "classical",
        })
    }
}

/// The two known overlaps of a triangle sharing apex `A`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TriangleInputs<T> {
    r_ab: T,
    r_ac: T,
}

impl<T: Scalar> TriangleInputs<T> {
    pub fn new(r_ab: T, r_ac: T) -> Result<Self, ValueError> {
        Ok(Self {
            r_ab: unit_value(r_ab)?,
            r_ac: unit_value(r_ac)?,
        })
    }

    pub fn r_ab(&self) -> T {
        self.r_ab
    }

    pub fn r_ac(&self) -> T {
        self.r_ac
    }
}

fn cross_terms<T: Scalar>(x: T, y: T) -> (T, T) {
    let one = T::one();
    let zero = T::zero();
    let same = (x * y).max(zero).sqrt();
    let other = ((one - x) * (one - y)).max(zero).sqrt();
    (same, other)
}

/// Largest third overlap: `(√(xy) + √((1−x)(1−y)))²`.
pub fn f_plus<T: Scalar>(x: T, y: T) -> T {
    let (s, o) = cross_terms(x, y);
    ((s + o) * (s + o)).unit_clamp()
}

/// `(√(xy) − √((1−x)(1−y)))²`, without any regime gating.
pub fn f_minus<T: Scalar>(x: T, y: T) -> T {
    let (s, o) = cross_terms(x, y);
    ((s - o) * (s - o)).unit_clamp()
}

fn classical_lower<T: Scalar>(x: T, y: T) -> T {
    (x + y - T::one()).max(T::zero())
}

fn classical_upper<T: Scalar>(x: T, y: T) -> T {
    (T::one() - (x - y).abs()).min(T::one())
}

fn gated_lower<T: Scalar>(x: T, y: T) -> T {
    if x + y > T::one() {
        f_minus(x, y)
    } else {
        T::zero()
    }
}

fn upper<T: Scalar>(x: T, y: T, model: Model) -> T {
    match model {
        Model::PureQudit | Model::Qubit => f_plus(x, y),
        Model::Classical => classical_upper(x, y),
    }
}

/// Range of `r_bc` compatible with the two known overlaps under `model`.
pub fn triangle_interval<T: Scalar>(inputs: TriangleInputs<T>, model: Model) -> Interval<T> {
    let (x, y) = (inputs.r_ab, inputs.r_ac);
    let lo = match model {
        Model::PureQudit => gated_lower(x, y),
        Model::Qubit => f_minus(x, y),
        Model::Classical => classical_lower(x, y),
    };
    Interval::from_bounds(lo, upper(x, y, model))
}

/// Hull of [`triangle_interval`] over every `(r_ab, r_ac)` in `ix × iy`.
///
/// Lower end: the gated qudit bound and the classical bound are
/// nondecreasing in both arguments, so the `(lo, lo)` corner is the minimum.
/// The ungated qubit bound `cos²(β+γ)` is not monotone; it vanishes exactly
/// on the line `x + y = 1` and grows away from it on both sides, so its
/// minimum is 0 if the rectangle straddles that line and otherwise sits at
/// the corner nearest to it.
///
/// Upper end: both upper formulas equal 1 on the diagonal and fall off with
/// the distance between the two arguments, so the maximum is 1 when the
/// intervals meet and otherwise sits at the pair of nearest endpoints.
pub fn triangle_interval_lifted<T: Scalar>(ix: Interval<T>, iy: Interval<T>, model: Model) -> Interval<T> {
    let one = T::one();
    let lo = match model {
        Model::PureQudit => gated_lower(ix.lo(), iy.lo()),
        Model::Classical => classical_lower(ix.lo(), iy.lo()),
        Model::Qubit => {
            if ix.lo() + iy.lo() >= one {
                f_minus(ix.lo(), iy.lo())
            } else if ix.hi() + iy.hi() <= one {
                f_minus(ix.hi(), iy.hi())
            } else {
                T::zero()
            }
        }
    };
    let hi = if ix.overlaps(&iy) {
        one
    } else if ix.hi() < iy.lo() {
        upper(ix.hi(), iy.lo(), model)
    } else {
        upper(ix.lo(), iy.hi(), model)
    };
    Interval::from_bounds(lo, hi)
}
