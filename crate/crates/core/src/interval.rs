//! Closed subintervals of `[0, 1]` and the overlap values built from them.

use std::fmt;

use crate::error::ValueError;
use crate::scalar::Scalar;

/// Snap `x` onto `[0, 1]` if it is within the clamp tolerance of the range,
/// otherwise reject it.
pub fn unit_value<T: Scalar>(x: T) -> Result<T, ValueError> {
    if x.is_nan() {
        return Err(ValueError::NotANumber);
    }
    let tol = T::clamp_tol();
    if x < -tol || x > T::one() + tol {
        return Err(ValueError::OutOfRange(x.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(x.unit_clamp())
}

/// A closed interval `[lo, hi]` with `0 <= lo <= hi <= 1`.
///
/// There is no empty interval: operations that can come up empty return
/// `Option<Interval<T>>`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self, ValueError> {
        let lo = unit_value(lo)?;
        let hi = unit_value(hi)?;
        if lo > hi {
            return Err(ValueError::Inverted {
                lo: lo.to_f64().unwrap_or(f64::NAN),
                hi: hi.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { lo, hi })
    }

    /// Construct from endpoints the caller already knows are ordered and in
    /// range up to rounding. Endpoints are clamped into `[0, 1]` and a
    /// rounding-level inversion collapses onto `lo`.
    pub(crate) fn from_bounds(lo: T, hi: T) -> Self {
        let lo = lo.unit_clamp();
        let hi = hi.unit_clamp().max(lo);
        Self { lo, hi }
    }

    pub fn point(v: T) -> Result<Self, ValueError> {
        let v = unit_value(v)?;
        Ok(Self { lo: v, hi: v })
    }

    /// The uninformative interval `[0, 1]`.
    pub fn full() -> Self {
        Self {
            lo: T::zero(),
            hi: T::one(),
        }
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_full(&self) -> bool {
        self.lo == T::zero() && self.hi == T::one()
    }

    pub fn contains(&self, x: T, tol: T) -> bool {
        x >= self.lo - tol && x <= self.hi + tol
    }

    pub fn is_subset_of(&self, other: &Self, tol: T) -> bool {
        self.lo >= other.lo - tol && self.hi <= other.hi + tol
    }

    /// Largest interval contained in both, or `None` when the gap between
    /// them exceeds the emptiness tolerance.
    ///
    /// When the intervals miss each other by less than the tolerance the
    /// result is the point of `self` nearest to `other`.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            return Some(Self { lo, hi });
        }
        if lo - hi > T::empty_tol() {
            return None;
        }
        let p = if other.hi < self.lo { self.lo } else { self.hi };
        Some(Self { lo: p, hi: p })
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Largest endpoint displacement between two intervals.
    pub fn distance(&self, other: &Self) -> T {
        (self.lo - other.lo).abs().max((self.hi - other.hi).abs())
    }

    /// Whether the two intervals share at least one point (no tolerance).
    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

impl<T: Scalar> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// An overlap that is either known exactly or only up to an interval.
///
/// `Exact(v)` and `Range([v, v])` mean the same thing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OverlapValue<T> {
    Exact(T),
    Range(Interval<T>),
}

impl<T: Scalar> OverlapValue<T> {
    pub fn exact(v: T) -> Result<Self, ValueError> {
        Ok(Self::Exact(unit_value(v)?))
    }

    pub fn range(lo: T, hi: T) -> Result<Self, ValueError> {
        Ok(Self::Range(Interval::new(lo, hi)?))
    }

    pub fn interval(&self) -> Interval<T> {
        match *self {
            Self::Exact(v) => Interval { lo: v, hi: v },
            Self::Range(iv) => iv,
        }
    }

    pub fn lo(&self) -> T {
        self.interval().lo
    }

    pub fn hi(&self) -> T {
        self.interval().hi
    }

    /// The exact value, if this is one (a degenerate range counts).
    pub fn as_exact(&self) -> Option<T> {
        let iv = self.interval();
        iv.is_point().then_some(iv.lo)
    }

    /// Re-check range invariants, e.g. for values built by pattern matching.
    pub fn validate(&self) -> Result<(), ValueError> {
        match *self {
            Self::Exact(v) => unit_value(v).map(|_| ()),
            Self::Range(iv) => Interval::new(iv.lo, iv.hi).map(|_| ()),
        }
    }
}

impl<T: Scalar> From<Interval<T>> for OverlapValue<T> {
    fn from(iv: Interval<T>) -> Self {
        Self::Range(iv)
    }
}
