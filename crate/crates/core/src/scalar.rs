//! Scalar types shared by the floating-point and rigorous evaluation paths.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::exact::{rational_to_f64, rational_to_interval, Rational};
use crate::interval::{Interval, IntervalError};

/// Field-like scalar: `f64` for Newton, [`Interval`] for the proof.
pub trait Scalar:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn exp(self) -> Result<Self, IntervalError>;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }
    fn exp(self) -> Result<Self, IntervalError> {
        let e = f64::exp(self);
        if e.is_finite() {
            Ok(e)
        } else {
            Err(IntervalError::Overflow)
        }
    }
}

impl Scalar for Interval {
    fn zero() -> Self {
        Interval::ZERO
    }
    fn one() -> Self {
        Interval::ONE
    }
    fn from_f64(x: f64) -> Self {
        Interval::point(x)
    }
    fn from_rational(q: &Rational) -> Self {
        rational_to_interval(q)
    }
    fn exp(self) -> Result<Self, IntervalError> {
        Interval::exp(self)
    }
}
