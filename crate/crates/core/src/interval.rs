//! Closed binary64 intervals with certified outward rounding.
//!
//! Every operation returns an interval containing the exact real result for
//! all representatives of its operands. Rounding is done without touching
//! the FPU rounding mode: each native operation is evaluated round-to-nearest
//! and the sign of its rounding error is recovered with an error-free
//! transformation (TwoSum, FMA residuals), which pins the directed result to
//! the neighbouring float. When the error-free transformation is not exact
//! (subnormal range) the result is widened by one float on both sides.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use thiserror::Error;

mod exp;

pub(crate) use exp::exp_rational_bounds;

/// Errors raised by interval operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("invalid interval [{lo:e}, {hi:e}]")]
    Invalid { lo: f64, hi: f64 },
    #[error("interval endpoint overflow")]
    Overflow,
    #[error("division by an interval containing zero: [{lo:e}, {hi:e}]")]
    DivisionByZero { lo: f64, hi: f64 },
    #[error("exp argument [{lo:e}, {hi:e}] outside supported range [-{max}, {max}]", max = exp::MAX_ARG)]
    ExpRange { lo: f64, hi: f64 },
}

/// Below this magnitude FMA residuals may underflow and stop being exact.
const TINY: f64 = 1.0e-290;

pub(crate) mod round {
    //! Directed rounding of single binary64 operations.

    use super::TINY;

    fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
        let bb = s - a;
        (a - (s - bb)) + (b - bb)
    }

    /// Step `r` one ulp in the rounding direction unless the residual shows
    /// it is already on the correct side. `positive` is the sign of the exact
    /// result, which bounds the step at zero.
    #[inline]
    fn settle(r: f64, err_sign: f64, exact_residual: bool, up: bool, positive: bool) -> f64 {
        if !exact_residual {
            return match (up, positive) {
                (true, true) => r.next_up(),
                (true, false) => r.next_up().min(-0.0),
                (false, true) => r.next_down().max(0.0),
                (false, false) => r.next_down(),
            };
        }
        if up && err_sign > 0.0 {
            r.next_up()
        } else if !up && err_sign < 0.0 {
            r.next_down()
        } else {
            r
        }
    }

    pub fn add(a: f64, b: f64, up: bool) -> f64 {
        let s = a + b;
        if !s.is_finite() {
            return s;
        }
        settle(s, two_sum_err(a, b, s), true, up, s > 0.0)
    }

    pub fn sub(a: f64, b: f64, up: bool) -> f64 {
        add(a, -b, up)
    }

    pub fn mul(a: f64, b: f64, up: bool) -> f64 {
        let p = a * b;
        if !p.is_finite() || a == 0.0 || b == 0.0 {
            return p;
        }
        let exact = p.abs() >= TINY;
        settle(p, a.mul_add(b, -p), exact, up, (a > 0.0) == (b > 0.0))
    }

    pub fn div(a: f64, b: f64, up: bool) -> f64 {
        let q = a / b;
        if !q.is_finite() || a == 0.0 {
            return q;
        }
        let exact = q.abs() >= TINY && a.abs() >= TINY;
        // a - q*b carries the sign of the error scaled by b.
        let r = (-q).mul_add(b, a);
        settle(q, r * b.signum(), exact, up, (a > 0.0) == (b > 0.0))
    }

    pub fn add_up(a: f64, b: f64) -> f64 {
        add(a, b, true)
    }
    pub fn add_down(a: f64, b: f64) -> f64 {
        add(a, b, false)
    }
    pub fn sub_up(a: f64, b: f64) -> f64 {
        sub(a, b, true)
    }
    pub fn sub_down(a: f64, b: f64) -> f64 {
        sub(a, b, false)
    }
}

pub(crate) use round::{add_down, add_up, sub_down, sub_up};

/// A closed interval `[lo, hi]` of binary64 numbers.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(IntervalError::Invalid { lo, hi });
        }
        if !lo.is_finite() || !hi.is_finite() {
            return Err(IntervalError::Overflow);
        }
        Ok(Interval { lo, hi })
    }

    /// Degenerate interval `[x, x]`. Panics if `x` is not finite.
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite interval point {x}");
        Interval { lo: x, hi: x }
    }

    /// Symmetric interval `[c - r, c + r]`, rounded outward.
    pub fn centered(c: f64, r: f64) -> Result<Self, IntervalError> {
        Interval::new(sub_down(c, r.abs()), add_up(c, r.abs()))
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn is_degenerate(self) -> bool {
        self.lo == self.hi
    }

    /// Midpoint, rounded to nearest. Always lies inside the interval.
    pub fn mid(self) -> f64 {
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Upper bound on the distance from [`Interval::mid`] to either endpoint.
    pub fn rad(self) -> f64 {
        let m = self.mid();
        sub_up(self.hi, m).max(sub_up(m, self.lo))
    }

    /// Upper bound on `hi - lo`.
    pub fn width(self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// Upper bound on `sup { |x| : x in self }`.
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Lower bound on `inf { |x| : x in self }`.
    pub fn mig(self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn contains(self, p: f64) -> bool {
        self.lo <= p && p <= self.hi
    }

    pub fn contains_zero(self) -> bool {
        self.contains(0.0)
    }

    /// `self ⊆ other`.
    pub fn subset(self, other: Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn hull(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn intersect(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn intersects(self, other: Interval) -> bool {
        self.intersect(other).is_some()
    }

    /// Every element is strictly positive.
    pub fn is_positive(self) -> bool {
        self.lo > 0.0
    }

    /// Every element is strictly negative.
    pub fn is_negative(self) -> bool {
        self.hi < 0.0
    }

    pub fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Interval {
                lo: 0.0,
                hi: self.mag(),
            }
        }
    }

    /// Enlarge by `r` on both sides.
    pub fn inflate(self, r: f64) -> Result<Interval, IntervalError> {
        Interval::new(sub_down(self.lo, r), add_up(self.hi, r))
    }

    pub fn checked_add(self, rhs: Interval) -> Result<Interval, IntervalError> {
        Interval::new(add_down(self.lo, rhs.lo), add_up(self.hi, rhs.hi))
    }

    pub fn checked_sub(self, rhs: Interval) -> Result<Interval, IntervalError> {
        Interval::new(sub_down(self.lo, rhs.hi), sub_up(self.hi, rhs.lo))
    }

    pub fn checked_mul(self, rhs: Interval) -> Result<Interval, IntervalError> {
        let (a, b) = (self, rhs);
        let ends = [(a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi)];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (x, y) in ends {
            lo = lo.min(round::mul(x, y, false));
            hi = hi.max(round::mul(x, y, true));
        }
        Interval::new(lo, hi)
    }

    pub fn checked_div(self, rhs: Interval) -> Result<Interval, IntervalError> {
        if rhs.contains_zero() {
            return Err(IntervalError::DivisionByZero {
                lo: rhs.lo,
                hi: rhs.hi,
            });
        }
        let (a, b) = (self, rhs);
        let ends = [(a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi)];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (x, y) in ends {
            lo = lo.min(round::div(x, y, false));
            hi = hi.max(round::div(x, y, true));
        }
        Interval::new(lo, hi)
    }

    /// `x²`, tighter than `x * x` when `x` straddles zero.
    pub fn sqr(self) -> Result<Interval, IntervalError> {
        let a = self.abs();
        Interval::new(round::mul(a.lo, a.lo, false), round::mul(a.hi, a.hi, true))
    }

    /// Certified exponential. Arguments must lie within `[-60, 60]`.
    pub fn exp(self) -> Result<Interval, IntervalError> {
        if self.lo < -exp::MAX_ARG || self.hi > exp::MAX_ARG {
            return Err(IntervalError::ExpRange {
                lo: self.lo,
                hi: self.hi,
            });
        }
        let lo = exp::exp_bounds(self.lo).0;
        let hi = exp::exp_bounds(self.hi).1;
        Interval::new(lo, hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "[{:.*e}, {:.*e}]", p, self.lo, p, self.hi),
            None => write!(f, "[{:e}, {:e}]", self.lo, self.hi),
        }
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

// Operator forms treat overflow and division by zero as fatal; use the
// `checked_*` methods where recovery is wanted.
macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for Interval {
            type Output = Interval;
            fn $method(self, rhs: Interval) -> Interval {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("interval {}: {e}", stringify!($method)),
                }
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);
forward_op!(Div, div, checked_div);

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(x: f64) -> BigRational {
        BigRational::from_float(x).unwrap()
    }

    fn encloses(iv: Interval, exact: &BigRational) -> bool {
        q(iv.lo()) <= *exact && *exact <= q(iv.hi())
    }

    #[test]
    fn add_of_integers_is_exact() {
        let s = Interval::point(1.0) + Interval::point(2.0);
        assert!(s.contains(3.0));
        assert!(s.hi() <= 3.0f64.next_up().next_up());
        assert!(s.lo() >= 3.0f64.next_down().next_down());
        assert!(s.is_degenerate());
    }

    #[test]
    fn mul_endpoint_cases() {
        let p = Interval::new(-1.0, 2.0).unwrap() * Interval::point(3.0);
        assert!(Interval::new(-3.0, 6.0).unwrap().subset(p));
        let p = Interval::new(-2.0, -1.0).unwrap() * Interval::new(-3.0, 4.0).unwrap();
        assert_eq!((p.lo(), p.hi()), (-8.0, 6.0));
    }

    #[test]
    fn div_third_strictly_encloses() {
        let t = Interval::point(1.0) / Interval::point(3.0);
        assert!(t.lo() < t.hi());
        assert_eq!(t.lo().next_up(), t.hi());
        let third = BigRational::new(1.into(), 3.into());
        assert!(q(t.lo()) < third && third < q(t.hi()));
    }

    #[test]
    fn division_by_zero_interval_errors() {
        let e = Interval::ONE.checked_div(Interval::new(-1.0, 1.0).unwrap());
        assert!(matches!(e, Err(IntervalError::DivisionByZero { .. })));
        assert!(Interval::ONE.checked_div(Interval::ZERO).is_err());
    }

    #[test]
    fn overflow_is_an_error() {
        let big = Interval::point(f64::MAX);
        assert_eq!(big.checked_add(big), Err(IntervalError::Overflow));
        assert_eq!(big.checked_mul(Interval::point(2.0)), Err(IntervalError::Overflow));
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
        assert!(Interval::new(1.0, 0.0).is_err());
    }

    #[test]
    fn lattice_helpers() {
        let h = Interval::new(0.0, 1.0).unwrap().hull(Interval::new(2.0, 3.0).unwrap());
        assert_eq!((h.lo(), h.hi()), (0.0, 3.0));
        assert!(Interval::new(-1.0, 1.0).unwrap().contains(0.0));
        assert_eq!(Interval::new(-3.0, 2.0).unwrap().mag(), 3.0);
        assert_eq!(Interval::new(-3.0, 2.0).unwrap().mig(), 0.0);
        assert!(Interval::new(0.0, 1.0)
            .unwrap()
            .intersect(Interval::new(2.0, 3.0).unwrap())
            .is_none());
    }

    #[test]
    fn exp_of_zero_is_one() {
        let e = Interval::ZERO.exp().unwrap();
        assert!(e.contains(1.0));
        assert!(e.lo() > 0.0);
    }

    #[test]
    fn exp_rejects_out_of_range() {
        assert!(Interval::point(60.5).exp().is_err());
        assert!(Interval::new(-61.0, 0.0).unwrap().exp().is_err());
        assert!(Interval::point(-60.0).exp().unwrap().lo() > 0.0);
    }

    proptest! {
        #[test]
        fn add_contains_exact(a in -1e6f64..1e6, b in -1e6f64..1e6) {
            let s = Interval::point(a) + Interval::point(b);
            prop_assert!(encloses(s, &(q(a) + q(b))));
        }

        #[test]
        fn mul_div_contain_exact(a in -1e6f64..1e6, b in -1e6f64..1e6) {
            let p = Interval::point(a) * Interval::point(b);
            prop_assert!(encloses(p, &(q(a) * q(b))));
            prop_assume!(b != 0.0);
            let d = Interval::point(a) / Interval::point(b);
            prop_assert!(encloses(d, &(q(a) / q(b))));
        }

        #[test]
        fn exp_is_monotone(x in -50f64..50.0, y in -50f64..50.0) {
            let ex = Interval::point(x).exp().unwrap();
            let ey = Interval::point(y).exp().unwrap();
            if x >= y {
                prop_assert!(ex.hi() >= ey.hi());
            }
        }

        #[test]
        fn exp_width_is_a_few_ulps(x in -10f64..10.0) {
            let e = Interval::point(x).exp().unwrap();
            let ulp = e.mid().next_up() - e.mid();
            prop_assert!(e.hi() - e.lo() <= 8.0 * ulp);
        }
    }
}
