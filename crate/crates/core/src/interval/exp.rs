//! Exponential kernel.
//!
//! `e^x = (e^{x/2^k})^{2^k}` with `|x/2^k| <= 1`, a degree-20 Taylor
//! polynomial plus Lagrange remainder for the reduced argument, then `k`
//! squarings. The kernel runs in fixed-point big-integer interval arithmetic
//! with 192 fractional bits and is rounded outward to binary64 once at the
//! end, so squaring does not amplify binary64 rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntervalError;
use crate::exact::rational_bounds;

pub const MAX_ARG: f64 = 60.0;
const FRAC: u32 = 192;
const DEGREE: u32 = 20;

/// `[lo, hi] * 2^-FRAC`
#[derive(Clone, Debug)]
struct Fixed {
    lo: BigInt,
    hi: BigInt,
}

fn shr_floor(x: &BigInt, s: u32) -> BigInt {
    // BigInt's `>>` rounds toward negative infinity.
    x >> s
}

fn shr_ceil(x: &BigInt, s: u32) -> BigInt {
    -((-x) >> s)
}

impl Fixed {
    fn one() -> Fixed {
        let one = BigInt::one() << FRAC;
        Fixed { lo: one.clone(), hi: one }
    }

    fn from_rational(x: &BigRational) -> Fixed {
        let scaled = x * BigRational::from_integer(BigInt::one() << FRAC);
        Fixed {
            lo: scaled.floor().to_integer(),
            hi: scaled.ceil().to_integer(),
        }
    }

    fn halve(&self, k: u32) -> Fixed {
        Fixed {
            lo: shr_floor(&self.lo, k),
            hi: shr_ceil(&self.hi, k),
        }
    }

    fn add(&self, o: &Fixed) -> Fixed {
        Fixed {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn mul(&self, o: &Fixed) -> Fixed {
        let prods = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let min = prods.iter().min().expect("four products");
        let max = prods.iter().max().expect("four products");
        Fixed {
            lo: shr_floor(min, FRAC),
            hi: shr_ceil(max, FRAC),
        }
    }

    fn div_int(&self, n: u32) -> Fixed {
        let n = BigInt::from(n);
        Fixed {
            lo: self.lo.div_floor(&n),
            hi: self.hi.div_ceil(&n),
        }
    }

    fn mag(&self) -> BigInt {
        self.lo.abs().max(self.hi.abs())
    }

    fn inflate(&self, r: &BigInt) -> Fixed {
        Fixed {
            lo: &self.lo - r,
            hi: &self.hi + r,
        }
    }

    /// Square of a nonnegative interval.
    fn square_nonneg(&self) -> Fixed {
        debug_assert!(!self.lo.is_negative());
        Fixed {
            lo: shr_floor(&(&self.lo * &self.lo), FRAC),
            hi: shr_ceil(&(&self.hi * &self.hi), FRAC),
        }
    }
}

/// Rational `[lo, hi]` containing `e^x`, relative width below `1e-17`.
pub(crate) fn exp_rational_bounds(x: &BigRational) -> Result<(BigRational, BigRational), IntervalError> {
    if x.abs() > BigRational::from_float(MAX_ARG).expect("finite") {
        let v = x.to_f64().unwrap_or(f64::NAN);
        return Err(IntervalError::ExpRange { lo: v, hi: v });
    }
    if x.is_zero() {
        return Ok((BigRational::one(), BigRational::one()));
    }
    let mut k = 0u32;
    while x.abs() > BigRational::from_integer(BigInt::one() << k) {
        k += 1;
    }
    let y = Fixed::from_rational(x).halve(k);

    let mut term = Fixed::one();
    let mut sum = Fixed::one();
    for n in 1..=DEGREE {
        term = term.mul(&y).div_int(n);
        sum = sum.add(&term);
    }
    // |R| <= e^{|y|} |y|^21 / 21! <= 3 |y|^21 / 21!
    let next = term.mul(&y).div_int(DEGREE + 1);
    let remainder = next.mag() * 3;
    let mut value = sum.inflate(&remainder);
    if value.lo.is_negative() {
        value.lo = BigInt::zero();
    }
    for _ in 0..k {
        value = value.square_nonneg();
    }

    let scale = BigInt::one() << FRAC;
    Ok((
        BigRational::new(value.lo, scale.clone()),
        BigRational::new(value.hi, scale),
    ))
}

/// Rigorous `(lower, upper)` binary64 bounds on `e^x` for finite `|x| <= 60`.
pub(super) fn exp_bounds(x: f64) -> (f64, f64) {
    let q = BigRational::from_float(x).expect("finite argument");
    let (lo, hi) = exp_rational_bounds(&q).expect("argument checked by caller");
    // e^x > 0 for every finite x in range
    (rational_bounds(&lo).0.max(f64::MIN_POSITIVE), rational_bounds(&hi).1)
}
