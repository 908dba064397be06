//! Exact constants of the linear pieces `x' = Mx ± b`.
//!
//! `M` is the companion matrix of `λ⁴ + 10λ³ + 35λ² + 50λ + 24`, whose roots
//! are `-4, -3, -2, -1`. `P` is the Vandermonde eigenvector matrix, so
//! `M = P diag(λ) P⁻¹`. All entries are kept as exact rationals and only
//! converted to intervals at the boundary.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::interval::Interval;
use crate::Error;

/// Exact rational with arbitrary-size numerator and denominator.
pub type Rational = BigRational;

pub type RMat4 = [[Rational; 4]; 4];
pub type RVec4 = [Rational; 4];

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn int(n: i64) -> Rational {
    rat(n, 1)
}

/// Largest binary64 `<= q` and smallest binary64 `>= q`.
///
/// Panics when `q` is outside the finite binary64 range.
pub fn rational_bounds(q: &Rational) -> (f64, f64) {
    let guess = q.to_f64().unwrap_or(f64::NAN);
    assert!(guess.is_finite(), "rational {q} out of binary64 range");
    let exact = |f: f64| Rational::from_float(f).expect("finite float");
    let mut lo = guess;
    while exact(lo) > *q {
        lo = lo.next_down();
    }
    while exact(lo.next_up()) <= *q {
        lo = lo.next_up();
    }
    if exact(lo) == *q {
        return (lo, lo);
    }
    (lo, lo.next_up())
}

/// Tightest interval containing `q`; degenerate iff `q` is a binary64 value.
pub fn rational_to_interval(q: &Rational) -> Interval {
    let (lo, hi) = rational_bounds(q);
    Interval::new(lo, hi).expect("ordered finite bounds")
}

/// Nearest binary64 to `q` (ties to the lower neighbour).
pub fn rational_to_f64(q: &Rational) -> f64 {
    let (lo, hi) = rational_bounds(q);
    if lo == hi {
        return lo;
    }
    let dlo = q - Rational::from_float(lo).expect("finite");
    let dhi = Rational::from_float(hi).expect("finite") - q;
    if dhi < dlo {
        hi
    } else {
        lo
    }
}

pub fn rmat_mul(a: &RMat4, b: &RMat4) -> RMat4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..4).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
    })
}

pub fn rmat_vec(a: &RMat4, v: &RVec4) -> RVec4 {
    std::array::from_fn(|i| (0..4).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &v[k]))
}

pub fn ridentity() -> RMat4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() })
    })
}

fn rdiag(d: &RVec4) -> RMat4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { d[i].clone() } else { Rational::zero() })
    })
}

/// The exact matrices of the problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemData {
    pub m: RMat4,
    pub m_inv: RMat4,
    pub p: RMat4,
    pub p_inv: RMat4,
    /// Eigenvalues of `M`, in the column order of `P`.
    pub lambda: RVec4,
    /// Forcing of the `x₁ >= 0` piece: `x' = Mx + b`.
    pub b: RVec4,
}

impl ProblemData {
    /// Shared, verified instance.
    pub fn get() -> &'static ProblemData {
        static DATA: OnceLock<ProblemData> = OnceLock::new();
        DATA.get_or_init(|| build_problem_data().expect("exact problem data identities"))
    }

    /// `M⁻¹ b`.
    pub fn m_inv_b(&self) -> RVec4 {
        rmat_vec(&self.m_inv, &self.b)
    }

    /// `P⁻¹ b`.
    pub fn p_inv_b(&self) -> RVec4 {
        rmat_vec(&self.p_inv, &self.b)
    }

    /// `P⁻¹ M⁻¹ b`.
    pub fn p_inv_m_inv_b(&self) -> RVec4 {
        rmat_vec(&self.p_inv, &self.m_inv_b())
    }

    /// Check `M M⁻¹ = I`, `P P⁻¹ = I` and `M P = P diag(λ)` exactly.
    pub fn verify(&self) -> Result<(), Error> {
        let id = ridentity();
        if rmat_mul(&self.m, &self.m_inv) != id {
            return Err(Error::ExactIdentity("M M^-1 != I"));
        }
        if rmat_mul(&self.p, &self.p_inv) != id {
            return Err(Error::ExactIdentity("P P^-1 != I"));
        }
        if rmat_mul(&self.m, &self.p) != rmat_mul(&self.p, &rdiag(&self.lambda)) {
            return Err(Error::ExactIdentity("M P != P D"));
        }
        let distinct_negative = self.lambda.iter().all(|l| *l < Rational::zero())
            && (0..4).all(|i| (i + 1..4).all(|j| self.lambda[i] != self.lambda[j]));
        if !distinct_negative {
            return Err(Error::ExactIdentity("eigenvalues not distinct and negative"));
        }
        Ok(())
    }
}

/// Key in the exact constants and verify their identities.
pub fn build_problem_data() -> Result<ProblemData, Error> {
    let m = [
        [int(0), int(1), int(0), int(0)],
        [int(0), int(0), int(1), int(0)],
        [int(0), int(0), int(0), int(1)],
        [int(-24), int(-50), int(-35), int(-10)],
    ];
    let m_inv = [
        [rat(-50, 24), rat(-35, 24), rat(-10, 24), rat(-1, 24)],
        [int(1), int(0), int(0), int(0)],
        [int(0), int(1), int(0), int(0)],
        [int(0), int(0), int(1), int(0)],
    ];
    let lambda = [int(-4), int(-3), int(-2), int(-1)];
    // Columns are (1, λ, λ², λ³).
    let p = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let l = &lambda[j];
            (0..i).fold(Rational::one(), |acc, _| acc * l)
        })
    });
    let p_inv = [
        [int(-1), rat(-11, 6), int(-1), rat(-1, 6)],
        [int(4), int(7), rat(7, 2), rat(1, 2)],
        [int(-6), rat(-19, 2), int(-4), rat(-1, 2)],
        [int(4), rat(13, 3), rat(3, 2), rat(1, 6)],
    ];
    let b = [int(0), int(0), int(0), int(-1)];
    let data = ProblemData {
        m,
        m_inv,
        p,
        p_inv,
        lambda,
        b,
    };
    data.verify()?;
    Ok(data)
}
