//! Test-only oracles, independent of the library's numerics.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use pwproof::Interval;

pub const REFERENCE_A_BAR: [f64; 4] = [
    1.418316134968973,
    2.245235091886104e-2,
    8.358590910573891e-3,
    -4.883983455701284e-2,
];

pub const REFERENCE_MULTIPLIERS: [(f64, f64); 4] = [
    (0.99999989798820, 1.00000010201179),
    (0.05862265751705, 0.05862286154064),
    (0.00000059034712, 0.00000079437071),
    (0.00001170839977, 0.00001191242336),
];

// ---------------------------------------------------------------------------
// Event-detecting RK4 for φ⁗ + 10φ‴ + 35φ″ + 50φ′ + 24φ + sign(φ) = 0.

fn field(x: &[f64; 4], side: f64) -> [f64; 4] {
    [
        x[1],
        x[2],
        x[3],
        -24.0 * x[0] - 50.0 * x[1] - 35.0 * x[2] - 10.0 * x[3] - side,
    ]
}

fn rk4_step(x: &[f64; 4], h: f64, side: f64) -> [f64; 4] {
    let add = |a: &[f64; 4], b: &[f64; 4], s: f64| std::array::from_fn(|i| a[i] + s * b[i]);
    let k1 = field(x, side);
    let k2 = field(&add(x, &k1, h / 2.0), side);
    let k3 = field(&add(x, &k2, h / 2.0), side);
    let k4 = field(&add(x, &k3, h), side);
    std::array::from_fn(|i| x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

#[derive(Debug, Clone, Copy)]
pub struct Crossing {
    pub time: f64,
    pub state: [f64; 4],
}

/// Integrate from `x0` on `x₁ = 0` (moving into `x₁ > 0` when `x₂ > 0`),
/// switching the forcing at each crossing, and return the first `count`
/// crossings. Each event time is refined by bisection on the step length.
pub fn rk4_crossings(x0: [f64; 4], h: f64, count: usize, t_max: f64) -> Vec<Crossing> {
    let mut side = if x0[1] > 0.0 { 1.0 } else { -1.0 };
    let mut x = x0;
    let mut t = 0.0;
    let mut out = Vec::new();
    // Leave the switching plane before looking for the next crossing.
    let mut armed = false;
    while out.len() < count && t < t_max {
        let next = rk4_step(&x, h, side);
        if armed && next[0] * side < 0.0 {
            let (mut lo, mut hi) = (0.0, h);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if rk4_step(&x, mid, side)[0] * side > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let tau = 0.5 * (lo + hi);
            let state = rk4_step(&x, tau, side);
            out.push(Crossing { time: t + tau, state });
            x = state;
            t += tau;
            side = -side;
            armed = false;
            continue;
        }
        x = next;
        t += h;
        if x[0] * side > 0.0 {
            armed = true;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Exponential oracle: e^x = e^n · e^f with n = round(x), |f| <= 1/2, both in
// 256-bit fixed point. Returns rationals bracketing e^x.

const ORACLE_BITS: u32 = 256;

fn fixed_mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> ORACLE_BITS
}

/// `(lo, hi)` with `lo <= e^x <= hi`, relative width `2^-119`.
pub fn exp_oracle(x: f64) -> (BigRational, BigRational) {
    let one = BigInt::one() << ORACLE_BITS;
    let n = x.round();
    let f = BigRational::from_float(x - n).expect("finite");
    assert_eq!(
        BigRational::from_float(n).unwrap() + &f,
        BigRational::from_float(x).unwrap(),
        "x - round(x) is exact"
    );
    let f_fixed = (f * BigRational::from_integer(one.clone())).round().to_integer();

    // e^f by Taylor; |f| <= 1/2 so 60 terms leave a negligible tail.
    let mut term = one.clone();
    let mut sum = one.clone();
    for k in 1..60u32 {
        term = fixed_mul(&term, &f_fixed) / BigInt::from(k);
        sum += &term;
    }
    // e by Taylor at 1.
    let mut t = one.clone();
    let mut e = one.clone();
    for k in 1..80u32 {
        t /= BigInt::from(k);
        e += &t;
    }
    let mut en = one.clone();
    let base = if n >= 0.0 { e.clone() } else { (&one << ORACLE_BITS) / &e };
    for _ in 0..(n.abs() as u64) {
        en = fixed_mul(&en, &base);
    }
    let value = fixed_mul(&en, &sum);
    let scale = BigRational::from_integer(one);
    let v = BigRational::from_integer(value) / &scale;
    // Truncation adds at most a few hundred units of 2^-256 while the
    // result is at least e^-61 > 2^-89, so 2^-120 relative slack covers it.
    let slack = v.abs() * BigRational::new(BigInt::one(), BigInt::one() << 120u32);
    (&v - &slack, &v + slack)
}

pub fn q(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

pub fn encloses(iv: Interval, v: &BigRational) -> bool {
    q(iv.lo()) <= *v && *v <= q(iv.hi())
}

// ---------------------------------------------------------------------------
// Interval soundness properties, shared by the test suites.

fn finite_in(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    prop_oneof![
        3 => lo..hi,
        1 => -1.0e3f64..1.0e3,
        1 => (-1.0f64..1.0).prop_map(|x| x * 1e-200),
        1 => Just(0.0),
    ]
}

/// Random interval together with a point inside it and a subinterval.
pub fn interval_with_point() -> impl Strategy<Value = (Interval, f64, Interval)> {
    (finite_in(-1e6, 1e6), finite_in(-1e6, 1e6), 0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=1.0)
        .prop_map(|(a, b, s, u, v)| {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let at = |w: f64| (lo + w * (hi - lo)).clamp(lo, hi);
            let p = at(s);
            let (x, y) = (at(u.min(v)), at(u.max(v)));
            (Interval::new(lo, hi).unwrap(), p, Interval::new(x, y).unwrap())
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub const ALL: [BinOp; 4] = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div];

    pub fn name(self) -> &'static str {
        match self {
            BinOp::Add => "add",
            BinOp::Sub => "sub",
            BinOp::Mul => "mul",
            BinOp::Div => "div",
        }
    }

    fn apply(self, a: Interval, b: Interval) -> Option<Interval> {
        match self {
            BinOp::Add => a.checked_add(b).ok(),
            BinOp::Sub => a.checked_sub(b).ok(),
            BinOp::Mul => a.checked_mul(b).ok(),
            BinOp::Div => a.checked_div(b).ok(),
        }
    }

    fn exact(self, x: &BigRational, y: &BigRational) -> Option<BigRational> {
        match self {
            BinOp::Add => Some(x + y),
            BinOp::Sub => Some(x - y),
            BinOp::Mul => Some(x * y),
            BinOp::Div => (!y.is_zero()).then(|| x / y),
        }
    }
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

/// Containment `x ∘ y ∈ X ∘ Y` (exact rational oracle) and inclusion
/// monotonicity `X' ⊆ X, Y' ⊆ Y ⇒ X' ∘ Y' ⊆ X ∘ Y`.
pub fn check_binop(op: BinOp, cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(interval_with_point(), interval_with_point()), |((a, x, a2), (b, y, b2))| {
            let Some(r) = op.apply(a, b) else {
                // Only division by a zero-containing divisor may fail.
                prop_assert!(op == BinOp::Div && b.contains_zero());
                return Ok(());
            };
            if let Some(v) = op.exact(&q(x), &q(y)) {
                prop_assert!(encloses(r, &v), "{a:?} {} {b:?} = {r:?} misses {x} , {y}", op.name());
            }
            if let Some(r2) = op.apply(a2, b2) {
                prop_assert!(r2.subset(r), "{a2:?} ⊆ {a:?}, {b2:?} ⊆ {b:?}: {r2:?} ⊄ {r:?}");
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn check_sqr(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&interval_with_point(), |(a, x, a2)| {
            let r = a.sqr().map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(encloses(r, &(q(x) * q(x))));
            prop_assert!(a2.sqr().unwrap().subset(r));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn check_exp(cases: u32) -> Result<(), String> {
    let strat = (-60.0f64..60.0, -60.0f64..60.0, 0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=1.0);
    runner(cases)
        .run(&strat, |(a, b, s, u, v)| {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let at = |w: f64| (lo + w * (hi - lo)).clamp(lo, hi);
            let x = at(s);
            let big = Interval::new(lo, hi).unwrap();
            let small = Interval::new(at(u.min(v)), at(u.max(v))).unwrap();
            let r = big.exp().map_err(|e| TestCaseError::fail(e.to_string()))?;
            let (olo, ohi) = exp_oracle(x);
            prop_assert!(q(r.lo()) <= olo && ohi <= q(r.hi()), "exp({big:?}) = {r:?} misses e^{x}");
            prop_assert!(small.exp().unwrap().subset(r));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `rational ∈ [lo, hi]` helper for `BigRational` brackets.
pub fn bracket_inside(iv: Interval, lo: &BigRational, hi: &BigRational) -> bool {
    q(iv.lo()) <= *lo && *hi <= q(iv.hi())
}

pub fn is_negative(x: &BigRational) -> bool {
    x.is_negative()
}
