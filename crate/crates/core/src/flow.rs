//! Closed-form flow of `x' = Mx + b` and the boundary-value map `F`.
//!
//! With `M = P D P⁻¹`, the solution from `x₀` is
//! `x(t) = P e^{Dt} P⁻¹ (x₀ + M⁻¹b) - M⁻¹b`. The unknowns are
//! `a = (L, a₂, a₃, a₄)`: the half period and the derivatives of the
//! starting point `(0, a₂, a₃, a₄)` on the switching plane `x₁ = 0`.
//! `F(a) = x(L) + x(0)` vanishes exactly when the half orbit ends at the
//! mirror image of its start.
//!
//! Everything is generic over [`Scalar`] so that Newton (`f64`) and the
//! proof (`Interval`) evaluate the same expressions in the same order.

use num_traits::{Signed, Zero};

use crate::exact::{rational_bounds, rmat_vec, ProblemData, RVec4, Rational};
use crate::interval::{exp_rational_bounds, Interval, IntervalError};
use crate::linalg::{diag, mat_mul, mat_vec, vec_add, vec_sub, Mat4, Vec4};
use crate::scalar::Scalar;

/// Phase-space state `(φ, φ', φ'', φ''')`.
pub type StateVector<S> = Vec4<S>;

/// Unknowns `(L, a₂, a₃, a₄)`.
pub type UnknownVector<S> = Vec4<S>;

/// Second derivatives of `F`. Only `∂²F/∂L²` and `∂²F/∂L∂a_k` are nonzero.
#[derive(Debug, Clone, Copy)]
pub struct SecondDerivatives<S> {
    /// `∂²F/∂L²`
    pub d_ll: Vec4<S>,
    /// `∂²F/∂L∂a_k` for `k = 2, 3, 4`.
    pub d_lk: [Vec4<S>; 3],
}

/// Precomputed constants of the `x₁ >= 0` piece in scalar type `S`.
#[derive(Debug, Clone)]
pub struct Flow<S> {
    p: Mat4<S>,
    p_inv: Mat4<S>,
    lambda: Vec4<S>,
    m_inv_b: Vec4<S>,
    p_inv_b: Vec4<S>,
    p_inv_m_inv_b: Vec4<S>,
}

fn convert<S: Scalar>(v: &RVec4) -> Vec4<S> {
    std::array::from_fn(|i| S::from_rational(&v[i]))
}

impl<S: Scalar> Flow<S> {
    pub fn new(data: &ProblemData) -> Self {
        Flow {
            p: std::array::from_fn(|i| convert(&data.p[i])),
            p_inv: std::array::from_fn(|i| convert(&data.p_inv[i])),
            lambda: convert(&data.lambda),
            m_inv_b: convert(&data.m_inv_b()),
            p_inv_b: convert(&rmat_vec(&data.p_inv, &data.b)),
            p_inv_m_inv_b: convert(&data.p_inv_m_inv_b()),
        }
    }

    pub fn standard() -> Self {
        Flow::new(ProblemData::get())
    }

    pub fn p(&self) -> &Mat4<S> {
        &self.p
    }

    pub fn p_inv(&self) -> &Mat4<S> {
        &self.p_inv
    }

    /// `M⁻¹ b`; `-M⁻¹b` is the equilibrium of `x' = Mx + b`.
    pub fn m_inv_b(&self) -> &Vec4<S> {
        &self.m_inv_b
    }

    /// `(e^{λ_i t})_i`
    fn exp_diag(&self, t: S) -> Result<Vec4<S>, IntervalError> {
        let mut out = [S::zero(); 4];
        for (o, l) in out.iter_mut().zip(&self.lambda) {
            *o = (*l * t).exp()?;
        }
        Ok(out)
    }

    /// `e^{Dt}` as a diagonal matrix.
    pub fn exp_dt(&self, t: S) -> Result<Mat4<S>, IntervalError> {
        Ok(diag(&self.exp_diag(t)?))
    }

    /// `e^{Mt} = P e^{Dt} P⁻¹`.
    pub fn exp_mt(&self, t: S) -> Result<Mat4<S>, IntervalError> {
        let e = self.exp_diag(t)?;
        let pe: Mat4<S> = std::array::from_fn(|i| std::array::from_fn(|j| self.p[i][j] * e[j]));
        Ok(mat_mul(&pe, &self.p_inv))
    }

    /// `∫₀^L P e^{D(L-s)} P⁻¹ b ds = P diag((e^{λL} - 1)/λ) P⁻¹ b`.
    pub fn integral_term(&self, l: S) -> Result<Vec4<S>, IntervalError> {
        let e = self.exp_diag(l)?;
        let v = std::array::from_fn(|i| (e[i] - S::one()) / self.lambda[i] * self.p_inv_b[i]);
        Ok(mat_vec(&self.p, &v))
    }

    /// Solution of `x' = Mx + b` at time `t` from `(0, a₂, a₃, a₄)`.
    pub fn phi_plus(&self, t: S, a: &UnknownVector<S>) -> Result<StateVector<S>, IntervalError> {
        let e = self.exp_diag(t)?;
        let c = self.start_coords(a);
        let v = std::array::from_fn(|i| e[i] * (c[i] + self.p_inv_m_inv_b[i]));
        Ok(vec_sub(&mat_vec(&self.p, &v), &self.m_inv_b))
    }

    /// `P⁻¹ (0, a₂, a₃, a₄)`.
    fn start_coords(&self, a: &UnknownVector<S>) -> Vec4<S> {
        std::array::from_fn(|i| {
            self.p_inv[i][1] * a[1] + self.p_inv[i][2] * a[2] + self.p_inv[i][3] * a[3]
        })
    }

    /// `F(a) = P (e^{DL} + I) P⁻¹ (0, a₂, a₃, a₄) + ∫₀^L P e^{D(L-s)} P⁻¹ b ds`.
    pub fn f_map(&self, a: &UnknownVector<S>) -> Result<Vec4<S>, IntervalError> {
        let e = self.exp_diag(a[0])?;
        let c = self.start_coords(a);
        let v = std::array::from_fn(|i| {
            (e[i] + S::one()) * c[i] + (e[i] - S::one()) / self.lambda[i] * self.p_inv_b[i]
        });
        Ok(mat_vec(&self.p, &v))
    }

    /// Jacobian of [`Flow::f_map`].
    pub fn df_map(&self, a: &UnknownVector<S>) -> Result<Mat4<S>, IntervalError> {
        let e = self.exp_diag(a[0])?;
        let c = self.start_coords(a);
        let d_l: Vec4<S> =
            std::array::from_fn(|i| self.lambda[i] * e[i] * c[i] + e[i] * self.p_inv_b[i]);
        let col1 = mat_vec(&self.p, &d_l);
        let mut cols = [col1; 4];
        for (k, col) in cols.iter_mut().enumerate().skip(1) {
            let v = std::array::from_fn(|i| (e[i] + S::one()) * self.p_inv[i][k]);
            *col = mat_vec(&self.p, &v);
        }
        Ok(std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i])))
    }

    /// Nonzero second partial derivatives of `F` at `a` (or over a box).
    pub fn d2f(&self, a: &UnknownVector<S>) -> Result<SecondDerivatives<S>, IntervalError> {
        let e = self.exp_diag(a[0])?;
        let c = self.start_coords(a);
        let le: Vec4<S> = std::array::from_fn(|i| self.lambda[i] * e[i]);
        let d_ll_coords: Vec4<S> =
            std::array::from_fn(|i| self.lambda[i] * le[i] * c[i] + le[i] * self.p_inv_b[i]);
        let d_lk = std::array::from_fn(|k| {
            let v = std::array::from_fn(|i| le[i] * self.p_inv[i][k + 1]);
            mat_vec(&self.p, &v)
        });
        Ok(SecondDerivatives {
            d_ll: mat_vec(&self.p, &d_ll_coords),
            d_lk,
        })
    }

    /// State of the `x₁ <= 0` piece mirrored from the `x₁ >= 0` piece:
    /// `ψ(t) = -φ(t - L)` solves `x' = Mx - b`.
    pub fn phi_minus(&self, t: S, a: &UnknownVector<S>) -> Result<StateVector<S>, IntervalError> {
        let p = self.phi_plus(t, a)?;
        Ok(std::array::from_fn(|i| -p[i]))
    }

    /// `M x + b` evaluated through `P D P⁻¹`.
    pub fn field_plus(&self, x: &StateVector<S>) -> StateVector<S> {
        let c = mat_vec(&self.p_inv, x);
        let dc = std::array::from_fn(|i| self.lambda[i] * c[i]);
        let mut out = mat_vec(&self.p, &dc);
        out[3] = out[3] - S::one();
        out
    }

    /// `F` evaluated as `φ(L) + φ(0)`, an independent route used in tests.
    pub fn f_via_flow(&self, a: &UnknownVector<S>) -> Result<Vec4<S>, IntervalError> {
        let end = self.phi_plus(a[0], a)?;
        Ok(vec_add(&end, &[S::zero(), a[1], a[2], a[3]]))
    }
}

/// Enclosure of `F(a)` at a binary64 point, a few ulps wide.
///
/// `F` is affine in each `e^{λᵢL}`: `Fⱼ = Kⱼ + Σᵢ αⱼᵢ e^{λᵢL}` with exact
/// rational `K`, `α`. Evaluating this with narrow rational exponential
/// bounds and rounding once avoids the cancellation of the generic route.
pub fn f_map_tight(a: &UnknownVector<f64>) -> Result<Vec4<Interval>, IntervalError> {
    let data = ProblemData::get();
    let q = |x: f64| {
        Rational::from_float(x).ok_or(IntervalError::Invalid { lo: x, hi: x })
    };
    let l = q(a[0])?;
    let start = [Rational::zero(), q(a[1])?, q(a[2])?, q(a[3])?];
    let c = rmat_vec(&data.p_inv, &start);
    let d = data.p_inv_b();
    let mut e = Vec::with_capacity(4);
    for lam in &data.lambda {
        e.push(exp_rational_bounds(&(lam * &l))?);
    }
    Ok(std::array::from_fn(|j| {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for i in 0..4 {
            let konst = &data.p[j][i] * (&c[i] - &d[i] / &data.lambda[i]);
            let alpha = &data.p[j][i] * (&c[i] + &d[i] / &data.lambda[i]);
            let (elo, ehi) = &e[i];
            let (at_lo, at_hi) = if alpha.is_negative() { (ehi, elo) } else { (elo, ehi) };
            lo += &konst + &alpha * at_lo;
            hi += konst + alpha * at_hi;
        }
        let (lo, _) = rational_bounds(&lo);
        let (_, hi) = rational_bounds(&hi);
        Interval::new(lo, hi).expect("ordered rational bounds")
    }))
}
