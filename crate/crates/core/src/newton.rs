//! Floating-point Newton iteration for `F(a) = 0`.
//!
//! Nothing here is rigorous; the result is only a candidate that the radii
//! polynomial stage then certifies.

use crate::flow::{Flow, UnknownVector};
use crate::linalg::{inf_norm, mat_mul, Lu, Mat4};
use crate::Error;

/// Outcome of [`newton_refine`].
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonResult {
    pub a: UnknownVector<f64>,
    /// Number of Newton updates applied.
    pub iterations: usize,
    /// `‖F‖∞` before each update and at the returned point.
    pub residuals: Vec<f64>,
}

impl NewtonResult {
    pub fn residual(&self) -> f64 {
        *self.residuals.last().expect("at least one residual")
    }
}

fn sup_norm(v: &[f64; 4]) -> f64 {
    v.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Iterate `a ← a - DF(a)⁻¹ F(a)` until `‖F(a)‖∞ <= tol`.
pub fn newton_refine(
    a0: UnknownVector<f64>,
    max_iter: usize,
    tol: f64,
) -> Result<NewtonResult, Error> {
    let flow = Flow::<f64>::standard();
    let mut a = a0;
    let mut residuals = Vec::new();
    for iteration in 0..=max_iter {
        let f = flow.f_map(&a)?;
        let r = sup_norm(&f);
        residuals.push(r);
        if !r.is_finite() {
            break;
        }
        if r <= tol {
            return Ok(NewtonResult {
                a,
                iterations: iteration,
                residuals,
            });
        }
        if iteration == max_iter {
            break;
        }
        let lu = Lu::new(&flow.df_map(&a)?)
            .map_err(|_| Error::SingularJacobian { iteration })?;
        let step = lu.solve(&f);
        for (x, s) in a.iter_mut().zip(step) {
            *x -= s;
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual: *residuals.last().unwrap_or(&f64::NAN),
    })
}

/// Floating approximation of `A⁻¹`; treated as plain data by the proof.
pub fn approximate_inverse(a: &Mat4<f64>) -> Result<Mat4<f64>, Error> {
    Ok(Lu::new(a)?.inverse())
}

/// `‖W A - I‖∞` in floating point, for diagnostics.
pub fn inverse_defect(w: &Mat4<f64>, a: &Mat4<f64>) -> f64 {
    let mut p = mat_mul(w, a);
    for (i, row) in p.iter_mut().enumerate() {
        row[i] -= 1.0;
    }
    inf_norm(&p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::identity;

    const A_BAR: [f64; 4] = [
        1.418316134968973,
        2.245235091886104e-2,
        8.358590910573891e-3,
        -4.883983455701284e-2,
    ];

    #[test]
    fn converges_from_default_seed() {
        let r = newton_refine(crate::DEFAULT_SEED, 50, 1e-13).unwrap();
        for (x, want) in r.a.iter().zip(A_BAR) {
            assert!(((x - want) / want).abs() <= 1e-12, "{x} vs {want}");
        }
        assert!(r.iterations < 10);
    }

    #[test]
    fn fixed_point_returns_quickly() {
        let r = newton_refine(A_BAR, 50, 1e-13).unwrap();
        assert!(r.iterations <= 1);
        for (x, want) in r.a.iter().zip(A_BAR) {
            assert!(((x - want) / want).abs() <= 1e-14);
        }
    }

    #[test]
    fn zero_seed_finds_trivial_zero_or_errors() {
        match newton_refine([0.0; 4], 50, 1e-13) {
            Ok(r) => assert!(r.a.iter().all(|x| x.abs() < 1e-10)),
            Err(e) => assert!(matches!(
                e,
                Error::SingularJacobian { .. } | Error::NoConvergence { .. }
            )),
        }
    }

    #[test]
    fn non_convergence_reports_residual() {
        let e = newton_refine(crate::DEFAULT_SEED, 1, 1e-13).unwrap_err();
        match e {
            Error::NoConvergence { residual, .. } => assert!(residual > 1e-13),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn approximate_inverse_cases() {
        assert_eq!(approximate_inverse(&identity()).unwrap(), identity::<f64>());
        let flow = Flow::<f64>::standard();
        let df = flow.df_map(&A_BAR).unwrap();
        let w = approximate_inverse(&df).unwrap();
        assert!(inverse_defect(&w, &df) < 1e-12);
    }
}
