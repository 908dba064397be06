//! Radii polynomial verification of a zero of `F`.
//!
//! With `A ≈ DF(ā)⁻¹`, bounds `Y₀ >= ‖A F(ā)‖∞` and
//! `Z₂ >= sup_{B(ā, r*)} max_i Σ_{k,m} |Σ_j A_ij ∂²F_j/∂a_k∂a_m|` give the
//! polynomial `p(r) = Z₂ r² - r + Y₀`. Any `r₀ ∈ (0, r*]` with `p(r₀) < 0`
//! makes `a ↦ a - A F(a)` a contraction on `B(ā, r₀)`, so `F` has exactly
//! one zero there.

use crate::flow::{f_map_tight, Flow, UnknownVector};
use crate::interval::{add_up, sub_down, Interval};
use crate::linalg::{ivec_inf_norm, mat_vec, to_interval_mat, IVector4, Mat4};
use crate::Error;

/// Verified bounds and negativity window of the radii polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiiBounds {
    pub y0: f64,
    pub z2: f64,
    pub r_star: f64,
    pub r0_min: f64,
    pub r0_max: f64,
}

impl RadiiBounds {
    /// Box `B(ā, r0_min)` containing the certified zero.
    pub fn zero_enclosure(&self, a_bar: &UnknownVector<f64>) -> Result<IVector4, Error> {
        enclosure_box(a_bar, self.r0_min)
    }
}

fn enclosure_box(center: &UnknownVector<f64>, r: f64) -> Result<IVector4, Error> {
    let mut out = [Interval::ZERO; 4];
    for (o, c) in out.iter_mut().zip(center) {
        *o = Interval::new(sub_down(*c, r), add_up(*c, r))?;
    }
    Ok(out)
}

/// Rigorous upper bound on `‖W F(ā)‖∞`.
pub fn bound_y0(a_bar: &UnknownVector<f64>, w: &Mat4<f64>) -> Result<f64, Error> {
    let f = f_map_tight(a_bar)?;
    let wf = mat_vec(&to_interval_mat(w), &f);
    Ok(ivec_inf_norm(&wf))
}

/// Rigorous upper bound on the second-derivative term over `B(ā, r*)`.
///
/// Only `∂²F/∂L²` and the mixed `∂²F/∂L∂a_k` are nonzero; the mixed terms
/// appear twice in the double sum by symmetry.
pub fn bound_z2(a_bar: &UnknownVector<f64>, w: &Mat4<f64>, r_star: f64) -> Result<f64, Error> {
    let flow = Flow::<Interval>::standard();
    let bx = enclosure_box(a_bar, r_star)?;
    let d2 = flow.d2f(&bx)?;
    let w = to_interval_mat(w);
    let ll = mat_vec(&w, &d2.d_ll);
    let lk = d2.d_lk.map(|v| mat_vec(&w, &v));
    let mut z2 = 0.0f64;
    for i in 0..4 {
        let mut row = ll[i].mag();
        for v in &lk {
            row = add_up(row, add_up(v[i].mag(), v[i].mag()));
        }
        z2 = z2.max(row);
    }
    Ok(z2)
}

/// `p(r) = Z₂ r² - r + Y₀` in interval arithmetic.
pub fn radii_polynomial(y0: f64, z2: f64, r: f64) -> Interval {
    let r = Interval::point(r);
    Interval::point(z2) * r * r - r + Interval::point(y0)
}

/// Candidate radii `10⁻¹⁵ · 2^k` inside `(0, r*]`.
pub fn candidate_radii(r_star: f64) -> impl Iterator<Item = f64> {
    (0..200)
        .map(|k| 1.0e-15 * f64::powi(2.0, k))
        .take_while(move |r| *r <= r_star)
}

/// Locate the verified negativity window of `p` among the candidate radii.
///
/// `p` is convex, so negativity at both window ends covers the window.
pub fn radii_verdict(y0: f64, z2: f64, r_star: f64) -> Result<RadiiBounds, Error> {
    let negative: Vec<f64> = candidate_radii(r_star)
        .filter(|&r| radii_polynomial(y0, z2, r).is_negative())
        .collect();
    match (negative.first(), negative.last()) {
        (Some(&r0_min), Some(&r0_max)) => Ok(RadiiBounds {
            y0,
            z2,
            r_star,
            r0_min,
            r0_max,
        }),
        _ => Err(Error::NoNegativityWindow { y0, z2, r_star }),
    }
}

/// Full existence stage: bounds, window, and `L̃ > 0`.
pub fn prove_existence(
    a_bar: &UnknownVector<f64>,
    w: &Mat4<f64>,
    r_star: f64,
) -> Result<RadiiBounds, Error> {
    let y0 = bound_y0(a_bar, w)?;
    let z2 = bound_z2(a_bar, w, r_star)?;
    let bounds = radii_verdict(y0, z2, r_star)?;
    let l = bounds.zero_enclosure(a_bar)?[0];
    if !l.is_positive() {
        return Err(Error::NonPositivePeriod(l));
    }
    Ok(bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::approximate_inverse;

    const A_BAR: [f64; 4] = [
        1.418316134968973,
        2.245235091886104e-2,
        8.358590910573891e-3,
        -4.883983455701284e-2,
    ];

    fn w() -> Mat4<f64> {
        let df = Flow::<f64>::standard().df_map(&A_BAR).unwrap();
        approximate_inverse(&df).unwrap()
    }

    #[test]
    fn zero_operator_gives_zero_bounds() {
        let zero = [[0.0; 4]; 4];
        assert_eq!(bound_y0(&A_BAR, &zero).unwrap(), 0.0);
        assert_eq!(bound_z2(&A_BAR, &zero, 0.01).unwrap(), 0.0);
    }

    #[test]
    fn y0_is_small_at_reference_point() {
        let y0 = bound_y0(&A_BAR, &w()).unwrap();
        assert!(y0 <= 1e-13, "Y0 = {y0:e}");
        let mut off = A_BAR;
        off[0] += 1e-3;
        let y0_off = bound_y0(&off, &w()).unwrap();
        assert!(y0_off > 1e3 * y0.max(1e-16));
    }

    #[test]
    fn z2_is_monotone_in_radius() {
        let w = w();
        let z1 = bound_z2(&A_BAR, &w, 0.01).unwrap();
        let z2 = bound_z2(&A_BAR, &w, 0.02).unwrap();
        assert!(z1 <= 60.0, "Z2 = {z1}");
        assert!(z2 >= z1);
    }

    #[test]
    fn reference_bounds_give_expected_window() {
        let b = radii_verdict(7.4e-15, 41.0, 0.01).unwrap();
        assert!(b.r0_min <= 1.6e-14);
        assert!(b.r0_max >= 5e-3 && b.r0_max <= 0.01);
        assert!(radii_polynomial(7.4e-15, 41.0, b.r0_min).is_negative());
    }

    #[test]
    fn trivial_and_failing_windows() {
        let b = radii_verdict(0.0, 0.0, 0.01).unwrap();
        assert_eq!(b.r0_min, 1e-15);
        assert!(matches!(
            radii_verdict(1.0, 1.0, 0.01),
            Err(Error::NoNegativityWindow { .. })
        ));
        assert!(radii_verdict(1e-14, 10.0, 1e-20).is_err());
    }
}
