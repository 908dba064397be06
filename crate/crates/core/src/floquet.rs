//! Monodromy matrix of the crossing orbit and its Floquet multipliers.
//!
//! Between crossings the variational equation is `X' = MX` on both sides,
//! so each half contributes `e^{ML̃}`. At a crossing the jump of the vector
//! field `f₊ - f₋ = 2b` enters through the saltation matrix
//! `S = I + (f_after - f_before) ∇hᵀ / (∇hᵀ f_before)`, which for both
//! crossings equals the identity with `-2/ã₂` in position (4, 1).
//!
//! The spectrum of the interval monodromy matrix `X` is enclosed by
//! approximately diagonalising its midpoint, `X ≈ V Λ V⁻¹`, certifying an
//! approximate inverse `W` of `V`, and applying Gershgorin's theorem to an
//! enclosure of `V⁻¹ X V`.

use nalgebra::Matrix4;

use crate::flow::Flow;
use crate::interval::{add_up, sub_down, Interval};
use crate::linalg::{
    det, identity, imat_inf_norm, mat_mul, mat_sub, mid_mat, to_interval_mat, IMatrix4, Lu, Mat4,
};
use crate::Error;

/// Closed real disc `|z - center| <= radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disc {
    pub center: f64,
    pub radius: f64,
}

impl Disc {
    /// The real segment `[center - radius, center + radius]`, rounded outward.
    pub fn interval(&self) -> Interval {
        Interval::new(sub_down(self.center, self.radius), add_up(self.center, self.radius))
            .expect("finite disc")
    }

    /// `p` is certainly inside the disc.
    pub fn contains(&self, p: f64) -> bool {
        (Interval::point(p) - Interval::point(self.center)).mag() <= self.radius
    }

    /// Upper bound on `|z|` over the disc.
    pub fn max_modulus(&self) -> f64 {
        add_up(self.center.abs(), self.radius)
    }

    /// Lower bound on `|z|` over the disc.
    pub fn min_modulus(&self) -> f64 {
        sub_down(self.center.abs(), self.radius).max(0.0)
    }

    /// The discs are certainly disjoint.
    pub fn disjoint(&self, other: &Disc) -> bool {
        let (a, b) = (self.interval(), other.interval());
        a.hi() < b.lo() || b.hi() < a.lo()
    }
}

/// Spectrum enclosure of an interval matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenEnclosure {
    /// Sorted by decreasing center.
    pub discs: [Disc; 4],
    /// Enclosure of `V⁻¹ X V` for every `X` in the input.
    pub similar: IMatrix4,
    /// Bound on `‖I - W V‖∞`.
    pub beta: f64,
    /// Some pair of discs may intersect.
    pub overlapping: bool,
}

/// Outcome of [`stability_verdict`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityVerdict {
    Stable,
    Unstable,
    NotProven(&'static str),
}

impl StabilityVerdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, StabilityVerdict::Stable)
    }
}

/// Everything computed for the stability proof.
#[derive(Debug, Clone, PartialEq)]
pub struct MonodromyReport {
    pub saltation: IMatrix4,
    pub monodromy: IMatrix4,
    pub eigen: EigenEnclosure,
    /// Index of the unique disc certainly containing 1.
    pub trivial_disc_index: Option<usize>,
    pub det_enclosure: Interval,
    /// `e^{tr(M) · 2L̃} = e^{-20 L̃}`.
    pub liouville: Interval,
    pub verdict: StabilityVerdict,
}

impl MonodromyReport {
    pub fn discs(&self) -> &[Disc; 4] {
        &self.eigen.discs
    }

    pub fn liouville_consistent(&self) -> bool {
        self.det_enclosure.intersects(self.liouville)
    }

    /// Product of the disc segments; must meet the determinant enclosure.
    pub fn spectral_product(&self) -> Interval {
        self.eigen
            .discs
            .iter()
            .fold(Interval::ONE, |acc, d| acc * d.interval())
    }
}

/// Saltation matrix shared by both crossings.
pub fn saltation_matrix(a2: Interval) -> Result<IMatrix4, Error> {
    if a2.contains_zero() {
        return Err(Error::NonTransversal(a2));
    }
    let mut s = identity::<Interval>();
    s[3][0] = Interval::point(-2.0).checked_div(a2)?;
    Ok(s)
}

/// `e^{ML} S e^{ML} S` for an arbitrary saltation factor.
pub fn monodromy_with(l: Interval, s: &IMatrix4) -> Result<IMatrix4, Error> {
    let e = Flow::<Interval>::standard().exp_mt(l)?;
    let es = mat_mul(&e, s);
    Ok(mat_mul(&es, &es))
}

/// Enclosure of the monodromy matrix `X(2L̃)`.
pub fn monodromy_enclosure(l: Interval, a2: Interval) -> Result<IMatrix4, Error> {
    monodromy_with(l, &saltation_matrix(a2)?)
}

/// Gershgorin discs of an interval matrix: centers at diagonal midpoints,
/// radii covering the diagonal width and the off-diagonal row magnitudes.
pub fn gershgorin_discs(y: &IMatrix4) -> [Disc; 4] {
    std::array::from_fn(|i| {
        let off = (0..4)
            .filter(|&j| j != i)
            .fold(0.0, |acc, j| add_up(acc, y[i][j].mag()));
        Disc {
            center: y[i][i].mid(),
            radius: add_up(y[i][i].rad(), off),
        }
    })
}

fn sup_normalize(v: &mut [f64; 4]) {
    let vmax = v
        .iter()
        .copied()
        .max_by(|a, b| a.abs().total_cmp(&b.abs()))
        .expect("four entries");
    for x in v.iter_mut() {
        *x /= vmax;
    }
}

/// Real eigenvalues of `a` (descending) and matching eigenvectors as columns.
fn approximate_eigenbasis(a: &Mat4<f64>) -> Result<([f64; 4], Mat4<f64>), Error> {
    let m = Matrix4::from_fn(|i, j| a[i][j]);
    let ev = m.schur().eigenvalues().ok_or(Error::ComplexEigenvalues)?;
    let mut lambda = [ev[0], ev[1], ev[2], ev[3]];
    lambda.sort_by(|x, y| y.total_cmp(x));

    let mut cols = [[0.0; 4]; 4];
    for (col, &l) in cols.iter_mut().zip(&lambda) {
        let shift = l + l.abs().max(f64::MIN_POSITIVE) * 1e-10;
        let mut shifted = *a;
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] -= shift;
        }
        let lu = Lu::new_lenient(&shifted)?;
        let mut v = [1.0, 0.7, -0.4, 0.3];
        for _ in 0..4 {
            v = lu.solve(&v);
            sup_normalize(&mut v);
        }
        *col = v;
    }
    let v = std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i]));
    Ok((lambda, v))
}

/// Certified enclosure of the spectrum of every matrix in `x`.
pub fn eigen_enclosure(x: &IMatrix4) -> Result<EigenEnclosure, Error> {
    let (_, v) = approximate_eigenbasis(&mid_mat(x))?;
    let w = Lu::new(&v)?.inverse();
    let (vi, wi) = (to_interval_mat(&v), to_interval_mat(&w));

    let defect = mat_sub(&identity(), &mat_mul(&wi, &vi));
    let beta = imat_inf_norm(&defect);
    if beta >= 1.0 {
        return Err(Error::EigenbasisNotCertifiable { beta });
    }
    // V⁻¹ = (I - R)⁻¹ W with R = I - W V, so ‖V⁻¹ - W‖ <= β/(1-β) ‖W‖.
    let b = Interval::point(beta);
    let e = (b / (Interval::ONE - b) * Interval::point(imat_inf_norm(&wi))).hi();
    let mut v_inv = wi;
    for row in v_inv.iter_mut() {
        for x in row.iter_mut() {
            *x = x.inflate(e)?;
        }
    }
    let similar = mat_mul(&v_inv, &mat_mul(x, &vi));
    let discs = gershgorin_discs(&similar);
    let overlapping = (0..4).any(|i| (i + 1..4).any(|j| !discs[i].disjoint(&discs[j])));
    Ok(EigenEnclosure {
        discs,
        similar,
        beta,
        overlapping,
    })
}

/// Stable iff one disc holds the trivial multiplier 1 and the other three
/// lie strictly inside the unit disc, with all discs pairwise disjoint.
pub fn stability_verdict(discs: &[Disc; 4]) -> StabilityVerdict {
    let overlapping = (0..4).any(|i| (i + 1..4).any(|j| !discs[i].disjoint(&discs[j])));
    if overlapping {
        return StabilityVerdict::NotProven("overlapping discs");
    }
    let trivial: Vec<usize> = (0..4).filter(|&i| discs[i].contains(1.0)).collect();
    if trivial.len() != 1 {
        return StabilityVerdict::NotProven("trivial multiplier not isolated in exactly one disc");
    }
    let others = (0..4).filter(|&i| i != trivial[0]);
    if others.clone().all(|i| discs[i].max_modulus() < 1.0) {
        StabilityVerdict::Stable
    } else if others.clone().any(|i| discs[i].min_modulus() > 1.0) {
        StabilityVerdict::Unstable
    } else {
        StabilityVerdict::NotProven("a nontrivial disc meets the unit circle")
    }
}

/// Saltation, monodromy, spectrum and verdict from certified `L̃`, `ã₂`.
pub fn floquet_report(l: Interval, a2: Interval) -> Result<MonodromyReport, Error> {
    let saltation = saltation_matrix(a2)?;
    let monodromy = monodromy_with(l, &saltation)?;
    let eigen = eigen_enclosure(&monodromy)?;
    let trivial: Vec<usize> = (0..4).filter(|&i| eigen.discs[i].contains(1.0)).collect();
    // det(V⁻¹XV) = det X; the similar form is nearly diagonal, so its
    // Leibniz expansion stays tight.
    let det_enclosure = det(&eigen.similar);
    let liouville = (Interval::point(-20.0) * l).exp()?;
    let verdict = stability_verdict(&eigen.discs);
    Ok(MonodromyReport {
        saltation,
        monodromy,
        trivial_disc_index: (trivial.len() == 1).then(|| trivial[0]),
        eigen,
        det_enclosure,
        liouville,
        verdict,
    })
}
