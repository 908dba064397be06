//! Fixed-size 4-vectors and 4×4 matrices over a [`Scalar`], plus a small
//! floating-point LU for the non-rigorous parts (Newton, approximate inverses).

use crate::interval::{add_up, Interval};
use crate::scalar::Scalar;
use crate::Error;

pub type Vec4<S> = [S; 4];
pub type Mat4<S> = [[S; 4]; 4];

pub type IVector4 = Vec4<Interval>;
pub type IMatrix4 = Mat4<Interval>;

pub fn identity<S: Scalar>() -> Mat4<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { S::one() } else { S::zero() }))
}

pub fn diag<S: Scalar>(d: &Vec4<S>) -> Mat4<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { d[i] } else { S::zero() }))
}

pub fn mat_mul<S: Scalar>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (1..4).fold(a[i][0] * b[0][j], |acc, k| acc + a[i][k] * b[k][j]))
    })
}

pub fn mat_vec<S: Scalar>(a: &Mat4<S>, v: &Vec4<S>) -> Vec4<S> {
    std::array::from_fn(|i| (1..4).fold(a[i][0] * v[0], |acc, k| acc + a[i][k] * v[k]))
}

pub fn vec_add<S: Scalar>(a: &Vec4<S>, b: &Vec4<S>) -> Vec4<S> {
    std::array::from_fn(|i| a[i] + b[i])
}

pub fn vec_sub<S: Scalar>(a: &Vec4<S>, b: &Vec4<S>) -> Vec4<S> {
    std::array::from_fn(|i| a[i] - b[i])
}

pub fn mat_sub<S: Scalar>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] - b[i][j]))
}

pub fn column<S: Scalar>(a: &Mat4<S>, j: usize) -> Vec4<S> {
    std::array::from_fn(|i| a[i][j])
}

pub fn transpose<S: Copy>(a: &Mat4<S>) -> Mat4<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]))
}

/// Determinant by the Leibniz expansion.
pub fn det<S: Scalar>(a: &Mat4<S>) -> S {
    let mut total = S::zero();
    let mut perm = [0usize, 1, 2, 3];
    let mut sign = true;
    // Heap's algorithm; each swap flips the sign.
    let mut c = [0usize; 4];
    let term = |p: &[usize; 4]| (1..4).fold(a[0][p[0]], |acc, i| acc * a[i][p[i]]);
    total = total + term(&perm);
    let mut i = 0;
    while i < 4 {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = !sign;
            let t = term(&perm);
            total = if sign { total + t } else { total - t };
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

pub fn to_interval_mat(a: &Mat4<f64>) -> IMatrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| Interval::point(a[i][j])))
}

pub fn to_interval_vec(v: &Vec4<f64>) -> IVector4 {
    std::array::from_fn(|i| Interval::point(v[i]))
}

pub fn mid_mat(a: &IMatrix4) -> Mat4<f64> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].mid()))
}

pub fn imat_mul(a: &IMatrix4, b: &IMatrix4) -> IMatrix4 {
    mat_mul(a, b)
}

pub fn imat_vec(a: &IMatrix4, v: &IVector4) -> IVector4 {
    mat_vec(a, v)
}

/// Rigorous upper bound on `max_i |v_i|` over all representatives.
pub fn ivec_inf_norm(v: &IVector4) -> f64 {
    v.iter().map(|x| x.mag()).fold(0.0, f64::max)
}

/// Rigorous upper bound on the induced ∞-norm (max absolute row sum).
pub fn imat_inf_norm(a: &IMatrix4) -> f64 {
    a.iter()
        .map(|row| row.iter().fold(0.0, |acc, x| add_up(acc, x.mag())))
        .fold(0.0, f64::max)
}

pub fn inf_norm(a: &Mat4<f64>) -> f64 {
    a.iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// LU factorisation with partial pivoting, `PA = LU` packed in place.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: Mat4<f64>,
    perm: [usize; 4],
}

impl Lu {
    /// Fails when a pivot is negligible relative to the matrix scale.
    pub fn new(a: &Mat4<f64>) -> Result<Lu, Error> {
        let scale = inf_norm(a);
        Lu::factor(a, |p| p.abs() <= 16.0 * f64::EPSILON * scale)
    }

    /// Only an exactly zero pivot is fatal; used for shifted inverse iteration.
    pub fn new_lenient(a: &Mat4<f64>) -> Result<Lu, Error> {
        Lu::factor(a, |p| p == 0.0)
    }

    fn factor(a: &Mat4<f64>, breakdown: impl Fn(f64) -> bool) -> Result<Lu, Error> {
        let mut lu = *a;
        let mut perm = [0, 1, 2, 3];
        for k in 0..4 {
            let piv = (k..4)
                .max_by(|&x, &y| lu[x][k].abs().total_cmp(&lu[y][k].abs()))
                .expect("nonempty range");
            if breakdown(lu[piv][k]) || !lu[piv][k].is_finite() {
                return Err(Error::SingularMatrix { column: k });
            }
            lu.swap(k, piv);
            perm.swap(k, piv);
            for i in k + 1..4 {
                let f = lu[i][k] / lu[k][k];
                lu[i][k] = f;
                for j in k + 1..4 {
                    lu[i][j] -= f * lu[k][j];
                }
            }
        }
        Ok(Lu { lu, perm })
    }

    pub fn solve(&self, b: &Vec4<f64>) -> Vec4<f64> {
        let mut y: Vec4<f64> = std::array::from_fn(|i| b[self.perm[i]]);
        for i in 0..4 {
            for j in 0..i {
                y[i] -= self.lu[i][j] * y[j];
            }
        }
        for i in (0..4).rev() {
            for j in i + 1..4 {
                y[i] -= self.lu[i][j] * y[j];
            }
            y[i] /= self.lu[i][i];
        }
        y
    }

    pub fn inverse(&self) -> Mat4<f64> {
        let cols: [Vec4<f64>; 4] = std::array::from_fn(|j| {
            let e = std::array::from_fn(|i| if i == j { 1.0 } else { 0.0 });
            self.solve(&e)
        });
        transpose(&cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ProblemData;

    #[test]
    fn identity_times_matrix_encloses() {
        let a: IMatrix4 = std::array::from_fn(|i| {
            std::array::from_fn(|j| Interval::new(i as f64, (i + j) as f64 + 0.5).unwrap())
        });
        let p = imat_mul(&identity(), &a);
        for i in 0..4 {
            for j in 0..4 {
                assert!(a[i][j].subset(p[i][j]));
            }
        }
    }

    #[test]
    fn norms() {
        let v = to_interval_vec(&[1.0, -2.0, 0.0, 0.5]);
        assert_eq!(ivec_inf_norm(&v), 2.0);
        let a = to_interval_mat(&[[1.0, -2.0, 0.0, 0.0], [0.0; 4], [3.0, 3.0, -3.0, 0.0], [0.0; 4]]);
        assert_eq!(imat_inf_norm(&a), 9.0);
    }

    #[test]
    fn p_times_e1_is_first_column() {
        let d = ProblemData::get();
        let p: IMatrix4 = std::array::from_fn(|i| {
            std::array::from_fn(|j| crate::exact::rational_to_interval(&d.p[i][j]))
        });
        let col = imat_vec(&p, &to_interval_vec(&[1.0, 0.0, 0.0, 0.0]));
        for (c, want) in col.iter().zip([1.0, -4.0, 16.0, -64.0]) {
            assert!(c.contains(want));
        }
    }

    #[test]
    fn det_matches_known_values() {
        let a = [[2.0, 0.0, 0.0, 0.0], [0.0, 3.0, 0.0, 0.0], [0.0, 0.0, 5.0, 0.0], [0.0, 0.0, 0.0, 7.0]];
        assert_eq!(det(&a), 210.0);
        let swap = [[0.0, 1.0, 0.0, 0.0], [1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]];
        assert_eq!(det(&swap), -1.0);
        let a = [[1.0, 2.0, 3.0, 4.0], [0.0, 1.0, 5.0, 6.0], [1.0, 0.0, 1.0, 0.0], [2.0, 1.0, 0.0, 1.0]];
        assert_eq!(det(&a), 16.0);
    }

    #[test]
    fn lu_inverse_and_breakdown() {
        let a = [[2.0, 0.0, 0.0, 0.0], [0.0, 4.0, 0.0, 0.0], [0.0, 0.0, 5.0, 0.0], [0.0, 0.0, 0.0, 10.0]];
        let inv = Lu::new(&a).unwrap().inverse();
        assert_eq!(inv, diag(&[0.5, 0.25, 0.2, 0.1]));
        let mut s = a;
        s[2] = [0.0; 4];
        assert!(matches!(Lu::new(&s), Err(Error::SingularMatrix { .. })));
    }
}
