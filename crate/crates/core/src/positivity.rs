//! Mesh verification that the half orbit stays in `x₁ >= 0`.
//!
//! `[0, L̃]` is cut into `N` uniform cells and `φ̃` is enclosed over each.
//! Middle cells must have `φ̃₁ > 0`. On the left flank (where `φ̃₁(0) = 0`)
//! it suffices that `φ̃₂ = φ̃₁' > 0`, and on the right flank (where
//! `φ̃₁(L̃) = 0`) that `φ̃₂ < 0`. Together these give `φ̃₁ >= 0` on `[0, L̃]`.

use crate::flow::{Flow, StateVector};
use crate::interval::Interval;
use crate::linalg::IVector4;
use crate::Error;

/// One mesh cell with the enclosure of `φ̃` over it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshCell {
    pub time: Interval,
    pub state: IVector4,
}

/// The verified half orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSegment {
    /// Enclosure of `L̃`.
    pub l_enclosure: Interval,
    /// Enclosure of `ã`; the orbit starts at `(0, ã₂, ã₃, ã₄)`.
    pub a_enclosure: IVector4,
    pub mesh_size: usize,
    pub cells: Vec<MeshCell>,
    /// First cell (1-based) of the positive middle block.
    pub k1: usize,
    /// Last cell (1-based) of the positive middle block.
    pub k2: usize,
}

/// Enclose `φ̃` over every cell of the uniform mesh.
pub fn mesh_enclosures(
    a_enclosure: &IVector4,
    l_enclosure: Interval,
    mesh_size: usize,
) -> Result<Vec<MeshCell>, Error> {
    let flow = Flow::<Interval>::standard();
    let n = Interval::point(mesh_size as f64);
    // t_k = k L / N as intervals, so the cells cover [0, sup L].
    let knots: Vec<Interval> = (0..=mesh_size)
        .map(|k| {
            if k == 0 {
                Interval::ZERO
            } else {
                l_enclosure * Interval::point(k as f64) / n
            }
        })
        .collect();
    knots
        .windows(2)
        .map(|w| {
            let time = Interval::new(w[0].lo(), w[1].hi())?;
            let state = flow.phi_plus(time, a_enclosure)?;
            Ok(MeshCell { time, state })
        })
        .collect()
}

fn failure(cells: &[MeshCell], k: usize, reason: &'static str) -> Error {
    let c = &cells[k - 1];
    Error::PositivityFailed {
        cell: k,
        time: c.time,
        state: Box::new(c.state),
        reason,
    }
}

/// Certify `φ̃([0, L̃]) ⊂ {x₁ >= 0}`.
pub fn verify_positivity(
    a_enclosure: &IVector4,
    l_enclosure: Interval,
    mesh_size: usize,
) -> Result<OrbitSegment, Error> {
    if mesh_size < 3 {
        return Err(Error::MeshTooSmall(mesh_size));
    }
    let cells = mesh_enclosures(a_enclosure, l_enclosure, mesh_size)?;
    let positive = |k: usize| cells[k - 1].state[0].is_positive();

    let k1 = (1..=mesh_size)
        .find(|&k| positive(k))
        .ok_or_else(|| failure(&cells, 1, "no cell with x1 > 0"))?;
    let k2 = (1..=mesh_size).rev().find(|&k| positive(k)).unwrap_or(k1);
    if let Some(k) = (k1..=k2).find(|&k| !positive(k)) {
        return Err(failure(&cells, k, "x1 not positive in middle block"));
    }
    if let Some(k) = (1..k1).find(|&k| !cells[k - 1].state[1].is_positive()) {
        return Err(failure(&cells, k, "x2 not positive on left flank"));
    }
    if let Some(k) = (k2 + 1..=mesh_size).find(|&k| !cells[k - 1].state[1].is_negative()) {
        return Err(failure(&cells, k, "x2 not negative on right flank"));
    }
    if !(1 < k1 && k1 < k2 && k2 < mesh_size) {
        return Err(failure(&cells, k1, "degenerate phase structure"));
    }
    Ok(OrbitSegment {
        l_enclosure,
        a_enclosure: *a_enclosure,
        mesh_size,
        cells,
        k1,
        k2,
    })
}

/// The `2L̃`-periodic orbit: the verified half and its negated mirror.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicOrbit {
    pub segment: OrbitSegment,
    /// `ã⁽²⁾ = (0, ã₂, ã₃, ã₄)`, crossing from `x₁ < 0` into `x₁ > 0`.
    pub crossing_in: IVector4,
    /// `ã⁽¹⁾ = -ã⁽²⁾`, crossing from `x₁ > 0` into `x₁ < 0`.
    pub crossing_out: IVector4,
    pub period: Interval,
}

pub fn build_full_orbit(segment: OrbitSegment) -> PeriodicOrbit {
    let mut crossing_in = segment.a_enclosure;
    crossing_in[0] = Interval::ZERO;
    let crossing_out = crossing_in.map(|x| -x);
    let period = segment.l_enclosure + segment.l_enclosure;
    PeriodicOrbit {
        segment,
        crossing_in,
        crossing_out,
        period,
    }
}

/// Floating-point evaluation of the periodic orbit through `(0, a₂, a₃, a₄)`.
#[derive(Debug, Clone)]
pub struct FloatOrbit {
    flow: Flow<f64>,
    a: [f64; 4],
}

impl FloatOrbit {
    pub fn new(a: [f64; 4]) -> Self {
        FloatOrbit {
            flow: Flow::standard(),
            a,
        }
    }

    pub fn half_period(&self) -> f64 {
        self.a[0]
    }

    pub fn period(&self) -> f64 {
        2.0 * self.a[0]
    }

    /// `Γ(t)`: `φ(t)` on `[0, L]`, `-φ(t - L)` on `[L, 2L]`, extended periodically.
    pub fn state_at(&self, t: f64) -> StateVector<f64> {
        let l = self.half_period();
        let mut s = t.rem_euclid(self.period());
        // keep t = 2L on the mirrored half so Γ(2L) is evaluated, not Γ(0)
        if s == 0.0 && t > 0.0 {
            s = self.period();
        }
        let eval = |u: f64| {
            if u == 0.0 {
                [0.0, self.a[1], self.a[2], self.a[3]]
            } else {
                self.flow.phi_plus(u, &self.a).expect("finite flow")
            }
        };
        if s <= l {
            eval(s)
        } else {
            eval(s - l).map(|x| -x)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::to_interval_vec;

    const A_BAR: [f64; 4] = [
        1.418316134968973,
        2.245235091886104e-2,
        8.358590910573891e-3,
        -4.883983455701284e-2,
    ];

    fn a_box(r: f64) -> (IVector4, Interval) {
        let mut a = [Interval::ZERO; 4];
        for k in 1..4 {
            a[k] = Interval::centered(A_BAR[k], r).unwrap();
        }
        (a, Interval::centered(A_BAR[0], r).unwrap())
    }

    #[test]
    fn mesh_of_300_verifies() {
        let (a, l) = a_box(1.6e-14);
        let seg = verify_positivity(&a, l, 300).unwrap();
        assert!(1 < seg.k1 && seg.k1 < seg.k2 && seg.k2 < 300);
        assert_eq!(seg.cells.len(), 300);
        assert!(seg.cells.last().unwrap().time.hi() >= l.hi());
        for w in seg.cells.windows(2) {
            assert!(w[0].time.hi() >= w[1].time.lo());
        }
    }

    #[test]
    fn coarse_mesh_fails_with_cell() {
        let (a, l) = a_box(1.6e-14);
        match verify_positivity(&a, l, 3) {
            Err(Error::PositivityFailed { cell, .. }) => assert!((1..=3).contains(&cell)),
            other => panic!("expected failure, got {other:?}"),
        }
        assert!(matches!(verify_positivity(&a, l, 2), Err(Error::MeshTooSmall(2))));
    }

    #[test]
    fn full_orbit_symmetry() {
        let (a, l) = a_box(1.6e-14);
        let orbit = build_full_orbit(verify_positivity(&a, l, 300).unwrap());
        for k in 1..4 {
            assert!(orbit.crossing_in[k].contains(A_BAR[k]));
            assert!(orbit.crossing_out[k].contains(-A_BAR[k]));
        }
        let f = FloatOrbit::new(A_BAR);
        for t in [0.1, 0.5, 0.77, 1.2] {
            let x = f.state_at(t);
            let y = f.state_at(t + A_BAR[0]);
            for i in 0..4 {
                assert!((x[i] + y[i]).abs() < 1e-10);
            }
        }
        let start = f.state_at(0.0);
        let end = f.state_at(2.0 * A_BAR[0]);
        for i in 0..4 {
            assert!((start[i] - end[i]).abs() < 1e-10);
        }
        let at_l = Flow::<Interval>::standard()
            .phi_plus(l, &to_interval_vec(&A_BAR))
            .unwrap();
        assert!(at_l[0].mag() < 1e-12);
    }
}
