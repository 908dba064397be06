//! Computer-assisted proof that
//!
//! ```text
//! φ'''' + 10 φ''' + 35 φ'' + 50 φ' + 24 φ + sign(φ) = 0
//! ```
//!
//! has a nontrivial asymptotically stable periodic orbit.
//!
//! The equation describes the oscillatory factor of traveling waves
//! `u(ξ, t) = y⁴ φ(ln y)`, `y = ξ - ct`, of a signed Kuramoto–Sivashinsky
//! equation with absorption. Written as a first-order system it is
//! piecewise linear, `x' = Mx ± b`, with the switching plane `x₁ = 0`.
//!
//! The proof runs in three stages, each in certified interval arithmetic:
//!
//! 1. [`radii`]: a Newton–Kantorovich style radii polynomial shows the
//!    half-orbit boundary problem `F(a) = 0` has a unique zero in a tiny
//!    ball around the Newton approximation from [`newton`].
//! 2. [`positivity`]: a time mesh shows the half orbit stays in `x₁ >= 0`,
//!    so it extends by symmetry to a periodic orbit.
//! 3. [`floquet`]: the monodromy matrix, including saltation at both
//!    crossings, is enclosed and its spectrum bounded by Gershgorin discs
//!    after an approximate diagonalisation.
//!
//! [`pipeline::run_prove`] chains the stages and produces a
//! [`certificate::ProofCertificate`].

#![allow(clippy::needless_range_loop)]

pub mod certificate;
mod error;
pub mod exact;
pub mod figures;
pub mod floquet;
pub mod flow;
pub mod hexfloat;
pub mod interval;
pub mod linalg;
pub mod newton;
pub mod pipeline;
pub mod positivity;
pub mod radii;
pub mod scalar;

pub use error::Error;
pub use interval::{Interval, IntervalError};

/// Newton seed used by default.
pub const DEFAULT_SEED: [f64; 4] = [1.4, 0.02, 0.01, -0.05];
/// Trust radius `r*` used by default.
pub const DEFAULT_R_STAR: f64 = 0.01;
/// Number of mesh cells used by default.
pub const DEFAULT_MESH: usize = 300;
