//! Radii polynomial: rigorous `Y₀`, `Z₂` and the negativity window.
//!
//! ```bash
//! cargo run --example existence_proof
//! ```

use pwproof::flow::Flow;
use pwproof::newton::{approximate_inverse, newton_refine};
use pwproof::radii::{bound_y0, bound_z2, prove_existence, radii_polynomial};
use pwproof::{DEFAULT_R_STAR, DEFAULT_SEED};

pub fn run_example() -> Result<(), pwproof::Error> {
    let a_bar = newton_refine(DEFAULT_SEED, 50, 1e-13)?.a;
    let w = approximate_inverse(&Flow::<f64>::standard().df_map(&a_bar)?)?;

    let y0 = bound_y0(&a_bar, &w)?;
    let z2 = bound_z2(&a_bar, &w, DEFAULT_R_STAR)?;
    println!("Y0 = {y0:.3e}, Z2 = {z2:.3e} on B(a_bar, {DEFAULT_R_STAR})");
    for r in [1e-15, 1e-13, 1e-3, 1e-2] {
        println!("p({r:e}) in {}", radii_polynomial(y0, z2, r));
    }

    let bounds = prove_existence(&a_bar, &w, DEFAULT_R_STAR)?;
    println!("p < 0 on [{:.3e}, {:.3e}]", bounds.r0_min, bounds.r0_max);
    let zero = bounds.zero_enclosure(&a_bar)?;
    println!("unique zero in:");
    for (name, x) in ["L ", "a2", "a3", "a4"].iter().zip(zero) {
        println!("  {name} in {x}");
    }

    match prove_existence(&a_bar, &w, 1e-20) {
        Err(e) => println!("with r* = 1e-20: {e}"),
        Ok(_) => println!("with r* = 1e-20: unexpectedly proven"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), pwproof::Error> {
    run_example()
}
