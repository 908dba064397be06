//! Floating-point Newton iteration for the boundary-value map `F`.
//!
//! ```bash
//! cargo run --example newton_zero
//! ```

use pwproof::flow::Flow;
use pwproof::newton::{approximate_inverse, inverse_defect, newton_refine};
use pwproof::DEFAULT_SEED;

pub fn run_example() -> Result<(), pwproof::Error> {
    let result = newton_refine(DEFAULT_SEED, 50, 1e-13)?;
    for (i, r) in result.residuals.iter().enumerate() {
        println!("step {i}: |F(a)| = {r:.3e}");
    }
    let a = result.a;
    println!("a_bar = (L, a2, a3, a4) = {a:?}");

    let flow = Flow::<f64>::standard();
    let jac = flow.df_map(&a)?;
    let w = approximate_inverse(&jac)?;
    println!("|W DF(a_bar) - I| = {:.3e}", inverse_defect(&w, &jac));
    println!("orbit returns to the mirror image: F via flow = {:?}", flow.f_via_flow(&a)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), pwproof::Error> {
    run_example()
}
