//! Checking that the half orbit stays in `x₁ >= 0` on a uniform time mesh.
//!
//! ```bash
//! cargo run --example positivity_mesh
//! ```

use pwproof::pipeline::{prove, ProveConfig};
use pwproof::positivity::{build_full_orbit, verify_positivity};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let proof = prove(&ProveConfig::default())?;
    let zero = proof.zero_enclosure;
    let l = zero[0];

    let segment = verify_positivity(&zero, l, 300)?;
    println!("300 cells: k1 = {}, k2 = {}", segment.k1, segment.k2);
    for k in [1, segment.k1, 150, segment.k2, 300] {
        let c = &segment.cells[k - 1];
        println!("  cell {k:3}: t in {}, x1 in {}, x2 in {}", c.time, c.state[0], c.state[1]);
    }
    let orbit = build_full_orbit(segment);
    println!("period 2L in {}", orbit.period);

    for n in [3, 10, 30] {
        match verify_positivity(&zero, l, n) {
            Ok(s) => println!("{n} cells: verified (k1 = {}, k2 = {})", s.k1, s.k2),
            Err(e) => println!("{n} cells: {e}"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
