//! Saltation and monodromy matrices, Gershgorin enclosure of the Floquet
//! multipliers, and the stability verdict.
//!
//! ```bash
//! cargo run --example floquet_stability
//! ```

use pwproof::floquet::floquet_report;
use pwproof::pipeline::{prove, ProveConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let proof = prove(&ProveConfig::default())?;
    let (l, a2) = (proof.zero_enclosure[0], proof.zero_enclosure[1]);
    let report = floquet_report(l, a2)?;

    println!("S[4][1] = -2/a2 in {}", report.saltation[3][0]);
    println!("monodromy X = (e^(ML) S)^2:");
    for row in &report.monodromy {
        let cells: Vec<String> = row.iter().map(|x| format!("{:>12.5e}", x.mid())).collect();
        println!("  [{}]", cells.join(" "));
    }
    println!("eigenbasis defect beta = {:.3e}", report.eigen.beta);
    for (i, d) in report.discs().iter().enumerate() {
        println!("disc {}: center {:.14e}, radius {:.3e}", i + 1, d.center, d.radius);
    }
    println!("det X in {}", report.det_enclosure);
    println!("e^(-20L) in {}", report.liouville);
    println!("Liouville consistent: {}", report.liouville_consistent());
    println!("verdict: {:?}", report.verdict);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
