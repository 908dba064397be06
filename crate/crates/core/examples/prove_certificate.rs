//! The whole proof as a JSON certificate with hex-float values, plus the
//! two expected-failure configurations.
//!
//! ```bash
//! cargo run --example prove_certificate
//! ```

use pwproof::certificate::ProofCertificate;
use pwproof::pipeline::{run_prove, ProveConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cert = run_prove(&ProveConfig::default());
    println!("proven: {}", cert.status.proven);
    let json = cert.to_json();
    println!("{} bytes of JSON; a_bar = {:?}", json.len(), cert.a_bar);

    let dir = std::env::temp_dir().join(format!("pwproof-example-{}", std::process::id()));
    let path = dir.join("certificate.json");
    cert.write_to(&path)?;
    let back = ProofCertificate::read_from(&path)?;
    println!("round trip through {} is bit-exact: {}", path.display(), back == cert);
    std::fs::remove_dir_all(&dir)?;

    for config in [
        ProveConfig { mesh_size: 3, ..ProveConfig::default() },
        ProveConfig { r_star: 1e-20, ..ProveConfig::default() },
    ] {
        let cert = run_prove(&config);
        println!(
            "mesh {} r* {:e}: failed at {:?}: {}",
            config.mesh_size,
            config.r_star,
            cert.status.failed_stage,
            cert.status.diagnostic.as_deref().unwrap_or("")
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
