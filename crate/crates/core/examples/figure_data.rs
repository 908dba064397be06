//! Orbit profile and traveling-wave snapshots as CSV, each with an SVG plot.
//!
//! Files go to `$PWPROOF_CERT_DIR` (default: a temporary directory).
//!
//! ```bash
//! PWPROOF_CERT_DIR=out cargo run --example figure_data
//! ```

use std::path::PathBuf;

use pwproof::figures::{emit_orbit_figure_data, emit_svg, emit_wave_snapshots, WaveSettings};
use pwproof::pipeline::{run_prove, ProveConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cert = run_prove(&ProveConfig::default());
    let dir = std::env::var_os("PWPROOF_CERT_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("pwproof-figures"));
    std::fs::create_dir_all(&dir)?;

    let orbit = emit_orbit_figure_data(&cert, 401)?;
    println!("orbit CSV, first rows:");
    for line in orbit.lines().take(3) {
        println!("  {line}");
    }

    let s = WaveSettings::default();
    let wave = emit_wave_snapshots(&cert, s.c, &s.times, s.xi_range, 600)?;
    for (name, csv) in [("orbit", &orbit), ("wave", &wave)] {
        let csv_path = dir.join(format!("{name}.csv"));
        std::fs::write(&csv_path, csv)?;
        std::fs::write(csv_path.with_extension("svg"), emit_svg(csv)?)?;
        println!("wrote {} and its .svg", csv_path.display());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
