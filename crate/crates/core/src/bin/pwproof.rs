use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use pwproof::certificate::ProofCertificate;
use pwproof::figures::{self, WaveSettings};
use pwproof::hexfloat::format_hex;
use pwproof::newton::newton_refine;
use pwproof::pipeline::{run_prove, ProveConfig};

const CERT_DIR_VAR: &str = "PWPROOF_CERT_DIR";
const CERT_FILE: &str = "certificate.json";

#[derive(Parser)]
#[command(name = "pwproof", version, about = "Verified periodic orbit of φ⁗+10φ‴+35φ″+50φ′+24φ+sign(φ)=0")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full proof and write a certificate.
    Prove {
        #[arg(long, default_value_t = pwproof::DEFAULT_MESH)]
        mesh: usize,
        #[arg(long, default_value_t = pwproof::DEFAULT_R_STAR)]
        rstar: f64,
        #[arg(long, value_parser = parse_seed)]
        seed: Option<[f64; 4]>,
        /// Certificate path; defaults to $PWPROOF_CERT_DIR/certificate.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Floating-point Newton iteration only.
    Newton {
        #[arg(long, value_parser = parse_seed)]
        seed: Option<[f64; 4]>,
    },
    /// Write figure CSV and a matching SVG.
    Figures {
        kind: FigureKind,
        /// Wave speed for snapshots.
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        times: Option<Vec<f64>>,
        /// ξ window as `lo,hi`.
        #[arg(long, value_parser = parse_pair)]
        xi: Option<(f64, f64)>,
        #[arg(long)]
        samples: Option<usize>,
        /// Certificate to read; a fresh proof is run when none exists.
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureKind {
    Orbit,
    Wave,
}

fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect()
}

fn parse_seed(s: &str) -> Result<[f64; 4], String> {
    let v = parse_floats(s)?;
    v.try_into().map_err(|v: Vec<f64>| format!("expected 4 values, got {}", v.len()))
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    match parse_floats(s)?.as_slice() {
        &[a, b] if a < b => Ok((a, b)),
        &[_, _] => Err("need lo < hi".into()),
        v => Err(format!("expected 2 values, got {}", v.len())),
    }
}

fn cert_dir() -> PathBuf {
    std::env::var_os(CERT_DIR_VAR)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn print_summary(cert: &ProofCertificate) {
    if let Some(a) = cert.a_bar() {
        println!("a_bar    = [{:.16e}, {:.16e}, {:.16e}, {:.16e}]", a[0], a[1], a[2], a[3]);
    }
    if let Some(r) = &cert.radii {
        println!("Y0       = {:.3e}", r.y0.0);
        println!("Z2       = {:.3e}", r.z2.0);
        println!("window   = [{:.3e}, {:.3e}]", r.r0_min.0, r.r0_max.0);
    }
    if let Some(m) = &cert.mesh {
        match (m.k1, m.k2) {
            (Some(k1), Some(k2)) => println!("mesh     = {} cells, k1 = {k1}, k2 = {k2}", m.size),
            _ => println!("mesh     = {} cells, not verified", m.size),
        }
    }
    if let Some(f) = &cert.floquet {
        for (i, d) in f.discs.iter().enumerate() {
            println!("disc {}   = center {:.14e}, radius {:.3e}", i + 1, d.center.0, d.radius.0);
        }
        println!("verdict  = {}", f.verdict);
    }
}

fn prove(mesh: usize, rstar: f64, seed: Option<[f64; 4]>, out: Option<PathBuf>) -> Result<bool> {
    let config = ProveConfig {
        mesh_size: mesh,
        r_star: rstar,
        seed: seed.unwrap_or(pwproof::DEFAULT_SEED),
        ..ProveConfig::default()
    };
    let cert = run_prove(&config);
    let path = out.unwrap_or_else(|| cert_dir().join(CERT_FILE));
    cert.write_to(&path)
        .with_context(|| format!("writing {}", path.display()))?;
    print_summary(&cert);
    println!("certificate written to {}", path.display());
    if let (Some(stage), Some(msg)) = (cert.status.failed_stage, &cert.status.diagnostic) {
        eprintln!("proof failed at {stage} stage: {msg}");
    }
    Ok(cert.status.proven)
}

fn newton(seed: Option<[f64; 4]>) -> Result<bool> {
    let r = newton_refine(seed.unwrap_or(pwproof::DEFAULT_SEED), 50, 1e-13)?;
    for (i, res) in r.residuals.iter().enumerate() {
        println!("iteration {i:2}: |F| = {res:.3e}");
    }
    for (i, a) in r.a.iter().enumerate() {
        println!("a{} = {:>24.16e}  {}", i + 1, a, format_hex(*a));
    }
    Ok(true)
}

fn load_or_prove(cert: Option<PathBuf>) -> Result<ProofCertificate> {
    let path = cert.unwrap_or_else(|| cert_dir().join(CERT_FILE));
    if path.exists() {
        return ProofCertificate::read_from(&path).with_context(|| format!("reading {}", path.display()));
    }
    eprintln!("no certificate at {}, running the proof", path.display());
    Ok(run_prove(&ProveConfig::default()))
}

#[allow(clippy::too_many_arguments)]
fn figures_cmd(
    kind: FigureKind,
    c: Option<f64>,
    times: Option<Vec<f64>>,
    xi: Option<(f64, f64)>,
    samples: Option<usize>,
    cert: Option<PathBuf>,
    out: Option<PathBuf>,
) -> Result<bool> {
    let cert = load_or_prove(cert)?;
    if cert.radii.is_none() {
        bail!("certificate has no verified zero; figures need the existence stage");
    }
    let (csv, default_name) = match kind {
        FigureKind::Orbit => (
            figures::emit_orbit_figure_data(&cert, samples.unwrap_or(figures::DEFAULT_SAMPLES))?,
            "orbit.csv",
        ),
        FigureKind::Wave => {
            let d = WaveSettings::default();
            let csv = figures::emit_wave_snapshots(
                &cert,
                c.unwrap_or(d.c),
                &times.unwrap_or(d.times),
                xi.unwrap_or(d.xi_range),
                samples.unwrap_or(d.samples),
            )?;
            (csv, "wave.csv")
        }
    };
    let path = out.unwrap_or_else(|| cert_dir().join(default_name));
    write_file(&path, &csv)?;
    let svg_path = path.with_extension("svg");
    write_file(&svg_path, &figures::emit_svg(&csv)?)?;
    println!("wrote {} and {}", path.display(), svg_path.display());
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Prove { mesh, rstar, seed, out } => prove(mesh, rstar, seed, out),
        Command::Newton { seed } => newton(seed),
        Command::Figures { kind, c, times, xi, samples, cert, out } => {
            figures_cmd(kind, c, times, xi, samples, cert, out)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
