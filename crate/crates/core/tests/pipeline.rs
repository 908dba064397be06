mod common;

use common::REFERENCE_A_BAR;
use pwproof::certificate::{ProofCertificate, Stage};
use pwproof::floquet::Disc;
use pwproof::pipeline::{prove, run_prove, ProveConfig};
use pwproof::Interval;

#[test]
fn default_run_is_proven_and_tight() {
    let cert = run_prove(&ProveConfig::default());
    assert!(cert.status.proven, "{:?}", cert.status);
    assert_eq!(cert.status.failed_stage, None);
    let radii = cert.radii.as_ref().unwrap();
    assert!(radii.r0_min.0 <= 1e-13);
    assert!(radii.y0.0 <= 1e-13);
    let mesh = cert.mesh.as_ref().unwrap();
    assert!(mesh.verified && mesh.offending_cell.is_none());
    let floquet = cert.floquet.as_ref().unwrap();
    assert_eq!(floquet.verdict, "stable");
    assert_eq!(floquet.trivial_disc_index, Some(0));
    let a = cert.a_bar().unwrap();
    for (x, p) in a.iter().zip(REFERENCE_A_BAR) {
        assert!(((x - p) / p).abs() < 1e-12);
    }
}

#[test]
fn zero_enclosure_contains_reference_value() {
    let proof = prove(&ProveConfig::default()).unwrap();
    for (iv, p) in proof.zero_enclosure.iter().zip(REFERENCE_A_BAR) {
        assert!(iv.contains(p), "{iv} vs {p}");
    }
    assert!(proof.orbit.period.contains(2.0 * REFERENCE_A_BAR[0]));
}

#[test]
fn coarse_mesh_fails_at_positivity_with_cell() {
    let cert = run_prove(&ProveConfig {
        mesh_size: 3,
        ..ProveConfig::default()
    });
    assert!(!cert.status.proven);
    assert_eq!(cert.status.failed_stage, Some(Stage::Positivity));
    assert!(cert.radii.is_some());
    assert!(cert.floquet.is_none());
    let mesh = cert.mesh.unwrap();
    assert!(!mesh.verified);
    let cell = mesh.offending_cell.unwrap();
    assert!((1..=3).contains(&cell.index));
    let t = Interval::try_from(cell.time).unwrap();
    assert!(t.lo() >= 0.0 && t.hi() <= 1.5);
}

#[test]
fn tiny_rstar_fails_at_existence() {
    let cert = run_prove(&ProveConfig {
        r_star: 1e-20,
        ..ProveConfig::default()
    });
    assert_eq!(cert.status.failed_stage, Some(Stage::Existence));
    assert!(cert.a_bar.is_some() && cert.newton.is_some());
    assert!(cert.radii.is_none() && cert.mesh.is_none() && cert.floquet.is_none());
    assert!(cert.status.diagnostic.unwrap().contains("existence"));
}

#[test]
fn bad_seed_fails_at_newton() {
    let cert = run_prove(&ProveConfig {
        seed: [50.0, 1.0, 1.0, 1.0],
        newton_max_iter: 3,
        ..ProveConfig::default()
    });
    assert_eq!(cert.status.failed_stage, Some(Stage::Newton));
    assert!(cert.a_bar.is_none());
}

#[test]
fn certificate_round_trips_and_is_deterministic() {
    let a = run_prove(&ProveConfig::default());
    let json = a.to_json();
    let back = ProofCertificate::from_json(&json).unwrap();
    assert_eq!(back, a);
    assert_eq!(back.to_json(), json);
    let b = run_prove(&ProveConfig::default());
    assert!(a.same_proof(&b));

    let failed = run_prove(&ProveConfig {
        mesh_size: 3,
        ..ProveConfig::default()
    });
    assert_eq!(ProofCertificate::from_json(&failed.to_json()).unwrap(), failed);
}

#[test]
fn recorded_discs_match_report() {
    let proof = prove(&ProveConfig::default()).unwrap();
    let cert = run_prove(&ProveConfig::default());
    let recorded: Vec<Disc> = cert.floquet.unwrap().discs.iter().map(|&d| d.into()).collect();
    assert_eq!(recorded, proof.floquet.discs().to_vec());
}

#[test]
fn certificate_file_io() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/cert.json");
    let cert = run_prove(&ProveConfig::default());
    cert.write_to(&path).unwrap();
    assert_eq!(ProofCertificate::read_from(&path).unwrap(), cert);
    std::fs::write(&path, "{").unwrap();
    assert!(ProofCertificate::read_from(&path).is_err());
}
