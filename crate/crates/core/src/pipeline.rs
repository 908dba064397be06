//! End-to-end driver: Newton, existence, positivity, Floquet stability.

use crate::certificate::{
    config_record, CellRecord, Environment, FloquetRecord, HexInterval, MeshRecord,
    NewtonRecord, ProofCertificate, RadiiRecord, Stage, Status, SCHEMA_VERSION,
};
use crate::floquet::{floquet_report, MonodromyReport};
use crate::flow::Flow;
use crate::linalg::{IVector4, Mat4};
use crate::newton::{approximate_inverse, newton_refine, NewtonResult};
use crate::positivity::{build_full_orbit, verify_positivity, PeriodicOrbit};
use crate::radii::{prove_existence, RadiiBounds};
use crate::{Error, DEFAULT_MESH, DEFAULT_R_STAR, DEFAULT_SEED};

#[derive(Debug, Clone, PartialEq)]
pub struct ProveConfig {
    pub mesh_size: usize,
    pub r_star: f64,
    pub seed: [f64; 4],
    pub newton_tol: f64,
    pub newton_max_iter: usize,
}

impl Default for ProveConfig {
    fn default() -> Self {
        ProveConfig {
            mesh_size: DEFAULT_MESH,
            r_star: DEFAULT_R_STAR,
            seed: DEFAULT_SEED,
            newton_tol: 1e-13,
            newton_max_iter: 50,
        }
    }
}

/// Every artifact of a completed proof.
#[derive(Debug, Clone)]
pub struct Proof {
    pub newton: NewtonResult,
    /// Approximate inverse of `DF(ā)` used as the preconditioner.
    pub preconditioner: Mat4<f64>,
    pub radii: RadiiBounds,
    /// `B(ā, r0_min)`, holding the true zero `ã`.
    pub zero_enclosure: IVector4,
    pub orbit: PeriodicOrbit,
    pub floquet: MonodromyReport,
}

/// A stage that did not go through, with what was computed before it.
#[derive(Debug, Clone)]
pub struct StageFailure {
    pub stage: Stage,
    pub error: Option<Error>,
    pub partial: Box<Partial>,
}

impl std::fmt::Display for StageFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.error {
            Some(e) => write!(f, "{} stage failed: {e}", self.stage),
            None => write!(f, "{} stage failed: stability not proven", self.stage),
        }
    }
}

impl std::error::Error for StageFailure {}

#[derive(Debug, Clone, Default)]
pub struct Partial {
    pub newton: Option<NewtonResult>,
    pub radii: Option<(RadiiBounds, IVector4)>,
    pub orbit: Option<PeriodicOrbit>,
    pub floquet: Option<MonodromyReport>,
}

fn fail(stage: Stage, error: Option<Error>, partial: &Partial) -> StageFailure {
    StageFailure {
        stage,
        error,
        partial: Box::new(partial.clone()),
    }
}

/// Run all stages, stopping at the first failure.
pub fn prove(config: &ProveConfig) -> Result<Proof, StageFailure> {
    let mut partial = Partial::default();

    let newton = newton_refine(config.seed, config.newton_max_iter, config.newton_tol)
        .map_err(|e| fail(Stage::Newton, Some(e), &partial))?;
    partial.newton = Some(newton.clone());
    let a_bar = newton.a;

    let existence = || -> Result<_, Error> {
        let w = approximate_inverse(&Flow::<f64>::standard().df_map(&a_bar)?)?;
        let radii = prove_existence(&a_bar, &w, config.r_star)?;
        let zero = radii.zero_enclosure(&a_bar)?;
        Ok((w, radii, zero))
    };
    let (w, radii, zero) = existence().map_err(|e| fail(Stage::Existence, Some(e), &partial))?;
    partial.radii = Some((radii, zero));
    let l = zero[0];

    let segment = verify_positivity(&zero, l, config.mesh_size)
        .map_err(|e| fail(Stage::Positivity, Some(e), &partial))?;
    let orbit = build_full_orbit(segment);
    partial.orbit = Some(orbit.clone());

    let report = floquet_report(l, zero[1]).map_err(|e| fail(Stage::Floquet, Some(e), &partial))?;
    partial.floquet = Some(report.clone());
    if !report.verdict.is_stable() {
        return Err(fail(Stage::Floquet, None, &partial));
    }

    Ok(Proof {
        newton,
        preconditioner: w,
        radii,
        zero_enclosure: zero,
        orbit,
        floquet: report,
    })
}

fn mesh_record(orbit: &PeriodicOrbit) -> MeshRecord {
    MeshRecord {
        size: orbit.segment.mesh_size,
        verified: true,
        k1: Some(orbit.segment.k1),
        k2: Some(orbit.segment.k2),
        offending_cell: None,
    }
}

/// Run the proof and record it, successful or not, as a certificate.
pub fn run_prove(config: &ProveConfig) -> ProofCertificate {
    let mut cert = ProofCertificate {
        version: SCHEMA_VERSION.to_string(),
        config: config_record(
            config.mesh_size,
            config.r_star,
            config.seed,
            config.newton_tol,
            config.newton_max_iter,
        ),
        a_bar: None,
        newton: None,
        radii: None,
        mesh: None,
        floquet: None,
        status: Status {
            proven: false,
            failed_stage: None,
            diagnostic: None,
        },
        environment: Environment::current(),
    };

    let (partial, failure) = match prove(config) {
        Ok(p) => {
            let partial = Partial {
                newton: Some(p.newton),
                radii: Some((p.radii, p.zero_enclosure)),
                orbit: Some(p.orbit),
                floquet: Some(p.floquet),
            };
            (partial, None)
        }
        Err(f) => (*f.partial.clone(), Some(f)),
    };

    if let Some(n) = &partial.newton {
        cert.set_a_bar(n.a);
        cert.newton = Some(NewtonRecord {
            iterations: n.iterations,
            residual: n.residual().into(),
        });
    }
    if let Some((b, zero)) = &partial.radii {
        cert.radii = Some(RadiiRecord::new(b, zero));
    }
    if let Some(orbit) = &partial.orbit {
        cert.mesh = Some(mesh_record(orbit));
    }
    if let Some(report) = &partial.floquet {
        cert.floquet = Some(FloquetRecord::from(report));
    }

    match failure {
        None => cert.status.proven = true,
        Some(f) => {
            if let Some(Error::PositivityFailed {
                cell,
                time,
                state,
                reason,
            }) = &f.error
            {
                cert.mesh = Some(MeshRecord {
                    size: config.mesh_size,
                    verified: false,
                    k1: None,
                    k2: None,
                    offending_cell: Some(CellRecord {
                        index: *cell,
                        time: HexInterval::from(*time),
                        state: state.map(HexInterval::from),
                        reason: reason.to_string(),
                    }),
                });
            }
            cert.status.failed_stage = Some(f.stage);
            cert.status.diagnostic = Some(f.to_string());
        }
    }
    cert
}
