//! JSON proof certificate.
//!
//! Every binary64 value, including interval endpoints, is stored as a hex
//! literal so the file round-trips bit-exactly. Stages are recorded in
//! order (existence, positivity, floquet); a stage is only present when all
//! earlier ones succeeded, and `status` names the stage that failed.

use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::floquet::{Disc, MonodromyReport, StabilityVerdict};
use crate::hexfloat::HexF64;
use crate::interval::Interval;
use crate::linalg::IVector4;
use crate::radii::RadiiBounds;

pub const SCHEMA_VERSION: &str = "pwproof-certificate/1";

/// Interval as `[lo, hi]` hex pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexInterval(pub [HexF64; 2]);

impl From<Interval> for HexInterval {
    fn from(x: Interval) -> Self {
        HexInterval([HexF64(x.lo()), HexF64(x.hi())])
    }
}

impl TryFrom<HexInterval> for Interval {
    type Error = crate::IntervalError;
    fn try_from(h: HexInterval) -> Result<Self, Self::Error> {
        Interval::new(h.0[0].0, h.0[1].0)
    }
}

fn hex4(v: [f64; 4]) -> [HexF64; 4] {
    v.map(HexF64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Newton,
    Existence,
    Positivity,
    Floquet,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Stage::Newton => "newton",
            Stage::Existence => "existence",
            Stage::Positivity => "positivity",
            Stage::Floquet => "floquet",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub mesh_size: usize,
    pub r_star: HexF64,
    pub seed: [HexF64; 4],
    pub newton_tol: HexF64,
    pub newton_max_iter: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonRecord {
    pub iterations: usize,
    pub residual: HexF64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiiRecord {
    pub y0: HexF64,
    pub z2: HexF64,
    pub r_star: HexF64,
    pub r0_min: HexF64,
    pub r0_max: HexF64,
    /// Enclosure of the certified zero, `B(ā, r0_min)`.
    pub zero_enclosure: [HexInterval; 4],
}

impl RadiiRecord {
    pub fn new(b: &RadiiBounds, zero: &IVector4) -> Self {
        RadiiRecord {
            y0: b.y0.into(),
            z2: b.z2.into(),
            r_star: b.r_star.into(),
            r0_min: b.r0_min.into(),
            r0_max: b.r0_max.into(),
            zero_enclosure: zero.map(HexInterval::from),
        }
    }

    pub fn bounds(&self) -> RadiiBounds {
        RadiiBounds {
            y0: self.y0.0,
            z2: self.z2.0,
            r_star: self.r_star.0,
            r0_min: self.r0_min.0,
            r0_max: self.r0_max.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    /// 1-based cell index.
    pub index: usize,
    pub time: HexInterval,
    pub state: [HexInterval; 4],
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeshRecord {
    pub size: usize,
    pub verified: bool,
    pub k1: Option<usize>,
    pub k2: Option<usize>,
    pub offending_cell: Option<CellRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscRecord {
    pub center: HexF64,
    pub radius: HexF64,
}

impl From<Disc> for DiscRecord {
    fn from(d: Disc) -> Self {
        DiscRecord {
            center: d.center.into(),
            radius: d.radius.into(),
        }
    }
}

impl From<DiscRecord> for Disc {
    fn from(d: DiscRecord) -> Self {
        Disc {
            center: d.center.0,
            radius: d.radius.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloquetRecord {
    /// Entry (4, 1) of the saltation matrix, `-2/ã₂`.
    pub saltation_entry: HexInterval,
    pub monodromy: [[HexInterval; 4]; 4],
    /// Gershgorin discs on the real axis, by decreasing center.
    pub discs: [DiscRecord; 4],
    pub trivial_disc_index: Option<usize>,
    pub det_enclosure: HexInterval,
    pub liouville: HexInterval,
    pub verdict: String,
}

impl From<&MonodromyReport> for FloquetRecord {
    fn from(r: &MonodromyReport) -> Self {
        FloquetRecord {
            saltation_entry: r.saltation[3][0].into(),
            monodromy: r.monodromy.map(|row| row.map(HexInterval::from)),
            discs: r.eigen.discs.map(DiscRecord::from),
            trivial_disc_index: r.trivial_disc_index,
            det_enclosure: r.det_enclosure.into(),
            liouville: r.liouville.into(),
            verdict: verdict_label(&r.verdict),
        }
    }
}

pub fn verdict_label(v: &StabilityVerdict) -> String {
    match v {
        StabilityVerdict::Stable => "stable".into(),
        StabilityVerdict::Unstable => "unstable".into(),
        StabilityVerdict::NotProven(why) => format!("not proven: {why}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Status {
    pub proven: bool,
    pub failed_stage: Option<Stage>,
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Environment {
    pub build_id: String,
    pub timestamp: String,
}

impl Environment {
    pub fn current() -> Self {
        Environment {
            build_id: format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofCertificate {
    pub version: String,
    pub config: ConfigRecord,
    pub a_bar: Option<[HexF64; 4]>,
    pub newton: Option<NewtonRecord>,
    pub radii: Option<RadiiRecord>,
    pub mesh: Option<MeshRecord>,
    pub floquet: Option<FloquetRecord>,
    pub status: Status,
    pub environment: Environment,
}

impl ProofCertificate {
    pub fn a_bar(&self) -> Option<[f64; 4]> {
        self.a_bar.map(|a| a.map(|x| x.0))
    }

    pub fn set_a_bar(&mut self, a: [f64; 4]) {
        self.a_bar = Some(hex4(a));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn write_to(&self, path: &Path) -> io::Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, self.to_json() + "\n")
    }

    pub fn read_from(path: &Path) -> io::Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::from_json(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
    }

    /// Equality ignoring the timestamp.
    pub fn same_proof(&self, other: &ProofCertificate) -> bool {
        let mut a = self.clone();
        a.environment.timestamp.clear();
        let mut b = other.clone();
        b.environment.timestamp.clear();
        a == b
    }
}

pub(crate) fn config_record(
    mesh_size: usize,
    r_star: f64,
    seed: [f64; 4],
    tol: f64,
    max_iter: usize,
) -> ConfigRecord {
    ConfigRecord {
        mesh_size,
        r_star: r_star.into(),
        seed: hex4(seed),
        newton_tol: tol.into(),
        newton_max_iter: max_iter,
    }
}
