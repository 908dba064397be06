//! Figure data: the orbit profile, traveling-wave snapshots, and a minimal
//! SVG line plot for either.
//!
//! CSV output is comma-separated with a header row and 17 significant
//! digits. Lines starting with `#` carry metadata and are skipped by
//! [`parse_csv`].

use std::fmt::Write as _;

use thiserror::Error;

use crate::certificate::ProofCertificate;
use crate::positivity::FloatOrbit;

pub const DEFAULT_WAVE_SPEED: f64 = 1.0;
pub const DEFAULT_WAVE_TIMES: [f64; 3] = [0.0, 1.0, 2.0];
pub const DEFAULT_XI_RANGE: (f64, f64) = (-1.0, 8.0);
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FigureError {
    #[error("certificate has no verified zero")]
    NoExistence,
    #[error("empty CSV")]
    Empty,
    #[error("malformed CSV at line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("column {0:?} not in CSV header")]
    MissingColumn(String),
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
}

/// Decimal with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn push_row(out: &mut String, row: &[f64]) {
    let cells: Vec<String> = row.iter().map(|&x| fmt_float(x)).collect();
    out.push_str(&cells.join(","));
    out.push('\n');
}

fn orbit_of(cert: &ProofCertificate) -> Result<FloatOrbit, FigureError> {
    match (cert.radii.as_ref(), cert.a_bar()) {
        (Some(_), Some(a)) => Ok(FloatOrbit::new(a)),
        _ => Err(FigureError::NoExistence),
    }
}

/// `t, φ, φ′, φ″, φ‴` at `samples` uniform times covering `[0, 2L̄]`.
pub fn emit_orbit_figure_data(cert: &ProofCertificate, samples: usize) -> Result<String, FigureError> {
    if samples < 2 {
        return Err(FigureError::TooFewSamples { min: 2, got: samples });
    }
    let orbit = orbit_of(cert)?;
    let period = orbit.period();
    let mut out = String::from("t,phi,dphi,ddphi,dddphi\n");
    for i in 0..samples {
        let t = if i + 1 == samples {
            period
        } else {
            period * i as f64 / (samples - 1) as f64
        };
        let x = orbit.state_at(t);
        push_row(&mut out, &[t, x[0], x[1], x[2], x[3]]);
    }
    Ok(out)
}

/// Snapshot settings; `Default` gives the values used when none are supplied.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveSettings {
    pub c: f64,
    pub times: Vec<f64>,
    pub xi_range: (f64, f64),
    pub samples: usize,
}

impl Default for WaveSettings {
    fn default() -> Self {
        WaveSettings {
            c: DEFAULT_WAVE_SPEED,
            times: DEFAULT_WAVE_TIMES.to_vec(),
            xi_range: DEFAULT_XI_RANGE,
            samples: DEFAULT_SAMPLES,
        }
    }
}

/// `u(ξ, t) = y⁴ φ(ln y)` with `y = ξ - ct`, and `u = 0` for `y <= 0`.
///
/// `ln y` is taken modulo `2L̄`; phase 0 is the crossing point `(0, ā₂, ā₃, ā₄)`.
pub fn wave_profile(orbit: &FloatOrbit, c: f64, xi: f64, t: f64) -> f64 {
    let y = xi - c * t;
    if y <= 0.0 {
        return 0.0;
    }
    let s = y.ln().rem_euclid(orbit.period());
    y.powi(4) * orbit.state_at(s)[0]
}

/// One block of `(t, xi, u)` rows per requested time.
pub fn emit_wave_snapshots(
    cert: &ProofCertificate,
    c: f64,
    times: &[f64],
    xi_range: (f64, f64),
    samples: usize,
) -> Result<String, FigureError> {
    if samples < 2 {
        return Err(FigureError::TooFewSamples { min: 2, got: samples });
    }
    let orbit = orbit_of(cert)?;
    let (a, b) = xi_range;
    let mut out = String::new();
    let defaults = WaveSettings::default();
    let tag = |is_default: bool| if is_default { " (default)" } else { "" };
    let times_str: Vec<String> = times.iter().map(|t| t.to_string()).collect();
    let _ = writeln!(out, "# c={c}{}", tag(c == defaults.c));
    let _ = writeln!(out, "# times={}{}", times_str.join(";"), tag(times == defaults.times));
    let _ = writeln!(out, "# xi_range={a};{b}{}", tag(xi_range == defaults.xi_range));
    out.push_str("t,xi,u\n");
    for &t in times {
        for i in 0..samples {
            let xi = a + (b - a) * i as f64 / (samples - 1) as f64;
            push_row(&mut out, &[t, xi, wave_profile(&orbit, c, xi, t)]);
        }
    }
    Ok(out)
}

/// Parsed numeric CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column_index(&self, name: &str) -> Result<usize, FigureError> {
        self.header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| FigureError::MissingColumn(name.to_string()))
    }

    pub fn column(&self, name: &str) -> Result<Vec<f64>, FigureError> {
        let j = self.column_index(name)?;
        Ok(self.rows.iter().map(|r| r[j]).collect())
    }
}

pub fn parse_csv(text: &str) -> Result<Table, FigureError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(FigureError::Empty)?;
    let header: Vec<String> = header.split(',').map(|h| h.trim().to_string()).collect();
    if header.iter().any(|h| h.is_empty()) {
        return Err(FigureError::Malformed {
            line: hline,
            msg: "empty column name".into(),
        });
    }
    let mut rows = Vec::new();
    for (line, l) in lines {
        let row = l
            .split(',')
            .map(|c| c.trim().parse::<f64>())
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|e| FigureError::Malformed {
                line,
                msg: e.to_string(),
            })?;
        if row.len() != header.len() {
            return Err(FigureError::Malformed {
                line,
                msg: format!("expected {} fields, found {}", header.len(), row.len()),
            });
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(FigureError::Empty);
    }
    Ok(Table { header, rows })
}

/// Which columns to draw; rows sharing a `group` value form one polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub x: String,
    pub y: String,
    pub group: Option<String>,
}

impl PlotSpec {
    /// Phase portrait for orbit data, one curve per time for wave data,
    /// otherwise the first two columns.
    pub fn infer(table: &Table) -> Result<PlotSpec, FigureError> {
        let has = |n: &str| table.header.iter().any(|h| h == n);
        let spec = if has("phi") && has("dphi") {
            PlotSpec { x: "phi".into(), y: "dphi".into(), group: None }
        } else if has("xi") && has("u") {
            PlotSpec {
                x: "xi".into(),
                y: "u".into(),
                group: has("t").then(|| "t".into()),
            }
        } else if table.header.len() >= 2 {
            PlotSpec {
                x: table.header[0].clone(),
                y: table.header[1].clone(),
                group: None,
            }
        } else {
            return Err(FigureError::Malformed {
                line: 1,
                msg: "need at least two columns".into(),
            });
        };
        Ok(spec)
    }
}

pub fn emit_svg(csv: &str) -> Result<String, FigureError> {
    let table = parse_csv(csv)?;
    let spec = PlotSpec::infer(&table)?;
    render_svg(&table, &spec)
}

pub fn emit_svg_with(csv: &str, spec: &PlotSpec) -> Result<String, FigureError> {
    render_svg(&parse_csv(csv)?, spec)
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 48.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn span(v: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = v.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

fn render_svg(table: &Table, spec: &PlotSpec) -> Result<String, FigureError> {
    let xi = table.column_index(&spec.x)?;
    let yi = table.column_index(&spec.y)?;
    let gi = spec.group.as_deref().map(|g| table.column_index(g)).transpose()?;

    let mut groups: Vec<(f64, Vec<(f64, f64)>)> = Vec::new();
    for r in &table.rows {
        let key = gi.map_or(0.0, |g| r[g]);
        match groups.last_mut() {
            Some((k, pts)) if k.to_bits() == key.to_bits() => pts.push((r[xi], r[yi])),
            _ => groups.push((key, vec![(r[xi], r[yi])])),
        }
    }

    let (x0, x1) = span(table.rows.iter().map(|r| r[xi]));
    let (y0, y1) = span(table.rows.iter().map(|r| r[yi]));
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (ax, ay) = (MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        s,
        r#"<g class="axes" stroke="black" stroke-width="1"><line x1="{ax}" y1="{ay}" x2="{}" y2="{ay}"/><line x1="{ax}" y1="{ay}" x2="{ax}" y2="{MARGIN}"/></g>"#,
        WIDTH - MARGIN
    );
    let _ = writeln!(
        s,
        r#"<g font-family="sans-serif" font-size="12"><text x="{}" y="{}" text-anchor="middle">{}</text><text x="14" y="{}" transform="rotate(-90 14 {})" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0,
        spec.x,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        spec.y
    );
    let _ = writeln!(
        s,
        r#"<text x="{ax}" y="{}" text-anchor="start">{x0:.4e}</text><text x="{}" y="{}" text-anchor="end">{x1:.4e}</text><text x="{}" y="{ay}" text-anchor="end">{y0:.4e}</text><text x="{}" y="{}" text-anchor="end">{y1:.4e}</text></g>"#,
        ay + 16.0,
        WIDTH - MARGIN,
        ay + 16.0,
        ax - 4.0,
        ax - 4.0,
        MARGIN + 4.0
    );
    for (i, (_, pts)) in groups.iter().enumerate() {
        let points: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.3},{:.3}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
            COLORS[i % COLORS.len()],
            points.join(" ")
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
