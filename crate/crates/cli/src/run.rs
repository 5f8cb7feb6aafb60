//! Sweep execution, CSV output and the run manifest.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use risnoma_core::analytic::ClosedFormContext;
use risnoma_core::metrics::{match_power_budget, total_power};
use risnoma_core::montecarlo::{simulate_point, PointSummary, MIN_TRIALS};
use risnoma_core::{McOptions, Metric, PowerModel, Sic, Surface, SystemConfig, ThroughputMode, User, Variant};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::config::{Curve, CurveMetric, Scenario, Target};

pub const CSV_HEADER: &str = "axis_value,analytic_value,mc_value,mc_std_error,variant";

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Core(#[from] risnoma_core::Error),

    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Flags(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Both,
    AnalyticOnly,
    McOnly,
}

impl Mode {
    fn analytic(self) -> bool {
        self != Mode::McOnly
    }

    fn mc(self) -> bool {
        self != Mode::AnalyticOnly
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunFlags {
    pub mode: Mode,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerRecord {
    pub nu: f64,
    pub p_bs_w: f64,
    pub p_re_w: f64,
    pub p_u_w: f64,
    pub p_sw_w: f64,
    pub p_dc_w: f64,
}

impl From<&PowerModel> for PowerRecord {
    fn from(p: &PowerModel) -> Self {
        Self {
            nu: p.nu,
            p_bs_w: p.p_bs,
            p_re_w: p.p_re,
            p_u_w: p.p_u,
            p_sw_w: p.p_sw,
            p_dc_w: p.p_dc,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub scenario: String,
    pub config_hash: String,
    pub seed: u64,
    pub trials: usize,
    pub laguerre_order: usize,
    pub chebyshev_order: usize,
    pub guard_form: String,
    pub laguerre_form: String,
    pub metric: String,
    pub sweep_axis: String,
    pub ris_noise: String,
    pub budget_match: bool,
    pub analytic: bool,
    pub monte_carlo: bool,
    pub power_model: PowerRecord,
    pub version: String,
    pub timestamp: String,
    pub canonical_config: String,
    pub files: Vec<String>,
}

pub fn version_string() -> String {
    format!("{}+{}", env!("CARGO_PKG_VERSION"), env!("RISNOMA_GIT_DESCRIBE"))
}

/// SHA-256 of the canonical scenario text, hex encoded.
pub fn config_hash(s: &Scenario) -> String {
    let digest = Sha256::digest(s.canonical().as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut out, b| {
        let _ = write!(out, "{b:02x}");
        out
    })
}

/// One row of a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub x: f64,
    pub analytic: Option<f64>,
    pub mc: Option<(f64, f64)>,
}

/// Rows of every curve for one series value.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSet {
    pub series_value: Option<f64>,
    pub curves: Vec<(Curve, Vec<Row>)>,
}

/// Evaluates all curves of the scenario without touching the disk.
pub fn evaluate(s: &Scenario, flags: &RunFlags) -> Result<Vec<CurveSet>, RunError> {
    if flags.trials.is_some_and(|t| t < MIN_TRIALS) {
        return Err(RunError::Flags(format!("--trials must be at least {MIN_TRIALS}")));
    }
    let opts = McOptions {
        trials: flags.trials.unwrap_or(s.trials),
        seed: flags.seed.unwrap_or(s.seed),
        noise: s.noise,
    };
    let series: Vec<Option<f64>> = match &s.series {
        Some((_, v)) => v.iter().copied().map(Some).collect(),
        None => vec![None],
    };
    let mut out = Vec::with_capacity(series.len());
    for (si, sv) in series.iter().enumerate() {
        let base = match (&s.series, sv) {
            (Some((axis, _)), Some(v)) => axis.apply(&s.system, *v)?,
            _ => s.system.clone(),
        };
        let mut rows: Vec<Vec<Row>> = vec![Vec::with_capacity(s.grid.len()); s.curves.len()];
        for (i, &x) in s.grid.iter().enumerate() {
            let cfg = s.axis.apply(&base, x)?;
            let point = (si * s.grid.len() + i) as u32;
            let per_surface = surface_configs(s, &cfg)?;
            let mut summaries: [Option<PointSummary>; 2] = [None, None];
            if flags.mode.mc() {
                for (k, surface) in [Surface::Active, Surface::Passive].into_iter().enumerate() {
                    if s.curves.iter().any(|c| c.variant.surface == surface) {
                        let c = &per_surface[k];
                        summaries[k] = Some(simulate_point(c, &opts, point)?);
                    }
                }
            }
            for (ci, curve) in s.curves.iter().enumerate() {
                let k = surface_index(curve.variant.surface);
                let c = &per_surface[k];
                let analytic = if flags.mode.analytic() {
                    Some(analytic_value(s, c, curve)?)
                } else {
                    None
                };
                let mc = summaries[k].as_ref().map(|sum| mc_value(s, c, curve, sum));
                rows[ci].push(Row { x, analytic, mc });
            }
        }
        out.push(CurveSet {
            series_value: *sv,
            curves: s.curves.iter().copied().zip(rows).collect(),
        });
    }
    Ok(out)
}

fn surface_index(s: Surface) -> usize {
    match s {
        Surface::Active => 0,
        Surface::Passive => 1,
    }
}

/// The configuration each surface is evaluated at. Under budget matching
/// the BS transmit power is reduced to the surface's matched share.
fn surface_configs(s: &Scenario, cfg: &SystemConfig) -> Result<[SystemConfig; 2], RunError> {
    if !s.budget_match {
        return Ok([cfg.clone(), cfg.clone()]);
    }
    let mut active = cfg.with_variant(Variant::new(Surface::Active, Sic::Perfect));
    active.varpi = cfg.varpi;
    let (p_a, p_p) = match_power_budget(cfg.p_b, &s.power, &active)?;
    let mut a = cfg.clone();
    a.p_b = p_a;
    let mut p = cfg.clone();
    p.p_b = p_p;
    Ok([a, p])
}

fn noma_pair(curve: &Curve) -> bool {
    curve.target == Target::Noma
}

fn analytic_value(s: &Scenario, cfg: &SystemConfig, curve: &Curve) -> Result<f64, RunError> {
    let v = curve.variant;
    let ctx = ClosedFormContext::for_variant(cfg, v)?;
    if let Target::User(u) = curve.target {
        if !ctx.user(u).feasible {
            log::warn!(
                "{}: guard of user {} fails at this point, reporting outage 1",
                curve.label(),
                u.label()
            );
        }
    }
    let throughput = |mode: ThroughputMode| -> f64 {
        if noma_pair(curve) {
            match mode {
                ThroughputMode::DelayLimited => {
                    (1.0 - ctx.outage(User::G, v)) * cfg.rate_g + (1.0 - ctx.outage(User::F, v)) * cfg.rate_f
                }
                ThroughputMode::DelayTolerant => ctx.ergodic_rate(User::G, v) + ctx.ergodic_rate(User::F, v),
            }
        } else {
            match mode {
                ThroughputMode::DelayLimited => (1.0 - ctx.outage(User::O, v)) * cfg.rate_o(),
                ThroughputMode::DelayTolerant => ctx.ergodic_rate(User::O, v),
            }
        }
    };
    Ok(match (s.metric, curve.target) {
        (CurveMetric::Outage, Target::User(u)) => ctx.outage(u, v),
        (CurveMetric::Rate, Target::User(u)) => ctx.ergodic_rate(u, v),
        (CurveMetric::Throughput(mode), _) => throughput(mode),
        (CurveMetric::EnergyEfficiency(mode), _) => {
            throughput(mode) / consumed_power(s, cfg, v)?
        }
        _ => unreachable!("curve targets are checked against the metric at parse time"),
    })
}

fn consumed_power(s: &Scenario, cfg: &SystemConfig, v: Variant) -> Result<f64, RunError> {
    let p = total_power(&cfg.with_variant(v), &s.power);
    if !(p > 0.0) {
        return Err(risnoma_core::Error::Domain(format!("total power must be positive, got {p}")).into());
    }
    Ok(p)
}

/// Monte Carlo value and standard error. System metrics add the user
/// terms; their error is the sum of the user errors, an upper bound that
/// holds under any correlation.
fn mc_value(s: &Scenario, cfg: &SystemConfig, curve: &Curve, sum: &PointSummary) -> (f64, f64) {
    let v = curve.variant;
    let throughput = |mode: ThroughputMode| -> (f64, f64) {
        let terms: Vec<(User, f64)> = if noma_pair(curve) {
            vec![(User::G, cfg.rate_g), (User::F, cfg.rate_f)]
        } else {
            vec![(User::O, cfg.rate_o())]
        };
        terms.iter().fold((0.0, 0.0), |(val, se), &(u, rate)| match mode {
            ThroughputMode::DelayLimited => {
                let e = sum.estimate(u, v, Metric::Outage);
                (val + (1.0 - e.value) * rate, se + e.std_error * rate)
            }
            ThroughputMode::DelayTolerant => {
                let e = sum.estimate(u, v, Metric::ErgodicRate);
                (val + e.value, se + e.std_error)
            }
        })
    };
    match (s.metric, curve.target) {
        (CurveMetric::Outage, Target::User(u)) => {
            let e = sum.estimate(u, v, Metric::Outage);
            (e.value, e.std_error)
        }
        (CurveMetric::Rate, Target::User(u)) => {
            let e = sum.estimate(u, v, Metric::ErgodicRate);
            (e.value, e.std_error)
        }
        (CurveMetric::Throughput(mode), _) => throughput(mode),
        (CurveMetric::EnergyEfficiency(mode), _) => {
            let (val, se) = throughput(mode);
            let p = total_power(&cfg.with_variant(v), &s.power);
            (val / p, se / p)
        }
        _ => unreachable!("curve targets are checked against the metric at parse time"),
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// RFC 4180 text of one curve.
pub fn render_csv(curve: &Curve, rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push_str("\r\n");
    for r in rows {
        let _ = write!(
            out,
            "{},{},{},{},{}\r\n",
            r.x,
            fmt_opt(r.analytic),
            fmt_opt(r.mc.map(|m| m.0)),
            fmt_opt(r.mc.map(|m| m.1)),
            curve.variant.label()
        );
    }
    out
}

pub fn csv_name(s: &Scenario, set: &CurveSet, curve: &Curve) -> String {
    match (&s.series, set.series_value) {
        (Some((axis, _)), Some(v)) => format!("{}_{}{}_{}.csv", s.name, axis.name(), v, curve.label()),
        _ => format!("{}_{}.csv", s.name, curve.label()),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), RunError> {
    fs::write(path, text).map_err(|source| RunError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Evaluates the scenario and writes one CSV per curve plus
/// `<name>_manifest.json` into `out_dir`. Nothing is written if the
/// evaluation fails.
pub fn run_scenario(s: &Scenario, out_dir: &Path, flags: &RunFlags) -> Result<RunManifest, RunError> {
    let sets = evaluate(s, flags)?;
    fs::create_dir_all(out_dir).map_err(|source| RunError::Io {
        path: out_dir.display().to_string(),
        source,
    })?;
    let mut files = Vec::new();
    for set in &sets {
        for (curve, rows) in &set.curves {
            let name = csv_name(s, set, curve);
            write_file(&out_dir.join(&name), &render_csv(curve, rows))?;
            files.push(name);
        }
    }
    let manifest_name = format!("{}_manifest.json", s.name);
    let c = &s.system;
    let manifest = RunManifest {
        scenario: s.name.clone(),
        config_hash: config_hash(s),
        seed: flags.seed.unwrap_or(s.seed),
        trials: flags.trials.unwrap_or(s.trials),
        laguerre_order: c.laguerre_order,
        chebyshev_order: c.chebyshev_order,
        guard_form: format!("{:?}", c.guard_form).to_lowercase(),
        laguerre_form: format!("{:?}", c.laguerre_form).to_lowercase(),
        metric: s.metric.name().into(),
        sweep_axis: s.axis.name().into(),
        ris_noise: format!("{:?}", s.noise).to_lowercase(),
        budget_match: s.budget_match,
        analytic: flags.mode.analytic(),
        monte_carlo: flags.mode.mc(),
        power_model: PowerRecord::from(&s.power),
        version: version_string(),
        timestamp: chrono::Utc::now().to_rfc3339(),
        canonical_config: s.canonical(),
        files: files.clone(),
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write_file(&out_dir.join(&manifest_name), &(json + "\n"))?;
    let mut manifest = manifest;
    manifest.files.push(manifest_name);
    Ok(manifest)
}

pub fn output_paths(dir: &Path, m: &RunManifest) -> Vec<PathBuf> {
    m.files.iter().map(|f| dir.join(f)).collect()
}
