//! Flat `key = value` scenario files.
//!
//! Blank lines and `#` comments are ignored. Units live in key names
//! (`p_b_dbm`, `d_br_m`, `rate_g_bpcu`, `p_bs_w`). Lists are comma
//! separated; numeric grids also accept `start:step:stop`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use risnoma_core::montecarlo::{check_grid, DEFAULT_TRIALS};
use risnoma_core::system::rate_to_threshold;
use risnoma_core::{
    dbm_to_watts, Axis, GuardForm, LaguerreForm, PowerModel, RisNoiseMode, Sic, Surface, SystemConfig,
    ThroughputMode, User, Variant,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{source_name}:{line}:{column}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{source_name}:{line}: field '{key}': {message}")]
    Field {
        source_name: String,
        key: String,
        line: usize,
        message: String,
    },

    #[error("invalid scenario: {0}")]
    Invalid(#[from] risnoma_core::Error),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// One `key = value` line with its position.
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub source_name: String,
    pub line: usize,
    pub value_column: usize,
}

/// Parses the text of one config file. Duplicate keys are rejected.
pub fn parse_entries(text: &str, source_name: &str) -> Result<Vec<Entry>, ConfigError> {
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let err = |column: usize, message: String| ConfigError::Parse {
            source_name: source_name.to_string(),
            line,
            column,
            message,
        };
        let eq = content
            .find('=')
            .ok_or_else(|| err(1 + leading_ws(content), "expected 'key = value'".into()))?;
        let key = content[..eq].trim();
        if key.is_empty() {
            return Err(err(1 + leading_ws(content), "missing key before '='".into()));
        }
        if let Some(bad) = key.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')) {
            return Err(err(
                1 + leading_ws(content) + bad,
                format!("invalid character in key '{key}'"),
            ));
        }
        let rest = &content[eq + 1..];
        let value = rest.trim();
        let value_column = eq + 2 + leading_ws(rest);
        if value.is_empty() {
            return Err(err(value_column, format!("missing value for '{key}'")));
        }
        if let Some(prev) = seen.insert(key.to_string(), line) {
            return Err(err(
                1 + leading_ws(content),
                format!("duplicate key '{key}' (first set on line {prev})"),
            ));
        }
        out.push(Entry {
            key: key.to_string(),
            value: value.to_string(),
            source_name: source_name.to_string(),
            line,
            value_column,
        });
    }
    Ok(out)
}

fn leading_ws(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

/// Quantity tabulated along the sweep axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveMetric {
    Outage,
    Rate,
    Throughput(ThroughputMode),
    EnergyEfficiency(ThroughputMode),
}

impl CurveMetric {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "outage" => CurveMetric::Outage,
            "rate" => CurveMetric::Rate,
            "throughput_dl" => CurveMetric::Throughput(ThroughputMode::DelayLimited),
            "throughput_dt" => CurveMetric::Throughput(ThroughputMode::DelayTolerant),
            "ee_dl" => CurveMetric::EnergyEfficiency(ThroughputMode::DelayLimited),
            "ee_dt" => CurveMetric::EnergyEfficiency(ThroughputMode::DelayTolerant),
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveMetric::Outage => "outage",
            CurveMetric::Rate => "rate",
            CurveMetric::Throughput(ThroughputMode::DelayLimited) => "throughput_dl",
            CurveMetric::Throughput(ThroughputMode::DelayTolerant) => "throughput_dt",
            CurveMetric::EnergyEfficiency(ThroughputMode::DelayLimited) => "ee_dl",
            CurveMetric::EnergyEfficiency(ThroughputMode::DelayTolerant) => "ee_dt",
        }
    }

    /// Per-user metrics take `g`, `f`, `o` targets; system metrics take
    /// `noma` and `oma`.
    pub fn per_user(self) -> bool {
        matches!(self, CurveMetric::Outage | CurveMetric::Rate)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    User(User),
    Noma,
    Oma,
}

impl Target {
    pub fn label(self) -> &'static str {
        match self {
            Target::User(u) => u.label(),
            Target::Noma => "noma",
            Target::Oma => "oma",
        }
    }
}

/// One output curve: a target under one surface/SIC variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Curve {
    pub target: Target,
    pub variant: Variant,
}

impl Curve {
    /// Parses `target:surface[-sic]`, e.g. `g:aris-ipsic` or `f:pris`.
    /// The SIC flag defaults to perfect.
    pub fn parse(s: &str) -> Option<Self> {
        let (t, v) = s.split_once(':')?;
        let target = match t.trim() {
            "g" => Target::User(User::G),
            "f" => Target::User(User::F),
            "o" => Target::User(User::O),
            "noma" => Target::Noma,
            "oma" => Target::Oma,
            _ => return None,
        };
        let v = v.trim();
        let (surface, sic) = match v.split_once('-') {
            Some((a, b)) => (a, Some(b)),
            None => (v, None),
        };
        let surface = match surface {
            "aris" => Surface::Active,
            "pris" => Surface::Passive,
            _ => return None,
        };
        let sic = match sic {
            None | Some("psic") => Sic::Perfect,
            Some("ipsic") => Sic::Imperfect,
            Some(_) => return None,
        };
        Some(Self {
            target,
            variant: Variant::new(surface, sic),
        })
    }

    pub fn label(&self) -> String {
        format!("{}_{}", self.target.label(), self.variant.label())
    }
}

/// A fully resolved scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub system: SystemConfig,
    pub power: PowerModel,
    pub metric: CurveMetric,
    pub axis: Axis,
    pub grid: Vec<f64>,
    /// Optional second parameter: one set of curves per value.
    pub series: Option<(Axis, Vec<f64>)>,
    pub curves: Vec<Curve>,
    pub trials: usize,
    pub seed: u64,
    pub noise: RisNoiseMode,
    /// Give active and passive curves the same total power budget.
    pub budget_match: bool,
}

/// Every accepted key with a one-line description, in canonical order.
pub const KEYS: &[(&str, &str)] = &[
    ("name", "scenario name, used as the output file prefix"),
    ("users", "users K in the NOMA cluster"),
    ("rank_g", "order-statistic rank of the near user"),
    ("rank_f", "order-statistic rank of the far user"),
    ("elements", "RIS elements L"),
    ("beta", "amplification factor of the active surface"),
    ("p_b_dbm", "BS transmit power"),
    ("a_g", "power allocation of the near user"),
    ("a_f", "power allocation of the far user"),
    ("kappa", "impairment level applied to every node"),
    ("kappa_b", "BS impairment level"),
    ("kappa_g", "near-user impairment level"),
    ("kappa_f", "far-user impairment level"),
    ("kappa_o", "OMA-user impairment level"),
    ("n_tn_dbm", "RIS thermal noise power"),
    ("sigma2_dbm", "receiver noise power"),
    ("d_br_m", "BS to RIS distance"),
    ("d_rg_m", "RIS to near user distance"),
    ("d_rf_m", "RIS to far user distance"),
    ("d_ro_m", "RIS to OMA user distance"),
    ("alpha", "path-loss exponent"),
    ("eta", "frequency-dependent path-loss factor"),
    ("m", "Nakagami shape of every link"),
    ("m_r", "BS to RIS Nakagami shape"),
    ("m_g", "RIS to near user Nakagami shape"),
    ("m_f", "RIS to far user Nakagami shape"),
    ("m_o", "RIS to OMA user Nakagami shape"),
    ("residual_scale", "mean residual interference power after imperfect SIC"),
    ("residual_shape", "Gamma shape of the residual power (default m_g)"),
    ("rate_g_bpcu", "near-user target rate"),
    ("rate_f_bpcu", "far-user target rate"),
    ("rate_o_bpcu", "OMA-user target rate"),
    ("laguerre_order", "Gauss-Laguerre order U"),
    ("chebyshev_order", "Gauss-Chebyshev order N"),
    ("guard_form", "near-user guard: linear or squared"),
    ("laguerre_form", "residual rule: generalized or plain"),
    ("metric", "outage, rate, throughput_dl, throughput_dt, ee_dl or ee_dt"),
    ("sweep_axis", "p_b_dbm, elements, beta, m, kappa or d_br_m"),
    ("sweep_grid", "increasing list or start:step:stop"),
    ("series_axis", "optional second axis, one curve set per value"),
    ("series_values", "values of the series axis"),
    ("curves", "comma list of target:surface[-sic], e.g. g:aris-ipsic, oma:pris"),
    ("trials", "Monte Carlo trials per point"),
    ("seed", "base seed"),
    ("ris_noise", "mean or drawn RIS-noise norm in the simulator"),
    ("budget_match", "true to equalize total power across surfaces"),
    ("nu", "power amplifier efficiency"),
    ("p_bs_w", "BS static power"),
    ("p_re_w", "static power per RIS element"),
    ("p_u_w", "static power per user"),
    ("p_sw_w", "switching power per RIS element"),
    ("p_dc_w", "DC bias power per active element"),
];

struct Reader<'a> {
    entries: BTreeMap<&'a str, &'a Entry>,
}

impl<'a> Reader<'a> {
    fn field_err(e: &Entry, message: impl Into<String>) -> ConfigError {
        ConfigError::Field {
            source_name: e.source_name.clone(),
            key: e.key.clone(),
            line: e.line,
            message: message.into(),
        }
    }

    fn get(&self, key: &str) -> Option<&'a Entry> {
        self.entries.get(key).copied()
    }

    fn f64(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        self.get(key)
            .map(|e| {
                let v: f64 = e
                    .value
                    .parse()
                    .map_err(|_| Self::field_err(e, format!("expected a number, got '{}'", e.value)))?;
                if !v.is_finite() {
                    return Err(Self::field_err(e, "value must be finite"));
                }
                Ok(v)
            })
            .transpose()
    }

    fn usize(&self, key: &str) -> Result<Option<usize>, ConfigError> {
        self.get(key)
            .map(|e| {
                e.value
                    .parse()
                    .map_err(|_| Self::field_err(e, format!("expected a nonnegative integer, got '{}'", e.value)))
            })
            .transpose()
    }

    fn u64(&self, key: &str) -> Result<Option<u64>, ConfigError> {
        self.get(key)
            .map(|e| {
                e.value
                    .parse()
                    .map_err(|_| Self::field_err(e, format!("expected a nonnegative integer, got '{}'", e.value)))
            })
            .transpose()
    }

    fn bool(&self, key: &str) -> Result<Option<bool>, ConfigError> {
        self.get(key)
            .map(|e| match e.value.as_str() {
                "true" | "yes" | "1" => Ok(true),
                "false" | "no" | "0" => Ok(false),
                other => Err(Self::field_err(e, format!("expected true or false, got '{other}'"))),
            })
            .transpose()
    }

    fn choice<T>(&self, key: &str, parse: impl Fn(&str) -> Option<T>, expected: &str) -> Result<Option<T>, ConfigError> {
        self.get(key)
            .map(|e| {
                parse(&e.value).ok_or_else(|| Self::field_err(e, format!("expected {expected}, got '{}'", e.value)))
            })
            .transpose()
    }

    fn grid(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        self.get(key)
            .map(|e| {
                let grid = parse_grid(&e.value).map_err(|m| Self::field_err(e, m))?;
                check_grid(&grid).map_err(|err| Self::field_err(e, err.to_string()))?;
                Ok(grid)
            })
            .transpose()
    }
}

/// Parses `a, b, c` or `start:step:stop` (stop included when hit).
pub fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("'{}' is not a number", t.trim()))
    };
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err("range must be start:step:stop".into());
        }
        let (start, step, stop) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0) {
            return Err("range step must be positive".into());
        }
        if stop < start {
            return Err("range stop must not be below start".into());
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        return Ok((0..=n).map(|i| start + i as f64 * step).collect());
    }
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(num)
        .collect()
}

impl Scenario {
    /// Resolves entries over the reference defaults. Later sources override
    /// earlier ones key by key.
    pub fn from_sources(sources: &[Vec<Entry>]) -> Result<Self, ConfigError> {
        let mut entries: BTreeMap<&str, &Entry> = BTreeMap::new();
        for src in sources {
            for e in src {
                entries.insert(e.key.as_str(), e);
            }
        }
        for e in entries.values() {
            if !KEYS.iter().any(|(k, _)| *k == e.key) {
                return Err(ConfigError::Parse {
                    source_name: e.source_name.clone(),
                    line: e.line,
                    column: 1,
                    message: format!("unknown key '{}'", e.key),
                });
            }
        }
        let r = Reader { entries };

        let mut c = SystemConfig::reference();
        if let Some(v) = r.usize("users")? {
            c.users = v;
        }
        if let Some(v) = r.usize("rank_g")? {
            c.rank_g = v;
        }
        if let Some(v) = r.usize("rank_f")? {
            c.rank_f = v;
        }
        if let Some(v) = r.usize("elements")? {
            c.elements = v;
        }
        if let Some(v) = r.f64("beta")? {
            c.beta = v;
        }
        if let Some(v) = r.f64("p_b_dbm")? {
            c.p_b = dbm_to_watts(v);
        }
        if let Some(v) = r.f64("a_g")? {
            c.a_g = v;
        }
        if let Some(v) = r.f64("a_f")? {
            c.a_f = v;
        }
        if let Some(v) = r.f64("kappa")? {
            c.set_all_kappas(v);
        }
        let fields: [(&str, &mut f64); 4] = [
            ("kappa_b", &mut c.kappa_b),
            ("kappa_g", &mut c.kappa_g),
            ("kappa_f", &mut c.kappa_f),
            ("kappa_o", &mut c.kappa_o),
        ];
        for (k, slot) in fields {
            if let Some(v) = r.f64(k)? {
                *slot = v;
            }
        }
        if let Some(v) = r.f64("n_tn_dbm")? {
            c.n_tn = dbm_to_watts(v);
        }
        if let Some(v) = r.f64("sigma2_dbm")? {
            c.sigma2 = dbm_to_watts(v);
        }
        let fields: [(&str, &mut f64); 6] = [
            ("d_br_m", &mut c.d_br),
            ("d_rg_m", &mut c.d_rg),
            ("d_rf_m", &mut c.d_rf),
            ("d_ro_m", &mut c.d_ro),
            ("alpha", &mut c.alpha),
            ("eta", &mut c.eta),
        ];
        for (k, slot) in fields {
            if let Some(v) = r.f64(k)? {
                *slot = v;
            }
        }
        if let Some(v) = r.f64("m")? {
            c.set_all_shapes(v);
        }
        let fields: [(&str, &mut f64); 5] = [
            ("m_r", &mut c.m_r),
            ("m_g", &mut c.m_g),
            ("m_f", &mut c.m_f),
            ("m_o", &mut c.m_o),
            ("residual_scale", &mut c.residual_scale),
        ];
        for (k, slot) in fields {
            if let Some(v) = r.f64(k)? {
                *slot = v;
            }
        }
        if let Some(v) = r.f64("residual_shape")? {
            c.residual_shape = Some(v);
        }
        if let Some(v) = r.f64("rate_g_bpcu")? {
            c.rate_g = v;
        }
        if let Some(v) = r.f64("rate_f_bpcu")? {
            c.rate_f = v;
        }
        if let Some(v) = r.f64("rate_o_bpcu")? {
            c.gamma_th_o = rate_to_threshold(v);
        }
        if let Some(v) = r.usize("laguerre_order")? {
            c.laguerre_order = v;
        }
        if let Some(v) = r.usize("chebyshev_order")? {
            c.chebyshev_order = v;
        }
        if let Some(v) = r.choice(
            "guard_form",
            |s| match s {
                "linear" => Some(GuardForm::Linear),
                "squared" => Some(GuardForm::Squared),
                _ => None,
            },
            "linear or squared",
        )? {
            c.guard_form = v;
        }
        if let Some(v) = r.choice(
            "laguerre_form",
            |s| match s {
                "generalized" => Some(LaguerreForm::Generalized),
                "plain" => Some(LaguerreForm::Plain),
                _ => None,
            },
            "generalized or plain",
        )? {
            c.laguerre_form = v;
        }
        c.validate()?;

        let mut power = PowerModel::default();
        let fields: [(&str, &mut f64); 6] = [
            ("nu", &mut power.nu),
            ("p_bs_w", &mut power.p_bs),
            ("p_re_w", &mut power.p_re),
            ("p_u_w", &mut power.p_u),
            ("p_sw_w", &mut power.p_sw),
            ("p_dc_w", &mut power.p_dc),
        ];
        for (k, slot) in fields {
            if let Some(v) = r.f64(k)? {
                *slot = v;
            }
        }
        power.validate()?;

        let metric = r
            .choice("metric", CurveMetric::parse, "outage, rate, throughput_dl, throughput_dt, ee_dl or ee_dt")?
            .unwrap_or(CurveMetric::Outage);
        let axis_names = "p_b_dbm, elements, beta, m, kappa or d_br_m";
        let axis = r
            .choice("sweep_axis", |s| Axis::parse(s).ok(), axis_names)?
            .unwrap_or(Axis::TransmitPower);
        let grid = r.grid("sweep_grid")?.unwrap_or_else(|| (0..7).map(|i| 5.0 * i as f64).collect());
        for &x in &grid {
            axis.apply(&c, x)?;
        }

        let series = match (r.get("series_axis"), r.get("series_values")) {
            (None, None) => None,
            (Some(a), Some(_)) => {
                let s_axis = Axis::parse(&a.value).map_err(|e| Reader::field_err(a, e.to_string()))?;
                if s_axis == axis {
                    return Err(Reader::field_err(a, "series axis must differ from the sweep axis"));
                }
                let values = r.grid("series_values")?.unwrap_or_default();
                for &v in &values {
                    s_axis.apply(&c, v)?;
                }
                Some((s_axis, values))
            }
            (Some(e), None) | (None, Some(e)) => {
                return Err(Reader::field_err(e, "series_axis and series_values must be given together"));
            }
        };

        let curves = match r.get("curves") {
            Some(e) => {
                let mut out = Vec::new();
                for item in e.value.split(',').filter(|t| !t.trim().is_empty()) {
                    let curve = Curve::parse(item.trim())
                        .ok_or_else(|| Reader::field_err(e, format!("cannot parse curve '{}'", item.trim())))?;
                    if matches!(curve.target, Target::User(_)) != metric.per_user() {
                        return Err(Reader::field_err(
                            e,
                            format!("curve '{}' does not fit metric {}", item.trim(), metric.name()),
                        ));
                    }
                    if out.contains(&curve) {
                        return Err(Reader::field_err(e, format!("curve '{}' listed twice", item.trim())));
                    }
                    out.push(curve);
                }
                if out.is_empty() {
                    return Err(Reader::field_err(e, "no curves listed"));
                }
                out
            }
            None => default_curves(metric),
        };

        let trials = r.usize("trials")?.unwrap_or(DEFAULT_TRIALS);
        let noise = r
            .choice(
                "ris_noise",
                |s| match s {
                    "mean" => Some(RisNoiseMode::Mean),
                    "drawn" => Some(RisNoiseMode::Drawn),
                    _ => None,
                },
                "mean or drawn",
            )?
            .unwrap_or_default();

        Ok(Self {
            name: r.get("name").map(|e| e.value.clone()).unwrap_or_else(|| "scenario".into()),
            system: c,
            power,
            metric,
            axis,
            grid,
            series,
            curves,
            trials,
            seed: r.u64("seed")?.unwrap_or(1),
            noise,
            budget_match: r.bool("budget_match")?.unwrap_or(false),
        })
    }

    pub fn from_text(text: &str, source_name: &str) -> Result<Self, ConfigError> {
        Self::from_sources(&[parse_entries(text, source_name)?])
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        Self::from_sources(&[read_entries(path)?])
    }

    /// Stable text form of every resolved field; the run hash is taken
    /// over this.
    pub fn canonical(&self) -> String {
        let c = &self.system;
        let p = &self.power;
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k}={v}");
        };
        kv("name", self.name.clone());
        kv("users", c.users.to_string());
        kv("rank_g", c.rank_g.to_string());
        kv("rank_f", c.rank_f.to_string());
        kv("elements", c.elements.to_string());
        kv("beta", c.beta.to_string());
        kv("p_b_w", c.p_b.to_string());
        kv("a_g", c.a_g.to_string());
        kv("a_f", c.a_f.to_string());
        kv("kappa_b", c.kappa_b.to_string());
        kv("kappa_g", c.kappa_g.to_string());
        kv("kappa_f", c.kappa_f.to_string());
        kv("kappa_o", c.kappa_o.to_string());
        kv("n_tn_w", c.n_tn.to_string());
        kv("sigma2_w", c.sigma2.to_string());
        kv("d_br_m", c.d_br.to_string());
        kv("d_rg_m", c.d_rg.to_string());
        kv("d_rf_m", c.d_rf.to_string());
        kv("d_ro_m", c.d_ro.to_string());
        kv("alpha", c.alpha.to_string());
        kv("eta", c.eta.to_string());
        kv("m_r", c.m_r.to_string());
        kv("m_g", c.m_g.to_string());
        kv("m_f", c.m_f.to_string());
        kv("m_o", c.m_o.to_string());
        kv("residual_scale", c.residual_scale.to_string());
        kv("residual_shape", c.residual_shape().to_string());
        kv("rate_g_bpcu", c.rate_g.to_string());
        kv("rate_f_bpcu", c.rate_f.to_string());
        kv("gamma_th_o", c.gamma_th_o.to_string());
        kv("laguerre_order", c.laguerre_order.to_string());
        kv("chebyshev_order", c.chebyshev_order.to_string());
        kv("guard_form", format!("{:?}", c.guard_form).to_lowercase());
        kv("laguerre_form", format!("{:?}", c.laguerre_form).to_lowercase());
        kv("metric", self.metric.name().into());
        kv("sweep_axis", self.axis.name().into());
        kv("sweep_grid", join(&self.grid));
        if let Some((a, v)) = &self.series {
            kv("series_axis", a.name().into());
            kv("series_values", join(v));
        }
        let curves: Vec<String> = self.curves.iter().map(|c| c.label()).collect();
        kv("curves", curves.join(","));
        kv("trials", self.trials.to_string());
        kv("seed", self.seed.to_string());
        kv("ris_noise", format!("{:?}", self.noise).to_lowercase());
        kv("budget_match", self.budget_match.to_string());
        kv("nu", p.nu.to_string());
        kv("p_bs_w", p.p_bs.to_string());
        kv("p_re_w", p.p_re.to_string());
        kv("p_u_w", p.p_u.to_string());
        kv("p_sw_w", p.p_sw.to_string());
        kv("p_dc_w", p.p_dc.to_string());
        s
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn read_entries(path: &Path) -> Result<Vec<Entry>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_entries(&text, &path.display().to_string())
}

fn default_curves(metric: CurveMetric) -> Vec<Curve> {
    let names: &[&str] = if metric.per_user() {
        &[
            "g:aris-ipsic",
            "g:aris-psic",
            "g:pris-ipsic",
            "g:pris-psic",
            "f:aris",
            "f:pris",
            "o:aris",
            "o:pris",
        ]
    } else {
        &[
            "noma:aris-ipsic",
            "noma:aris-psic",
            "noma:pris-ipsic",
            "noma:pris-psic",
            "oma:aris",
            "oma:pris",
        ]
    };
    names.iter().filter_map(|n| Curve::parse(n)).collect()
}
