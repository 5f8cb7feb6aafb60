//! Monte Carlo estimation of outage probabilities and ergodic rates from
//! simulated channel draws and the instantaneous SINR model.
//!
//! One pass evaluates every surface/SIC variant and user on the same draws
//! (common random numbers). Trials are split into fixed-size chunks, each
//! with its own ChaCha sub-stream, and chunk results are reduced in chunk
//! order, so estimates do not depend on the worker count.

use rand::Rng;
use rand_distr::Distribution;
use rayon::prelude::*;

use crate::analytic::ClosedFormContext;
use crate::channel::{stream_rng, unit_gamma, CascadeDraw, CascadeLink};
use crate::error::{Error, Result};
use crate::system::{
    dbm_to_watts, sinr_f, sinr_g, sinr_g_to_f, sinr_o, NoiseNorm, Sic, Surface, SystemConfig,
    User, Variant,
};

/// Smallest trial count accepted by the estimators.
pub const MIN_TRIALS: usize = 10_000;
/// Default trials per point.
pub const DEFAULT_TRIALS: usize = 1_000_000;
const CHUNK: usize = 8192;

/// How the RIS-noise norm enters the simulated SINRs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RisNoiseMode {
    /// Constant mean `L ω_ru`, as assumed by the closed forms.
    #[default]
    Mean,
    /// Per-trial drawn norm.
    Drawn,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McOptions {
    pub trials: usize,
    pub seed: u64,
    pub noise: RisNoiseMode,
}

impl McOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self {
            trials,
            seed,
            noise: RisNoiseMode::Mean,
        }
    }
}

/// A Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Outage,
    ErgodicRate,
}

impl Metric {
    pub fn label(self) -> &'static str {
        match self {
            Metric::Outage => "outage",
            Metric::ErgodicRate => "rate",
        }
    }
}

/// Per-variant accumulators: outage counts, rate sums and squared sums.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct Tally {
    outages: u64,
    rate_sum: f64,
    rate_sq: f64,
}

impl Tally {
    fn record(&mut self, outage: bool, sinr: f64) {
        self.outages += outage as u64;
        let r = sinr.ln_1p() / std::f64::consts::LN_2;
        self.rate_sum += r;
        self.rate_sq += r * r;
    }

    fn merge(&mut self, other: &Tally) {
        self.outages += other.outages;
        self.rate_sum += other.rate_sum;
        self.rate_sq += other.rate_sq;
    }
}

/// Slot of `(surface, sic, user)` in the tally array.
fn slot(variant: Variant, user: User) -> usize {
    let s = match variant.surface {
        Surface::Active => 0,
        Surface::Passive => 1,
    };
    let c = match variant.sic {
        Sic::Perfect => 0,
        Sic::Imperfect => 1,
    };
    let u = match user {
        User::G => 0,
        User::F => 1,
        User::O => 2,
    };
    (s * 2 + c) * 3 + u
}

const SLOTS: usize = 12;

/// Results of one simulated configuration for every variant and user.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSummary {
    tallies: [Tally; SLOTS],
    pub trials: usize,
    pub seed: u64,
}

impl PointSummary {
    pub fn estimate(&self, user: User, variant: Variant, metric: Metric) -> McEstimate {
        let t = &self.tallies[slot(variant, user)];
        let n = self.trials as f64;
        let (value, std_error) = match metric {
            Metric::Outage => {
                let p = t.outages as f64 / n;
                (p, (p * (1.0 - p) / n).sqrt())
            }
            Metric::ErgodicRate => {
                let mean = t.rate_sum / n;
                let var = ((t.rate_sq - n * mean * mean) / (n - 1.0)).max(0.0);
                (mean, (var / n).sqrt())
            }
        };
        McEstimate {
            value,
            std_error,
            trials: self.trials,
            seed: self.seed,
        }
    }
}

/// Channel samplers for the ordered NOMA users and the OMA user.
struct Samplers {
    /// One shared pool when `m_g == m_f`, else one pool per NOMA user.
    shared: bool,
    pool_g: CascadeLink,
    pool_f: CascadeLink,
    oma: CascadeLink,
    residual: rand_distr::Gamma<f64>,
}

impl Samplers {
    fn new(cfg: &SystemConfig) -> Result<Self> {
        Ok(Self {
            shared: cfg.m_g == cfg.m_f,
            pool_g: CascadeLink::new(&cfg.fading(User::G))?,
            pool_f: CascadeLink::new(&cfg.fading(User::F))?,
            oma: CascadeLink::new(&cfg.fading(User::O))?,
            residual: unit_gamma(cfg.residual_shape())?,
        })
    }

    fn fill<R: Rng>(&self, link: &CascadeLink, users: usize, rng: &mut R, buf: &mut Vec<CascadeDraw>) {
        buf.clear();
        buf.extend((0..users).map(|_| link.sample(rng)));
        buf.sort_by(|a, b| a.amplitude.total_cmp(&b.amplitude));
    }
}

/// Per-surface/SIC configurations and thresholds used in the trial loop.
struct TrialModel {
    configs: [(Variant, SystemConfig); 4],
    th_g: f64,
    th_f: f64,
    th_o: f64,
    users: usize,
    rank_g: usize,
    rank_f: usize,
    noise: RisNoiseMode,
}

impl TrialModel {
    fn new(cfg: &SystemConfig, noise: RisNoiseMode) -> Self {
        let (th_g, th_f) = cfg.thresholds();
        Self {
            configs: Variant::ALL.map(|v| (v, cfg.with_variant(v))),
            th_g,
            th_f,
            th_o: cfg.gamma_th_o,
            users: cfg.users,
            rank_g: cfg.rank_g,
            rank_f: cfg.rank_f,
            noise,
        }
    }

    fn norm(&self, d: &CascadeDraw) -> NoiseNorm {
        match self.noise {
            RisNoiseMode::Mean => NoiseNorm::Mean,
            RisNoiseMode::Drawn => NoiseNorm::Drawn(d.user_hop_energy),
        }
    }

    fn run_chunk(&self, samplers: &Samplers, seed: u64, stream: u64, trials: usize) -> [Tally; SLOTS] {
        let mut rng = stream_rng(seed, stream);
        let mut tallies = [Tally::default(); SLOTS];
        let mut pool = Vec::with_capacity(self.users);
        let mut pool_f = Vec::with_capacity(self.users);
        for _ in 0..trials {
            samplers.fill(&samplers.pool_g, self.users, &mut rng, &mut pool);
            let near = pool[self.rank_g - 1];
            let far = if samplers.shared {
                pool[self.rank_f - 1]
            } else {
                samplers.fill(&samplers.pool_f, self.users, &mut rng, &mut pool_f);
                pool_f[self.rank_f - 1]
            };
            let oma = samplers.oma.sample(&mut rng);
            let x = samplers.residual.sample(&mut rng);

            for (variant, c) in &self.configs {
                let to_f = sinr_g_to_f(c, near.amplitude, self.norm(&near)).sinr;
                let own = sinr_g(c, near.amplitude, x, self.norm(&near)).sinr;
                let g_out = to_f < self.th_f || own < self.th_g;
                tallies[slot(*variant, User::G)].record(g_out, own);

                let sf = sinr_f(c, far.amplitude, self.norm(&far)).sinr;
                tallies[slot(*variant, User::F)].record(sf < self.th_f, sf);

                let so = sinr_o(c, oma.amplitude, self.norm(&oma)).sinr;
                tallies[slot(*variant, User::O)].record(so < self.th_o, so);
            }
        }
        tallies
    }
}

/// Simulates `cfg` for every variant and user on common draws. `point`
/// selects an independent family of sub-streams, so sweep points sharing a
/// base seed stay independent.
pub fn simulate_point(cfg: &SystemConfig, opts: &McOptions, point: u32) -> Result<PointSummary> {
    cfg.validate()?;
    if opts.trials < MIN_TRIALS {
        return Err(Error::Config(format!(
            "at least {MIN_TRIALS} trials are required, got {}",
            opts.trials
        )));
    }
    let samplers = Samplers::new(cfg)?;
    let model = TrialModel::new(cfg, opts.noise);
    let chunks = opts.trials.div_ceil(CHUNK);
    let parts: Vec<[Tally; SLOTS]> = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let n = CHUNK.min(opts.trials - i * CHUNK);
            let stream = ((point as u64) << 32) | i as u64;
            model.run_chunk(&samplers, opts.seed, stream, n)
        })
        .collect();
    let mut tallies = [Tally::default(); SLOTS];
    for part in &parts {
        for (t, p) in tallies.iter_mut().zip(part) {
            t.merge(p);
        }
    }
    Ok(PointSummary {
        tallies,
        trials: opts.trials,
        seed: opts.seed,
    })
}

/// Estimated outage probability of `user`. For user g the outage event is
/// failing either to decode `x_f` or, after SIC, its own signal.
pub fn mc_outage(cfg: &SystemConfig, user: User, variant: Variant, trials: usize, seed: u64) -> Result<McEstimate> {
    let s = simulate_point(cfg, &McOptions::new(trials, seed), 0)?;
    Ok(s.estimate(user, variant, Metric::Outage))
}

/// Estimated ergodic rate `E[log2(1 + γ)]` of `user`.
pub fn mc_ergodic_rate(
    cfg: &SystemConfig,
    user: User,
    variant: Variant,
    trials: usize,
    seed: u64,
) -> Result<McEstimate> {
    let s = simulate_point(cfg, &McOptions::new(trials, seed), 0)?;
    Ok(s.estimate(user, variant, Metric::ErgodicRate))
}

/// Parameter swept along a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// BS transmit power in dBm.
    TransmitPower,
    /// RIS element count.
    Elements,
    /// Amplification factor.
    Beta,
    /// Common Nakagami shape of every link.
    Shape,
    /// Common impairment level.
    Kappa,
    /// BS–RIS distance in meters.
    DistanceBr,
}

impl Axis {
    pub const ALL: [Axis; 6] = [
        Axis::TransmitPower,
        Axis::Elements,
        Axis::Beta,
        Axis::Shape,
        Axis::Kappa,
        Axis::DistanceBr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axis::TransmitPower => "p_b_dbm",
            Axis::Elements => "elements",
            Axis::Beta => "beta",
            Axis::Shape => "m",
            Axis::Kappa => "kappa",
            Axis::DistanceBr => "d_br_m",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == name)
            .ok_or_else(|| {
                let known: Vec<_> = Self::ALL.iter().map(|a| a.name()).collect();
                Error::Config(format!("unknown sweep axis '{name}', expected one of {}", known.join(", ")))
            })
    }

    /// Copy of `cfg` with the axis set to `x`.
    pub fn apply(self, cfg: &SystemConfig, x: f64) -> Result<SystemConfig> {
        let mut c = cfg.clone();
        match self {
            Axis::TransmitPower => c.p_b = dbm_to_watts(x),
            Axis::Elements => {
                if x < 1.0 || x.fract() != 0.0 {
                    return Err(Error::Config(format!("element count must be a positive integer, got {x}")));
                }
                c.elements = x as usize;
            }
            Axis::Beta => c.beta = x,
            Axis::Shape => c.set_all_shapes(x),
            Axis::Kappa => c.set_all_kappas(x),
            Axis::DistanceBr => c.d_br = x,
        }
        c.validate()?;
        Ok(c)
    }
}

/// Checks that a sweep grid is nonempty and strictly increasing.
pub fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Config("sweep grid is empty".into()));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Config("sweep grid must be strictly increasing".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub x: f64,
    pub analytic: f64,
    pub estimate: McEstimate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis: Axis,
    pub user: User,
    pub variant: Variant,
    pub metric: Metric,
    pub points: Vec<SweepPoint>,
}

/// Simulates `user`/`variant` along `grid`, pairing each estimate with the
/// closed-form value. Point `i` uses sub-stream family `i` of the seed.
pub fn mc_sweep(
    cfg: &SystemConfig,
    axis: Axis,
    grid: &[f64],
    user: User,
    variant: Variant,
    metric: Metric,
    opts: &McOptions,
) -> Result<SweepResult> {
    check_grid(grid)?;
    let mut points = Vec::with_capacity(grid.len());
    for (i, &x) in grid.iter().enumerate() {
        let c = axis.apply(cfg, x)?;
        let summary = simulate_point(&c, opts, i as u32)?;
        let ctx = ClosedFormContext::for_variant(&c, variant)?;
        let analytic = match metric {
            Metric::Outage => ctx.outage(user, variant),
            Metric::ErgodicRate => ctx.ergodic_rate(user, variant),
        };
        points.push(SweepPoint {
            x,
            analytic,
            estimate: summary.estimate(user, variant, metric),
        });
    }
    Ok(SweepResult {
        axis,
        user,
        variant,
        metric,
        points,
    })
}
