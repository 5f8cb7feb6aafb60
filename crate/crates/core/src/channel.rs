//! Cascaded BS → RIS → user link statistics.
//!
//! With coherent phase alignment the cascade amplitude is
//! `Y = Σ_l |h_br^l| |h_ru^l|`, a sum of `L` i.i.d. products of two unit-power
//! Nakagami variables. Its CDF is approximated by a Gamma law whose first two
//! moments match those of `Y`; the sorted-user CDFs follow from the usual
//! order-statistics expansion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{Error, Result};
use crate::numerics::{binomial, ln_gamma_unchecked, regularized_gamma_p_unchecked, stable_sum};

/// Largest user count accepted by the alternating order-statistics sums.
pub const MAX_USERS: usize = 20;

/// Nakagami shapes of the two hops and the element count of one cascade.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingParams {
    /// Shape of the BS → RIS hops.
    pub m_r: f64,
    /// Shape of the RIS → user hops.
    pub m_u: f64,
    pub elements: usize,
}

impl FadingParams {
    pub fn new(m_r: f64, m_u: f64, elements: usize) -> Result<Self> {
        let fp = Self { m_r, m_u, elements };
        fp.validate()?;
        Ok(fp)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, m) in [("m_r", self.m_r), ("m_u", self.m_u)] {
            if !(m >= 0.5) || !m.is_finite() {
                return Err(Error::Config(format!("Nakagami shape {name} must be >= 0.5, got {m}")));
            }
        }
        if self.elements == 0 {
            return Err(Error::Config("element count L must be at least 1".into()));
        }
        Ok(())
    }
}

/// Moment-matched Gamma approximation of the cascade amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeStats {
    /// Mean of one product term `|h_br^l h_ru^l|`.
    pub mu: f64,
    /// Variance of one product term.
    pub omega: f64,
    /// Gamma shape minus one, `Lμ²/Ω − 1`.
    pub b: f64,
    /// Gamma scale, `Ω/μ`.
    pub c: f64,
}

impl CascadeStats {
    /// Gamma shape `b + 1` of the approximating law.
    pub fn shape(&self) -> f64 {
        self.b + 1.0
    }
}

/// `E|a|` for a unit-power Nakagami(m) amplitude, times `√m`:
/// `Γ(m + ½) / Γ(m)`.
fn half_moment_ratio(m: f64) -> f64 {
    (ln_gamma_unchecked(m + 0.5) - ln_gamma_unchecked(m)).exp()
}

pub fn cascade_stats(fp: &FadingParams) -> CascadeStats {
    let ratio = half_moment_ratio(fp.m_r) * half_moment_ratio(fp.m_u);
    let mu = ratio / (fp.m_r * fp.m_u).sqrt();
    // E[Y_l²] = 1 for unit-power hops, so the variance is 1 − μ².
    let omega = 1.0 - ratio * ratio / (fp.m_r * fp.m_u);
    let l = fp.elements as f64;
    CascadeStats {
        mu,
        omega,
        b: l * mu * mu / omega - 1.0,
        c: omega / mu,
    }
}

/// Selected user rank among `users` sorted ascending by cascade gain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderSpec {
    pub users: usize,
    pub rank: usize,
}

impl OrderSpec {
    pub fn new(users: usize, rank: usize) -> Result<Self> {
        if users == 0 || users > MAX_USERS {
            return Err(Error::Config(format!(
                "user count K must be in 1..={MAX_USERS}, got {users}"
            )));
        }
        if rank == 0 || rank > users {
            return Err(Error::Config(format!("rank {rank} outside 1..={users}")));
        }
        Ok(Self { users, rank })
    }

    /// The unsorted case, a single user.
    pub fn single() -> Self {
        Self { users: 1, rank: 1 }
    }

    /// `Ψ = K! / ((K − rank)! (rank − 1)!)`.
    pub fn psi(&self) -> f64 {
        let ln = ln_gamma_unchecked(self.users as f64 + 1.0)
            - ln_gamma_unchecked((self.users - self.rank) as f64 + 1.0)
            - ln_gamma_unchecked(self.rank as f64);
        ln.exp().round()
    }

    /// CDF of the rank-th smallest of K i.i.d. variables whose common CDF
    /// value is `p`:
    /// `Ψ Σ_{k=0}^{K−rank} C(K−rank, k) (−1)^k / (rank + k) · p^{rank+k}`.
    pub fn cdf_from_marginal(&self, p: f64) -> f64 {
        if p <= 0.0 {
            return 0.0;
        }
        if p >= 1.0 {
            return 1.0;
        }
        let span = self.users - self.rank;
        if span == 0 {
            return p.powi(self.rank as i32);
        }
        let mut terms: Vec<f64> = (0..=span)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let order = (self.rank + k) as i32;
                sign * binomial(span, k) / order as f64 * p.powi(order)
            })
            .collect();
        (self.psi() * stable_sum(&mut terms)).clamp(0.0, 1.0)
    }

    /// Applies the same expansion to an arbitrary marginal term
    /// `q(order)`, where `q(n)` stands for `p^n` (possibly already
    /// integrated against another variable).
    pub fn expand<F: FnMut(usize) -> f64>(&self, mut q: F) -> f64 {
        let span = self.users - self.rank;
        let mut terms: Vec<f64> = (0..=span)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let order = self.rank + k;
                sign * binomial(span, k) / order as f64 * q(order)
            })
            .collect();
        self.psi() * stable_sum(&mut terms)
    }
}

fn check_amplitude(y: f64) -> Result<()> {
    if y.is_nan() || y < 0.0 {
        return Err(Error::Domain(format!("cascade amplitude must be >= 0, got {y}")));
    }
    Ok(())
}

pub(crate) fn unsorted_cdf_unchecked(stats: &CascadeStats, y: f64) -> f64 {
    regularized_gamma_p_unchecked(stats.shape(), y / stats.c)
}

/// Gamma-approximated CDF of the unsorted cascade amplitude,
/// `γ(b + 1, y/c) / Γ(b + 1)`.
pub fn unsorted_cascade_cdf(stats: &CascadeStats, y: f64) -> Result<f64> {
    check_amplitude(y)?;
    Ok(unsorted_cdf_unchecked(stats, y))
}

/// CDF of the rank-th weakest of K users' cascade amplitudes.
pub fn sorted_cascade_cdf(stats: &CascadeStats, spec: &OrderSpec, y: f64) -> Result<f64> {
    check_amplitude(y)?;
    let spec = OrderSpec::new(spec.users, spec.rank)?;
    Ok(spec.cdf_from_marginal(unsorted_cdf_unchecked(stats, y)))
}

/// One user's realized cascade.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CascadeDraw {
    /// `Σ_l a_l b_l`, the phase-aligned cascade amplitude.
    pub amplitude: f64,
    /// `Σ_l b_l²`, the small-scale energy of the RIS → user hop, which
    /// scales the RIS thermal noise seen by the user.
    pub user_hop_energy: f64,
}

/// One Monte Carlo realization for K users plus the residual-interference
/// power of imperfect SIC.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ChannelDraw {
    pub users: Vec<CascadeDraw>,
    /// Unit-mean residual power `|h_I|²`.
    pub residual: f64,
}

/// Unit-power Nakagami amplitude sampler, drawn as the square root of a
/// Gamma(m, 1/m) power.
#[derive(Debug, Clone, Copy)]
pub struct Nakagami {
    power: Gamma<f64>,
}

impl Nakagami {
    pub fn new(m: f64) -> Result<Self> {
        if !(m >= 0.5) || !m.is_finite() {
            return Err(Error::Config(format!("Nakagami shape must be >= 0.5, got {m}")));
        }
        Ok(Self { power: unit_gamma(m)? })
    }

    pub fn sample_power<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.power.sample(rng)
    }
}

impl Distribution<f64> for Nakagami {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.power.sample(rng).sqrt()
    }
}

/// Gamma(shape, rate = shape), i.e. unit mean.
pub(crate) fn unit_gamma(shape: f64) -> Result<Gamma<f64>> {
    Gamma::new(shape, 1.0 / shape)
        .map_err(|e| Error::Config(format!("invalid Gamma shape {shape}: {e}")))
}

/// Sampler for one phase-aligned cascade link.
#[derive(Debug, Clone, Copy)]
pub struct CascadeLink {
    bs_hop: Nakagami,
    user_hop: Nakagami,
    elements: usize,
}

impl CascadeLink {
    pub fn new(fp: &FadingParams) -> Result<Self> {
        fp.validate()?;
        Ok(Self {
            bs_hop: Nakagami::new(fp.m_r)?,
            user_hop: Nakagami::new(fp.m_u)?,
            elements: fp.elements,
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> CascadeDraw {
        let mut draw = CascadeDraw::default();
        for _ in 0..self.elements {
            let a = self.bs_hop.sample(rng);
            let b2 = self.user_hop.sample_power(rng);
            draw.amplitude += a * b2.sqrt();
            draw.user_hop_energy += b2;
        }
        draw
    }
}

/// Reproducible random stream: ChaCha8 keyed by `seed`, with an independent
/// sub-stream per `stream` index.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws per-user cascades and the residual-interference power.
#[derive(Debug, Clone)]
pub struct CascadeSampler {
    links: Vec<CascadeLink>,
    residual: Gamma<f64>,
}

impl CascadeSampler {
    /// All users must share `L` and `m_r`; `residual_shape` is the Gamma
    /// shape `m_I` of the unit-mean residual power.
    pub fn new(fp_per_user: &[FadingParams], residual_shape: f64) -> Result<Self> {
        let first = fp_per_user
            .first()
            .ok_or_else(|| Error::Config("at least one user is required".into()))?;
        for fp in fp_per_user {
            if fp.elements != first.elements {
                return Err(Error::Config(format!(
                    "inconsistent element counts across users: {} vs {}",
                    fp.elements, first.elements
                )));
            }
            if fp.m_r != first.m_r {
                return Err(Error::Config(format!(
                    "inconsistent BS-RIS shapes across users: {} vs {}",
                    fp.m_r, first.m_r
                )));
            }
        }
        if !(residual_shape > 0.0) {
            return Err(Error::Config(format!(
                "residual shape m_I must be positive, got {residual_shape}"
            )));
        }
        let links = fp_per_user.iter().map(CascadeLink::new).collect::<Result<_>>()?;
        Ok(Self {
            links,
            residual: unit_gamma(residual_shape)?,
        })
    }

    pub fn users(&self) -> usize {
        self.links.len()
    }

    /// Refills `draw` in place, reusing its allocation.
    pub fn draw_into<R: Rng + ?Sized>(&self, rng: &mut R, draw: &mut ChannelDraw) {
        draw.users.clear();
        draw.users.extend(self.links.iter().map(|link| link.sample(rng)));
        draw.residual = self.residual.sample(rng);
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> ChannelDraw {
        let mut d = ChannelDraw::default();
        self.draw_into(rng, &mut d);
        d
    }
}

/// Reproducible stream of `trials` channel draws.
pub fn sample_cascade_set(
    fp_per_user: &[FadingParams],
    residual_shape: f64,
    rng_seed: u64,
    trials: usize,
) -> Result<impl Iterator<Item = ChannelDraw>> {
    let sampler = CascadeSampler::new(fp_per_user, residual_shape)?;
    let mut rng = stream_rng(rng_seed, 0);
    Ok((0..trials).map(move |_| sampler.draw(&mut rng)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rayleigh_cascade_moments() {
        let s = cascade_stats(&FadingParams::new(1.0, 1.0, 3).unwrap());
        assert!((s.mu - PI / 4.0).abs() < 1e-14);
        assert!((s.omega - (1.0 - PI * PI / 16.0)).abs() < 1e-14);
        let s2 = cascade_stats(&FadingParams::new(1.0, 1.0, 2).unwrap());
        let expected_b = 2.0 * (PI / 4.0).powi(2) / (1.0 - PI * PI / 16.0) - 1.0;
        assert!((s2.b - expected_b).abs() < 1e-12);
        assert!((s2.b - 2.219_891_5).abs() < 1e-6);
    }

    #[test]
    fn fading_vanishes_for_large_shapes() {
        let s = cascade_stats(&FadingParams::new(1e6, 1e6, 4).unwrap());
        assert!((s.mu - 1.0).abs() < 1e-6);
        assert!(s.omega.abs() < 1e-6);
        for &m in &[0.5, 0.7, 1.0, 2.0, 5.0] {
            let s = cascade_stats(&FadingParams::new(m, m, 1).unwrap());
            assert!(s.mu > 0.0 && s.mu < 1.0);
            assert!(s.omega > 0.0 && s.omega < 1.0);
            assert!(s.c > 0.0 && s.shape() > 0.0);
        }
    }

    #[test]
    fn fading_params_validation() {
        assert!(FadingParams::new(0.4, 1.0, 2).is_err());
        assert!(FadingParams::new(1.0, 1.0, 0).is_err());
        assert!(FadingParams::new(0.5, 0.5, 1).is_ok());
    }

    #[test]
    fn psi_matches_factorials() {
        let fact = |n: usize| (1..=n).map(|i| i as f64).product::<f64>();
        for k in 1..=MAX_USERS {
            for r in 1..=k {
                let spec = OrderSpec::new(k, r).unwrap();
                assert_eq!(spec.psi(), fact(k) / (fact(k - r) * fact(r - 1)));
            }
        }
        assert!(OrderSpec::new(3, 0).is_err());
        assert!(OrderSpec::new(3, 4).is_err());
        assert!(OrderSpec::new(21, 1).is_err());
    }

    #[test]
    fn order_statistics_identities() {
        let s = cascade_stats(&FadingParams::new(0.5, 0.5, 5).unwrap());
        for &y in &[0.0, 0.3, 1.0, 2.5, 4.0, 9.0] {
            let p = unsorted_cascade_cdf(&s, y).unwrap();
            let single = sorted_cascade_cdf(&s, &OrderSpec::single(), y).unwrap();
            assert_eq!(single, p);
            let max = sorted_cascade_cdf(&s, &OrderSpec::new(3, 3).unwrap(), y).unwrap();
            assert!((max - p.powi(3)).abs() < 1e-15);
        }
    }

    #[test]
    fn order_cdf_agrees_with_binomial_tail() {
        // F_(r)(y) = Σ_{j=r}^{K} C(K, j) p^j (1 − p)^{K−j}, a positive sum.
        for k in 1..=12 {
            for r in 1..=k {
                let spec = OrderSpec::new(k, r).unwrap();
                for &p in &[1e-3_f64, 0.1, 0.37, 0.5, 0.8, 0.99] {
                    let tail: f64 = (r..=k)
                        .map(|j| binomial(k, j) * p.powi(j as i32) * (1.0 - p).powi((k - j) as i32))
                        .sum();
                    let v = spec.cdf_from_marginal(p);
                    assert!((v - tail).abs() < 1e-10, "K={k} r={r} p={p}: {v} vs {tail}");
                }
            }
        }
    }

    #[test]
    fn cdfs_reject_negative_amplitudes() {
        let s = cascade_stats(&FadingParams::new(1.0, 1.0, 2).unwrap());
        assert!(unsorted_cascade_cdf(&s, -0.1).is_err());
        assert!(sorted_cascade_cdf(&s, &OrderSpec { users: 3, rank: 4 }, 1.0).is_err());
        assert_eq!(unsorted_cascade_cdf(&s, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn sampler_rejects_inconsistent_users() {
        let a = FadingParams::new(1.0, 1.0, 4).unwrap();
        let b = FadingParams::new(1.0, 2.0, 5).unwrap();
        assert!(matches!(CascadeSampler::new(&[a, b], 1.0), Err(Error::Config(_))));
        let c = FadingParams::new(2.0, 1.0, 4).unwrap();
        assert!(CascadeSampler::new(&[a, c], 1.0).is_err());
        assert!(CascadeSampler::new(&[], 1.0).is_err());
    }

    #[test]
    fn identical_seeds_give_identical_streams() {
        let fp = FadingParams::new(0.7, 0.7, 3).unwrap();
        let a: Vec<_> = sample_cascade_set(&[fp, fp], 0.7, 42, 100).unwrap().collect();
        let b: Vec<_> = sample_cascade_set(&[fp, fp], 0.7, 42, 100).unwrap().collect();
        assert_eq!(a, b);
        let c: Vec<_> = sample_cascade_set(&[fp, fp], 0.7, 43, 100).unwrap().collect();
        assert_ne!(a, c);
    }
}
