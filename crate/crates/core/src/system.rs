//! System configuration and instantaneous SINR model for ARIS/PRIS-aided
//! NOMA (users `g`, `f`) and OMA (user `o`) downlinks with transceiver
//! hardware impairments.

use crate::channel::{FadingParams, OrderSpec, MAX_USERS};
use crate::error::{Error, Result};
use crate::numerics::{MAX_CHEBYSHEV_ORDER, MAX_LAGUERRE_ORDER};

/// Converts a power in dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Converts a power in watts to dBm.
pub fn watts_to_dbm(w: f64) -> f64 {
    10.0 * w.log10() + 30.0
}

/// Target SINR for a rate in bits per channel use, `2^R − 1`.
pub fn rate_to_threshold(rate: f64) -> f64 {
    rate.exp2() - 1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Surface {
    /// Active RIS: amplifies by `β` and injects its own thermal noise.
    Active,
    /// Passive RIS: `β = 1`, no RIS noise.
    Passive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sic {
    Perfect,
    Imperfect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum User {
    /// Near NOMA user, decodes `x_f` first then its own signal.
    G,
    /// Far NOMA user.
    F,
    /// Orthogonal (OMA) user.
    O,
}

impl User {
    pub const ALL: [User; 3] = [User::G, User::F, User::O];

    pub fn label(self) -> &'static str {
        match self {
            User::G => "g",
            User::F => "f",
            User::O => "o",
        }
    }
}

impl Surface {
    pub fn label(self) -> &'static str {
        match self {
            Surface::Active => "aris",
            Surface::Passive => "pris",
        }
    }
}

impl Sic {
    pub fn label(self) -> &'static str {
        match self {
            Sic::Perfect => "psic",
            Sic::Imperfect => "ipsic",
        }
    }
}

/// Surface type and SIC quality of one curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Variant {
    pub surface: Surface,
    pub sic: Sic,
}

impl Variant {
    pub const fn new(surface: Surface, sic: Sic) -> Self {
        Self { surface, sic }
    }

    pub const ALL: [Variant; 4] = [
        Variant::new(Surface::Active, Sic::Imperfect),
        Variant::new(Surface::Active, Sic::Perfect),
        Variant::new(Surface::Passive, Sic::Imperfect),
        Variant::new(Surface::Passive, Sic::Perfect),
    ];

    /// Short tag such as `aris-ipsic`.
    pub fn label(&self) -> String {
        format!("{}-{}", self.surface.label(), self.sic.label())
    }
}

/// Which `χ_g` power enters the near-user feasibility guard and `ς_g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GuardForm {
    /// `a_g − γ_th_g χ_g²`.
    Squared,
    /// `a_g − γ_th_g χ_g`, the form implied by the SINR denominator.
    Linear,
}

/// Gauss-Laguerre treatment of the residual-interference average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LaguerreForm {
    /// Plain rule with `x_u^{m_I−1}` folded into the summand.
    Plain,
    /// Generalized rule with weight `x^{m_I−1} e^{−x}`, exact for the
    /// singular factor when `m_I < 1`.
    Generalized,
}

/// How the RIS-noise norm `‖h_ru^H Θ‖²` enters an SINR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseNorm {
    /// Its mean `L η d_ru^{−α}`.
    Mean,
    /// A realized small-scale energy `Σ_l |h_ru^l|²`, scaled by `η d_ru^{−α}`.
    Drawn(f64),
}

/// All parameters of the downlink. Powers are in watts.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    /// Total users `K` in the NOMA cluster.
    pub users: usize,
    /// Rank of the near user among the K ascending-sorted cascades.
    pub rank_g: usize,
    /// Rank of the far user.
    pub rank_f: usize,
    /// RIS element count `L`.
    pub elements: usize,
    /// Amplification factor of the active surface.
    pub beta: f64,
    /// RIS thermal-noise switch (1 active, 0 passive).
    pub xi: f64,
    /// Residual-interference switch (1 ipSIC, 0 pSIC).
    pub varpi: f64,
    pub p_b: f64,
    pub a_g: f64,
    pub a_f: f64,
    pub kappa_b: f64,
    pub kappa_g: f64,
    pub kappa_f: f64,
    pub kappa_o: f64,
    /// RIS thermal-noise power `N_tn`.
    pub n_tn: f64,
    /// Receiver noise power `σ²`.
    pub sigma2: f64,
    pub d_br: f64,
    pub d_rg: f64,
    pub d_rf: f64,
    pub d_ro: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    /// Frequency-dependent path-loss factor.
    pub eta: f64,
    pub m_r: f64,
    pub m_g: f64,
    pub m_f: f64,
    pub m_o: f64,
    /// Mean scale `Ω_I` of the residual interference.
    pub residual_scale: f64,
    /// Gamma shape `m_I` of the residual power; `None` means `m_g`.
    pub residual_shape: Option<f64>,
    pub rate_g: f64,
    pub rate_f: f64,
    /// OMA target SINR.
    pub gamma_th_o: f64,
    /// Gauss-Laguerre order `U`.
    pub laguerre_order: usize,
    /// Gauss-Chebyshev order `N`.
    pub chebyshev_order: usize,
    pub guard_form: GuardForm,
    pub laguerre_form: LaguerreForm,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self::reference()
    }
}

impl SystemConfig {
    /// Reference scenario: K=3, g=3, f=2, L=5, β=5, m=0.5, P_b=30 dBm,
    /// `a = (0.25, 0.75)`, `R = 1.5` BPCU, distances 10/10/20/30 m,
    /// `N_tn = −30` dBm, `σ² = −20` dBm, `α = 2.2`, all `κ = 0.1`.
    pub fn reference() -> Self {
        Self {
            users: 3,
            rank_g: 3,
            rank_f: 2,
            elements: 5,
            beta: 5.0,
            xi: 1.0,
            varpi: 1.0,
            p_b: dbm_to_watts(30.0),
            a_g: 0.25,
            a_f: 0.75,
            kappa_b: 0.1,
            kappa_g: 0.1,
            kappa_f: 0.1,
            kappa_o: 0.1,
            n_tn: dbm_to_watts(-30.0),
            sigma2: dbm_to_watts(-20.0),
            d_br: 10.0,
            d_rg: 10.0,
            d_rf: 20.0,
            d_ro: 30.0,
            alpha: 2.2,
            eta: 1.0,
            m_r: 0.5,
            m_g: 0.5,
            m_f: 0.5,
            m_o: 0.5,
            residual_scale: 1.0,
            residual_shape: None,
            rate_g: 1.5,
            rate_f: 1.5,
            gamma_th_o: rate_to_threshold(1.5),
            laguerre_order: crate::numerics::DEFAULT_LAGUERRE_ORDER,
            chebyshev_order: crate::numerics::DEFAULT_CHEBYSHEV_ORDER,
            guard_form: GuardForm::Linear,
            laguerre_form: LaguerreForm::Generalized,
        }
    }

    /// Sets every Nakagami shape to `m`.
    pub fn set_all_shapes(&mut self, m: f64) {
        self.m_r = m;
        self.m_g = m;
        self.m_f = m;
        self.m_o = m;
    }

    /// Sets every impairment level to `kappa`.
    pub fn set_all_kappas(&mut self, kappa: f64) {
        self.kappa_b = kappa;
        self.kappa_g = kappa;
        self.kappa_f = kappa;
        self.kappa_o = kappa;
    }

    pub fn residual_shape(&self) -> f64 {
        self.residual_shape.unwrap_or(self.m_g)
    }

    /// Copy with `ξ`, `β` and `ϖ` set for `variant`; a passive surface
    /// forces `ξ = 0`, `β = 1`.
    pub fn with_variant(&self, variant: Variant) -> Self {
        let mut c = self.clone();
        match variant.surface {
            Surface::Active => c.xi = 1.0,
            Surface::Passive => {
                c.xi = 0.0;
                c.beta = 1.0;
            }
        }
        c.varpi = match variant.sic {
            Sic::Perfect => 0.0,
            Sic::Imperfect => 1.0,
        };
        c
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.users == 0 || self.users > MAX_USERS {
            return bad(format!("users K must be in 1..={MAX_USERS}, got {}", self.users));
        }
        for (name, r) in [("rank_g", self.rank_g), ("rank_f", self.rank_f)] {
            if r == 0 || r > self.users {
                return bad(format!("{name} = {r} outside 1..={}", self.users));
            }
        }
        if self.rank_g <= self.rank_f {
            return bad(format!(
                "near user rank_g ({}) must exceed far user rank_f ({})",
                self.rank_g, self.rank_f
            ));
        }
        if self.elements == 0 {
            return bad("elements L must be at least 1".into());
        }
        if !(self.beta >= 1.0) || !self.beta.is_finite() {
            return bad(format!("beta must be >= 1, got {}", self.beta));
        }
        for (name, v) in [("xi", self.xi), ("varpi", self.varpi)] {
            if v != 0.0 && v != 1.0 {
                return bad(format!("{name} must be 0 or 1, got {v}"));
            }
        }
        if !(self.a_g > 0.0 && self.a_f > 0.0) || (self.a_g + self.a_f - 1.0).abs() > 1e-9 {
            return bad(format!(
                "power allocation must be positive and sum to 1, got a_g={} a_f={}",
                self.a_g, self.a_f
            ));
        }
        if self.a_g >= self.a_f {
            return bad(format!(
                "a_g ({}) must be smaller than a_f ({})",
                self.a_g, self.a_f
            ));
        }
        if !(self.p_b >= 0.0) || !self.p_b.is_finite() {
            return bad(format!("p_b must be a finite power >= 0, got {}", self.p_b));
        }
        for (name, v) in [
            ("n_tn", self.n_tn),
            ("sigma2", self.sigma2),
            ("d_br", self.d_br),
            ("d_rg", self.d_rg),
            ("d_rf", self.d_rf),
            ("d_ro", self.d_ro),
            ("alpha", self.alpha),
            ("eta", self.eta),
            ("residual_scale", self.residual_scale),
            ("residual_shape", self.residual_shape()),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return bad(format!("{name} must be positive and finite, got {v}"));
            }
        }
        for (name, v) in [
            ("kappa_b", self.kappa_b),
            ("kappa_g", self.kappa_g),
            ("kappa_f", self.kappa_f),
            ("kappa_o", self.kappa_o),
            ("rate_g", self.rate_g),
            ("rate_f", self.rate_f),
            ("gamma_th_o", self.gamma_th_o),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return bad(format!("{name} must be >= 0, got {v}"));
            }
        }
        for (name, m) in [("m_r", self.m_r), ("m_g", self.m_g), ("m_f", self.m_f), ("m_o", self.m_o)] {
            if !(m >= 0.5) || !m.is_finite() {
                return bad(format!("{name} must be >= 0.5, got {m}"));
            }
        }
        if self.laguerre_order == 0 || self.laguerre_order > MAX_LAGUERRE_ORDER {
            return bad(format!(
                "laguerre_order must be in 1..={MAX_LAGUERRE_ORDER}, got {}",
                self.laguerre_order
            ));
        }
        if self.chebyshev_order == 0 || self.chebyshev_order > MAX_CHEBYSHEV_ORDER {
            return bad(format!(
                "chebyshev_order must be in 1..={MAX_CHEBYSHEV_ORDER}, got {}",
                self.chebyshev_order
            ));
        }
        Ok(())
    }

    pub fn distance(&self, user: User) -> f64 {
        match user {
            User::G => self.d_rg,
            User::F => self.d_rf,
            User::O => self.d_ro,
        }
    }

    pub fn shape(&self, user: User) -> f64 {
        match user {
            User::G => self.m_g,
            User::F => self.m_f,
            User::O => self.m_o,
        }
    }

    pub fn fading(&self, user: User) -> FadingParams {
        FadingParams {
            m_r: self.m_r,
            m_u: self.shape(user),
            elements: self.elements,
        }
    }

    /// Ordering of the user's cascade; the OMA user is unsorted.
    pub fn order(&self, user: User) -> OrderSpec {
        match user {
            User::G => OrderSpec { users: self.users, rank: self.rank_g },
            User::F => OrderSpec { users: self.users, rank: self.rank_f },
            User::O => OrderSpec::single(),
        }
    }

    /// `χ = a_g + κ_b² + κ_g²`, distortion seen when user g decodes `x_f`.
    pub fn chi(&self) -> f64 {
        self.a_g + self.kappa_b.powi(2) + self.kappa_g.powi(2)
    }

    /// `χ_g = κ_b² + κ_g²`.
    pub fn chi_g(&self) -> f64 {
        self.kappa_b.powi(2) + self.kappa_g.powi(2)
    }

    /// `χ_f = a_g + κ_b² + κ_f²`.
    pub fn chi_f(&self) -> f64 {
        self.a_g + self.kappa_b.powi(2) + self.kappa_f.powi(2)
    }

    /// `χ_o = κ_b² + κ_o²`.
    pub fn chi_o(&self) -> f64 {
        self.kappa_b.powi(2) + self.kappa_o.powi(2)
    }

    /// Large-scale gain `η d_br^{−α} d_ru^{−α}` of the user's cascade.
    pub fn path_gain(&self, user: User) -> f64 {
        self.eta * (self.d_br * self.distance(user)).powf(-self.alpha)
    }

    /// Mean per-element RIS → user gain `ω_ru = η d_ru^{−α}`.
    pub fn omega_ru(&self, user: User) -> f64 {
        self.eta * self.distance(user).powf(-self.alpha)
    }

    /// RIS thermal noise reaching the user, `ξ β N_tn ‖h_ru^H Θ‖²`.
    pub fn ris_noise(&self, user: User, norm: NoiseNorm) -> f64 {
        let energy = match norm {
            NoiseNorm::Mean => self.elements as f64 * self.omega_ru(user),
            NoiseNorm::Drawn(e) => self.omega_ru(user) * e,
        };
        self.xi * self.beta * self.n_tn * energy
    }

    /// `(γ_th_g, γ_th_f)`.
    pub fn thresholds(&self) -> (f64, f64) {
        derive_targets(self)
    }

    /// The OMA target rate implied by `gamma_th_o`.
    pub fn rate_o(&self) -> f64 {
        (1.0 + self.gamma_th_o).log2()
    }

    /// Near-user guard margin `a_g − γ_th_g χ_g^p` for either power `p`.
    pub fn margin_g(&self, form: GuardForm) -> f64 {
        let (th_g, _) = self.thresholds();
        let chi_g = self.chi_g();
        match form {
            GuardForm::Squared => self.a_g - th_g * chi_g * chi_g,
            GuardForm::Linear => self.a_g - th_g * chi_g,
        }
    }

    pub fn margin_f(&self) -> f64 {
        let (_, th_f) = self.thresholds();
        self.a_f - th_f * self.chi_f()
    }

    pub fn margin_o(&self) -> f64 {
        1.0 - self.gamma_th_o * self.chi_o()
    }

    /// Evaluates the three feasibility guards.
    pub fn feasibility(&self) -> Feasibility {
        let g = self.margin_g(self.guard_form) > 0.0;
        let other = match self.guard_form {
            GuardForm::Squared => GuardForm::Linear,
            GuardForm::Linear => GuardForm::Squared,
        };
        if g != (self.margin_g(other) > 0.0) {
            log::warn!(
                "near-user feasibility depends on the chi_g power: {:?} form says {}, {:?} form says {}",
                self.guard_form,
                g,
                other,
                !g
            );
        }
        Feasibility {
            g,
            f: self.margin_f() > 0.0,
            o: self.margin_o() > 0.0,
        }
    }
}

/// Outcome of the closed-form feasibility guards. An infeasible user is
/// in outage with probability one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Feasibility {
    pub g: bool,
    pub f: bool,
    pub o: bool,
}

impl Feasibility {
    pub fn user(&self, user: User) -> bool {
        match user {
            User::G => self.g,
            User::F => self.f,
            User::O => self.o,
        }
    }

    pub fn all(&self) -> bool {
        self.g && self.f && self.o
    }
}

/// `(γ_th_g, γ_th_f) = (2^{R_g} − 1, 2^{R_f} − 1)`.
pub fn derive_targets(cfg: &SystemConfig) -> (f64, f64) {
    (rate_to_threshold(cfg.rate_g), rate_to_threshold(cfg.rate_f))
}

/// Power terms of one received SINR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinrBreakdown {
    pub signal: f64,
    /// Interference plus distortion proportional to the received power.
    pub impairment_term: f64,
    pub residual_ipsic: f64,
    pub ris_noise: f64,
    pub thermal: f64,
    pub sinr: f64,
}

impl SinrBreakdown {
    fn assemble(signal: f64, impairment_term: f64, residual_ipsic: f64, ris_noise: f64, thermal: f64) -> Self {
        let denom = impairment_term + residual_ipsic + ris_noise + thermal;
        let sinr = if signal == 0.0 { 0.0 } else { signal / denom };
        Self {
            signal,
            impairment_term,
            residual_ipsic,
            ris_noise,
            thermal,
            sinr,
        }
    }
}

/// Received power `β P_b η d_br^{−α} d_ru^{−α} Y²`.
fn received(cfg: &SystemConfig, user: User, y: f64) -> f64 {
    cfg.beta * cfg.p_b * cfg.path_gain(user) * y * y
}

/// SINR at user g when it decodes the far user's signal `x_f`.
pub fn sinr_g_to_f(cfg: &SystemConfig, y_g: f64, norm: NoiseNorm) -> SinrBreakdown {
    let rx = received(cfg, User::G, y_g);
    SinrBreakdown::assemble(rx * cfg.a_f, rx * cfg.chi(), 0.0, cfg.ris_noise(User::G, norm), cfg.sigma2)
}

/// SINR at user g for its own signal after SIC; `residual` is the unit-mean
/// residual power `|h_I|²`.
pub fn sinr_g(cfg: &SystemConfig, y_g: f64, residual: f64, norm: NoiseNorm) -> SinrBreakdown {
    let rx = received(cfg, User::G, y_g);
    SinrBreakdown::assemble(
        rx * cfg.a_g,
        rx * cfg.chi_g(),
        cfg.varpi * cfg.p_b * cfg.residual_scale * residual,
        cfg.ris_noise(User::G, norm),
        cfg.sigma2,
    )
}

pub fn sinr_f(cfg: &SystemConfig, y_f: f64, norm: NoiseNorm) -> SinrBreakdown {
    let rx = received(cfg, User::F, y_f);
    SinrBreakdown::assemble(rx * cfg.a_f, rx * cfg.chi_f(), 0.0, cfg.ris_noise(User::F, norm), cfg.sigma2)
}

pub fn sinr_o(cfg: &SystemConfig, y_o: f64, norm: NoiseNorm) -> SinrBreakdown {
    let rx = received(cfg, User::O, y_o);
    SinrBreakdown::assemble(rx, rx * cfg.chi_o(), 0.0, cfg.ris_noise(User::O, norm), cfg.sigma2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clean() -> SystemConfig {
        let mut c = SystemConfig::reference();
        c.set_all_kappas(0.0);
        c.xi = 0.0;
        c.beta = 1.0;
        c.varpi = 0.0;
        c
    }

    #[test]
    fn thresholds_follow_rates() {
        let mut c = SystemConfig::reference();
        for (r, th) in [(1.0, 1.0), (0.0, 0.0), (1.5, 2f64.powf(1.5) - 1.0)] {
            c.rate_g = r;
            c.rate_f = r;
            assert_eq!(derive_targets(&c), (th, th));
        }
        assert!((rate_to_threshold(1.5) - 1.828_427_124_746_19).abs() < 1e-12);
    }

    #[test]
    fn dbm_round_trip() {
        assert!((dbm_to_watts(30.0) - 1.0).abs() < 1e-15);
        assert!((dbm_to_watts(-20.0) - 1e-5).abs() < 1e-20);
        assert!((watts_to_dbm(dbm_to_watts(17.3)) - 17.3).abs() < 1e-12);
    }

    #[test]
    fn reference_is_valid_and_feasible() {
        let c = SystemConfig::reference();
        c.validate().unwrap();
        assert!(c.feasibility().all());
    }

    #[test]
    fn validation_rejects_bad_configs() {
        let mut c = SystemConfig::reference();
        c.a_g = 0.6;
        c.a_f = 0.4;
        assert!(c.validate().is_err());
        let mut c = SystemConfig::reference();
        c.beta = 0.5;
        assert!(c.validate().is_err());
        let mut c = SystemConfig::reference();
        c.rank_f = 3;
        assert!(c.validate().is_err());
        let mut c = SystemConfig::reference();
        c.kappa_o = -0.1;
        assert!(c.validate().is_err());
        let mut c = SystemConfig::reference();
        c.xi = 0.5;
        assert!(c.validate().is_err());
    }

    #[test]
    fn zero_amplitude_gives_zero_sinr() {
        let c = SystemConfig::reference();
        assert_eq!(sinr_g_to_f(&c, 0.0, NoiseNorm::Mean).sinr, 0.0);
        assert_eq!(sinr_g(&c, 0.0, 1.0, NoiseNorm::Mean).sinr, 0.0);
        assert_eq!(sinr_f(&c, 0.0, NoiseNorm::Mean).sinr, 0.0);
        assert_eq!(sinr_o(&c, 0.0, NoiseNorm::Mean).sinr, 0.0);
    }

    #[test]
    fn impairment_free_reduces_to_snr() {
        let mut c = clean();
        c.a_g = 0.0;
        c.a_f = 1.0;
        let y = 2.3;
        let snr = c.p_b * c.path_gain(User::G) * y * y / c.sigma2;
        assert!((sinr_g_to_f(&c, y, NoiseNorm::Mean).sinr / snr - 1.0).abs() < 1e-14);
        let c = clean();
        let near = c.p_b * c.path_gain(User::G) * y * y * c.a_g / c.sigma2;
        assert!((sinr_g(&c, y, 3.0, NoiseNorm::Mean).sinr / near - 1.0).abs() < 1e-14);
        let rho = c.p_b / c.sigma2;
        let gain = c.path_gain(User::F) * y * y;
        let far = c.a_f * rho * gain / (c.a_g * rho * gain + 1.0);
        assert!((sinr_f(&c, y, NoiseNorm::Mean).sinr / far - 1.0).abs() < 1e-14);
        let oma = c.p_b * c.path_gain(User::O) * y * y / c.sigma2;
        assert!((sinr_o(&c, y, NoiseNorm::Mean).sinr / oma - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ceilings_at_large_amplitude() {
        let c = SystemConfig::reference();
        let y = 1e12;
        assert!((sinr_g_to_f(&c, y, NoiseNorm::Mean).sinr - c.a_f / c.chi()).abs() < 1e-9);
        assert!((sinr_f(&c, y, NoiseNorm::Mean).sinr - c.a_f / c.chi_f()).abs() < 1e-9);
        assert!((sinr_o(&c, y, NoiseNorm::Mean).sinr - 1.0 / c.chi_o()).abs() < 1e-9);
        let psic = c.with_variant(Variant::new(Surface::Active, Sic::Perfect));
        assert!((sinr_g(&psic, y, 1.0, NoiseNorm::Mean).sinr - c.a_g / c.chi_g()).abs() < 1e-6);
    }

    #[test]
    fn perfect_sic_drops_residual() {
        let c = SystemConfig::reference().with_variant(Variant::new(Surface::Active, Sic::Perfect));
        let b = sinr_g(&c, 1.0, 5.0, NoiseNorm::Mean);
        assert_eq!(b.residual_ipsic, 0.0);
        let i = SystemConfig::reference().with_variant(Variant::new(Surface::Active, Sic::Imperfect));
        assert!(sinr_g(&i, 1.0, 5.0, NoiseNorm::Mean).residual_ipsic > 0.0);
    }

    #[test]
    fn passive_variant_removes_ris_noise() {
        let c = SystemConfig::reference().with_variant(Variant::new(Surface::Passive, Sic::Perfect));
        assert_eq!(c.beta, 1.0);
        assert_eq!(sinr_f(&c, 2.0, NoiseNorm::Drawn(4.0)).ris_noise, 0.0);
    }

    #[test]
    fn drawn_norm_matches_mean_at_expected_energy() {
        let c = SystemConfig::reference();
        let l = c.elements as f64;
        assert_eq!(c.ris_noise(User::F, NoiseNorm::Mean), c.ris_noise(User::F, NoiseNorm::Drawn(l)));
    }

    #[test]
    fn breakdown_components_add_up() {
        let c = SystemConfig::reference();
        let b = sinr_g(&c, 3.0, 0.7, NoiseNorm::Drawn(4.2));
        let denom = b.impairment_term + b.residual_ipsic + b.ris_noise + b.thermal;
        assert!((b.sinr - b.signal / denom).abs() < 1e-15);
    }
}
