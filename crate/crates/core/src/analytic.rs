//! Closed-form outage probabilities, high-SNR asymptotes, diversity orders,
//! ergodic rates and rate ceilings.
//!
//! Every quantity is computed from a [`ClosedFormContext`], which holds the
//! per-user constants derived once from a [`SystemConfig`]. The active
//! surface formulas read `ξ`, `β` and `ϖ` from the configuration; the
//! passive surface has its own reduced forms.

use std::f64::consts::{LN_2, PI};

use crate::channel::{cascade_stats, CascadeStats, OrderSpec};
use crate::error::{Error, Result};
use crate::numerics::{
    gauss_chebyshev_nodes, gauss_laguerre, gauss_laguerre_generalized, hyp2f1_at_unity,
    integrate_adaptive, ln_gamma_unchecked, regularized_gamma_p_unchecked, QuadratureRule,
};
use crate::system::{
    rate_to_threshold, GuardForm, LaguerreForm, Sic, Surface, SystemConfig, User, Variant,
};

/// Constants shared by all closed forms of one user.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserConstants {
    pub gamma_th: f64,
    /// Power allocation of the decoded signal (1 for the OMA user).
    pub alloc: f64,
    /// Distortion coefficient of the user's own-signal SINR.
    pub chi: f64,
    /// `ς = γ_th / (P_b · margin)`; infinite when the guard fails.
    pub varsigma: f64,
    /// Guard margin, e.g. `a_f − γ_th_f χ_f`.
    pub margin: f64,
    /// Inverse large-scale gain `d_br^α d_ru^α / η`.
    pub zeta: f64,
    /// `ω_ru = η d_ru^{−α}`.
    pub omega_ru: f64,
    /// Effective noise `ξ β N_tn L ω_ru + σ²`.
    pub noise: f64,
    /// `τ = β P_b χ`.
    pub tau: f64,
    pub stats: CascadeStats,
    pub order: OrderSpec,
    /// Order-statistics prefactor `Ψ`.
    pub psi: f64,
    pub feasible: bool,
}

/// High-SNR constants of one user's cascade.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstants {
    /// `4^{m_r−m_u+1} √π (m_r m_u)^{m_r}`.
    pub upsilon_prefix: f64,
    /// `Υ = prefix · ₂F₁(2m_r, m_r−m_u+½; m_r+m_u+½; 1)`.
    pub upsilon: f64,
    /// `Λ = Γ(m_r) Γ(m_u)`.
    pub lambda: f64,
    /// `ln δ = ln Γ(2 L m_r)`.
    pub ln_delta: f64,
    /// Log of the small-argument coefficient `A` in `F(y) ≈ A y^{2 L m_r}`.
    pub ln_coefficient: f64,
}

/// Precomputed closed-form constants for one configuration.
#[derive(Debug, Clone)]
pub struct ClosedFormContext {
    pub cfg: SystemConfig,
    pub g: UserConstants,
    pub f: UserConstants,
    pub o: UserConstants,
    /// `χ = a_g + κ_b² + κ_g²`.
    pub chi: f64,
    /// Shape `m_I` of the residual power.
    pub residual_shape: f64,
    pub phi_g: f64,
    pub vartheta_g: f64,
    pub vartheta_g_psic: f64,
    pub phi_f: f64,
    pub vartheta_f: f64,
    pub phi_o: f64,
    pub vartheta_o: f64,
    pub varpi_g1: f64,
    pub varpi_g2: f64,
    pub varpi_g2_psic: f64,
    pub varpi_g2_pris: f64,
    pub varpi_f1: f64,
    pub varpi_f2: f64,
    pub varpi_o1: f64,
    pub varpi_o2: f64,
    /// Laguerre abscissas `x_u` and normalized weights, such that
    /// `Σ w_u h(x_u) ≈ E[h(m_I X)]` for `X ~ Gamma(m_I, 1/m_I)`.
    pub residual_rule: Vec<(f64, f64)>,
    chebyshev: QuadratureRule,
}

fn user_constants(cfg: &SystemConfig, user: User) -> UserConstants {
    let (th_g, th_f) = cfg.thresholds();
    let (gamma_th, alloc, chi, margin) = match user {
        User::G => (th_g, cfg.a_g, cfg.chi_g(), cfg.margin_g(cfg.guard_form)),
        User::F => (th_f, cfg.a_f, cfg.chi_f(), cfg.margin_f()),
        User::O => (cfg.gamma_th_o, 1.0, cfg.chi_o(), cfg.margin_o()),
    };
    let feasible = margin > 0.0;
    let varsigma = if gamma_th == 0.0 {
        0.0
    } else if feasible {
        gamma_th / (cfg.p_b * margin)
    } else {
        f64::INFINITY
    };
    let order = cfg.order(user);
    UserConstants {
        gamma_th,
        alloc,
        chi,
        varsigma,
        margin,
        zeta: 1.0 / cfg.path_gain(user),
        omega_ru: cfg.omega_ru(user),
        noise: cfg.ris_noise(user, crate::system::NoiseNorm::Mean) + cfg.sigma2,
        tau: cfg.beta * cfg.p_b * chi,
        stats: cascade_stats(&cfg.fading(user)),
        order,
        psi: order.psi(),
        feasible,
    }
}

impl ClosedFormContext {
    /// Derives all constants from `cfg` exactly as given (`ξ`, `β`, `ϖ`
    /// included).
    pub fn new(cfg: &SystemConfig) -> Result<Self> {
        cfg.validate()?;
        let g = user_constants(cfg, User::G);
        let f = user_constants(cfg, User::F);
        let o = user_constants(cfg, User::O);
        let m_i = cfg.residual_shape();

        let residual_rule = residual_rule(cfg.laguerre_form, cfg.laguerre_order, m_i)?;
        let chebyshev = gauss_chebyshev_nodes(cfg.chebyshev_order)?;

        // φ_g = ζ ς_g ϖ P_b Ω_I with P_b cancelled against ς_g.
        let phi_g = if g.feasible {
            g.zeta * g.gamma_th / g.margin * cfg.varpi * cfg.residual_scale
        } else {
            f64::INFINITY
        };
        let sigma_part = |u: &UserConstants| u.zeta * u.varsigma * cfg.sigma2;
        let ris_part = |u: &UserConstants| {
            cfg.xi * cfg.beta * cfg.n_tn * u.zeta * u.varsigma * cfg.elements as f64 * u.omega_ru
        };
        Ok(Self {
            phi_g,
            vartheta_g: m_i * g.zeta * g.varsigma * g.noise,
            vartheta_g_psic: g.zeta * g.varsigma * g.noise,
            phi_f: ris_part(&f),
            vartheta_f: sigma_part(&f),
            phi_o: ris_part(&o),
            vartheta_o: sigma_part(&o),
            varpi_g1: g.zeta * cfg.varpi * cfg.p_b * cfg.residual_scale,
            varpi_g2: g.zeta * m_i * g.noise,
            varpi_g2_psic: g.zeta * g.noise,
            varpi_g2_pris: g.zeta * m_i * cfg.sigma2,
            varpi_f1: cfg.xi * cfg.beta * cfg.n_tn * f.zeta * cfg.elements as f64 * f.omega_ru,
            varpi_f2: f.zeta * cfg.sigma2,
            varpi_o1: cfg.xi * cfg.beta * cfg.n_tn * o.zeta * cfg.elements as f64 * o.omega_ru,
            varpi_o2: o.zeta * cfg.sigma2,
            chi: cfg.chi(),
            residual_shape: m_i,
            cfg: cfg.clone(),
            g,
            f,
            o,
            residual_rule,
            chebyshev,
        })
    }

    /// Context for `variant`: `ξ`, `β`, `ϖ` are set by [`SystemConfig::with_variant`].
    pub fn for_variant(cfg: &SystemConfig, variant: Variant) -> Result<Self> {
        Self::new(&cfg.with_variant(variant))
    }

    pub fn user(&self, user: User) -> &UserConstants {
        match user {
            User::G => &self.g,
            User::F => &self.f,
            User::O => &self.o,
        }
    }

    /// Sorted-cascade CDF of `user` at amplitude `y`.
    fn cascade_cdf(&self, u: &UserConstants, y: f64) -> f64 {
        if !(y > 0.0) {
            return 0.0;
        }
        u.order.cdf_from_marginal(regularized_gamma_p_unchecked(u.stats.shape(), y / u.stats.c))
    }

    /// `Σ_u w_u F(√(φ x_u + ϑ) / (c √(β m_I)))`, the residual-averaged CDF.
    fn residual_average(&self, u: &UserConstants, phi: f64, vartheta: f64, beta: f64) -> f64 {
        let scale = u.stats.c * (beta * self.residual_shape).sqrt();
        self.residual_rule
            .iter()
            .map(|&(x, w)| w * self.cascade_cdf(u, (phi * x + vartheta).sqrt() / scale))
            .sum::<f64>()
            .clamp(0.0, 1.0)
    }

    // ---- outage, active surface -------------------------------------------

    /// Near-user outage, imperfect SIC, active surface.
    pub fn aris_outage_g_ipsic(&self) -> f64 {
        if self.g.gamma_th == 0.0 {
            return 0.0;
        }
        if !self.g.feasible {
            return 1.0;
        }
        self.residual_average(&self.g, self.phi_g, self.vartheta_g, self.cfg.beta)
    }

    /// Near-user outage, perfect SIC, active surface.
    pub fn aris_outage_g_psic(&self) -> f64 {
        if self.g.gamma_th == 0.0 {
            return 0.0;
        }
        if !self.g.feasible {
            return 1.0;
        }
        let y = (self.vartheta_g_psic / self.cfg.beta).sqrt();
        self.cascade_cdf(&self.g, y)
    }

    pub fn aris_outage_f(&self) -> f64 {
        if self.f.gamma_th == 0.0 {
            return 0.0;
        }
        if !self.f.feasible {
            return 1.0;
        }
        self.cascade_cdf(&self.f, ((self.phi_f + self.vartheta_f) / self.cfg.beta).sqrt())
    }

    pub fn aris_outage_o(&self) -> f64 {
        if self.o.gamma_th == 0.0 {
            return 0.0;
        }
        if !self.o.feasible {
            return 1.0;
        }
        self.cascade_cdf(&self.o, ((self.phi_o + self.vartheta_o) / self.cfg.beta).sqrt())
    }

    // ---- outage, passive surface ------------------------------------------

    pub fn pris_outage_g_ipsic(&self) -> f64 {
        if self.g.gamma_th == 0.0 {
            return 0.0;
        }
        if !self.g.feasible {
            return 1.0;
        }
        let vartheta = self.residual_shape * self.g.zeta * self.g.varsigma * self.cfg.sigma2;
        self.residual_average(&self.g, self.phi_g, vartheta, 1.0)
    }

    pub fn pris_outage_g_psic(&self) -> f64 {
        if self.g.gamma_th == 0.0 {
            return 0.0;
        }
        if !self.g.feasible {
            return 1.0;
        }
        let y = (self.g.zeta * self.g.varsigma * self.cfg.sigma2).sqrt();
        self.cascade_cdf(&self.g, y)
    }

    pub fn pris_outage_f(&self) -> f64 {
        if self.f.gamma_th == 0.0 {
            return 0.0;
        }
        if !self.f.feasible {
            return 1.0;
        }
        self.cascade_cdf(&self.f, (self.f.zeta * self.f.varsigma * self.cfg.sigma2).sqrt())
    }

    pub fn pris_outage_o(&self) -> f64 {
        if self.o.gamma_th == 0.0 {
            return 0.0;
        }
        if !self.o.feasible {
            return 1.0;
        }
        self.cascade_cdf(&self.o, (self.o.zeta * self.o.varsigma * self.cfg.sigma2).sqrt())
    }

    /// Outage of `user`; the SIC flag only affects user g.
    pub fn outage(&self, user: User, variant: Variant) -> f64 {
        use {Sic::*, Surface::*};
        match (user, variant.surface, variant.sic) {
            (User::G, Active, Imperfect) => self.aris_outage_g_ipsic(),
            (User::G, Active, Perfect) => self.aris_outage_g_psic(),
            (User::G, Passive, Imperfect) => self.pris_outage_g_ipsic(),
            (User::G, Passive, Perfect) => self.pris_outage_g_psic(),
            (User::F, Active, _) => self.aris_outage_f(),
            (User::F, Passive, _) => self.pris_outage_f(),
            (User::O, Active, _) => self.aris_outage_o(),
            (User::O, Passive, _) => self.pris_outage_o(),
        }
    }

    // ---- asymptotes -------------------------------------------------------

    /// High-SNR constants of `user`, or a divergence error when
    /// `m_u ≤ m_r` makes the ₂F₁ series diverge at unity.
    pub fn asymptotic_constants(&self, user: User) -> Result<AsymptoticConstants> {
        let m_r = self.cfg.m_r;
        let m_u = self.cfg.shape(user);
        let l = self.cfg.elements as f64;
        let hyp = hyp2f1_at_unity(2.0 * m_r, m_r - m_u + 0.5, m_r + m_u + 0.5).map_err(|e| match e {
            Error::Divergence { excess, .. } => Error::Divergence {
                excess,
                context: format!(
                    "high-SNR asymptote of user {} needs m_{} > m_r (m_r = {m_r}, m_{} = {m_u})",
                    user.label(),
                    user.label(),
                    user.label()
                ),
            },
            other => other,
        })?;
        let ln_prefix = (m_r - m_u + 1.0) * 4f64.ln() + 0.5 * PI.ln() + m_r * (m_r * m_u).ln();
        let ln_upsilon = ln_prefix + hyp.ln();
        let ln_lambda = ln_gamma_unchecked(m_r) + ln_gamma_unchecked(m_u);
        let ln_delta = ln_gamma_unchecked(2.0 * l * m_r);
        let ln_element = ln_gamma_unchecked(2.0 * m_r) + ln_gamma_unchecked(2.0 * m_u) + ln_upsilon
            - ln_lambda
            - ln_gamma_unchecked(m_r + m_u + 0.5);
        Ok(AsymptoticConstants {
            upsilon_prefix: ln_prefix.exp(),
            upsilon: ln_upsilon.exp(),
            lambda: ln_lambda.exp(),
            ln_delta,
            ln_coefficient: l * ln_element - (2.0 * l * m_r).ln() - ln_delta,
        })
    }

    /// `Ψ Σ_k C(K−r, k) (−1)^k / (r+k) · (A s^{L m_r})^{r+k}` for a
    /// threshold `s` on the squared cascade amplitude.
    fn power_law(&self, user: User, s: f64) -> Result<f64> {
        let u = self.user(user);
        if u.gamma_th == 0.0 {
            return Ok(0.0);
        }
        if !u.feasible {
            return Ok(1.0);
        }
        let k = self.asymptotic_constants(user)?;
        let ln_marginal = k.ln_coefficient + self.cfg.elements as f64 * self.cfg.m_r * s.ln();
        Ok(u.order.expand(|n| (n as f64 * ln_marginal).exp()))
    }

    /// High-SNR approximation of [`ClosedFormContext::outage`]. The
    /// imperfect-SIC near-user value is the `P_b`-independent error floor.
    pub fn outage_asymptotic(&self, user: User, variant: Variant) -> Result<f64> {
        use {Sic::*, Surface::*};
        let beta = match variant.surface {
            Active => self.cfg.beta,
            Passive => 1.0,
        };
        match (user, variant.surface, variant.sic) {
            (User::G, _, Imperfect) => {
                if self.g.gamma_th == 0.0 {
                    return Ok(0.0);
                }
                if !self.g.feasible {
                    return Ok(1.0);
                }
                Ok(self.residual_average(&self.g, self.phi_g, 0.0, beta))
            }
            (User::G, Active, Perfect) => self.power_law(User::G, self.vartheta_g_psic / beta),
            (User::G, Passive, Perfect) => {
                self.power_law(User::G, self.g.zeta * self.g.varsigma * self.cfg.sigma2)
            }
            (User::F, Active, _) => self.power_law(User::F, (self.phi_f + self.vartheta_f) / beta),
            (User::F, Passive, _) => {
                self.power_law(User::F, self.f.zeta * self.f.varsigma * self.cfg.sigma2)
            }
            (User::O, Active, _) => self.power_law(User::O, (self.phi_o + self.vartheta_o) / beta),
            (User::O, Passive, _) => {
                self.power_law(User::O, self.o.zeta * self.o.varsigma * self.cfg.sigma2)
            }
        }
    }

    // ---- ergodic rates ----------------------------------------------------

    /// `π a / (2 N χ ln 2) Σ_n 2χ √(1−x_n²) / (2χ + a(x_n+1)) · tail(x_n)`.
    fn chebyshev_rate<F: Fn(f64) -> f64>(&self, alloc: f64, chi: f64, tail: F) -> f64 {
        let n = self.chebyshev.order as f64;
        let sum: f64 = self
            .chebyshev
            .nodes
            .iter()
            .map(|&x| 2.0 * chi * (1.0 - x * x).sqrt() / (2.0 * chi + alloc * (x + 1.0)) * tail(x))
            .sum();
        PI * alloc / (2.0 * n * chi * LN_2) * sum
    }

    /// CDF of the instantaneous SINR of `user` at `t`, under the same
    /// approximations as the closed forms.
    pub fn sinr_cdf(&self, user: User, t: f64) -> f64 {
        if !(t > 0.0) {
            return 0.0;
        }
        let u = self.user(user);
        let margin = u.alloc - t * u.chi;
        if margin <= 0.0 {
            return 1.0;
        }
        let base = u.zeta * t / (self.cfg.beta * self.cfg.p_b * margin);
        if user == User::G && self.cfg.varpi != 0.0 {
            let phi = base * self.cfg.varpi * self.cfg.p_b * self.cfg.residual_scale;
            let vartheta = self.residual_shape * base * u.noise;
            self.residual_average(u, phi, vartheta, 1.0)
        } else {
            self.cascade_cdf(u, (base * u.noise).sqrt())
        }
    }

    /// `(1/ln 2) ∫₀^∞ (1 − F(t)) / (1 + t) dt` by adaptive quadrature,
    /// truncated where `1 − F < 1e−10`.
    fn integrated_rate(&self, user: User) -> f64 {
        let u = self.user(user);
        let upper = if u.chi > 0.0 { u.alloc / u.chi } else { f64::INFINITY };
        let mut cutoff = 1.0_f64.min(upper);
        while cutoff < upper && 1.0 - self.sinr_cdf(user, cutoff) > 1e-10 && cutoff < 1e300 {
            cutoff = (cutoff * 2.0).min(upper);
        }
        let integrand = |t: f64| (1.0 - self.sinr_cdf(user, t)) / (1.0 + t);
        let mut total = integrate_adaptive(&integrand, 0.0, cutoff.min(1.0), 1e-12);
        let mut lo = 1.0;
        while lo < cutoff {
            let hi = (2.0 * lo).min(cutoff);
            total += integrate_adaptive(&integrand, lo, hi, 1e-12);
            lo = hi;
        }
        total / LN_2
    }

    pub fn aris_rate_g_ipsic(&self) -> f64 {
        if self.cfg.p_b == 0.0 {
            return 0.0;
        }
        if self.g.chi == 0.0 {
            return self.integrated_rate(User::G);
        }
        let g = &self.g;
        self.chebyshev_rate(g.alloc, g.chi, |x| {
            let lead = (x + 1.0) / (g.tau * (1.0 - x));
            1.0 - self.residual_average(g, lead * self.varpi_g1, lead * self.varpi_g2, 1.0)
        })
    }

    pub fn aris_rate_g_psic(&self) -> f64 {
        if self.cfg.p_b == 0.0 {
            return 0.0;
        }
        if self.g.chi == 0.0 {
            return self.integrated_rate(User::G);
        }
        let g = &self.g;
        self.chebyshev_rate(g.alloc, g.chi, |x| {
            let y = (self.varpi_g2_psic * (x + 1.0) / (g.tau * (1.0 - x))).sqrt();
            1.0 - self.cascade_cdf(g, y)
        })
    }

    pub fn aris_rate_f(&self) -> f64 {
        if self.cfg.p_b == 0.0 {
            return 0.0;
        }
        let f = &self.f;
        self.chebyshev_rate(f.alloc, f.chi, |x| {
            let y = ((x + 1.0) * (self.varpi_f1 + self.varpi_f2) / (f.tau * (1.0 - x))).sqrt();
            1.0 - self.cascade_cdf(f, y)
        })
    }

    pub fn aris_rate_o(&self) -> f64 {
        if self.cfg.p_b == 0.0 {
            return 0.0;
        }
        if self.o.chi == 0.0 {
            return self.integrated_rate(User::O);
        }
        let o = &self.o;
        self.chebyshev_rate(o.alloc, o.chi, |x| {
            let y = ((x + 1.0) * (self.varpi_o1 + self.varpi_o2) / (o.tau * (1.0 - x))).sqrt();
            1.0 - self.cascade_cdf(o, y)
        })
    }

    /// Passive-surface rates use `β = 1` and no RIS noise regardless of the
    /// configuration.
    fn pris_tau(&self, u: &UserConstants) -> f64 {
        self.cfg.p_b * u.chi
    }

    pub fn pris_rate_g_ipsic(&self) -> f64 {
        if self.cfg.p_b == 0.0 {
            return 0.0;
        }
        if self.g.chi == 0.0 {
            return self.integrated_rate(User::G);
        }
        let g = &self.g;
        let tau = self.pris_tau(g);
        self.chebyshev_rate(g.alloc, g.chi, |x| {
            let lead = (x + 1.0) / (tau * (1.0 - x));
            1.0 - self.residual_average(g, lead * self.varpi_g1, lead * self.varpi_g2_pris, 1.0)
        })
    }

    pub fn pris_rate_g_psic(&self) -> f64 {
        if self.cfg.p_b == 0.0 {
            return 0.0;
        }
        if self.g.chi == 0.0 {
            return self.integrated_rate(User::G);
        }
        let g = &self.g;
        let tau = self.pris_tau(g);
        self.chebyshev_rate(g.alloc, g.chi, |x| {
            let y = (g.zeta * self.cfg.sigma2 * (x + 1.0) / (tau * (1.0 - x))).sqrt();
            1.0 - self.cascade_cdf(g, y)
        })
    }

    pub fn pris_rate_f(&self) -> f64 {
        if self.cfg.p_b == 0.0 {
            return 0.0;
        }
        let f = &self.f;
        let tau = self.pris_tau(f);
        self.chebyshev_rate(f.alloc, f.chi, |x| {
            let y = ((x + 1.0) * self.varpi_f2 / (tau * (1.0 - x))).sqrt();
            1.0 - self.cascade_cdf(f, y)
        })
    }

    pub fn pris_rate_o(&self) -> f64 {
        if self.cfg.p_b == 0.0 {
            return 0.0;
        }
        if self.o.chi == 0.0 {
            return self.integrated_rate(User::O);
        }
        let o = &self.o;
        let tau = self.pris_tau(o);
        self.chebyshev_rate(o.alloc, o.chi, |x| {
            let y = ((x + 1.0) * self.varpi_o2 / (tau * (1.0 - x))).sqrt();
            1.0 - self.cascade_cdf(o, y)
        })
    }

    pub fn ergodic_rate(&self, user: User, variant: Variant) -> f64 {
        use {Sic::*, Surface::*};
        match (user, variant.surface, variant.sic) {
            (User::G, Active, Imperfect) => self.aris_rate_g_ipsic(),
            (User::G, Active, Perfect) => self.aris_rate_g_psic(),
            (User::G, Passive, Imperfect) => self.pris_rate_g_ipsic(),
            (User::G, Passive, Perfect) => self.pris_rate_g_psic(),
            (User::F, Active, _) => self.aris_rate_f(),
            (User::F, Passive, _) => self.pris_rate_f(),
            (User::O, Active, _) => self.aris_rate_o(),
            (User::O, Passive, _) => self.pris_rate_o(),
        }
    }

    /// `P_b → ∞` limit of the ergodic rate; `+∞` when the SINR is unbounded.
    pub fn rate_ceiling(&self, user: User, variant: Variant) -> f64 {
        let u = self.user(user);
        if user == User::G && variant.sic == Sic::Imperfect {
            if u.chi == 0.0 {
                return f64::INFINITY;
            }
            let beta = match variant.surface {
                Surface::Active => self.cfg.beta,
                Surface::Passive => 1.0,
            };
            // ϖ_g1 / τ_g with P_b cancelled.
            let phi = u.zeta * self.cfg.residual_scale / (beta * u.chi);
            return self.chebyshev_rate(u.alloc, u.chi, |x| {
                let lead = (x + 1.0) / (1.0 - x);
                1.0 - self.residual_average(u, lead * phi, 0.0, 1.0)
            });
        }
        if u.chi == 0.0 {
            return f64::INFINITY;
        }
        self.chebyshev_rate(u.alloc, u.chi, |_| 1.0)
    }
}

fn residual_rule(form: LaguerreForm, order: usize, m_i: f64) -> Result<Vec<(f64, f64)>> {
    let ln_gamma_m = ln_gamma_unchecked(m_i);
    Ok(match form {
        LaguerreForm::Plain => gauss_laguerre(order)?
            .pairs()
            .map(|(x, h)| (x, (h.ln() + (m_i - 1.0) * x.ln() - ln_gamma_m).exp()))
            .collect(),
        LaguerreForm::Generalized => gauss_laguerre_generalized(order, m_i - 1.0)?
            .pairs()
            .map(|(x, h)| (x, (h.ln() - ln_gamma_m).exp()))
            .collect(),
    })
}

pub fn outage_g(cfg: &SystemConfig, variant: Variant) -> Result<f64> {
    Ok(ClosedFormContext::for_variant(cfg, variant)?.outage(User::G, variant))
}

pub fn outage_f(cfg: &SystemConfig, surface: Surface) -> Result<f64> {
    let v = Variant::new(surface, Sic::Perfect);
    Ok(ClosedFormContext::for_variant(cfg, v)?.outage(User::F, v))
}

pub fn outage_o(cfg: &SystemConfig, surface: Surface) -> Result<f64> {
    let v = Variant::new(surface, Sic::Perfect);
    Ok(ClosedFormContext::for_variant(cfg, v)?.outage(User::O, v))
}

pub fn outage(cfg: &SystemConfig, user: User, variant: Variant) -> Result<f64> {
    Ok(ClosedFormContext::for_variant(cfg, variant)?.outage(user, variant))
}

pub fn outage_asymptotic(cfg: &SystemConfig, user: User, variant: Variant) -> Result<f64> {
    ClosedFormContext::for_variant(cfg, variant)?.outage_asymptotic(user, variant)
}

/// Diversity order of the dominant (`k = 0`) high-SNR term.
pub fn diversity_order(user: User, sic: Sic, elements: usize, m_r: f64, rank: usize) -> f64 {
    let base = elements as f64 * m_r;
    match (user, sic) {
        (User::G, Sic::Imperfect) => 0.0,
        (User::O, _) => base,
        _ => base * rank as f64,
    }
}

pub fn ergodic_rate_g(cfg: &SystemConfig, variant: Variant) -> Result<f64> {
    Ok(ClosedFormContext::for_variant(cfg, variant)?.ergodic_rate(User::G, variant))
}

pub fn ergodic_rate_f(cfg: &SystemConfig, surface: Surface) -> Result<f64> {
    let v = Variant::new(surface, Sic::Perfect);
    Ok(ClosedFormContext::for_variant(cfg, v)?.ergodic_rate(User::F, v))
}

pub fn ergodic_rate_o(cfg: &SystemConfig, surface: Surface) -> Result<f64> {
    let v = Variant::new(surface, Sic::Perfect);
    Ok(ClosedFormContext::for_variant(cfg, v)?.ergodic_rate(User::O, v))
}

pub fn ergodic_rate(cfg: &SystemConfig, user: User, variant: Variant) -> Result<f64> {
    Ok(ClosedFormContext::for_variant(cfg, variant)?.ergodic_rate(user, variant))
}

pub fn rate_ceiling(cfg: &SystemConfig, user: User, variant: Variant) -> Result<f64> {
    Ok(ClosedFormContext::for_variant(cfg, variant)?.rate_ceiling(user, variant))
}

/// High-SNR slope of the ergodic rate in `log2 ρ`. Impairments cap every
/// SINR, so the gain is zero unless the relevant distortion vanishes.
pub fn multiplexing_gain(cfg: &SystemConfig, user: User, sic: Sic) -> f64 {
    let chi = match user {
        User::G if sic == Sic::Imperfect => return 0.0,
        User::G => cfg.chi_g(),
        User::F => return 0.0,
        User::O => cfg.chi_o(),
    };
    if chi > 0.0 {
        0.0
    } else {
        1.0
    }
}

/// Target rate of the OMA user.
pub fn oma_threshold(rate_o: f64) -> f64 {
    rate_to_threshold(rate_o)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    Outage,
    Rate,
    Throughput,
    EnergyEfficiency,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveMeta {
    pub kind: MetricKind,
    pub variant: String,
    pub laguerre_order: usize,
    pub chebyshev_order: usize,
    pub guard_form: GuardForm,
}

/// One analytic curve over a swept axis.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricCurve {
    pub axis: String,
    pub points: Vec<(f64, f64)>,
    pub meta: CurveMeta,
}

impl MetricCurve {
    pub fn new(axis: impl Into<String>, points: Vec<(f64, f64)>, meta: CurveMeta) -> Result<Self> {
        if points.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::Config("curve abscissas must be strictly increasing".into()));
        }
        for &(x, v) in &points {
            let ok = match meta.kind {
                MetricKind::Outage => (0.0..=1.0).contains(&v),
                _ => v >= 0.0,
            };
            if !ok {
                return Err(Error::Domain(format!("curve value {v} at {x} out of range for {:?}", meta.kind)));
            }
        }
        Ok(Self {
            axis: axis.into(),
            points,
            meta,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::dbm_to_watts;

    const ARIS_I: Variant = Variant::new(Surface::Active, Sic::Imperfect);
    const ARIS_P: Variant = Variant::new(Surface::Active, Sic::Perfect);
    const PRIS_P: Variant = Variant::new(Surface::Passive, Sic::Perfect);

    #[test]
    fn zero_targets_never_outage() {
        let mut c = SystemConfig::reference();
        c.rate_g = 0.0;
        c.rate_f = 0.0;
        c.gamma_th_o = 0.0;
        for v in Variant::ALL {
            for u in User::ALL {
                assert_eq!(outage(&c, u, v).unwrap(), 0.0, "{u:?} {v:?}");
            }
        }
    }

    #[test]
    fn no_power_means_outage() {
        let mut c = SystemConfig::reference();
        c.p_b = 0.0;
        for v in Variant::ALL {
            for u in User::ALL {
                assert_eq!(outage(&c, u, v).unwrap(), 1.0);
                assert_eq!(ergodic_rate(&c, u, v).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn infeasible_guard_is_certain_outage() {
        let mut c = SystemConfig::reference();
        c.rate_f = 3.0;
        assert!(!c.feasibility().f);
        assert_eq!(outage_f(&c, Surface::Active).unwrap(), 1.0);
    }

    #[test]
    fn residual_rule_matches_gamma_moments() {
        for form in [LaguerreForm::Plain, LaguerreForm::Generalized] {
            for &m in &[1.0, 2.0, 3.0] {
                let rule = residual_rule(form, 64, m).unwrap();
                let mass: f64 = rule.iter().map(|&(_, w)| w).sum();
                let mean: f64 = rule.iter().map(|&(x, w)| w * x / m).sum();
                assert!((mass - 1.0).abs() < 1e-10, "{form:?} m={m}: {mass}");
                assert!((mean - 1.0).abs() < 1e-10);
            }
        }
        let rule = residual_rule(LaguerreForm::Generalized, 64, 0.5).unwrap();
        let mass: f64 = rule.iter().map(|&(_, w)| w).sum();
        let second: f64 = rule.iter().map(|&(x, w)| w * (x / 0.5).powi(2)).sum();
        assert!((mass - 1.0).abs() < 1e-12);
        assert!((second - 3.0).abs() < 1e-10);
    }

    #[test]
    fn perfect_sic_outage_is_below_imperfect() {
        let c = SystemConfig::reference();
        for p in [0.0, 10.0, 20.0, 30.0] {
            let mut c = c.clone();
            c.p_b = dbm_to_watts(p);
            c.residual_scale = 1e-4;
            assert!(outage_g(&c, ARIS_P).unwrap() <= outage_g(&c, ARIS_I).unwrap());
        }
    }

    #[test]
    fn asymptote_diverges_for_equal_shapes() {
        let c = SystemConfig::reference();
        let err = outage_asymptotic(&c, User::F, ARIS_P).unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }));
    }

    #[test]
    fn ipsic_floor_is_power_independent() {
        let mut c = SystemConfig::reference();
        c.residual_scale = 1e-4;
        c.p_b = dbm_to_watts(50.0);
        let a = outage_asymptotic(&c, User::G, ARIS_I).unwrap();
        c.p_b = dbm_to_watts(70.0);
        let b = outage_asymptotic(&c, User::G, ARIS_I).unwrap();
        assert!(((a - b) / a).abs() < 1e-12);
    }

    #[test]
    fn power_law_slope_matches_diversity() {
        let mut c = SystemConfig::reference();
        c.m_r = 0.5;
        c.m_f = 1.0;
        c.m_g = 1.0;
        c.m_o = 1.0;
        let slope = |user: User, variant: Variant| {
            let mut lo = c.clone();
            lo.p_b = dbm_to_watts(120.0);
            let mut hi = c.clone();
            hi.p_b = dbm_to_watts(140.0);
            let a = outage_asymptotic(&lo, user, variant).unwrap();
            let b = outage_asymptotic(&hi, user, variant).unwrap();
            -(b.ln() - a.ln()) / (2.0 * 10f64.ln())
        };
        let expect = diversity_order(User::F, Sic::Perfect, 5, 0.5, 2);
        assert!((slope(User::F, ARIS_P) - expect).abs() < 1e-6);
        assert!((slope(User::G, PRIS_P) - diversity_order(User::G, Sic::Perfect, 5, 0.5, 3)).abs() < 1e-6);
        assert!((slope(User::O, ARIS_P) - 2.5).abs() < 1e-6);
    }

    #[test]
    fn diversity_orders() {
        assert_eq!(diversity_order(User::G, Sic::Imperfect, 5, 0.5, 3), 0.0);
        assert_eq!(diversity_order(User::F, Sic::Perfect, 5, 0.5, 2), 5.0);
        assert_eq!(diversity_order(User::O, Sic::Perfect, 5, 0.5, 1), 2.5);
        assert_eq!(diversity_order(User::G, Sic::Perfect, 5, 0.5, 3), 7.5);
    }

    #[test]
    fn multiplexing_gains_vanish_under_impairments() {
        let c = SystemConfig::reference();
        for u in User::ALL {
            for s in [Sic::Perfect, Sic::Imperfect] {
                assert_eq!(multiplexing_gain(&c, u, s), 0.0);
            }
        }
    }

    #[test]
    fn rate_dominance_and_ceiling() {
        let mut c = SystemConfig::reference();
        c.residual_scale = 1e-4;
        for p in [0.0, 20.0, 40.0] {
            c.p_b = dbm_to_watts(p);
            let ip = ergodic_rate_g(&c, ARIS_I).unwrap();
            let ps = ergodic_rate_g(&c, ARIS_P).unwrap();
            assert!(ip <= ps + 1e-12);
            for u in User::ALL {
                let r = ergodic_rate(&c, u, ARIS_P).unwrap();
                assert!(r >= 0.0 && r <= rate_ceiling(&c, u, ARIS_P).unwrap() + 1e-12);
            }
        }
    }

    #[test]
    fn ceilings_approach_log_of_sinr_cap() {
        let c = SystemConfig::reference();
        let cf = rate_ceiling(&c, User::F, ARIS_P).unwrap();
        let exact = (1.0 + c.a_f / c.chi_f()).log2();
        assert!((cf - exact).abs() < 1e-4, "{cf} vs {exact}");
        let mut d = c.clone();
        d.set_all_kappas(0.0);
        assert_eq!(rate_ceiling(&d, User::G, ARIS_P).unwrap(), f64::INFINITY);
        assert_eq!(rate_ceiling(&d, User::O, ARIS_P).unwrap(), f64::INFINITY);
    }

    #[test]
    fn adaptive_integral_agrees_with_fine_chebyshev() {
        let mut c = SystemConfig::reference();
        c.p_b = dbm_to_watts(20.0);
        c.chebyshev_order = 3200;
        let ctx = ClosedFormContext::for_variant(&c, ARIS_P).unwrap();
        let cheb = ctx.aris_rate_o();
        let impaired_o = ctx.integrated_rate(User::O);
        assert!(((cheb - impaired_o) / impaired_o).abs() < 1e-5, "{cheb} vs {impaired_o}");
        c.residual_scale = 1e-4;
        let ctx = ClosedFormContext::for_variant(&c, ARIS_I).unwrap();
        let cheb = ctx.aris_rate_g_ipsic();
        let direct = ctx.integrated_rate(User::G);
        assert!(((cheb - direct) / direct).abs() < 1e-5, "{cheb} vs {direct}");
        c.set_all_kappas(0.0);
        let ctx = ClosedFormContext::for_variant(&c, ARIS_P).unwrap();
        let r = ctx.aris_rate_o();
        assert!(r.is_finite() && r > impaired_o);
    }

    #[test]
    fn curve_validation() {
        let meta = CurveMeta {
            kind: MetricKind::Outage,
            variant: "aris-psic".into(),
            laguerre_order: 100,
            chebyshev_order: 200,
            guard_form: GuardForm::Squared,
        };
        assert!(MetricCurve::new("p_b_dbm", vec![(0.0, 0.5), (1.0, 0.4)], meta.clone()).is_ok());
        assert!(MetricCurve::new("p_b_dbm", vec![(1.0, 0.5), (1.0, 0.4)], meta.clone()).is_err());
        assert!(MetricCurve::new("p_b_dbm", vec![(0.0, 1.5)], meta).is_err());
    }
}
