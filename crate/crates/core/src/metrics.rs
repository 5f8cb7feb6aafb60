//! System throughput, power consumption, energy efficiency and the equal
//! power budget between active and passive deployments.

use crate::analytic::ClosedFormContext;
use crate::error::{Error, Result};
use crate::system::{Sic, Surface, SystemConfig, User, Variant};

/// Static and dynamic power figures in watts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerModel {
    /// Power amplifier efficiency, `0 < ν ≤ 1`.
    pub nu: f64,
    /// BS static power.
    pub p_bs: f64,
    /// Static power per RIS element.
    pub p_re: f64,
    /// Static power per user terminal.
    pub p_u: f64,
    /// Switch and control power per element.
    pub p_sw: f64,
    /// DC biasing power per active element.
    pub p_dc: f64,
}

impl Default for PowerModel {
    /// Placeholder model: ideal amplifier, no static consumption.
    fn default() -> Self {
        Self {
            nu: 1.0,
            p_bs: 0.0,
            p_re: 0.0,
            p_u: 0.0,
            p_sw: 0.0,
            p_dc: 0.0,
        }
    }
}

impl PowerModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.nu > 0.0 && self.nu <= 1.0) {
            return Err(Error::Config(format!("amplifier efficiency must lie in (0, 1], got {}", self.nu)));
        }
        let statics = [
            ("p_bs", self.p_bs),
            ("p_re", self.p_re),
            ("p_u", self.p_u),
            ("p_sw", self.p_sw),
            ("p_dc", self.p_dc),
        ];
        for (name, v) in statics {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be a finite nonnegative power, got {v}")));
            }
        }
        Ok(())
    }

    /// `κ = 1/ν`.
    pub fn kappa(&self) -> f64 {
        1.0 / self.nu
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThroughputMode {
    DelayLimited,
    DelayTolerant,
}

impl ThroughputMode {
    pub fn label(self) -> &'static str {
        match self {
            ThroughputMode::DelayLimited => "delay-limited",
            ThroughputMode::DelayTolerant => "delay-tolerant",
        }
    }
}

/// Sum throughput with its per-user parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ThroughputReport {
    pub mode: ThroughputMode,
    /// Bits per channel use.
    pub value: f64,
    pub components: Vec<(User, f64)>,
}

impl ThroughputReport {
    fn from_parts(mode: ThroughputMode, components: Vec<(User, f64)>) -> Self {
        let value = components.iter().map(|&(_, v)| v).sum();
        Self { mode, value, components }
    }
}

/// `(1 − P_g) R_g + (1 − P_f) R_f` for the NOMA pair.
pub fn throughput_delay_limited(cfg: &SystemConfig, variant: Variant) -> Result<ThroughputReport> {
    let ctx = ClosedFormContext::for_variant(cfg, variant)?;
    let g = (1.0 - ctx.outage(User::G, variant)) * cfg.rate_g;
    let f = (1.0 - ctx.outage(User::F, variant)) * cfg.rate_f;
    Ok(ThroughputReport::from_parts(
        ThroughputMode::DelayLimited,
        vec![(User::G, g), (User::F, f)],
    ))
}

/// Sum of the NOMA pair's ergodic rates.
pub fn throughput_delay_tolerant(cfg: &SystemConfig, variant: Variant) -> Result<ThroughputReport> {
    let ctx = ClosedFormContext::for_variant(cfg, variant)?;
    let g = ctx.ergodic_rate(User::G, variant);
    let f = ctx.ergodic_rate(User::F, variant);
    Ok(ThroughputReport::from_parts(
        ThroughputMode::DelayTolerant,
        vec![(User::G, g), (User::F, f)],
    ))
}

/// Throughput of the OMA user on `surface`.
pub fn throughput_oma(cfg: &SystemConfig, surface: Surface, mode: ThroughputMode) -> Result<ThroughputReport> {
    let v = Variant::new(surface, Sic::Perfect);
    let ctx = ClosedFormContext::for_variant(cfg, v)?;
    let o = match mode {
        ThroughputMode::DelayLimited => (1.0 - ctx.outage(User::O, v)) * cfg.rate_o(),
        ThroughputMode::DelayTolerant => ctx.ergodic_rate(User::O, v),
    };
    Ok(ThroughputReport::from_parts(mode, vec![(User::O, o)]))
}

pub fn throughput(cfg: &SystemConfig, variant: Variant, mode: ThroughputMode) -> Result<ThroughputReport> {
    match mode {
        ThroughputMode::DelayLimited => throughput_delay_limited(cfg, variant),
        ThroughputMode::DelayTolerant => throughput_delay_tolerant(cfg, variant),
    }
}

/// Mean power radiated by the surface for BS transmit power `p_b`,
/// `ξ β (p_b L η d_br^{−α} + N_tn L)`.
pub fn ris_output_power(cfg: &SystemConfig, p_b: f64) -> f64 {
    let l = cfg.elements as f64;
    let hop = cfg.eta * cfg.d_br.powf(-cfg.alpha);
    cfg.xi * cfg.beta * (p_b * l * hop + cfg.n_tn * l)
}

/// `κ P_b + P_BS + L P_RE + P_out + K P_U`.
pub fn total_power(cfg: &SystemConfig, pm: &PowerModel) -> f64 {
    let l = cfg.elements as f64;
    pm.kappa() * cfg.p_b + pm.p_bs + l * pm.p_re + ris_output_power(cfg, cfg.p_b) + cfg.users as f64 * pm.p_u
}

/// Throughput per watt of total consumption.
pub fn energy_efficiency(
    cfg: &SystemConfig,
    variant: Variant,
    pm: &PowerModel,
    mode: ThroughputMode,
) -> Result<f64> {
    pm.validate()?;
    let c = cfg.with_variant(variant);
    let power = total_power(&c, pm);
    if !(power > 0.0) {
        return Err(Error::Domain(format!("total power must be positive, got {power}")));
    }
    Ok(throughput(cfg, variant, mode)?.value / power)
}

/// Budget consumed by an active deployment whose BS transmits `p_bs`.
pub fn budget_aris(cfg: &SystemConfig, pm: &PowerModel, p_bs: f64) -> f64 {
    let l = cfg.elements as f64;
    p_bs + ris_output_power(cfg, p_bs) + l * (pm.p_sw + pm.p_dc)
}

/// Budget consumed by a passive deployment whose BS transmits `p_bs`.
pub fn budget_pris(cfg: &SystemConfig, pm: &PowerModel, p_bs: f64) -> f64 {
    p_bs + cfg.elements as f64 * pm.p_sw
}

/// BS transmit powers `(active, passive)` that spend the same `total`.
/// `cfg` describes the active surface.
pub fn match_power_budget(total: f64, pm: &PowerModel, cfg: &SystemConfig) -> Result<(f64, f64)> {
    pm.validate()?;
    let l = cfg.elements as f64;
    let hop = cfg.eta * cfg.d_br.powf(-cfg.alpha);
    let gain = cfg.xi * cfg.beta * l * hop;
    let aris_floor = cfg.xi * cfg.beta * cfg.n_tn * l + l * (pm.p_sw + pm.p_dc);
    let pris_floor = l * pm.p_sw;
    if total < aris_floor {
        return Err(Error::Config(format!(
            "budget {total} W is below the active surface floor {aris_floor} W (RIS noise, switching and bias)"
        )));
    }
    if total < pris_floor {
        return Err(Error::Config(format!(
            "budget {total} W is below the passive surface switching floor {pris_floor} W"
        )));
    }
    Ok(((total - aris_floor) / (1.0 + gain), total - pris_floor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::dbm_to_watts;

    const ARIS_P: Variant = Variant::new(Surface::Active, Sic::Perfect);
    const ARIS_I: Variant = Variant::new(Surface::Active, Sic::Imperfect);

    #[test]
    fn delay_limited_bounds() {
        let mut c = SystemConfig::reference();
        c.rate_g = 0.0;
        c.rate_f = 0.0;
        assert_eq!(throughput_delay_limited(&c, ARIS_P).unwrap().value, 0.0);

        let mut c = SystemConfig::reference();
        c.p_b = dbm_to_watts(-100.0);
        let t = throughput_delay_limited(&c, ARIS_P).unwrap();
        assert!(t.value.abs() < 1e-12);

        let mut c = SystemConfig::reference();
        c.p_b = dbm_to_watts(80.0);
        c.varpi = 0.0;
        let t = throughput_delay_limited(&c, ARIS_P).unwrap();
        assert!((t.value - 3.0).abs() < 1e-6, "{}", t.value);
    }

    #[test]
    fn delay_tolerant_ordering() {
        let mut c = SystemConfig::reference();
        c.p_b = 0.0;
        assert_eq!(throughput_delay_tolerant(&c, ARIS_P).unwrap().value, 0.0);
        let c = SystemConfig::reference();
        let p = throughput_delay_tolerant(&c, ARIS_P).unwrap().value;
        let i = throughput_delay_tolerant(&c, ARIS_I).unwrap().value;
        assert!(i <= p);
    }

    #[test]
    fn total_power_cases() {
        let pm = PowerModel::default();
        let mut c = SystemConfig::reference();
        c.p_b = 0.0;
        c.n_tn = 0.0;
        assert_eq!(total_power(&c, &pm), 0.0);

        let mut c = SystemConfig::reference();
        c.xi = 0.0;
        assert_eq!(total_power(&c, &pm), c.p_b);
    }

    #[test]
    fn doubling_elements_is_linear() {
        let pm = PowerModel {
            p_re: 0.01,
            ..PowerModel::default()
        };
        let c = SystemConfig::reference();
        let mut d = c.clone();
        d.elements *= 2;
        let l = c.elements as f64;
        let extra = l * pm.p_re + ris_output_power(&c, c.p_b);
        assert!((total_power(&d, &pm) - total_power(&c, &pm) - extra).abs() < 1e-15);
    }

    #[test]
    fn efficiency_domain_and_scaling() {
        let mut c = SystemConfig::reference();
        c.p_b = 0.0;
        c.n_tn = 0.0;
        let pm = PowerModel::default();
        assert!(matches!(
            energy_efficiency(&c, ARIS_P, &pm, ThroughputMode::DelayLimited),
            Err(Error::Domain(_))
        ));

        let c = SystemConfig::reference();
        let small = PowerModel {
            p_bs: 1e3,
            ..PowerModel::default()
        };
        let big = PowerModel {
            p_bs: 2e3,
            ..PowerModel::default()
        };
        let a = energy_efficiency(&c, ARIS_P, &small, ThroughputMode::DelayLimited).unwrap();
        let b = energy_efficiency(&c, ARIS_P, &big, ThroughputMode::DelayLimited).unwrap();
        assert!((a / b - 2.0).abs() < 1e-2);
    }

    #[test]
    fn budget_degenerate_cases() {
        let pm = PowerModel {
            p_sw: 0.001,
            p_dc: 0.002,
            ..PowerModel::default()
        };
        let mut c = SystemConfig::reference();
        c.xi = 0.0;
        let (a, p) = match_power_budget(1.0, &pm, &c).unwrap();
        let l = c.elements as f64;
        assert!((a - (1.0 - l * 0.001 - l * 0.002)).abs() < 1e-15);
        assert!((p - (1.0 - l * 0.001)).abs() < 1e-15);

        let mut c = SystemConfig::reference();
        c.n_tn = 0.0;
        c.elements = 1;
        c.eta = 1.0;
        c.d_br = 1.0;
        c.beta = 1.0;
        let (a, _) = match_power_budget(2.0, &PowerModel::default(), &c).unwrap();
        assert!((a - 1.0).abs() < 1e-15);
    }

    #[test]
    fn budget_round_trip() {
        let pm = PowerModel {
            nu: 0.8,
            p_bs: 0.5,
            p_re: 0.01,
            p_u: 0.01,
            p_sw: 0.005,
            p_dc: 0.003,
        };
        let c = SystemConfig::reference();
        let total = 2.5;
        let (a, p) = match_power_budget(total, &pm, &c).unwrap();
        assert!((budget_aris(&c, &pm, a) - total).abs() < 1e-12);
        assert!((budget_pris(&c, &pm, p) - total).abs() < 1e-12);
    }

    #[test]
    fn infeasible_budget_names_floor() {
        let pm = PowerModel {
            p_dc: 1.0,
            ..PowerModel::default()
        };
        let c = SystemConfig::reference();
        let err = match_power_budget(0.1, &pm, &c).unwrap_err();
        assert!(err.to_string().contains("active surface floor"));
    }
}
