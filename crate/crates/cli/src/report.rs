//! Read-only validation report of a scenario.

use std::fmt::Write as _;

use risnoma_core::analytic::ClosedFormContext;
use risnoma_core::{Error, GuardForm, Sic, Surface, User, Variant};

use crate::config::Scenario;

/// Feasibility guards, derived closed-form constants and the asymptote
/// status of each user.
pub fn validation_report(s: &Scenario) -> Result<String, Error> {
    let c = &s.system;
    let mut out = String::new();
    let (th_g, th_f) = c.thresholds();
    let _ = writeln!(out, "scenario {}", s.name);
    let _ = writeln!(out, "guards ({} form for user g):", format!("{:?}", c.guard_form).to_lowercase());
    let verdict = |m: f64| if m > 0.0 { "feasible" } else { "INFEASIBLE" };
    let m_g = c.margin_g(c.guard_form);
    let _ = writeln!(out, "  g: a_g - gth_g*chi_g^p = {m_g:.6} ({}) [gth_g = {th_g:.6}]", verdict(m_g));
    let alt = match c.guard_form {
        GuardForm::Linear => GuardForm::Squared,
        GuardForm::Squared => GuardForm::Linear,
    };
    let m_alt = c.margin_g(alt);
    let _ = writeln!(
        out,
        "     {} form would give {m_alt:.6} ({})",
        format!("{alt:?}").to_lowercase(),
        verdict(m_alt)
    );
    let m_f = c.margin_f();
    let _ = writeln!(out, "  f: a_f - gth_f*chi_f = {m_f:.6} ({}) [gth_f = {th_f:.6}]", verdict(m_f));
    let m_o = c.margin_o();
    let _ = writeln!(
        out,
        "  o: 1 - gth_o*chi_o = {m_o:.6} ({}) [gth_o = {:.6}]",
        verdict(m_o),
        c.gamma_th_o
    );
    let all = [m_g, m_f, m_o].iter().all(|&m| m > 0.0);
    let _ = writeln!(out, "  overall: {}", if all { "feasible" } else { "INFEASIBLE" });

    for surface in [Surface::Active, Surface::Passive] {
        let v = Variant::new(surface, Sic::Imperfect);
        let ctx = ClosedFormContext::for_variant(c, v)?;
        let _ = writeln!(out, "constants ({}):", surface.label());
        let _ = writeln!(out, "  chi = {:.6e}  m_I = {:.6}", ctx.chi, ctx.residual_shape);
        for u in User::ALL {
            let k = ctx.user(u);
            let _ = writeln!(
                out,
                "  {}: zeta = {:.6e}  varsigma = {:.6e}  b = {:.6}  c = {:.6e}  psi = {:.6}",
                u.label(),
                k.zeta,
                k.varsigma,
                k.stats.b,
                k.stats.c,
                k.psi
            );
        }
        let _ = writeln!(
            out,
            "  phi_g = {:.6e}  vartheta_g = {:.6e}  phi_f = {:.6e}  vartheta_f = {:.6e}  phi_o = {:.6e}  vartheta_o = {:.6e}",
            ctx.phi_g, ctx.vartheta_g, ctx.phi_f, ctx.vartheta_f, ctx.phi_o, ctx.vartheta_o
        );
    }

    let ctx = ClosedFormContext::new(c)?;
    let _ = writeln!(out, "high-SNR asymptotes:");
    for u in User::ALL {
        match ctx.asymptotic_constants(u) {
            Ok(_) => {
                let _ = writeln!(out, "  {}: available (2F1 converges)", u.label());
            }
            Err(Error::Divergence { excess, context }) => {
                let _ = writeln!(
                    out,
                    "  {}: WARNING asymptote unavailable, 2F1 diverges at unity (c-a-b = {excess}): {context}",
                    u.label()
                );
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_is_feasible() {
        let s = Scenario::from_text("", "t").unwrap();
        let r = validation_report(&s).unwrap();
        assert!(r.contains("overall: feasible"), "{r}");
        assert!(r.matches("(feasible)").count() >= 3, "{r}");
    }

    #[test]
    fn rough_user_hop_warns() {
        let s = Scenario::from_text("m_r = 1\nm_g = 0.5\n", "t").unwrap();
        let r = validation_report(&s).unwrap();
        assert!(r.contains("g: WARNING asymptote unavailable"), "{r}");
    }
}
