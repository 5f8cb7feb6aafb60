use proptest::prelude::*;
use risnoma_core::analytic::ClosedFormContext;
use risnoma_core::channel::{cascade_stats, sorted_cascade_cdf, FadingParams, OrderSpec};
use risnoma_core::metrics::{budget_aris, budget_pris, match_power_budget, throughput_delay_limited};
use risnoma_core::{dbm_to_watts, PowerModel, Sic, Surface, SystemConfig, User, Variant};

fn config() -> impl Strategy<Value = SystemConfig> {
    (
        (2usize..6, 1usize..12, 0.5f64..3.0, 0.5f64..3.0, 0.5f64..3.0),
        (0.05f64..0.45, 0.0f64..0.12, 0.2f64..1.2, -10.0f64..50.0),
        (2.0f64..40.0, 2.0f64..40.0, 2.0f64..3.5, 0.1f64..1.0),
    )
        .prop_map(|((k, l, m_r, m_g, m_f), (a_g, kappa, rate, p_dbm), (d_br, d_ru, alpha, omega_i))| {
            let mut c = SystemConfig::reference();
            c.users = k;
            c.rank_g = k;
            c.rank_f = k - 1;
            c.elements = l;
            c.m_r = m_r;
            c.m_g = m_g;
            c.m_f = m_f;
            c.m_o = m_f;
            c.a_g = a_g;
            c.a_f = 1.0 - a_g;
            c.set_all_kappas(kappa);
            c.rate_g = rate;
            c.rate_f = rate;
            c.gamma_th_o = rate.exp2() - 1.0;
            c.p_b = dbm_to_watts(p_dbm);
            c.d_br = d_br;
            c.d_rg = d_ru;
            c.d_rf = d_ru * 1.5;
            c.d_ro = d_ru * 2.0;
            c.alpha = alpha;
            c.residual_scale = omega_i;
            c.chebyshev_order = 64;
            c.laguerre_order = 32;
            c
        })
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300) || a == b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn passive_corollaries_are_active_forms_without_amplification(mut c in config(), varpi in 0usize..2) {
        c.xi = 0.0;
        c.beta = 1.0;
        c.varpi = varpi as f64;
        let ctx = ClosedFormContext::new(&c).unwrap();
        let pairs = [
            (ctx.aris_outage_g_ipsic(), ctx.pris_outage_g_ipsic()),
            (ctx.aris_outage_g_psic(), ctx.pris_outage_g_psic()),
            (ctx.aris_outage_f(), ctx.pris_outage_f()),
            (ctx.aris_outage_o(), ctx.pris_outage_o()),
            (ctx.aris_rate_g_ipsic(), ctx.pris_rate_g_ipsic()),
            (ctx.aris_rate_g_psic(), ctx.pris_rate_g_psic()),
            (ctx.aris_rate_f(), ctx.pris_rate_f()),
            (ctx.aris_rate_o(), ctx.pris_rate_o()),
        ];
        for (i, (a, p)) in pairs.into_iter().enumerate() {
            prop_assert!(close(a, p), "pair {}: {} vs {}", i, a, p);
        }
    }

    #[test]
    fn outage_is_a_probability_and_falls_with_power(c in config(), step in 1.0f64..20.0) {
        let mut hi = c.clone();
        hi.p_b = c.p_b * 10f64.powf(step / 10.0);
        for v in Variant::ALL {
            for u in User::ALL {
                let lo_ctx = ClosedFormContext::for_variant(&c, v).unwrap();
                let hi_ctx = ClosedFormContext::for_variant(&hi, v).unwrap();
                let a = lo_ctx.outage(u, v);
                let b = hi_ctx.outage(u, v);
                prop_assert!((0.0..=1.0).contains(&a));
                prop_assert!(b <= a + 1e-12, "{:?} {:?}: {} -> {}", u, v, a, b);
            }
        }
    }

    #[test]
    fn imperfect_sic_never_helps(c in config()) {
        for s in [Surface::Active, Surface::Passive] {
            let p = Variant::new(s, Sic::Perfect);
            let i = Variant::new(s, Sic::Imperfect);
            let cp = ClosedFormContext::for_variant(&c, p).unwrap();
            let ci = ClosedFormContext::for_variant(&c, i).unwrap();
            prop_assert!(ci.outage(User::G, i) >= cp.outage(User::G, p) - 1e-12);
        }
    }

    #[test]
    fn rates_are_bounded_by_ceilings(c in config()) {
        for v in Variant::ALL {
            let ctx = ClosedFormContext::for_variant(&c, v).unwrap();
            for u in User::ALL {
                let r = ctx.ergodic_rate(u, v);
                let cap = ctx.rate_ceiling(u, v);
                prop_assert!(r >= 0.0 && r <= cap * (1.0 + 1e-9), "{:?} {:?}: {} > {}", u, v, r, cap);
            }
        }
    }

    #[test]
    fn sorted_cdf_is_monotone_and_bounded(
        m_r in 0.5f64..4.0, m_u in 0.5f64..4.0, l in 1usize..30,
        k in 1usize..8, y0 in 0.0f64..20.0, dy in 0.0f64..5.0,
    ) {
        let stats = cascade_stats(&FadingParams::new(m_r, m_u, l).unwrap());
        for r in 1..=k {
            let spec = OrderSpec::new(k, r).unwrap();
            let a = sorted_cascade_cdf(&stats, &spec, y0).unwrap();
            let b = sorted_cascade_cdf(&stats, &spec, y0 + dy).unwrap();
            prop_assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b));
            prop_assert!(b >= a - 1e-14);
        }
    }

    #[test]
    fn delay_limited_throughput_within_targets(c in config()) {
        for v in Variant::ALL {
            let t = throughput_delay_limited(&c, v).unwrap();
            prop_assert!(t.value >= 0.0 && t.value <= c.rate_g + c.rate_f + 1e-12);
            prop_assert!(t.components.iter().all(|&(_, x)| x >= 0.0));
        }
    }

    #[test]
    fn budget_matching_spends_equal_power(
        c in config(), total in 0.5f64..50.0,
        p_sw in 0.0f64..0.01, p_dc in 0.0f64..0.01,
    ) {
        let pm = PowerModel { p_sw, p_dc, ..PowerModel::default() };
        let (a, p) = match_power_budget(total, &pm, &c).unwrap();
        prop_assert!(a >= 0.0 && p >= 0.0);
        prop_assert!((budget_aris(&c, &pm, a) - budget_pris(&c, &pm, p)).abs() <= 1e-9 * total);
    }
}
