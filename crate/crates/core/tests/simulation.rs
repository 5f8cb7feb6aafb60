use risnoma_core::analytic::{self, ClosedFormContext};
use risnoma_core::montecarlo::{mc_outage, mc_sweep, simulate_point};
use risnoma_core::{dbm_to_watts, Axis, McOptions, Metric, RisNoiseMode, Sic, Surface, SystemConfig, User, Variant};

const ARIS_P: Variant = Variant::new(Surface::Active, Sic::Perfect);
const ARIS_I: Variant = Variant::new(Surface::Active, Sic::Imperfect);

fn agrees(analytic: f64, value: f64, se: f64) -> bool {
    (analytic - value).abs() <= (3.0 * se + 0.02).max(0.15 * value)
}

#[test]
fn outage_matches_closed_form_at_reference() {
    let mut c = SystemConfig::reference();
    for p_dbm in [10.0, 20.0] {
        c.p_b = dbm_to_watts(p_dbm);
        let s = simulate_point(&c, &McOptions::new(100_000, 42), 0).unwrap();
        for v in Variant::ALL {
            let ctx = ClosedFormContext::for_variant(&c, v).unwrap();
            for u in User::ALL {
                let e = s.estimate(u, v, Metric::Outage);
                let a = ctx.outage(u, v);
                assert!(agrees(a, e.value, e.std_error), "{p_dbm} dBm {u:?} {v:?}: {a} vs {}", e.value);
            }
        }
    }
}

#[test]
fn perfect_sic_rate_matches_closed_form() {
    let mut c = SystemConfig::reference();
    c.elements = 2;
    c.set_all_shapes(0.7);
    c.p_b = dbm_to_watts(30.0);
    let s = simulate_point(&c, &McOptions::new(100_000, 9), 0).unwrap();
    for u in User::ALL {
        let e = s.estimate(u, ARIS_P, Metric::ErgodicRate);
        let a = analytic::ergodic_rate(&c, u, ARIS_P).unwrap();
        assert!((a / e.value - 1.0).abs() < 0.05, "{u:?}: {a} vs {}", e.value);
    }
}

#[test]
fn std_error_halves_with_four_times_trials() {
    let mut c = SystemConfig::reference();
    c.p_b = dbm_to_watts(15.0);
    let a = mc_outage(&c, User::F, ARIS_P, 40_000, 5).unwrap();
    let b = mc_outage(&c, User::F, ARIS_P, 160_000, 5).unwrap();
    let ratio = a.std_error / b.std_error;
    assert!((ratio / 2.0 - 1.0).abs() < 0.2, "ratio {ratio}");
}

#[test]
fn identical_seed_is_bitwise_reproducible() {
    let c = SystemConfig::reference();
    let opts = McOptions::new(30_000, 77);
    let a = simulate_point(&c, &opts, 3).unwrap();
    let b = simulate_point(&c, &opts, 3).unwrap();
    assert_eq!(a, b);
}

#[test]
fn imperfect_sic_error_floor() {
    let mut c = SystemConfig::reference();
    let mut est = Vec::new();
    for p_dbm in [50.0, 60.0] {
        c.p_b = dbm_to_watts(p_dbm);
        est.push(mc_outage(&c, User::G, ARIS_I, 100_000, 8).unwrap());
    }
    let sigma = (est[0].std_error.powi(2) + est[1].std_error.powi(2)).sqrt();
    assert!((est[0].value - est[1].value).abs() < 3.0 * sigma.max(1e-4));
}

#[test]
fn common_random_numbers_give_sic_dominance() {
    let c = SystemConfig::reference();
    let s = simulate_point(&c, &McOptions::new(50_000, 4), 0).unwrap();
    for surface in [Surface::Active, Surface::Passive] {
        let p = s.estimate(User::G, Variant::new(surface, Sic::Perfect), Metric::ErgodicRate);
        let i = s.estimate(User::G, Variant::new(surface, Sic::Imperfect), Metric::ErgodicRate);
        assert!(p.value >= i.value);
        let p = s.estimate(User::G, Variant::new(surface, Sic::Perfect), Metric::Outage);
        let i = s.estimate(User::G, Variant::new(surface, Sic::Imperfect), Metric::Outage);
        assert!(p.value <= i.value);
    }
}

#[test]
fn drawn_noise_norm_stays_close_to_mean_mode() {
    let mut c = SystemConfig::reference();
    c.p_b = dbm_to_watts(15.0);
    let mean = simulate_point(&c, &McOptions::new(50_000, 2), 0).unwrap();
    let mut opts = McOptions::new(50_000, 2);
    opts.noise = RisNoiseMode::Drawn;
    let drawn = simulate_point(&c, &opts, 0).unwrap();
    let a = mean.estimate(User::F, ARIS_P, Metric::Outage);
    let b = drawn.estimate(User::F, ARIS_P, Metric::Outage);
    assert!((a.value - b.value).abs() < 0.05, "{} vs {}", a.value, b.value);
}

#[test]
fn single_point_sweep_is_a_single_estimate() {
    let c = SystemConfig::reference();
    let opts = McOptions::new(20_000, 13);
    let sweep = mc_sweep(&c, Axis::TransmitPower, &[30.0], User::F, ARIS_P, Metric::Outage, &opts).unwrap();
    let direct = mc_outage(&c, User::F, ARIS_P, 20_000, 13).unwrap();
    assert_eq!(sweep.points.len(), 1);
    assert_eq!(sweep.points[0].estimate, direct);
}

#[test]
fn power_sweep_is_nonincreasing() {
    let c = SystemConfig::reference();
    let grid: Vec<f64> = (0..7).map(|i| 5.0 * i as f64).collect();
    let opts = McOptions::new(40_000, 21);
    let sweep = mc_sweep(&c, Axis::TransmitPower, &grid, User::F, ARIS_P, Metric::Outage, &opts).unwrap();
    for w in sweep.points.windows(2) {
        let (a, b) = (w[0].estimate, w[1].estimate);
        let sigma = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
        assert!(b.value <= a.value + 3.0 * sigma, "{} -> {}", a.value, b.value);
    }
}

#[test]
fn sweep_rejects_bad_grids_and_axes() {
    let c = SystemConfig::reference();
    let opts = McOptions::new(20_000, 1);
    assert!(mc_sweep(&c, Axis::TransmitPower, &[], User::F, ARIS_P, Metric::Outage, &opts).is_err());
    assert!(mc_sweep(&c, Axis::Beta, &[5.0, 2.0], User::F, ARIS_P, Metric::Outage, &opts).is_err());
    assert!(Axis::parse("bandwidth").is_err());
    assert_eq!(Axis::parse("p_b_dbm").unwrap(), Axis::TransmitPower);
}
