//! Shared fixtures for the criterion benches.

use risnoma_core::{dbm_to_watts, SystemConfig};

/// Reference configuration at `p_dbm`.
pub fn reference(p_dbm: f64) -> SystemConfig {
    let mut c = SystemConfig::reference();
    c.p_b = dbm_to_watts(p_dbm);
    c
}

/// Small-surface configuration used for rate curves.
pub fn rate_config(p_dbm: f64) -> SystemConfig {
    let mut c = reference(p_dbm);
    c.elements = 2;
    c.set_all_shapes(0.7);
    c
}
