//! Scenario files, sweep runner and validation report behind the
//! `risnoma` command.

pub mod config;
pub mod presets;
pub mod report;
pub mod run;

pub use config::{ConfigError, Curve, CurveMetric, Scenario, Target};
pub use run::{run_scenario, Mode, RunError, RunFlags, RunManifest, CSV_HEADER};

use std::path::Path;

/// Resolves a preset and/or a config file; the file overrides the preset.
pub fn load_scenario(config: Option<&Path>, preset: Option<&str>) -> Result<Scenario, ConfigError> {
    let mut sources = Vec::new();
    if let Some(name) = preset {
        let text = presets::preset(name).ok_or_else(|| ConfigError::Parse {
            source_name: "--preset".into(),
            line: 1,
            column: 1,
            message: format!(
                "unknown preset '{name}', expected one of {}",
                presets::PRESETS.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
            ),
        })?;
        sources.push(config::parse_entries(text, &format!("preset:{name}"))?);
    }
    if let Some(path) = config {
        sources.push(config::read_entries(path)?);
    }
    Scenario::from_sources(&sources)
}
