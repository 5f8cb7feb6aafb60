use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use risnoma_cli::{load_scenario, presets, report, run_scenario, Mode, RunFlags};

/// Outage, rate and energy-efficiency sweeps for RIS-assisted NOMA/OMA.
#[derive(Parser)]
#[command(name = "risnoma", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write CSV curves plus a JSON manifest.
    Run(RunArgs),
    /// Check a scenario and print guards and derived constants.
    Validate {
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
    },
    /// List built-in presets, or print one.
    Presets { name: Option<String> },
    /// List accepted config keys.
    Keys,
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file; overrides the preset key by key.
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Monte Carlo trials per point.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Skip the simulator.
    #[arg(long, conflicts_with = "mc_only")]
    analytic_only: bool,
    /// Skip the closed forms.
    #[arg(long)]
    mc_only: bool,
    /// Built-in scenario to start from.
    #[arg(long)]
    preset: Option<String>,
}

fn init_workers() -> Result<(), String> {
    let Ok(v) = std::env::var("RISNOMA_WORKERS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("RISNOMA_WORKERS must be a positive integer, got '{v}'"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn real_main(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Run(a) => {
            init_workers()?;
            if a.config.is_none() && a.preset.is_none() {
                return Err("run needs a config file or --preset".into());
            }
            let s = load_scenario(a.config.as_deref(), a.preset.as_deref()).map_err(|e| e.to_string())?;
            let mode = if a.analytic_only {
                Mode::AnalyticOnly
            } else if a.mc_only {
                Mode::McOnly
            } else {
                Mode::Both
            };
            let flags = RunFlags {
                mode,
                trials: a.trials,
                seed: a.seed,
            };
            let m = run_scenario(&s, &a.out, &flags).map_err(|e| e.to_string())?;
            for f in &m.files {
                println!("{}", a.out.join(f).display());
            }
            Ok(())
        }
        Command::Validate { config, preset } => {
            if config.is_none() && preset.is_none() {
                return Err("validate needs a config file or --preset".into());
            }
            let s = load_scenario(config.as_deref(), preset.as_deref()).map_err(|e| e.to_string())?;
            print!("{}", report::validation_report(&s).map_err(|e| e.to_string())?);
            Ok(())
        }
        Command::Presets { name: None } => {
            for (n, text) in presets::PRESETS {
                let title = text.lines().next().unwrap_or("").trim_start_matches('#').trim();
                println!("{n:10} {title}");
            }
            Ok(())
        }
        Command::Presets { name: Some(n) } => {
            let text = presets::preset(&n).ok_or_else(|| format!("unknown preset '{n}'"))?;
            print!("{text}");
            Ok(())
        }
        Command::Keys => {
            for (k, d) in risnoma_cli::config::KEYS {
                println!("{k:16} {d}");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match real_main(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
