//! Command-line front end.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::config::RunConfig;
use crate::error::Result;
use crate::pipeline;
use crate::report;

#[derive(Debug, Parser)]
#[command(name = "jointfatigue", version, about = "Joint fatigue and endurance evaluation for static manual tasks")]
pub struct Cli {
    /// Run configuration (JSON). Defaults to the built-in drilling task.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Write report files here instead of printing to stdout.
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,

    /// Trajectory sampling interval, s.
    #[arg(long, global = true)]
    pub sample_dt_s: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Joint positions and axes for the configured posture.
    Fk,
    /// Static joint moments and forces.
    Loads,
    /// Capacity trajectory of the analyzed joint.
    Fatigue {
        /// Keep propagating after the capacity meets the load.
        #[arg(long)]
        continue_past_failure: bool,
    },
    /// Fatigue index and endurance verdict per joint.
    Endurance,
    /// Endurance of all 81 population subgroups.
    Sweep,
    /// Full pipeline; writes every report (requires an output directory).
    Report,
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::builtin(),
    };
    if let Some(dt) = cli.sample_dt_s {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(crate::Error::Config(format!("--sample-dt-s must be positive, got {dt}")));
        }
        cfg.sample_dt_s = dt;
    }
    if let Some(d) = &cli.out_dir {
        cfg.out_dir = d.clone();
    }
    Ok(cfg)
}

/// Text to print, or files written.
fn emit(cli: &Cli, cfg: &RunConfig, name: &str, text: String) -> Result<String> {
    if cli.out_dir.is_none() {
        return Ok(text);
    }
    std::fs::create_dir_all(&cfg.out_dir).map_err(|e| crate::Error::Io { path: cfg.out_dir.clone(), source: e })?;
    let path = cfg.out_dir.join(name);
    std::fs::write(&path, text).map_err(|e| crate::Error::Io { path: path.clone(), source: e })?;
    Ok(format!("wrote {}\n", path.display()))
}

/// Runs one command and returns what to print on stdout.
pub fn run(cli: &Cli) -> Result<String> {
    let mut cfg = load_config(cli)?;
    match &cli.command {
        Command::Fk => {
            let inputs = pipeline::load_inputs(&cfg)?;
            emit(cli, &cfg, "fk.csv", pipeline::kinematics(&inputs)?)
        }
        Command::Loads => {
            let r = pipeline::run_pipeline(&cfg)?;
            emit(cli, &cfg, "loads.csv", report::load_profile_csv(&r.inputs.model, &r.loads)?)
        }
        Command::Fatigue { continue_past_failure } => {
            cfg.continue_past_failure |= continue_past_failure;
            let r = pipeline::run_pipeline(&cfg)?;
            emit(cli, &cfg, "trajectory.csv", report::trajectory_csv(&r.trajectory)?)
        }
        Command::Endurance => {
            let r = pipeline::run_pipeline(&cfg)?;
            emit(cli, &cfg, "summary.txt", pipeline::summary_text(&r))
        }
        Command::Sweep => {
            let r = pipeline::run_sweep(&cfg)?;
            match cli.out_dir {
                None => Ok(report::sweep_table(&r.grid, r.recovery_per_min)),
                Some(_) => Ok(listing(&pipeline::write_sweep_reports(&r, &cfg.out_dir)?)),
            }
        }
        Command::Report => {
            let r = pipeline::run_pipeline(&cfg)?;
            let mut files = pipeline::write_run_reports(&r, &cfg.out_dir)?;
            if cfg.population.is_some() {
                files.extend(pipeline::write_sweep_reports(&pipeline::run_sweep(&cfg)?, &cfg.out_dir)?);
            }
            Ok(listing(&files))
        }
    }
}

fn listing(files: &[PathBuf]) -> String {
    files.iter().map(|p| format!("wrote {}\n", p.display())).collect()
}
