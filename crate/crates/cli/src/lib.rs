//! Command-line front end: datasets, figure presets and verification reports.

pub mod args;
pub mod commands;
pub mod config;
pub mod dataset;
pub mod error;
pub mod figures;
pub mod verify;

use std::path::PathBuf;

use rayon::prelude::*;

pub use commands::evaluate;
pub use config::{CommandKind, Format, GridSpec, RunConfig, Settings, Source, Sweep, SweepParam};
pub use dataset::{Cell, Dataset};
pub use error::{CliError, Result};
pub use figures::{figure_presets, preset, Preset};
pub use verify::{ObservableCheck, VerifyReport};

/// Everything a run produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub datasets: Vec<(RunConfig, Dataset)>,
    /// Files written, in dataset order. Empty when writing to stdout.
    pub written: Vec<PathBuf>,
    /// Rendered output for stdout when no `out` was given.
    pub stdout: String,
    /// 0, or 1 when a verification did not pass.
    pub exit_code: i32,
}

/// Expands figure presets into one config per curve, carrying over the
/// caller's format and output location.
pub fn expand(cfg: &RunConfig) -> Result<Vec<RunConfig>> {
    if cfg.command != CommandKind::Figure {
        return Ok(vec![cfg.clone()]);
    }
    cfg.validate()?;
    let p = preset(cfg.preset.as_deref().unwrap_or_default())?;
    Ok(p.curves
        .into_iter()
        .map(|mut c| {
            c.format = cfg.format;
            c.out = cfg.out.as_ref().map(|dir| {
                let ext = match cfg.format {
                    Format::Csv => "csv",
                    Format::Json => "json",
                };
                let curve = c.curve.clone().unwrap_or_default().replace('=', "_");
                dir.join(format!("{}_{}.{ext}", p.name, curve))
            });
            c
        })
        .collect())
}

/// Evaluates and writes. Curves of a preset run concurrently; each output
/// file is written by exactly one of them.
pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let configs = expand(cfg)?;
    if cfg.command == CommandKind::Figure {
        if let Some(dir) = &cfg.out {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Io {
                path: dir.clone(),
                message: e.to_string(),
            })?;
        }
    }
    let results: Vec<Result<Vec<Dataset>>> = configs.par_iter().map(evaluate).collect();
    let mut datasets = Vec::new();
    for (c, r) in configs.into_iter().zip(results) {
        for mut d in r? {
            if cfg.command == CommandKind::Figure {
                if let Ok(p) = preset(c.preset.as_deref().unwrap_or_default()) {
                    d.metadata.push(("preset_description".into(), p.description.into()));
                }
            }
            datasets.push((c.clone(), d));
        }
    }

    let mut written = Vec::new();
    let mut stdout = String::new();
    for (c, d) in &datasets {
        match &c.out {
            Some(path) => {
                d.write_to(path, c.format)?;
                written.push(path.clone());
            }
            None => {
                if !stdout.is_empty() {
                    stdout.push('\n');
                }
                stdout.push_str(&d.render(c.format));
            }
        }
    }
    let failed = cfg.command == CommandKind::Verify
        && datasets.iter().any(|(_, d)| d.meta("pass") == Some("false"));
    Ok(Outcome {
        datasets,
        written,
        stdout,
        exit_code: if failed { 1 } else { 0 },
    })
}
