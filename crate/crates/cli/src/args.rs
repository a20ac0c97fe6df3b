//! Command-line flags.

use std::path::PathBuf;

use clap::Parser;

use crate::config::{CommandKind, Format, Settings, Source, Sweep};
use crate::error::Result;

#[derive(Debug, Parser)]
#[command(
    name = "polariton",
    version,
    about = "Fluorescence of a driven quantum-well microcavity in a squeezed vacuum",
    long_about = "Evaluates intensity, spectrum, g2, quadrature variance, envelopes and dressed \
                  states, reproduces figure datasets, and checks the closed forms against exact \
                  numerical oracles. Rates are in units of gamma unless --gamma is set."
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: CommandKind,

    /// Flat key=value file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,

    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Exciton-photon detuning.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Pump amplitude.
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: Option<f64>,
    /// Squeeze parameter.
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,

    /// End of the time or delay axis.
    #[arg(long, allow_negative_numbers = true)]
    pub tmax: Option<f64>,
    /// Number of grid points.
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_max: Option<f64>,

    /// Figure preset name (fig1..fig5, fig7..fig9).
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file, or directory for figure presets. Stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_name = "BOOL")]
    pub toggle_drive: Option<bool>,
    #[arg(long, value_name = "BOOL")]
    pub toggle_squeezing: Option<bool>,
    /// Use the formulas exactly as printed, including known typos.
    #[arg(long)]
    pub paper_literal: bool,

    /// Value of gamma in the output unit.
    #[arg(long)]
    pub unit: Option<f64>,
    /// Excitation manifold for `dressed`.
    #[arg(long)]
    pub n: Option<u8>,
    #[arg(long, value_enum)]
    pub source: Option<Source>,
    /// Outer sweep, `param:start:stop:count` with param delta, epsilon or r.
    #[arg(long)]
    pub sweep: Option<Sweep>,
    /// Report steady-state values against the sweep parameter.
    #[arg(long)]
    pub steady: bool,
}

impl Cli {
    /// Settings from the flags alone.
    pub fn settings(&self) -> Settings {
        let mut s = Settings {
            command: Some(self.command),
            g: self.g,
            kappa: self.kappa,
            gamma: self.gamma,
            delta: self.delta,
            epsilon: self.epsilon,
            r: self.r,
            grid_count: self.points,
            include_drive: self.toggle_drive,
            include_squeezing: self.toggle_squeezing,
            source: self.source,
            format: self.format,
            unit: self.unit,
            manifold: self.n,
            preset: self.preset.clone(),
            out: self.out.clone(),
            ..Settings::default()
        };
        if self.command == CommandKind::Spectrum {
            s.grid_start = self.omega_min;
            s.grid_stop = self.omega_max;
        } else {
            s.grid_stop = self.tmax;
        }
        if self.paper_literal {
            s.variant = Some(polariton_core::FormulaVariant::PaperLiteral);
        }
        if let Some(sw) = self.sweep {
            s.sweep_param = Some(sw.param);
            s.sweep_start = Some(sw.grid.start);
            s.sweep_stop = Some(sw.grid.stop);
            s.sweep_count = Some(sw.grid.count);
        }
        if self.steady {
            s.steady = Some(true);
        }
        s
    }

    /// Config file (if any) overlaid with the flags.
    pub fn resolve(&self) -> Result<crate::config::RunConfig> {
        let file = match &self.config {
            Some(path) => Settings::from_file(path)?,
            None => Settings::default(),
        };
        file.merge(self.settings()).resolve()
    }
}
