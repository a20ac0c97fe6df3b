//! Run configuration, its key=value form and command-specific defaults.
//!
//! The same keys are used in config files and in the metadata header of every
//! emitted dataset, so a header can be fed back to reproduce its run.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use polariton_core::{FormulaVariant, SourceToggle, SystemParams};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Intensity,
    Spectrum,
    G2,
    Variance,
    Dressed,
    Envelopes,
    Verify,
    Figure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Which evaluator produces the numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    #[default]
    Analytic,
    Oracle,
}

/// Parameters a sweep can run over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    Delta,
    Epsilon,
    R,
}

impl SweepParam {
    pub fn apply(self, p: SystemParams, value: f64) -> SystemParams {
        match self {
            SweepParam::Delta => p.with_delta(value),
            SweepParam::Epsilon => p.with_epsilon(value),
            SweepParam::R => p.with_r(value),
        }
    }
}

/// `count` evenly spaced points from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, count: usize) -> Self {
        Self { start, stop, count }
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|k| {
                if k + 1 == n {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * k as f64 / (n - 1) as f64
                }
            })
            .collect()
    }

    pub fn validate(&self, what: &str) -> Result<()> {
        if self.count < 2 {
            return Err(CliError::invalid(format!("{what}: need at least 2 points (got {})", self.count)));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(CliError::invalid(format!(
                "{what}: need finite start < stop (got {} .. {})",
                self.start, self.stop
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub param: SweepParam,
    pub grid: GridSpec,
}

impl FromStr for Sweep {
    type Err = CliError;

    /// `param:start:stop:count`, e.g. `r:0:3:61`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || CliError::invalid(format!("sweep `{s}`: expected param:start:stop:count"));
        if parts.len() != 4 {
            return Err(bad());
        }
        let param = SweepParam::from_str(parts[0], true).map_err(|_| bad())?;
        Ok(Sweep {
            param,
            grid: GridSpec::new(
                parse_f64("sweep start", parts[1])?,
                parse_f64("sweep stop", parts[2])?,
                parse_usize("sweep count", parts[3])?,
            ),
        })
    }
}

/// A fully resolved request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub params: SystemParams,
    /// Time, delay or frequency axis, depending on `command`.
    pub grid: GridSpec,
    pub toggle: SourceToggle,
    pub variant: FormulaVariant,
    pub source: Source,
    pub format: Format,
    /// Value of `gamma` in the caller's output unit: frequency-like columns are
    /// multiplied by it and time-like columns divided by it.
    pub unit: f64,
    /// Excitation manifold for `dressed`.
    pub manifold: u8,
    /// Outer parameter sweep. With `steady` the grid axis is dropped and the
    /// steady-state value is reported against the swept parameter.
    pub sweep: Option<Sweep>,
    pub steady: bool,
    pub preset: Option<String>,
    /// Curve label within a preset.
    pub curve: Option<String>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let report = self.params.validate();
        if report.fatal {
            return Err(CliError::Validation {
                message: format!("invalid parameters: {}", report.warnings.join("; ")),
                report: Some(report),
            });
        }
        if !(self.unit.is_finite() && self.unit > 0.0) {
            return Err(CliError::invalid(format!("unit must be positive (got {})", self.unit)));
        }
        if !(self.manifold == 1 || self.manifold == 2) {
            return Err(CliError::invalid(format!("--n must be 1 or 2 (got {})", self.manifold)));
        }
        match self.command {
            CommandKind::Dressed | CommandKind::Figure => {}
            _ if self.steady => {}
            _ => self.grid.validate("grid")?,
        }
        if matches!(
            self.command,
            CommandKind::Intensity | CommandKind::Variance | CommandKind::G2 | CommandKind::Envelopes | CommandKind::Verify
        ) && self.grid.start < 0.0
        {
            return Err(CliError::invalid("time grid must start at or after 0"));
        }
        if let Some(sweep) = &self.sweep {
            sweep.grid.validate("sweep")?;
        }
        if self.steady && self.sweep.is_none() {
            return Err(CliError::invalid("--steady needs --sweep"));
        }
        if self.command == CommandKind::Figure && self.preset.is_none() {
            return Err(CliError::invalid("figure needs --preset"));
        }
        Ok(())
    }

    /// Ordered key=value pairs that [`RunConfig::from_pairs`] turns back into
    /// an identical config, apart from the output location, which is left out
    /// so that the same run written to two places gives identical files.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        let mut v = Vec::new();
        let mut push = |k: &str, val: String| v.push((k.to_string(), val));
        push("command", enum_name(&self.command));
        let p = &self.params;
        push("g", fmt_exact(p.g));
        push("kappa", fmt_exact(p.kappa));
        push("gamma", fmt_exact(p.gamma));
        push("delta", fmt_exact(p.delta));
        push("epsilon", fmt_exact(p.epsilon));
        push("r", fmt_exact(p.r));
        push("grid_start", fmt_exact(self.grid.start));
        push("grid_stop", fmt_exact(self.grid.stop));
        push("grid_count", self.grid.count.to_string());
        push("include_drive", self.toggle.include_drive.to_string());
        push("include_squeezing", self.toggle.include_squeezing.to_string());
        push("variant", self.variant.as_str().to_string());
        push("source", enum_name(&self.source));
        push("format", enum_name(&self.format));
        push("unit", fmt_exact(self.unit));
        push("manifold", self.manifold.to_string());
        if let Some(s) = &self.sweep {
            push("sweep_param", enum_name(&s.param));
            push("sweep_start", fmt_exact(s.grid.start));
            push("sweep_stop", fmt_exact(s.grid.stop));
            push("sweep_count", s.grid.count.to_string());
        }
        push("steady", self.steady.to_string());
        if let Some(p) = &self.preset {
            push("preset", p.clone());
        }
        if let Some(c) = &self.curve {
            push("curve", c.clone());
        }
        v
    }

    /// Rebuilds a config from key=value pairs, such as a dataset header.
    /// Keys it does not know (derived constants, notes) are ignored.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let mut s = Settings::default();
        for (k, v) in pairs {
            s.apply(k, v, true)?;
        }
        s.resolve()
    }
}

/// Partially specified settings, layered from defaults, a config file and
/// command-line flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub command: Option<CommandKind>,
    pub g: Option<f64>,
    pub kappa: Option<f64>,
    pub gamma: Option<f64>,
    pub delta: Option<f64>,
    pub epsilon: Option<f64>,
    pub r: Option<f64>,
    pub grid_start: Option<f64>,
    pub grid_stop: Option<f64>,
    pub grid_count: Option<usize>,
    pub include_drive: Option<bool>,
    pub include_squeezing: Option<bool>,
    pub variant: Option<FormulaVariant>,
    pub source: Option<Source>,
    pub format: Option<Format>,
    pub unit: Option<f64>,
    pub manifold: Option<u8>,
    pub sweep_param: Option<SweepParam>,
    pub sweep_start: Option<f64>,
    pub sweep_stop: Option<f64>,
    pub sweep_count: Option<usize>,
    pub steady: Option<bool>,
    pub preset: Option<String>,
    pub curve: Option<String>,
    pub out: Option<PathBuf>,
}

impl Settings {
    /// Sets one key. Flag spellings (`tmax`, `omega-min`, `paper-literal`, ...)
    /// are accepted alongside the canonical header keys. With `lenient`,
    /// unknown keys are skipped instead of rejected.
    pub fn apply(&mut self, key: &str, value: &str, lenient: bool) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "command" => self.command = Some(parse_enum("command", value)?),
            "g" => self.g = Some(parse_f64(key, value)?),
            "kappa" => self.kappa = Some(parse_f64(key, value)?),
            "gamma" => self.gamma = Some(parse_f64(key, value)?),
            "delta" => self.delta = Some(parse_f64(key, value)?),
            "epsilon" => self.epsilon = Some(parse_f64(key, value)?),
            "r" => self.r = Some(parse_f64(key, value)?),
            "grid_start" | "omega-min" | "omega_min" | "tmin" => self.grid_start = Some(parse_f64(key, value)?),
            "grid_stop" | "omega-max" | "omega_max" | "tmax" => self.grid_stop = Some(parse_f64(key, value)?),
            "grid_count" | "points" => self.grid_count = Some(parse_usize(key, value)?),
            "include_drive" | "toggle-drive" | "toggle_drive" => self.include_drive = Some(parse_bool(key, value)?),
            "include_squeezing" | "toggle-squeezing" | "toggle_squeezing" => {
                self.include_squeezing = Some(parse_bool(key, value)?)
            }
            "variant" => {
                self.variant = Some(match value {
                    "corrected" => FormulaVariant::Corrected,
                    "paper-literal" => FormulaVariant::PaperLiteral,
                    _ => return Err(CliError::invalid(format!("variant: unknown value `{value}`"))),
                })
            }
            "paper-literal" | "paper_literal" => {
                self.variant = Some(if parse_bool(key, value)? {
                    FormulaVariant::PaperLiteral
                } else {
                    FormulaVariant::Corrected
                })
            }
            "source" => self.source = Some(parse_enum("source", value)?),
            "format" => self.format = Some(parse_enum("format", value)?),
            "unit" => self.unit = Some(parse_f64(key, value)?),
            "manifold" | "n" => {
                self.manifold = Some(value.parse().map_err(|_| CliError::invalid(format!("{key}: not an integer: `{value}`")))?)
            }
            "sweep" => {
                let s: Sweep = value.parse()?;
                self.sweep_param = Some(s.param);
                self.sweep_start = Some(s.grid.start);
                self.sweep_stop = Some(s.grid.stop);
                self.sweep_count = Some(s.grid.count);
            }
            "sweep_param" => self.sweep_param = Some(parse_enum("sweep_param", value)?),
            "sweep_start" => self.sweep_start = Some(parse_f64(key, value)?),
            "sweep_stop" => self.sweep_stop = Some(parse_f64(key, value)?),
            "sweep_count" => self.sweep_count = Some(parse_usize(key, value)?),
            "steady" => self.steady = Some(parse_bool(key, value)?),
            "preset" => self.preset = Some(value.to_string()),
            "curve" => self.curve = Some(value.to_string()),
            "out" => self.out = Some(PathBuf::from(value)),
            other if lenient => {
                let _ = other;
            }
            other => return Err(CliError::invalid(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Layers `other` on top of `self`.
    pub fn merge(mut self, other: Settings) -> Settings {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(
            command, g, kappa, gamma, delta, epsilon, r, grid_start, grid_stop, grid_count,
            include_drive, include_squeezing, variant, source, format, unit, manifold,
            sweep_param, sweep_start, sweep_stop, sweep_count, steady, preset, curve, out
        );
        self
    }

    /// Reads a flat `key=value` file; blank lines and `#` comments are skipped.
    pub fn from_file(path: &Path) -> Result<Settings> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Read {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Settings::from_text(&text)
    }

    pub fn from_text(text: &str) -> Result<Settings> {
        let mut s = Settings::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::invalid(format!("config line {}: expected key=value", n + 1)))?;
            s.apply(k, v, false)?;
        }
        Ok(s)
    }

    pub fn resolve(self) -> Result<RunConfig> {
        let command = self.command.ok_or_else(|| CliError::invalid("no command given"))?;
        let d = SystemParams::default();
        let params = SystemParams::new(
            self.g.unwrap_or(d.g),
            self.kappa.unwrap_or(d.kappa),
            self.gamma.unwrap_or(d.gamma),
            self.delta.unwrap_or(d.delta),
            self.epsilon.unwrap_or(d.epsilon),
            self.r.unwrap_or(d.r),
        );
        let default_grid = default_grid(command);
        let grid = GridSpec::new(
            self.grid_start.unwrap_or(default_grid.start),
            self.grid_stop.unwrap_or(default_grid.stop),
            self.grid_count.unwrap_or(default_grid.count),
        );
        let sweep = match (self.sweep_param, self.sweep_start, self.sweep_stop, self.sweep_count) {
            (None, None, None, None) => None,
            (Some(param), Some(start), Some(stop), Some(count)) => Some(Sweep {
                param,
                grid: GridSpec::new(start, stop, count),
            }),
            _ => return Err(CliError::invalid("sweep needs param, start, stop and count")),
        };
        let format = self.format.unwrap_or(match command {
            CommandKind::Dressed | CommandKind::Verify => Format::Json,
            _ => Format::Csv,
        });
        Ok(RunConfig {
            command,
            params,
            grid,
            toggle: SourceToggle {
                include_drive: self.include_drive.unwrap_or(true),
                include_squeezing: self.include_squeezing.unwrap_or(true),
            },
            variant: self.variant.unwrap_or_default(),
            source: self.source.unwrap_or_default(),
            format,
            unit: self.unit.unwrap_or(1.0),
            manifold: self.manifold.unwrap_or(1),
            sweep,
            steady: self.steady.unwrap_or(false),
            preset: self.preset,
            curve: self.curve,
            out: self.out,
        })
    }
}

/// Axis used when none is given.
pub fn default_grid(command: CommandKind) -> GridSpec {
    match command {
        CommandKind::Spectrum => GridSpec::new(-15.0, 15.0, 601),
        _ => GridSpec::new(0.0, 10.0, 201),
    }
}

/// Shortest decimal form that parses back to the same `f64`.
pub fn fmt_exact(x: f64) -> String {
    format!("{x:?}")
}

fn enum_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

fn parse_enum<T: ValueEnum>(key: &str, value: &str) -> Result<T> {
    T::from_str(value, true).map_err(|_| CliError::invalid(format!("{key}: unknown value `{value}`")))
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::invalid(format!("{key}: not a number: `{value}`")))
}

fn parse_usize(key: &str, value: &str) -> Result<usize> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::invalid(format!("{key}: not a count: `{value}`")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim() {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        _ => Err(CliError::invalid(format!("{key}: expected true or false, got `{value}`"))),
    }
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&enum_name(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_are_exact() {
        let g = GridSpec::new(-15.0, 15.0, 601).points();
        assert_eq!(g.len(), 601);
        assert_eq!(g[0], -15.0);
        assert_eq!(g[600], 15.0);
        assert_eq!(g[300], 0.0);
    }

    #[test]
    fn pairs_round_trip() {
        let mut s = Settings::from_text("command=spectrum\ng=6\n# comment\nr=1\nomega-min=-20\npaper-literal=true\nsweep=delta:-4:4:9").unwrap();
        s.out = Some(PathBuf::from("/tmp/x.csv"));
        let cfg = s.resolve().unwrap();
        let pairs = cfg.to_pairs();
        assert!(pairs.iter().all(|(k, _)| k != "out"));
        let back = RunConfig::from_pairs(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str()))).unwrap();
        assert_eq!(back, RunConfig { out: None, ..cfg.clone() });
        assert_eq!(cfg.grid.start, -20.0);
        assert_eq!(cfg.variant, FormulaVariant::PaperLiteral);
    }

    #[test]
    fn awkward_floats_round_trip() {
        let s = Settings {
            command: Some(CommandKind::Intensity),
            g: Some(0.1 + 0.2),
            delta: Some(-1e-300),
            ..Settings::default()
        };
        let cfg = s.resolve().unwrap();
        let pairs = cfg.to_pairs();
        let back = RunConfig::from_pairs(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str()))).unwrap();
        assert_eq!(back.params.g.to_bits(), (0.1f64 + 0.2).to_bits());
        assert_eq!(back, cfg);
    }

    #[test]
    fn strict_file_rejects_unknown_keys() {
        assert!(Settings::from_text("bogus=1").is_err());
        assert!(Settings::from_text("g 5").is_err());
    }

    #[test]
    fn validation() {
        let mut cfg = Settings {
            command: Some(CommandKind::Intensity),
            ..Settings::default()
        }
        .resolve()
        .unwrap();
        assert!(cfg.validate().is_ok());
        cfg.grid.count = 1;
        assert_eq!(cfg.validate().unwrap_err().exit_code(), 2);
        cfg.grid.count = 10;
        cfg.params.kappa = -1.0;
        let err = cfg.validate().unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.report().is_some());
    }
}
