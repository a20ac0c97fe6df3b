//! Named figure presets. Each curve is a complete [`RunConfig`].
//!
//! Fixed values come from the figure captions. Where a caption only says
//! "different values of", the curve values below are illustrative choices and
//! each preset description says so.

use polariton_core::{FormulaVariant, SourceToggle, SystemParams};

use crate::config::{CommandKind, Format, GridSpec, RunConfig, Source, Sweep, SweepParam};
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub curves: Vec<RunConfig>,
}

fn curve(
    preset: &str,
    label: String,
    command: CommandKind,
    params: SystemParams,
    grid: GridSpec,
) -> RunConfig {
    RunConfig {
        command,
        params,
        grid,
        toggle: SourceToggle::BOTH,
        variant: FormulaVariant::Corrected,
        source: Source::Analytic,
        format: Format::Csv,
        unit: 1.0,
        manifold: 1,
        sweep: None,
        steady: false,
        preset: Some(preset.to_string()),
        curve: Some(label),
        out: None,
    }
}

fn label(name: &str, x: f64) -> String {
    format!("{name}={x}")
}

const TIME: GridSpec = GridSpec { start: 0.0, stop: 10.0, count: 401 };
/// Step 0.025, below `Gamma/20` at `kappa = 1.2`, `gamma = 1`.
const OMEGA: GridSpec = GridSpec { start: -15.0, stop: 15.0, count: 1201 };

pub fn figure_presets() -> Vec<Preset> {
    let base = |g: f64, delta: f64, epsilon: f64, r: f64| SystemParams::new(g, 1.2, 1.0, delta, epsilon, r);
    vec![
        Preset {
            name: "fig1",
            description: "intensity vs t, kappa=1.2 g=5 delta=2, drive only (r=0); epsilon values 2,5,7,10 are illustrative",
            curves: [2.0, 5.0, 7.0, 10.0]
                .iter()
                .map(|&e| curve("fig1", label("epsilon", e), CommandKind::Intensity, base(5.0, 2.0, e, 0.0), TIME))
                .collect(),
        },
        Preset {
            name: "fig2",
            description: "intensity vs t, kappa=1.2 g=5 delta=2, no drive (epsilon=0); r values 0.5,1,1.5 are illustrative",
            curves: [0.5, 1.0, 1.5]
                .iter()
                .map(|&r| curve("fig2", label("r", r), CommandKind::Intensity, base(5.0, 2.0, 0.0, r), TIME))
                .collect(),
        },
        Preset {
            name: "fig3",
            description: "intensity vs t, kappa=1.2 g=5 r=1.8 epsilon=7; delta values 0,2,4 are illustrative",
            curves: [0.0, 2.0, 4.0]
                .iter()
                .map(|&d| curve("fig3", label("delta", d), CommandKind::Intensity, base(5.0, d, 7.0, 1.8), TIME))
                .collect(),
        },
        Preset {
            name: "fig4",
            description: "incoherent spectrum vs omega offset, kappa=1.2 g=6 r=1; delta values 0,2,4 are illustrative",
            curves: [0.0, 2.0, 4.0]
                .iter()
                .map(|&d| curve("fig4", label("delta", d), CommandKind::Spectrum, base(6.0, d, 0.0, 1.0), OMEGA))
                .collect(),
        },
        Preset {
            name: "fig5",
            description: "incoherent spectrum on an (omega offset, delta) grid, kappa=1.2 g=6 r=1; delta range -10..10 is illustrative",
            curves: vec![{
                let mut c = curve(
                    "fig5",
                    "map".into(),
                    CommandKind::Spectrum,
                    base(6.0, 0.0, 0.0, 1.0),
                    GridSpec::new(-15.0, 15.0, 601),
                );
                c.sweep = Some(Sweep {
                    param: SweepParam::Delta,
                    grid: GridSpec::new(-10.0, 10.0, 41),
                });
                c
            }],
        },
        Preset {
            name: "fig7",
            description: "g2 vs tau, g=5 kappa=1.2 delta=0 r=1; epsilon values 0,3,7 are illustrative",
            curves: [0.0, 3.0, 7.0]
                .iter()
                .map(|&e| curve("fig7", label("epsilon", e), CommandKind::G2, base(5.0, 0.0, e, 1.0), TIME))
                .collect(),
        },
        Preset {
            name: "fig8",
            description: "steady b_- variance vs r, g=5 kappa=1.2; delta values 0,0.5,1,2 and r range 0..3 are illustrative",
            curves: [0.0, 0.5, 1.0, 2.0]
                .iter()
                .map(|&d| {
                    let mut c = curve("fig8", label("delta", d), CommandKind::Variance, base(5.0, d, 0.0, 0.0), TIME);
                    c.sweep = Some(Sweep {
                        param: SweepParam::R,
                        grid: GridSpec::new(0.0, 3.0, 61),
                    });
                    c.steady = true;
                    c
                })
                .collect(),
        },
        Preset {
            name: "fig9",
            description: "b_- variance vs t, g=5 kappa=1.2 r=1; delta values 0,0.5,2 are illustrative",
            curves: [0.0, 0.5, 2.0]
                .iter()
                .map(|&d| curve("fig9", label("delta", d), CommandKind::Variance, base(5.0, d, 0.0, 1.0), TIME))
                .collect(),
        },
    ]
}

pub fn preset(name: &str) -> Result<Preset> {
    figure_presets()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| {
            let known: Vec<&str> = figure_presets().iter().map(|p| p.name).collect();
            CliError::invalid(format!("unknown preset `{name}` (known: {})", known.join(", ")))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_valid() {
        let all = figure_presets();
        assert_eq!(all.len(), 8);
        for p in &all {
            assert!(!p.curves.is_empty());
            for c in &p.curves {
                c.validate().unwrap();
                assert_eq!(c.preset.as_deref(), Some(p.name));
            }
        }
        assert!(preset("fig6").is_err());
    }

    #[test]
    fn spectrum_grid_resolves_the_lines() {
        let step = (OMEGA.stop - OMEGA.start) / (OMEGA.count - 1) as f64;
        assert!(step <= 0.55 / 20.0);
    }
}
