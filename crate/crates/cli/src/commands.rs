//! Evaluation of a single [`RunConfig`] into datasets.

use polariton_core::observables::{
    coherent_weight, dressed_manifold, g2, incoherent_spectrum, intensity, intensity_ss,
    quad_variance, quad_variance_ss, table_one, DressedManifold,
};
use polariton_core::oracle::{
    g2_gaussian, integrate_moments, spectrum_numeric, steady_state, MomentState,
};
use polariton_core::envelopes::{envelopes, intensity_coeffs, variance_coeff_lambda4};
use polariton_core::{FormulaVariant, Manifold, Model, Quadrature, SourceToggle, SystemParams};
use rayon::prelude::*;
use serde_json::json;

use crate::config::{fmt_exact, CommandKind, RunConfig, Source};
use crate::dataset::{Cell, Dataset};
use crate::error::{CliError, Result};
use crate::verify::verify;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Header block: software version, the config itself, derived constants and
/// which closed-form variant produced the numbers.
pub fn metadata(cfg: &RunConfig, model: &Model) -> Vec<(String, String)> {
    let mut meta = vec![("version".to_string(), VERSION.to_string())];
    meta.extend(cfg.to_pairs());
    let d = &model.derived;
    for (k, v) in [
        ("big_gamma", d.big_gamma),
        ("mu", d.mu),
        ("n_bath", d.n_bath),
        ("m_bath", d.m_bath),
        ("chi_plus", d.chi_plus),
        ("chi_minus", d.chi_minus),
    ] {
        meta.push((k.to_string(), fmt_exact(v)));
    }
    let report = cfg.params.validate();
    meta.push(("strong_coupling_ratio".into(), fmt_exact(report.strong_coupling_ratio)));
    for w in &report.warnings {
        meta.push(("warning".into(), w.clone()));
    }
    let notes: &[(&str, &str)] = match cfg.variant {
        FormulaVariant::Corrected => &[
            ("form_lambda4", "1/(delta^2+4Gamma^2) prefactor, sinc terms at delta-+2mu"),
            ("form_a1", "all trigonometric arguments in the delay tau, as delta tau/2"),
            ("form_correlator_phase", "exp(-(Gamma + i delta/2) tau)"),
            ("form_coherent_weight", "epsilon^2/g^2"),
            ("form_dressed", "polariton products"),
        ],
        FormulaVariant::PaperLiteral => &[
            ("form_lambda4", "printed, extra 1/mu^2"),
            ("form_a1", "all trigonometric arguments in the delay tau, as delta tau/2"),
            ("form_correlator_phase", "printed, exp(-(Gamma + i delta) tau)"),
            ("form_coherent_weight", "printed, epsilon^2/(2 pi g^2)"),
            ("form_dressed", "printed table"),
        ],
    };
    for (k, v) in notes {
        meta.push((k.to_string(), v.to_string()));
    }
    meta
}

/// Parameters with disabled sources switched off, for evaluators that take
/// no toggle.
fn toggled(p: SystemParams, toggle: SourceToggle) -> SystemParams {
    let mut p = p;
    if !toggle.include_drive {
        p.epsilon = 0.0;
    }
    if !toggle.include_squeezing {
        p.r = 0.0;
    }
    p
}

fn model(p: SystemParams) -> Result<Model> {
    Ok(Model::new(p)?)
}

/// Runs one configuration. Figures are expanded by the caller.
pub fn evaluate(cfg: &RunConfig) -> Result<Vec<Dataset>> {
    cfg.validate()?;
    let m = model(cfg.params)?;
    let meta = metadata(cfg, &m);
    let ds = match cfg.command {
        CommandKind::Figure => {
            return Err(CliError::invalid("figure runs are expanded into their curves first"))
        }
        CommandKind::Dressed => dressed(cfg, &m, meta)?,
        CommandKind::Verify => verify(cfg, &m)?.into_dataset(meta),
        CommandKind::Envelopes if cfg.source == Source::Oracle => {
            return Err(CliError::invalid("envelopes have no oracle form; use --source analytic"))
        }
        _ => tabulate(cfg, meta)?,
    };
    Ok(vec![ds])
}

fn columns(cfg: &RunConfig) -> Vec<&'static str> {
    match (cfg.command, cfg.steady) {
        (CommandKind::Intensity, false) => vec!["t", "intensity"],
        (CommandKind::Intensity, true) => vec!["intensity_ss"],
        (CommandKind::Variance, false) => vec!["t", "var_plus", "var_minus"],
        (CommandKind::Variance, true) => vec!["var_plus_ss", "var_minus_ss"],
        (CommandKind::G2, false) => vec!["tau", "g2"],
        (CommandKind::G2, true) => vec!["g2_zero"],
        (CommandKind::Spectrum, false) => vec!["omega_offset", "incoherent"],
        (CommandKind::Spectrum, true) => vec!["coherent_weight", "incoherent_total"],
        (CommandKind::Envelopes, _) => vec![
            "t", "eta1_re", "eta1_im", "eta_plus_re", "eta_plus_im", "eta_minus_re",
            "eta_minus_im", "eta3_re", "eta3_im", "eta4_re", "eta4_im", "lambda1", "lambda2",
            "lambda3", "lambda4",
        ],
        _ => unreachable!("not tabular"),
    }
}

/// Multiplier applied to a column when reporting in units where `gamma`
/// equals `unit`.
fn unit_factor(column: &str, unit: f64) -> f64 {
    match column {
        "t" | "tau" | "incoherent" | "eta1_re" | "eta1_im" | "eta4_re" | "eta4_im" => 1.0 / unit,
        "omega_offset" | "delta" | "eigenvalue" => unit,
        _ => 1.0,
    }
}

fn tabulate(cfg: &RunConfig, meta: Vec<(String, String)>) -> Result<Dataset> {
    let base = columns(cfg);
    let mut names: Vec<&str> = Vec::new();
    let sweep_name = cfg.sweep.map(|s| match s.param {
        crate::config::SweepParam::Delta => "delta",
        crate::config::SweepParam::Epsilon => "epsilon",
        crate::config::SweepParam::R => "r",
    });
    if let Some(n) = sweep_name {
        names.push(n);
    }
    names.extend(base.iter().copied());

    let points: Vec<Option<f64>> = match &cfg.sweep {
        Some(s) => s.grid.points().into_iter().map(Some).collect(),
        None => vec![None],
    };
    let blocks: Vec<Result<Vec<Vec<f64>>>> = points
        .par_iter()
        .map(|value| {
            let params = match (cfg.sweep, value) {
                (Some(s), Some(v)) => s.param.apply(cfg.params, *v),
                _ => cfg.params,
            };
            let rows = if cfg.steady {
                vec![steady_row(cfg, params)?]
            } else {
                grid_rows(cfg, params)?
            };
            Ok(rows
                .into_iter()
                .map(|r| value.iter().copied().chain(r).collect())
                .collect())
        })
        .collect();

    let mut ds = Dataset::new(meta, &names);
    let factors: Vec<f64> = names.iter().map(|n| unit_factor(n, cfg.unit)).collect();
    for block in blocks {
        for row in block? {
            ds.push(
                row.iter()
                    .zip(&factors)
                    .map(|(x, f)| Cell::Num(x * f))
                    .collect(),
            );
        }
    }
    if cfg.command == CommandKind::Spectrum && cfg.sweep.is_none() {
        let w = match cfg.source {
            Source::Analytic => coherent_weight(&model(toggled(cfg.params, cfg.toggle))?, cfg.variant),
            Source::Oracle => steady_state(&model(toggled(cfg.params, cfg.toggle))?).mean_b.norm_sqr(),
        };
        ds.metadata.push(("coherent_weight".into(), fmt_exact(w)));
    }
    Ok(ds)
}

/// Oracle time grids must start at zero; returns the grid to integrate and
/// how many leading entries to drop afterwards.
fn from_zero(ts: &[f64]) -> (Vec<f64>, usize) {
    if ts.first() == Some(&0.0) {
        (ts.to_vec(), 0)
    } else {
        (std::iter::once(0.0).chain(ts.iter().copied()).collect(), 1)
    }
}

fn moments(m: &Model, ts: &[f64]) -> Result<Vec<MomentState>> {
    let (grid, skip) = from_zero(ts);
    let mut traj = integrate_moments(m, &MomentState::vacuum_with_exciton(), &grid)?;
    traj.drain(..skip);
    Ok(traj)
}

fn grid_rows(cfg: &RunConfig, params: SystemParams) -> Result<Vec<Vec<f64>>> {
    let xs = cfg.grid.points();
    let analytic = cfg.source == Source::Analytic;
    let v = cfg.variant;
    Ok(match cfg.command {
        CommandKind::Intensity => {
            if analytic {
                let m = model(params)?;
                xs.iter().map(|&t| vec![t, intensity(&m, t, cfg.toggle)]).collect()
            } else {
                let m = model(toggled(params, cfg.toggle))?;
                let traj = moments(&m, &xs)?;
                xs.iter().zip(&traj).map(|(&t, s)| vec![t, s.n_bb]).collect()
            }
        }
        CommandKind::Variance => {
            let m = model(params)?;
            if analytic {
                xs.iter()
                    .map(|&t| {
                        vec![
                            t,
                            quad_variance(&m, t, Quadrature::Plus, v),
                            quad_variance(&m, t, Quadrature::Minus, v),
                        ]
                    })
                    .collect()
            } else {
                let traj = moments(&m, &xs)?;
                xs.iter()
                    .zip(&traj)
                    .map(|(&t, s)| vec![t, s.quad_variance(Quadrature::Plus), s.quad_variance(Quadrature::Minus)])
                    .collect()
            }
        }
        CommandKind::G2 => {
            let m = model(toggled(params, cfg.toggle))?;
            let ys = if analytic {
                xs.iter().map(|&tau| g2(&m, tau)).collect::<polariton_core::Result<Vec<_>>>()?
            } else {
                g2_gaussian(&m, &xs)?
            };
            xs.iter().zip(ys).map(|(&tau, y)| vec![tau, y]).collect()
        }
        CommandKind::Spectrum => {
            let m = model(toggled(params, cfg.toggle))?;
            let ys = if analytic {
                xs.iter().map(|&x| incoherent_spectrum(&m, x)).collect()
            } else {
                spectrum_numeric(&m, &xs)?
            };
            xs.iter().zip(ys).map(|(&x, y)| vec![x, y]).collect()
        }
        CommandKind::Envelopes => {
            let m = model(params)?;
            xs.iter()
                .map(|&t| {
                    let e = envelopes(&m, t);
                    let c = intensity_coeffs(&m, t);
                    let mut row = vec![t];
                    for z in [e.eta1, e.eta_plus, e.eta_minus, e.eta3, e.eta4] {
                        row.push(z.re);
                        row.push(z.im);
                    }
                    row.extend([c.lambda1, c.lambda2, c.lambda3, variance_coeff_lambda4(&m, t, v)]);
                    row
                })
                .collect()
        }
        _ => unreachable!("not tabular"),
    })
}

fn steady_row(cfg: &RunConfig, params: SystemParams) -> Result<Vec<f64>> {
    let analytic = cfg.source == Source::Analytic;
    let m = model(toggled(params, cfg.toggle))?;
    Ok(match cfg.command {
        CommandKind::Intensity => vec![if analytic { intensity_ss(&m) } else { steady_state(&m).n_bb }],
        CommandKind::Variance => {
            let m = model(params)?;
            if analytic {
                vec![quad_variance_ss(&m, Quadrature::Plus), quad_variance_ss(&m, Quadrature::Minus)]
            } else {
                let s = steady_state(&m);
                vec![s.quad_variance(Quadrature::Plus), s.quad_variance(Quadrature::Minus)]
            }
        }
        CommandKind::G2 => vec![if analytic { g2(&m, 0.0)? } else { g2_gaussian(&m, &[0.0])?[0] }],
        CommandKind::Spectrum => {
            if analytic {
                let ss = intensity_ss(&m);
                let w = coherent_weight(&m, cfg.variant);
                vec![w, ss - m.epsilon().powi(2) / m.g().powi(2)]
            } else {
                let s = steady_state(&m);
                let w = s.mean_b.norm_sqr();
                vec![w, s.n_bb - w]
            }
        }
        CommandKind::Envelopes => return Err(CliError::invalid("envelopes have no steady form")),
        _ => unreachable!("not tabular"),
    })
}

fn dressed(cfg: &RunConfig, m: &Model, meta: Vec<(String, String)>) -> Result<Dataset> {
    let manifold = Manifold::try_from(cfg.manifold)?;
    let dm: DressedManifold = match cfg.source {
        Source::Analytic => table_one(m, manifold, cfg.variant),
        Source::Oracle => dressed_manifold(m, manifold),
    };
    let mut names = vec!["eigenvalue".to_string()];
    for (e, p) in &dm.basis {
        names.push(format!("c_{e}_{p}_re"));
        names.push(format!("c_{e}_{p}_im"));
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut ds = Dataset::new(meta, &refs);
    let unit = cfg.unit;
    for (lambda, vec) in dm.eigenvalues.iter().zip(&dm.eigenvectors) {
        let mut row = vec![Cell::Num(lambda * unit)];
        for z in vec {
            row.push(Cell::Num(z.re));
            row.push(Cell::Num(z.im));
        }
        ds.push(row);
    }
    ds.extra = Some(json!({
        "manifold": dm.manifold,
        "basis": dm.basis,
        "eigenvalues": dm.eigenvalues.iter().map(|x| x * unit).collect::<Vec<_>>(),
        "eigenvectors": dm
            .eigenvectors
            .iter()
            .map(|v| v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    }));
    Ok(ds)
}
