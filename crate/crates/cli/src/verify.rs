//! Analytic closed forms against the exact oracles for one parameter set.

use polariton_core::observables::{
    correlation_bb, g2, incoherent_spectrum, intensity, quad_variance, SourceToggle,
};
use polariton_core::oracle::{
    correlation_regression, g2_gaussian, integrate_moments, spectrum_numeric, MomentState,
};
use polariton_core::{DerivedParams, FormulaVariant, Model, Quadrature, SystemParams};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::{fmt_exact, RunConfig};
use crate::dataset::{Cell, Dataset};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableCheck {
    pub observable: String,
    /// How the error is normalized.
    pub metric: String,
    pub max_rel_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub params: SystemParams,
    pub derived: DerivedParams,
    pub variant: FormulaVariant,
    /// Declared tolerance, `max(kappa, gamma) / g`: the size of the neglected
    /// terms in the strong-coupling expansion.
    pub tolerance: f64,
    pub checks: Vec<ObservableCheck>,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn check(&self, observable: &str) -> Option<&ObservableCheck> {
        self.checks.iter().find(|c| c.observable == observable)
    }

    pub fn into_dataset(self, mut meta: Vec<(String, String)>) -> Dataset {
        meta.push(("tolerance".into(), fmt_exact(self.tolerance)));
        meta.push(("pass".into(), self.pass.to_string()));
        for n in &self.notes {
            meta.push(("note".into(), n.clone()));
        }
        let mut ds = Dataset::new(meta, &["observable", "metric", "max_rel_error", "tolerance", "pass"]);
        for c in &self.checks {
            ds.push(vec![
                Cell::Text(c.observable.clone()),
                Cell::Text(c.metric.clone()),
                Cell::Num(c.max_rel_error),
                Cell::Num(c.tolerance),
                Cell::Text(c.pass.to_string()),
            ]);
        }
        ds.extra = Some(json!({ "report": self }));
        ds
    }
}

fn check(observable: &str, metric: &str, err: f64, tolerance: f64) -> ObservableCheck {
    ObservableCheck {
        observable: observable.into(),
        metric: metric.into(),
        max_rel_error: err,
        tolerance,
        pass: err <= tolerance,
    }
}

/// Pointwise relative error, with the denominator floored at `1e-3` of the
/// largest reference value so decays to zero do not blow it up.
fn max_rel(approx: &[f64], exact: &[f64]) -> f64 {
    let scale = exact.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let floor = 1e-3 * scale;
    approx
        .iter()
        .zip(exact)
        .map(|(a, e)| (a - e).abs() / e.abs().max(floor).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max)
}

/// Largest absolute deviation over the largest reference magnitude.
fn max_over_peak(approx: &[f64], exact: &[f64]) -> f64 {
    let peak = exact.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if peak == 0.0 {
        return approx.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    }
    approx
        .iter()
        .zip(exact)
        .map(|(a, e)| (a - e).abs())
        .fold(0.0, f64::max)
        / peak
}

pub fn verify(cfg: &RunConfig, m: &Model) -> Result<VerifyReport> {
    let p = cfg.params;
    let tolerance = p.kappa.max(p.gamma) / p.g;
    let v = cfg.variant;
    let ts = cfg.grid.points();
    let mut checks = Vec::new();
    let mut notes = vec![format!("closed-form variant: {}", v.as_str())];

    let (grid, skip) = if ts.first() == Some(&0.0) {
        (ts.clone(), 0)
    } else {
        (std::iter::once(0.0).chain(ts.iter().copied()).collect(), 1)
    };
    let traj = integrate_moments(m, &MomentState::vacuum_with_exciton(), &grid)?;
    let traj = &traj[skip..];

    let exact: Vec<f64> = traj.iter().map(|s| s.n_bb).collect();
    let approx: Vec<f64> = ts.iter().map(|&t| intensity(m, t, SourceToggle::BOTH)).collect();
    checks.push(check("intensity", "pointwise relative", max_rel(&approx, &exact), tolerance));

    for (name, q) in [("variance_plus", Quadrature::Plus), ("variance_minus", Quadrature::Minus)] {
        let exact: Vec<f64> = traj.iter().map(|s| s.quad_variance(q)).collect();
        let approx: Vec<f64> = ts.iter().map(|&t| quad_variance(m, t, q, v)).collect();
        checks.push(check(name, "pointwise relative", max_rel(&approx, &exact), tolerance));
    }

    let exact = correlation_regression(m, &ts)?;
    let c0 = exact[0].norm();
    let err = ts
        .iter()
        .zip(&exact)
        .map(|(&tau, c)| (correlation_bb(m, tau, v) - c).norm())
        .fold(0.0, f64::max)
        / c0.max(f64::MIN_POSITIVE);
    checks.push(check("correlator", "max |difference| / |C(0)|", err, tolerance));

    match g2_gaussian(m, &ts) {
        Ok(exact) => {
            let approx = ts.iter().map(|&tau| g2(m, tau)).collect::<polariton_core::Result<Vec<_>>>()?;
            checks.push(check("g2", "pointwise relative", max_rel(&approx, &exact), tolerance));
        }
        Err(polariton_core::Error::DegenerateIntensity) => {
            notes.push("g2 skipped: steady intensity is zero (epsilon = 0 and r = 0)".into());
        }
        Err(e) => return Err(e.into()),
    }

    let reach = m.delta().abs() / 2.0 + m.mu() + 20.0 * m.big_gamma();
    let n = 801;
    let omegas: Vec<f64> = (0..n).map(|k| -reach + 2.0 * reach * k as f64 / (n - 1) as f64).collect();
    let exact = spectrum_numeric(m, &omegas)?;
    let approx: Vec<f64> = omegas.iter().map(|&x| incoherent_spectrum(m, x)).collect();
    checks.push(check("spectrum", "max |difference| / peak", max_over_peak(&approx, &exact), tolerance));

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        params: p,
        derived: m.derived,
        variant: v,
        tolerance,
        checks,
        pass,
        notes,
    })
}
