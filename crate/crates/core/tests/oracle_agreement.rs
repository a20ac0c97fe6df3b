//! Closed forms against the exact oracles, and the oracles against each other.

use polariton_core::observables::{
    correlation_bb, g2, incoherent_spectrum, intensity, quad_variance, SourceToggle,
};
use polariton_core::oracle::{
    correlation_regression, drift_matrix, g2_gaussian, integrate_moments, lindblad_evolve,
    spectrum_numeric, steady_state, FockConfig, MomentState,
};
use polariton_core::{FormulaVariant, Model, Quadrature, SystemParams};

fn model(g: f64, delta: f64, epsilon: f64, r: f64) -> Model {
    Model::new(SystemParams::new(g, 1.2, 1.0, delta, epsilon, r)).unwrap()
}

fn grid(stop: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|k| stop * k as f64 / n as f64).collect()
}

fn max_rel_intensity(m: &Model) -> f64 {
    let ts = grid(10.0, 200);
    let exact = integrate_moments(m, &MomentState::vacuum_with_exciton(), &ts).unwrap();
    ts.iter()
        .zip(&exact)
        .map(|(&t, st)| (intensity(m, t, SourceToggle::BOTH) - st.n_bb).abs() / st.n_bb)
        .fold(0.0, f64::max)
}

#[test]
fn intensity_error_shrinks_with_coupling() {
    for delta in [0.0, 2.0] {
        let errs: Vec<f64> = [5.0, 10.0, 20.0, 40.0]
            .iter()
            .map(|&g| max_rel_intensity(&model(g, delta, 5.0, 1.0)))
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
        assert!(errs[3] < 0.02, "{errs:?}");
    }
}

#[test]
fn driven_squeezed_steady_intensity_within_five_percent() {
    let m = model(5.0, 2.0, 7.0, 1.8);
    let traj = integrate_moments(&m, &MomentState::vacuum_with_exciton(), &[0.0, 80.0]).unwrap();
    let analytic = intensity(&m, 1e3, SourceToggle::BOTH);
    assert!((analytic - 6.5001).abs() < 1e-3);
    assert!((traj[1].n_bb - analytic).abs() / analytic < 0.05);
}

#[test]
fn variance_tracks_moment_integration() {
    let m = model(40.0, 2.0, 0.0, 1.0);
    let ts = grid(10.0, 100);
    let exact = integrate_moments(&m, &MomentState::vacuum_with_exciton(), &ts).unwrap();
    for (&t, st) in ts.iter().zip(&exact) {
        for q in [Quadrature::Plus, Quadrature::Minus] {
            let v = quad_variance(&m, t, q, FormulaVariant::Corrected);
            let e = st.quad_variance(q);
            assert!((v - e).abs() / e < 0.02, "t = {t}, {q:?}: {v} vs {e}");
        }
    }
}

#[test]
fn correlator_error_shrinks_with_coupling() {
    let taus = grid(5.0, 250);
    let errs: Vec<f64> = [5.0, 10.0, 20.0, 40.0]
        .iter()
        .map(|&g| {
            let m = model(g, 2.0, 0.0, 1.0);
            let exact = correlation_regression(&m, &taus).unwrap();
            let scale = exact[0].norm();
            taus.iter()
                .zip(&exact)
                .map(|(&tau, c)| (correlation_bb(&m, tau, FormulaVariant::Corrected) - c).norm() / scale)
                .fold(0.0, f64::max)
        })
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn gaussian_g2_agrees_with_closed_form_at_strong_coupling() {
    let m = model(40.0, 0.0, 3.0, 1.0);
    let taus = [0.0, 0.5, 1.0, 3.0];
    let exact = g2_gaussian(&m, &taus).unwrap();
    for (tau, e) in taus.iter().zip(&exact) {
        let v = g2(&m, *tau).unwrap();
        assert!((v - e).abs() / e < 0.02, "tau = {tau}: {v} vs {e}");
    }
}

#[test]
fn numeric_spectrum_obeys_sum_rule() {
    let m = model(6.0, 2.0, 0.0, 1.0);
    let step = m.big_gamma() / 20.0;
    let omegas: Vec<f64> = (0..=8000).map(|k| -110.0 + k as f64 * step).collect();
    let s = spectrum_numeric(&m, &omegas).unwrap();
    assert!(s.iter().all(|&v| v >= -1e-9));
    let total: f64 = s.iter().sum::<f64>() * step;
    let incoherent = steady_state(&m).n_bb;
    assert!((total - incoherent).abs() / incoherent < 0.01, "{total} vs {incoherent}");
    // same sum on the closed form
    let closed: f64 = omegas.iter().map(|&x| incoherent_spectrum(&m, x)).sum::<f64>() * step;
    assert!((closed - incoherent).abs() / incoherent < 0.02);
}

#[test]
fn steady_state_independent_of_equilibration_horizon() {
    let m = model(5.0, 2.0, 3.0, 1.0);
    let init = MomentState::vacuum_with_exciton();
    let traj = integrate_moments(&m, &init, &[0.0, 60.0, 90.0]).unwrap();
    let ss = steady_state(&m);
    for st in &traj[1..] {
        assert!((st.n_bb - ss.n_bb).abs() < 1e-8);
        assert!((st.s_bb - ss.s_bb).norm() < 1e-8);
        assert!((st.mean_b - ss.mean_b).norm() < 1e-8);
    }
}

#[test]
fn equal_decay_rates_give_exact_eigenvalues() {
    let m = Model::new(SystemParams::new(5.0, 1.0, 1.0, 0.0, 0.0, 0.0)).unwrap();
    let [lo, hi] = drift_matrix(&m).eigenvalues();
    assert!((lo.re + 0.5).abs() < 1e-14 && (lo.im + 5.0).abs() < 1e-14);
    assert!((hi.re + 0.5).abs() < 1e-14 && (hi.im - 5.0).abs() < 1e-14);
}

#[test]
fn fock_trace_preserved_with_all_sources() {
    let m = model(3.0, 1.0, 0.3, 0.3);
    let cfg = FockConfig::new(8, 8, 0.5, 6.0);
    let mut loose = cfg;
    loose.tail_limit = 1.0;
    for s in lindblad_evolve(&m, &loose).unwrap() {
        assert!((s.trace - 1.0).abs() < 1e-9, "t = {}", s.t);
    }
}

#[test]
fn fock_and_moments_agree_early_in_driven_squeezed_run() {
    let m = model(5.0, 0.0, 0.2, 0.5);
    let mut cfg = FockConfig::new(10, 10, 0.5, 3.0);
    cfg.tail_limit = 1e-4;
    let fock = lindblad_evolve(&m, &cfg).unwrap();
    let ts: Vec<f64> = fock.iter().map(|s| s.t).collect();
    let mom = integrate_moments(&m, &MomentState::vacuum_with_exciton(), &ts).unwrap();
    for (f, e) in fock.iter().zip(&mom) {
        assert!((f.n_bb - e.n_bb).abs() < 1e-3, "t = {}: {} vs {}", f.t, f.n_bb, e.n_bb);
        assert!((f.var_minus - e.quad_variance(Quadrature::Minus)).abs() < 1e-2);
    }
}
