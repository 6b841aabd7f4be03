//! Quadrature correctness, speed-limit metrics, and Uhlmann fidelity tests.
//! Frozen reference values come from an independent eigendecomposition
//! pipeline; a dense in-test trapezoid integration cross-checks the
//! time-averaged rates end to end.

use num_complex::Complex64;
use qsl_core::density::ReducedDensity;
use qsl_core::metrics::{
    bures_angle, delta_time_average, fidelity, norm_rates, speed_limit, uhlmann_fidelity_2x2,
    DeltaAccumulator,
};
use qsl_core::quad::{integrate, QuadConfig};
use qsl_core::{ModelParams, NormalizationMode};

const IU: NormalizationMode = NormalizationMode::InitialUnit;

fn params(eta: f64, n_max: usize) -> ModelParams {
    ModelParams::new(1.0, 1.0, eta, 0.5, n_max).unwrap()
}

// ---------------------------------------------------------------- quadrature

#[test]
fn quadrature_integrates_sine_exactly() {
    let cfg = QuadConfig::default();
    let out = integrate(|x| Ok(x.sin()), 0.0, core::f64::consts::PI, &cfg).unwrap();
    assert!((out.value - 2.0).abs() < 1e-12, "got {:.16}", out.value);
}

#[test]
fn quadrature_handles_oscillatory_integrand() {
    // int_0^10 cos(20 x) dx = sin(200)/20
    let cfg = QuadConfig::default();
    let out = integrate(|x| Ok((20.0 * x).cos()), 0.0, 10.0, &cfg).unwrap();
    let want = (200.0f64).sin() / 20.0;
    assert!((out.value - want).abs() < 1e-10, "got {:.16}", out.value);
}

#[test]
fn quadrature_handles_kinked_integrand() {
    // int_0^2 |x - sqrt(2)| dx, kink off any panel midpoint.
    let r = core::f64::consts::SQRT_2;
    let cfg = QuadConfig::default();
    let out = integrate(|x| Ok((x - r).abs()), 0.0, 2.0, &cfg).unwrap();
    let want = r * r / 2.0 + (2.0 - r) * (2.0 - r) / 2.0;
    // Accuracy promise is the configured absolute tolerance.
    assert!((out.value - want).abs() < cfg.abs_tol, "got {:.16}", out.value);
}

#[test]
fn quadrature_reports_budget_exhaustion() {
    let cfg = QuadConfig {
        abs_tol: 1e-300,
        max_evals: 600,
        seed_width: None,
    };
    // Smooth but impossible tolerance: must fail loudly, not hang.
    let err = integrate(|x| Ok((37.0 * x).sin().exp()), 0.0, 30.0, &cfg).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("budget"), "unexpected error: {msg}");
}

#[test]
fn quadrature_rejects_invalid_bounds() {
    let cfg = QuadConfig::default();
    assert!(integrate(|_| Ok(1.0), 1.0, 0.0, &cfg).is_err());
    assert!(integrate(|_| Ok(1.0), f64::NAN, 1.0, &cfg).is_err());
    let out = integrate(|_| Ok(1.0), 2.0, 2.0, &cfg).unwrap();
    assert_eq!(out.value, 0.0);
}

#[test]
fn quadrature_propagates_integrand_errors() {
    let cfg = QuadConfig::default();
    let res = integrate(
        |x| {
            if x > 0.5 {
                Err(qsl_core::QslError::NonConvergence("probe".into()))
            } else {
                Ok(1.0)
            }
        },
        0.0,
        1.0,
        &cfg,
    );
    assert!(res.is_err());
}

// ------------------------------------------------------------------- metrics

/// Frozen instantaneous norm rates at t = 2 (eta = 1, n_max = 5).
#[test]
fn frozen_instantaneous_norm_rates() {
    let p = params(1.0, 5);
    let r = norm_rates(&p, 2.0, IU).unwrap();
    assert!((r.op - 0.2579236393807761).abs() < 1e-10, "op = {:.16}", r.op);
    assert!((r.tr - 0.28351492451741644).abs() < 1e-10, "tr = {:.16}", r.tr);
    assert!((r.hs - 0.25919011868967823).abs() < 1e-10, "hs = {:.16}", r.hs);
}

/// Frozen time-averaged rates at t = 2 (eta = 1, n_max = 5), checked both
/// against the frozen values and against a dense in-test trapezoid rule.
#[test]
fn frozen_time_averaged_rates() {
    let p = params(1.0, 5);
    let d = delta_time_average(&p, 2.0, IU, &QuadConfig::default()).unwrap();
    assert!((d.op - 0.599150019945).abs() < 1e-6, "op = {:.13}", d.op);
    assert!((d.tr - 0.779544102388).abs() < 1e-6, "tr = {:.13}", d.tr);
    assert!((d.hs - 0.639196073703).abs() < 1e-6, "hs = {:.13}", d.hs);

    // Independent dense trapezoid over the same integrand.
    let n = 4000usize;
    let h = 2.0 / n as f64;
    let (mut op, mut tr, mut hs) = (0.0, 0.0, 0.0);
    for i in 0..=n {
        let t = i as f64 * h;
        let r = norm_rates(&p, t, IU).unwrap();
        let w = if i == 0 || i == n { 0.5 } else { 1.0 };
        op += w * r.op;
        tr += w * r.tr;
        hs += w * r.hs;
    }
    let (op, tr, hs) = (op * h / 2.0, tr * h / 2.0, hs * h / 2.0);
    assert!((d.op - op).abs() < 1e-6, "trapezoid op {op:.12} vs {:.12}", d.op);
    assert!((d.tr - tr).abs() < 1e-6, "trapezoid tr {tr:.12} vs {:.12}", d.tr);
    assert!((d.hs - hs).abs() < 1e-6, "trapezoid hs {hs:.12} vs {:.12}", d.hs);
}

/// Frozen speed-limit bound at t = 2 (eta = 1, n_max = 5).
#[test]
fn frozen_speed_limit_bound() {
    let p = params(1.0, 5);
    let sl = speed_limit(&p, 2.0, IU, &QuadConfig::default()).unwrap();
    assert!((sl.t_lb - 1.5898612475).abs() < 1e-6, "t_lb = {:.12}", sl.t_lb);
    assert!(sl.t_lb <= sl.t);
    assert!((sl.ratio - sl.t_lb / 2.0).abs() < 1e-14);
}

/// With the coupling off the rates collapse to the free-precession constants
/// omega/2, omega, omega/sqrt(2).
#[test]
fn decoupled_rates_match_free_precession() {
    let p = ModelParams::new(1.7, 1.0, 0.0, 0.5, 3).unwrap();
    for &t in &[0.0, 0.9, 4.1] {
        let r = norm_rates(&p, t, IU).unwrap();
        assert!((r.op - 1.7 / 2.0).abs() < 1e-12, "t={t}");
        assert!((r.tr - 1.7).abs() < 1e-12, "t={t}");
        assert!((r.hs - 1.7 / core::f64::consts::SQRT_2).abs() < 1e-12, "t={t}");
    }
    // Time averages of constants are the constants.
    let d = delta_time_average(&p, 3.0, IU, &QuadConfig::default()).unwrap();
    assert!((d.op - 0.85).abs() < 1e-9);
    assert!((d.tr - 1.7).abs() < 1e-9);
}

/// At t = 0 the time average degenerates to the instantaneous rate.
#[test]
fn time_average_at_zero_is_instantaneous_rate() {
    let p = params(1.0, 5);
    let d = delta_time_average(&p, 0.0, IU, &QuadConfig::default()).unwrap();
    let r = norm_rates(&p, 0.0, IU).unwrap();
    assert_eq!(d.op, r.op);
    assert_eq!(d.tr, r.tr);
    assert_eq!(d.hs, r.hs);
}

/// Norm ordering: operator <= Hilbert-Schmidt <= trace for a traceless-ish
/// 2x2 generator (op <= hs <= tr holds for any 2x2 Hermitian matrix).
#[test]
fn norm_ordering_holds_along_trajectories() {
    for &(eta, n_max) in &[(0.1, 0usize), (1.0, 5), (5.0, 10)] {
        let p = params(eta, n_max);
        for i in 0..60 {
            let t = 0.1 * (i + 1) as f64;
            let r = norm_rates(&p, t, IU).unwrap();
            assert!(r.op <= r.hs + 1e-14, "op<=hs at t={t}, eta={eta}");
            assert!(r.hs <= r.tr + 1e-14, "hs<=tr at t={t}, eta={eta}");
            assert!(r.op >= 0.0 && r.tr.is_finite());
        }
    }
}

/// The bound never exceeds the elapsed time, across regimes and times.
#[test]
fn lower_bound_never_exceeds_elapsed_time() {
    let cfg = QuadConfig::default();
    for &(eta, n_max) in &[(0.1, 0usize), (1.0, 5), (5.0, 10)] {
        let p = params(eta, n_max);
        let mut acc = DeltaAccumulator::new(&p, IU, cfg).unwrap();
        for i in 1..=40 {
            let t = 0.25 * i as f64;
            let sl = acc.speed_limit_at(t).unwrap();
            assert!(
                sl.t_lb <= t * (1.0 + 1e-12),
                "t_lb = {} > t = {t} at eta={eta}, n_max={n_max}",
                sl.t_lb
            );
            assert!(sl.ratio >= 0.0 && sl.ratio <= 1.0 + 1e-12);
        }
    }
}

/// Fidelity closed form: F = Omega (1 + cos omega t) / 2, and the Bures
/// angle is its arccosine.
#[test]
fn fidelity_and_bures_angle_closed_forms() {
    let p = params(1.0, 5);
    for &t in &[0.3, 1.1, 2.8] {
        let f = fidelity(&p, t, IU).unwrap();
        let omega_t = qsl_core::env_factor(&p, t, IU).unwrap();
        let want = omega_t * (1.0 + (p.omega * t).cos()) / 2.0;
        assert!((f - want).abs() < 1e-14, "t={t}");
        let b = bures_angle(f);
        assert!((b.cos() - f).abs() < 1e-12);
        assert!((0.0..=core::f64::consts::FRAC_PI_2).contains(&b));
    }
    assert_eq!(fidelity(&p, 0.0, IU).unwrap(), 1.0);
    assert_eq!(bures_angle(1.0), 0.0);
    // Clamping against tiny float excursions.
    assert_eq!(bures_angle(1.0 + 1e-15), 0.0);
}

/// The model fidelity equals Tr(P rho_t) with P the initial projector:
/// the mean of all four density-matrix entries.
#[test]
fn fidelity_matches_projector_overlap() {
    let p = params(1.0, 5);
    for &t in &[0.5, 1.7, 3.9] {
        let rho = qsl_core::rho_s(&p, t, IU).unwrap();
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..2 {
            for c in 0..2 {
                acc += rho.get(r, c);
            }
        }
        let overlap = acc.re / 2.0;
        let f = fidelity(&p, t, IU).unwrap();
        assert!((f - overlap).abs() < 1e-13, "t={t}: {f} vs {overlap}");
    }
}

/// Incremental accumulator agrees with one-shot integration at every grid
/// point (same integrand, different panel decomposition).
#[test]
fn accumulator_matches_one_shot_integration() {
    let p = params(1.0, 5);
    let cfg = QuadConfig::default();
    let mut acc = DeltaAccumulator::new(&p, IU, cfg).unwrap();
    for &t in &[0.4, 1.1, 2.0, 3.5] {
        let inc = acc.advance_to(t).unwrap();
        let one = delta_time_average(&p, t, IU, &cfg).unwrap();
        assert!((inc.op - one.op).abs() < 5e-8, "op at t={t}");
        assert!((inc.tr - one.tr).abs() < 5e-8, "tr at t={t}");
        assert!((inc.hs - one.hs).abs() < 5e-8, "hs at t={t}");
    }
}

/// Matrix-norm evaluation agrees with the closed-form rate expressions
/// when fed the analytic derivative matrix.
#[test]
fn matrix_norms_agree_with_closed_form_rates() {
    use qsl_core::density::{drho_dt, DerivativeScheme};
    use qsl_core::metrics::NormRates;
    let p = params(1.0, 5);
    for &t in &[0.3, 1.5, 3.2] {
        let drho = drho_dt(&p, t, IU, DerivativeScheme::Analytic).unwrap();
        let from_m = NormRates::from_matrix(&drho).unwrap();
        let closed = norm_rates(&p, t, IU).unwrap();
        assert!((from_m.op - closed.op).abs() < 1e-12, "op at t={t}");
        assert!((from_m.tr - closed.tr).abs() < 1e-12, "tr at t={t}");
        assert!((from_m.hs - closed.hs).abs() < 1e-12, "hs at t={t}");
    }
}

/// The finite-difference derivative scheme, run through the whole
/// time-averaging pipeline, reproduces the analytic scheme.
#[test]
fn finite_difference_scheme_reproduces_analytic_averages() {
    use qsl_core::density::DerivativeScheme;
    let p = params(1.0, 5);
    let cfg = QuadConfig::default();
    let mut analytic = DeltaAccumulator::new(&p, IU, cfg).unwrap();
    let mut fd =
        DeltaAccumulator::with_scheme(&p, IU, cfg, DerivativeScheme::FiniteDiff { h: 1e-5 })
            .unwrap();
    for &t in &[0.8, 2.0] {
        let a = analytic.advance_to(t).unwrap();
        let f = fd.advance_to(t).unwrap();
        assert!((a.op - f.op).abs() < 1e-6, "op at t={t}: {} vs {}", a.op, f.op);
        assert!((a.tr - f.tr).abs() < 1e-6, "tr at t={t}: {} vs {}", a.tr, f.tr);
        assert!((a.hs - f.hs).abs() < 1e-6, "hs at t={t}: {} vs {}", a.hs, f.hs);
    }
    assert!(DeltaAccumulator::with_scheme(
        &p,
        IU,
        cfg,
        DerivativeScheme::FiniteDiff { h: 0.0 }
    )
    .is_err());
}

#[test]
fn accumulator_rejects_backward_time() {
    let p = params(0.1, 0);
    let mut acc = DeltaAccumulator::new(&p, IU, QuadConfig::default()).unwrap();
    acc.advance_to(1.0).unwrap();
    assert!(acc.advance_to(0.5).is_err());
}

// ---------------------------------------------------------- Uhlmann fidelity

/// Frozen general-pair value: rho = [[0.7, 0.2+0.1i], [0.2-0.1i, 0.3]],
/// sigma = [[0.5, -0.1i], [0.1i, 0.5]] gives
/// F = Tr(rho sigma) + 2 sqrt(det rho det sigma) = 0.871918358845308.
#[test]
fn frozen_uhlmann_fidelity_pair() {
    let rho = ReducedDensity::from_elems(
        2,
        vec![
            Complex64::new(0.7, 0.0),
            Complex64::new(0.2, 0.1),
            Complex64::new(0.2, -0.1),
            Complex64::new(0.3, 0.0),
        ],
    )
    .unwrap();
    let sigma = ReducedDensity::from_elems(
        2,
        vec![
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, -0.1),
            Complex64::new(0.0, 0.1),
            Complex64::new(0.5, 0.0),
        ],
    )
    .unwrap();
    let f = uhlmann_fidelity_2x2(&rho, &sigma).unwrap();
    assert!((f - 0.871918358845308).abs() < 1e-13, "F = {f:.15}");
    // Symmetry in the arguments.
    let fr = uhlmann_fidelity_2x2(&sigma, &rho).unwrap();
    assert!((f - fr).abs() < 1e-14);
}

#[test]
fn uhlmann_fidelity_of_state_with_itself_is_unity() {
    let rho = ReducedDensity::from_elems(
        2,
        vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.1, -0.2),
            Complex64::new(0.1, 0.2),
            Complex64::new(0.4, 0.0),
        ],
    )
    .unwrap();
    let f = uhlmann_fidelity_2x2(&rho, &rho).unwrap();
    assert!((f - 1.0).abs() < 1e-14, "F = {f:.16}");
}

/// The pure-state shortcut used by the model agrees with the general
/// Uhlmann formula applied to the explicit matrices.
#[test]
fn model_fidelity_agrees_with_general_uhlmann_formula() {
    let p = params(1.0, 5);
    let h = Complex64::new(0.5, 0.0);
    let proj = ReducedDensity::from_elems(2, vec![h, h, h, h]).unwrap();
    for &t in &[0.4, 1.3, 2.7] {
        // TOTAL-TRACE mode keeps rho a valid unit-trace state, which the
        // general formula requires.
        let rho = qsl_core::rho_s(&p, t, NormalizationMode::TotalTrace).unwrap();
        let f_general = uhlmann_fidelity_2x2(&proj, &rho).unwrap();
        let f_model = fidelity(&p, t, NormalizationMode::TotalTrace).unwrap();
        assert!(
            (f_general - f_model).abs() < 1e-10,
            "t={t}: {f_general} vs {f_model}"
        );
    }
}

#[test]
fn uhlmann_fidelity_rejects_non_positive_input() {
    let bad = ReducedDensity::from_elems(
        2,
        vec![
            Complex64::new(0.2, 0.0),
            Complex64::new(0.9, 0.0),
            Complex64::new(0.9, 0.0),
            Complex64::new(0.8, 0.0),
        ],
    )
    .unwrap();
    let ok = ReducedDensity::from_elems(
        2,
        vec![
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.0),
        ],
    )
    .unwrap();
    assert!(uhlmann_fidelity_2x2(&bad, &ok).is_err());
}
