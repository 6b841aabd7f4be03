//! Transition-amplitude tests: frozen reference values (computed with an
//! independent matrix-exponential implementation), structural identities,
//! and agreement between the recurrence evaluator and the explicit term sum
//! in the latter's numerically safe region.

use num_complex::Complex64;
use qsl_core::amplitude::{amplitude_term_sum, AmplitudeTable};
use qsl_core::aux::{aux_at, zeta_frequency_swapped};
use qsl_core::QslError;

fn cdiff(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm()
}

/// Frozen values from an independent dense `exp(-i t K)` evaluation of
/// `K = beta b^dag b + gamma (b^dag + b)` (adaptive Fock truncation,
/// verified to 2.4e-13 against the closed form over random parameters).
#[test]
fn frozen_reference_amplitudes() {
    let cases: &[(f64, f64, usize, usize, f64, f64, f64)] = &[
        // (beta, gamma, n, n', t, re, im)
        (1.0, 0.075, 1, 1, 0.5, 0.87582606097605076, -0.47833435488704384),
        (1.0, 0.75, 2, 1, 0.7, -0.47079540764691385, -0.29005716545370996),
        (1.0, 3.75, 0, 0, 0.15, 0.85390278051475021, 0.0067470500748035124),
        (1.0, 3.75, 3, 2, 1.0, -0.041327028477153249, -0.14892809475010022),
        (1.0, 0.075, 0, 0, 1.0, 0.99741714420978456, 0.00088942274728989485),
    ];
    for &(beta, gamma, n, np, t, re, im) in cases {
        let table = AmplitudeTable::new(beta, gamma);
        let got = table.amplitude(n, np, t);
        let want = Complex64::new(re, im);
        assert!(
            cdiff(got, want) < 1e-12,
            "E[{n},{np}](beta={beta}, gamma={gamma}, t={t}) = {got}, want {want}"
        );
    }
}

/// `exp(-i t K)` is complex symmetric because K is real symmetric in the
/// Fock basis: `E_{n,n'} = E_{n',n}` including all phases.
#[test]
fn amplitude_is_symmetric_in_indices() {
    let table = AmplitudeTable::new(1.3, 2.1);
    for &t in &[0.3, 1.7, 4.9] {
        for n in 0..8usize {
            for np in 0..8usize {
                let a = table.amplitude(n, np, t);
                let b = table.amplitude(np, n, t);
                assert!(
                    cdiff(a, b) < 1e-13,
                    "asymmetry at n={n}, n'={np}, t={t}: {a} vs {b}"
                );
            }
        }
    }
}

#[test]
fn amplitude_at_zero_time_is_identity() {
    let table = AmplitudeTable::new(1.0, 3.75);
    for n in 0..12usize {
        for np in 0..12usize {
            let got = table.amplitude(n, np, 0.0);
            let want = if n == np { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            assert!(cdiff(got, want) < 1e-14, "E[{n},{np}](0) = {got}");
        }
    }
}

/// Column normalization under unitarity: `sum_n |E_{n,n'}|^2 = 1` once the
/// output index runs far enough past the displacement support.
#[test]
fn amplitude_columns_are_normalized()
{
    let table = AmplitudeTable::new(1.0, 3.75);
    let t = 0.9;
    for np in [0usize, 3, 7] {
        let mut acc = 0.0;
        for n in 0..220usize {
            acc += table.amplitude(n, np, t).norm_sqr();
        }
        assert!(
            (acc - 1.0).abs() < 1e-10,
            "column n'={np} norm^2 = {acc}"
        );
    }
}

/// At exact multiples of the mode period the displacement closes
/// (`A = 0`) and only the secular phase remains.
#[test]
fn amplitude_at_full_mode_period_is_pure_phase() {
    let beta = 1.0;
    let gamma = 0.75;
    let t = 2.0 * core::f64::consts::PI / beta;
    let table = AmplitudeTable::new(beta, gamma);
    let aux = aux_at(beta, gamma, t);
    assert!(aux.a.norm() < 1e-12, "displacement should close, |A| = {}", aux.a.norm());
    for n in 0..6usize {
        for np in 0..6usize {
            let got = table.amplitude(n, np, t);
            if n == np {
                assert!((got.norm() - 1.0).abs() < 1e-12, "diagonal magnitude {}", got.norm());
            } else {
                assert!(got.norm() < 1e-12, "off-diagonal E[{n},{np}] = {got}");
            }
        }
    }
}

/// The conjugated amplitude equals `conj` of the forward amplitude for all
/// index pairs on a random grid of couplings and times, checked against the
/// *independent* term-sum evaluator so the identity is exercised between two
/// different series skeletons rather than within one code path.
#[test]
fn conjugated_amplitude_equals_conjugate_on_random_grid() {
    // Small multiplicative congruential stream; fixed seed for determinism.
    let mut state = 0x2545f4914f6cdd1du64;
    let mut uniform = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..12 {
        let beta = 0.4 + 1.6 * uniform();
        let gamma = 2.0 * uniform();
        let t = 4.0 * uniform();
        let table = AmplitudeTable::new(beta, gamma);
        for a in 0..5usize {
            for b in 0..5usize {
                let conj_path = table.amplitude_conj(a, b, t);
                let direct = table.amplitude(a, b, t).conj();
                assert!(cdiff(conj_path, direct) < 1e-14, "conjugate wiring broken at ({a},{b})");
                let independent = amplitude_term_sum(beta, gamma, a, b, t).conj();
                assert!(
                    cdiff(conj_path, independent) < 1e-10,
                    "conjugation identity fails at beta={beta}, gamma={gamma}, t={t}, \
                     ({a},{b}): {conj_path} vs {independent}"
                );
            }
        }
    }
    // Zero-time identities: the diagonal survives as 1, off-diagonals vanish.
    let table = AmplitudeTable::new(1.0, 0.75);
    assert!(cdiff(table.amplitude_conj(0, 0, 0.0), Complex64::new(1.0, 0.0)) < 1e-14);
    assert!(table.amplitude_conj(1, 0, 0.0).norm() < 1e-14);
}

/// The recurrence evaluator and the explicit log-space term sum agree where
/// the latter is safe (small indices / moderate coupling).
#[test]
fn recurrence_matches_term_sum_in_safe_region() {
    for &(beta, gamma) in &[(1.0f64, 0.075f64), (1.0, 0.75), (0.7, 1.9)] {
        let table = AmplitudeTable::new(beta, gamma);
        for &t in &[0.2, 1.1, 3.0] {
            for n in 0..6usize {
                for np in 0..6usize {
                    let a = table.amplitude(n, np, t);
                    let b = amplitude_term_sum(beta, gamma, n, np, t);
                    assert!(
                        cdiff(a, b) < 1e-11,
                        "paths disagree at beta={beta}, gamma={gamma}, n={n}, n'={np}, t={t}: {a} vs {b}"
                    );
                }
            }
        }
    }
}

/// The ladder-identity derivative matches a symmetric finite difference.
#[test]
fn derivative_matches_finite_difference() {
    let h = 1e-5;
    for &(beta, gamma) in &[(1.0f64, 0.075f64), (1.0, 0.75), (1.0, 3.75)] {
        let table = AmplitudeTable::new(beta, gamma);
        for &t in &[0.15, 0.9, 2.7, 6.1] {
            for (n, np) in [(0usize, 0usize), (1, 1), (2, 1), (4, 2), (5, 5)] {
                let (_, dot) = table.amplitude_with_dot(n, np, t);
                let fd = (table.amplitude(n, np, t + h) - table.amplitude(n, np, t - h))
                    / Complex64::new(2.0 * h, 0.0);
                // Tolerance is limited by the h^2 truncation error of the
                // stencil, which grows with the third derivative ~ (gamma sqrt(n))^3.
                assert!(
                    cdiff(dot, fd) < 2e-7,
                    "derivative mismatch at beta={beta}, gamma={gamma}, n={n}, n'={np}, t={t}: {dot} vs {fd}"
                );
            }
        }
    }
}

/// Derivative at a displacement closure (`A = 0`) — the branchy corner.
#[test]
fn derivative_is_smooth_across_displacement_closure() {
    let beta = 1.0;
    let gamma = 0.75;
    let table = AmplitudeTable::new(beta, gamma);
    let t = 2.0 * core::f64::consts::PI;
    let h = 1e-6;
    for (n, np) in [(0usize, 0usize), (1, 0), (0, 1), (3, 3), (4, 3)] {
        let (_, dot) = table.amplitude_with_dot(n, np, t);
        let fd = (table.amplitude(n, np, t + h) - table.amplitude(n, np, t - h))
            / Complex64::new(2.0 * h, 0.0);
        assert!(
            cdiff(dot, fd) < 1e-7,
            "closure derivative mismatch at n={n}, n'={np}: {dot} vs {fd}"
        );
    }
}

/// The swapped-frequency zeta variant is a singular, inequivalent formula:
/// it must error at zero coupling and must NOT equal the production zeta at
/// a generic point (regression tripwire for the role assignment).
#[test]
fn swapped_zeta_variant_is_singular_and_different() {
    assert!(matches!(
        zeta_frequency_swapped(1.0, 0.0, 1.0),
        Err(QslError::DegenerateCoupling(_))
    ));
    let (beta, gamma, t) = (1.0, 0.75, 1.3);
    let production = aux_at(beta, gamma, t).zeta;
    let swapped = zeta_frequency_swapped(beta, gamma, t).unwrap();
    assert!(
        (production - swapped).abs() > 1e-3,
        "variants should differ generically: {production} vs {swapped}"
    );
}

/// Auxiliary-parameter derivatives match finite differences.
#[test]
fn aux_derivatives_match_finite_difference() {
    let h = 1e-6;
    for &(beta, gamma) in &[(1.0f64, 0.75f64), (0.6, 2.3)] {
        for &t in &[0.4, 1.9, 5.2] {
            let a = aux_at(beta, gamma, t);
            let p = aux_at(beta, gamma, t + h);
            let m = aux_at(beta, gamma, t - h);
            let approx = [
                (p.alpha - m.alpha) / (2.0 * h),
                (p.zeta - m.zeta) / (2.0 * h),
                (p.phi - m.phi) / (2.0 * h),
                (p.psi - m.psi) / (2.0 * h),
            ];
            let exact = [a.alpha_dot, a.zeta_dot, a.phi_dot, a.psi_dot];
            for (name, (x, y)) in ["alpha", "zeta", "phi", "psi"]
                .iter()
                .zip(exact.iter().zip(approx.iter()))
            {
                assert!(
                    (x - y).abs() < 1e-7,
                    "{name}_dot mismatch at beta={beta}, gamma={gamma}, t={t}: {x} vs {y}"
                );
            }
        }
    }
}

/// `zeta` is periodic with the mode period `2 pi / beta`.
#[test]
fn zeta_has_mode_periodicity() {
    let (beta, gamma) = (1.7, 2.4);
    let period = 2.0 * core::f64::consts::PI / beta;
    for &t in &[0.3, 1.1, 2.9] {
        let a = aux_at(beta, gamma, t);
        let b = aux_at(beta, gamma, t + period);
        assert!((a.zeta - b.zeta).abs() < 1e-12);
        assert!((a.alpha - b.alpha).abs() < 1e-12);
    }
}
