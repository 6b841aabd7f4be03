//! Zassenhaus product-formula propagator.
//!
//! With `X = -i t (H_free)` and `Y = -i t (H_coupling)` the exact unitary
//! `e^{X+Y}` factorizes as
//!
//! `e^{X+Y} = e^X e^Y e^{-c2/2!} e^{-c3/3!} e^{-c4/4!} ...`
//!
//! with nested-commutator exponents
//!
//! * `c2 = [X, Y]`
//! * `c3 = 2 [[X, Y], Y] + [[X, Y], X]`
//! * `c4 = [[[X, Y], X], X] + 3 [[[X, Y], X], Y] + 3 [[[X, Y], Y], Y]`
//!
//! Every exponent is anti-Hermitian (u(n) is closed under commutators), so
//! each factor is unitary and the truncated product is a unitary
//! approximation whose error decreases with the truncation order at small t.
//! Exponentials are evaluated exactly through the real-symmetric embedding
//! of the associated Hermitian generator.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{QslError, Result};
use crate::math;
use crate::oracle::eigen::sym_eigen;
use crate::oracle::hamiltonian::build_split_hamiltonians;
use crate::oracle::matrix::{CMatrix, RMatrix};
use crate::params::ModelParams;

/// `V f(Lambda) V^T` for a decomposed symmetric matrix.
fn spectral_function(evals: &[f64], evecs: &RMatrix, f: impl Fn(f64) -> f64) -> RMatrix {
    let n = evecs.dim();
    let fvals: Vec<f64> = evals.iter().map(|&l| f(l)).collect();
    let mut out = RMatrix::zeros(n);
    for k in 0..n {
        let fk = fvals[k];
        if fk == 0.0 {
            continue;
        }
        for r in 0..n {
            let vrk = evecs.get(r, k) * fk;
            if vrk == 0.0 {
                continue;
            }
            for c in 0..n {
                out.add_to(r, c, vrk * evecs.get(c, k));
            }
        }
    }
    out
}

/// Exact `e^M` for anti-Hermitian `M`, via the real-symmetric embedding of
/// the Hermitian generator `K = i M`:
/// `e^{-iK} = cos(K) - i sin(K)`, with both functions evaluated spectrally
/// on `[[Re K, -Im K], [Im K, Re K]]`.
pub fn expm_antihermitian(m: &CMatrix) -> Result<CMatrix> {
    let n = m.dim();
    let scale = m.max_abs();
    if m.anti_hermiticity_defect() > 1e-9 * scale.max(1.0) {
        return Err(QslError::InvalidParams(String::from(
            "expm_antihermitian requires an anti-Hermitian matrix",
        )));
    }
    // K = iM: Re K = -Im M (symmetric), Im K = Re M (antisymmetric).
    let mut embed = RMatrix::zeros(2 * n);
    for r in 0..n {
        for c in 0..n {
            let z = m.get(r, c);
            let k_re = -z.im;
            let k_im = z.re;
            embed.set(r, c, k_re);
            embed.set(r + n, c + n, k_re);
            embed.set(r + n, c, k_im);
            embed.set(r, c + n, -k_im);
        }
    }
    let (evals, evecs) = sym_eigen(&embed)?;
    let w_cos = spectral_function(&evals, &evecs, math::cos);
    let w_sin = spectral_function(&evals, &evecs, math::sin);
    // f(K) blocks: Re f = top-left, Im f = bottom-left.
    let mut out = CMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            let re = w_cos.get(r, c) + w_sin.get(r + n, c);
            let im = w_cos.get(r + n, c) - w_sin.get(r, c);
            out.set(r, c, Complex64::new(re, im));
        }
    }
    Ok(out)
}

/// Eigenvalues (ascending) of a Hermitian complex matrix via the same
/// embedding; each eigenvalue of `K` appears twice in the embedding, so
/// adjacent pairs are averaged.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    let scale = m.max_abs();
    let defect = m.dagger().max_abs_diff(m);
    if defect > 1e-9 * scale.max(1.0) {
        return Err(QslError::InvalidParams(String::from(
            "hermitian_eigenvalues requires a Hermitian matrix",
        )));
    }
    let mut embed = RMatrix::zeros(2 * n);
    for r in 0..n {
        for c in 0..n {
            let z = m.get(r, c);
            embed.set(r, c, z.re);
            embed.set(r + n, c + n, z.re);
            embed.set(r + n, c, z.im);
            embed.set(r, c + n, -z.im);
        }
    }
    let (evals, _) = sym_eigen(&embed)?;
    Ok((0..n).map(|k| 0.5 * (evals[2 * k] + evals[2 * k + 1])).collect())
}

/// Truncated Zassenhaus unitary at the given order (1..=4) for the split
/// `H = H_free + H_coupling` at time `t`.
pub fn zassenhaus_unitary(
    params: &ModelParams,
    fock_dim: usize,
    t: f64,
    order: usize,
) -> Result<CMatrix> {
    if !(1..=4).contains(&order) {
        return Err(QslError::InvalidParams(format!(
            "Zassenhaus truncation order must be in 1..=4, got {order}"
        )));
    }
    params.validate()?;
    let (h_free, h_coupling) = build_split_hamiltonians(params, fock_dim);
    let x = CMatrix::imaginary_scaled(&h_free, -t);
    let y = CMatrix::imaginary_scaled(&h_coupling, -t);
    let mut u = expm_antihermitian(&x)?.mul(&expm_antihermitian(&y)?);
    if order < 2 {
        return Ok(u);
    }
    let c2 = x.commutator(&y);
    u = u.mul(&expm_antihermitian(&c2.scale(Complex64::new(-0.5, 0.0)))?);
    if order < 3 {
        return Ok(u);
    }
    let c2y = c2.commutator(&y);
    let c2x = c2.commutator(&x);
    let c3 = c2y.scale(Complex64::new(2.0, 0.0)).add(&c2x);
    u = u.mul(&expm_antihermitian(&c3.scale(Complex64::new(-1.0 / 6.0, 0.0)))?);
    if order < 4 {
        return Ok(u);
    }
    let c4 = c2x
        .commutator(&x)
        .add(&c2x.commutator(&y).scale(Complex64::new(3.0, 0.0)))
        .add(&c2y.commutator(&y).scale(Complex64::new(3.0, 0.0)));
    u = u.mul(&expm_antihermitian(&c4.scale(Complex64::new(-1.0 / 24.0, 0.0)))?);
    Ok(u)
}
