//! Dense construction of the full spin⊗boson Hamiltonian.
//!
//! On the fixed-j multiplet `J^2 = j(j+1) 1`, so the coupling term acts on
//! the boson mode alone with strength `gamma = eta j (j+1)` and the full
//! Hamiltonian is block-diagonal in the magnetic number:
//!
//! `H = sum_m |m><m| (x) [ omega m + beta b^dag b + gamma (b^dag + b) ]`.
//!
//! Basis ordering: index `(m_idx, n) -> m_idx * fock_dim + n`, with
//! `m_idx = 0` the highest magnetic number (`m = j`) and `n` the Fock level.

use crate::math;
use crate::oracle::matrix::RMatrix;
use crate::params::ModelParams;

/// Truncation for the oracle's boson space. The displaced mode reaches mean
/// occupation `lambda = 4 (gamma/beta)^2`, so the floor `max(40, 4 n_max)`
/// is topped up with a Poisson-tail allowance `lambda + 10 sqrt(lambda) + 20`
/// at strong coupling; convergence is enforced by doubling tests.
pub fn fock_dim_default(params: &ModelParams) -> usize {
    let d = params.gamma() / params.beta;
    let lambda = 4.0 * d * d;
    let coupled = lambda + 10.0 * math::sqrt(lambda) + 20.0;
    let base = 40usize.max(4 * params.n_max);
    base.max(coupled as usize + 1)
}

/// Full Hamiltonian as a dense real symmetric matrix of dimension
/// `spin_dim * fock_dim`.
pub fn build_full_hamiltonian(params: &ModelParams, fock_dim: usize) -> RMatrix {
    let spin_dim = params.spin_dim();
    let gamma = params.gamma();
    let dim = spin_dim * fock_dim;
    let mut h = RMatrix::zeros(dim);
    for m_idx in 0..spin_dim {
        let m = params.j - m_idx as f64;
        let base = m_idx * fock_dim;
        for n in 0..fock_dim {
            h.set(base + n, base + n, params.omega * m + params.beta * n as f64);
            if n + 1 < fock_dim {
                let hop = gamma * math::sqrt((n + 1) as f64);
                h.set(base + n, base + n + 1, hop);
                h.set(base + n + 1, base + n, hop);
            }
        }
    }
    h
}

/// The two split pieces used by the product-formula propagator, as dense
/// real symmetric matrices on the same full space: the free part
/// `omega Jz + beta b^dag b` and the coupling `gamma (b^dag + b)`.
pub fn build_split_hamiltonians(params: &ModelParams, fock_dim: usize) -> (RMatrix, RMatrix) {
    let spin_dim = params.spin_dim();
    let gamma = params.gamma();
    let dim = spin_dim * fock_dim;
    let mut free = RMatrix::zeros(dim);
    let mut coupling = RMatrix::zeros(dim);
    for m_idx in 0..spin_dim {
        let m = params.j - m_idx as f64;
        let base = m_idx * fock_dim;
        for n in 0..fock_dim {
            free.set(base + n, base + n, params.omega * m + params.beta * n as f64);
            if n + 1 < fock_dim {
                let hop = gamma * math::sqrt((n + 1) as f64);
                coupling.set(base + n, base + n + 1, hop);
                coupling.set(base + n + 1, base + n, hop);
            }
        }
    }
    (free, coupling)
}
