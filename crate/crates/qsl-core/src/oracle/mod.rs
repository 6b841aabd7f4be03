//! Independent numerical oracles.
//!
//! Nothing here reuses the closed-form amplitude or coherence formulas: the
//! full spin⊗boson Hamiltonian is built as a dense real symmetric matrix,
//! diagonalized with a self-contained Householder + implicit-QL solver, and
//! propagated exactly. A Zassenhaus product formula provides a second,
//! structurally different propagator. Cross-checks between these and the
//! analytic pipeline live in the test suites.

pub mod eigen;
pub mod hamiltonian;
pub mod matrix;
pub mod propagate;
pub mod zassenhaus;

pub use eigen::sym_eigen;
pub use hamiltonian::{build_full_hamiltonian, fock_dim_default};
pub use matrix::{CMatrix, RMatrix};
pub use propagate::Propagator;
pub use zassenhaus::{expm_antihermitian, hermitian_eigenvalues, zassenhaus_unitary};
