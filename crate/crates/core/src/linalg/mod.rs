//! Dense matrices: exact Gaussian-rational determinants and a small complex
//! toolkit with a Hermitian Jacobi eigensolver.

mod complex;
mod exact;
mod jacobi;

pub use complex::{max_abs_diff, ComplexMatrix};
pub use num_complex::Complex64;
pub use exact::ExactMatrix;
pub use jacobi::{hermitian_eig, inv_sqrt_diag, HermitianEigen, JACOBI_MAX_SWEEPS, JACOBI_OFF_TOL};

/// Symmetry tolerance accepted by [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues at or below this are treated as singular by [`inv_sqrt_diag`].
pub const POSITIVE_EIG_TOL: f64 = 1e-12;
