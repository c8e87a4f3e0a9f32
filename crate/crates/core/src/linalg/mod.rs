//! Dense complex linear algebra for small matrices.

mod io;
pub mod jacobi;
pub mod matrix;
pub mod polar;
pub mod spectrum;
pub mod svd;
pub mod tridiag;

pub use jacobi::{hermitian_eig, HermitianEig};
pub use matrix::{inner, vec_norm, ComplexMatrix, C64};
pub use polar::{default_rank_tol, fractional_power, operator_norm, polar_decompose, PolarParts};
pub use spectrum::{eigenvalues, spectral_radius, spectral_radius_bracket, SpectrumResult};
pub use svd::{svd, Svd};
pub use tridiag::{hermitian_eigenvalues, hermitian_max_eigenvalue};
