//! Dense complex linear algebra: the matrix type, Kronecker products, partial
//! traces, Hermitian eigendecomposition and the spectral matrix exponential.

mod eig;
mod matrix;
pub mod pauli;
mod tensor;

pub use eig::{expm_oracle, hermitian_eig, HermitianEig};
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64 as C64;
pub use tensor::{lift, partial_trace, tensor, tensor_vec, Subsystem, TensorLayout};

/// Absolute max-entry tolerance below which a matrix counts as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// `C64::new(re, 0.0)`.
#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Complex zero.
pub const ZERO: C64 = C64::new(0.0, 0.0);
/// Complex one.
pub const ONE: C64 = C64::new(1.0, 0.0);
/// Imaginary unit.
pub const I: C64 = C64::new(0.0, 1.0);
