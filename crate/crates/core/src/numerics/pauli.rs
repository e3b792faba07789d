//! Two-level operators in the basis `(|↑⟩, |↓⟩)`, so `σ_z = diag(1, −1)`.

use super::{ComplexMatrix, C64, I, ONE, ZERO};

pub const UP: usize = 0;
pub const DOWN: usize = 1;

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, vec![ZERO, ONE, ONE, ZERO]).unwrap()
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, vec![ZERO, -I, I, ZERO]).unwrap()
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, vec![ONE, ZERO, ZERO, -ONE]).unwrap()
}

/// `σ₊ = |↑⟩⟨↓|`.
pub fn sigma_plus() -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, vec![ZERO, ONE, ZERO, ZERO]).unwrap()
}

/// `σ₋ = |↓⟩⟨↑|`.
pub fn sigma_minus() -> ComplexMatrix {
    sigma_plus().adjoint()
}

/// `|s⟩⟨s'|` on the two-level space.
pub fn ket_bra(s: usize, s_prime: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(s, s_prime)] = C64::new(1.0, 0.0);
    m
}
