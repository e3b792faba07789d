use num_complex::Complex64 as C64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Which factor of a bipartite space an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

/// Flattening convention for `A ⊗ B`: composite index `i = index_a * dim_b + index_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorLayout {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl TensorLayout {
    pub fn new(dim_a: usize, dim_b: usize) -> Self {
        Self { dim_a, dim_b }
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn dim_of(&self, which: Subsystem) -> usize {
        match which {
            Subsystem::A => self.dim_a,
            Subsystem::B => self.dim_b,
        }
    }

    #[inline]
    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.dim_b + b
    }

    /// Inverse of [`Self::index`].
    #[inline]
    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.dim_b, i % self.dim_b)
    }

    pub(crate) fn check(&self, m: &ComplexMatrix, context: &'static str) -> Result<()> {
        if !m.is_square() {
            return Err(Error::NotSquare { context, rows: m.rows(), cols: m.cols() });
        }
        if m.rows() != self.dim() {
            return Err(Error::DimensionMismatch { context, expected: self.dim(), found: m.rows() });
        }
        Ok(())
    }
}

/// Kronecker product: `(a⊗b)[i·dim_b + k, j·dim_b + l] = a[i,j]·b[k,l]`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |r, c| a[(r / br, c / bc)] * b[(r % br, c % bc)])
}

/// Kronecker product of two state vectors, same flattening as [`tensor`].
pub fn tensor_vec(x: &[C64], y: &[C64]) -> Vec<C64> {
    x.iter().flat_map(|&xi| y.iter().map(move |&yj| xi * yj)).collect()
}

/// Traces out `over`, returning the reduced matrix on the remaining factor.
pub fn partial_trace(m: &ComplexMatrix, layout: TensorLayout, over: Subsystem) -> Result<ComplexMatrix> {
    layout.check(m, "partial_trace")?;
    let (da, db) = (layout.dim_a, layout.dim_b);
    Ok(match over {
        Subsystem::B => {
            ComplexMatrix::from_fn(da, da, |i, j| (0..db).map(|k| m[(layout.index(i, k), layout.index(j, k))]).sum())
        }
        Subsystem::A => {
            ComplexMatrix::from_fn(db, db, |k, l| (0..da).map(|i| m[(layout.index(i, k), layout.index(i, l))]).sum())
        }
    })
}

/// `op ⊗ I_B` or `I_A ⊗ op` depending on which factor `op` acts on.
pub fn lift(op: &ComplexMatrix, layout: TensorLayout, on: Subsystem) -> Result<ComplexMatrix> {
    let expected = layout.dim_of(on);
    if !op.is_square() {
        return Err(Error::NotSquare { context: "lift", rows: op.rows(), cols: op.cols() });
    }
    if op.rows() != expected {
        return Err(Error::DimensionMismatch { context: "lift", expected, found: op.rows() });
    }
    Ok(match on {
        Subsystem::A => tensor(op, &ComplexMatrix::identity(layout.dim_b)),
        Subsystem::B => tensor(&ComplexMatrix::identity(layout.dim_a), op),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::pauli;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn identity_tensor_identity() {
        let i4 = tensor(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2));
        assert_eq!(i4, ComplexMatrix::identity(4));
    }

    #[test]
    fn sigma_z_tensor_identity_is_diag() {
        let m = tensor(&pauli::sigma_z(), &ComplexMatrix::identity(2));
        let expected = ComplexMatrix::from_diagonal(&[c(1.0), c(1.0), c(-1.0), c(-1.0)]);
        assert_eq!(m, expected);
    }

    #[test]
    fn bell_singlet_marginal_is_maximally_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [c(0.0), c(s), c(-s), c(0.0)];
        let rho = ComplexMatrix::outer(&psi, &psi);
        let layout = TensorLayout::new(2, 2);
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(partial_trace(&rho, layout, Subsystem::B).unwrap().max_abs_diff(&half) < 1e-15);
        assert!(partial_trace(&rho, layout, Subsystem::A).unwrap().max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn identity_factor_traced_out() {
        let m = ComplexMatrix::from_real(3, 3, &[1.0, 2.0, 0.0, 2.0, -1.0, 4.0, 0.0, 4.0, 3.0]).unwrap();
        let layout = TensorLayout::new(2, 3);
        let full = tensor(&ComplexMatrix::identity(2), &m);
        let reduced = partial_trace(&full, layout, Subsystem::A).unwrap().scale_real(0.5);
        assert!(reduced.max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_layout() {
        let layout = TensorLayout::new(2, 3);
        assert!(matches!(
            partial_trace(&ComplexMatrix::identity(4), layout, Subsystem::B),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn split_inverts_index() {
        let layout = TensorLayout::new(5, 2);
        for i in 0..layout.dim() {
            let (a, b) = layout.split(i);
            assert_eq!(layout.index(a, b), i);
        }
    }
}
