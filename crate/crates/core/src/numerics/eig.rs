use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use super::{ComplexMatrix, HERMITIAN_TOL};
use crate::error::{Error, Result};

/// Spectral decomposition `M = V diag(λ) V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    /// `‖M V − V diag(λ)‖_max`.
    pub fn residual(&self, m: &ComplexMatrix) -> f64 {
        let mv = m.matmul(&self.vectors);
        let n = self.values.len();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((mv[(i, j)] - self.vectors[(i, j)] * self.values[j]).norm());
            }
        }
        worst
    }

    /// `V f(λ) V†` for a scalar function of the eigenvalues.
    pub fn apply_fn(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.values.len();
        let fvals: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| (0..n).map(|k| v[(i, k)] * fvals[k] * v[(j, k)].conj()).sum())
    }

    /// `e^{−itH}` through the spectral form.
    pub fn propagator(&self, t: f64) -> ComplexMatrix {
        self.apply_fn(|l| C64::from_polar(1.0, -l * t))
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEig> {
    if !m.is_square() {
        return Err(Error::NotSquare { context: "hermitian_eig", rows: m.rows(), cols: m.cols() });
    }
    let defect = m.hermiticity_defect();
    if defect >= HERMITIAN_TOL {
        return Err(Error::NotHermitian { context: "hermitian_eig", defect, tolerance: HERMITIAN_TOL });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(HermitianEig { values: vec![], vectors: ComplexMatrix::zeros(0, 0) });
    }
    let dm = DMatrix::from_row_slice(n, n, m.as_slice());
    let eig = SymmetricEigen::try_new(dm, f64::EPSILON, 0).ok_or(Error::EigenConvergence { residual: f64::NAN })?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    let out = HermitianEig { values, vectors };

    let scale = m.max_abs().max(1.0);
    let residual = out.residual(m);
    if !residual.is_finite() || residual > 1e-8 * scale {
        return Err(Error::EigenConvergence { residual });
    }
    Ok(out)
}

/// `e^{−ith}` computed as `V diag(e^{−itλ}) V†`.
pub fn expm_oracle(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    Ok(hermitian_eig(h)?.propagator(t))
}
