use super::CoherentState;
use crate::error::{Error, Result};
use crate::numerics::{re, ComplexMatrix, TensorLayout};

/// Default guard band excluded from interior-subspace assertions.
pub const DEFAULT_GUARD: usize = 5;

/// Largest Poisson tail mass beyond `n_max` accepted for a coherent state.
pub const TAIL_BUDGET: f64 = 1e-12;

/// Truncated single-mode Fock space `{|0⟩, …, |n_max⟩}`.
///
/// Identities of the infinite-dimensional mode are only asserted on the
/// interior `n ≤ n_max − guard`; the levels above are polluted by the cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    n_max: usize,
    guard: usize,
}

impl FockSpace {
    pub fn new(n_max: usize, guard: usize) -> Result<Self> {
        if guard >= n_max {
            return Err(Error::InvalidParams(format!("guard ({guard}) must be smaller than n_max ({n_max})")));
        }
        Ok(Self { n_max, guard })
    }

    /// `n_max = ⌈M + 10√M⌉`, raised if needed so that `guard < n_max` and the
    /// Poisson tail of a coherent state with mean `M` stays below [`TAIL_BUDGET`].
    pub fn for_mean_photons(mean: f64, guard: usize) -> Result<Self> {
        let cs = CoherentState::from_mean(mean, 0.0)?;
        let mut n_max = ((mean + 10.0 * mean.sqrt()).ceil() as usize).max(guard + 1);
        while cs.tail_mass(n_max) >= TAIL_BUDGET {
            n_max += 1;
        }
        Self::new(n_max, guard)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    /// `n_max + 1`.
    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    /// Radiation ⊗ atom layout: composite index `2n + s`.
    pub fn layout(&self) -> TensorLayout {
        TensorLayout::new(self.dim(), 2)
    }

    /// Highest photon number inside the interior.
    pub fn interior_top(&self) -> usize {
        self.n_max - self.guard
    }

    /// Fock indices `0..=n_max − guard`.
    pub fn interior(&self) -> Vec<usize> {
        (0..=self.interior_top()).collect()
    }

    /// Composite indices `(n, s)` with `n ≤ n_max − guard`.
    pub fn interior_composite(&self) -> Vec<usize> {
        (0..2 * (self.interior_top() + 1)).collect()
    }

    /// Truncated annihilation operator.
    pub fn annihilation(&self) -> ComplexMatrix {
        let mut a = ComplexMatrix::zeros(self.dim(), self.dim());
        for n in 1..self.dim() {
            a[(n - 1, n)] = re((n as f64).sqrt());
        }
        a
    }

    /// Truncated creation operator.
    pub fn creation(&self) -> ComplexMatrix {
        self.annihilation().adjoint()
    }

    /// `a†a = diag(0, 1, …, n_max)`.
    pub fn number(&self) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&(0..self.dim()).map(|n| re(n as f64)).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_must_be_below_n_max() {
        assert!(FockSpace::new(5, 5).is_err());
        assert!(FockSpace::new(6, 5).is_ok());
    }

    #[test]
    fn default_sizing_rule() {
        let f = FockSpace::for_mean_photons(10.0, DEFAULT_GUARD).unwrap();
        assert_eq!(f.n_max(), (10.0 + 10.0 * 10f64.sqrt()).ceil() as usize);
        assert_eq!(f.n_max(), 42);
        let vac = FockSpace::for_mean_photons(0.0, 0).unwrap();
        assert_eq!(vac.n_max(), 1);
        let small = FockSpace::for_mean_photons(1.69, DEFAULT_GUARD).unwrap();
        assert!(small.n_max() > 15);
        assert!(CoherentState::from_mean(1.69, 0.0).unwrap().tail_mass(small.n_max()) < TAIL_BUDGET);
    }

    #[test]
    fn commutator_is_identity_below_the_cut() {
        let f = FockSpace::new(12, 2).unwrap();
        let comm = f.annihilation().commutator(&f.creation());
        let id = ComplexMatrix::identity(f.dim());
        assert!(comm.max_abs_diff_on(&id, &f.interior()) < 1e-14);
        // The top level carries the truncation artefact −n_max.
        assert!((comm[(12, 12)].re + 12.0).abs() < 1e-12);
    }

    #[test]
    fn number_is_creation_times_annihilation() {
        let f = FockSpace::new(8, 1).unwrap();
        assert!(f.creation().matmul(&f.annihilation()).max_abs_diff(&f.number()) < 1e-14);
    }
}
