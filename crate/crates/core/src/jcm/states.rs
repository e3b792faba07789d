use num_complex::Complex64 as C64;

use super::fock::{FockSpace, TAIL_BUDGET};
use crate::bipartite::validate_density;
use crate::error::{Error, Result};
use crate::numerics::pauli::{DOWN, UP};
use crate::numerics::{re, ComplexMatrix};

/// Glauber coherent state `|α⟩ = e^{−|α|²/2} Σ αⁿ/√(n!) |n⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentState {
    pub alpha: C64,
}

impl CoherentState {
    pub fn new(alpha: C64) -> Self {
        Self { alpha }
    }

    /// `α = √M e^{iφ}`.
    pub fn from_mean(mean: f64, phi: f64) -> Result<Self> {
        if !(mean.is_finite() && mean >= 0.0 && phi.is_finite()) {
            return Err(Error::InvalidParams(format!("invalid coherent state (M={mean}, φ={phi})")));
        }
        Ok(Self { alpha: C64::from_polar(mean.sqrt(), phi) })
    }

    /// Mean photon number `M = |α|²`.
    pub fn mean(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    pub fn phi(&self) -> f64 {
        self.alpha.arg()
    }

    /// Fock amplitudes `e^{−M/2} αⁿ/√(n!)` for `n ∈ [0, levels)`.
    pub fn amplitudes(&self, levels: usize) -> Vec<C64> {
        let mut out = Vec::with_capacity(levels);
        let mut c = re((-0.5 * self.mean()).exp());
        for n in 0..levels {
            if n > 0 {
                c = c * self.alpha / (n as f64).sqrt();
            }
            out.push(c);
        }
        out
    }

    /// Poisson weights `p(n) = e^{−M} Mⁿ/n!` for `n ∈ [0, levels)`.
    pub fn poisson(&self, levels: usize) -> Vec<f64> {
        let m = self.mean();
        let mut out = Vec::with_capacity(levels);
        let mut p = (-m).exp();
        for n in 0..levels {
            if n > 0 {
                p *= m / n as f64;
            }
            out.push(p);
        }
        out
    }

    /// `Σ_{n > n_max} p(n)`, summed directly so that it is not lost to cancellation.
    pub fn tail_mass(&self, n_max: usize) -> f64 {
        let m = self.mean();
        let mut p = self.poisson(n_max + 1)[n_max];
        let mut tail = 0.0;
        let mut n = n_max + 1;
        loop {
            p *= m / n as f64;
            tail += p;
            // Once past the mode, terms decay at least geometrically.
            if (n as f64) > m && p < 1e-18 * tail.max(1e-300) {
                break;
            }
            if p == 0.0 {
                break;
            }
            n += 1;
        }
        tail
    }

    /// Errors when the truncated space loses more than [`TAIL_BUDGET`] of the state.
    pub fn check_fits(&self, f: &FockSpace) -> Result<()> {
        let tail = self.tail_mass(f.n_max());
        if tail >= TAIL_BUDGET {
            return Err(Error::TailBudget { n_max: f.n_max(), tail, budget: TAIL_BUDGET });
        }
        Ok(())
    }

    /// Truncated state vector on `f`.
    pub fn vector(&self, f: &FockSpace) -> Vec<C64> {
        self.amplitudes(f.dim())
    }

    /// `|α⟩⟨α|` on `f`.
    pub fn density(&self, f: &FockSpace) -> ComplexMatrix {
        let v = self.vector(f);
        ComplexMatrix::outer(&v, &v)
    }
}

/// Two-level density matrix in the basis `(|↑⟩, |↓⟩)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomState {
    rho: ComplexMatrix,
}

impl AtomState {
    pub fn from_matrix(rho: ComplexMatrix) -> Result<Self> {
        if rho.rows() != 2 {
            return Err(Error::InvalidDensity(format!("atom state must be 2x2, got {}x{}", rho.rows(), rho.cols())));
        }
        validate_density(&rho)?;
        Ok(Self { rho })
    }

    /// `|↑⟩⟨↑|`.
    pub fn up() -> Self {
        Self::mixed(1.0, C64::new(0.0, 0.0)).unwrap()
    }

    /// `|↓⟩⟨↓|`.
    pub fn down() -> Self {
        Self::mixed(0.0, C64::new(0.0, 0.0)).unwrap()
    }

    /// `ρ↑↑ = rho_uu`, `ρ↓↓ = 1 − rho_uu`, `⟨↑|ρ|↓⟩ = rho_ud`.
    pub fn mixed(rho_uu: f64, rho_ud: C64) -> Result<Self> {
        let rho = ComplexMatrix::from_vec(2, 2, vec![re(rho_uu), rho_ud, rho_ud.conj(), re(1.0 - rho_uu)])?;
        Self::from_matrix(rho)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    /// `⟨s|ρ|s'⟩`.
    pub fn element(&self, s: usize, s_prime: usize) -> C64 {
        self.rho[(s, s_prime)]
    }

    pub fn rho_uu(&self) -> f64 {
        self.rho[(UP, UP)].re
    }

    pub fn rho_dd(&self) -> f64 {
        self.rho[(DOWN, DOWN)].re
    }

    /// `⟨↑|ρ|↓⟩`.
    pub fn rho_ud(&self) -> C64 {
        self.rho[(UP, DOWN)]
    }

    /// `⟨↓|ρ|↑⟩`.
    pub fn rho_du(&self) -> C64 {
        self.rho[(DOWN, UP)]
    }

    pub fn is_diagonal(&self) -> bool {
        self.rho_ud().norm() == 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coherent_norm_and_poisson() {
        let cs = CoherentState::from_mean(10.0, 0.3).unwrap();
        let f = FockSpace::for_mean_photons(10.0, 5).unwrap();
        cs.check_fits(&f).unwrap();
        let v = cs.vector(&f);
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        let p = cs.poisson(f.dim());
        for (pn, cn) in p.iter().zip(&v) {
            assert!((pn - cn.norm_sqr()).abs() < 1e-15);
        }
        assert!(p.iter().sum::<f64>() >= 1.0 - 1e-12);
    }

    #[test]
    fn amplitudes_follow_closed_form() {
        let alpha = C64::new(1.2, -0.7);
        let cs = CoherentState::new(alpha);
        let amps = cs.amplitudes(8);
        let mut fact = 1.0;
        for (n, a) in amps.iter().enumerate() {
            if n > 0 {
                fact *= n as f64;
            }
            let expected = alpha.powu(n as u32) * (-0.5 * cs.mean()).exp() / fact.sqrt();
            assert!((a - expected).norm() < 1e-15);
        }
    }

    #[test]
    fn tail_mass_against_direct_sum() {
        let cs = CoherentState::from_mean(4.0, 0.0).unwrap();
        let p = cs.poisson(200);
        let direct: f64 = p[11..].iter().sum();
        assert!((cs.tail_mass(10) - direct).abs() < 1e-16);
    }

    #[test]
    fn tiny_space_violates_budget() {
        let cs = CoherentState::from_mean(10.0, 0.0).unwrap();
        let f = FockSpace::new(15, 5).unwrap();
        assert!(matches!(cs.check_fits(&f), Err(Error::TailBudget { .. })));
    }

    #[test]
    fn atom_state_validation() {
        assert!(AtomState::mixed(0.5, C64::new(0.5, 0.0)).is_ok());
        assert!(AtomState::mixed(0.5, C64::new(0.6, 0.0)).is_err());
        assert!(AtomState::mixed(1.2, C64::new(0.0, 0.0)).is_err());
        let s = AtomState::mixed(0.3, C64::new(0.1, 0.2)).unwrap();
        assert_eq!(s.rho_du(), C64::new(0.1, -0.2));
        assert!((s.rho_dd() - 0.7).abs() < 1e-15);
    }
}
