//! The Jaynes-Cummings model: one radiation mode coupled to a two-level atom,
//!
//! ```text
//! H = ω(a†a + ½) + (ω₀/2)σ_z + g(aσ₊ + a†σ₋)
//! ```
//!
//! Radiation is subsystem A (Fock space truncated at `n_max`), the atom is
//! subsystem B with basis `(|↑⟩, |↓⟩)`.

mod fock;
pub mod heisenberg;
pub mod kraus;
pub mod model;
mod params;
mod states;

pub use fock::{FockSpace, DEFAULT_GUARD, TAIL_BUDGET};
pub use heisenberg::{
    eom_residual, heisenberg_a_dagger, heisenberg_sigma_plus, operator_coefficients, rhat_pair,
    subdynamic_from_heisenberg, HeisenbergOperator, HeisenbergSolution, JointEigenbasis, OperatorCoefficients, Pairing,
    RHatPair,
};
pub use kraus::{
    atom_kraus, conservation_check, conservation_sides, field_kraus, quasi_photon_annihilation, quasi_photon_creation,
    quasi_photon_number, sigma_plus, spin_eigen_summary, subdynamic_sigma_minus, subdynamic_sigma_plus,
    subdynamic_sigma_z, FieldKraus, SpinEigenSummary,
};
pub use model::{
    bipartite_system, build_hamiltonian, constants_of_motion, correlation_factors, dressed_eigensystem,
    evolution_correlation_form, evolution_spectral, CorrelationFactors, DressedSpectrum, DressedState,
};
pub use params::JcmParams;
pub use states::{AtomState, CoherentState};
