//! Generic bipartite dynamics for `H = H_A ⊗ I + I ⊗ H_B + H_AB`.
//!
//! Two descriptions of a subsystem observable are provided. The Heisenberg
//! lift `U†(a ⊗ I)U` lives on the composite space and keeps the operator
//! algebra intact. The subdynamic operator `ã(t) = Σᵢ Vᵢ† a Vᵢ` lives on the
//! subsystem alone and is built from a Kraus set of the reduced dynamics; it
//! depends on the partner's initial state and does not preserve the algebra.
//! For an uncorrelated initial state both give the same expectation values:
//!
//! ```text
//! Tr[(a ⊗ I) ρ(t)] = Tr[a_H(t) (ρ_A ⊗ ρ_B)] = Tr_A[ã(t) ρ_A].
//! ```
//!
//! Everything here works on dense matrices and is intended for small systems;
//! the Jaynes-Cummings modules use it as the brute-force reference.

use crate::error::{Error, Result};
use crate::numerics::{
    hermitian_eig, lift, partial_trace, tensor, ComplexMatrix, HermitianEig, Subsystem, TensorLayout, C64,
    HERMITIAN_TOL,
};

/// Trace and positivity tolerance for density matrices.
pub const DENSITY_TOL: f64 = 1e-12;

/// Kraus operators whose Frobenius norm falls below this are discarded.
pub const KRAUS_DROP_NORM: f64 = 1e-14;

/// Checks that `rho` is a Hermitian, positive semidefinite, unit-trace matrix.
pub fn validate_density(rho: &ComplexMatrix) -> Result<()> {
    if !rho.is_square() {
        return Err(Error::InvalidDensity(format!("not square ({}x{})", rho.rows(), rho.cols())));
    }
    let defect = rho.hermiticity_defect();
    if defect >= HERMITIAN_TOL {
        return Err(Error::InvalidDensity(format!("not Hermitian (defect {defect:.3e})")));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
        return Err(Error::InvalidDensity(format!("trace {tr} differs from 1")));
    }
    let eig = hermitian_eig(rho)?;
    if let Some(&min) = eig.values.first() {
        if min < -DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:.3e}")));
        }
    }
    Ok(())
}

/// A time-independent Hamiltonian split into subsystem and interaction pieces.
#[derive(Debug, Clone)]
pub struct BipartiteSystem {
    h_a: ComplexMatrix,
    h_b: ComplexMatrix,
    h_ab: ComplexMatrix,
    layout: TensorLayout,
}

impl BipartiteSystem {
    pub fn new(h_a: ComplexMatrix, h_b: ComplexMatrix, h_ab: ComplexMatrix) -> Result<Self> {
        let layout = TensorLayout::new(h_a.rows(), h_b.rows());
        layout.check(&h_ab, "BipartiteSystem::new")?;
        for (h, context) in [
            (&h_a, "BipartiteSystem::new(h_a)"),
            (&h_b, "BipartiteSystem::new(h_b)"),
            (&h_ab, "BipartiteSystem::new(h_ab)"),
        ] {
            let defect = h.hermiticity_defect();
            if defect >= HERMITIAN_TOL {
                return Err(Error::NotHermitian { context, defect, tolerance: HERMITIAN_TOL });
            }
        }
        Ok(Self { h_a, h_b, h_ab, layout })
    }

    /// Wraps a composite Hamiltonian with no separate subsystem pieces.
    pub fn from_total(h: ComplexMatrix, layout: TensorLayout) -> Result<Self> {
        Self::new(ComplexMatrix::zeros(layout.dim_a, layout.dim_a), ComplexMatrix::zeros(layout.dim_b, layout.dim_b), h)
    }

    pub fn layout(&self) -> TensorLayout {
        self.layout
    }

    pub fn h_a(&self) -> &ComplexMatrix {
        &self.h_a
    }

    pub fn h_b(&self) -> &ComplexMatrix {
        &self.h_b
    }

    pub fn h_ab(&self) -> &ComplexMatrix {
        &self.h_ab
    }

    /// `H_A ⊗ I_B + I_A ⊗ H_B + H_AB`.
    pub fn hamiltonian(&self) -> ComplexMatrix {
        let mut h = tensor(&self.h_a, &ComplexMatrix::identity(self.layout.dim_b));
        h += &tensor(&ComplexMatrix::identity(self.layout.dim_a), &self.h_b);
        h += &self.h_ab;
        h
    }

    /// Diagonalises `H` once so that `U(t)` can be produced for many times.
    pub fn propagator(&self) -> Result<Propagator> {
        Ok(Propagator { eig: hermitian_eig(&self.hamiltonian())?, layout: self.layout })
    }

    /// `U(t) = e^{−itH}`.
    pub fn evolve_unitary(&self, t: f64) -> Result<ComplexMatrix> {
        check_time(t)?;
        Ok(self.propagator()?.at(t))
    }

    /// `U†(t) (a0 ⊗ I_B) U(t)` for `on = A`, or the mirror for `on = B`.
    pub fn heisenberg_lift(&self, a0: &ComplexMatrix, on: Subsystem, t: f64) -> Result<ComplexMatrix> {
        let u = self.evolve_unitary(t)?;
        heisenberg_lift_with(&u, a0, self.layout, on)
    }

    /// Kraus set on A for a partner state `rho_b`.
    pub fn kraus_for_a(&self, rho_b: &ComplexMatrix, t: f64) -> Result<KrausSet> {
        kraus_from_unitary(&self.evolve_unitary(t)?, self.layout, Subsystem::A, rho_b, t)
    }

    /// Kraus set on B for a partner state `rho_a`.
    pub fn kraus_for_b(&self, rho_a: &ComplexMatrix, t: f64) -> Result<KrausSet> {
        kraus_from_unitary(&self.evolve_unitary(t)?, self.layout, Subsystem::B, rho_a, t)
    }

    /// `Tr_other[U (ρ_A ⊗ ρ_B) U†]`.
    pub fn reduced_density(&self, state: &ProductState, t: f64, keep: Subsystem) -> Result<ComplexMatrix> {
        reduced_density_with(&self.evolve_unitary(t)?, state, self.layout, keep)
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("time must be finite, got {t}")))
    }
}

/// Cached spectral decomposition of a composite Hamiltonian.
#[derive(Debug, Clone)]
pub struct Propagator {
    eig: HermitianEig,
    layout: TensorLayout,
}

impl Propagator {
    pub fn at(&self, t: f64) -> ComplexMatrix {
        self.eig.propagator(t)
    }

    pub fn layout(&self) -> TensorLayout {
        self.layout
    }

    pub fn eigen(&self) -> &HermitianEig {
        &self.eig
    }
}

/// `U† (op ⊗ I) U` (or `U† (I ⊗ op) U`) for a given propagator.
pub fn heisenberg_lift_with(
    u: &ComplexMatrix,
    op: &ComplexMatrix,
    layout: TensorLayout,
    on: Subsystem,
) -> Result<ComplexMatrix> {
    layout.check(u, "heisenberg_lift")?;
    let lifted = lift(op, layout, on)?;
    Ok(u.adjoint().matmul(&lifted).matmul(u))
}

/// Uncorrelated initial state `ρ_A ⊗ ρ_B`.
#[derive(Debug, Clone)]
pub struct ProductState {
    pub rho_a: ComplexMatrix,
    pub rho_b: ComplexMatrix,
}

impl ProductState {
    pub fn new(rho_a: ComplexMatrix, rho_b: ComplexMatrix) -> Result<Self> {
        validate_density(&rho_a)?;
        validate_density(&rho_b)?;
        Ok(Self { rho_a, rho_b })
    }

    pub fn layout(&self) -> TensorLayout {
        TensorLayout::new(self.rho_a.rows(), self.rho_b.rows())
    }

    pub fn composite(&self) -> ComplexMatrix {
        tensor(&self.rho_a, &self.rho_b)
    }

    pub fn marginal(&self, which: Subsystem) -> &ComplexMatrix {
        match which {
            Subsystem::A => &self.rho_a,
            Subsystem::B => &self.rho_b,
        }
    }
}

/// `Tr[op (ρ_A ⊗ ρ_B)]` for a composite operator.
pub fn expectation_heisenberg(op_lifted: &ComplexMatrix, state: &ProductState) -> Result<C64> {
    let layout = state.layout();
    layout.check(op_lifted, "expectation_heisenberg")?;
    let (ra, rb) = (&state.rho_a, &state.rho_b);
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..layout.dim_a {
        for k in 0..layout.dim_b {
            let row = layout.index(i, k);
            for j in 0..layout.dim_a {
                let raji = ra[(j, i)];
                if raji.re == 0.0 && raji.im == 0.0 {
                    continue;
                }
                for l in 0..layout.dim_b {
                    acc += op_lifted[(row, layout.index(j, l))] * raji * rb[(l, k)];
                }
            }
        }
    }
    Ok(acc)
}

/// `Tr_other[U (ρ_A ⊗ ρ_B) U†]` for a given propagator.
pub fn reduced_density_with(
    u: &ComplexMatrix,
    state: &ProductState,
    layout: TensorLayout,
    keep: Subsystem,
) -> Result<ComplexMatrix> {
    layout.check(u, "reduced_density")?;
    let rho = u.matmul(&state.composite()).matmul(&u.adjoint());
    partial_trace(&rho, layout, keep.other())
}

/// `Tr_partner[X (I ⊗ ρ_partner)]`: the subsystem image of a composite operator.
///
/// With `X` a Heisenberg lift this is the subdynamic operator on `target`.
pub fn reduce_against_partner(
    x: &ComplexMatrix,
    layout: TensorLayout,
    target: Subsystem,
    rho_partner: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    layout.check(x, "reduce_against_partner")?;
    let partner_dim = layout.dim_of(target.other());
    if rho_partner.rows() != partner_dim || !rho_partner.is_square() {
        return Err(Error::DimensionMismatch {
            context: "reduce_against_partner",
            expected: partner_dim,
            found: rho_partner.rows(),
        });
    }
    Ok(match target {
        // result[i,j] = Σ_{k,l} X[(i,k),(j,l)] ρ_B[l,k]
        Subsystem::A => ComplexMatrix::from_fn(layout.dim_a, layout.dim_a, |i, j| {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..layout.dim_b {
                for l in 0..layout.dim_b {
                    acc += x[(layout.index(i, k), layout.index(j, l))] * rho_partner[(l, k)];
                }
            }
            acc
        }),
        // result[k,l] = Σ_{i,j} X[(i,k),(j,l)] ρ_A[j,i]
        Subsystem::B => ComplexMatrix::from_fn(layout.dim_b, layout.dim_b, |k, l| {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..layout.dim_a {
                for j in 0..layout.dim_a {
                    let r = rho_partner[(j, i)];
                    if r.re == 0.0 && r.im == 0.0 {
                        continue;
                    }
                    acc += x[(layout.index(i, k), layout.index(j, l))] * r;
                }
            }
            acc
        }),
    })
}

/// A family of operators `{Vᵢ}` on one subsystem generating `ρ ↦ Σᵢ Vᵢ ρ Vᵢ†`.
#[derive(Debug, Clone)]
pub struct KrausSet {
    pub operators: Vec<ComplexMatrix>,
    pub target: Subsystem,
    pub time: f64,
    /// `‖Σᵢ Vᵢ†Vᵢ − I‖_max` over the retained operators.
    pub completeness_residual: f64,
}

impl KrausSet {
    /// Builds the set, dropping numerically-zero operators and recording the
    /// completeness residual of what remains.
    pub fn new(operators: Vec<ComplexMatrix>, target: Subsystem, time: f64) -> Result<Self> {
        let dim = match operators.first() {
            Some(op) => op.rows(),
            None => return Err(Error::InvalidParams("empty Kraus set".into())),
        };
        for op in &operators {
            if op.rows() != dim || op.cols() != dim {
                return Err(Error::DimensionMismatch { context: "KrausSet::new", expected: dim, found: op.rows() });
            }
        }
        let operators: Vec<_> = operators.into_iter().filter(|v| v.frobenius() >= KRAUS_DROP_NORM).collect();
        let mut set = Self { operators, target, time, completeness_residual: 0.0 };
        set.completeness_residual = set.completeness().max_abs_diff(&ComplexMatrix::identity(dim));
        Ok(set)
    }

    pub fn dim(&self) -> usize {
        self.operators.first().map_or(0, |v| v.rows())
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// `Σᵢ Vᵢ†Vᵢ`.
    pub fn completeness(&self) -> ComplexMatrix {
        let dim = self.dim();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for v in &self.operators {
            acc += &v.adjoint().matmul(v);
        }
        acc
    }

    /// Completeness residual restricted to rows and columns in `indices`.
    pub fn completeness_residual_on(&self, indices: &[usize]) -> f64 {
        self.completeness().max_abs_diff_on(&ComplexMatrix::identity(self.dim()), indices)
    }

    /// `Σᵢ Vᵢ ρ Vᵢ†`.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.rows() != self.dim() {
            return Err(Error::DimensionMismatch {
                context: "KrausSet::apply",
                expected: self.dim(),
                found: rho.rows(),
            });
        }
        let mut acc = ComplexMatrix::zeros(self.dim(), self.dim());
        for v in &self.operators {
            acc += &v.matmul(rho).matmul(&v.adjoint());
        }
        Ok(acc)
    }
}

/// How a subsystem operator was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Closed-form expression specific to a model.
    ClosedForm,
    /// `Σᵢ Vᵢ† a Vᵢ` from a numerically extracted Kraus set.
    GenericKraus,
    /// Partial trace of a Heisenberg operator against the partner's state.
    HeisenbergTrace,
}

/// A time-stamped operator on one subsystem, the subdynamic image of a
/// Schrödinger operator.
#[derive(Debug, Clone)]
pub struct SubdynamicOperator {
    pub matrix: ComplexMatrix,
    pub time: f64,
    pub provenance: Provenance,
}

impl SubdynamicOperator {
    /// `Tr[ã ρ]`.
    pub fn expectation(&self, rho: &ComplexMatrix) -> C64 {
        self.matrix.matmul(rho).trace()
    }

    /// `⟨ψ| ã |ψ⟩`.
    pub fn expectation_pure(&self, psi: &[C64]) -> C64 {
        self.matrix.sandwich(psi, psi)
    }
}

/// `Σᵢ Vᵢ† op0 Vᵢ`.
pub fn subdynamic_operator(kraus: &KrausSet, op0: &ComplexMatrix) -> Result<SubdynamicOperator> {
    if op0.rows() != kraus.dim() || !op0.is_square() {
        return Err(Error::DimensionMismatch {
            context: "subdynamic_operator",
            expected: kraus.dim(),
            found: op0.rows(),
        });
    }
    let mut acc = ComplexMatrix::zeros(kraus.dim(), kraus.dim());
    for v in &kraus.operators {
        acc += &v.adjoint().matmul(op0).matmul(v);
    }
    Ok(SubdynamicOperator { matrix: acc, time: kraus.time, provenance: Provenance::GenericKraus })
}

/// Subdynamic operator obtained by tracing a composite (Heisenberg) operator
/// against the partner's initial state.
pub fn subdynamic_from_composite(
    x: &ComplexMatrix,
    layout: TensorLayout,
    target: Subsystem,
    rho_partner: &ComplexMatrix,
    time: f64,
) -> Result<SubdynamicOperator> {
    Ok(SubdynamicOperator {
        matrix: reduce_against_partner(x, layout, target, rho_partner)?,
        time,
        provenance: Provenance::HeisenbergTrace,
    })
}

/// Kraus set on `target` from a propagator and the partner's density matrix.
///
/// With `ρ_partner = Σ_u p_u |b_u⟩⟨b_u|`, the operators are
/// `V_{k,u} = √p_u ⟨e_k| U |b_u⟩` where `|e_k⟩` runs over the partner's
/// computational basis.
pub fn kraus_from_unitary(
    u: &ComplexMatrix,
    layout: TensorLayout,
    target: Subsystem,
    rho_partner: &ComplexMatrix,
    t: f64,
) -> Result<KrausSet> {
    layout.check(u, "kraus_from_unitary")?;
    let partner_dim = layout.dim_of(target.other());
    if rho_partner.rows() != partner_dim {
        return Err(Error::DimensionMismatch {
            context: "kraus_from_unitary",
            expected: partner_dim,
            found: rho_partner.rows(),
        });
    }
    validate_density(rho_partner)?;
    let eig = hermitian_eig(rho_partner)?;
    let mut ops = Vec::new();
    for (idx, &p) in eig.values.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        let weight = p.sqrt();
        let psi: Vec<C64> = eig.vectors.column(idx).into_iter().map(|z| z * weight).collect();
        ops.extend(partner_slices(u, layout, target, &psi));
    }
    KrausSet::new(ops, target, t)
}

/// Kraus set on `target` when the partner starts in the pure state `psi_partner`:
/// `V_k = ⟨e_k| U |ψ⟩`, one operator per partner basis vector, phase fixed by `ψ`.
pub fn kraus_from_unitary_pure(
    u: &ComplexMatrix,
    layout: TensorLayout,
    target: Subsystem,
    psi_partner: &[C64],
    t: f64,
) -> Result<KrausSet> {
    layout.check(u, "kraus_from_unitary_pure")?;
    let partner_dim = layout.dim_of(target.other());
    if psi_partner.len() != partner_dim {
        return Err(Error::DimensionMismatch {
            context: "kraus_from_unitary_pure",
            expected: partner_dim,
            found: psi_partner.len(),
        });
    }
    KrausSet::new(partner_slices(u, layout, target, psi_partner), target, t)
}

/// `⟨e_k| U |ψ⟩` for every partner basis vector `e_k`, as operators on `target`.
fn partner_slices(u: &ComplexMatrix, layout: TensorLayout, target: Subsystem, psi: &[C64]) -> Vec<ComplexMatrix> {
    let (da, db) = (layout.dim_a, layout.dim_b);
    match target {
        Subsystem::A => (0..db)
            .map(|k| {
                ComplexMatrix::from_fn(da, da, |i, j| {
                    (0..db).map(|l| u[(layout.index(i, k), layout.index(j, l))] * psi[l]).sum()
                })
            })
            .collect(),
        Subsystem::B => (0..da)
            .map(|i| {
                ComplexMatrix::from_fn(db, db, |k, l| {
                    (0..da).map(|j| u[(layout.index(i, k), layout.index(j, l))] * psi[j]).sum()
                })
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{expm_oracle, pauli, re};

    fn two_qubit_system() -> BipartiteSystem {
        let h_a = pauli::sigma_z().scale_real(0.7);
        let h_b = pauli::sigma_x().scale_real(0.3);
        let h_ab = tensor(&pauli::sigma_x(), &pauli::sigma_x()).scale_real(0.5);
        BipartiteSystem::new(h_a, h_b, h_ab).unwrap()
    }

    fn up() -> ComplexMatrix {
        pauli::ket_bra(pauli::UP, pauli::UP)
    }

    #[test]
    fn unitary_at_zero_is_identity() {
        let sys = two_qubit_system();
        assert!(sys.evolve_unitary(0.0).unwrap().max_abs_diff(&ComplexMatrix::identity(4)) < 1e-14);
    }

    #[test]
    fn non_finite_time_rejected() {
        assert!(two_qubit_system().evolve_unitary(f64::NAN).is_err());
    }

    #[test]
    fn decoupled_unitary_factorises() {
        let h_a = pauli::sigma_z().scale_real(0.7);
        let h_b = pauli::sigma_x().scale_real(0.3);
        let sys = BipartiteSystem::new(h_a.clone(), h_b.clone(), ComplexMatrix::zeros(4, 4)).unwrap();
        let t = 1.3;
        let expected = tensor(&expm_oracle(&h_a, t).unwrap(), &expm_oracle(&h_b, t).unwrap());
        assert!(sys.evolve_unitary(t).unwrap().max_abs_diff(&expected) < 1e-13);
    }

    #[test]
    fn lift_at_zero_and_identity_lift() {
        let sys = two_qubit_system();
        let a0 = pauli::sigma_plus();
        let at0 = sys.heisenberg_lift(&a0, Subsystem::A, 0.0).unwrap();
        assert!(at0.max_abs_diff(&tensor(&a0, &ComplexMatrix::identity(2))) < 1e-14);
        let id = sys.heisenberg_lift(&ComplexMatrix::identity(2), Subsystem::A, 2.0).unwrap();
        assert!(id.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-13);
    }

    #[test]
    fn expectation_of_identity_is_one_and_factorises_at_zero() {
        let sys = two_qubit_system();
        let rho_a =
            ComplexMatrix::from_vec(2, 2, vec![re(0.7), C64::new(0.1, 0.2), C64::new(0.1, -0.2), re(0.3)]).unwrap();
        let state = ProductState::new(rho_a.clone(), up()).unwrap();
        let one = expectation_heisenberg(&ComplexMatrix::identity(4), &state).unwrap();
        assert!((one - re(1.0)).norm() < 1e-14);
        let a0 = pauli::sigma_x();
        let lifted = sys.heisenberg_lift(&a0, Subsystem::A, 0.0).unwrap();
        let got = expectation_heisenberg(&lifted, &state).unwrap();
        assert!((got - a0.matmul(&rho_a).trace()).norm() < 1e-14);
    }

    #[test]
    fn decoupled_pure_partner_gives_single_kraus_operator() {
        let h_a = pauli::sigma_z().scale_real(0.7);
        let sys = BipartiteSystem::new(h_a.clone(), ComplexMatrix::zeros(2, 2), ComplexMatrix::zeros(4, 4)).unwrap();
        let t = 0.9;
        let kraus = sys.kraus_for_a(&up(), t).unwrap();
        assert_eq!(kraus.len(), 1);
        assert!(kraus.completeness_residual < 1e-14);
        // Equal to e^{−ith_A} up to a global phase.
        let u_a = expm_oracle(&h_a, t).unwrap();
        let v = &kraus.operators[0];
        let phase = v[(0, 0)] / u_a[(0, 0)];
        assert!((phase.norm() - 1.0).abs() < 1e-14);
        assert!(v.max_abs_diff(&u_a.scale(phase)) < 1e-14);
    }

    #[test]
    fn pure_partner_gives_partner_dimension_operators() {
        let sys = two_qubit_system();
        let kraus = sys.kraus_for_a(&up(), 1.1).unwrap();
        assert_eq!(kraus.len(), 2);
        let kraus_b = sys.kraus_for_b(&up(), 1.1).unwrap();
        assert_eq!(kraus_b.len(), 2);
    }

    #[test]
    fn kraus_rejects_invalid_partner_state() {
        let sys = two_qubit_system();
        let bad = ComplexMatrix::from_real(2, 2, &[1.5, 0.0, 0.0, -0.5]).unwrap();
        assert!(matches!(sys.kraus_for_a(&bad, 1.0), Err(Error::InvalidDensity(_))));
    }

    #[test]
    fn subdynamic_identity_and_time_zero() {
        let sys = two_qubit_system();
        let kraus = sys.kraus_for_a(&up(), 1.7).unwrap();
        let id = subdynamic_operator(&kraus, &ComplexMatrix::identity(2)).unwrap();
        assert!(id.matrix.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-13);
        let k0 = sys.kraus_for_a(&up(), 0.0).unwrap();
        let op0 = pauli::sigma_plus();
        assert!(subdynamic_operator(&k0, &op0).unwrap().matrix.max_abs_diff(&op0) < 1e-14);
    }

    #[test]
    fn subdynamic_rejects_wrong_dimension() {
        let sys = two_qubit_system();
        let kraus = sys.kraus_for_a(&up(), 1.0).unwrap();
        assert!(subdynamic_operator(&kraus, &ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn reduced_density_at_zero_and_decoupled() {
        let h_a = pauli::sigma_x().scale_real(0.4);
        let h_b = pauli::sigma_z().scale_real(1.1);
        let sys = BipartiteSystem::new(h_a.clone(), h_b, ComplexMatrix::zeros(4, 4)).unwrap();
        let rho_a =
            ComplexMatrix::from_vec(2, 2, vec![re(0.6), C64::new(0.0, 0.3), C64::new(0.0, -0.3), re(0.4)]).unwrap();
        let state = ProductState::new(rho_a.clone(), up()).unwrap();
        let at0 = sys.reduced_density(&state, 0.0, Subsystem::A).unwrap();
        assert!(at0.max_abs_diff(&rho_a) < 1e-14);
        let t = 2.2;
        let u_a = expm_oracle(&h_a, t).unwrap();
        let expected = u_a.matmul(&rho_a).matmul(&u_a.adjoint());
        assert!(sys.reduced_density(&state, t, Subsystem::A).unwrap().max_abs_diff(&expected) < 1e-13);
    }

    #[test]
    fn kraus_set_drops_zero_operators() {
        let set =
            KrausSet::new(vec![ComplexMatrix::identity(2), ComplexMatrix::zeros(2, 2)], Subsystem::A, 0.0).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.completeness_residual, 0.0);
    }
}
