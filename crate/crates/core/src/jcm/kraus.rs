//! Closed-form subdynamics of the Jaynes-Cummings model.
//!
//! The atom sees the field through the Kraus operators `W_N = ⟨N|U|α⟩`; the
//! field sees the atom through `V_{ss'} = ⟨s|U|s'⟩`. Conjugating a pristine
//! operator with these sets gives its subdynamic image, written here directly
//! in terms of the correlation factors `v_n(t)`, `w_n(t)`.
//!
//! Atom density elements are `⟨s|ρ|s'⟩` throughout, so `rho_ud = ⟨↑|ρ|↓⟩`.

use num_complex::Complex64 as C64;

use super::model::{correlation_factors, CorrelationFactors};
use super::{AtomState, CoherentState, FockSpace, JcmParams};
use crate::bipartite::{kraus_from_unitary_pure, subdynamic_operator, KrausSet, Provenance, SubdynamicOperator};
use crate::error::{Error, Result};
use crate::numerics::pauli::{DOWN, UP};
use crate::numerics::{hermitian_eig, re, ComplexMatrix, Subsystem, I};

/// `e^{−iω(n+1)t}`, the phase of the `N = n+1` doublet.
fn doublet_phase(p: &JcmParams, t: f64, n: usize) -> C64 {
    C64::from_polar(1.0, -p.omega * t * (n as f64 + 1.0))
}

/// Atom-side Kraus set `W_N = ⟨N|U|α⟩`, one 2×2 operator per Fock level.
pub fn atom_kraus(p: &JcmParams, f: &FockSpace, cs: &CoherentState, t: f64) -> Result<KrausSet> {
    cs.check_fits(f)?;
    let cf = correlation_factors(p, f, t);
    let c = cs.amplitudes(f.dim() + 1);
    let ops = (0..f.dim())
        .map(|n| {
            let ni = n as isize;
            let p_n = doublet_phase(p, t, n);
            let q_n = C64::from_polar(1.0, -p.omega * t * n as f64);
            let mut w = ComplexMatrix::zeros(2, 2);
            w[(UP, UP)] = c[n] * p_n * cf.v(ni);
            w[(UP, DOWN)] = -I * c[n + 1] * p_n * cf.w(ni);
            if n >= 1 {
                w[(DOWN, UP)] = -I * c[n - 1] * q_n * cf.w(ni - 1);
            }
            w[(DOWN, DOWN)] = c[n] * q_n * cf.v(ni - 1).conj();
            w
        })
        .collect();
    KrausSet::new(ops, Subsystem::B, t)
}

/// Field-side operators `V_{ss'} = ⟨s|U|s'⟩` together with the atom state that
/// weights them: `ρ_R(t) = Σ_{s,s₁,s₂} ⟨s₂|ρ_A|s₁⟩ V_{ss₂} ρ_R V_{ss₁}†`.
#[derive(Debug, Clone)]
pub struct FieldKraus {
    /// `ops[s][s']`.
    pub ops: [[ComplexMatrix; 2]; 2],
    pub atom: AtomState,
    pub t: f64,
}

impl FieldKraus {
    pub fn get(&self, s: usize, s_prime: usize) -> &ComplexMatrix {
        &self.ops[s][s_prime]
    }

    /// Reduced field state after time `t`.
    pub fn apply(&self, rho_r: &ComplexMatrix) -> ComplexMatrix {
        let dim = rho_r.rows();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for s in [UP, DOWN] {
            for s1 in [UP, DOWN] {
                for s2 in [UP, DOWN] {
                    let weight = self.atom.element(s2, s1);
                    if weight.norm() == 0.0 {
                        continue;
                    }
                    let term = self.ops[s][s2].matmul(rho_r).matmul(&self.ops[s][s1].adjoint());
                    acc += &term.scale(weight);
                }
            }
        }
        acc
    }

    /// `Σ ⟨s₂|ρ_A|s₁⟩ V_{ss₁}† op V_{ss₂}`.
    pub fn subdynamic(&self, op: &ComplexMatrix) -> SubdynamicOperator {
        let dim = op.rows();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for s in [UP, DOWN] {
            for s1 in [UP, DOWN] {
                for s2 in [UP, DOWN] {
                    let weight = self.atom.element(s2, s1);
                    if weight.norm() == 0.0 {
                        continue;
                    }
                    let term = self.ops[s][s1].adjoint().matmul(op).matmul(&self.ops[s][s2]);
                    acc += &term.scale(weight);
                }
            }
        }
        SubdynamicOperator { matrix: acc, time: self.t, provenance: Provenance::ClosedForm }
    }

    /// A canonical Kraus set for the same channel, from the eigenbasis of `ρ_A`:
    /// `K_{s,u} = √p_u Σ_{s'} b_u(s') V_{ss'}`.
    pub fn kraus_set(&self) -> Result<KrausSet> {
        let eig = hermitian_eig(self.atom.matrix())?;
        let mut ops = Vec::new();
        for (u, &pu) in eig.values.iter().enumerate() {
            if pu <= 0.0 {
                continue;
            }
            let b = eig.vectors.column(u);
            for s in [UP, DOWN] {
                let k = &self.ops[s][UP].scale(b[UP] * pu.sqrt()) + &self.ops[s][DOWN].scale(b[DOWN] * pu.sqrt());
                ops.push(k);
            }
        }
        KrausSet::new(ops, Subsystem::A, self.t)
    }
}

/// The four field operators `V_{ss'}` for atom state `atom`.
pub fn field_kraus(p: &JcmParams, f: &FockSpace, atom: &AtomState, t: f64) -> FieldKraus {
    let cf = correlation_factors(p, f, t);
    let dim = f.dim();
    let mut uu = ComplexMatrix::zeros(dim, dim);
    let mut dd = ComplexMatrix::zeros(dim, dim);
    let mut du = ComplexMatrix::zeros(dim, dim);
    let mut ud = ComplexMatrix::zeros(dim, dim);
    for n in 0..dim {
        let ni = n as isize;
        let p_n = doublet_phase(p, t, n);
        uu[(n, n)] = p_n * cf.v(ni);
        dd[(n, n)] = C64::from_polar(1.0, -p.omega * t * n as f64) * cf.v(ni - 1).conj();
        if n + 1 < dim {
            let off = -I * p_n * cf.w(ni);
            du[(n + 1, n)] = off;
            ud[(n, n + 1)] = off;
        }
    }
    FieldKraus { ops: [[uu, ud], [du, dd]], atom: atom.clone(), t }
}

/// Quasi-photon creation operator
/// `ã†(t) = e^{iωt} Σ_n [√(n+1) A_n |n+1⟩⟨n| + C_n |n+1⟩⟨n−1| + D_n |n⟩⟨n|]` with
///
/// ```text
/// A_n = ρ↑↑ (v_n v*_{n+1} + w_n w_{n+1} √((n+2)/(n+1))) + ρ↓↓ (v_n v*_{n−1} + w_n w_{n−1} √(n/(n+1)))
/// C_n = i ⟨↑|ρ|↓⟩ (w_n v_{n−1} √n − w_{n−1} v_n √(n+1))
/// D_n = i ⟨↓|ρ|↑⟩ (w_n v*_{n−1} √(n+1) − w_{n−1} v*_n √n)
/// ```
pub fn quasi_photon_creation(p: &JcmParams, f: &FockSpace, atom: &AtomState, t: f64) -> SubdynamicOperator {
    let cf = correlation_factors(p, f, t);
    let dim = f.dim();
    let (ruu, rdd, rud, rdu) = (atom.rho_uu(), atom.rho_dd(), atom.rho_ud(), atom.rho_du());
    let mut m = ComplexMatrix::zeros(dim, dim);
    for n in 0..dim {
        let ni = n as isize;
        let nf = n as f64;
        if n + 1 < dim {
            let a_n = (cf.v(ni) * cf.v(ni + 1).conj() + cf.w(ni) * cf.w(ni + 1) * ((nf + 2.0) / (nf + 1.0)).sqrt())
                * ruu
                + (cf.v(ni) * cf.v(ni - 1).conj() + cf.w(ni) * cf.w(ni - 1) * (nf / (nf + 1.0)).sqrt()) * rdd;
            m[(n + 1, n)] = a_n * (nf + 1.0).sqrt();
            if n >= 1 {
                let c_n = I * rud * (cf.v(ni - 1) * cf.w(ni) * nf.sqrt() - cf.v(ni) * cf.w(ni - 1) * (nf + 1.0).sqrt());
                m[(n + 1, n - 1)] = c_n;
            }
        }
        let d_n =
            I * rdu * (cf.v(ni - 1).conj() * cf.w(ni) * (nf + 1.0).sqrt() - cf.v(ni).conj() * cf.w(ni - 1) * nf.sqrt());
        m[(n, n)] = d_n;
    }
    SubdynamicOperator {
        matrix: m.scale(C64::from_polar(1.0, p.omega * t)),
        time: t,
        provenance: Provenance::ClosedForm,
    }
}

/// `ã(t) = [ã†(t)]†`.
pub fn quasi_photon_annihilation(p: &JcmParams, f: &FockSpace, atom: &AtomState, t: f64) -> SubdynamicOperator {
    let op = quasi_photon_creation(p, f, atom, t);
    SubdynamicOperator { matrix: op.matrix.adjoint(), ..op }
}

/// Quasi-photon number operator
/// `Ñ(t) = Σ_n [(n + ρ↑↑ w_n² − ρ↓↓ w²_{n−1}) |n⟩⟨n| − i⟨↑|ρ|↓⟩ w_n v_n |n+1⟩⟨n| + i⟨↓|ρ|↑⟩ w_n v*_n |n⟩⟨n+1|]`.
pub fn quasi_photon_number(p: &JcmParams, f: &FockSpace, atom: &AtomState, t: f64) -> SubdynamicOperator {
    let cf = correlation_factors(p, f, t);
    let dim = f.dim();
    let (ruu, rdd, rud, rdu) = (atom.rho_uu(), atom.rho_dd(), atom.rho_ud(), atom.rho_du());
    let mut m = ComplexMatrix::zeros(dim, dim);
    for n in 0..dim {
        let ni = n as isize;
        let w = cf.w(ni);
        m[(n, n)] = re(n as f64 + ruu * w * w - rdd * cf.w(ni - 1).powi(2));
        if n + 1 < dim {
            m[(n + 1, n)] = -I * rud * w * cf.v(ni);
            m[(n, n + 1)] = I * rdu * w * cf.v(ni).conj();
        }
    }
    SubdynamicOperator { matrix: m, time: t, provenance: Provenance::ClosedForm }
}

/// Series coefficients of `σ̃₊(t) = e^{iωt}(S₁|↑⟩⟨↓| + S₂|↓⟩⟨↑| + S₃|↑⟩⟨↑| + S₄|↓⟩⟨↓|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaPlusSeries {
    pub s1: C64,
    pub s2: C64,
    pub s3: C64,
    pub s4: C64,
}

/// `S₁…S₄` of `σ̃₊`, summed over `n ≤ n_max`. Undefined for `α = 0`.
pub fn sigma_plus_series(p: &JcmParams, f: &FockSpace, cs: &CoherentState, t: f64) -> Result<SigmaPlusSeries> {
    let alpha = cs.alpha;
    if alpha.norm() == 0.0 {
        return Err(Error::ZeroAmplitude);
    }
    let cf = correlation_factors(p, f, t);
    let pn = cs.poisson(f.dim());
    let zero = C64::new(0.0, 0.0);
    let (mut s1, mut s2, mut s3, mut s4) = (zero, zero, zero, zero);
    for (n, &weight) in pn.iter().enumerate() {
        let ni = n as isize;
        let nf = n as f64;
        let (v, vm1, w, wm1) = (cf.v(ni), cf.v(ni - 1), cf.w(ni), cf.w(ni - 1));
        s1 += weight * v.conj() * vm1.conj();
        s2 += weight * w * wm1 * (alpha.conj() / alpha) * (nf / (nf + 1.0)).sqrt();
        s3 += -I * weight * v.conj() * wm1 * nf.sqrt() / alpha;
        s4 += I * weight * vm1.conj() * w * alpha.conj() / (nf + 1.0).sqrt();
    }
    Ok(SigmaPlusSeries { s1, s2, s3, s4 })
}

/// Closed-form subdynamic `σ̃₊(t)`; refuses `α = 0`.
pub fn subdynamic_sigma_plus(p: &JcmParams, f: &FockSpace, cs: &CoherentState, t: f64) -> Result<SubdynamicOperator> {
    cs.check_fits(f)?;
    let s = sigma_plus_series(p, f, cs, t)?;
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(UP, DOWN)] = s.s1;
    m[(DOWN, UP)] = s.s2;
    m[(UP, UP)] = s.s3;
    m[(DOWN, DOWN)] = s.s4;
    Ok(SubdynamicOperator {
        matrix: m.scale(C64::from_polar(1.0, p.omega * t)),
        time: t,
        provenance: Provenance::ClosedForm,
    })
}

/// `σ̃₋(t) = [σ̃₊(t)]†`.
pub fn subdynamic_sigma_minus(p: &JcmParams, f: &FockSpace, cs: &CoherentState, t: f64) -> Result<SubdynamicOperator> {
    let op = subdynamic_sigma_plus(p, f, cs, t)?;
    Ok(SubdynamicOperator { matrix: op.matrix.adjoint(), ..op })
}

/// `σ̃₊(t)` from the closed form, or from the generic Kraus path when `α = 0`.
pub fn sigma_plus(p: &JcmParams, f: &FockSpace, cs: &CoherentState, t: f64) -> Result<SubdynamicOperator> {
    match subdynamic_sigma_plus(p, f, cs, t) {
        Err(Error::ZeroAmplitude) => {
            let u = super::model::evolution_spectral(p, f, t);
            let kraus = kraus_from_unitary_pure(&u, f.layout(), Subsystem::B, &cs.vector(f), t)?;
            subdynamic_operator(&kraus, &crate::numerics::pauli::sigma_plus())
        }
        other => other,
    }
}

/// Coefficients of `σ̃_z(t) = S₁|↑⟩⟨↑| + S₂|↓⟩⟨↓| + S₃|↑⟩⟨↓| + S₄|↓⟩⟨↑|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaZSeries {
    pub s1: f64,
    pub s2: f64,
    pub s3: C64,
    pub s4: C64,
}

/// `S₁ = 1 − 2Σp(n)w_n²`, `S₂ = −[1 − 2Σp(n+1)w_n²]`,
/// `S₃ = −2iΣ p(n) w_n v*_n α/√(n+1) = S₄*`.
pub fn sigma_z_series(p: &JcmParams, f: &FockSpace, cs: &CoherentState, t: f64) -> SigmaZSeries {
    let cf: CorrelationFactors = correlation_factors(p, f, t);
    let pn = cs.poisson(f.dim() + 1);
    let mut sum_w = 0.0;
    let mut sum_w_next = 0.0;
    let mut s3 = C64::new(0.0, 0.0);
    for n in 0..f.dim() {
        let ni = n as isize;
        let w = cf.w(ni);
        sum_w += pn[n] * w * w;
        sum_w_next += pn[n + 1] * w * w;
        s3 += -2.0 * I * pn[n] * w * cf.v(ni).conj() * cs.alpha / ((n + 1) as f64).sqrt();
    }
    SigmaZSeries { s1: 1.0 - 2.0 * sum_w, s2: -(1.0 - 2.0 * sum_w_next), s3, s4: s3.conj() }
}

/// Closed-form subdynamic `σ̃_z(t)`.
pub fn subdynamic_sigma_z(p: &JcmParams, f: &FockSpace, cs: &CoherentState, t: f64) -> Result<SubdynamicOperator> {
    cs.check_fits(f)?;
    let s = sigma_z_series(p, f, cs, t);
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(UP, UP)] = re(s.s1);
    m[(DOWN, DOWN)] = re(s.s2);
    m[(UP, DOWN)] = s.s3;
    m[(DOWN, UP)] = s.s4;
    Ok(SubdynamicOperator { matrix: m, time: t, provenance: Provenance::ClosedForm })
}

/// Offset, dispersion and eigenvalue pair of a subdynamic `σ̃_z(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinEigenSummary {
    /// `(S₁ + S₂)/2`.
    pub offset: f64,
    /// `√(((S₁ − S₂)/2)² + |S₃|²)`.
    pub dispersion: f64,
    /// `offset + dispersion`.
    pub eig_plus: f64,
    /// `offset − dispersion`.
    pub eig_minus: f64,
    /// `|S₃|`, kept for the bound `dispersion ≥ |S₃|`.
    pub coherence: f64,
}

/// Offset/dispersion summary read off the 2×2 matrix entries.
pub fn spin_eigen_summary(op: &SubdynamicOperator) -> SpinEigenSummary {
    let m = &op.matrix;
    let (s1, s2, s3) = (m[(UP, UP)].re, m[(DOWN, DOWN)].re, m[(UP, DOWN)]);
    let offset = 0.5 * (s1 + s2);
    let dispersion = ((0.5 * (s1 - s2)).powi(2) + s3.norm_sqr()).sqrt();
    SpinEigenSummary {
        offset,
        dispersion,
        eig_plus: offset + dispersion,
        eig_minus: offset - dispersion,
        coherence: s3.norm(),
    }
}

/// `|⟨n⟩ + ½(ρ↑↑ − ρ↓↓) − ⟨Ñ(t)⟩ − ½⟨σ̃_z(t)⟩|` with `⟨Ñ⟩` over `|α⟩⟨α|` and
/// `⟨σ̃_z⟩` over the initial atom state.
pub fn conservation_check(p: &JcmParams, f: &FockSpace, cs: &CoherentState, atom: &AtomState, t: f64) -> Result<f64> {
    let (lhs, rhs) = conservation_sides(p, f, cs, atom, t)?;
    Ok((lhs - rhs).abs())
}

/// Both sides of the excitation balance: `(M + ½(ρ↑↑ − ρ↓↓), ⟨Ñ(t)⟩ + ½⟨σ̃_z(t)⟩)`.
pub fn conservation_sides(
    p: &JcmParams,
    f: &FockSpace,
    cs: &CoherentState,
    atom: &AtomState,
    t: f64,
) -> Result<(f64, f64)> {
    let psi = cs.vector(f);
    let lhs = cs.mean() + 0.5 * (atom.rho_uu() - atom.rho_dd());
    let n_tilde = quasi_photon_number(p, f, atom, t).expectation_pure(&psi);
    let sz = subdynamic_sigma_z(p, f, cs, t)?.expectation(atom.matrix());
    Ok((lhs, (n_tilde + 0.5 * sz).re))
}
