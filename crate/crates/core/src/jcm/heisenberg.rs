//! Heisenberg-picture solution of the Jaynes-Cummings model.
//!
//! The lifted operators obey
//!
//! ```text
//! (i∂ₜ + ω) a_H†(t)       = −g σ_H₊(t)
//! (i∂ₜ + ω + 2C) σ_H₊(t)  =  g a_H†(t)
//! ```
//!
//! and are solved by `a_H† = 𝒜 a† + ℬ σ₊`, `σ_H₊ = 𝒞 σ₊ + 𝒟 a†`, where the
//! coefficients are functions of the constants of motion through
//! `r̂± = C ± √(g²(N − I) + (Δω/2)²)`. Every such function is evaluated in the
//! joint eigenbasis of `(N, C)`, which the dressed states supply.

use num_complex::Complex64 as C64;

use super::model::{constants_of_motion, dressed_eigensystem};
use super::{FockSpace, JcmParams};
use crate::bipartite::{reduce_against_partner, Provenance, SubdynamicOperator};
use crate::error::Result;
use crate::numerics::pauli::{self, DOWN, UP};
use crate::numerics::{re, tensor, ComplexMatrix, Subsystem, I};

/// Relative gap below which `r̂₊ = r̂₋` is treated as degenerate.
const DEGENERACY_TOL: f64 = 1e-9;

/// One joint eigenvector of `(N, C)`, stored by its (at most two) nonzero components.
#[derive(Debug, Clone)]
struct JointState {
    support: Vec<(usize, f64)>,
    n_value: f64,
    c_value: f64,
}

/// The joint eigenbasis of the commuting pair `(N, C)` on the truncated space.
///
/// Besides the dressed doublets it holds `|0,↓⟩` (`N = 0`, `C = Δω/2`) and the
/// edge state `|n_max,↑⟩` (`N = n_max + 1`, `C = −Δω/2`), whose partner was cut.
#[derive(Debug, Clone)]
pub struct JointEigenbasis {
    dim: usize,
    states: Vec<JointState>,
}

impl JointEigenbasis {
    pub fn new(p: &JcmParams, f: &FockSpace) -> Self {
        let layout = f.layout();
        let spec = dressed_eigensystem(p, f);
        let mut states = Vec::with_capacity(layout.dim());
        states.push(JointState {
            support: vec![(layout.index(0, DOWN), 1.0)],
            n_value: 0.0,
            c_value: p.half_detuning(),
        });
        for st in &spec.states {
            let (down, up) = st.amplitudes();
            states.push(JointState {
                support: vec![(layout.index(st.n + 1, DOWN), down), (layout.index(st.n, UP), up)],
                n_value: (st.n + 1) as f64,
                c_value: st.c_value(),
            });
        }
        states.push(JointState {
            support: vec![(layout.index(f.n_max(), UP), 1.0)],
            n_value: (f.n_max() + 1) as f64,
            c_value: -p.half_detuning(),
        });
        Self { dim: layout.dim(), states }
    }

    /// Number of eigenvectors (the composite dimension).
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// `(N, C)` eigenvalue pairs.
    pub fn eigenvalues(&self) -> Vec<(f64, f64)> {
        self.states.iter().map(|s| (s.n_value, s.c_value)).collect()
    }

    /// `F = Σ_k func(N_k, C_k) |k⟩⟨k|`.
    pub fn function<F: Fn(f64, f64) -> C64>(&self, func: F) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim, self.dim);
        for st in &self.states {
            let value = func(st.n_value, st.c_value);
            for &(i, ai) in &st.support {
                for &(j, aj) in &st.support {
                    m[(i, j)] += value * (ai * aj);
                }
            }
        }
        m
    }

    fn coefficient_matrices(&self, p: &JcmParams, t: f64, pairing: Pairing) -> OperatorCoefficients {
        let dim = self.dim;
        let mut out = [
            ComplexMatrix::zeros(dim, dim),
            ComplexMatrix::zeros(dim, dim),
            ComplexMatrix::zeros(dim, dim),
            ComplexMatrix::zeros(dim, dim),
        ];
        for st in &self.states {
            let values = scalar_coefficients(p, st.n_value, st.c_value, t, pairing);
            for (m, value) in out.iter_mut().zip(values) {
                for &(i, ai) in &st.support {
                    for &(j, aj) in &st.support {
                        m[(i, j)] += value * (ai * aj);
                    }
                }
            }
        }
        let [a, b, c, d] = out;
        OperatorCoefficients { a, b, c, d, t, pairing }
    }
}

/// Principal square root of `g²(N − 1) + (Δω/2)²` on an `N` eigenspace.
///
/// The operand is negative only on `N = 0` when `|Δω/2| < g`.
fn root(p: &JcmParams, n_value: f64) -> C64 {
    let d = p.half_detuning();
    re(p.g * p.g * (n_value - 1.0) + d * d).sqrt()
}

fn degeneracy_scale(p: &JcmParams) -> f64 {
    p.g + p.half_detuning().abs()
}

/// Which exponential pairing is used for `𝒞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// `𝒞 = e^{itω}(r̂₊e^{itr̂₊} − r̂₋e^{itr̂₋})/(r̂₊ − r̂₋)`.
    Matched,
    /// Exponentials exchanged, `𝒞 = e^{itω}(r̂₊e^{itr̂₋} − r̂₋e^{itr̂₊})/(r̂₊ − r̂₋) = 𝒜`.
    Swapped,
}

/// `[𝒜, ℬ, 𝒞, 𝒟]` on one joint eigenspace.
fn scalar_coefficients(p: &JcmParams, n_value: f64, c: f64, t: f64, pairing: Pairing) -> [C64; 4] {
    let mu = root(p, n_value);
    let r_minus = c - mu;
    let centre = C64::from_polar(1.0, c * t);
    // E = (e^{itr₊} − e^{itr₋})/(r₊ − r₋) = e^{itc} · i sin(tμ)/μ
    let divided = if mu.norm() <= DEGENERACY_TOL * degeneracy_scale(p) {
        I * t * centre
    } else {
        I * centre * (mu * t).sin() / mu
    };
    let phase = C64::from_polar(1.0, p.omega * t);
    let e_minus = (I * t * r_minus).exp();
    let e_plus = (I * t * (c + mu)).exp();
    let a = phase * (e_minus - r_minus * divided);
    let b = phase * p.g * divided;
    let c_coef = match pairing {
        Pairing::Matched => phase * (e_plus + r_minus * divided),
        Pairing::Swapped => a,
    };
    [a, b, c_coef, -b]
}

/// The commuting constants `r̂± = C ± √(g²(N − I) + (Δω/2)²)`.
#[derive(Debug, Clone)]
pub struct RHatPair {
    pub r_plus: ComplexMatrix,
    pub r_minus: ComplexMatrix,
}

pub fn rhat_pair(p: &JcmParams, f: &FockSpace) -> RHatPair {
    let basis = JointEigenbasis::new(p, f);
    RHatPair { r_plus: basis.function(|n, c| c + root(p, n)), r_minus: basis.function(|n, c| c - root(p, n)) }
}

/// `𝒜, ℬ, 𝒞, 𝒟` at time `t`.
#[derive(Debug, Clone)]
pub struct OperatorCoefficients {
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    pub c: ComplexMatrix,
    pub d: ComplexMatrix,
    pub t: f64,
    pub pairing: Pairing,
}

/// Heisenberg solution for fixed parameters and space, sharing one joint eigenbasis.
#[derive(Debug, Clone)]
pub struct HeisenbergSolution {
    params: JcmParams,
    space: FockSpace,
    basis: JointEigenbasis,
    a_dagger0: ComplexMatrix,
    sigma_plus0: ComplexMatrix,
}

impl HeisenbergSolution {
    pub fn new(p: &JcmParams, f: &FockSpace) -> Self {
        Self {
            params: *p,
            space: *f,
            basis: JointEigenbasis::new(p, f),
            a_dagger0: tensor(&f.creation(), &ComplexMatrix::identity(2)),
            sigma_plus0: tensor(&ComplexMatrix::identity(f.dim()), &pauli::sigma_plus()),
        }
    }

    pub fn params(&self) -> &JcmParams {
        &self.params
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn basis(&self) -> &JointEigenbasis {
        &self.basis
    }

    pub fn coefficients(&self, t: f64, pairing: Pairing) -> OperatorCoefficients {
        self.basis.coefficient_matrices(&self.params, t, pairing)
    }

    /// `a_H†(t) = 𝒜 (a† ⊗ I) + ℬ (I ⊗ σ₊)`.
    pub fn a_dagger(&self, t: f64) -> ComplexMatrix {
        let k = self.coefficients(t, Pairing::Matched);
        self.assemble_a_dagger(&k)
    }

    /// `σ_H₊(t) = 𝒞 (I ⊗ σ₊) + 𝒟 (a† ⊗ I)`.
    pub fn sigma_plus(&self, t: f64) -> ComplexMatrix {
        self.sigma_plus_with(t, Pairing::Matched)
    }

    pub fn sigma_plus_with(&self, t: f64, pairing: Pairing) -> ComplexMatrix {
        let k = self.coefficients(t, pairing);
        self.assemble_sigma_plus(&k)
    }

    fn assemble_a_dagger(&self, k: &OperatorCoefficients) -> ComplexMatrix {
        &k.a.matmul(&self.a_dagger0) + &k.b.matmul(&self.sigma_plus0)
    }

    fn assemble_sigma_plus(&self, k: &OperatorCoefficients) -> ComplexMatrix {
        &k.c.matmul(&self.sigma_plus0) + &k.d.matmul(&self.a_dagger0)
    }

    /// Any of the supported lifted operators at time `t`.
    pub fn operator(&self, which: HeisenbergOperator, t: f64) -> ComplexMatrix {
        match which {
            HeisenbergOperator::ADagger => self.a_dagger(t),
            HeisenbergOperator::A => self.a_dagger(t).adjoint(),
            HeisenbergOperator::Number => {
                let ad = self.a_dagger(t);
                ad.matmul(&ad.adjoint())
            }
            HeisenbergOperator::SigmaPlus => self.sigma_plus(t),
            HeisenbergOperator::SigmaMinus => self.sigma_plus(t).adjoint(),
            HeisenbergOperator::SigmaZ => {
                let sp = self.sigma_plus(t);
                let id = ComplexMatrix::identity(sp.rows());
                &sp.matmul(&sp.adjoint()).scale_real(2.0) - &id
            }
        }
    }

    /// Residuals of both equations of motion in coefficient form, max-norm on
    /// the interior, with a central difference of step `h`.
    ///
    /// Substituting the solution into the equations and collecting the
    /// left factors of `a†` and `σ₊` gives
    ///
    /// ```text
    /// (i∂ₜ + ω)𝒜 = −g𝒟        (i∂ₜ + ω + 2C)𝒞 = gℬ
    /// (i∂ₜ + ω)ℬ = −g𝒞        (i∂ₜ + ω + 2C)𝒟 = g𝒜
    /// ```
    ///
    /// `res_a` covers the left column, `res_sigma` the right one. Each
    /// `(i∂ₜ + K)x` with constant `K` is evaluated as `e^{itK} i∂ₜ(e^{−itK}x)`.
    pub fn eom_residual(&self, t: f64, h: f64) -> (f64, f64) {
        let p = &self.params;
        let (kp, km, k0) = (
            self.coefficients(t + h, Pairing::Matched),
            self.coefficients(t - h, Pairing::Matched),
            self.coefficients(t, Pairing::Matched),
        );
        let free = |s: f64| self.basis.function(|_, _| C64::from_polar(1.0, p.omega * s));
        let shifted = |s: f64| self.basis.function(|_, c| C64::from_polar(1.0, (p.omega + 2.0 * c) * s));
        let idx = self.space.interior_composite();
        let residual =
            |plus: &ComplexMatrix, minus: &ComplexMatrix, k: &dyn Fn(f64) -> ComplexMatrix, rhs: ComplexMatrix| {
                let diff = &k(-(t + h)).matmul(plus) - &k(-(t - h)).matmul(minus);
                let lhs = k(t).matmul(&diff).scale(I / (2.0 * h));
                lhs.max_abs_diff_on(&rhs, &idx)
            };
        let res_a = residual(&kp.a, &km.a, &free, k0.d.scale_real(-p.g)).max(residual(
            &kp.b,
            &km.b,
            &free,
            k0.c.scale_real(-p.g),
        ));
        let res_sigma = residual(&kp.c, &km.c, &shifted, k0.b.scale_real(p.g)).max(residual(
            &kp.d,
            &km.d,
            &shifted,
            k0.a.scale_real(p.g),
        ));
        (res_a, res_sigma)
    }

    /// Residuals of the equations of motion for the lifted operators themselves,
    /// `(i∂ₜ + ω)a_H† + gσ_H₊` and `(i∂ₜ + ω + 2C)σ_H₊ − g a_H†`, max-norm on the
    /// interior. These carry the extra `√n` of `a†` on top of [`Self::eom_residual`].
    pub fn operator_eom_residual(&self, t: f64, h: f64) -> (f64, f64) {
        let p = &self.params;
        let strip = |s: f64| C64::from_polar(1.0, -p.omega * s);
        let restore = C64::from_polar(1.0, p.omega * t);
        let derivative = |x_plus: &ComplexMatrix, x_minus: &ComplexMatrix| {
            (&x_plus.scale(strip(t + h)) - &x_minus.scale(strip(t - h))).scale(I * restore / (2.0 * h))
        };
        let (ad_p, ad_m, ad_0) = (self.a_dagger(t + h), self.a_dagger(t - h), self.a_dagger(t));
        let (sp_p, sp_m, sp_0) = (self.sigma_plus(t + h), self.sigma_plus(t - h), self.sigma_plus(t));
        let (_, c_op) = constants_of_motion(p, &self.space);
        let idx = self.space.interior_composite();
        let lhs_a = derivative(&ad_p, &ad_m);
        let lhs_s = &derivative(&sp_p, &sp_m) + &c_op.matmul(&sp_0).scale_real(2.0);
        (lhs_a.max_abs_diff_on(&sp_0.scale_real(-p.g), &idx), lhs_s.max_abs_diff_on(&ad_0.scale_real(p.g), &idx))
    }

    /// `Tr_partner[X_H(t)(I ⊗ ρ_partner)]`, the subdynamic image of `which`.
    ///
    /// Field operators take the atom's 2×2 density matrix, atom operators the
    /// field's.
    pub fn subdynamic(
        &self,
        which: HeisenbergOperator,
        rho_partner: &ComplexMatrix,
        t: f64,
    ) -> Result<SubdynamicOperator> {
        let x = self.operator(which, t);
        let matrix = reduce_against_partner(&x, self.space.layout(), which.subsystem(), rho_partner)?;
        Ok(SubdynamicOperator { matrix, time: t, provenance: Provenance::HeisenbergTrace })
    }
}

/// Lifted operators supported by [`HeisenbergSolution::operator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeisenbergOperator {
    ADagger,
    A,
    Number,
    SigmaPlus,
    SigmaMinus,
    SigmaZ,
}

impl HeisenbergOperator {
    /// The subsystem the pristine operator acts on.
    pub fn subsystem(self) -> Subsystem {
        match self {
            Self::ADagger | Self::A | Self::Number => Subsystem::A,
            Self::SigmaPlus | Self::SigmaMinus | Self::SigmaZ => Subsystem::B,
        }
    }
}

pub fn operator_coefficients(p: &JcmParams, f: &FockSpace, t: f64) -> OperatorCoefficients {
    JointEigenbasis::new(p, f).coefficient_matrices(p, t, Pairing::Matched)
}

pub fn heisenberg_a_dagger(p: &JcmParams, f: &FockSpace, t: f64) -> ComplexMatrix {
    HeisenbergSolution::new(p, f).a_dagger(t)
}

pub fn heisenberg_sigma_plus(p: &JcmParams, f: &FockSpace, t: f64) -> ComplexMatrix {
    HeisenbergSolution::new(p, f).sigma_plus(t)
}

pub fn eom_residual(p: &JcmParams, f: &FockSpace, t: f64, h: f64) -> (f64, f64) {
    HeisenbergSolution::new(p, f).eom_residual(t, h)
}

pub fn subdynamic_from_heisenberg(
    p: &JcmParams,
    f: &FockSpace,
    rho_partner: &ComplexMatrix,
    t: f64,
    which: HeisenbergOperator,
) -> Result<SubdynamicOperator> {
    HeisenbergSolution::new(p, f).subdynamic(which, rho_partner, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::heisenberg_lift_with;
    use crate::jcm::model::evolution_spectral;
    use crate::jcm::DEFAULT_GUARD;

    fn fig_params(ratio: f64) -> (JcmParams, FockSpace) {
        let p = JcmParams::from_detuning_ratio(1.0, ratio, 0.0).unwrap();
        (p, FockSpace::for_mean_photons(10.0, DEFAULT_GUARD).unwrap())
    }

    #[test]
    fn boundary_values_at_zero() {
        let (p, f) = fig_params(7.5);
        for (n, c) in JointEigenbasis::new(&p, &f).eigenvalues() {
            let one = re(1.0);
            let zero = re(0.0);
            assert_eq!(scalar_coefficients(&p, n, c, 0.0, Pairing::Matched), [one, zero, one, -zero]);
        }
        let k = operator_coefficients(&p, &f, 0.0);
        let id = ComplexMatrix::identity(2 * f.dim());
        assert!(k.a.max_abs_diff(&id) < 1e-15);
        assert!(k.c.max_abs_diff(&id) < 1e-15);
        assert_eq!(k.b.max_abs(), 0.0);
        assert_eq!(k.d.max_abs(), 0.0);
    }

    #[test]
    fn rhat_are_commuting_constants() {
        let (p, f) = fig_params(2.0);
        let r = rhat_pair(&p, &f);
        assert!(r.r_plus.commutator(&r.r_minus).max_abs() < 1e-11);
        let u = evolution_spectral(&p, &f, 3.7);
        let idx = f.interior_composite();
        for x in [&r.r_plus, &r.r_minus] {
            let evolved = u.adjoint().matmul(x).matmul(&u);
            assert!(evolved.max_abs_diff_on(x, &idx) < 1e-9);
        }
    }

    #[test]
    fn rhat_gap_squares_to_operand() {
        let p = JcmParams::new(0.4, -1.1, 0.7).unwrap();
        let f = FockSpace::new(14, 3).unwrap();
        let r = rhat_pair(&p, &f);
        let gap = &r.r_plus - &r.r_minus;
        let (n_op, _) = constants_of_motion(&p, &f);
        let id = ComplexMatrix::identity(2 * f.dim());
        let d = p.half_detuning();
        let operand = &(&n_op - &id).scale_real(p.g * p.g) + &id.scale_real(d * d);
        let idx = f.interior_composite();
        assert!(gap.matmul(&gap).scale_real(0.25).max_abs_diff_on(&operand, &idx) < 1e-12);
    }

    #[test]
    fn decoupled_rhat_is_shifted_c() {
        let p = JcmParams::new(1.0, 0.2, 0.0).unwrap();
        let f = FockSpace::new(8, 2).unwrap();
        let r = rhat_pair(&p, &f);
        let (_, c) = constants_of_motion(&p, &f);
        let shift = ComplexMatrix::identity(2 * f.dim()).scale_real(p.half_detuning().abs());
        assert!(r.r_plus.max_abs_diff(&(&c + &shift)) < 1e-14);
        assert!(r.r_minus.max_abs_diff(&(&c - &shift)) < 1e-14);
    }

    #[test]
    fn lifts_match_propagator_oracle() {
        let (p, f) = fig_params(10.0);
        let sol = HeisenbergSolution::new(&p, &f);
        let idx = f.interior_composite();
        for t in [1.0, 5.0, 20.0] {
            let u = evolution_spectral(&p, &f, t);
            let oracle_a = heisenberg_lift_with(&u, &f.creation(), f.layout(), Subsystem::A).unwrap();
            assert!(sol.a_dagger(t).max_abs_diff_on(&oracle_a, &idx) < 1e-8);
            let oracle_s = heisenberg_lift_with(&u, &pauli::sigma_plus(), f.layout(), Subsystem::B).unwrap();
            assert!(sol.sigma_plus(t).max_abs_diff_on(&oracle_s, &idx) < 1e-8);
            assert!(sol.sigma_plus_with(t, Pairing::Swapped).max_abs_diff_on(&oracle_s, &idx) > 1e-3);
        }
    }

    #[test]
    fn lifts_hold_below_threshold_detuning() {
        // |Δω/2| < g makes the N = 0 operand negative.
        let p = JcmParams::new(1.3, 0.9, 1.0).unwrap();
        let f = FockSpace::new(16, 4).unwrap();
        let sol = HeisenbergSolution::new(&p, &f);
        let u = evolution_spectral(&p, &f, 2.4);
        let oracle = heisenberg_lift_with(&u, &f.creation(), f.layout(), Subsystem::A).unwrap();
        assert!(sol.a_dagger(2.4).max_abs_diff_on(&oracle, &f.interior_composite()) < 1e-10);
    }

    #[test]
    fn degenerate_gap_uses_limit() {
        // Δω = 2g: operand vanishes on N = 0.
        let p = JcmParams::new(2.0, 0.0, 1.0).unwrap();
        let f = FockSpace::new(10, 3).unwrap();
        let sol = HeisenbergSolution::new(&p, &f);
        let u = evolution_spectral(&p, &f, 1.7);
        let oracle = heisenberg_lift_with(&u, &pauli::sigma_plus(), f.layout(), Subsystem::B).unwrap();
        let lifted = sol.sigma_plus(1.7);
        assert!(lifted.as_slice().iter().all(|z| z.is_finite()));
        assert!(lifted.max_abs_diff_on(&oracle, &f.interior_composite()) < 1e-10);
    }

    #[test]
    fn decoupled_b_and_d_vanish() {
        let p = JcmParams::new(0.9, 0.1, 0.0).unwrap();
        let f = FockSpace::new(6, 2).unwrap();
        let k = operator_coefficients(&p, &f, 4.0);
        assert_eq!(k.b.max_abs(), 0.0);
        assert!(k.d.max_abs_diff(&k.b.scale_real(-1.0)) == 0.0);
        let free = ComplexMatrix::identity(2 * f.dim()).scale(C64::from_polar(1.0, p.omega * 4.0));
        let sol = HeisenbergSolution::new(&p, &f);
        let a = sol.a_dagger(4.0);
        assert!(a.max_abs_diff(&k.a.matmul(&sol.a_dagger0)) < 1e-15);
        assert!(k.a.max_abs_diff(&free) < 1e-14);
    }

    #[test]
    fn eom_converges_at_second_order() {
        let (p, f) = fig_params(7.5);
        let sol = HeisenbergSolution::new(&p, &f);
        let h = 1e-3;
        let (a1, s1) = sol.eom_residual(3.0, h);
        let (a2, s2) = sol.eom_residual(3.0, h / 2.0);
        assert!((a1 / a2 - 4.0).abs() < 0.5, "{a1} {a2}");
        assert!((s1 / s2 - 4.0).abs() < 0.5, "{s1} {s2}");
    }

    #[test]
    fn eom_small_step_residual() {
        let (p, f) = fig_params(7.5);
        let sol = HeisenbergSolution::new(&p, &f);
        let (a, s) = sol.eom_residual(3.0, 1e-4);
        assert!(a < 1e-6 && s < 1e-6, "{a} {s}");
        let (oa, os) = sol.operator_eom_residual(3.0, 1e-4);
        assert!(oa < 1e-5 && os < 1e-5, "{oa} {os}");
    }

    #[test]
    fn decoupled_free_rotation_solves_field_equation() {
        let p = JcmParams::new(1.7, 0.4, 0.0).unwrap();
        let f = FockSpace::new(8, 2).unwrap();
        let (a, s) = eom_residual(&p, &f, 2.0, 1e-3);
        assert!(a < 1e-12 && s < 1e-12, "{a} {s}");
    }
}
