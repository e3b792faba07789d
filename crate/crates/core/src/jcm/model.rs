//! Hamiltonian, constants of motion, dressed eigensystem, correlation factors
//! and the evolution operator of the Jaynes-Cummings model on a truncated
//! Fock space.
//!
//! Each doublet `{|n,↑⟩, |n+1,↓⟩}` carries `N = n + 1` excitations and is
//! invariant under `H`. Within it `H = ω(n+1) + C`, with `C` a 2×2 block of
//! eigenvalues `±λ_n`, so the dressed energies are `ω(n+1) ± λ_n`. The lone
//! state `|0,↓⟩` has energy `Δω/2`.

use num_complex::Complex64 as C64;

use super::{FockSpace, JcmParams};
use crate::bipartite::BipartiteSystem;
use crate::numerics::pauli::{self, DOWN, UP};
use crate::numerics::{re, tensor, ComplexMatrix, I};

/// `H = ω(a†a + ½) ⊗ I + (ω₀/2) I ⊗ σ_z + g(a ⊗ σ₊ + a† ⊗ σ₋)`.
pub fn build_hamiltonian(p: &JcmParams, f: &FockSpace) -> ComplexMatrix {
    let sys = bipartite_system(p, f);
    sys.hamiltonian()
}

/// The Hamiltonian split into field, atom and interaction pieces.
pub fn bipartite_system(p: &JcmParams, f: &FockSpace) -> BipartiteSystem {
    let id_r = ComplexMatrix::identity(f.dim());
    let h_field = (&f.number() + &id_r.scale_real(0.5)).scale_real(p.omega);
    let h_atom = pauli::sigma_z().scale_real(0.5 * p.omega0);
    let h_int = (&tensor(&f.annihilation(), &pauli::sigma_plus()) + &tensor(&f.creation(), &pauli::sigma_minus()))
        .scale_real(p.g);
    BipartiteSystem::new(h_field, h_atom, h_int).expect("JCM pieces are Hermitian by construction")
}

/// The two commuting constants of motion `(N, C)`:
/// `N = a†a ⊗ I + I ⊗ σ₊σ₋` and `C = −½Δω I ⊗ σ_z + g(a ⊗ σ₊ + a† ⊗ σ₋)`.
pub fn constants_of_motion(p: &JcmParams, f: &FockSpace) -> (ComplexMatrix, ComplexMatrix) {
    let id_r = ComplexMatrix::identity(f.dim());
    let id_a = ComplexMatrix::identity(2);
    let n = &tensor(&f.number(), &id_a) + &tensor(&id_r, &pauli::sigma_plus().matmul(&pauli::sigma_minus()));
    let coupling = &tensor(&f.annihilation(), &pauli::sigma_plus()) + &tensor(&f.creation(), &pauli::sigma_minus());
    let c = &tensor(&id_r, &pauli::sigma_z()).scale_real(-p.half_detuning()) + &coupling.scale_real(p.g);
    (n, c)
}

/// Dressed state `|φ(n,s)⟩` with branch `s ∈ {1, 2}`:
/// `|φ(n,1)⟩ = cos θ_n |n+1,↓⟩ + sin θ_n |n,↑⟩`,
/// `|φ(n,2)⟩ = −sin θ_n |n+1,↓⟩ + cos θ_n |n,↑⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedState {
    pub n: usize,
    pub s: u8,
    pub energy: f64,
    pub theta: f64,
    pub lambda: f64,
}

impl DressedState {
    /// Components on `(|n+1,↓⟩, |n,↑⟩)`.
    pub fn amplitudes(&self) -> (f64, f64) {
        let (sin, cos) = self.theta.sin_cos();
        match self.s {
            1 => (cos, sin),
            _ => (-sin, cos),
        }
    }

    /// Composite state vector in the radiation ⊗ atom layout.
    pub fn vector(&self, f: &FockSpace) -> Vec<C64> {
        let layout = f.layout();
        let mut v = vec![C64::new(0.0, 0.0); layout.dim()];
        let (down, up) = self.amplitudes();
        v[layout.index(self.n + 1, DOWN)] = re(down);
        v[layout.index(self.n, UP)] = re(up);
        v
    }

    /// Eigenvalue of the constant of motion `C` on this state, `±λ_n`.
    pub fn c_value(&self) -> f64 {
        if self.s == 1 {
            self.lambda
        } else {
            -self.lambda
        }
    }
}

/// Exact eigensystem of the truncated Hamiltonian.
#[derive(Debug, Clone)]
pub struct DressedSpectrum {
    /// `Ω(0,↓) = Δω/2`, eigenvalue of `|0,↓⟩`.
    pub ground_energy: f64,
    /// Both branches for every complete doublet `n ≤ n_max − 1`, ordered by `(n, s)`.
    pub states: Vec<DressedState>,
    /// Energy of `|n_max,↑⟩`, whose partner `|n_max+1,↓⟩` was cut away.
    pub edge_energy: f64,
}

/// Dressed eigensystem with `Ω(n,s) = ω(n+1) + (3 − 2s)λ_n`.
pub fn dressed_eigensystem(p: &JcmParams, f: &FockSpace) -> DressedSpectrum {
    let mut states = Vec::with_capacity(2 * f.n_max());
    for n in 0..f.n_max() {
        let lambda = p.lambda(n);
        let theta = p.theta(n);
        let centre = p.omega * (n as f64 + 1.0);
        states.push(DressedState { n, s: 1, energy: centre + lambda, theta, lambda });
        states.push(DressedState { n, s: 2, energy: centre - lambda, theta, lambda });
    }
    DressedSpectrum {
        ground_energy: p.half_detuning(),
        states,
        edge_energy: p.omega * (f.n_max() as f64 + 0.5) + 0.5 * p.omega0,
    }
}

/// Photon-atom correlation factors
/// `v_n(t) = e^{−iλ_n t} sin²θ_n + e^{iλ_n t} cos²θ_n`, `w_n(t) = sin 2θ_n sin λ_n t`.
///
/// Stored for `n ∈ [0, n_max + 1]`; the extra level keeps edge terms that
/// reference `n + 1` defined. Index `−1` follows the convention `θ_{−1} = 0`,
/// `λ_{−1} = Δω/2`, i.e. `v_{−1} = e^{iΔωt/2}` and `w_{−1} = 0`.
#[derive(Debug, Clone)]
pub struct CorrelationFactors {
    pub t: f64,
    v: Vec<C64>,
    w: Vec<f64>,
    v_minus1: C64,
}

impl CorrelationFactors {
    pub fn new(p: &JcmParams, levels: usize, t: f64) -> Self {
        let (v, w) = (0..levels)
            .map(|n| {
                let lambda = p.lambda(n);
                let (sin2, cos2) = p.mixing(n);
                let (s, c) = (lambda * t).sin_cos();
                (C64::new(c, s * cos2), sin2 * s)
            })
            .unzip();
        Self { t, v, w, v_minus1: C64::from_polar(1.0, p.half_detuning() * t) }
    }

    /// `v_n(t)` for `n ≥ −1`.
    #[inline]
    pub fn v(&self, n: isize) -> C64 {
        if n < 0 {
            self.v_minus1
        } else {
            self.v[n as usize]
        }
    }

    /// `w_n(t)` for `n ≥ −1`.
    #[inline]
    pub fn w(&self, n: isize) -> f64 {
        if n < 0 {
            0.0
        } else {
            self.w[n as usize]
        }
    }

    /// Number of stored non-negative levels.
    pub fn levels(&self) -> usize {
        self.v.len()
    }
}

/// Correlation factors for `n ∈ [0, n_max + 1]` at time `t`.
pub fn correlation_factors(p: &JcmParams, f: &FockSpace, t: f64) -> CorrelationFactors {
    CorrelationFactors::new(p, f.n_max() + 2, t)
}

/// `U(t) = |0,↓⟩e^{−itΔω/2}⟨0,↓| + Σ_{n,s} |φ(n,s)⟩ e^{−itΩ(n,s)} ⟨φ(n,s)|`,
/// completed by the uncoupled edge state `|n_max,↑⟩` so that the result is the
/// exact propagator of the truncated Hamiltonian.
pub fn evolution_spectral(p: &JcmParams, f: &FockSpace, t: f64) -> ComplexMatrix {
    let spec = dressed_eigensystem(p, f);
    let layout = f.layout();
    let mut u = ComplexMatrix::zeros(layout.dim(), layout.dim());
    let ground = layout.index(0, DOWN);
    u[(ground, ground)] = C64::from_polar(1.0, -spec.ground_energy * t);
    let edge = layout.index(f.n_max(), UP);
    u[(edge, edge)] = C64::from_polar(1.0, -spec.edge_energy * t);
    for st in &spec.states {
        let phase = C64::from_polar(1.0, -st.energy * t);
        let (down, up) = st.amplitudes();
        let idx = [layout.index(st.n + 1, DOWN), layout.index(st.n, UP)];
        let amp = [down, up];
        for a in 0..2 {
            for b in 0..2 {
                u[(idx[a], idx[b])] += phase * amp[a] * amp[b];
            }
        }
    }
    u
}

/// `U(t)` assembled from the correlation factors:
///
/// ```text
/// ⟨n,↑|U|n,↑⟩     = e^{−iωt(n+1)} v_n
/// ⟨n,↓|U|n,↓⟩     = e^{−iωtn} v*_{n−1}          (n ≥ 1)
/// ⟨n+1,↓|U|n,↑⟩   = ⟨n,↑|U|n+1,↓⟩ = −i e^{−iωt(n+1)} w_n
/// ⟨0,↓|U|0,↓⟩     = e^{−itΔω/2}
/// ```
///
/// The ground element is set from its exact eigenvalue. The edge state
/// `|n_max,↑⟩` keeps `v_{n_max}` of the untruncated model and so differs from
/// [`evolution_spectral`] there.
pub fn evolution_correlation_form(p: &JcmParams, f: &FockSpace, t: f64) -> ComplexMatrix {
    let cf = correlation_factors(p, f, t);
    let layout = f.layout();
    let mut u = ComplexMatrix::zeros(layout.dim(), layout.dim());
    let ground = layout.index(0, DOWN);
    u[(ground, ground)] = C64::from_polar(1.0, -p.half_detuning() * t);
    for n in 0..=f.n_max() {
        let ni = n as isize;
        let up_phase = C64::from_polar(1.0, -p.omega * t * (n as f64 + 1.0));
        u[(layout.index(n, UP), layout.index(n, UP))] = up_phase * cf.v(ni);
        if n >= 1 {
            let down_phase = C64::from_polar(1.0, -p.omega * t * n as f64);
            u[(layout.index(n, DOWN), layout.index(n, DOWN))] = down_phase * cf.v(ni - 1).conj();
        }
        if n < f.n_max() {
            let off = -I * up_phase * cf.w(ni);
            u[(layout.index(n + 1, DOWN), layout.index(n, UP))] = off;
            u[(layout.index(n, UP), layout.index(n + 1, DOWN))] = off;
        }
    }
    u
}

/// The correlation form with the phases `e^{−iωt(n±½)}` in place of
/// `e^{−iωt(n+1)}` / `e^{−iωtn}` and the ground element taken from the `n = 0`
/// term of the sum. Kept only to quantify how it differs from the exact
/// propagator (a global phase `e^{iωt/2}`).
pub fn evolution_correlation_form_half_phase(p: &JcmParams, f: &FockSpace, t: f64) -> ComplexMatrix {
    let cf = correlation_factors(p, f, t);
    let layout = f.layout();
    let mut u = ComplexMatrix::zeros(layout.dim(), layout.dim());
    for n in 0..=f.n_max() {
        let ni = n as isize;
        let up_phase = C64::from_polar(1.0, -p.omega * t * (n as f64 + 0.5));
        let down_phase = C64::from_polar(1.0, -p.omega * t * (n as f64 - 0.5));
        u[(layout.index(n, UP), layout.index(n, UP))] = up_phase * cf.v(ni);
        u[(layout.index(n, DOWN), layout.index(n, DOWN))] = down_phase * cf.v(ni - 1).conj();
        if n < f.n_max() {
            let off = -I * up_phase * cf.w(ni);
            u[(layout.index(n + 1, DOWN), layout.index(n, UP))] = off;
            u[(layout.index(n, UP), layout.index(n + 1, DOWN))] = off;
        }
    }
    u
}
