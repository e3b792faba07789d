use num_complex::Complex64 as C64;
use proptest::prelude::*;

use subdyn::bipartite::{
    expectation_heisenberg, heisenberg_lift_with, kraus_from_unitary, reduced_density_with, subdynamic_operator,
    BipartiteSystem, ProductState,
};
use subdyn::jcm::{correlation_factors, evolution_spectral, FockSpace, JcmParams};
use subdyn::numerics::{expm_oracle, partial_trace, tensor, ComplexMatrix, Subsystem, TensorLayout};

fn complex() -> impl Strategy<Value = C64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| C64::new(re, im))
}

fn matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), dim * dim).prop_map(move |v| ComplexMatrix::from_vec(dim, dim, v).unwrap())
}

fn hermitian(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(dim).prop_map(|m| (&m + &m.adjoint()).scale_real(0.5))
}

/// `X X† / Tr(X X†)`.
fn density(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(dim).prop_map(|x| {
        let p = x.matmul(&x.adjoint());
        let tr = p.trace().re;
        p.scale_real(1.0 / tr)
    })
}

fn system() -> impl Strategy<Value = (BipartiteSystem, ProductState)> {
    (2usize..4, 2usize..4).prop_flat_map(|(da, db)| {
        (hermitian(da), hermitian(db), hermitian(da * db), density(da), density(db)).prop_map(
            |(ha, hb, hab, ra, rb)| (BipartiteSystem::new(ha, hb, hab).unwrap(), ProductState::new(ra, rb).unwrap()),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_is_bilinear(a in matrix(2), b in matrix(3), c in matrix(3), s in complex()) {
        let lhs = tensor(&a, &(&b + &c.scale(s)));
        let rhs = &tensor(&a, &b) + &tensor(&a, &c).scale(s);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-13);
    }

    #[test]
    fn tensor_mixed_product(a in matrix(2), b in matrix(3), c in matrix(2), d in matrix(3)) {
        let lhs = tensor(&a, &b).matmul(&tensor(&c, &d));
        let rhs = tensor(&a.matmul(&c), &b.matmul(&d));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn partial_trace_of_product(a in matrix(3), b in matrix(2)) {
        let layout = TensorLayout::new(3, 2);
        let ab = tensor(&a, &b);
        let over_b = partial_trace(&ab, layout, Subsystem::B).unwrap();
        prop_assert!(over_b.max_abs_diff(&a.scale(b.trace())) < 1e-13);
        let over_a = partial_trace(&ab, layout, Subsystem::A).unwrap();
        prop_assert!(over_a.max_abs_diff(&b.scale(a.trace())) < 1e-13);
    }

    #[test]
    fn expm_group_property(h in hermitian(4), s in -3.0..3.0f64, t in -3.0..3.0f64) {
        let lhs = expm_oracle(&h, s).unwrap().matmul(&expm_oracle(&h, t).unwrap());
        prop_assert!(lhs.max_abs_diff(&expm_oracle(&h, s + t).unwrap()) < 1e-11);
        let u = expm_oracle(&h, t).unwrap();
        prop_assert!(u.adjoint().matmul(&u).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn kraus_channel_is_dual_to_subdynamic_operator(
        (sys, state) in system(),
        t in 0.0..4.0f64,
        seed in 0u64..1000,
    ) {
        let layout = sys.layout();
        let u = sys.evolve_unitary(t).unwrap();
        let kraus = kraus_from_unitary(&u, layout, Subsystem::A, &state.rho_b, t).unwrap();
        prop_assert!(kraus.completeness_residual < 1e-10);
        // Schrödinger side: the channel reproduces the reduced density matrix.
        let reduced = reduced_density_with(&u, &state, layout, Subsystem::A).unwrap();
        prop_assert!(kraus.apply(&state.rho_a).unwrap().max_abs_diff(&reduced) < 1e-10);
        // Heisenberg side: Tr[Φ(ρ) O] = Tr[ρ Φ*(O)] = Tr[U†(O⊗I)U ρ_A⊗ρ_B].
        let op = {
            let da = layout.dim_a;
            ComplexMatrix::from_fn(da, da, |i, j| C64::new(((i + 2 * j) as u64 ^ seed) as f64 % 3.0, (i as f64) - (j as f64)))
        };
        let sub = subdynamic_operator(&kraus, &op).unwrap();
        let via_channel = reduced.matmul(&op).trace();
        let via_sub = sub.expectation(&state.rho_a);
        let lifted = heisenberg_lift_with(&u, &op, layout, Subsystem::A).unwrap();
        let via_lift = expectation_heisenberg(&lifted, &state).unwrap();
        prop_assert!((via_channel - via_sub).norm() < 1e-10);
        prop_assert!((via_sub - via_lift).norm() < 1e-10);
    }

    #[test]
    fn correlation_factors_are_unimodular(
        ratio in -20.0..20.0f64,
        g in 0.0..2.0f64,
        t in 0.0..30.0f64,
    ) {
        let p = JcmParams::from_detuning_ratio(g, ratio, 0.7).unwrap();
        let f = FockSpace::new(30, 5).unwrap();
        let cf = correlation_factors(&p, &f, t);
        for n in -1..=(f.n_max() as isize + 1) {
            prop_assert!((cf.v(n).norm_sqr() + cf.w(n).powi(2) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn spectral_propagator_is_unitary(ratio in -10.0..10.0f64, t in 0.0..25.0f64) {
        let p = JcmParams::from_detuning_ratio(1.0, ratio, 0.0).unwrap();
        let f = FockSpace::new(12, 3).unwrap();
        let u = evolution_spectral(&p, &f, t);
        prop_assert!(u.adjoint().matmul(&u).max_abs_diff(&ComplexMatrix::identity(2 * f.dim())) < 1e-12);
    }
}
