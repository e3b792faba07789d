//! The verification suites behind `subdyn verify`.

use std::fmt::Write as _;

use num_complex::Complex64 as C64;
use subdyn::bipartite::{
    heisenberg_lift_with, kraus_from_unitary, kraus_from_unitary_pure, reduced_density_with, subdynamic_operator,
    ProductState,
};
use subdyn::jcm::model::{bipartite_system, evolution_correlation_form_half_phase};
use subdyn::jcm::{
    atom_kraus, conservation_check, constants_of_motion, dressed_eigensystem, evolution_correlation_form,
    evolution_spectral, field_kraus, quasi_photon_annihilation, quasi_photon_creation, quasi_photon_number, rhat_pair,
    sigma_plus, subdynamic_sigma_z, AtomState, CoherentState, FockSpace, HeisenbergOperator, HeisenbergSolution,
    JcmParams, Pairing,
};
use subdyn::numerics::pauli::{self, DOWN, UP};
use subdyn::numerics::{expm_oracle, ComplexMatrix, Subsystem};

use crate::config::{Model, RunConfig};
use crate::curves::ratio_tag;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Kraus,
    Heisenberg,
    Conservation,
    All,
}

impl std::str::FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "algebra" => Ok(Self::Algebra),
            "kraus" => Ok(Self::Kraus),
            "heisenberg" => Ok(Self::Heisenberg),
            "conservation" => Ok(Self::Conservation),
            "all" => Ok(Self::All),
            other => Err(CliError::config("suite", format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Relation {
    AtMost(f64),
    AtLeast(f64),
    /// `|measured − target| ≤ tol`.
    Near {
        target: f64,
        tol: f64,
    },
    /// Reported, never failed.
    Info,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub relation: Relation,
}

impl Check {
    pub fn passed(&self) -> bool {
        match self.relation {
            Relation::AtMost(tol) => self.measured <= tol,
            Relation::AtLeast(min) => self.measured >= min,
            Relation::Near { target, tol } => (self.measured - target).abs() <= tol,
            Relation::Info => true,
        }
    }

    pub fn status(&self) -> &'static str {
        match self.relation {
            Relation::Info => "INFO",
            _ if self.passed() => "PASS",
            _ => "FAIL",
        }
    }

    fn line(&self) -> String {
        let (rel, thr) = match self.relation {
            Relation::AtMost(t) => ("<=", format!("{t:.3e}")),
            Relation::AtLeast(t) => (">=", format!("{t:.3e}")),
            Relation::Near { target, tol } => ("~", format!("{target}+-{tol}")),
            Relation::Info => ("info", "-".to_string()),
        };
        format!("{},{:.6e},{},{},{}", self.name, self.measured, rel, thr, self.status())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One line per check: `check,measured,relation,threshold,status`.
    pub fn render(&self) -> String {
        let mut out = String::from("check,measured,relation,threshold,status\n");
        for c in &self.checks {
            let _ = writeln!(out, "{}", c.line());
        }
        out
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    model: Model,
    report: Report,
}

impl Ctx<'_> {
    fn at_most(&mut self, name: String, measured: f64, default_tol: f64) {
        let tol = self.cfg.tolerance(&name, default_tol);
        self.report.checks.push(Check { name, measured, relation: Relation::AtMost(tol) });
    }

    fn at_least(&mut self, name: String, measured: f64, default_min: f64) {
        let min = self.cfg.tolerance(&name, default_min);
        self.report.checks.push(Check { name, measured, relation: Relation::AtLeast(min) });
    }

    fn near(&mut self, name: String, measured: f64, target: f64, default_tol: f64) {
        let tol = self.cfg.tolerance(&name, default_tol);
        self.report.checks.push(Check { name, measured, relation: Relation::Near { target, tol } });
    }

    fn info(&mut self, name: String, measured: f64) {
        self.report.checks.push(Check { name, measured, relation: Relation::Info });
    }

    fn per_ratio(&self) -> Vec<(String, JcmParams)> {
        self.cfg.detuning_ratios.iter().zip(&self.model.params).map(|(&r, &p)| (ratio_tag(r), p)).collect()
    }

    fn verify_times(&self) -> Vec<f64> {
        self.cfg.verify_grid().into_iter().map(|gt| self.cfg.time(gt)).collect()
    }

    fn full_times(&self) -> Vec<f64> {
        self.cfg.gt_grid().into_iter().map(|gt| self.cfg.time(gt)).collect()
    }
}

/// Runs one suite (or all of them). Config errors surface before any check runs.
pub fn run_verify(cfg: &RunConfig, suite: Suite) -> Result<Report> {
    let model = cfg.validate()?;
    let mut ctx = Ctx { cfg, model, report: Report::default() };
    if matches!(suite, Suite::Algebra | Suite::All) {
        algebra(&mut ctx)?;
    }
    if matches!(suite, Suite::Kraus | Suite::All) {
        kraus(&mut ctx)?;
    }
    if matches!(suite, Suite::Heisenberg | Suite::All) {
        heisenberg(&mut ctx)?;
    }
    if matches!(suite, Suite::Conservation | Suite::All) {
        conservation(&mut ctx)?;
    }
    Ok(ctx.report)
}

fn max_over<T>(items: impl IntoIterator<Item = T>, f: impl FnMut(T) -> f64) -> f64 {
    items.into_iter().map(f).fold(0.0, f64::max)
}

fn algebra(ctx: &mut Ctx<'_>) -> Result<()> {
    let f = ctx.model.space;
    let idx = f.interior_composite();
    let field_idx = f.interior();
    let times = ctx.verify_times();
    for (tag, p) in ctx.per_ratio() {
        let sys = bipartite_system(&p, &f);
        let h = sys.hamiltonian();
        let (n_op, c_op) = constants_of_motion(&p, &f);
        let split = &(&n_op.scale_real(p.omega) + &c_op) - &h;
        ctx.at_most(format!("algebra.hamiltonian_split.{tag}"), split.max_abs(), 1e-12);
        let comm =
            n_op.commutator(&c_op).max_abs().max(h.commutator(&n_op).max_abs()).max(h.commutator(&c_op).max_abs());
        ctx.at_most(format!("algebra.constants_commute.{tag}"), comm, 1e-12);

        let spec = dressed_eigensystem(&p, &f);
        let eig_res = max_over(&spec.states, |st| {
            let v = st.vector(&f);
            h.apply(&v).iter().zip(&v).map(|(hv, x)| (hv - x * st.energy).norm()).fold(0.0, f64::max)
        });
        ctx.at_most(format!("algebra.dressed_eigenvectors.{tag}"), eig_res, 1e-10);

        let oracle = sys.propagator()?;
        let mut spectral_vs_expm: f64 = 0.0;
        let mut corr_vs_spectral: f64 = 0.0;
        for &t in &times {
            let u = evolution_spectral(&p, &f, t);
            spectral_vs_expm = spectral_vs_expm.max(u.max_abs_diff_on(&oracle.at(t), &idx));
            corr_vs_spectral = corr_vs_spectral.max(evolution_correlation_form(&p, &f, t).max_abs_diff_on(&u, &idx));
        }
        ctx.at_most(format!("algebra.spectral_vs_expm.{tag}"), spectral_vs_expm, 1e-9);
        ctx.at_most(format!("algebra.correlation_form_vs_spectral.{tag}"), corr_vs_spectral, 1e-9);

        // Half-integer phase convention: off by a global e^{iωt/2}; visible only with ω ≠ 0.
        let probe_omega = if p.omega == 0.0 { 1.0 } else { p.omega };
        let probe = JcmParams::new(probe_omega, probe_omega - p.delta_omega(), p.g)?;
        let ground = f.layout().index(0, DOWN);
        let mut ground_offset: f64 = 0.0;
        let mut after_global: f64 = 0.0;
        for &t in &times {
            let exact = evolution_spectral(&probe, &f, t);
            let half = evolution_correlation_form_half_phase(&probe, &f, t);
            ground_offset = ground_offset.max((half[(ground, ground)] - exact[(ground, ground)]).norm());
            let rephased = half.scale(C64::from_polar(1.0, -0.5 * probe.omega * t));
            after_global = after_global.max(rephased.max_abs_diff_on(&exact, &idx));
        }
        ctx.info(format!("algebra.half_phase_ground_offset.{tag}"), ground_offset);
        ctx.info(format!("algebra.half_phase_after_global_phase.{tag}"), after_global);

        let mut broken: f64 = 0.0;
        let mut lifted: f64 = 0.0;
        let id_f = ComplexMatrix::identity(f.dim());
        let id_c = ComplexMatrix::identity(2 * f.dim());
        for &t in &times {
            let a = quasi_photon_annihilation(&p, &f, &ctx.model.atom, t).matrix;
            broken = broken.max(
                (&a.commutator(&a.adjoint()) - &id_f)
                    .max_abs_diff_on(&ComplexMatrix::zeros(f.dim(), f.dim()), &field_idx),
            );
            let u = evolution_spectral(&p, &f, t);
            let a_h = heisenberg_lift_with(&u, &f.annihilation(), f.layout(), Subsystem::A)?;
            lifted = lifted.max(a_h.commutator(&a_h.adjoint()).max_abs_diff_on(&id_c, &idx));
        }
        ctx.at_least(format!("algebra.broken_subsystem_commutator.{tag}"), broken, 0.01);
        ctx.at_most(format!("algebra.lifted_commutator.{tag}"), lifted, 1e-9);

        ctx.at_most(
            format!("algebra.pristine_t0.{tag}"),
            pristine_defect(&p, &f, &ctx.model.coherent, &ctx.model.atom)?,
            1e-13,
        );
    }
    let rabi = vacuum_rabi_defect(ctx.cfg.g.max(f64::MIN_POSITIVE), &ctx.cfg.verify_grid())?;
    ctx.at_most("algebra.vacuum_rabi_vs_brute_force".into(), rabi.0, 1e-9);
    ctx.at_most("algebra.vacuum_rabi_vs_cos".into(), rabi.1, 1e-9);
    Ok(())
}

/// Largest deviation of the `t = 0` subdynamic operators from their pristine forms.
pub fn pristine_defect(p: &JcmParams, f: &FockSpace, cs: &CoherentState, atom: &AtomState) -> Result<f64> {
    let idx = f.interior();
    let mut worst = quasi_photon_creation(p, f, atom, 0.0).matrix.max_abs_diff_on(&f.creation(), &idx);
    worst = worst.max(quasi_photon_number(p, f, atom, 0.0).matrix.max_abs_diff_on(&f.number(), &idx));
    let sp = sigma_plus(p, f, cs, 0.0)?.matrix;
    worst = worst.max(sp.max_abs_diff(&pauli::sigma_plus()));
    worst = worst.max(sp.adjoint().max_abs_diff(&pauli::sigma_minus()));
    worst = worst.max(subdynamic_sigma_z(p, f, cs, 0.0)?.matrix.max_abs_diff(&pauli::sigma_z()));
    Ok(worst)
}

/// Vacuum field, excited atom, resonance: `(max |closed − brute force|, max |closed − cos 2gt|)`
/// over the given `gt` values.
pub fn vacuum_rabi_defect(g: f64, gts: &[f64]) -> Result<(f64, f64)> {
    let p = JcmParams::new(1.0, 1.0, g)?;
    let f = FockSpace::new(1, 0)?;
    let cs = CoherentState::new(C64::new(0.0, 0.0));
    let h = bipartite_system(&p, &f).hamiltonian();
    let lifted_sz = subdyn::numerics::lift(&pauli::sigma_z(), f.layout(), Subsystem::B)?;
    let mut psi0 = vec![C64::new(0.0, 0.0); 4];
    psi0[f.layout().index(0, UP)] = C64::new(1.0, 0.0);
    let (mut vs_brute, mut vs_cos) = (0.0f64, 0.0f64);
    for &gt in gts {
        let t = gt / g;
        let closed = subdynamic_sigma_z(&p, &f, &cs, t)?.matrix[(UP, UP)].re;
        let psi = expm_oracle(&h, t)?.apply(&psi0);
        let brute = lifted_sz.sandwich(&psi, &psi).re;
        vs_brute = vs_brute.max((closed - brute).abs());
        vs_cos = vs_cos.max((closed - (2.0 * gt).cos()).abs());
    }
    Ok((vs_brute, vs_cos))
}

fn kraus(ctx: &mut Ctx<'_>) -> Result<()> {
    let f = ctx.model.space;
    let idx = f.interior();
    let times = ctx.verify_times();
    let full = ctx.full_times();
    let (cs, atom) = (ctx.model.coherent, ctx.model.atom.clone());
    let psi = cs.vector(&f);
    for (tag, p) in ctx.per_ratio() {
        let mut atom_complete: f64 = 0.0;
        for &t in &full {
            atom_complete = atom_complete.max(atom_kraus(&p, &f, &cs, t)?.completeness_residual);
        }
        ctx.at_most(format!("kraus.atom_completeness.{tag}"), atom_complete, 1e-8);

        let (mut field_complete, mut field_channel, mut atom_channel) = (0.0f64, 0.0f64, 0.0f64);
        let mut closed_vs_generic = [0.0f64; 4];
        let state = ProductState::new(cs.density(&f), atom.matrix().clone())?;
        for &t in &times {
            let fk = field_kraus(&p, &f, &atom, t);
            field_complete = field_complete.max(fk.kraus_set()?.completeness_residual_on(&idx));
            let u = evolution_spectral(&p, &f, t);
            let reduced_field = reduced_density_with(&u, &state, f.layout(), Subsystem::A)?;
            field_channel =
                field_channel.max(fk.apply(state.marginal(Subsystem::A)).max_abs_diff_on(&reduced_field, &idx));
            let reduced_atom = reduced_density_with(&u, &state, f.layout(), Subsystem::B)?;
            atom_channel =
                atom_channel.max(atom_kraus(&p, &f, &cs, t)?.apply(atom.matrix())?.max_abs_diff(&reduced_atom));

            let field_generic = kraus_from_unitary(&u, f.layout(), Subsystem::A, atom.matrix(), t)?;
            let atom_generic = kraus_from_unitary_pure(&u, f.layout(), Subsystem::B, &psi, t)?;
            let pairs = [
                (
                    quasi_photon_creation(&p, &f, &atom, t).matrix,
                    subdynamic_operator(&field_generic, &f.creation())?.matrix,
                    true,
                ),
                (
                    quasi_photon_number(&p, &f, &atom, t).matrix,
                    subdynamic_operator(&field_generic, &f.number())?.matrix,
                    true,
                ),
                (
                    sigma_plus(&p, &f, &cs, t)?.matrix,
                    subdynamic_operator(&atom_generic, &pauli::sigma_plus())?.matrix,
                    false,
                ),
                (
                    subdynamic_sigma_z(&p, &f, &cs, t)?.matrix,
                    subdynamic_operator(&atom_generic, &pauli::sigma_z())?.matrix,
                    false,
                ),
            ];
            for (slot, (closed, generic, on_field)) in closed_vs_generic.iter_mut().zip(pairs) {
                let d = if on_field { closed.max_abs_diff_on(&generic, &idx) } else { closed.max_abs_diff(&generic) };
                *slot = slot.max(d);
            }
        }
        ctx.at_most(format!("kraus.field_completeness.{tag}"), field_complete, 1e-10);
        ctx.at_most(format!("kraus.field_channel_vs_partial_trace.{tag}"), field_channel, 1e-10);
        ctx.at_most(format!("kraus.atom_channel_vs_partial_trace.{tag}"), atom_channel, 1e-10);
        for (name, d) in OPERATOR_NAMES.iter().zip(closed_vs_generic) {
            ctx.at_most(format!("kraus.closed_vs_generic.{name}.{tag}"), d, 1e-8);
        }
    }
    Ok(())
}

const OPERATOR_NAMES: [&str; 4] = ["a_dagger", "number", "sigma_plus", "sigma_z"];

fn heisenberg(ctx: &mut Ctx<'_>) -> Result<()> {
    let f = ctx.model.space;
    let idx = f.interior_composite();
    let field_idx = f.interior();
    let times = ctx.verify_times();
    let (cs, atom) = (ctx.model.coherent, ctx.model.atom.clone());
    let rho_field = cs.density(&f);
    let dim = 2 * f.dim();
    let id = ComplexMatrix::identity(dim);
    for (tag, p) in ctx.per_ratio() {
        let sol = HeisenbergSolution::new(&p, &f);
        let k0 = sol.coefficients(0.0, Pairing::Matched);
        let boundary = k0.a.max_abs_diff(&id).max(k0.c.max_abs_diff(&id)).max(k0.b.max_abs()).max(k0.d.max_abs());
        ctx.at_most(format!("heisenberg.boundary_t0.{tag}"), boundary, 1e-14);

        let r = rhat_pair(&p, &f);
        ctx.at_most(format!("heisenberg.rhat_commute.{tag}"), r.r_plus.commutator(&r.r_minus).max_abs(), 1e-11);
        let mut rhat_constant: f64 = 0.0;
        let (mut lift_a, mut lift_s, mut swapped) = (0.0f64, 0.0f64, 0.0f64);
        let mut three_path = [0.0f64; 4];
        for &t in &times {
            let u = evolution_spectral(&p, &f, t);
            for x in [&r.r_plus, &r.r_minus] {
                rhat_constant = rhat_constant.max(u.adjoint().matmul(x).matmul(&u).max_abs_diff_on(x, &idx));
            }
            let oracle_a = heisenberg_lift_with(&u, &f.creation(), f.layout(), Subsystem::A)?;
            let oracle_s = heisenberg_lift_with(&u, &pauli::sigma_plus(), f.layout(), Subsystem::B)?;
            lift_a = lift_a.max(sol.a_dagger(t).max_abs_diff_on(&oracle_a, &idx));
            lift_s = lift_s.max(sol.sigma_plus(t).max_abs_diff_on(&oracle_s, &idx));
            swapped = swapped.max(sol.sigma_plus_with(t, Pairing::Swapped).max_abs_diff_on(&oracle_s, &idx));

            let traced =
                |which| sol.subdynamic(which, if which_is_field(which) { atom.matrix() } else { &rho_field }, t);
            let diffs = [
                traced(HeisenbergOperator::ADagger)?
                    .matrix
                    .max_abs_diff_on(&quasi_photon_creation(&p, &f, &atom, t).matrix, &field_idx),
                traced(HeisenbergOperator::Number)?
                    .matrix
                    .max_abs_diff_on(&quasi_photon_number(&p, &f, &atom, t).matrix, &field_idx),
                traced(HeisenbergOperator::SigmaPlus)?.matrix.max_abs_diff(&sigma_plus(&p, &f, &cs, t)?.matrix),
                traced(HeisenbergOperator::SigmaZ)?.matrix.max_abs_diff(&subdynamic_sigma_z(&p, &f, &cs, t)?.matrix),
            ];
            for (slot, d) in three_path.iter_mut().zip(diffs) {
                *slot = slot.max(d);
            }
        }
        ctx.at_most(format!("heisenberg.rhat_constant.{tag}"), rhat_constant, 1e-9);
        ctx.at_most(format!("heisenberg.lift_a_dagger.{tag}"), lift_a, 1e-8);
        ctx.at_most(format!("heisenberg.lift_sigma_plus.{tag}"), lift_s, 1e-8);
        ctx.info(format!("heisenberg.pairing_matched.{tag}"), lift_s);
        ctx.info(format!("heisenberg.pairing_swapped.{tag}"), swapped);
        for (name, d) in OPERATOR_NAMES.iter().zip(three_path) {
            ctx.at_most(format!("heisenberg.trace_vs_closed.{name}.{tag}"), d, 1e-8);
        }

        if ctx.cfg.g > 0.0 {
            let t = ctx.cfg.time(3.0f64.min(ctx.cfg.gt_max));
            let h = 1e-4 / ctx.cfg.g;
            let (ra, rs) = sol.eom_residual(t, h);
            ctx.at_most(format!("heisenberg.eom_residual_a.{tag}"), ra, 1e-6);
            ctx.at_most(format!("heisenberg.eom_residual_sigma.{tag}"), rs, 1e-6);
            let (oa, os) = sol.operator_eom_residual(t, h);
            ctx.info(format!("heisenberg.eom_operator_residual_a.{tag}"), oa);
            ctx.info(format!("heisenberg.eom_operator_residual_sigma.{tag}"), os);
            let h0 = 1e-3 / ctx.cfg.g;
            let (a1, s1) = sol.eom_residual(t, h0);
            let (a2, s2) = sol.eom_residual(t, h0 / 2.0);
            ctx.near(format!("heisenberg.eom_order_a.{tag}"), a1 / a2, 4.0, 0.5);
            ctx.near(format!("heisenberg.eom_order_sigma.{tag}"), s1 / s2, 4.0, 0.5);
        }
    }
    Ok(())
}

fn which_is_field(which: HeisenbergOperator) -> bool {
    which.subsystem() == Subsystem::A
}

fn conservation(ctx: &mut Ctx<'_>) -> Result<()> {
    let f = ctx.model.space;
    let (cs, atom) = (ctx.model.coherent, ctx.model.atom.clone());
    let full = ctx.full_times();
    for (tag, p) in ctx.per_ratio() {
        let mut worst: f64 = 0.0;
        for &t in &full {
            worst = worst.max(conservation_check(&p, &f, &cs, &atom, t)?);
        }
        ctx.at_most(format!("conservation.excitation_balance.{tag}"), worst, 1e-6);
        ctx.info(format!("conservation.constant.{tag}"), cs.mean() + 0.5 * (atom.rho_uu() - atom.rho_dd()));
    }
    Ok(())
}
