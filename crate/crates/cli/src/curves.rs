//! Figure curves: quasi-photon expectations and the σ̃_z eigenvalue pair vs `gt`.

use num_complex::Complex64 as C64;
use subdyn::bipartite::BipartiteSystem;
use subdyn::jcm::model::bipartite_system;
use subdyn::jcm::{quasi_photon_annihilation, quasi_photon_number, spin_eigen_summary, subdynamic_sigma_z};
use subdyn::numerics::pauli::{DOWN, UP};
use subdyn::numerics::{hermitian_eig, tensor_vec, ComplexMatrix, HermitianEig};

use crate::config::RunConfig;
use crate::error::Result;

/// A header plus rows of numbers; the first column is `gt`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    /// Comma-separated, 17 significant digits, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

/// Column suffix for a detuning ratio, e.g. `r7.5`.
pub fn ratio_tag(ratio: f64) -> String {
    format!("r{ratio}")
}

/// `|⟨α|ã(t)|α⟩|` and `⟨α|Ñ(t)|α⟩` per ratio.
pub fn fig1a(cfg: &RunConfig) -> Result<Table> {
    let model = cfg.validate()?;
    let psi = model.coherent.vector(&model.space);
    let mut header = vec!["gt".to_string()];
    for &r in &cfg.detuning_ratios {
        header.push(format!("abs_a_tilde_{}", ratio_tag(r)));
        header.push(format!("n_tilde_{}", ratio_tag(r)));
    }
    let rows = cfg
        .gt_grid()
        .into_iter()
        .map(|gt| {
            let t = cfg.time(gt);
            let mut row = vec![gt];
            for p in &model.params {
                let a = quasi_photon_annihilation(p, &model.space, &model.atom, t).expectation_pure(&psi);
                let n = quasi_photon_number(p, &model.space, &model.atom, t).expectation_pure(&psi);
                row.push(a.norm());
                row.push(n.re);
            }
            row
        })
        .collect();
    Ok(Table { header, rows })
}

/// Offset, eigenvalue pair and inversion of `σ̃_z(t)` per ratio.
pub fn fig1b(cfg: &RunConfig) -> Result<Table> {
    let model = cfg.validate()?;
    let mut header = vec!["gt".to_string()];
    for &r in &cfg.detuning_ratios {
        for col in ["offset", "eig_plus", "eig_minus", "inversion"] {
            header.push(format!("{col}_{}", ratio_tag(r)));
        }
    }
    let mut rows = Vec::with_capacity(cfg.steps);
    for gt in cfg.gt_grid() {
        let t = cfg.time(gt);
        let mut row = vec![gt];
        for p in &model.params {
            let sz = subdynamic_sigma_z(p, &model.space, &model.coherent, t)?;
            let s = spin_eigen_summary(&sz);
            row.extend([s.offset, s.eig_plus, s.eig_minus, sz.expectation(model.atom.matrix()).re]);
        }
        rows.push(row);
    }
    Ok(Table { header, rows })
}

/// Composite-space evolution of state vectors through one diagonalisation of `H`.
#[derive(Debug, Clone)]
pub struct BruteForce {
    eig: HermitianEig,
}

impl BruteForce {
    pub fn new(sys: &BipartiteSystem) -> Result<Self> {
        Ok(Self { eig: hermitian_eig(&sys.hamiltonian())? })
    }

    /// Coordinates of `psi` in the eigenbasis, to be reused across times.
    pub fn project(&self, psi: &[C64]) -> Vec<C64> {
        self.eig.vectors.adjoint().apply(psi)
    }

    /// `U(t)ψ` from the projected coordinates.
    pub fn evolve(&self, coords: &[C64], t: f64) -> Vec<C64> {
        let phased: Vec<C64> =
            coords.iter().zip(&self.eig.values).map(|(c, &l)| c * C64::from_polar(1.0, -l * t)).collect();
        self.eig.vectors.apply(&phased)
    }
}

/// `fig1a` columns from the full composite evolution: `ρ_R(t) = Tr_atom[U ρ U†]`.
pub fn fig1a_brute_force(cfg: &RunConfig) -> Result<Table> {
    let model = cfg.validate()?;
    let dim = model.space.dim();
    let field = model.coherent.vector(&model.space);
    let atom_eig = hermitian_eig(model.atom.matrix())?;
    let mut header = vec!["gt".to_string()];
    for &r in &cfg.detuning_ratios {
        header.push(format!("abs_a_tilde_{}", ratio_tag(r)));
        header.push(format!("n_tilde_{}", ratio_tag(r)));
    }
    let mut columns = Vec::new();
    for p in &model.params {
        let bf = BruteForce::new(&bipartite_system(p, &model.space))?;
        let branches: Vec<(f64, Vec<C64>)> = atom_eig
            .values
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(k, &w)| (w, bf.project(&tensor_vec(&field, &atom_eig.vectors.column(k)))))
            .collect();
        let mut col = Vec::new();
        for gt in cfg.gt_grid() {
            let t = cfg.time(gt);
            let (mut a, mut n) = (C64::new(0.0, 0.0), 0.0);
            for (w, coords) in &branches {
                let psi = bf.evolve(coords, t);
                for m in 0..dim {
                    for s in [UP, DOWN] {
                        let amp = psi[2 * m + s];
                        n += w * m as f64 * amp.norm_sqr();
                        if m + 1 < dim {
                            // ⟨a⟩ = Σ √(m+1) ψ*(m,s) ψ(m+1,s)
                            a += w * ((m + 1) as f64).sqrt() * amp.conj() * psi[2 * (m + 1) + s];
                        }
                    }
                }
            }
            col.push((a.norm(), n));
        }
        columns.push(col);
    }
    let rows = cfg
        .gt_grid()
        .into_iter()
        .enumerate()
        .map(|(i, gt)| {
            let mut row = vec![gt];
            for col in &columns {
                row.extend([col[i].0, col[i].1]);
            }
            row
        })
        .collect();
    Ok(Table { header, rows })
}

/// `fig1b` columns from the full composite evolution, with `W_N = ⟨N|U|α⟩`
/// read off `U(|α⟩ ⊗ |s⟩)`.
pub fn fig1b_brute_force(cfg: &RunConfig) -> Result<Table> {
    let model = cfg.validate()?;
    let dim = model.space.dim();
    let field = model.coherent.vector(&model.space);
    let mut header = vec!["gt".to_string()];
    for &r in &cfg.detuning_ratios {
        for col in ["offset", "eig_plus", "eig_minus", "inversion"] {
            header.push(format!("{col}_{}", ratio_tag(r)));
        }
    }
    let sz = subdyn::numerics::pauli::sigma_z();
    let mut columns = Vec::new();
    for p in &model.params {
        let bf = BruteForce::new(&bipartite_system(p, &model.space))?;
        let basis: Vec<Vec<C64>> = [UP, DOWN]
            .iter()
            .map(|&s| {
                let mut e = vec![C64::new(0.0, 0.0); 2];
                e[s] = C64::new(1.0, 0.0);
                bf.project(&tensor_vec(&field, &e))
            })
            .collect();
        let mut col = Vec::new();
        for gt in cfg.gt_grid() {
            let t = cfg.time(gt);
            let images: Vec<Vec<C64>> = basis.iter().map(|c| bf.evolve(c, t)).collect();
            let mut op = ComplexMatrix::zeros(2, 2);
            for m in 0..dim {
                let w = ComplexMatrix::from_fn(2, 2, |s_out, s_in| images[s_in][2 * m + s_out]);
                op += &w.adjoint().matmul(&sz).matmul(&w);
            }
            let sub = subdyn::bipartite::SubdynamicOperator {
                matrix: op,
                time: t,
                provenance: subdyn::bipartite::Provenance::GenericKraus,
            };
            let s = spin_eigen_summary(&sub);
            col.push([s.offset, s.eig_plus, s.eig_minus, sub.expectation(model.atom.matrix()).re]);
        }
        columns.push(col);
    }
    let rows = cfg
        .gt_grid()
        .into_iter()
        .enumerate()
        .map(|(i, gt)| {
            let mut row = vec![gt];
            for col in &columns {
                row.extend(col[i]);
            }
            row
        })
        .collect();
    Ok(Table { header, rows })
}

/// Largest entrywise difference between two tables of equal shape.
pub fn max_table_diff(a: &Table, b: &Table) -> f64 {
    a.rows.iter().zip(&b.rows).flat_map(|(x, y)| x.iter().zip(y).map(|(u, v)| (u - v).abs())).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        RunConfig {
            steps: 41,
            gt_max: 10.0,
            mean_photons: 4.0,
            detuning_ratios: vec![0.0, 10.0],
            ..RunConfig::default()
        }
    }

    #[test]
    fn first_rows_are_pristine() {
        let cfg = RunConfig { steps: 3, ..RunConfig::default() };
        let a = fig1a(&cfg).unwrap();
        for (i, v) in a.rows[0].iter().enumerate().skip(1) {
            let expected = if i % 2 == 1 { 10f64.sqrt() } else { 10.0 };
            assert!((v - expected).abs() < 1e-12, "{i} {v}");
        }
        let b = fig1b(&cfg).unwrap();
        for chunk in b.rows[0][1..].chunks(4) {
            assert!(chunk[0].abs() < 1e-15);
            assert!((chunk[1] - 1.0).abs() < 1e-15);
            assert!((chunk[2] + 1.0).abs() < 1e-15);
            assert!((chunk[3] - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_forms_match_brute_force() {
        let cfg = small();
        assert!(max_table_diff(&fig1a(&cfg).unwrap(), &fig1a_brute_force(&cfg).unwrap()) < 1e-8);
        assert!(max_table_diff(&fig1b(&cfg).unwrap(), &fig1b_brute_force(&cfg).unwrap()) < 1e-8);
    }

    #[test]
    fn mixed_atom_matches_brute_force() {
        let cfg = RunConfig {
            atom: crate::config::AtomInit::Rho { uu: 0.6, ud: C64::new(0.2, -0.1) },
            omega: 0.8,
            ..small()
        };
        assert!(max_table_diff(&fig1a(&cfg).unwrap(), &fig1a_brute_force(&cfg).unwrap()) < 1e-8);
        assert!(max_table_diff(&fig1b(&cfg).unwrap(), &fig1b_brute_force(&cfg).unwrap()) < 1e-8);
    }

    #[test]
    fn decoupled_columns_stay_constant() {
        let cfg = RunConfig { g: 0.0, steps: 11, ..RunConfig::default() };
        let a = fig1a(&cfg).unwrap();
        for row in &a.rows {
            assert!((row[1] - 10f64.sqrt()).abs() < 1e-12);
            assert!((row[2] - 10.0).abs() < 1e-12);
        }
    }

    #[test]
    fn csv_is_plain_and_full_precision() {
        let t = Table { header: vec!["gt".into(), "x".into()], rows: vec![vec![0.0, 1.0 / 3.0]] };
        assert_eq!(t.to_csv(), "gt,x\n0.0000000000000000e0,3.3333333333333331e-1\n");
    }
}
