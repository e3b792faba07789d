//! Run configuration: defaults, a flat `key = value` file format, and validation.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_complex::Complex64 as C64;
use subdyn::jcm::{AtomState, CoherentState, FockSpace, JcmParams};

use crate::error::{CliError, Result};

/// Initial atom state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AtomInit {
    Up,
    Down,
    /// `ρ↑↑` and `⟨↑|ρ|↓⟩`.
    Rho {
        uu: f64,
        ud: C64,
    },
}

impl AtomInit {
    pub fn state(&self) -> Result<AtomState> {
        match *self {
            Self::Up => Ok(AtomState::up()),
            Self::Down => Ok(AtomState::down()),
            Self::Rho { uu, ud } => AtomState::mixed(uu, ud).map_err(|e| CliError::config("atom", e.to_string())),
        }
    }

    /// `up`, `down` or `rho_uu,re(rho_ud),im(rho_ud)`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "up" => Ok(Self::Up),
            "down" => Ok(Self::Down),
            other => {
                let parts: Vec<&str> = other.split(',').map(str::trim).collect();
                let nums =
                    parts.iter().map(|p| p.parse::<f64>()).collect::<std::result::Result<Vec<_>, _>>().map_err(
                        |_| CliError::config("atom", format!("expected up, down or ρ↑↑,re,im; got {other:?}")),
                    )?;
                match nums.as_slice() {
                    [uu] => Ok(Self::Rho { uu: *uu, ud: C64::new(0.0, 0.0) }),
                    [uu, re] => Ok(Self::Rho { uu: *uu, ud: C64::new(*re, 0.0) }),
                    [uu, re, im] => Ok(Self::Rho { uu: *uu, ud: C64::new(*re, *im) }),
                    _ => Err(CliError::config("atom", format!("expected 1 to 3 numbers, got {}", nums.len()))),
                }
            }
        }
    }
}

impl fmt::Display for AtomInit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Up => write!(f, "up"),
            Self::Down => write!(f, "down"),
            Self::Rho { uu, ud } => write!(f, "{uu},{},{}", ud.re, ud.im),
        }
    }
}

/// Everything a run needs. `g` fixes the energy unit and the time axis is `gt`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub detuning_ratios: Vec<f64>,
    pub g: f64,
    /// Field frequency; figure quantities do not depend on it.
    pub omega: f64,
    pub mean_photons: f64,
    pub atom: AtomInit,
    pub phi: f64,
    pub gt_max: f64,
    pub steps: usize,
    pub n_max: Option<usize>,
    pub guard: usize,
    /// Number of time samples used by the heavier verification checks.
    pub verify_samples: usize,
    /// Per-check tolerance overrides, keyed by check name.
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            detuning_ratios: vec![7.5, 10.0, 20.0],
            g: 1.0,
            omega: 0.0,
            mean_photons: 10.0,
            atom: AtomInit::Up,
            phi: 0.0,
            gt_max: 25.0,
            steps: 2000,
            n_max: None,
            guard: subdyn::jcm::DEFAULT_GUARD,
            verify_samples: 26,
            tolerances: BTreeMap::new(),
        }
    }
}

impl RunConfig {
    /// Reads a flat `key = value` file on top of the defaults.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        let mut cfg = Self::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::config("config", format!("line {}: expected key = value", lineno + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Sets one field by its config-file key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "detuning_ratio" | "detuning_ratios" => {
                self.detuning_ratios = value.split(',').map(|v| parse_f64(key, v)).collect::<Result<Vec<_>>>()?;
            }
            "g" => self.g = parse_f64(key, value)?,
            "omega" => self.omega = parse_f64(key, value)?,
            "mean_photons" => self.mean_photons = parse_f64(key, value)?,
            "atom" => self.atom = AtomInit::parse(value)?,
            "phi" => self.phi = parse_f64(key, value)?,
            "gt_max" => self.gt_max = parse_f64(key, value)?,
            "steps" => self.steps = parse_usize(key, value)?,
            "n_max" => {
                self.n_max = if value == "auto" { None } else { Some(parse_usize(key, value)?) };
            }
            "guard" => self.guard = parse_usize(key, value)?,
            "verify_samples" => self.verify_samples = parse_usize(key, value)?,
            _ => match key.strip_prefix("tol.") {
                Some(name) => {
                    self.tolerances.insert(name.to_string(), parse_f64(key, value)?);
                }
                None => return Err(CliError::config(key, "unknown key".to_string())),
            },
        }
        Ok(())
    }

    /// Checks ranges and builds the model objects, failing on the first bad field.
    pub fn validate(&self) -> Result<Model> {
        if self.detuning_ratios.is_empty() {
            return Err(CliError::config("detuning_ratio", "at least one ratio is required".into()));
        }
        if let Some(r) = self.detuning_ratios.iter().find(|r| !r.is_finite()) {
            return Err(CliError::config("detuning_ratio", format!("must be finite, got {r}")));
        }
        if !(self.g.is_finite() && self.g >= 0.0) {
            return Err(CliError::config("g", format!("must be finite and ≥ 0, got {}", self.g)));
        }
        if !self.omega.is_finite() {
            return Err(CliError::config("omega", format!("must be finite, got {}", self.omega)));
        }
        if !(self.gt_max.is_finite() && self.gt_max > 0.0) {
            return Err(CliError::config("gt_max", format!("must be > 0, got {}", self.gt_max)));
        }
        if self.steps < 2 {
            return Err(CliError::config("steps", format!("must be ≥ 2, got {}", self.steps)));
        }
        if self.verify_samples < 2 {
            return Err(CliError::config("verify_samples", format!("must be ≥ 2, got {}", self.verify_samples)));
        }
        let coherent = CoherentState::from_mean(self.mean_photons, self.phi)
            .map_err(|e| CliError::config("mean_photons", e.to_string()))?;
        let space = match self.n_max {
            None => FockSpace::for_mean_photons(self.mean_photons, self.guard),
            Some(n) => FockSpace::new(n, self.guard),
        }
        .map_err(|e| CliError::config("n_max", e.to_string()))?;
        coherent.check_fits(&space).map_err(|e| CliError::config("n_max", e.to_string()))?;
        let atom = self.atom.state()?;
        let params = self
            .detuning_ratios
            .iter()
            .map(|&r| JcmParams::from_detuning_ratio(self.g, r, self.omega))
            .collect::<subdyn::Result<Vec<_>>>()
            .map_err(|e| CliError::config("g", e.to_string()))?;
        Ok(Model { params, space, coherent, atom })
    }

    /// `gt` values `0, Δ, …, gt_max` with `steps` points.
    pub fn gt_grid(&self) -> Vec<f64> {
        linspace(self.gt_max, self.steps)
    }

    /// Coarser grid for the matrix-heavy checks.
    pub fn verify_grid(&self) -> Vec<f64> {
        linspace(self.gt_max, self.verify_samples)
    }

    /// Physical time for a `gt` value (`gt` itself when `g = 0`).
    pub fn time(&self, gt: f64) -> f64 {
        if self.g > 0.0 {
            gt / self.g
        } else {
            gt
        }
    }

    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }
}

/// Validated model objects shared by every command.
#[derive(Debug, Clone)]
pub struct Model {
    /// One parameter set per detuning ratio, in config order.
    pub params: Vec<JcmParams>,
    pub space: FockSpace,
    pub coherent: CoherentState,
    pub atom: AtomState,
}

fn linspace(end: f64, points: usize) -> Vec<f64> {
    let step = end / (points - 1) as f64;
    (0..points).map(|i| if i + 1 == points { end } else { i as f64 * step }).collect()
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value.trim().parse().map_err(|_| CliError::config(key, format!("not a number: {value:?}")))
}

fn parse_usize(key: &str, value: &str) -> Result<usize> {
    value.trim().parse().map_err(|_| CliError::config(key, format!("not a non-negative integer: {value:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_the_figure() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.detuning_ratios, vec![7.5, 10.0, 20.0]);
        let model = cfg.validate().unwrap();
        assert_eq!(model.space.n_max(), 42);
        let grid = cfg.gt_grid();
        assert_eq!(grid.len(), 2000);
        assert_eq!(grid[0], 0.0);
        assert_eq!(*grid.last().unwrap(), 25.0);
        assert!(grid.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn file_values_and_comments() {
        let mut cfg = RunConfig::default();
        cfg.apply_text("# run\ndetuning_ratio = 2, 4\nmean_photons=3 # small\natom = 0.5,0.1,0\nn_max = auto\ntol.kraus.x = 1e-3\n")
            .unwrap();
        assert_eq!(cfg.detuning_ratios, vec![2.0, 4.0]);
        assert_eq!(cfg.mean_photons, 3.0);
        assert_eq!(cfg.atom, AtomInit::Rho { uu: 0.5, ud: C64::new(0.1, 0.0) });
        assert_eq!(cfg.tolerance("kraus.x", 1.0), 1e-3);
    }

    #[test]
    fn bad_fields_are_named() {
        let mut cfg = RunConfig::default();
        let err = cfg.set("stepz", "4").unwrap_err();
        assert!(err.to_string().contains("stepz"));
        cfg.steps = 1;
        assert!(cfg.validate().unwrap_err().to_string().contains("steps"));
        let cfg = RunConfig { n_max: Some(15), ..RunConfig::default() };
        let err = cfg.validate().unwrap_err().to_string();
        assert!(err.contains("n_max"), "{err}");
        let cfg = RunConfig { atom: AtomInit::Rho { uu: 0.5, ud: C64::new(0.9, 0.0) }, ..RunConfig::default() };
        assert!(cfg.validate().unwrap_err().to_string().contains("atom"));
    }
}
