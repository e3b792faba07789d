use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use subdyn_cli::curves::{fig1a, fig1b};
use subdyn_cli::verify::{run_verify, Suite};
use subdyn_cli::{AtomInit, CliError, Result, RunConfig};

#[derive(Parser)]
#[command(name = "subdyn", version, about = "Subdynamics of the Jaynes–Cummings model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// |⟨ã(t)⟩| and ⟨Ñ(t)⟩ vs gt as CSV.
    Fig1a(Common),
    /// Offset, eigenvalues and inversion of σ̃_z(t) vs gt as CSV.
    Fig1b(Common),
    /// Run verification checks and print a report.
    Verify {
        #[command(flatten)]
        common: Common,
        /// algebra, kraus, heisenberg, conservation or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Args)]
struct Common {
    /// Flat `key = value` file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Δω/g; repeat for several curves.
    #[arg(long = "detuning-ratio")]
    detuning_ratio: Vec<f64>,
    #[arg(long)]
    g: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long = "mean-photons")]
    mean_photons: Option<f64>,
    #[arg(long = "atom-up", conflicts_with_all = ["atom_down", "atom_rho"])]
    atom_up: bool,
    #[arg(long = "atom-down", conflicts_with = "atom_rho")]
    atom_down: bool,
    /// `ρ↑↑,re(ρ↑↓),im(ρ↑↓)`.
    #[arg(long = "atom-rho", allow_hyphen_values = true)]
    atom_rho: Option<String>,
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long = "gt-max")]
    gt_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Photon cutoff, or `auto`.
    #[arg(long = "n-max")]
    n_max: Option<String>,
    #[arg(long)]
    guard: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        if !self.detuning_ratio.is_empty() {
            cfg.detuning_ratios = self.detuning_ratio.clone();
        }
        if let Some(v) = self.g {
            cfg.g = v;
        }
        if let Some(v) = self.omega {
            cfg.omega = v;
        }
        if let Some(v) = self.mean_photons {
            cfg.mean_photons = v;
        }
        if self.atom_up {
            cfg.atom = AtomInit::Up;
        }
        if self.atom_down {
            cfg.atom = AtomInit::Down;
        }
        if let Some(rho) = &self.atom_rho {
            cfg.atom = AtomInit::parse(rho)?;
        }
        if let Some(v) = self.phi {
            cfg.phi = v;
        }
        if let Some(v) = self.gt_max {
            cfg.gt_max = v;
        }
        if let Some(v) = self.steps {
            cfg.steps = v;
        }
        if let Some(v) = &self.n_max {
            cfg.set("n_max", v)?;
        }
        if let Some(v) = self.guard {
            cfg.guard = v;
        }
        Ok(cfg)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e)),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Fig1a(common) => {
            common.emit(&fig1a(&common.config()?)?.to_csv())?;
            Ok(0)
        }
        Command::Fig1b(common) => {
            common.emit(&fig1b(&common.config()?)?.to_csv())?;
            Ok(0)
        }
        Command::Verify { common, suite } => {
            let suite: Suite = suite.parse()?;
            let report = run_verify(&common.config()?, suite)?;
            common.emit(&report.render())?;
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
