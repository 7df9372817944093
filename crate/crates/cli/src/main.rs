//! `adiabat` command-line harness.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use adiabat::{CheckRecord, Status};
use clap::{Parser, Subcommand};

use config::{Config, ConfigError};
use output::Artifacts;

#[derive(Parser)]
#[command(
    name = "adiabat",
    version,
    about = "Adiabatic accessibility and entropy-bound checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Scenario file (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for report.txt, summary.toml and CSV files.
    #[arg(long, global = true, default_value = "adiabat-out")]
    out: PathBuf,
    /// Seed for randomized harnesses; overrides the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print the full report.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Check the order axioms on a model.
    Axioms,
    /// Canonical entropy and affine uniqueness.
    Entropy,
    /// S₋, S₊ and ΔS over a state list.
    Band,
    /// Structural properties of the entropy bounds.
    Prop1,
    /// Comparability conditions and their consistency.
    Thm4,
    /// Maximum-work bounds and the GB sandwich.
    Workbounds,
    /// Forward sector of a toy state.
    ToySector,
    /// Finite-rate engine between the two blocks.
    CarnotGap,
    /// Fourier or Cattaneo heat flow between the two blocks.
    Cattaneo,
    /// Absolute temperature from an empirical scale.
    Planck,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Axioms => "axioms",
            Command::Entropy => "entropy",
            Command::Band => "band",
            Command::Prop1 => "prop1",
            Command::Thm4 => "thm4",
            Command::Workbounds => "workbounds",
            Command::ToySector => "toy-sector",
            Command::CarnotGap => "carnot-gap",
            Command::Cattaneo => "cattaneo",
            Command::Planck => "planck",
        }
    }

    fn run(self, cfg: &Config) -> anyhow::Result<Artifacts> {
        match self {
            Command::Axioms => commands::axioms(cfg),
            Command::Entropy => commands::entropy(cfg),
            Command::Band => commands::band(cfg),
            Command::Prop1 => commands::prop1(cfg),
            Command::Thm4 => commands::thm4(cfg),
            Command::Workbounds => commands::workbounds(cfg),
            Command::ToySector => commands::toy_sector(cfg),
            Command::CarnotGap => commands::carnot_gap(cfg),
            Command::Cattaneo => commands::cattaneo(cfg),
            Command::Planck => commands::planck(cfg),
        }
    }
}

fn config_failure(e: &anyhow::Error) -> ExitCode {
    eprintln!("adiabat: configuration error: {e:#}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match &cli.config {
        Some(p) => match Config::load(p) {
            Ok(c) => c,
            Err(e) => return config_failure(&e),
        },
        None => Config::default(),
    };
    if cli.seed.is_some() {
        cfg.seed = cli.seed;
    }

    let artifacts = match cli.command.run(&cfg) {
        Ok(a) => a,
        Err(e) if e.downcast_ref::<ConfigError>().is_some() => return config_failure(&e),
        Err(e) => {
            let mut a = Artifacts::default();
            a.report
                .push(CheckRecord::new("run", Status::Fail, 0, Some(format!("{e:#}"))));
            a
        }
    };

    let name = cli.command.name();
    let summary = match output::summary_toml(name, cfg.scenario.as_deref(), cfg.seed, &artifacts) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("adiabat: {e:#}");
            return ExitCode::FAILURE;
        }
    };
    if let Err(e) = output::write_all(&cli.out, &summary, &artifacts) {
        eprintln!("adiabat: {e:#}");
        return ExitCode::FAILURE;
    }
    if cli.verbose {
        print!("{}", artifacts.report);
    }
    let failed = artifacts.report.failures().count();
    let passed = artifacts.passed();
    println!(
        "{name}: {} ({} checks, {failed} failed) -> {}",
        if passed { "PASS" } else { "FAIL" },
        artifacts.report.records.len(),
        cli.out.display()
    );
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
