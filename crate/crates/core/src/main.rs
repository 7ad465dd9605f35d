use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quasirandom::adversary::{maximize, Objective, SearchConfig};
use quasirandom::catalog::{self, FAMILIES};
use quasirandom::group::to_cayley_text;
use quasirandom::harmonic::DiscSampling;
use quasirandom::report::{json, verify, CheckKind, SearchReport, SpectralReport, VerifyOptions};
use quasirandom::spectra::{CharacterOptions, GroupAnalysis};
use quasirandom::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_BOUND_FAILED: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "quasirandom",
    version,
    about = "Character tables and mixing-inequality checks for finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group catalog.
    Groups {
        #[command(subcommand)]
        action: GroupsAction,
    },
    /// Conjugacy classes, character table and D.
    Analyze {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-8)]
        tolerance_orthogonality: f64,
    },
    /// Seeded random trials of the selected inequalities.
    Verify {
        #[arg(long)]
        group: String,
        /// Comma-separated: lemma, corollary, corollary-erratum, schur, theorem,
        /// step1, step2, step3, step4, step4-lemma, or all.
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// phase or uniform.
        #[arg(long, default_value = "phase", value_parser = parse_sampling)]
        sampling: DiscSampling,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-trial values.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Where failing inputs are written.
        #[arg(long, default_value = "quasirandom-repro.json")]
        repro: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tolerance_orthogonality: f64,
        /// Record wall-clock seconds per check.
        #[arg(long)]
        timings: bool,
    },
    /// Randomized local search for large values of an objective.
    Search {
        #[arg(long)]
        group: String,
        /// theorem, step1, lemma or corollary.
        #[arg(long, default_value = "theorem")]
        objective: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "phase", value_parser = parse_sampling)]
        sampling: DiscSampling,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes the multiplication table in the text Cayley format.
    ExportCayley {
        #[arg(long)]
        group: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum GroupsAction {
    List,
}

fn parse_sampling(s: &str) -> Result<DiscSampling, String> {
    match s {
        "phase" => Ok(DiscSampling::Phase),
        "uniform" => Ok(DiscSampling::Uniform),
        other => Err(format!(
            "unknown sampling {other:?} (expected phase or uniform)"
        )),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn analysis(group: &str, seed: u64, tolerance: f64) -> Result<GroupAnalysis, Error> {
    let opts = CharacterOptions {
        orthogonality_tol: tolerance,
        ..CharacterOptions::default()
    };
    GroupAnalysis::new(catalog::resolve(group)?, seed, &opts)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Groups {
            action: GroupsAction::List,
        } => {
            for f in FAMILIES {
                println!(
                    "{:<6} {:<44} {}",
                    format!("{}:", f.prefix),
                    f.description,
                    f.parameters
                );
            }
            Ok(0)
        }
        Command::Analyze {
            group,
            seed,
            out,
            tolerance_orthogonality,
        } => {
            let a = analysis(&group, seed, tolerance_orthogonality)?;
            emit(
                &SpectralReport::new(&a, seed, tolerance_orthogonality).to_json()?,
                out.as_deref(),
            )?;
            Ok(0)
        }
        Command::Verify {
            group,
            check,
            trials,
            seed,
            threads,
            sampling,
            out,
            csv,
            repro,
            tolerance_orthogonality,
            timings,
        } => {
            let checks = CheckKind::parse_list(&check)?;
            let a = analysis(&group, seed, tolerance_orthogonality)?;
            let opts = VerifyOptions {
                checks,
                trials,
                seed,
                threads,
                sampling,
                timings,
            };
            let result = verify(&a, &opts, tolerance_orthogonality)?;
            emit(&result.to_json()?, out.as_deref())?;
            if let Some(path) = csv {
                fs::write(path, result.to_csv())?;
            }
            for c in &result.report.checks {
                eprintln!(
                    "{:<18} {} max_observed={} bound={} min_margin={}",
                    c.name.name(),
                    if c.passed { "pass" } else { "FAIL" },
                    json::fmt_float(c.max_observed),
                    json::fmt_float(c.bound),
                    json::fmt_float(c.min_margin)
                );
            }
            if result.report.passed {
                Ok(0)
            } else {
                let dumps = result.reproducers(&a, sampling);
                fs::write(&repro, json::to_json(&dumps)?)?;
                eprintln!("failing inputs written to {}", repro.display());
                Ok(EXIT_BOUND_FAILED)
            }
        }
        Command::Search {
            group,
            objective,
            budget,
            restarts,
            seed,
            sampling,
            out,
        } => {
            let objective: Objective = objective.parse()?;
            let a = analysis(&group, seed, CharacterOptions::default().orthogonality_tol)?;
            let config = SearchConfig {
                restarts,
                sampling,
                ..SearchConfig::new(objective, budget, seed)
            };
            let result = maximize(&a, &config)?;
            let report = SearchReport::new(&a, &config, result);
            emit(&report.to_json()?, out.as_deref())?;
            eprintln!(
                "best={} bound={} margin={}",
                json::fmt_float(report.best_value),
                json::fmt_float(report.bound),
                json::fmt_float(report.margin)
            );
            Ok(if report.passed { 0 } else { EXIT_BOUND_FAILED })
        }
        Command::ExportCayley { group, out } => {
            let g = catalog::resolve(&group)?;
            emit(&to_cayley_text(&g), out.as_deref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
