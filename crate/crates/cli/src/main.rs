mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use samelson::cohomology::Kind;
use samelson::hermflow::{FlowOptions, PerturbationMode};
use serde::Serialize;

use config::{ModelSpec, Setup, StructureSpec};
use report::{CliError, Format, Report};

/// Invariant cohomology of compact Lie groups and the pluriclosed flow.
#[derive(Debug, Parser)]
#[command(name = "samelson", version)]
struct Cli {
    /// Builtin model (su3, spin5, g2) or file:PATH to a JSON model.
    #[arg(long, global = true, default_value = "su3")]
    model: String,
    /// plus, minus, or a torus parameter a,b with b ≠ 0.
    #[arg(long, global = true)]
    structure: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "ascii")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
enum KindArg {
    Dolbeault,
    #[value(name = "bott_chern", alias = "bott-chern", alias = "bc")]
    BottChern,
    Aeppli,
    #[value(name = "de_rham", alias = "de-rham")]
    DeRham,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Dolbeault => Kind::Dolbeault,
            KindArg::BottChern => Kind::BottChern,
            KindArg::Aeppli => Kind::Aeppli,
            KindArg::DeRham => Kind::DeRham,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
enum Expect {
    Paper,
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
enum PerturbationArg {
    Pluriclosed,
    #[value(name = "lambda_preserving", alias = "lambda-preserving")]
    LambdaPreserving,
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
enum CheckArg {
    /// Torus pairing of the velocity at every step.
    Float,
    /// Also eliminate the velocity against an exact basis of im ∂ + im ∂̄ at every recorded state.
    Exact,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
enum Command {
    /// Jacobi, integrability, bicomplex identities, conjugation and duality checks.
    Verify {
        /// Also check the Hodge star on harmonic Bott-Chern forms (builtin structures).
        #[arg(long)]
        star: bool,
    },
    /// Full table of cohomology dimensions.
    Diamond {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Compare with the printed table and fail on mismatch.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Class of a homogeneous form: `omega`, compact notation like `2[14|1] - [23|1]`, or @FILE.
    Class {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Pluriclosed flow from ω_BF plus a random pluriclosed perturbation.
    Flow {
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of consecutive seeds to run.
        #[arg(long, default_value_t = 1)]
        runs: u64,
        #[arg(long, value_enum, default_value = "pluriclosed")]
        perturbation: PerturbationArg,
        /// How the Aeppli-triviality of the velocity is checked.
        #[arg(long, value_enum, default_value = "float")]
        mode: CheckArg,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, alias = "steps", default_value_t = 200_000)]
        max_steps: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Record every k-th state of the trajectory.
        #[arg(long, default_value_t = 1000)]
        every: usize,
        /// Write the recorded states as JSON lines.
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
    /// List builtin models.
    Models,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let inputs = serde_json::json!({
        "model": cli.model,
        "structure": cli.structure,
        "args": cli.command,
    });
    if let Command::Models = cli.command {
        return commands::models_cmd(inputs);
    }
    let spec: ModelSpec = cli.model.parse().map_err(CliError::Usage)?;
    let structure: Option<StructureSpec> = cli.structure.as_deref().map(str::parse).transpose().map_err(CliError::Usage)?;
    let setup = Setup::new(&spec, structure.as_ref())?;
    match &cli.command {
        Command::Verify { star } => commands::verify(&setup, *star, inputs),
        Command::Diamond { kind, expect } => commands::diamond_cmd(&setup, (*kind).into(), expect.is_some(), inputs),
        Command::Class { kind, form } => commands::class_cmd(&setup, (*kind).into(), form, inputs),
        Command::Flow { eps, seed, runs, perturbation, mode, dt, max_steps, tol, every, trajectory } => {
            if !(*dt > 0.0 && *tol > 0.0 && *eps >= 0.0) {
                return Err(CliError::Usage("dt and tol must be positive and eps nonnegative".into()));
            }
            let args = commands::FlowArgs {
                eps: *eps,
                seed: *seed,
                runs: *runs,
                perturbation: match perturbation {
                    PerturbationArg::Pluriclosed => PerturbationMode::Pluriclosed,
                    PerturbationArg::LambdaPreserving => PerturbationMode::LambdaPreserving,
                },
                exact_check: matches!(mode, CheckArg::Exact),
                trajectory: trajectory.clone(),
                options: FlowOptions { dt: *dt, max_steps: *max_steps, tol: *tol, every: *every },
            };
            commands::flow_cmd(&setup, &args, inputs)
        }
        Command::Models => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
            let rendered = report.render(cli.format);
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{rendered}"),
            }
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
