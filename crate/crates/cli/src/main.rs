//! `fuchsia`: command-line access to PSL(2,ℝ) arithmetic, group actions,
//! fundamental-domain membership, verification and tessellation.
//!
//! Inputs are JSON documents on stdin, outputs one JSON document per line
//! on stdout. Exit codes: 0 success, 1 a reported failure (verification
//! failures, reduction step limit, empty tessellation), 2 bad input.

mod commands;
mod settings;

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Failure, ReduceDomain};
use settings::Settings;

#[derive(Parser, Debug)]
#[command(name = "fuchsia", version, about = "Hyperbolic geometry for Fuchsian groups")]
struct Cli {
    /// Membership tolerance (falls back to --config, then FUCHSIA_EPS).
    #[arg(long, global = true)]
    eps: Option<f64>,
    /// Seed for sampling commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON file with defaults for any of the flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Matrix -> {class, trace}
    Classify,
    /// Matrix -> NAK coordinates {x, y, theta}
    Nak,
    /// NAK coordinates -> matrix
    NakCompose,
    /// {g, z} -> g·z
    Apply,
    /// {g, v} -> 𝔇g(v)
    Tangent,
    /// Unit tangent vector -> Θ(v)
    Theta,
    /// Matrix -> Θ⁻¹(g)
    ThetaInv,
    /// {domain, z | g | v} -> {space, membership}
    Member,
    /// Point -> {gamma, reduced, steps}
    Reduce {
        /// strip_a:T, strip_b:T or modular
        #[arg(long)]
        domain: ReduceDomain,
        /// Step limit for the modular reduction [default: 100]
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Verification config -> report
    Verify,
    /// Tessellation job -> SVG or JSON
    Tessellate,
    /// Matrix -> {h, t, kind} with g = h⁻¹ s_t h
    StandardForm,
    /// {generators, radius} -> reduced words and elements
    OrbitBall,
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let settings = Settings::resolve(cli.eps, cli.seed, cli.format, cli.config.as_deref())?;
    let stdin = io::stdin().lock();
    let mut out = BufWriter::new(io::stdout().lock());
    if settings.format == Some(Format::Svg) && !matches!(cli.command, Command::Tessellate) {
        return Err(Failure::usage("--format svg only applies to tessellate"));
    }
    let code = match cli.command {
        Command::Classify => commands::classify(stdin, &mut out),
        Command::Nak => commands::nak(stdin, &mut out),
        Command::NakCompose => commands::nak_compose(stdin, &mut out),
        Command::Apply => commands::apply(stdin, &mut out),
        Command::Tangent => commands::tangent(stdin, &mut out),
        Command::Theta => commands::theta(stdin, &mut out),
        Command::ThetaInv => commands::theta_inv(stdin, &mut out),
        Command::Member => commands::member(stdin, &mut out, &settings),
        Command::Reduce { domain, max_steps } => {
            let max_steps = max_steps.or(settings.max_steps).unwrap_or(100);
            commands::reduce(stdin, &mut out, domain, max_steps, &settings)
        }
        Command::Verify => commands::verify(stdin, &mut out, &settings),
        Command::Tessellate => commands::tessellate(stdin, &mut out, &settings),
        Command::StandardForm => commands::standard_form(stdin, &mut out),
        Command::OrbitBall => commands::orbit_ball(stdin, &mut out),
    };
    out.flush().map_err(Failure::io)?;
    code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let mut out = io::stdout().lock();
            let _ = writeln!(out, "{}", f.to_json());
            eprintln!("fuchsia: {}", f.message);
            ExitCode::from(f.exit)
        }
    }
}
