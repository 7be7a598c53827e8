mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lcdt_core::{Error, DEFAULT_BUDGET};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "lcdt",
    version,
    about = "Double-Toeplitz LCD codes over finite fields"
)]
struct Cli {
    /// Cap on enumerated codewords or search trials.
    #[arg(long, global = true, env = "LCDT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Worker threads for enumeration and search (default: all cores).
    #[arg(long, global = true, env = "LCDT_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArg {
    /// Field as p^s/c0,...,cs, p^s or p.
    #[arg(long)]
    field: String,
}

#[derive(Args)]
struct CodeArgs {
    #[command(flatten)]
    field: FieldArg,
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a field: modulus, order, primitive element.
    Field(FieldArg),
    /// Dickson polynomial E_n: profile, coefficients, roots.
    Dickson {
        #[command(flatten)]
        code: CodeArgs,
        /// Only the root multiset.
        #[arg(long, conflicts_with = "coeffs")]
        roots: bool,
        /// Only the coefficients.
        #[arg(long)]
        coeffs: bool,
    },
    /// LCD verdict for C_n(a,b), spectral and direct.
    LcdCheck {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
    },
    /// Values of a that make C_n(a,b) non-LCD.
    ForbiddenSet {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value = "1")]
        b: String,
    },
    /// Eigenvalues of the tridiagonal matrix with multiplicities.
    Spectrum {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
    },
    /// Which existence corollaries apply, checked against the forbidden sets.
    Diagnose {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Minimum distance and hull of a code given by its generator.
    Distance(GeneratorArgs),
    /// Full weight distribution of a code given by its generator.
    Weights(GeneratorArgs),
    /// Concatenate C_N(a,b) over an extension with a trace isometry.
    Concat {
        #[arg(long)]
        outer_field: String,
        /// Subfield the isometry maps into (default: the prime field).
        #[arg(long)]
        base_field: Option<String>,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
        /// Isometry coefficients a_1;...;a_n in the outer field.
        #[arg(long)]
        coeffs: String,
        /// Refuse unless the outer code is LCD and certify the result.
        #[arg(long)]
        strict: bool,
        /// Skip the exhaustive distance computation.
        #[arg(long)]
        no_distance: bool,
    },
    /// Find a trace isometry with a prescribed inner distance.
    SearchIsometry {
        /// Extension field F_{q^s}.
        #[arg(long)]
        field: String,
        #[arg(long)]
        base_field: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-derive the worked examples and compare with the stated facts.
    Reproduce {
        /// One of 2.9, 2.10, 3.1, 3.2, 3.3 (default: all).
        #[arg(long)]
        example: Option<String>,
    },
}

#[derive(Args)]
struct GeneratorArgs {
    #[command(flatten)]
    field: FieldArg,
    /// JSON: {"rows","cols","entries"} or a list of rows of element strings.
    #[arg(long)]
    generator: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("warning: {e}");
        }
    }
    match commands::run(&cli.command, cli.budget) {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(&error_json(&e));
            ExitCode::from(if matches!(e, Error::Parse(_)) { 2 } else { 1 })
        }
    }
}

// A closed pipe downstream is not our failure.
fn emit(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn error_json(e: &Error) -> Value {
    let debug = format!("{e:?}");
    let kind = debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("Error");
    json!({"error": {"kind": kind, "message": e.to_string()}})
}
