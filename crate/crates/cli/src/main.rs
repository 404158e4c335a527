use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rspin_core::Error;
use serde_json::{json, Value};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "rspin",
    version,
    about = "Invariants of r-spin TQFTs from Frobenius data"
)]
struct Cli {
    /// Emit a JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Built-in algebra: trivial, clifford1, group_algebra_Z<n>, matrix_algebra_<n>.
    #[arg(long)]
    pub builtin: Option<String>,
    /// JSON algebra file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Orbifold {
    /// Potential, e.g. "x^5" or "x^2 + y^4".
    pub potential: String,
    /// Cyclic group, e.g. Z5. Defaults to the diagonal weight action.
    #[arg(long)]
    pub group: Option<String>,
    /// Comma-separated weights in sorted variable order.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Option<Vec<i64>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify an algebra and the relations of its graded center.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        r: Option<u32>,
    },
    /// Nakayama automorphisms γ and N_a.
    Nakayama {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        r: Option<u32>,
    },
    /// Torus invariants.
    Torus {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        r: Option<u32>,
        /// Torus such as "torus r=8 a=4 b=6".
        torus: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
        /// One row per divisor of r.
        #[arg(long)]
        all_divisors: bool,
    },
    /// Closed surface invariants.
    Surface {
        #[command(flatten)]
        source: Source,
        /// Surface such as "surface r=2 genus=2 holonomies=[(0,1),(1,1)]".
        surface: Option<String>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        genus: Option<u32>,
        /// Holonomies "(a1,b1),(a2,b2)"; all zero when omitted.
        #[arg(long)]
        holonomies: Option<String>,
        /// Evaluate every holonomy assignment of the given genus.
        #[arg(long)]
        all_holonomies: bool,
    },
    /// Jacobi algebra of a potential.
    LgJacobi { potential: String },
    /// Hom cohomology between the identity and a twisted identity.
    LgHom {
        #[command(flatten)]
        orbifold: Orbifold,
        /// Twist of the target; 0 gives End of the identity.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        g: i64,
        /// Shift the target by one.
        #[arg(long)]
        shift: bool,
    },
    /// Twisted sectors, group action and γ of the orbifold.
    LgOrbifold {
        #[command(flatten)]
        orbifold: Orbifold,
    },
    /// Circle spaces C_a and torus invariants of the orbifold.
    LgCircleSpaces {
        #[command(flatten)]
        orbifold: Orbifold,
    },
}

/// Result of a command: JSON inputs and results, a text rendering, and
/// whether every check passed.
pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub text: Vec<String>,
    pub ok: bool,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_)
        | Error::Unsupported(_)
        | Error::RMismatch { .. }
        | Error::Inadmissible(_)
        | Error::OrderMismatch(..)
        | Error::InfiniteQuotient(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, outcome) = match &cli.command {
        Command::Check { source, r } => ("check", commands::check(source, *r)),
        Command::Nakayama { source, r } => ("nakayama", commands::nakayama(source, *r)),
        Command::Torus {
            source,
            r,
            torus,
            a,
            b,
            all_divisors,
        } => (
            "torus",
            commands::torus(source, *r, torus.as_deref(), *a, *b, *all_divisors),
        ),
        Command::Surface {
            source,
            surface,
            r,
            genus,
            holonomies,
            all_holonomies,
        } => (
            "surface",
            commands::surface(
                source,
                surface.as_deref(),
                *r,
                *genus,
                holonomies.as_deref(),
                *all_holonomies,
            ),
        ),
        Command::LgJacobi { potential } => ("lg-jacobi", commands::lg_jacobi(potential)),
        Command::LgHom { orbifold, g, shift } => ("lg-hom", commands::lg_hom(orbifold, *g, *shift)),
        Command::LgOrbifold { orbifold } => ("lg-orbifold", commands::lg_orbifold(orbifold)),
        Command::LgCircleSpaces { orbifold } => {
            ("lg-circle-spaces", commands::lg_circle_spaces(orbifold))
        }
    };
    match outcome {
        Ok(out) => {
            if cli.json {
                let flags: serde_json::Map<String, Value> = rspin_core::io::convention_flags()
                    .into_iter()
                    .map(|(k, v)| (k.to_string(), Value::from(v)))
                    .collect();
                let report = json!({
                    "command": name,
                    "inputs": out.inputs,
                    "results": out.results,
                    "convention_flags": flags,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                );
            } else {
                for line in &out.text {
                    println!("{line}");
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
