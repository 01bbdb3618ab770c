//! Command-line front end for the crossed-product and series calculator.
//!
//! Every invocation is a self-contained session: the coefficient level,
//! prime list, evaluation mode, and series budget are fixed by flags, the
//! requested computation runs to completion, and the process exits.  Exit
//! code 0 means success, 1 means the computation itself failed (division by
//! zero, level mismatch, a failed check, ...), and 2 means the invocation
//! was malformed.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mncalc_core::crossed::{center_basis, dim_over_center, CrossedElement};
use mncalc_core::expr::{eval_str, to_structured, Mode, Session, Value};
use mncalc_core::numfield::PrimeBasis;
use mncalc_core::verify;
use mncalc_core::Error;

#[derive(Parser)]
#[command(name = "mncalc", version, about, max_term_width = 100)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Evaluation mode: crossed-l, crossed-r, or series.
    #[arg(long, global = true, default_value = "crossed-l")]
    mode: String,

    /// Number of adjoined square roots and generators.
    #[arg(long, global = true, default_value_t = 2)]
    level: u32,

    /// Comma-separated primes to adjoin (defaults to the first primes).
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,

    /// Iteration budget for series inversion.
    #[arg(long, global = true, default_value_t = 8)]
    budget: u32,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format: text or structured (JSON).
    #[arg(long, global = true, default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression and print the normal form.
    Eval { expr: String },
    /// Evaluate an expression and print its inverse.
    Inv { expr: String },
    /// Print the multiplicative commutator a^-1 b^-1 a b.
    Comm { a: String, b: String },
    /// Report whether an expression is central.
    Central { expr: String },
    /// Print the regular norm of an expression.
    Norm { expr: String },
    /// Print the dimension over the center at the session level.
    Dim,
    /// Print a basis of the center.
    CenterBasis,
    /// List the generators an expression fails to commute with.
    Witness { expr: String },
    /// Run the randomized check suite.
    Check {
        /// Run only the named check.
        #[arg(long)]
        only: Option<String>,
    },
}

enum Format {
    Text,
    Structured,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.opts.format.as_str() {
        "text" => Format::Text,
        "structured" => Format::Structured,
        other => {
            eprintln!("error: unknown format '{other}' (expected text or structured)");
            return ExitCode::from(2);
        }
    };
    match run(&cli.opts, &cli.command, &format) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Error::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn session(opts: &GlobalOpts) -> Result<Session, Error> {
    let mode = Mode::parse(&opts.mode)?;
    let basis = match &opts.primes {
        Some(p) => {
            if p.len() != opts.level as usize {
                return Err(Error::Config(format!(
                    "--primes lists {} primes but --level is {}",
                    p.len(),
                    opts.level
                )));
            }
            PrimeBasis::new(p.clone())?
        }
        None => PrimeBasis::first_primes(opts.level),
    };
    Session::new(mode, basis, opts.budget, opts.seed)
}

/// Evaluates a subcommand; `Ok(false)` means a check reported a failure.
fn run(opts: &GlobalOpts, command: &Command, format: &Format) -> Result<bool, Error> {
    match command {
        Command::Eval { expr } => {
            let session = session(opts)?;
            print_value(&eval_str(expr, &session)?, &session, format);
        }
        Command::Inv { expr } => {
            let session = session(opts)?;
            print_value(&eval_str(&format!("({expr})^-1"), &session)?, &session, format);
        }
        Command::Comm { a, b } => {
            let session = session(opts)?;
            let combined = format!("({a})^-1 ({b})^-1 ({a}) ({b})");
            print_value(&eval_str(&combined, &session)?, &session, format);
        }
        Command::Central { expr } => {
            let session = session(opts)?;
            let central = crossed_operand(expr, &session)?.is_central()?;
            match format {
                Format::Text => println!("{central}"),
                Format::Structured => {
                    println!("{}", serde_json::json!({ "central": central }));
                }
            }
        }
        Command::Norm { expr } => {
            let session = session(opts)?;
            let a = crossed_operand(expr, &session)?;
            let norm = CrossedElement::scalar(a.basis(), a.with_s(), a.regular_norm());
            print_value(&Value::Crossed(norm), &session, format);
        }
        Command::Dim => {
            let dim = dim_over_center(opts.level);
            match format {
                Format::Text => println!("{dim}"),
                Format::Structured => {
                    println!("{}", serde_json::json!({ "level": opts.level, "dim": dim }));
                }
            }
        }
        Command::CenterBasis => {
            let session = session(opts)?;
            if session.mode == Mode::Series {
                return Err(Error::Config(
                    "center-basis requires a crossed mode".into(),
                ));
            }
            let basis_elems = center_basis(&session.basis, session.mode == Mode::CrossedR);
            match format {
                Format::Text => {
                    for e in &basis_elems {
                        println!("{e}");
                    }
                }
                Format::Structured => {
                    let rendered: Vec<serde_json::Value> = basis_elems
                        .iter()
                        .map(|e| to_structured(&Value::Crossed(e.clone()), &session))
                        .collect();
                    println!("{}", serde_json::Value::Array(rendered));
                }
            }
        }
        Command::Witness { expr } => {
            let session = session(opts)?;
            let witnesses = crossed_operand(expr, &session)?.noncommuting_witnesses()?;
            match format {
                Format::Text => {
                    if witnesses.is_empty() {
                        println!("none");
                    } else {
                        let parts: Vec<String> =
                            witnesses.iter().map(|i| format!("x{i}")).collect();
                        println!("{}", parts.join(" "));
                    }
                }
                Format::Structured => {
                    println!("{}", serde_json::json!({ "witnesses": witnesses }));
                }
            }
        }
        Command::Check { only } => {
            let cfg = verify::Config {
                seed: opts.seed,
                level: opts.level,
                primes: opts.primes.clone(),
                ..verify::Config::default()
            };
            let reports = verify::run_all(&cfg, only.as_deref())?;
            let all_passed = reports.iter().all(|r| r.passed());
            match format {
                Format::Text => {
                    for r in &reports {
                        if r.passed() {
                            println!("PASS {} ({} samples)", r.id, r.samples);
                        } else {
                            let witness = r.witness.as_deref().unwrap_or("no witness");
                            println!("FAIL {}: {}", r.id, witness);
                        }
                    }
                }
                Format::Structured => {
                    println!("{}", serde_json::to_string_pretty(&reports).unwrap());
                }
            }
            return Ok(all_passed);
        }
    }
    Ok(true)
}

/// Evaluates an expression that must land in a crossed-product mode.
fn crossed_operand(expr: &str, session: &Session) -> Result<CrossedElement, Error> {
    match eval_str(expr, session)? {
        Value::Crossed(c) => Ok(c),
        Value::Series { .. } => Err(Error::Config(
            "this subcommand requires a crossed mode".into(),
        )),
    }
}

fn print_value(value: &Value, session: &Session, format: &Format) {
    match format {
        Format::Text => {
            println!("{value}");
            if let Value::Series {
                exact_below: Some(frontier),
                ..
            } = value
            {
                println!("exact below: {frontier}");
            }
        }
        Format::Structured => {
            println!("{}", to_structured(value, session));
        }
    }
}
