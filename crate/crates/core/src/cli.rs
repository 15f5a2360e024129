//! Command-line front end.
//!
//! [`run`] does all the work and returns what should be printed along with
//! the exit code, so the binary is a thin wrapper and tests can drive the
//! CLI in-process.
//!
//! Exit codes: 0 success, 2 usage error (including inputs above the sweep
//! bound for scanning commands), 3 domain error, 4 failed internal
//! consistency check or property violation.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::euclid::{euclid_trace, symmetric_trace, EuclidTrace, SweepLimit};
use crate::identities::{enumerate_identities, nest_chain, FormIdentity, NestChain};
use crate::two_squares::{all_primitive_representations, brillhart, TwoSquares};
use crate::verify::{self, VerifyConfig, VerifyReport};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "symeuclid", version, about = "Palindromic Euclidean traces, two-squares decompositions and remainder identities")]
struct Args {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the Euclidean algorithm on (n, a) and classify the quotients.
    Trace {
        #[arg(value_parser = parse_int)]
        n: u128,
        #[arg(value_parser = parse_int)]
        a: u128,
    },
    /// Write n as a sum of two coprime squares.
    TwoSquares {
        #[arg(value_parser = parse_int)]
        n: u128,
        /// Use this square root of -1 modulo n.
        #[arg(long, value_parser = parse_int, conflicts_with = "all")]
        a: Option<u128>,
        /// List every primitive representation (the default without --a).
        #[arg(long)]
        all: bool,
    },
    /// List the quadratic forms in the remainders that are multiples of n.
    Identities {
        #[arg(value_parser = parse_int)]
        n: u128,
        #[arg(value_parser = parse_int)]
        a: u128,
        /// Drop identities with a zero factor or a multiplier of 0 or n.
        #[arg(long)]
        nontrivial: bool,
    },
    /// Peel the palindromic continued fraction of n/a one layer at a time.
    Nest {
        #[arg(value_parser = parse_int)]
        n: u128,
        #[arg(value_parser = parse_int)]
        a: u128,
    },
    /// Check every property exhaustively up to --max-n and on random sequences.
    Verify {
        #[arg(long, value_parser = parse_int, default_value = "10000")]
        max_n: u128,
        /// Bound for the quadratic all-pairs palindrome check.
        #[arg(long, value_parser = parse_int, default_value = "3000")]
        perron_max_n: u128,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
}

fn parse_int(s: &str) -> Result<u128, String> {
    let digits = s.trim();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("`{s}` is not a non-negative decimal integer"));
    }
    digits
        .parse()
        .map_err(|_| format!("`{s}` does not fit in 128 bits"))
}

/// One self-contained record per invocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Vec<u128>,
    pub payload: Option<Payload>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Error { code: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Trace(EuclidTrace),
    TwoSquares { representations: Vec<TwoSquares> },
    Identities { identities: Vec<IdentityLine> },
    Nest(NestChain),
    Verify(VerifyReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityLine {
    pub identity: FormIdentity,
    pub degenerate: bool,
    pub text: String,
}

/// Everything the binary should emit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn error_code(e: &Error) -> (&'static str, i32) {
    match e {
        Error::IndexOutOfRange(_) => ("index_out_of_range", EXIT_DOMAIN),
        Error::NonPositiveTerm { .. } => ("non_positive_term", EXIT_DOMAIN),
        Error::NotReduced { .. } => ("not_reduced", EXIT_DOMAIN),
        Error::InvalidPair { .. } => ("invalid_pair", EXIT_DOMAIN),
        Error::NotCoprime { .. } => ("not_coprime", EXIT_DOMAIN),
        Error::NotSymmetric { .. } => ("not_symmetric", EXIT_DOMAIN),
        Error::NotSqrtMinusOne { .. } => ("not_sqrt_minus_one", EXIT_DOMAIN),
        Error::ConventionNotApplicable(_) => ("convention_not_applicable", EXIT_DOMAIN),
        Error::Overflow(_) => ("overflow", EXIT_DOMAIN),
        Error::SweepBoundExceeded { .. } => ("sweep_bound_exceeded", EXIT_USAGE),
        Error::Inconsistency(_) => ("inconsistency", EXIT_INTERNAL),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, limit: SweepLimit) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(args) => args,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            return Outcome { stdout, stderr, code };
        }
    };
    let format = args.format;
    let (command, inputs, result) = execute(args.command, limit);
    match result {
        Ok((payload, text, code)) => {
            let stdout = match format {
                Format::Text => text,
                Format::Json => json_line(&OutputRecord {
                    command,
                    inputs,
                    status: if code == EXIT_OK {
                        Status::Ok
                    } else {
                        Status::Error {
                            code: "property_violation".into(),
                            message: "at least one property failed".into(),
                        }
                    },
                    payload: Some(payload),
                }),
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code,
            }
        }
        Err(e) => {
            let (name, code) = error_code(&e);
            match format {
                Format::Text => Outcome {
                    stdout: String::new(),
                    stderr: format!("error[{name}]: {e}\n"),
                    code,
                },
                Format::Json => Outcome {
                    stdout: json_line(&OutputRecord {
                        command,
                        inputs,
                        payload: None,
                        status: Status::Error {
                            code: name.into(),
                            message: e.to_string(),
                        },
                    }),
                    stderr: String::new(),
                    code,
                },
            }
        }
    }
}

fn json_line(record: &OutputRecord) -> String {
    let mut line = serde_json::to_string(record).expect("records always serialize");
    line.push('\n');
    line
}

type Executed = crate::Result<(Payload, String, i32)>;

fn execute(command: Command, limit: SweepLimit) -> (String, Vec<u128>, Executed) {
    match command {
        Command::Trace { n, a } => ("trace".into(), vec![n, a], cmd_trace(n, a)),
        Command::TwoSquares { n, a, all: _ } => {
            let inputs = std::iter::once(n).chain(a).collect();
            ("two-squares".into(), inputs, cmd_two_squares(n, a, limit))
        }
        Command::Identities { n, a, nontrivial } => {
            ("identities".into(), vec![n, a], cmd_identities(n, a, nontrivial))
        }
        Command::Nest { n, a } => ("nest".into(), vec![n, a], cmd_nest(n, a)),
        Command::Verify {
            max_n,
            perron_max_n,
            seed,
            cases,
        } => (
            "verify".into(),
            vec![max_n, perron_max_n, u128::from(seed), cases as u128],
            cmd_verify(
                VerifyConfig {
                    max_n,
                    perron_max_n,
                    seed,
                    cases,
                },
                limit,
            ),
        ),
    }
}

fn joined(values: impl IntoIterator<Item = impl ToString>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_trace(n: u128, a: u128) -> Executed {
    let trace = match symmetric_trace(n, a) {
        Ok(t) => t,
        Err(Error::NotSymmetric { .. }) => euclid_trace(n, a)?,
        Err(e) => return Err(e),
    };
    let mut text = String::new();
    writeln!(text, "quotients:  {}", joined(trace.quotients())).unwrap();
    writeln!(text, "remainders: {}", joined(trace.remainders())).unwrap();
    writeln!(text, "convention_applied: {}", trace.convention_applied()).unwrap();
    writeln!(text, "symmetric: {}", trace.is_symmetric()).unwrap();
    match trace.half_length() {
        Some(s) => writeln!(text, "s: {s}").unwrap(),
        None => writeln!(text, "s: -").unwrap(),
    }
    Ok((Payload::Trace(trace), text, EXIT_OK))
}

fn cmd_two_squares(n: u128, a: Option<u128>, limit: SweepLimit) -> Executed {
    let representations: Vec<TwoSquares> = match a {
        Some(a) => vec![brillhart(n, a)?],
        None => {
            if n < 2 {
                return Err(Error::InvalidPair { n, a: 0 });
            }
            all_primitive_representations(n, limit)?.into_iter().rev().collect()
        }
    };
    let mut text = String::new();
    if representations.is_empty() {
        writeln!(text, "no primitive representation of {n} as a sum of two squares").unwrap();
    }
    for rep in &representations {
        writeln!(text, "{} {}", rep.x, rep.y).unwrap();
    }
    Ok((Payload::TwoSquares { representations }, text, EXIT_OK))
}

fn cmd_identities(n: u128, a: u128, nontrivial: bool) -> Executed {
    let trace = symmetric_trace(n, a)?;
    let identities: Vec<IdentityLine> = enumerate_identities(&trace)?
        .into_iter()
        .map(|identity| IdentityLine {
            degenerate: identity.is_degenerate(),
            text: identity.to_string(),
            identity,
        })
        .filter(|line| !(nontrivial && line.degenerate))
        .collect();
    let mut text = String::new();
    for line in &identities {
        if line.degenerate {
            writeln!(text, "{}  (degenerate)", line.text).unwrap();
        } else {
            writeln!(text, "{}", line.text).unwrap();
        }
    }
    Ok((Payload::Identities { identities }, text, EXIT_OK))
}

fn cmd_nest(n: u128, a: u128) -> Executed {
    let chain = nest_chain(n, a)?;
    let mut text = String::new();
    writeln!(text, "{}", joined(&chain.entries)).unwrap();
    writeln!(text, "multipliers: {}", joined(&chain.multipliers)).unwrap();
    Ok((Payload::Nest(chain), text, EXIT_OK))
}

fn cmd_verify(config: VerifyConfig, limit: SweepLimit) -> Executed {
    let report = verify::run(config, limit)?;
    let mut text = String::new();
    writeln!(
        text,
        "verify: max-n {}, perron-max-n {}, seed {}, cases {}",
        report.max_n, report.perron_max_n, report.seed, report.cases
    )
    .unwrap();
    for p in &report.properties {
        match &p.failure {
            None => writeln!(text, "ok    {:>10}  {}", p.checked, p.name).unwrap(),
            Some(why) => writeln!(text, "FAIL  {:>10}  {}: {}", p.checked, p.name, why).unwrap(),
        }
    }
    let code = if report.passed() { EXIT_OK } else { EXIT_INTERNAL };
    Ok((Payload::Verify(report), text, code))
}
