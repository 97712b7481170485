use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use surgeq::form_iso::{IsoStatus, DEFAULT_BOUND};
use surgeq::format::{orbit_invariants_json, parse_presentation, parse_trilinear, write_presentation};
use surgeq::milnor::{free_nilpotent_h3_rank, MilnorData, DEFAULT_MAX_LENGTH};
use surgeq::presentation::FramedLink;
use surgeq::report::{invariants_report, iso_report, verdict_report};
use surgeq::trilinear::{equivalent, TrilinearForm, DEFAULT_DEPTH};
use surgeq::verdict::{compare, lens_compare, Options, Relation, Status, Verdict, VerdictError};

const EXIT_NOT_EQUIVALENT: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_UNKNOWN: u8 = 4;

#[derive(Parser)]
#[command(name = "surgeq", version, about = "Surgery-equivalence invariants of framed-link presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// H1, linking form, triple cup product form and the μ̄ table.
    Invariants {
        file: String,
        #[arg(long, default_value_t = DEFAULT_MAX_LENGTH)]
        max_length: usize,
    },
    /// Compare two presentations; exit 0/1/4 for Equivalent/NotEquivalent/Unknown.
    Compare {
        a: String,
        b: String,
        /// integral2, rational2 or k=K
        #[arg(long, default_value = "integral2")]
        relation: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Print every invariant value and note.
        #[arg(long)]
        certificate: bool,
    },
    /// Rewrite with integral framings only.
    Expand { file: String },
    /// Compare L(n, q) with L(n2, q2).
    Lens {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(allow_negative_numbers = true)]
        n2: i64,
        #[arg(allow_negative_numbers = true)]
        q2: i64,
        #[arg(long)]
        certificate: bool,
    },
    /// μ̄ of one index (e.g. --index 1,1,2,2) or the first nonvanishing one.
    Milnor {
        file: String,
        #[arg(long)]
        index: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_LENGTH)]
        max_length: usize,
    },
    /// Orbit invariants of a trilinear form literal, or equivalence of two.
    Orbit {
        form: String,
        other: Option<String>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Rank of H3 of the free nilpotent quotient F/F_k on m generators.
    NilpotentRanks { m: u64, k: u32 },
}

enum Failure {
    Parse(String),
    Precondition(String),
}

type Outcome = Result<(Value, u8), Failure>;

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{path}: {e}")))
}

fn load(path: &str) -> Result<FramedLink, Failure> {
    parse_presentation(&read(path)?).map_err(|e| Failure::Parse(format!("{path}: {e}")))
}

/// A form literal given inline or as a file path.
fn load_form(arg: &str) -> Result<TrilinearForm, Failure> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { read(arg)? };
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{arg}: {e}")))?;
    parse_trilinear(&value).map_err(|e| Failure::Parse(format!("{arg}: {e}")))
}

fn verdict_exit(v: &Verdict) -> u8 {
    match v.status {
        Status::Equivalent => 0,
        Status::NotEquivalent => EXIT_NOT_EQUIVALENT,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Invariants { file, max_length } => {
            let link = load(&file)?;
            Ok((invariants_report(&link, max_length), 0))
        }
        Command::Compare { a, b, relation, bound, depth, certificate } => {
            let (la, lb) = (load(&a)?, load(&b)?);
            let opts = Options { bound, depth };
            let relation: Relation = relation.parse().map_err(|e: VerdictError| Failure::Parse(e.to_string()))?;
            let v = compare(&la, &lb, relation, &opts).map_err(|e| Failure::Precondition(e.to_string()))?;
            Ok((verdict_report(&v, certificate), verdict_exit(&v)))
        }
        Command::Expand { file } => {
            let link = load(&file)?.expand_to_integral();
            let text = write_presentation(&link);
            Ok((serde_json::from_str(&text).expect("own output parses"), 0))
        }
        Command::Lens { n, q, n2, q2, certificate } => {
            let v = lens_compare(n, q, n2, q2).map_err(|e| Failure::Precondition(e.to_string()))?;
            Ok((verdict_report(&v, certificate), verdict_exit(&v)))
        }
        Command::Milnor { file, index, max_length } => {
            let link = load(&file)?;
            let mut data =
                MilnorData::new(&link, max_length).map_err(|e| Failure::Precondition(e.to_string()))?;
            match index {
                Some(idx) => {
                    let idx: Vec<usize> = idx
                        .split(',')
                        .map(|s| s.trim().parse::<usize>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| Failure::Parse(format!("bad index `{idx}`")))?;
                    let mu = data.mu_bar(&idx).map_err(|e| Failure::Precondition(e.to_string()))?;
                    Ok((surgeq::format::mu_json(&mu), 0))
                }
                None => {
                    let first = data.first_nonvanishing(max_length);
                    Ok((
                        json!({
                            "max_length": max_length,
                            "first_nonvanishing_length": first.as_ref().map(|mu| mu.index.len()),
                            "first_nonvanishing": first.as_ref().map(surgeq::format::mu_json),
                        }),
                        0,
                    ))
                }
            }
        }
        Command::Orbit { form, other, depth } => {
            let f = load_form(&form)?;
            match other {
                None => Ok((orbit_invariants_json(&f.orbit_invariants()), 0)),
                Some(other) => {
                    let g = load_form(&other)?;
                    let ans = equivalent(&f, &g, depth);
                    let code = match ans.status {
                        IsoStatus::Yes => 0,
                        IsoStatus::No => EXIT_NOT_EQUIVALENT,
                        IsoStatus::Unknown => EXIT_UNKNOWN,
                    };
                    Ok((iso_report(&ans), code))
                }
            }
        }
        Command::NilpotentRanks { m, k } => {
            let r = free_nilpotent_h3_rank(m, k).map_err(|e| Failure::Precondition(e.to_string()))?;
            let value = u64::try_from(&r).map_or_else(|_| json!(r.to_string()), |v| json!(v));
            Ok((value, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((value, code)) => {
            // A closed pipe downstream is not an error worth reporting.
            let _ = writeln!(io::stdout(), "{}", serde_json::to_string_pretty(&value).expect("serialisable"));
            ExitCode::from(code)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("precondition failed: {msg}");
            ExitCode::from(EXIT_PRECONDITION)
        }
    }
}
