mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use linkgate_core::budget::Budget;
use serde_json::{json, Value};
use thiserror::Error;

use commands::Outcome;
use input::{Kind, Source};

const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "linkgate", version, about = "Abelian and covering-space link invariants and concordance obstructions")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Wall-clock budget in milliseconds.
    #[arg(long, global = true, env = "LINKGATE_BUDGET_MS")]
    budget_ms: Option<u64>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include elapsed time in the JSON report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct LinkArgs {
    /// Built-in link name.
    #[arg(long)]
    builtin: Vec<String>,
    /// Built-in name, braid or PD text.
    #[arg(long)]
    link: Vec<String>,
    /// PD code, e.g. "X[1,3,2,4] X[3,1,4,2]".
    #[arg(long)]
    pd: Vec<String>,
    /// Braid word, e.g. "BR 2: 1 1 1".
    #[arg(long)]
    braid: Vec<String>,
    /// Torsion polynomial, e.g. "t1*t2 - t1 - t2 + 3".
    #[arg(long)]
    poly: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Linking matrix, rank of the Alexander module and torsion polynomial.
    Alex(LinkArgs),
    /// Abelian obstruction to concordance with the Hopf link.
    HopfTest(LinkArgs),
    /// Compare two links or torsion polynomials (two inputs, in order).
    PairTest(LinkArgs),
    /// H1 of the admissible finite covers of the glued manifold.
    Covers {
        #[command(flatten)]
        link: LinkArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u32,
    },
    /// Metabolizers of the linking form presented by a symmetric matrix.
    Metabolizers {
        /// Integer matrix as JSON, e.g. "[[9]]".
        #[arg(long)]
        form: String,
    },
    /// Check the twisted homology inequality on random instances.
    CheckThm23 {
        #[arg(long)]
        random: usize,
    },
}

const KINDS: [(&str, Kind); 5] =
    [("builtin", Kind::Builtin), ("link", Kind::Link), ("pd", Kind::Pd), ("braid", Kind::Braid), ("poly", Kind::Poly)];

/// Input flags in command-line order.
fn sources(m: &ArgMatches) -> Vec<Source> {
    let mut out: Vec<(usize, Source)> = Vec::new();
    for (id, kind) in KINDS {
        if let (Some(vals), Some(idx)) = (m.get_many::<String>(id), m.indices_of(id)) {
            out.extend(idx.zip(vals).map(|(i, v)| (i, Source { kind, text: v.clone() })));
        }
    }
    out.sort_by_key(|(i, _)| *i);
    out.into_iter().map(|(_, s)| s).collect()
}

fn exactly(m: &ArgMatches, n: usize) -> Result<Vec<Source>, CliError> {
    let s = sources(m);
    if s.len() != n {
        return Err(CliError::Parse(format!("expected {n} input(s) among --builtin/--link/--pd/--braid/--poly, got {}", s.len())));
    }
    Ok(s)
}

fn run(cli: &Cli, sub: &ArgMatches, budget: &Budget) -> Result<(String, Value, Outcome), CliError> {
    Ok(match &cli.command {
        Command::Alex(_) => {
            let s = exactly(sub, 1)?;
            ("alex".into(), s[0].echo(), commands::alex(&s[0], budget)?)
        }
        Command::HopfTest(_) => {
            let s = exactly(sub, 1)?;
            ("hopf-test".into(), s[0].echo(), commands::hopf(&s[0], budget)?)
        }
        Command::PairTest(_) => {
            let s = exactly(sub, 2)?;
            ("pair-test".into(), json!([s[0].echo(), s[1].echo()]), commands::pair(&s[0], &s[1], budget)?)
        }
        Command::Covers { p, i, j, .. } => {
            let s = exactly(sub, 1)?;
            let echo = json!({ "link": s[0].echo(), "p": p, "i": i, "j": j });
            ("covers".into(), echo, commands::covers(&s[0], *p, *i, *j)?)
        }
        Command::Metabolizers { form } => {
            ("metabolizers".into(), json!({ "form": form }), commands::metabolizers_cmd(form, budget)?)
        }
        Command::CheckThm23 { random } => {
            ("check-thm23".into(), json!({ "random": random }), commands::check_thm23(*random, cli.seed))
        }
    })
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let sub = matches.subcommand().map(|(_, m)| m.clone()).expect("subcommand is required");
    let budget = cli.budget_ms.map_or_else(Budget::default, Budget::with_millis);
    let start = Instant::now();
    match run(&cli, &sub, &budget) {
        Ok((command, input, out)) => {
            let mut stdout = std::io::stdout().lock();
            if cli.json {
                let mut report = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": command,
                    "input": input,
                    "results": out.results,
                    "budget": { "budget_ms": cli.budget_ms, "seed": cli.seed },
                });
                if cli.timings {
                    report["timings"] = json!({ "elapsed_ms": start.elapsed().as_millis() as u64 });
                }
                let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                for l in out.lines {
                    if writeln!(stdout, "{l}").is_err() {
                        break;
                    }
                }
                if cli.timings {
                    let _ = writeln!(stdout, "elapsed: {} ms", start.elapsed().as_millis());
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("linkgate: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
