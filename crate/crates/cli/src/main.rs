//! `grc`: decide degree sequences with edge-cut constraints from the shell.
//!
//! Every command prints one line of JSON. Exit status: 0 when a decision was
//! reached (either way), 2 for invalid input or usage, 3 when the search
//! budget ran out.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use grc::classic::havel_hakimi;
use grc::cut3::{reduce_to_width2, Reduction};
use grc::ffactor::{solve_f_factor, FactorFunction};
use grc::format::{from_json, to_json};
use grc::hardness::{sat_to_grc, tdm_to_grc};
use grc::oracle::{enumerate_realizations, OneInThreeInstance, OracleOptions, ThreeDMInstance, DEFAULT_NODE_BUDGET};
use grc::{solve, verify_realization, GrcError, GrcInstance, Method, SimpleGraph, SolveOptions, SolveOutcome};

#[derive(Parser)]
#[command(name = "grc", version, about = "Graph realization with edge-cut size constraints")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance, choosing the method automatically unless forced.
    Solve {
        /// Instance JSON file, or `-` for stdin.
        instance: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Write the trace of any width-3 rewriting here.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check a graph against an instance.
    Verify { instance: String, graph: String },
    /// Rewrite all 3-vertex cuts into pair constraints and print the result.
    Reduce3 {
        instance: String,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Exhaustive search; optionally list realizations.
    Oracle {
        instance: String,
        /// List up to N realizations instead of deciding.
        #[arg(long, value_name = "N")]
        enumerate: Option<usize>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Realize a plain degree sequence, e.g. `3,3,3,3`.
    Degseq {
        sequence: String,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Find a spanning subgraph of a host graph with prescribed degrees.
    Ffactor {
        host: String,
        /// Comma-separated target degree per host vertex.
        #[arg(long, value_name = "LIST")]
        f: String,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Generate instances from other problems.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand)]
enum GenCommand {
    /// Exactly-one SAT with k true variables.
    Sat13 {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        k: usize,
        /// Use degree-1 sink copies so every degree is 1.
        #[arg(long)]
        all_ones: bool,
        /// Write the vertex role map here.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Three-dimensional matching.
    #[command(name = "3dm")]
    Tdm {
        #[arg(long)]
        triples: String,
        #[arg(long)]
        map: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Search-tree node budget (default: GRC_BUDGET or 50000000).
    #[arg(long)]
    budget: Option<u64>,
    /// Split the search across threads.
    #[arg(long)]
    parallel: bool,
    /// Write the witness graph here when realizable.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Tree,
    Ffactor,
    Reduce3,
    Oracle,
}

impl MethodArg {
    fn method(self) -> Option<Method> {
        match self {
            MethodArg::Auto => None,
            MethodArg::Tree => Some(Method::Tree),
            MethodArg::Ffactor => Some(Method::Ffactor),
            MethodArg::Reduce3 => Some(Method::Reduce3),
            MethodArg::Oracle => Some(Method::Oracle),
        }
    }
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<GrcError> for Failure {
    fn from(e: GrcError) -> Failure {
        match e {
            GrcError::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CliResult = Result<ExitCode, Failure>;

#[derive(Serialize)]
struct Decision<'a> {
    realizable: Option<bool>,
    method: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    status: Option<&'a str>,
}

#[derive(Serialize)]
struct Refusal {
    #[serde(rename = "unsafe")]
    is_unsafe: bool,
    offending: Vec<grc::cut3::UnsafeCut>,
}

#[derive(Serialize)]
struct Listing {
    count: usize,
    realizations: Vec<SimpleGraph>,
}

fn print_decision(realizable: Option<bool>, method: &str, status: Option<&str>) {
    println!("{}", to_json(&Decision { realizable, method, status }));
}

fn read_text(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let read = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

fn read_doc<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Failure> {
    from_json(&read_text(path)?).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn write_doc(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, format!("{text}\n")).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn parse_list(text: &str) -> Result<Vec<usize>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| Failure::Input(format!("{s:?} is not a nonnegative integer"))))
        .collect()
}

fn budget(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("GRC_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Input(format!("GRC_BUDGET={v:?} is not a node count"))),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

fn oracle_options(search: &SearchArgs) -> Result<OracleOptions, Failure> {
    Ok(OracleOptions { node_budget: budget(search.budget)?, parallel: search.parallel, ..OracleOptions::default() })
}

/// Prints the decision line, writes the witness if asked, and picks the
/// exit code.
fn report(outcome: &SolveOutcome, method: &str, witness: Option<&Path>) -> CliResult {
    match outcome {
        SolveOutcome::ResourceLimit => {
            print_decision(None, method, Some("resource_limit"));
            return Ok(ExitCode::from(3));
        }
        SolveOutcome::Realizable(g) => {
            if let Some(path) = witness {
                write_doc(path, &to_json(g))?;
            }
        }
        SolveOutcome::Infeasible => {}
    }
    print_decision(Some(outcome.is_realizable()), method, None);
    Ok(ExitCode::SUCCESS)
}

fn decided(r: grc::Result<SimpleGraph>) -> Result<SolveOutcome, Failure> {
    match r {
        Ok(g) => Ok(SolveOutcome::Realizable(g)),
        Err(GrcError::Infeasible(_)) => Ok(SolveOutcome::Infeasible),
        Err(e) => Err(e.into()),
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Solve { instance, method, trace, search } => {
            let inst: GrcInstance = read_doc(&instance)?;
            let options = SolveOptions { method: method.method(), oracle: oracle_options(&search)? };
            let r = solve(&inst, &options)?;
            if let Some(path) = trace {
                write_doc(&path, &to_json(&r.trace.unwrap_or_default()))?;
            }
            report(&r.outcome, r.method.as_str(), search.witness.as_deref())
        }
        Command::Verify { instance, graph } => {
            let inst: GrcInstance = read_doc(&instance)?;
            let g: SimpleGraph = read_doc(&graph)?;
            println!("{}", to_json(&verify_realization(&g, &inst)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce3 { instance, trace } => {
            let inst: GrcInstance = read_doc(&instance)?;
            match reduce_to_width2(&inst) {
                Ok(Reduction::Reduced { instance, trace: t }) => {
                    if let Some(path) = trace {
                        write_doc(&path, &to_json(&t))?;
                    }
                    println!("{}", to_json(&instance));
                }
                Ok(Reduction::Unsafe(offending)) => {
                    println!("{}", to_json(&Refusal { is_unsafe: true, offending }));
                }
                Err(GrcError::Infeasible(_)) => {
                    print_decision(Some(false), "reduce3", None);
                }
                Err(e) => return Err(e.into()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { instance, enumerate, search } => {
            let inst: GrcInstance = read_doc(&instance)?;
            if let Some(cap) = enumerate {
                let realizations = enumerate_realizations(&inst, cap);
                println!("{}", to_json(&Listing { count: realizations.len(), realizations }));
                return Ok(ExitCode::SUCCESS);
            }
            let options = SolveOptions { method: Some(Method::Oracle), oracle: oracle_options(&search)? };
            let r = solve(&inst, &options)?;
            report(&r.outcome, r.method.as_str(), search.witness.as_deref())
        }
        Command::Degseq { sequence, witness } => {
            let degrees = parse_list(&sequence)?;
            report(&decided(havel_hakimi(&degrees))?, "havel_hakimi", witness.as_deref())
        }
        Command::Ffactor { host, f, witness } => {
            let host: SimpleGraph = read_doc(&host)?;
            let f = FactorFunction(parse_list(&f)?);
            report(&decided(solve_f_factor(&host, &f))?, "ffactor", witness.as_deref())
        }
        Command::Gen(GenCommand::Sat13 { formula, k, all_ones, map }) => {
            let f: OneInThreeInstance = read_doc(&formula)?;
            let (inst, gadget) = sat_to_grc(&f, k, all_ones)?;
            if let Some(path) = map {
                write_doc(&path, &to_json(&gadget))?;
            }
            println!("{}", to_json(&inst));
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen(GenCommand::Tdm { triples, map }) => {
            let t: ThreeDMInstance = read_doc(&triples)?;
            let (inst, gadget) = tdm_to_grc(&t)?;
            if let Some(path) = map {
                write_doc(&path, &to_json(&gadget))?;
            }
            println!("{}", to_json(&inst));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("grc: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("grc: {msg}");
            ExitCode::FAILURE
        }
    }
}
