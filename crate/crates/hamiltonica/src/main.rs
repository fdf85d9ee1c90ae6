use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use hamiltonica::checks::{self, Profile, DEFAULT_NODE_BUDGET};
use hamiltonica::report::{exit_code, summary_table, write_bundle, CheckReport};
use hamiltonica::verify::verify_report;
use hamiltonica::GraphSpec;
use hamiltonica_core::constructions::cartesian_product;
use hamiltonica_core::factors::{BoundaryReading, EndpointPattern};
use hamiltonica_core::hamiltonicity::{find_hamiltonian_cycle_with, SolverOptions};
use hamiltonica_core::io::{decode, encode, Format};
use hamiltonica_core::Graph;

/// Exit status for command-line mistakes.
const USAGE_ERROR: u8 = 3;
/// Exit status for failures while running a valid command.
const RUNTIME_ERROR: u8 = 4;

#[derive(Parser)]
#[command(name = "hamiltonica", version, about = "Hamiltonicity of trees times paths: generators, solver and claim checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph in graph6, JSON or DOT.
    Gen {
        #[command(subcommand)]
        graph: GenGraph,
        #[arg(long, global = true, default_value = "graph6")]
        format: Format,
    },
    /// Decide Hamiltonicity of a graph file. Exit 0 found, 1 not Hamiltonian, 2 unknown.
    Solve {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Disable every pruning rule.
        #[arg(long)]
        no_prune: bool,
    },
    /// Run one named check, or all of them.
    Check {
        #[command(subcommand)]
        check: CheckCommand,
        #[command(flatten)]
        common: CheckArgs,
    },
    /// Re-verify a report file or bundle directory offline.
    Verify {
        path: PathBuf,
        /// Also repeat exhaustive searches behind non-Hamiltonicity claims.
        #[arg(long)]
        rerun: bool,
    },
}

#[derive(Subcommand)]
enum GenGraph {
    /// The tree T_delta.
    Tdelta {
        #[arg(long)]
        delta: usize,
    },
    /// Cartesian product of two graph files.
    Product {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    Path { n: usize },
    Cycle { n: usize },
    Star { leaves: usize },
    DoubleStar { left: usize, right: usize },
    Complete { n: usize },
    Petersen,
    /// Any graph in the report notation, such as "T_3 x P_4".
    Spec { spec: GraphSpec },
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Write one JSON report per check plus counterexample artifacts here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the reports as JSON instead of a summary table.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// No cover of P_3 x P_n has its ends in the middle row from column k on.
    SuffixEnds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// No cover exists for any endpoint pattern closed under the pairing
    /// clause; with --k, only the given pattern.
    PairedEnds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Columns below k-1 that are ends, comma separated.
        #[arg(long, value_delimiter = ',')]
        ends: Vec<usize>,
        #[arg(long, default_value = "vacuous", value_parser = parse_reading)]
        reading: BoundaryReading,
    },
    /// Products of graphs lacking a path factor with graphs having a leaf.
    NoFactorPendantProduct {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long = "factor", default_values = ["P_2", "P_3"])]
        factors: Vec<GraphSpec>,
    },
    /// T_delta x P_m is not Hamiltonian.
    TreeFamilyNotHamiltonian {
        #[arg(long)]
        delta: usize,
        /// Values of m: a list such as 2,3,4 or a range such as 2..6.
        #[arg(long, value_parser = parse_list)]
        m: List,
        /// Check a different tree (spec notation or a graph file) in place of T_delta.
        #[arg(long)]
        tree: Option<String>,
    },
    /// T x P_n is Hamiltonian for long enough even n.
    LongPathPositiveSide {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        n: usize,
    },
    /// T x C_n is Hamiltonian iff the maximum degree of T is at most n.
    TreeTimesCycle {
        #[arg(long, default_value_t = 7)]
        max_tree_n: usize,
        #[arg(long, value_parser = parse_list, default_value = "3,4,5")]
        n: List,
    },
    /// Components left after deleting the spine copies from T_delta x P_m.
    SeparatorComponents {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        tree: Option<String>,
    },
    /// Hamiltonian graphs in the corpus are 1-tough.
    HamiltonianImpliesOneTough {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Every check of a profile.
    All {
        #[arg(long, default_value = "quick")]
        profile: Profile,
    },
}

fn parse_reading(s: &str) -> Result<BoundaryReading, String> {
    match s {
        "vacuous" => Ok(BoundaryReading::Vacuous),
        "literal" => Ok(BoundaryReading::Literal),
        other => Err(format!("unknown reading {other:?}; expected vacuous or literal")),
    }
}

/// Several integers in one argument; a plain `Vec` would make clap expect
/// repeated flags.
#[derive(Debug, Clone)]
struct List(Vec<usize>);

fn parse_list(s: &str) -> Result<List, String> {
    let bad = |_| format!("expected a list like 2,3,4 or a range like 2..6, got {s:?}");
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.parse().map_err(bad)?;
        let hi: usize = hi.trim_start_matches('=').parse().map_err(bad)?;
        return Ok(List((lo..=hi).collect()));
    }
    s.split(',').map(|x| x.trim().parse().map_err(bad)).collect::<Result<_, _>>().map(List)
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    decode(text.trim()).with_context(|| format!("parsing {}", path.display()))
}

/// A tree argument: a graph file if one exists at that path, else spec notation.
fn tree_arg(arg: &str) -> Result<GraphSpec> {
    if Path::new(arg).is_file() {
        return Ok(GraphSpec::graph6(&read_graph(Path::new(arg))?));
    }
    arg.parse().map_err(anyhow::Error::msg)
}

fn generate(graph: GenGraph) -> Result<Graph> {
    let spec = match graph {
        GenGraph::Product { left, right } => return Ok(cartesian_product(&read_graph(&left)?, &read_graph(&right)?)?),
        GenGraph::Tdelta { delta } => GraphSpec::TDelta { delta },
        GenGraph::Path { n } => GraphSpec::Path { n },
        GenGraph::Cycle { n } => GraphSpec::Cycle { n },
        GenGraph::Star { leaves } => GraphSpec::Star { leaves },
        GenGraph::DoubleStar { left, right } => GraphSpec::DoubleStar { left, right },
        GenGraph::Complete { n } => GraphSpec::Complete { n },
        GenGraph::Petersen => GraphSpec::Petersen,
        GenGraph::Spec { spec } => spec,
    };
    Ok(spec.build()?)
}

fn run_check(check: CheckCommand, budget: u64) -> Result<Vec<CheckReport>> {
    Ok(match check {
        CheckCommand::SuffixEnds { n, k } => vec![checks::check_suffix_ends(n, k)?],
        CheckCommand::PairedEnds { n, k: None, .. } => vec![checks::check_paired_ends(n)?],
        CheckCommand::PairedEnds { n, k: Some(k), ends, reading } => {
            vec![checks::check_paired_end_pattern(n, &EndpointPattern { k, ends_below: ends }, reading)?]
        }
        CheckCommand::NoFactorPendantProduct { max_n, factors } => {
            vec![checks::check_no_factor_products(max_n, &factors, budget)?]
        }
        CheckCommand::TreeFamilyNotHamiltonian { delta, m, tree } => {
            let tree = match tree {
                Some(t) => tree_arg(&t)?,
                None => GraphSpec::TDelta { delta },
            };
            vec![checks::check_tree_family_on(&tree, delta, &m.0, budget)?]
        }
        CheckCommand::LongPathPositiveSide { tree, n } => vec![checks::check_positive_side(&tree_arg(&tree)?, n, budget)?],
        CheckCommand::TreeTimesCycle { max_tree_n, n } => vec![checks::check_tree_times_cycle(max_tree_n, &n.0, budget)?],
        CheckCommand::SeparatorComponents { delta, m, tree } => {
            let tree = match tree {
                Some(t) => tree_arg(&t)?,
                None => GraphSpec::TDelta { delta },
            };
            vec![checks::check_component_counts_on(&tree, delta, m)?]
        }
        CheckCommand::HamiltonianImpliesOneTough { max_n } => vec![checks::check_toughness_corpus(max_n, budget)?],
        CheckCommand::All { profile } => checks::run_all(profile, budget),
    })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen { graph, format } => {
            let g = generate(graph)?;
            println!("{}", encode(&g, format).trim_end());
            Ok(0)
        }
        Command::Solve { file, budget, no_prune } => {
            let g = read_graph(&file)?;
            let opts = if no_prune { SolverOptions::NONE } else { SolverOptions::ALL };
            let verdict = find_hamiltonian_cycle_with(&g, budget, opts)?;
            println!("{}", serde_json::to_string(&verdict.certificate(budget))?);
            Ok(if verdict.is_found() {
                0
            } else if verdict.is_exhausted() {
                1
            } else {
                2
            })
        }
        Command::Check { check, common } => {
            let reports = run_check(check, common.budget)?;
            if let Some(dir) = &common.out {
                write_bundle(dir, &reports)?;
            }
            if common.json {
                println!("{}", serde_json::to_string_pretty(&reports)?);
            } else {
                print!("{}", summary_table(&reports));
            }
            Ok(exit_code(&reports) as u8)
        }
        Command::Verify { path, rerun } => {
            let reports = hamiltonica::report::read_reports(&path)?;
            anyhow::ensure!(!reports.is_empty(), "no reports found at {}", path.display());
            let mut all_ok = true;
            for r in &reports {
                let v = verify_report(r, rerun);
                all_ok &= v.ok();
                let status = if v.ok() { "ok" } else { "REJECTED" };
                println!("{:<8} {} ({} verified, {} unchecked)", status, v.stem, v.verified, v.unchecked);
                for reason in &v.rejected {
                    println!("         {reason}");
                }
            }
            Ok(if all_ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(USAGE_ERROR),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(RUNTIME_ERROR)
        }
    }
}
