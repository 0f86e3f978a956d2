//! `buniform`: exact betweenness, blow-ups and uniformity searches.
//!
//! Exit codes: 0 success, 1 internal failure (including a failed acceptance
//! criterion), 2 usage error, 3 malformed input, 10 for `uniform` on a graph
//! that is not betweenness-uniform.

mod input;

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::Context;
use buniform::betweenness::{betweenness_exact, is_betweenness_uniform};
use buniform::blowup::{blow_up, BlowupSpec};
use buniform::constructions::{check_construction, p2_clique_spec, p3_independent_spec, star_spec};
use buniform::graph::{enumerate_graphs, enumerate_trees};
use buniform::search::{
    explore_cut_conjecture, search_blowups_with, verify_tree_theorem, PartFamily, SearchBudget, SearchError,
    SearchOptions, TreeOutcome,
};
use buniform::verification::{run_verification, Level, CRITERIA};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Internal(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "buniform",
    version,
    about = "Exact betweenness centrality and betweenness-uniform blow-ups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// graph6 string, or a file with graph6 or an edge list
    #[arg(short = 'g', long = "graph")]
    graph: String,
    /// Treat the argument as graph6 even if a file of that name exists
    #[arg(long)]
    literal: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the betweenness profile
    Bc(GraphArg),
    /// Test betweenness-uniformity (exit 10 when not uniform)
    Uniform(GraphArg),
    /// Build a blow-up and print it with its vertex-to-part map
    Blowup {
        /// Spec JSON file, inline JSON, or - for stdin
        #[arg(short = 's', long = "spec")]
        spec: String,
    },
    /// Split betweenness into global and local parts
    Decompose {
        #[arg(short = 's', long = "spec")]
        spec: String,
        /// Blown-graph vertex; all vertices when omitted
        #[arg(short = 'v', long = "vertex")]
        vertex: Option<usize>,
    },
    /// Build a known uniform family member and verify it
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Exhaustive search for uniform blow-ups
    Search(SearchArgs),
    /// Run the acceptance checks and print a PASS/FAIL table
    VerifyPaper {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        /// Comma-separated criterion numbers; all when omitted
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
    /// Stream isomorphism-class representatives as graph6 lines
    Enum {
        #[arg(value_enum)]
        kind: EnumKind,
        #[arg(short = 'n')]
        n: usize,
    },
}

#[derive(Subcommand)]
enum Family {
    /// P2[K_m, K_m]
    P2 { m: usize },
    /// P3[I_a, I_(a+b), I_b]
    P3 { a: usize, b: usize },
    /// Star with leaf parts I_s1..I_sk and centre I_(s1+..+sk)
    Star {
        #[arg(required = true)]
        sizes: Vec<usize>,
    },
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("bases").required(true).args(["graph", "trees", "cut_vertex"]))]
struct SearchArgs {
    /// Base graph (graph6 or file)
    #[arg(short = 'g', long = "graph")]
    graph: Option<String>,
    #[arg(long)]
    literal: bool,
    /// Every tree on at most N vertices (diameter <= 2 trees report their known construction)
    #[arg(long, value_name = "N")]
    trees: Option<usize>,
    /// Every connected graph on at most N vertices with a cut vertex and diameter >= 3
    #[arg(long = "cut-vertex", value_name = "N")]
    cut_vertex: Option<usize>,
    #[arg(long, value_enum, default_value_t = FamilyArg::Ik)]
    family: FamilyArg,
    #[arg(long = "max-size")]
    max_size: usize,
    /// Skip assignments with more blown-up vertices than this
    #[arg(long = "max-total")]
    max_total: Option<usize>,
    #[arg(long, env = "BUNIFORM_JOBS")]
    jobs: Option<usize>,
    /// Seconds; an interrupted search reports exhausted = false
    #[arg(long = "time-limit")]
    time_limit: Option<f64>,
    /// Disable the cut-vertex singleton pruning
    #[arg(long = "no-prune")]
    no_prune: bool,
    /// Print one TSV line per base instead of JSON
    #[arg(long)]
    summary: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Ik,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Trees,
    Graphs,
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).context("serializing output")?;
    println!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct BlownOutput<'a> {
    graph6: String,
    order: usize,
    part_of: &'a [usize],
    spec: &'a BlowupSpec,
}

#[derive(Serialize)]
struct ConstructOutput {
    spec: BlowupSpec,
    verification: buniform::constructions::ConstructionCheck,
}

fn search_options(args: &SearchArgs) -> Result<SearchOptions, CliError> {
    if args.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    Ok(SearchOptions {
        jobs: args.jobs,
        prune_singletons: !args.no_prune,
    })
}

fn search_budget(args: &SearchArgs) -> Result<SearchBudget, CliError> {
    let family = match args.family {
        FamilyArg::Ik => PartFamily::IkOnly,
        FamilyArg::All => PartFamily::AllGraphs,
    };
    let mut budget = SearchBudget::new(family, args.max_size);
    if let Some(cap) = args.max_total {
        budget = budget.with_max_total_vertices(cap);
    }
    if let Some(secs) = args.time_limit {
        if !(secs >= 0.0 && secs.is_finite()) {
            return Err(CliError::Usage("--time-limit must be a non-negative number".into()));
        }
        budget = budget.with_time_limit(secs);
    }
    budget.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(budget)
}

fn run_search(args: SearchArgs) -> Result<(), CliError> {
    let budget = search_budget(&args)?;
    let options = search_options(&args)?;
    let fail = |e: SearchError| match e {
        SearchError::Blowup(_) => CliError::Input(e.to_string()),
        SearchError::OrderCap { .. } | SearchError::Graph(_) => CliError::Usage(e.to_string()),
        other => CliError::Internal(other.into()),
    };
    if let Some(g) = &args.graph {
        let base = input::read_graph(g, args.literal)?;
        let report = search_blowups_with(&base, &budget, options).map_err(fail)?;
        if args.summary {
            println!("{}", report.summary_tsv());
            return Ok(());
        }
        return print_json(&report);
    }
    if let Some(n) = args.trees {
        let reports = verify_tree_theorem(n, &budget, options).map_err(fail)?;
        if args.summary {
            for r in &reports {
                match &r.outcome {
                    TreeOutcome::Searched { report } => println!("{}", report.summary_tsv()),
                    TreeOutcome::Constructible { .. } => println!("{}\t0\t1\ttrue", r.tree.to_graph6()),
                    TreeOutcome::TooSmall => println!("{}\t0\t0\ttrue", r.tree.to_graph6()),
                }
            }
            return Ok(());
        }
        return print_json(&reports);
    }
    let n = args.cut_vertex.expect("clap requires one base selector");
    let reports = explore_cut_conjecture(n, &budget, options).map_err(fail)?;
    if args.summary {
        let lines: Vec<String> = reports.iter().map(|r| r.report.summary_tsv()).collect();
        println!("{}", lines.join("\n"));
        for r in reports.iter().filter(|r| r.is_counterexample()) {
            eprintln!(
                "counterexample on {}: {} uniform blow-ups",
                r.graph.to_graph6(),
                r.report.found.len()
            );
        }
        return Ok(());
    }
    print_json(&reports)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Bc(arg) => {
            let g = input::read_graph(&arg.graph, arg.literal)?;
            print_json(&betweenness_exact(&g))?;
        }
        Command::Uniform(arg) => {
            let g = input::read_graph(&arg.graph, arg.literal)?;
            let verdict = is_betweenness_uniform(&g);
            print_json(&verdict)?;
            if !verdict.uniform {
                return Ok(ExitCode::from(10));
            }
        }
        Command::Blowup { spec } => {
            let spec = input::read_spec(&spec)?;
            let bg = blow_up(&spec);
            print_json(&BlownOutput {
                graph6: bg.graph().to_graph6(),
                order: bg.graph().order(),
                part_of: bg.part_assignment(),
                spec: &spec,
            })?;
        }
        Command::Decompose { spec, vertex } => {
            let spec = input::read_spec(&spec)?;
            let bg = blow_up(&spec);
            match vertex {
                Some(v) => print_json(&bg.decompose(v).map_err(|e| CliError::Usage(e.to_string()))?)?,
                None => print_json(&bg.decompose_all())?,
            }
        }
        Command::Construct { family } => {
            let spec = match family {
                Family::P2 { m } => p2_clique_spec(m),
                Family::P3 { a, b } => p3_independent_spec(a, b),
                Family::Star { sizes } => star_spec(&sizes),
            }
            .map_err(|e| CliError::Usage(e.to_string()))?;
            let verification = check_construction(&spec);
            print_json(&ConstructOutput { spec, verification })?;
        }
        Command::Search(args) => run_search(args)?,
        Command::VerifyPaper { level, only } => {
            if let Some(bad) = only.iter().find(|&&id| id == 0 || id > CRITERIA) {
                return Err(CliError::Usage(format!("no criterion {bad}; expected 1..={CRITERIA}")));
            }
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            println!("level {level}");
            let report = run_verification(level, &only, |r| eprintln!("done {:>2} {}", r.id, r.name));
            for r in &report.results {
                println!("{r}");
            }
            if !report.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Enum { kind, n } => {
            let graphs = match kind {
                EnumKind::Trees => enumerate_trees(n),
                EnumKind::Graphs => enumerate_graphs(n),
            }
            .map_err(|e| CliError::Usage(e.to_string()))?;
            let mut out = io::BufWriter::new(io::stdout().lock());
            for g in graphs {
                writeln!(out, "{}", g.to_graph6()).context("writing output")?;
            }
            out.flush().context("writing output")?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            match &e {
                CliError::Usage(m) | CliError::Input(m) => eprintln!("error: {m}"),
                CliError::Internal(err) => eprintln!("error: {err:#}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
