//! Command-line surface for the contextuality toolkit.
//!
//! Exit codes: 0 success/verified, 1 semantic negative (a colorable set, a
//! graph that is not fully contextual), 2 input error, 3 budget error.
//! All JSON output carries `"schema":"1"` and is byte-deterministic for a
//! fixed input and configuration, independent of the worker count.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kskit::catalog;
use kskit::contextuality::{
    self, is_parity_proof, johnson_dim_bound, ks_colorable, orthogonality_graph,
    validate_context_set, ContextSet,
};
use kskit::graph::{self, to_graph6, Graph};
use kskit::inequality;
use kskit::theta::lovasz_theta;

const SCHEMA: &str = "1";

#[derive(Parser)]
#[command(
    name = "kskit",
    about = "Verify Kochen-Specker sets and classify contextuality graphs",
    version
)]
struct Cli {
    /// Absolute duality-gap tolerance for the SDP.
    #[arg(long, global = true, env = "KSKIT_TOL", default_value_t = 1e-6)]
    tol: f64,
    /// Assignment budget for the exhaustive classical bound (max 2^24).
    #[arg(long, global = true, env = "KSKIT_BUDGET", default_value_t = 1u64 << 24)]
    budget: u64,
    /// Worker threads for corpus classification.
    #[arg(long, global = true, env = "KSKIT_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Base seed for randomized state sampling.
    #[arg(long, global = true, env = "KSKIT_SEED", default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, env = "KSKIT_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a vector set and decide KS colorability.
    VerifyKs {
        /// "builtin", a vector-set file path, or "-" for stdin.
        #[arg(default_value = "builtin")]
        input: String,
    },
    /// Classify graphs: invariants, predicates, census summary.
    Classify {
        /// Built-in graph names (seven-context, j52, pentagon, petersen,
        /// c<n>, k<n>) or graph6 file paths ("-" for stdin).
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Append the census aggregation after the per-graph reports.
        #[arg(long)]
        census: bool,
    },
    /// Evaluate the noncontextuality inequality.
    Inequality {
        /// "builtin", a vector-set file path, or "-" for stdin.
        #[arg(default_value = "builtin")]
        input: String,
        /// Number of random pure states to sample (seeds seed..seed+n).
        #[arg(long, default_value_t = 1)]
        samples: u64,
    },
    /// Lovász number of a graph with a certified duality gap.
    Theta {
        /// Built-in graph name or graph6 file path ("-" for stdin).
        input: String,
    },
    /// Export a graph as DOT or graph6.
    Export {
        /// Built-in graph name or graph6 file path ("-" for stdin).
        input: String,
        /// Target encoding.
        #[arg(value_enum, default_value_t = ExportFormat::Dot)]
        encoding: ExportFormat,
    },
    /// Minimum-dimension bound for the clique-blown-up five-clique structure.
    DimBound {
        /// Blow-up factor k (cliques of size 4k).
        k: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    Graph6,
}

#[derive(Serialize)]
struct Versioned<T: Serialize> {
    schema: &'static str,
    #[serde(flatten)]
    body: T,
}

/// Prints one output line, exiting quietly if the consumer closed the pipe.
fn print_line(line: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if writeln!(stdout, "{line}").is_err() {
        std::process::exit(0);
    }
}

fn emit<T: Serialize>(format: Format, body: T, text: String) {
    match format {
        Format::Json => {
            let wrapped = Versioned {
                schema: SCHEMA,
                body,
            };
            print_line(&serde_json::to_string(&wrapped).expect("reports serialize"));
        }
        Format::Text => print_line(&text),
    }
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn read_input(path: &str) -> Result<String, std::io::Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
    }
}

fn load_context_set(input: &str) -> Result<ContextSet, String> {
    if input == "builtin" {
        return Ok(catalog::builtin_seven_context());
    }
    let text = read_input(input).map_err(|e| format!("{input}: {e}"))?;
    catalog::parse_vector_set(&text).map_err(|e| format!("{input}: {e}"))
}

/// A graph plus display labels for its vertices.
struct LabeledGraph {
    graph: Graph,
    labels: Vec<String>,
    source: String,
}

fn builtin_graph(name: &str) -> Option<Result<LabeledGraph, String>> {
    let numbered = |g: Result<Graph, graph::GraphError>, name: &str| {
        Some(g.map_err(|e| e.to_string()).map(|graph| LabeledGraph {
            labels: (0..graph.n()).map(|v| v.to_string()).collect(),
            graph,
            source: name.to_string(),
        }))
    };
    match name {
        "seven-context" => {
            let cs = catalog::builtin_seven_context();
            let (graph, labels) = orthogonality_graph(&cs).expect("built-in set is valid");
            Some(Ok(LabeledGraph {
                graph,
                labels,
                source: name.to_string(),
            }))
        }
        "j52" => numbered(graph::johnson_graph(5, 2), name),
        "j72" => numbered(graph::johnson_graph(7, 2), name),
        "pentagon" => numbered(graph::cycle_graph(5), name),
        "petersen" => numbered(Ok(graph::petersen_graph()), name),
        _ => {
            if let Some(n) = name.strip_prefix('c').and_then(|s| s.parse::<usize>().ok()) {
                return numbered(graph::cycle_graph(n), name);
            }
            if let Some(n) = name.strip_prefix('k').and_then(|s| s.parse::<usize>().ok()) {
                return numbered(graph::complete_graph(n), name);
            }
            None
        }
    }
}

/// Resolves one input token into graphs: a built-in name yields one graph,
/// anything else is read as a graph6 document (one graph per line).
fn load_graphs(input: &str) -> Result<Vec<LabeledGraph>, String> {
    let (graphs, errors) = load_graphs_lenient(input)?;
    if let Some(first) = errors.into_iter().next() {
        return Err(first);
    }
    Ok(graphs)
}

/// Like [`load_graphs`], but collects per-line parse failures instead of
/// aborting, so corpus runs can keep going.
fn load_graphs_lenient(input: &str) -> Result<(Vec<LabeledGraph>, Vec<String>), String> {
    if let Some(builtin) = builtin_graph(input) {
        return builtin.map(|g| (vec![g], Vec::new()));
    }
    let text = read_input(input).map_err(|e| format!("{input}: {e}"))?;
    let mut graphs = Vec::new();
    let mut errors = Vec::new();
    for (line_no, parsed) in graph::read_graph6_lines(&text) {
        match parsed {
            Ok(graph) => graphs.push(LabeledGraph {
                labels: (0..graph.n()).map(|v| v.to_string()).collect(),
                graph,
                source: format!("{input}:{line_no}"),
            }),
            Err(e) => errors.push(format!("{input}:{line_no}: {e}")),
        }
    }
    if graphs.is_empty() && errors.is_empty() {
        return Err(format!("{input}: no graphs found"));
    }
    Ok((graphs, errors))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.budget > inequality::MAX_BUDGET {
        return fail(
            3,
            format!(
                "budget {} exceeds the hard cap of {}",
                cli.budget,
                inequality::MAX_BUDGET
            ),
        );
    }
    if !cli.tol.is_finite() || cli.tol <= 0.0 {
        return fail(2, "tolerance must be positive");
    }
    match &cli.command {
        Command::VerifyKs { input } => cmd_verify_ks(&cli, input),
        Command::Classify { inputs, census } => cmd_classify(&cli, inputs, *census),
        Command::Inequality { input, samples } => cmd_inequality(&cli, input, *samples),
        Command::Theta { input } => cmd_theta(&cli, input),
        Command::Export { input, encoding } => cmd_export(&cli, input, *encoding),
        Command::DimBound { k } => cmd_dim_bound(&cli, *k),
    }
}

#[derive(Serialize)]
struct VerifyReport {
    colorable: bool,
    parity: bool,
    contexts: usize,
    rays: usize,
    dimension: usize,
    verified_ks: bool,
}

fn cmd_verify_ks(cli: &Cli, input: &str) -> ExitCode {
    let cs = match load_context_set(input) {
        Ok(cs) => cs,
        Err(e) => return fail(2, e),
    };
    let validation = match validate_context_set(&cs) {
        Ok(v) => v,
        Err(e) => return fail(2, e),
    };
    let (graph, _) = match orthogonality_graph(&cs) {
        Ok(g) => g,
        Err(e) => return fail(2, e),
    };
    let coloring = ks_colorable(&cs);
    let parity = is_parity_proof(&graph);
    let report = VerifyReport {
        colorable: coloring.is_some(),
        parity: parity.holds,
        contexts: validation.context_count,
        rays: validation.ray_count,
        dimension: validation.dimension,
        verified_ks: coloring.is_none(),
    };
    let text = format!(
        "contexts: {}\nrays: {}\ndimension: {}\ncolorable: {}\nparity proof: {}\nverified KS set: {}",
        report.contexts,
        report.rays,
        report.dimension,
        report.colorable,
        report.parity,
        report.verified_ks
    );
    let colorable = report.colorable;
    emit(cli.format, report, text);
    if colorable {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

#[derive(Serialize)]
struct ClassifyRecord<'a> {
    source: &'a str,
    #[serde(flatten)]
    report: &'a contextuality::ClassificationReport,
}

fn cmd_classify(cli: &Cli, inputs: &[String], census: bool) -> ExitCode {
    let mut graphs = Vec::new();
    let mut had_errors = false;
    for input in inputs {
        match load_graphs_lenient(input) {
            Ok((mut gs, line_errors)) => {
                graphs.append(&mut gs);
                for e in line_errors {
                    had_errors = true;
                    eprintln!("error: {e}");
                }
            }
            Err(e) => return fail(2, e),
        }
    }
    let plain: Vec<Graph> = graphs.iter().map(|g| g.graph.clone()).collect();
    let outcome = contextuality::corpus_scan(plain, cli.tol, cli.workers);
    for (lg, record) in graphs.iter().zip(&outcome.records) {
        match record {
            Ok(report) => {
                let text = format!(
                    "{}: n={} alpha={} omega={} chi={} theta={:.6} alpha*={} VT={} FC={} cliques={} parity={} symmetric-parity={}",
                    lg.source,
                    report.n,
                    report.alpha,
                    report.omega,
                    report.chi,
                    report.theta,
                    report
                        .alpha_star
                        .as_ref()
                        .map(|r| r.to_string())
                        .unwrap_or_else(|| "n/a".into()),
                    report.vertex_transitive,
                    report.fully_contextual,
                    report.max_clique_count,
                    report.parity_proof,
                    report.symmetric_parity
                );
                emit(
                    cli.format,
                    ClassifyRecord {
                        source: &lg.source,
                        report,
                    },
                    text,
                );
            }
            Err(e) => {
                had_errors = true;
                eprintln!("error: {}: {e}", lg.source);
            }
        }
    }
    if census {
        let text = outcome
            .census
            .iter()
            .map(|row| {
                let pfcvt = row
                    .pfcvt
                    .iter()
                    .map(|e| format!("{} ({})", e.graphs, e.max_cliques))
                    .collect::<Vec<_>>()
                    .join(", ");
                format!("n={}: FCVT={} PFCVT=[{}]", row.n, row.fcvt, pfcvt)
            })
            .collect::<Vec<_>>()
            .join("\n");
        #[derive(Serialize)]
        struct Census<'a> {
            census: &'a [contextuality::CensusRow],
        }
        emit(
            cli.format,
            Census {
                census: &outcome.census,
            },
            text,
        );
    }
    if had_errors {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_inequality(cli: &Cli, input: &str, samples: u64) -> ExitCode {
    let cs = match load_context_set(input) {
        Ok(cs) => cs,
        Err(e) => return fail(2, e),
    };
    let seeds: Vec<u64> = (0..samples).map(|i| cli.seed + i).collect();
    let report = match inequality::inequality_report(&cs, &seeds, cli.budget) {
        Ok(r) => r,
        Err(e @ inequality::InequalityError::BudgetExceeded { .. })
        | Err(e @ inequality::InequalityError::BudgetOverCap(_)) => return fail(3, e),
        Err(e) => return fail(2, e),
    };
    let text = format!(
        "classical max: {} (attained by {} assignments)\nquantum value: {}\nall context products are -I: {}\nstate samples: {:?}",
        report.classical_max,
        report.classical_max_attained_by,
        report
            .quantum_value
            .as_ref()
            .map(|q| q.to_string())
            .unwrap_or_else(|| "state-dependent".into()),
        report
            .per_context_product_is_minus_identity
            .iter()
            .all(|&b| b),
        report
            .state_samples
            .iter()
            .map(|s| s.value)
            .collect::<Vec<_>>()
    );
    emit(cli.format, report, text);
    ExitCode::SUCCESS
}

fn cmd_theta(cli: &Cli, input: &str) -> ExitCode {
    let graphs = match load_graphs(input) {
        Ok(gs) => gs,
        Err(e) => return fail(2, e),
    };
    for lg in &graphs {
        match lovasz_theta(&lg.graph, cli.tol) {
            Ok(result) => {
                let text = format!(
                    "{}: theta={:.7} gap={:.3e} iterations={}",
                    lg.source, result.value, result.duality_gap, result.iterations
                );
                emit(cli.format, result, text);
            }
            Err(e) => return fail(2, format!("{}: {e}", lg.source)),
        }
    }
    ExitCode::SUCCESS
}

fn cmd_export(cli: &Cli, input: &str, format: ExportFormat) -> ExitCode {
    let graphs = match load_graphs(input) {
        Ok(gs) => gs,
        Err(e) => return fail(2, e),
    };
    let _ = cli;
    for lg in &graphs {
        match format {
            ExportFormat::Graph6 => print_line(&to_graph6(&lg.graph)),
            ExportFormat::Dot => {
                let mut out = String::from("graph {\n");
                for v in 0..lg.graph.n() {
                    out.push_str(&format!("  \"{}\";\n", lg.labels[v]));
                }
                for (u, v) in lg.graph.edges() {
                    out.push_str(&format!(
                        "  \"{}\" -- \"{}\";\n",
                        lg.labels[u], lg.labels[v]
                    ));
                }
                out.push('}');
                print_line(&out);
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_dim_bound(cli: &Cli, k: usize) -> ExitCode {
    match johnson_dim_bound(k) {
        Ok(bound) => {
            let text = format!(
                "k={}: minimum extra rows p={}, minimum dimension {}",
                bound.k, bound.min_extra_rows, bound.min_total_dimension
            );
            emit(cli.format, bound, text);
            ExitCode::SUCCESS
        }
        Err(e) => fail(2, e),
    }
}
