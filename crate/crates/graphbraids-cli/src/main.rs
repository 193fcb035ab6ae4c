//! Command-line front end: graph validation, coalgebra and companion
//! printouts, R-matrix export, Yang-Baxter verification, and braid word
//! evaluation.
//!
//! Exit codes: 0 success or verified, 1 verification failed, 2 input or
//! usage error. Reports go to stdout, diagnostics to stderr. Output is
//! byte-identical for fixed inputs and seed, independent of `--jobs`.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use graphbraids::algebra::{format_tensor2, format_tensor3, format_tensor_n};
use graphbraids::braid::{parse_state, BraidRepresentation, BraidWord, RelationReport};
use graphbraids::coalgebra::{is_coassociative, parse_coproduct_file, LCoalgebra};
use graphbraids::companion::CompanionCoalgebra;
use graphbraids::graph::WeightedDigraph;
use graphbraids::random::DEFAULT_SEED;
use graphbraids::ybe::TwoTensorEndo;

#[derive(Parser)]
#[command(
    name = "graphbraids",
    version,
    about = "Markov coalgebras of weighted digraphs, Yang-Baxter solutions, braid actions",
    after_help = "Exit codes: 0 = success/verified, 1 = verification failed, 2 = input/usage error.\n\
                  Braid words apply left to right: in `s1 s2`, s1 acts first."
)]
struct Cli {
    /// Worker threads for verification scans (output does not depend on this)
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Seed echoed in reports and used by sampled checks
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    /// Automorphism from weighted in-neighbourhoods
    Left,
    /// Automorphism from weighted out-neighbourhoods
    Right,
}

#[derive(Args)]
struct Pick {
    /// Which companion automorphism to use
    #[arg(long, value_enum, default_value = "left")]
    side: Side,

    /// Which hat construction to apply (1: psi(y) (x) x, 2: y (x) psi(x))
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    hat: u8,
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph for sinks and sources
    Validate {
        /// Graph file
        graph: PathBuf,
    },
    /// Print the Markov coalgebra of a graph
    Coalgebra { graph: PathBuf },
    /// Print the doubled coalgebra and its four automorphisms
    Companion { graph: PathBuf },
    /// Print the selected R-matrix over the pair basis
    Rmatrix {
        graph: PathBuf,
        #[command(flatten)]
        pick: Pick,
        /// Emit `row col value` triples instead of the matrix format
        #[arg(long)]
        sparse: bool,
    },
    /// Verify the Yang-Baxter equation on all basis triples
    #[command(name = "verify-ybe")]
    VerifyYbe {
        /// Graph file (omit when --matrix is given)
        #[arg(required_unless_present = "matrix", conflicts_with = "matrix")]
        graph: Option<PathBuf>,
        #[command(flatten)]
        pick: Pick,
        /// Verify a map loaded from a matrix file instead
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Verify the braid relations of the induced representation
    #[command(name = "braid-check")]
    BraidCheck {
        graph: PathBuf,
        /// Number of strands
        #[arg(short = 'n', long = "strands", default_value_t = 3)]
        strands: usize,
        #[command(flatten)]
        pick: Pick,
    },
    /// Apply a braid word to a state and print the resulting sum
    #[command(name = "braid-eval")]
    BraidEval {
        graph: PathBuf,
        /// Braid word, e.g. "s1 s2^-1 s1"
        #[arg(long)]
        word: String,
        /// Initial state, e.g. "a (x) b (x) c"
        #[arg(long)]
        state: String,
        /// Number of strands (defaults to the state's arity)
        #[arg(short = 'n', long = "strands")]
        strands: Option<usize>,
        #[command(flatten)]
        pick: Pick,
    },
    /// Reshape a coproduct file into a Markov coalgebra and report
    /// cocommutativity
    Markovize {
        /// Coproduct file; only `delta` lines are consumed
        coalgebra: PathBuf,
        /// Fail unless the input coproduct is coassociative
        #[arg(long)]
        require_coassociative: bool,
    },
    /// Print the support graph of a coalgebra file
    Support {
        coalgebra: PathBuf,
        /// Emit dot syntax instead of the graph file format
        #[arg(long)]
        dot: bool,
    },
}

enum Outcome {
    Pass,
    Fail,
}

type CliResult = Result<Outcome, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut out = String::new();
    let outcome = pool.install(|| run(&cli, &mut out));
    // Tolerate consumers that close the pipe early (e.g. `| head`).
    if let Err(e) = std::io::stdout().write_all(out.as_bytes()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match outcome {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<WeightedDigraph, String> {
    WeightedDigraph::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_companion(path: &Path) -> Result<CompanionCoalgebra, String> {
    let g = load_graph(path)?;
    let lc = LCoalgebra::markov_from_graph(&g).map_err(|e| format!("{}: {e}", path.display()))?;
    CompanionCoalgebra::build(&lc).map_err(|e| format!("{}: {e}", path.display()))
}

fn build_rmatrix(path: &Path, pick: &Pick) -> Result<TwoTensorEndo, String> {
    let companion = load_companion(path)?;
    let psi = match pick.side {
        Side::Left => companion.psi_left(),
        Side::Right => companion.psi_right(),
    };
    let r = match pick.hat {
        1 => TwoTensorEndo::hat1(psi),
        _ => TwoTensorEndo::hat2(psi),
    };
    r.map_err(|e| e.to_string())
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

fn run(cli: &Cli, out: &mut String) -> CliResult {
    match &cli.command {
        Command::Validate { graph } => cmd_validate(out, cli.seed, graph),
        Command::Coalgebra { graph } => {
            let g = load_graph(graph)?;
            let lc = LCoalgebra::markov_from_graph(&g)
                .map_err(|e| format!("{}: {e}", graph.display()))?;
            out.push_str(&lc.to_text());
            Ok(Outcome::Pass)
        }
        Command::Companion { graph } => cmd_companion(out, graph),
        Command::Rmatrix {
            graph,
            pick,
            sparse,
        } => {
            let r = build_rmatrix(graph, pick)?;
            if *sparse {
                out.push_str(&r.to_sparse_text());
            } else {
                out.push_str(&r.to_matrix_text());
            }
            Ok(Outcome::Pass)
        }
        Command::VerifyYbe {
            graph,
            pick,
            matrix,
        } => cmd_verify_ybe(out, cli.seed, graph, pick, matrix),
        Command::BraidCheck {
            graph,
            strands,
            pick,
        } => cmd_braid_check(out, cli.seed, graph, *strands, pick),
        Command::BraidEval {
            graph,
            word,
            state,
            strands,
            pick,
        } => cmd_braid_eval(out, graph, word, state, *strands, pick),
        Command::Markovize {
            coalgebra,
            require_coassociative,
        } => cmd_markovize(out, cli.seed, coalgebra, *require_coassociative),
        Command::Support { coalgebra, dot } => cmd_support(out, coalgebra, *dot),
    }
}

fn cmd_validate(out: &mut String, seed: u64, path: &Path) -> CliResult {
    let g = load_graph(path)?;
    let _ = writeln!(out, "# seed: {seed}");
    let _ = writeln!(
        out,
        "graph: {} vertices, {} arcs",
        g.vertex_count(),
        g.arc_count()
    );
    let _ = writeln!(
        out,
        "row-stochastic: {}",
        if g.is_row_stochastic() { "yes" } else { "no" }
    );
    let report = g.validate_no_sink_no_source();
    for v in &report.sources {
        let _ = writeln!(out, "source: {v}");
    }
    for v in &report.sinks {
        let _ = writeln!(out, "sink: {v}");
    }
    if report.is_valid() {
        let _ = writeln!(out, "ok: no sinks, no sources");
        Ok(Outcome::Pass)
    } else {
        let _ = writeln!(
            out,
            "invalid: {} source(s), {} sink(s)",
            report.sources.len(),
            report.sinks.len()
        );
        Ok(Outcome::Fail)
    }
}

fn cmd_companion(out: &mut String, path: &Path) -> CliResult {
    let companion = load_companion(path)?;
    out.push_str(&companion.full().to_text());
    for (name, endo) in [
        ("psi_left", companion.psi_left()),
        ("phi_left", companion.phi_left()),
        ("psi_right", companion.psi_right()),
        ("phi_right", companion.phi_right()),
    ] {
        let _ = writeln!(out, "# {name}");
        out.push_str(&endo.to_text());
    }
    Ok(Outcome::Pass)
}

fn cmd_verify_ybe(
    out: &mut String,
    seed: u64,
    graph: &Option<PathBuf>,
    pick: &Pick,
    matrix: &Option<PathBuf>,
) -> CliResult {
    let _ = writeln!(out, "# seed: {seed}");
    let r = match (graph, matrix) {
        (_, Some(path)) => {
            let r = TwoTensorEndo::parse_matrix(&read(path)?)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            let _ = writeln!(out, "map: {} (dim {})", path.display(), r.dim());
            r
        }
        (Some(path), None) => {
            let r = build_rmatrix(path, pick)?;
            let _ = writeln!(
                out,
                "map: side={} hat={} (dim {})",
                side_name(pick.side),
                pick.hat,
                r.dim()
            );
            r
        }
        (None, None) => unreachable!("clap enforces one source"),
    };
    let report = r.verify_ybe();
    let _ = writeln!(out, "triples: {}", report.triples_checked);
    match report.counterexample {
        None => {
            let _ = writeln!(out, "YBE: PASS");
            Ok(Outcome::Pass)
        }
        Some(cx) => {
            let (x, y, z) = &cx.triple;
            let _ = writeln!(out, "YBE: FAIL at {x} (x) {y} (x) {z}");
            let _ = writeln!(out, "lhs: {}", format_tensor3(&cx.lhs, r.basis()));
            let _ = writeln!(out, "rhs: {}", format_tensor3(&cx.rhs, r.basis()));
            Ok(Outcome::Fail)
        }
    }
}

fn print_relation_report(
    out: &mut String,
    report: &RelationReport,
    basis: &graphbraids::Basis,
) -> bool {
    for check in &report.checks {
        let mode = if check.sampled {
            "sampled"
        } else {
            "exhaustive"
        };
        match &check.counterexample {
            None => {
                let _ = writeln!(
                    out,
                    "check: {} ... PASS ({mode}, {} states)",
                    check.description, check.states_checked
                );
            }
            Some(state) => {
                let _ = writeln!(
                    out,
                    "check: {} ... FAIL at {}",
                    check.description,
                    format_tensor_n(state, basis)
                );
            }
        }
    }
    report.holds()
}

fn cmd_braid_check(
    out: &mut String,
    seed: u64,
    path: &Path,
    strands: usize,
    pick: &Pick,
) -> CliResult {
    let r = build_rmatrix(path, pick)?;
    let rep = BraidRepresentation::new(r, strands).map_err(|e| e.to_string())?;
    let _ = writeln!(out, "# seed: {seed}");
    let _ = writeln!(
        out,
        "representation: side={} hat={} dim={} strands={}",
        side_name(pick.side),
        pick.hat,
        rep.dim(),
        strands
    );
    let report = rep.verify_relations(seed);
    let ok = print_relation_report(out, &report, rep.basis());
    if ok {
        let _ = writeln!(out, "braid relations: PASS");
        Ok(Outcome::Pass)
    } else {
        let _ = writeln!(out, "braid relations: FAIL");
        Ok(Outcome::Fail)
    }
}

fn cmd_braid_eval(
    out: &mut String,
    path: &Path,
    word: &str,
    state_text: &str,
    strands: Option<usize>,
    pick: &Pick,
) -> CliResult {
    let first_term = state_text.split('+').next().unwrap_or("");
    let arity = first_term.matches("(x)").count() + 1;
    let strands = match strands {
        Some(n) if n != arity => {
            return Err(format!("state has {arity} factors but --strands is {n}"));
        }
        Some(n) => n,
        None => arity,
    };
    let state = parse_state(state_text, strands).map_err(|e| e.to_string())?;
    let word = BraidWord::parse(word, strands).map_err(|e| e.to_string())?;
    let r = build_rmatrix(path, pick)?;
    let rep = BraidRepresentation::new(r, strands).map_err(|e| e.to_string())?;
    let result = rep
        .evaluate_word(&word, &state)
        .map_err(|e| e.to_string())?;
    let _ = writeln!(out, "{}", format_tensor_n(&result, rep.basis()));
    Ok(Outcome::Pass)
}

fn cmd_markovize(
    out: &mut String,
    seed: u64,
    path: &Path,
    require_coassociative: bool,
) -> CliResult {
    let (basis, delta, ignored_tilde) =
        parse_coproduct_file(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    if ignored_tilde > 0 {
        eprintln!(
            "warning: ignored {ignored_tilde} tilde line(s); markovize consumes delta lines only"
        );
    }
    if require_coassociative && !is_coassociative(&basis, &delta) {
        let _ = writeln!(out, "# seed: {seed}");
        let _ = writeln!(out, "# coassociative: no");
        return Ok(Outcome::Fail);
    }
    let m = LCoalgebra::markovize(basis, &delta).map_err(|e| format!("{}: {e}", path.display()))?;
    let _ = writeln!(out, "# seed: {seed}");
    out.push_str(&m.to_text());
    for label in m.empty_coproduct_labels() {
        eprintln!(
            "warning: empty coproduct at {label}; the support graph has a sink or source there"
        );
    }
    let report = m.is_l_cocommutative();
    if report.is_cocommutative() {
        let _ = writeln!(out, "# L-cocommutative: yes");
        let _ = writeln!(out, "# representations: one representation");
    } else {
        let _ = writeln!(out, "# L-cocommutative: no");
        for (label, defect) in &report.defects {
            let _ = writeln!(
                out,
                "# defect {label} = {}",
                format_tensor2(defect, m.basis())
            );
        }
        let _ = writeln!(out, "# representations: two distinct R-matrices available");
    }
    Ok(Outcome::Pass)
}

fn cmd_support(out: &mut String, path: &Path, dot: bool) -> CliResult {
    let lc = LCoalgebra::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let support = lc
        .geometric_support()
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let report = support.validate_no_sink_no_source();
    if !report.is_valid() {
        eprintln!(
            "warning: support has {} source(s) and {} sink(s)",
            report.sources.len(),
            report.sinks.len()
        );
    }
    if dot {
        out.push_str(&support.to_dot());
    } else {
        out.push_str(&support.to_text());
    }
    Ok(Outcome::Pass)
}
