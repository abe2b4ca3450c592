//! `klimm`: exact Kazhdan-Lusztig immanants, Bruhat interval graphs, and
//! matrix k-positivity from the command line.
//!
//! Output discipline: machine-parsable JSON (or CSV, where offered) on
//! stdout, human logs on stderr. Exit codes: 0 success, 1 I/O trouble,
//! 2 precondition or flag violations (pattern witnesses included),
//! 3 property failures found by `verify`, 4 matrix generation failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use klimm::immanant::{report, require_sign_theory_patterns, ImmanantReport, Method};
use klimm::io;
use klimm::kl::KlCache;
use klimm::linalg::{gen, RatMatrix};
use klimm::perm::Permutation;
use klimm::region::{bounding_boxes, lower_interval_graph, upper_interval_graph, Convention};
use klimm::suites::{reports_to_csv, reports_to_json, run_suites, suite_names, SweepConfig};

/// Default cap on the rank accepted by the Kazhdan-Lusztig table routes;
/// the `KLIMM_MAX_N` environment variable overrides it.
const DEFAULT_MAX_N: usize = 6;

fn env_max_n() -> usize {
    std::env::var("KLIMM_MAX_N")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

/// A command failure carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

type CmdResult = Result<(), Failure>;

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

/// Domain errors keep the exit-code contract: pattern and flag
/// preconditions exit 2, generation failure exits 4, internal trouble 1.
fn domain(e: klimm::Error) -> Failure {
    let code = match &e {
        klimm::Error::GenerationFailed { .. } => 4,
        klimm::Error::Internal(_) => 1,
        _ => 2,
    };
    fail(code, e.to_string())
}

fn io_failure(e: klimm::Error) -> Failure {
    fail(1, e.to_string())
}

fn parse_perm(s: &str) -> Result<Permutation, Failure> {
    Permutation::from_str(s).map_err(domain)
}

fn print_json(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON value always serializes")
    );
}

#[derive(Parser)]
#[command(
    name = "klimm",
    version,
    about = "Exact Kazhdan-Lusztig immanants, interval graphs, and k-positivity sweeps",
    after_help = "Permutations are written as digit strings for rank <= 9 (e.g. 2413) or \
                  comma-separated images beyond (e.g. 10,2,1,3,4,5,6,7,8,9). JSON goes to \
                  stdout, logs to stderr. KLIMM_MAX_N raises the Kazhdan-Lusztig rank cap."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the signed immanant of a permutation on a matrix file.
    Imm(ImmArgs),
    /// Print an interval graph as JSON, optionally with bounding boxes.
    Graph(GraphArgs),
    /// Run verification suites and report every case with its witness.
    Verify(VerifyArgs),
    /// Generate a seeded k-positive matrix and write it as JSON or CSV.
    Gen(GenArgs),
    /// Print one Kazhdan-Lusztig polynomial.
    Kl(KlArgs),
    /// Print the maximal bounding boxes of a permutation.
    Boxes(BoxesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Cross-check every route applicable to this permutation and rank.
    All,
    /// Weighted sum over all permutations (weights from the KL table).
    Generic,
    /// Signed Kazhdan-Lusztig coefficient sum.
    #[value(name = "kl_full")]
    KlFull,
    /// Signed sum over the upper Bruhat interval (needs pattern avoidance).
    #[value(name = "kl_avoiding_sum")]
    KlAvoidingSum,
    /// Signed determinant of the region-restricted matrix (needs avoidance).
    Determinantal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Region of the upper interval [v, w0]; squares hang off the antidiagonal.
    Anti,
    /// Region of the lower interval [e, v]; squares hang off the diagonal.
    Diag,
}

impl ModeArg {
    fn convention(self) -> Convention {
        match self {
            ModeArg::Anti => Convention::Anti,
            ModeArg::Diag => Convention::Diag,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            ModeArg::Anti => "anti",
            ModeArg::Diag => "diag",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct ImmArgs {
    /// Permutation, e.g. 2413.
    #[arg(long)]
    v: String,
    /// Matrix file: .json (entries as "p/q" strings) or CSV.
    #[arg(long)]
    matrix: PathBuf,
    /// Evaluation route.
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    method: MethodArg,
}

#[derive(Args)]
struct GraphArgs {
    /// Permutation, e.g. 14253.
    #[arg(long)]
    v: String,
    /// Which interval the region belongs to.
    #[arg(long, value_enum, default_value_t = ModeArg::Anti)]
    mode: ModeArg,
    /// Include the maximal bounding boxes in the output.
    #[arg(long)]
    boxes: bool,
    /// Print the plain-text picture alone instead of JSON.
    #[arg(long)]
    render: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run; repeatable. Omit to run every registered suite.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// List the registered suites and exit.
    #[arg(long)]
    list: bool,
    /// Rank bound for the sweeps.
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    /// Monte-Carlo samples per case family (mandatory for sweeps).
    #[arg(long)]
    samples: Option<usize>,
    /// Base seed; every random draw derives from it (mandatory for sweeps).
    #[arg(long)]
    seed: Option<u64>,
    /// Report format printed to stdout.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads for the sweeps; defaults to all cores.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    /// Matrix size.
    #[arg(long)]
    n: usize,
    /// Positivity rank: all minors of size <= k come out positive, and for
    /// k < n some minor of size k+1 is negative. Defaults to n (totally
    /// positive).
    #[arg(long)]
    k: Option<usize>,
    /// Seed; the same flags and seed always produce the identical file.
    #[arg(long)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Serialization format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Args)]
struct KlArgs {
    /// Lower permutation.
    #[arg(long)]
    x: String,
    /// Upper permutation (same rank).
    #[arg(long)]
    y: String,
}

#[derive(Args)]
struct BoxesArgs {
    /// Permutation.
    #[arg(long)]
    v: String,
    /// Which diagonal anchors the boxes.
    #[arg(long, value_enum, default_value_t = ModeArg::Anti)]
    mode: ModeArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Imm(args) => cmd_imm(args),
        Cmd::Graph(args) => cmd_graph(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Kl(args) => cmd_kl(args),
        Cmd::Boxes(args) => cmd_boxes(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_matrix(path: &Path) -> Result<RatMatrix, Failure> {
    io::matrix_from_path(path).map_err(io_failure)
}

fn run_report(
    v: &Permutation,
    m: &RatMatrix,
    method: Method,
    cache: &mut KlCache,
) -> Result<ImmanantReport, Failure> {
    report(v, m, method, cache).map_err(domain)
}

fn cmd_imm(args: ImmArgs) -> CmdResult {
    let v = parse_perm(&args.v)?;
    let m = load_matrix(&args.matrix)?;
    let mut cache = KlCache::with_max_n(env_max_n());

    let single = match args.method {
        MethodArg::Generic => Some(Method::Generic),
        MethodArg::KlFull => Some(Method::KlFull),
        MethodArg::KlAvoidingSum => Some(Method::KlAvoidingSum),
        MethodArg::Determinantal => Some(Method::Determinantal),
        MethodArg::All => None,
    };
    if let Some(method) = single {
        let r = run_report(&v, &m, method, &mut cache)?;
        print!("{}", io::report_to_json_string(&r));
        return Ok(());
    }

    // method = all: run every route this permutation and rank support,
    // then require exact agreement.
    let n = v.n();
    let mut methods = Vec::new();
    if n <= env_max_n() {
        methods.push(Method::Generic);
        methods.push(Method::KlFull);
    } else {
        eprintln!(
            "skipping generic and kl_full routes: rank {n} exceeds the table cap {} \
             (raise KLIMM_MAX_N to override)",
            env_max_n()
        );
    }
    match require_sign_theory_patterns(&v) {
        Ok(()) => {
            // The interval-sum route enumerates S_n and has its own cap.
            if n <= 7 {
                methods.push(Method::KlAvoidingSum);
            } else {
                eprintln!("skipping kl_avoiding_sum route: rank {n} exceeds the enumeration cap 7");
            }
            methods.push(Method::Determinantal);
        }
        Err(e) => eprintln!("skipping kl_avoiding_sum and determinantal routes: {e}"),
    }
    if methods.is_empty() {
        // Nothing applies: surface the pattern obstruction as the error.
        let e = require_sign_theory_patterns(&v).expect_err("no route applied");
        return Err(domain(e));
    }

    let mut reports = Vec::new();
    for method in &methods {
        reports.push(run_report(&v, &m, *method, &mut cache)?);
    }
    let agreement = reports.iter().all(|r| r.value == reports[0].value);
    let combined = json!({
        "v": args.v.trim(),
        "value": io::rational_to_string(&reports[0].value),
        "methods": reports.iter().map(|r| r.method.as_str()).collect::<Vec<_>>(),
        "agreement": agreement,
        "sign_prediction": reports[0].sign_prediction.as_ref().map(|p| json!({
            "sign": p.sign,
            "justification": p.justification,
        })),
        "k_condition": reports[0].k_condition,
    });
    print_json(&combined);
    if !agreement {
        return Err(fail(3, "evaluation routes disagree".to_string()));
    }
    Ok(())
}

fn cmd_graph(args: GraphArgs) -> CmdResult {
    let v = parse_perm(&args.v)?;
    let region = match args.mode {
        ModeArg::Anti => upper_interval_graph(&v),
        ModeArg::Diag => lower_interval_graph(&v),
    };
    if args.render {
        print!("{}", region.render(Some(&v)));
        return Ok(());
    }
    let mut doc = json!({
        "v": args.v.trim(),
        "mode": args.mode.as_str(),
        "n": region.n(),
        "largest_square": region.largest_square(),
        "cells": region.cells(),
        "picture": region.render(Some(&v)),
    });
    if args.boxes {
        let boxes = bounding_boxes(&v, args.mode.convention()).map_err(domain)?;
        doc["boxes"] = boxes_to_json(&boxes, region.n(), args.mode.convention());
    }
    print_json(&doc);
    Ok(())
}

fn boxes_to_json(
    boxes: &[klimm::region::BoundingBox],
    n: usize,
    convention: Convention,
) -> Value {
    Value::Array(
        boxes
            .iter()
            .map(|b| {
                json!({
                    "corner": [b.corner.0, b.corner.1],
                    "rows": [b.row_range().0, b.row_range().1],
                    "cols": [b.col_range(n, convention).0, b.col_range(n, convention).1],
                    "side": b.side(),
                    "color": b.color.to_string(),
                })
            })
            .collect(),
    )
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    if args.list {
        let doc = json!({ "suites": suite_names() });
        print_json(&doc);
        return Ok(());
    }
    let samples = args
        .samples
        .ok_or_else(|| fail(2, "--samples is required for sweeps"))?;
    let seed = args
        .seed
        .ok_or_else(|| fail(2, "--seed is required for sweeps"))?;
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| fail(2, format!("cannot configure {jobs} worker threads: {e}")))?;
    }
    let config = SweepConfig::new(args.n_max, samples, seed).map_err(domain)?;
    let names: Vec<String> = if args.suites.is_empty() {
        suite_names().iter().map(|s| s.to_string()).collect()
    } else {
        args.suites.clone()
    };
    let reports = run_suites(&names, &config).map_err(domain)?;

    let mut failed = 0usize;
    for r in &reports {
        eprintln!(
            "suite {}: {}/{} cases passed",
            r.suite,
            r.passed(),
            r.cases.len()
        );
        for c in &r.cases {
            if !c.pass {
                failed += 1;
                eprintln!("FAIL {}/{}: {}", r.suite, c.case, c.witness);
            } else if c.witness.contains("no counterexample found") {
                // Absence-of-evidence outcomes deserve their own log line.
                eprintln!("{}/{}: {}", r.suite, c.case, c.witness);
            }
        }
    }

    let rendered = match args.format {
        FormatArg::Json => {
            let mut s =
                serde_json::to_string_pretty(&reports_to_json(&reports)).expect("report JSON");
            s.push('\n');
            s
        }
        FormatArg::Csv => reports_to_csv(&reports),
    };
    match &args.output {
        Some(path) => {
            std::fs::write(path, rendered)
                .map_err(|e| fail(1, format!("cannot write {}: {e}", path.display())))?;
            eprintln!("wrote report to {}", path.display());
        }
        None => print!("{rendered}"),
    }
    if failed > 0 {
        return Err(fail(3, format!("{failed} case(s) failed")));
    }
    Ok(())
}

fn cmd_gen(args: GenArgs) -> CmdResult {
    let k = args.k.unwrap_or(args.n);
    let m = gen::k_positive(args.n, k, args.seed).map_err(domain)?;
    let rendered = match args.format {
        FormatArg::Json => io::matrix_to_json_string(&m),
        FormatArg::Csv => io::matrix_to_csv_string(&m),
    };
    match &args.out {
        Some(path) => {
            std::fs::write(path, rendered)
                .map_err(|e| fail(1, format!("cannot write {}: {e}", path.display())))?;
            eprintln!(
                "wrote a {0}x{0} {k}-positive matrix (seed {1}) to {2}",
                args.n,
                args.seed,
                path.display()
            );
        }
        None => print!("{rendered}"),
    }
    Ok(())
}

fn cmd_kl(args: KlArgs) -> CmdResult {
    let x = parse_perm(&args.x)?;
    let y = parse_perm(&args.y)?;
    let mut cache = KlCache::with_max_n(env_max_n());
    let p = cache.polynomial(&x, &y).map_err(domain)?;
    let doc = json!({
        "x": args.x.trim(),
        "y": args.y.trim(),
        "coeffs": p.coeffs(),
        "at_one": p.eval_at_one(),
    });
    print_json(&doc);
    Ok(())
}

fn cmd_boxes(args: BoxesArgs) -> CmdResult {
    let v = parse_perm(&args.v)?;
    let convention = args.mode.convention();
    let boxes = bounding_boxes(&v, convention).map_err(domain)?;
    let doc = json!({
        "v": args.v.trim(),
        "mode": args.mode.as_str(),
        "count": boxes.len(),
        "boxes": boxes_to_json(&boxes, v.n(), convention),
    });
    print_json(&doc);
    Ok(())
}

