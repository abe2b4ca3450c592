//! End-to-end tests of the `klimm` binary: every subcommand, the exit-code
//! contract, the stdout/stderr split, and byte-level determinism of seeded
//! output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn klimm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klimm"))
        .args(args)
        .env_remove("KLIMM_MAX_N")
        .output()
        .expect("failed to spawn klimm")
}

fn klimm_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klimm"))
        .args(args)
        .env_remove("KLIMM_MAX_N")
        .env(key, value)
        .output()
        .expect("failed to spawn klimm")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is not UTF-8")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is not UTF-8")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_str(out)).expect("stdout is not JSON")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("killed by signal")
}

/// A scratch path under the target-specific temp dir, removed on drop.
struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Self {
        let mut p = std::env::temp_dir();
        p.push(format!("klimm-cli-test-{}-{}", std::process::id(), name));
        Scratch(p)
    }

    fn as_str(&self) -> &str {
        self.0.to_str().unwrap()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

// ---------------------------------------------------------------- gen

#[test]
fn gen_writes_deterministic_json() {
    let a = klimm(&["gen", "--n", "4", "--k", "2", "--seed", "7"]);
    let b = klimm(&["gen", "--n", "4", "--k", "2", "--seed", "7"]);
    assert_eq!(exit_code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "same flags and seed must be byte-identical");

    let rows = stdout_json(&a);
    let rows = rows.as_array().expect("matrix JSON is an array of rows");
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 4));

    let c = klimm(&["gen", "--n", "4", "--k", "2", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout, "different seed must change the matrix");
}

#[test]
fn gen_file_output_matches_stdout_and_logs_to_stderr() {
    let path = Scratch::new("gen-out.json");
    let filed = klimm(&["gen", "--n", "3", "--k", "1", "--seed", "11", "--out", path.as_str()]);
    assert_eq!(exit_code(&filed), 0);
    assert!(filed.stdout.is_empty(), "file mode keeps stdout clean");
    assert!(stderr_str(&filed).contains("1-positive"));

    let piped = klimm(&["gen", "--n", "3", "--k", "1", "--seed", "11"]);
    let on_disk = std::fs::read(&path.0).unwrap();
    assert_eq!(on_disk, piped.stdout);
}

#[test]
fn gen_csv_round_trips_shape() {
    let out = klimm(&["gen", "--n", "3", "--k", "3", "--seed", "5", "--format", "csv"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.split(',').count() == 3));
}

#[test]
fn gen_rejects_k_larger_than_n() {
    let out = klimm(&["gen", "--n", "3", "--k", "5", "--seed", "1"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_str(&out).contains("out of range"));
}

// ---------------------------------------------------------------- imm

fn write_two_positive_matrix() -> Scratch {
    let path = Scratch::new("imm-m.json");
    let out = klimm(&["gen", "--n", "4", "--k", "2", "--seed", "7", "--out", path.as_str()]);
    assert_eq!(exit_code(&out), 0);
    path
}

#[test]
fn imm_all_methods_agree_and_predict_sign() {
    let path = write_two_positive_matrix();
    let out = klimm(&["imm", "--v", "2413", "--matrix", path.as_str()]);
    assert_eq!(exit_code(&out), 0);

    let v = stdout_json(&out);
    assert_eq!(v["v"], "2413");
    assert_eq!(v["agreement"], true);
    assert_eq!(v["k_condition"], 2);
    assert_eq!(v["sign_prediction"]["sign"], 1);
    let methods: Vec<&str> = v["methods"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m.as_str().unwrap())
        .collect();
    assert_eq!(
        methods,
        ["generic", "kl_full", "kl_avoiding_sum", "determinantal"]
    );
    let value = v["value"].as_str().unwrap();
    assert!(!value.starts_with('-') && value != "0", "2-positive input forces a positive value");
}

#[test]
fn imm_single_method_prints_full_report() {
    let path = write_two_positive_matrix();
    let every = klimm(&["imm", "--v", "2413", "--matrix", path.as_str()]);
    let single = klimm(&[
        "imm",
        "--v",
        "2413",
        "--matrix",
        path.as_str(),
        "--method",
        "determinantal",
    ]);
    assert_eq!(exit_code(&single), 0);
    let combined = stdout_json(&every);
    let report = stdout_json(&single);
    assert_eq!(report["method"], "determinantal");
    assert_eq!(report["v"], serde_json::json!([2, 4, 1, 3]));
    assert_eq!(report["value"], combined["value"]);
    assert_eq!(report["sign_prediction"]["sign"], 1);
    assert_eq!(report["k_condition"], 2);
}

#[test]
fn imm_pattern_violation_exits_2_with_witness() {
    let path = write_two_positive_matrix();
    let out = klimm(&[
        "imm",
        "--v",
        "1324",
        "--matrix",
        path.as_str(),
        "--method",
        "determinantal",
    ]);
    assert_eq!(exit_code(&out), 2);
    let err = stderr_str(&out);
    assert!(err.contains("1324"), "witness names the pattern: {err}");
    assert!(err.contains("positions"), "witness lists positions: {err}");
}

#[test]
fn imm_missing_file_exits_1() {
    let out = klimm(&["imm", "--v", "2413", "--matrix", "/nonexistent/m.json"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn imm_rank_mismatch_exits_2() {
    let path = write_two_positive_matrix();
    let out = klimm(&["imm", "--v", "21", "--matrix", path.as_str()]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_str(&out).contains("rank"));
}

// ---------------------------------------------------------------- graph / boxes

#[test]
fn graph_reports_cells_and_largest_square() {
    let out = klimm(&["graph", "--v", "34512", "--mode", "anti"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["v"], "34512");
    assert_eq!(v["mode"], "anti");
    assert_eq!(v["n"], 5);
    assert_eq!(v["largest_square"], 3);
    assert!(!v["cells"].as_array().unwrap().is_empty());
    assert!(v.get("boxes").is_none(), "boxes appear only on request");
}

#[test]
fn graph_boxes_flag_embeds_boxes() {
    let plain = klimm(&["graph", "--v", "34512", "--mode", "anti", "--boxes"]);
    assert_eq!(exit_code(&plain), 0);
    let graph_json = stdout_json(&plain);
    let embedded = graph_json["boxes"].as_array().unwrap();

    let direct = klimm(&["boxes", "--v", "34512", "--mode", "anti"]);
    assert_eq!(exit_code(&direct), 0);
    let boxes_json = stdout_json(&direct);
    assert_eq!(boxes_json["count"], embedded.len() as u64);
    assert_eq!(boxes_json["boxes"], graph_json["boxes"]);

    // Independently pin the boxes of this permutation: two maximal squares.
    assert_eq!(embedded.len(), 2);
    assert_eq!(embedded[0]["side"], 3);
    assert_eq!(embedded[0]["corner"], serde_json::json!([1, 3]));
    assert_eq!(embedded[1]["side"], 2);
}

#[test]
fn graph_render_prints_ascii_picture() {
    let out = klimm(&["graph", "--v", "34512", "--mode", "anti", "--render"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    assert!(
        !text.trim_start().starts_with('{'),
        "--render replaces JSON with the picture"
    );
    assert!(text.contains('X') || text.contains('.'));
}

#[test]
fn graph_rejects_malformed_permutation() {
    let out = klimm(&["graph", "--v", "1135", "--mode", "anti"]);
    assert_eq!(exit_code(&out), 2);
}

// ---------------------------------------------------------------- verify

#[test]
fn verify_runs_and_is_byte_deterministic() {
    let args = [
        "verify",
        "--suite",
        "lewis-carroll",
        "--suite",
        "tenner",
        "--n-max",
        "4",
        "--samples",
        "3",
        "--seed",
        "5",
        "--format",
        "csv",
    ];
    let a = klimm(&args);
    let b = klimm(&args);
    assert_eq!(exit_code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "fixed flags and seed are byte-identical");

    let text = stdout_str(&a);
    assert!(text.starts_with("# klimm verify CSV v1"));
    assert!(text.lines().count() > 2);
    assert!(stderr_str(&a).contains("suite lewis-carroll:"));

    let mut reseeded_args = args;
    reseeded_args[9] = "6";
    let c = klimm(&reseeded_args);
    assert_ne!(a.stdout, c.stdout, "a new seed draws new samples");
}

#[test]
fn verify_json_reports_every_case() {
    let out = klimm(&[
        "verify", "--suite", "tenner", "--n-max", "4", "--samples", "1", "--seed", "1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["ok"], true);
    let suites = v["suites"].as_array().expect("envelope lists suites");
    assert_eq!(suites.len(), 1);
    let suite = &suites[0];
    assert_eq!(suite["suite"], "tenner");
    assert_eq!(suite["failed"], 0);
    let cases = suite["cases"].as_array().expect("suite lists cases");
    assert!(!cases.is_empty());
    assert_eq!(suite["passed"], cases.len() as u64);
    for case in cases {
        assert_eq!(case["pass"], true);
        assert!(case["case"].is_string());
    }
}

#[test]
fn verify_output_file_matches_stdout() {
    let path = Scratch::new("verify-out.csv");
    let filed = klimm(&[
        "verify", "--suite", "tenner", "--n-max", "4", "--samples", "1", "--seed", "1",
        "--format", "csv", "--output", path.as_str(),
    ]);
    assert_eq!(exit_code(&filed), 0);
    assert!(filed.stdout.is_empty());

    let piped = klimm(&[
        "verify", "--suite", "tenner", "--n-max", "4", "--samples", "1", "--seed", "1",
        "--format", "csv",
    ]);
    assert_eq!(std::fs::read(&path.0).unwrap(), piped.stdout);
}

#[test]
fn verify_list_names_all_suites() {
    let out = klimm(&["verify", "--list"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    let names = v["suites"].as_array().unwrap();
    assert_eq!(names.len(), 27);
    assert!(names.iter().any(|s| s == "thm-main"));
    assert!(names.iter().any(|s| s == "conjecture-pyl"));
}

#[test]
fn verify_rejects_unknown_suite_before_running() {
    let out = klimm(&["verify", "--suite", "bogus", "--samples", "1", "--seed", "1"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_str(&out).contains("unknown suite"));
}

#[test]
fn verify_requires_samples_and_seed() {
    let out = klimm(&["verify", "--suite", "tenner", "--seed", "1"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_str(&out).contains("--samples"));

    let out = klimm(&["verify", "--suite", "tenner", "--samples", "1"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_str(&out).contains("--seed"));
}

#[test]
fn verify_logs_no_counterexample_line() {
    let out = klimm(&[
        "verify",
        "--suite",
        "conjecture-pyl",
        "--n-max",
        "4",
        "--samples",
        "2",
        "--seed",
        "3",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(stderr_str(&out).contains("no counterexample found"));
}

#[test]
fn verify_jobs_flag_does_not_change_output() {
    let base = [
        "verify", "--suite", "det-oracle", "--n-max", "4", "--samples", "2", "--seed", "9",
        "--format", "csv",
    ];
    let serial: Vec<&str> = base.iter().copied().chain(["--jobs", "1"]).collect();
    let parallel: Vec<&str> = base.iter().copied().chain(["--jobs", "4"]).collect();
    let a = klimm(&serial);
    let b = klimm(&parallel);
    assert_eq!(exit_code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "thread count must not leak into reports");
}

// ---------------------------------------------------------------- kl

#[test]
fn kl_prints_known_polynomial() {
    let out = klimm(&["kl", "--x", "1234", "--y", "3412"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["coeffs"], serde_json::json!([1, 1]));
    assert_eq!(v["at_one"], 2);

    let trivial = klimm(&["kl", "--x", "3412", "--y", "3412"]);
    let v = stdout_json(&trivial);
    assert_eq!(v["coeffs"], serde_json::json!([1]));
}

#[test]
fn kl_rejects_rank_mismatch() {
    let out = klimm(&["kl", "--x", "123", "--y", "3412"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn kl_rank_cap_follows_environment() {
    let capped = klimm_env(&["kl", "--x", "12345", "--y", "45123"], "KLIMM_MAX_N", "4");
    assert_eq!(exit_code(&capped), 2);
    assert!(stderr_str(&capped).contains("limit"));

    let default = klimm(&["kl", "--x", "12345", "--y", "45123"]);
    assert_eq!(exit_code(&default), 0, "default cap admits rank 5");
}

// ---------------------------------------------------------------- parsing

#[test]
fn comma_separated_permutations_reach_rank_ten() {
    let out = klimm(&["boxes", "--v", "10,2,1,3,4,5,6,7,8,9", "--mode", "anti"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["v"], "10,2,1,3,4,5,6,7,8,9");
}
