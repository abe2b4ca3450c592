//! Named verification suites: exhaustive small-rank property checks and
//! seeded Monte-Carlo sweeps over every claim the library implements.
//!
//! Each suite is a pure function from a [`SweepConfig`] to a list of
//! [`CaseResult`]s. Failures carry a complete witness (the permutation, the
//! sample seed, the offending value) so a reported failure can be replayed
//! in isolation. Suites clamp the configured rank bound to the largest rank
//! at which they are exhaustive by design; sample counts scale with
//! `config.samples`.
//!
//! Results are deterministic for a fixed configuration: per-case seeds are
//! derived by hashing stable labels, parallel iteration preserves order,
//! and cases are sorted by key before reporting.

mod boxes;
mod core;
mod immanants;

use serde_json::{json, Value};

use crate::linalg::{gen, Rat, RatMatrix};
use crate::perm::Permutation;
use crate::region::Region;
use crate::{Error, Result};

/// Frozen Kazhdan-Lusztig tables, embedded so sweeps can run against them
/// without touching the filesystem. Entries list exactly the comparable
/// pairs whose polynomial differs from 1.
pub const GOLDEN_KL_S4: &str = include_str!("golden/kl-s4.json");
pub const GOLDEN_KL_S5: &str = include_str!("golden/kl-s5.json");

/// Configuration for a suite run.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Largest rank to exercise; suites clamp this to their own exhaustive
    /// bound.
    pub n_max: usize,
    /// Monte-Carlo samples per case, where the suite samples at all.
    pub samples: usize,
    /// Base seed; all per-case seeds are derived from it.
    pub seed: u64,
}

impl SweepConfig {
    pub fn new(n_max: usize, samples: usize, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::Invalid {
                what: "sweep config",
                msg: "samples must be at least 1".into(),
            });
        }
        if n_max == 0 {
            return Err(Error::Invalid {
                what: "sweep config",
                msg: "n_max must be at least 1".into(),
            });
        }
        Ok(SweepConfig {
            n_max,
            samples,
            seed,
        })
    }
}

/// Outcome of one check inside a suite.
#[derive(Debug, Clone)]
pub struct CaseResult {
    pub suite: &'static str,
    /// Stable key; cases are sorted by it, so it doubles as the merge key
    /// for parallel runs.
    pub case: String,
    pub pass: bool,
    /// Failure witness or informational detail.
    pub witness: String,
    pub v: Option<String>,
    pub method: Option<&'static str>,
    pub k: Option<usize>,
    pub sample_seed: Option<u64>,
    pub value_sign: Option<i8>,
    pub value: Option<String>,
}

impl CaseResult {
    pub fn new(case: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        CaseResult {
            suite: "",
            case: case.into(),
            pass,
            witness: witness.into(),
            v: None,
            method: None,
            k: None,
            sample_seed: None,
            value_sign: None,
            value: None,
        }
    }

    pub fn ok(case: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(case, true, witness)
    }

    pub fn fail(case: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(case, false, witness)
    }

    pub fn with_v(mut self, v: &Permutation) -> Self {
        self.v = Some(v.to_string());
        self
    }

    pub fn with_method(mut self, method: &'static str) -> Self {
        self.method = Some(method);
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_sample_seed(mut self, seed: u64) -> Self {
        self.sample_seed = Some(seed);
        self
    }

    pub fn with_value(mut self, value: &Rat) -> Self {
        self.value_sign = Some(crate::linalg::sign(value));
        self.value = Some(crate::io::rational_to_string(value));
        self
    }
}

/// All results of one suite, cases sorted by key.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub description: &'static str,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    /// First failing case, if any — the natural thing to show a human.
    pub fn first_failure(&self) -> Option<&CaseResult> {
        self.cases.iter().find(|c| !c.pass)
    }
}

type SuiteFn = fn(&SweepConfig) -> Result<Vec<CaseResult>>;

/// A named suite: what it checks and how to run it.
pub struct SuiteDef {
    pub name: &'static str,
    pub description: &'static str,
    run: SuiteFn,
}

/// The registry of every named suite, in display order.
pub fn registry() -> &'static [SuiteDef] {
    &[
        SuiteDef {
            name: "perm-basics",
            description: "permutation arithmetic round-trips, descents, and pattern witnesses",
            run: core::perm_basics,
        },
        SuiteDef {
            name: "bruhat-oracle",
            description: "dominance comparison against the cover-closure oracle; interval contents",
            run: core::bruhat_oracle,
        },
        SuiteDef {
            name: "tenner",
            description: "321/3412 avoidance matches repeat-free reduced words",
            run: boxes::tenner,
        },
        SuiteDef {
            name: "graph-characterization",
            description: "interval graphs via sandwiching rectangles match brute-force unions",
            run: core::graph_characterization,
        },
        SuiteDef {
            name: "largest-square",
            description: "dynamic-programming largest square matches the naive scan",
            run: core::largest_square,
        },
        SuiteDef {
            name: "bounding-containment",
            description: "interval graphs lie inside the union of their bounding boxes",
            run: boxes::bounding_containment,
        },
        SuiteDef {
            name: "alternation-anti",
            description: "bounding boxes alternate blue/red for qualifying v (antidiagonal)",
            run: boxes::alternation_anti,
        },
        SuiteDef {
            name: "alternation-diag",
            description: "bounding boxes alternate blue/red for qualifying w (diagonal)",
            run: boxes::alternation_diag,
        },
        SuiteDef {
            name: "small-transpositions",
            description: "mirrored non-fixed pairs of 321/3412-avoiders are adjacent",
            run: boxes::small_transpositions,
        },
        SuiteDef {
            name: "delete-internal-dots",
            description: "deleting a sandwiched dot preserves spanning corners, box colors, order",
            run: boxes::delete_internal_dots,
        },
        SuiteDef {
            name: "box-intersections",
            description: "a spanning box meets the interval graph in a flattened sub-permutation's graph",
            run: boxes::box_intersections,
        },
        SuiteDef {
            name: "det-oracle",
            description: "Bareiss, cofactor, and condensation determinants agree; multiplicativity",
            run: core::det_oracle,
        },
        SuiteDef {
            name: "lewis-carroll",
            description: "Dodgson condensation identity on random and degenerate matrices",
            run: core::lewis_carroll,
        },
        SuiteDef {
            name: "partition-signs",
            description: "signs and vanishing of determinants restricted to staircase diagrams",
            run: boxes::partition_signs,
        },
        SuiteDef {
            name: "multiple-block",
            description: "block-antidiagonal factorization multiplies immanants",
            run: immanants::multiple_block,
        },
        SuiteDef {
            name: "generators",
            description: "generated matrices verify their positivity class exactly; determinism",
            run: core::generators,
        },
        SuiteDef {
            name: "kl-invariants",
            description: "constant term, degree bound, nonnegativity, smoothness; golden tables",
            run: core::kl_invariants,
        },
        SuiteDef {
            name: "method-agreement",
            description: "all four immanant evaluation routes agree on their common domain",
            run: immanants::method_agreement,
        },
        SuiteDef {
            name: "tnn-nonneg",
            description: "immanants are nonnegative on totally nonnegative matrices",
            run: immanants::tnn_nonneg,
        },
        SuiteDef {
            name: "thm-main",
            description: "k-positivity forces positive immanants, k = largest square in the region",
            run: immanants::thm_main,
        },
        SuiteDef {
            name: "two-pos",
            description: "five-pattern avoidance forces positivity on 2-positive matrices",
            run: immanants::two_pos,
        },
        SuiteDef {
            name: "sjostrand",
            description: "graphs inside the region are exactly the interval, iff four patterns avoided",
            run: immanants::sjostrand,
        },
        SuiteDef {
            name: "delete-dot",
            description: "deleting a dot changes restricted determinants consistently",
            run: immanants::delete_dot,
        },
        SuiteDef {
            name: "pattern-squares",
            description: "square sizes in interval regions versus pattern containment",
            run: boxes::pattern_squares,
        },
        SuiteDef {
            name: "conjecture-pyl",
            description: "falsification sweep: monotone-pattern avoidance vs k-positivity",
            run: immanants::conjecture_pyl,
        },
        SuiteDef {
            name: "reference-matrix",
            description: "the worked 3x3 example: positivity class and determinant",
            run: core::reference_matrix,
        },
        SuiteDef {
            name: "monomial-expansion",
            description: "the signed monomial expansion of the 2413 immanant; positivity sweep",
            run: immanants::monomial_expansion,
        },
    ]
}

pub fn suite_names() -> Vec<&'static str> {
    registry().iter().map(|s| s.name).collect()
}

pub fn find_suite(name: &str) -> Option<&'static SuiteDef> {
    registry().iter().find(|s| s.name == name)
}

/// Runs one suite by name. The report's cases are sorted by case key, and
/// the suite label is stamped onto every case.
pub fn run_suite(name: &str, config: &SweepConfig) -> Result<SuiteReport> {
    let def = find_suite(name).ok_or_else(|| Error::Invalid {
        what: "suite",
        msg: format!(
            "unknown suite {name:?}; known: {}",
            suite_names().join(", ")
        ),
    })?;
    let mut cases = (def.run)(config)?;
    for c in &mut cases {
        c.suite = def.name;
    }
    cases.sort_by(|a, b| a.case.cmp(&b.case));
    Ok(SuiteReport {
        suite: def.name,
        description: def.description,
        cases,
    })
}

/// Runs several suites in registry order (names deduplicated).
pub fn run_suites(names: &[String], config: &SweepConfig) -> Result<Vec<SuiteReport>> {
    for n in names {
        if find_suite(n).is_none() {
            return Err(Error::Invalid {
                what: "suite",
                msg: format!("unknown suite {n:?}; known: {}", suite_names().join(", ")),
            });
        }
    }
    let mut reports = Vec::new();
    for def in registry() {
        if names.iter().any(|n| n == def.name) {
            reports.push(run_suite(def.name, config)?);
        }
    }
    Ok(reports)
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders reports as CSV with a versioned header comment. Columns are
/// fixed: suite,case,pass,v,method,k,sample_seed,value_sign,value,witness.
pub fn reports_to_csv(reports: &[SuiteReport]) -> String {
    let mut out = String::from(
        "# klimm verify CSV v1\nsuite,case,pass,v,method,k,sample_seed,value_sign,value,witness\n",
    );
    for r in reports {
        for c in &r.cases {
            let row = [
                csv_field(c.suite),
                csv_field(&c.case),
                if c.pass { "true" } else { "false" }.to_string(),
                csv_field(c.v.as_deref().unwrap_or("")),
                c.method.unwrap_or("").to_string(),
                c.k.map(|k| k.to_string()).unwrap_or_default(),
                c.sample_seed.map(|s| s.to_string()).unwrap_or_default(),
                c.value_sign.map(|s| s.to_string()).unwrap_or_default(),
                csv_field(c.value.as_deref().unwrap_or("")),
                csv_field(&c.witness),
            ];
            out.push_str(&row.join(","));
            out.push('\n');
        }
    }
    out
}

/// Renders reports as a JSON document with per-suite tallies.
pub fn reports_to_json(reports: &[SuiteReport]) -> Value {
    let suites: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "suite": r.suite,
                "description": r.description,
                "passed": r.passed(),
                "failed": r.failed(),
                "cases": r.cases.iter().map(|c| json!({
                    "case": c.case,
                    "pass": c.pass,
                    "v": c.v,
                    "method": c.method,
                    "k": c.k,
                    "sample_seed": c.sample_seed,
                    "value_sign": c.value_sign,
                    "value": c.value,
                    "witness": if c.witness.is_empty() { Value::Null } else { json!(c.witness) },
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "ok": reports.iter().all(|r| r.all_passed()),
        "suites": suites,
    })
}

// ---------------------------------------------------------------------------
// Shared helpers for suite implementations.
// ---------------------------------------------------------------------------

/// Derives a per-case seed from the base seed and a stable label, via
/// FNV-1a over the label followed by splitmix64 finalization.
pub fn case_seed(base: u64, label: &str, index: u64) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in label.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^= index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    let mut z = h ^ base;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `samples` matrices from the exact-`k`-positive generator, with the seed
/// of each recorded.
pub fn k_positive_pool(
    n: usize,
    k: usize,
    samples: usize,
    base_seed: u64,
    label: &str,
) -> Result<Vec<(u64, RatMatrix)>> {
    (0..samples)
        .map(|i| {
            let seed = case_seed(base_seed, label, i as u64);
            Ok((seed, gen::k_positive(n, k, seed)?))
        })
        .collect()
}

/// Quadratic scan for the largest filled square — the oracle the
/// dynamic-programming version is checked against.
pub fn naive_largest_square(r: &Region) -> usize {
    let n = r.n();
    let mut best = 0;
    for i in 1..=n {
        for j in 1..=n {
            let max_side = (n - i + 1).min(n - j + 1);
            for side in (best + 1)..=max_side {
                let full = (i..i + side).all(|a| (j..j + side).all(|b| r.contains(a, b)));
                if full {
                    best = side;
                } else {
                    break;
                }
            }
        }
    }
    best
}

/// Longest increasing subsequence length — equivalently, the largest m with
/// the monotone pattern 12...m contained in v.
pub fn lis(v: &Permutation) -> usize {
    let mut tails: Vec<usize> = Vec::new();
    for i in 1..=v.n() {
        let x = v.image(i);
        match tails.binary_search(&x) {
            Ok(_) => unreachable!("images are distinct"),
            Err(pos) => {
                if pos == tails.len() {
                    tails.push(x);
                } else {
                    tails[pos] = x;
                }
            }
        }
    }
    tails.len()
}

/// Calls `f` on every reduced word of `w` (letters 1-based, right-to-left
/// factorization order as in `Permutation::from_reduced_word`). Stops early
/// when `f` returns false; returns whether enumeration ran to completion.
pub fn for_each_reduced_word(w: &Permutation, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(
        w: &Permutation,
        stack: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if w.is_identity() {
            stack.reverse();
            let keep = f(stack);
            stack.reverse();
            return keep;
        }
        for a in w.right_descents() {
            let shorter = w.with_positions_swapped(a, a + 1);
            stack.push(a);
            let keep = go(&shorter, stack, f);
            stack.pop();
            if !keep {
                return false;
            }
        }
        true
    }
    let mut stack = Vec::with_capacity(w.length());
    go(w, &mut stack, f)
}

/// The permutations of rank `n` that pass `keep`, in lexicographic order.
pub fn filtered(n: usize, keep: impl Fn(&Permutation) -> bool) -> Result<Vec<Permutation>> {
    Ok(Permutation::all(n)?.into_iter().filter(keep).collect())
}

pub fn pattern(images: &[usize]) -> Permutation {
    Permutation::new(images.to_vec()).expect("static pattern")
}

/// All partitions fitting in an `n x n` box, largest-first rows, padded to
/// length n with zeros.
pub fn partitions_in_box(n: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, row: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if row == n {
            out.push(acc.clone());
            return;
        }
        for part in (0..=max).rev() {
            acc.push(part);
            extend(n, row + 1, part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, 0, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    #[test]
    fn registry_names_unique_and_resolvable() {
        let names = suite_names();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len(), "duplicate suite name");
        assert!(find_suite("tenner").is_some());
        assert!(find_suite("nope").is_none());
        assert!(run_suite("nope", &SweepConfig::new(3, 1, 0).unwrap()).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(SweepConfig::new(3, 0, 0).is_err());
        assert!(SweepConfig::new(0, 1, 0).is_err());
        assert!(SweepConfig::new(3, 1, 0).is_ok());
    }

    #[test]
    fn seeds_are_stable_and_spread() {
        let a = case_seed(7, "alpha", 0);
        assert_eq!(a, case_seed(7, "alpha", 0));
        assert_ne!(a, case_seed(7, "alpha", 1));
        assert_ne!(a, case_seed(7, "beta", 0));
        assert_ne!(a, case_seed(8, "alpha", 0));
    }

    #[test]
    fn oracle_helpers() {
        let r = Region::from_cells(4, &[(1, 1), (1, 2), (2, 1), (2, 2), (4, 4)]).unwrap();
        assert_eq!(naive_largest_square(&r), 2);
        assert_eq!(lis(&perm(&[2, 4, 1, 3])), 2);
        assert_eq!(lis(&perm(&[5, 4, 3, 2, 1])), 1);
        assert_eq!(lis(&Permutation::identity(4)), 4);
        let mut words = Vec::new();
        for_each_reduced_word(&perm(&[3, 2, 1]), &mut |w| {
            words.push(w.to_vec());
            true
        });
        words.sort();
        assert_eq!(words, vec![vec![1, 2, 1], vec![2, 1, 2]]);
        // Early abort stops after the first word.
        let mut count = 0;
        let done = for_each_reduced_word(&perm(&[3, 2, 1]), &mut |_| {
            count += 1;
            false
        });
        assert!(!done);
        assert_eq!(count, 1);
        assert_eq!(partitions_in_box(2), vec![
            vec![2, 2], vec![2, 1], vec![2, 0], vec![1, 1], vec![1, 0], vec![0, 0],
        ]);
    }

    #[test]
    fn csv_rendering_escapes() {
        let report = SuiteReport {
            suite: "demo",
            description: "demo",
            cases: vec![CaseResult::fail("a,b", "value \"q\" bad").with_k(2)],
        };
        let csv = reports_to_csv(&[report]);
        assert!(csv.starts_with("# klimm verify CSV v1\n"));
        assert!(csv.contains("\"a,b\""));
        assert!(csv.contains("\"value \"\"q\"\" bad\""));
    }
}
