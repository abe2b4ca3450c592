//! Suites for the permutation, region, linear-algebra, and polynomial
//! layers: oracle cross-checks and generator verification.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rayon::prelude::*;

use super::{case_seed, naive_largest_square, pattern, CaseResult, SweepConfig};
use crate::io::PolyTable;
use crate::kl::{schubert_smooth, IntPoly, KlCache};
use crate::linalg::{gen, rat_int, sign, MinorSpec, Rat, RatMatrix};
use crate::perm::Permutation;
use crate::region::{
    brute_force_interval_graph, lower_interval_graph, upper_interval_graph, Region,
};
use crate::Result;

/// Permutation arithmetic on every element of small ranks: inverse and
/// rank round-trips, reduced words, descents, and pattern witnesses.
pub fn perm_basics(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for n in 1..=config.n_max.min(5) {
        let everyone = Permutation::all(n)?;
        let mut bad = Vec::new();
        for (r, w) in everyone.iter().enumerate() {
            if w.inverse().inverse() != *w {
                bad.push(format!("double inverse moved {w}"));
            }
            if w.lex_rank() != r as u64 || Permutation::from_lex_rank(n, r as u64)? != *w {
                bad.push(format!("lex rank round-trip failed at {w}"));
            }
            let word = w.reduced_word();
            if word.len() != w.length() || word.len() != w.inversions().len() {
                bad.push(format!("reduced word length mismatch at {w}"));
            }
            if Permutation::from_reduced_word(n, &word)? != *w {
                bad.push(format!("reduced word round-trip failed at {w}"));
            }
            for a in 1..n {
                let shorter = w.with_positions_swapped(a, a + 1).length() < w.length();
                if shorter != w.right_descents().contains(&a) {
                    bad.push(format!("descent set wrong at {w}, letter {a}"));
                }
            }
            if w.inverse().length() != w.length() {
                bad.push(format!("inverse changed length of {w}"));
            }
            if bad.len() > 3 {
                break;
            }
        }
        out.push(CaseResult::new(
            format!("n={n}/arithmetic"),
            bad.is_empty(),
            if bad.is_empty() {
                format!("{} permutations checked", everyone.len())
            } else {
                bad.join("; ")
            },
        ));
    }

    // Pattern witnesses: every reported occurrence really is order-isomorphic
    // to the pattern, and avoidance agrees with it being absent.
    let n = config.n_max.clamp(3, 5);
    let patterns = [
        pattern(&[1, 2, 3]),
        pattern(&[3, 2, 1]),
        pattern(&[2, 1, 3]),
        pattern(&[1, 3, 2, 4]),
        pattern(&[2, 1, 4, 3]),
        pattern(&[3, 4, 1, 2]),
    ];
    let mut bad = Vec::new();
    for w in Permutation::all(n)? {
        for p in &patterns {
            match w.pattern_witness(p) {
                Some(positions) => {
                    if w.avoids(p) {
                        bad.push(format!("{w} both avoids and contains {p}"));
                    }
                    let ok_len = positions.len() == p.n();
                    let increasing = positions.windows(2).all(|ab| ab[0] < ab[1]);
                    let isomorphic = (1..=p.n()).all(|a| {
                        (1..=p.n()).all(|b| {
                            (p.image(a) < p.image(b))
                                == (w.image(positions[a - 1]) < w.image(positions[b - 1]))
                        })
                    });
                    if !(ok_len && increasing && isomorphic) {
                        bad.push(format!("bad witness {positions:?} for {p} in {w}"));
                    }
                }
                None => {
                    if !w.avoids(p) {
                        bad.push(format!("{w} claims avoidance of {p} inconsistently"));
                    }
                }
            }
        }
        if bad.len() > 3 {
            break;
        }
    }
    out.push(CaseResult::new(
        format!("n={n}/pattern-witnesses"),
        bad.is_empty(),
        if bad.is_empty() {
            "witnesses sound".to_string()
        } else {
            bad.join("; ")
        },
    ));
    Ok(out)
}

/// Bruhat dominance versus the transitive closure of the cover relation,
/// exhaustively, plus interval contents against the closure.
pub fn bruhat_oracle(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for n in 1..=config.n_max.min(5) {
        let everyone = Permutation::all(n)?;
        let m = everyone.len();
        let index: BTreeMap<&Permutation, usize> =
            everyone.iter().enumerate().map(|(i, w)| (w, i)).collect();
        // reach[i][j] = element i can climb to element j through covers.
        let mut reach = vec![vec![false; m]; m];
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(everyone[i].length()));
        for i in order {
            reach[i][i] = true;
            let ups: Vec<usize> = everyone[i]
                .bruhat_covers_up()
                .into_iter()
                .map(|c| index[&c])
                .collect();
            for j in ups {
                let row = reach[j].clone();
                for (slot, val) in reach[i].iter_mut().zip(row) {
                    *slot = *slot || val;
                }
            }
        }
        let mut bad = Vec::new();
        for (i, x) in everyone.iter().enumerate() {
            for (j, y) in everyone.iter().enumerate() {
                if x.bruhat_leq(y)? != reach[i][j] {
                    bad.push(format!("dominance and covers disagree at ({x}, {y})"));
                    if bad.len() > 3 {
                        break;
                    }
                }
            }
        }
        // Interval contents against the closure, on sampled endpoints.
        let mut rng = gen::rng_from_seed(case_seed(config.seed, "bruhat-endpoints", n as u64));
        for _ in 0..config.samples.min(20) {
            let a = gen::uniform(&mut rng, 0, m as i64 - 1) as usize;
            let b = gen::uniform(&mut rng, 0, m as i64 - 1) as usize;
            let (v, w) = (&everyone[a], &everyone[b]);
            let interval: BTreeSet<Permutation> =
                Permutation::bruhat_interval(v, w)?.into_iter().collect();
            let expected: BTreeSet<Permutation> = everyone
                .iter()
                .enumerate()
                .filter(|(u, _)| reach[a][*u] && reach[*u][b])
                .map(|(_, p)| p.clone())
                .collect();
            if interval != expected {
                bad.push(format!("interval [{v}, {w}] mismatch"));
            }
        }
        out.push(CaseResult::new(
            format!("n={n}/closure"),
            bad.is_empty(),
            if bad.is_empty() {
                format!("{} ordered pairs", m * m)
            } else {
                bad.join("; ")
            },
        ));
    }
    Ok(out)
}

/// Interval graphs computed from sandwiching rectangles versus brute-force
/// unions over the interval; the column-reversal correspondence between
/// the two conventions.
pub fn graph_characterization(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for n in 1..=config.n_max.min(5) {
        let everyone = Permutation::all(n)?;
        let w0 = Permutation::longest_element(n);
        let e = Permutation::identity(n);
        let bad: Vec<String> = everyone
            .par_iter()
            .flat_map_iter(|v| {
                let mut local = Vec::new();
                let upper = upper_interval_graph(v);
                match brute_force_interval_graph(v, &w0) {
                    Ok(oracle) => {
                        if upper != oracle {
                            local.push(format!("upper region wrong at {v}"));
                        }
                    }
                    Err(e) => local.push(format!("oracle failed at {v}: {e}")),
                }
                let lower = lower_interval_graph(v);
                match brute_force_interval_graph(&e, v) {
                    Ok(oracle) => {
                        if lower != oracle {
                            local.push(format!("lower region wrong at {v}"));
                        }
                    }
                    Err(e) => local.push(format!("oracle failed at {v}: {e}")),
                }
                match Permutation::longest_element(n).compose(v) {
                    Ok(w0v) => {
                        if upper != lower_interval_graph(&w0v).reverse_columns() {
                            local.push(format!("column reversal mismatch at {v}"));
                        }
                    }
                    Err(e) => local.push(format!("compose failed at {v}: {e}")),
                }
                local
            })
            .collect();
        out.push(CaseResult::new(
            format!("n={n}/regions"),
            bad.is_empty(),
            if bad.is_empty() {
                format!("{} permutations, both conventions", everyone.len())
            } else {
                bad[..bad.len().min(3)].join("; ")
            },
        ));
    }
    Ok(out)
}

/// Largest-square dynamic programming versus the naive scan, on every
/// interval region of small rank and on random regions.
pub fn largest_square(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for n in 1..=config.n_max.min(6) {
        let everyone = Permutation::all(n)?;
        let bad: Vec<String> = everyone
            .par_iter()
            .filter_map(|v| {
                let r = upper_interval_graph(v);
                if r.largest_square() != naive_largest_square(&r) {
                    Some(format!("square size mismatch on the region of {v}"))
                } else {
                    None
                }
            })
            .collect();
        out.push(CaseResult::new(
            format!("n={n}/interval-regions"),
            bad.is_empty(),
            if bad.is_empty() {
                format!("{} regions", everyone.len())
            } else {
                bad[..bad.len().min(3)].join("; ")
            },
        ));
    }
    // Random regions of rank 8: independent of any permutation structure.
    let mut rng = gen::rng_from_seed(case_seed(config.seed, "largest-square-random", 0));
    let mut bad = Vec::new();
    for trial in 0..config.samples {
        let n = 8;
        let mut cells = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if gen::uniform(&mut rng, 0, 99) < 60 {
                    cells.push((i, j));
                }
            }
        }
        let r = Region::from_cells(n, &cells)?;
        if r.largest_square() != naive_largest_square(&r) {
            bad.push(format!("random region trial {trial}"));
        }
    }
    out.push(CaseResult::new(
        "random-regions".to_string(),
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} random regions", config.samples)
        } else {
            bad.join("; ")
        },
    ));
    Ok(out)
}

fn cofactor_det(m: &RatMatrix) -> Result<Rat> {
    let n = m.n_rows();
    if n == 0 {
        return Ok(rat_int(1));
    }
    if n == 1 {
        return Ok(m.get(1, 1).clone());
    }
    let mut acc = Rat::zero();
    for j in 1..=n {
        if m.get(1, j).is_zero() {
            continue;
        }
        let sub = m.submatrix(&MinorSpec::from_removed(n, &[1], &[j])?)?;
        let term = m.get(1, j).clone() * cofactor_det(&sub)?;
        if j % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Bareiss elimination versus cofactor expansion versus condensation;
/// multiplicativity and transpose invariance.
pub fn det_oracle(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let sizes: Vec<usize> = (1..=config.n_max.min(6)).collect();
    let cases: Vec<CaseResult> = sizes
        .par_iter()
        .map(|&n| {
            let mut bad = Vec::new();
            for trial in 0..config.samples {
                let seed = case_seed(config.seed, &format!("det-oracle/n={n}"), trial as u64);
                let mut rng = gen::rng_from_seed(seed);
                let a = gen::random_matrix(&mut rng, n, n);
                let b = gen::random_matrix(&mut rng, n, n);
                let da = a.det()?;
                if da != cofactor_det(&a)? {
                    bad.push(format!("cofactor mismatch, seed {seed}"));
                }
                if da != a.dodgson_det()? {
                    bad.push(format!("condensation mismatch, seed {seed}"));
                }
                if da != a.transpose().det()? {
                    bad.push(format!("transpose changed the determinant, seed {seed}"));
                }
                if a.mul(&b)?.det()? != da.clone() * b.det()? {
                    bad.push(format!("multiplicativity failed, seed {seed}"));
                }
                if bad.len() > 3 {
                    break;
                }
            }
            Ok(CaseResult::new(
                format!("n={n}/agreement"),
                bad.is_empty(),
                if bad.is_empty() {
                    format!("{} matrices", config.samples)
                } else {
                    bad.join("; ")
                },
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(cases)
}

/// The condensation identity `det(M) det(interior) = nw*se - ne*sw` on
/// random matrices of sizes 2..=8, with degenerate (repeated-row) cases
/// mixed in.
pub fn lewis_carroll(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let sizes: Vec<usize> = (2..=config.n_max.min(8)).collect();
    let trials: Vec<(usize, usize)> = (0..config.samples)
        .map(|t| (sizes[t % sizes.len()], t))
        .collect();
    let cases: Vec<CaseResult> = trials
        .par_iter()
        .map(|&(n, t)| {
            let seed = case_seed(config.seed, "lewis-carroll", t as u64);
            let mut rng = gen::rng_from_seed(seed);
            let mut m = gen::random_matrix(&mut rng, n, n);
            let degenerate = t % 5 == 4 && n >= 2;
            if degenerate {
                // Copy row 1 into row n: both sides of the identity must
                // still agree (the left-hand side vanishes).
                for j in 1..=n {
                    let v = m.get(1, j).clone();
                    m.set(n, j, v);
                }
            }
            let (lhs, rhs) = crate::linalg::lewis_carroll_sides(&m)?;
            let case = format!("size={n}/trial={t:04}");
            let pass = lhs == rhs && (!degenerate || lhs.is_zero());
            let witness = if pass {
                if degenerate { "degenerate".to_string() } else { String::new() }
            } else {
                format!("lhs {} != rhs {}", lhs, rhs)
            };
            Ok(CaseResult::new(case, pass, witness)
                .with_sample_seed(seed)
                .with_value(&lhs))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(cases)
}

/// Generated matrices verify their own positivity class exactly, and
/// generation is deterministic in the seed.
pub fn generators(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let mut plans = Vec::new();
    for n in 2..=config.n_max.min(5) {
        for k in 1..=n {
            plans.push((n, k));
        }
    }
    let mut cases: Vec<CaseResult> = plans
        .par_iter()
        .map(|&(n, k)| {
            let mut bad = Vec::new();
            for trial in 0..config.samples.min(10) {
                let seed = case_seed(config.seed, &format!("gen/{n}/{k}"), trial as u64);
                let m = gen::k_positive(n, k, seed)?;
                if !m.is_k_positive(k)? {
                    bad.push(format!("not {k}-positive, seed {seed}"));
                }
                if k < n && m.is_k_positive(k + 1)? {
                    bad.push(format!("accidentally {}-positive, seed {seed}", k + 1));
                }
                let again = gen::k_positive(n, k, seed)?;
                if crate::io::matrix_to_csv_string(&m) != crate::io::matrix_to_csv_string(&again) {
                    bad.push(format!("nondeterministic at seed {seed}"));
                }
            }
            Ok(CaseResult::new(
                format!("n={n}/k={k}/exact-class"),
                bad.is_empty(),
                if bad.is_empty() { String::new() } else { bad.join("; ") },
            )
            .with_k(k))
        })
        .collect::<Result<Vec<_>>>()?;

    // Totally nonnegative generation: nonnegative everywhere, with boundary
    // (some vanishing minor) appearing across the pool.
    for n in 2..=config.n_max.min(5) {
        let mut boundary = 0usize;
        let mut bad = Vec::new();
        for trial in 0..config.samples.max(20) {
            let seed = case_seed(config.seed, &format!("gen-tnn/{n}"), trial as u64);
            let m = gen::totally_nonnegative(n, seed);
            if !m.is_k_nonnegative(n)? {
                bad.push(format!("not totally nonnegative, seed {seed}"));
            }
            if !m.is_k_positive(n)? {
                boundary += 1;
            }
        }
        if boundary == 0 {
            bad.push("no boundary case in the pool".to_string());
        }
        cases.push(CaseResult::new(
            format!("n={n}/tnn-pool"),
            bad.is_empty(),
            if bad.is_empty() {
                format!("{boundary} boundary matrices")
            } else {
                bad.join("; ")
            },
        ));
    }
    Ok(cases)
}

/// Structural invariants of the polynomials on all comparable pairs of
/// small rank, plus equality with the frozen tables.
pub fn kl_invariants(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for n in 1..=config.n_max.min(5) {
        let everyone = Permutation::all(n)?;
        let mut cache = KlCache::new();
        let mut bad = Vec::new();
        let mut nontrivial: Vec<(Permutation, Permutation, IntPoly)> = Vec::new();
        for w in &everyone {
            let smooth = schubert_smooth(w);
            for x in &everyone {
                let p = cache.polynomial(x, w)?;
                if !x.bruhat_leq(w)? {
                    if !p.is_zero() {
                        bad.push(format!("nonzero below incomparable pair ({x}, {w})"));
                    }
                    continue;
                }
                if p.coeff(0) != 1 {
                    bad.push(format!("constant term differs from 1 at ({x}, {w})"));
                }
                if p.coeffs().iter().any(|&c| c < 0) {
                    bad.push(format!("negative coefficient at ({x}, {w})"));
                }
                if x != w {
                    let gap = w.length() - x.length();
                    if let Some(d) = p.degree() {
                        if 2 * d + 1 > gap {
                            bad.push(format!("degree bound violated at ({x}, {w})"));
                        }
                    }
                }
                if smooth && p.coeffs() != [1] {
                    bad.push(format!("smooth {w} has a nontrivial polynomial at {x}"));
                }
                if p.coeffs() != [1] {
                    nontrivial.push((x.clone(), w.clone(), p));
                }
                if bad.len() > 3 {
                    break;
                }
            }
        }
        out.push(CaseResult::new(
            format!("n={n}/invariants"),
            bad.is_empty(),
            if bad.is_empty() {
                format!("{} nontrivial pairs", nontrivial.len())
            } else {
                bad.join("; ")
            },
        ));

        // Frozen-table comparison for the ranks we freeze.
        let golden = match n {
            4 => Some(super::GOLDEN_KL_S4),
            5 => Some(super::GOLDEN_KL_S5),
            _ => None,
        };
        if let Some(text) = golden {
            let table = PolyTable::from_json_str(text)?;
            let mut bad = Vec::new();
            if table.n != n {
                bad.push("table rank mismatch".to_string());
            }
            if table.entries.len() != nontrivial.len() {
                bad.push(format!(
                    "entry count {} differs from computed {}",
                    table.entries.len(),
                    nontrivial.len()
                ));
            }
            for (x, w, p) in &nontrivial {
                match table.entry(x, w) {
                    Some(frozen) if &frozen == p => {}
                    Some(frozen) => bad.push(format!(
                        "frozen {frozen} differs from computed {p} at ({x}, {w})"
                    )),
                    None => bad.push(format!("missing frozen entry at ({x}, {w})")),
                }
                if bad.len() > 3 {
                    break;
                }
            }
            out.push(CaseResult::new(
                format!("n={n}/golden"),
                bad.is_empty(),
                if bad.is_empty() {
                    format!("{} frozen entries match", table.entries.len())
                } else {
                    bad.join("; ")
                },
            ));
        }
    }
    Ok(out)
}

/// The worked 3x3 example: its positivity class and determinant.
pub fn reference_matrix(_config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let m = RatMatrix::from_int_rows(&[&[11, 9, 3], &[8, 7, 3], &[2, 2, 1]])?;
    let mut cases = Vec::new();
    let two_pos = m.is_k_positive(2)?;
    cases.push(CaseResult::new(
        "2-positive",
        two_pos,
        if two_pos { "" } else { "a minor of size <= 2 is not positive" },
    ));
    let three_nonneg = m.is_k_nonnegative(3)?;
    cases.push(
        CaseResult::new(
            "not-3-nonnegative",
            !three_nonneg,
            match m.first_negative_minor(3)? {
                Some((spec, val)) => format!(
                    "negative minor rows {:?} cols {:?} = {}",
                    spec.rows(),
                    spec.cols(),
                    val
                ),
                None => "expected a negative minor of size 3".to_string(),
            },
        )
        .with_k(3),
    );
    let det = m.det()?;
    cases.push(
        CaseResult::new(
            "determinant",
            det == rat_int(-1),
            format!("det = {det}"),
        )
        .with_value(&det)
        .with_method("determinantal"),
    );
    let s = sign(&det);
    cases.push(CaseResult::new("determinant-sign", s == -1, format!("sign = {s}")));
    Ok(cases)
}
