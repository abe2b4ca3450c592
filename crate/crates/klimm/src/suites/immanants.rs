//! Suites exercising the signed immanants themselves: expansion tables,
//! agreement between evaluation routes, positivity on k-positive matrices,
//! nonnegativity on totally nonnegative matrices, block factorization, and
//! the dot-deletion identity.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rayon::prelude::*;

use super::{case_seed, filtered, k_positive_pool, lis, CaseResult, SweepConfig};
use crate::immanant::{
    avoids_full_interval_patterns, avoids_sign_theory_patterns, delete_dot_check, factor_blocks,
    generic_immanant, kl_immanant, kl_immanant_avoiding, kl_immanant_det, kl_immanant_monomials,
    sjostrand_check, theorem_k,
};
use crate::kl::KlCache;
use crate::linalg::{gen, rat_int, sign, Rat, RatMatrix};
use crate::perm::Permutation;
use crate::Result;

fn summarize(case: String, bad: Vec<String>, ok_detail: String) -> CaseResult {
    CaseResult::new(
        case,
        bad.is_empty(),
        if bad.is_empty() {
            ok_detail
        } else {
            bad[..bad.len().min(3)].join("; ")
        },
    )
}

/// Product of the entries along the graph of `w`.
fn monomial(m: &RatMatrix, w: &Permutation) -> Rat {
    let mut acc = rat_int(1);
    for i in 1..=w.n() {
        acc *= m.get(i, w.image(i)).clone();
    }
    acc
}

/// One value per permutation of `all`, in order: the graph monomials of `m`.
fn monomial_vector(m: &RatMatrix, all: &[Permutation]) -> Vec<Rat> {
    all.iter().map(|w| monomial(m, w)).collect()
}

/// Sparse signed coefficient lists, one per permutation `v` of rank `n`,
/// indexed into the lexicographic list of all permutations.
fn coefficient_lists(
    all: &[Permutation],
    cache: &mut KlCache,
) -> Result<Vec<Vec<(usize, i64)>>> {
    let index: BTreeMap<&Permutation, usize> =
        all.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut out = Vec::with_capacity(all.len());
    for v in all {
        let mut list = Vec::new();
        for (w, c) in kl_immanant_monomials(v, cache)? {
            list.push((index[&w], c));
        }
        out.push(list);
    }
    Ok(out)
}

fn sparse_dot(list: &[(usize, i64)], values: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for &(idx, c) in list {
        acc += rat_int(c) * values[idx].clone();
    }
    acc
}

/// The signed expansion of the immanant of 2413 has exactly eight
/// monomials, and the resulting function is positive on 2-positive
/// matrices.
pub fn monomial_expansion(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let v = Permutation::new(vec![2, 4, 1, 3])?;
    let mut cache = KlCache::new();
    let got = kl_immanant_monomials(&v, &mut cache)?;
    let expected: Vec<(Vec<usize>, i64)> = vec![
        (vec![2, 4, 1, 3], 1),
        (vec![2, 4, 3, 1], -1),
        (vec![3, 4, 1, 2], -1),
        (vec![3, 4, 2, 1], 1),
        (vec![4, 2, 1, 3], -1),
        (vec![4, 2, 3, 1], 1),
        (vec![4, 3, 1, 2], 1),
        (vec![4, 3, 2, 1], -1),
    ];
    let expected: Vec<(Permutation, i64)> = expected
        .into_iter()
        .map(|(images, c)| Ok((Permutation::new(images)?, c)))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    out.push(if got == expected {
        CaseResult::ok("2413/expansion", "eight signed monomials, as tabulated").with_v(&v)
    } else {
        CaseResult::fail("2413/expansion", format!("expansion differs: {got:?}")).with_v(&v)
    });

    let pool = k_positive_pool(4, 2, config.samples, config.seed, "monomial-expansion")?;
    let mut bad = Vec::new();
    for (seed, m) in &pool {
        let value = kl_immanant(&v, m, &mut cache)?;
        if sign(&value) != 1 {
            bad.push(format!("seed {seed}: value {value} is not positive"));
            break;
        }
    }
    out.push(
        summarize(
            "2413/positivity".into(),
            bad,
            format!("{} 2-positive matrices, all values positive", pool.len()),
        )
        .with_v(&v)
        .with_method("kl_full"),
    );
    Ok(out)
}

/// For qualifying `v` (avoiding 1324 and 2143) the four evaluation routes
/// agree on arbitrary rational matrices, and the full signed coefficient
/// table collapses to the signed indicator of the upper interval.
pub fn method_agreement(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for n in 2..=config.n_max.min(5) {
        let qualifying = filtered(n, avoids_sign_theory_patterns)?;
        let matrices: Vec<(u64, RatMatrix)> = (0..config.samples.clamp(1, 20) as u64)
            .map(|t| {
                let seed = case_seed(config.seed, &format!("method-agreement/{n}"), t);
                let mut rng = gen::rng_from_seed(seed);
                (seed, gen::random_matrix(&mut rng, n, n))
            })
            .collect();
        let w0 = Permutation::longest_element(n);
        let results: Vec<(Vec<String>, Vec<String>)> = qualifying
            .par_iter()
            .map_init(KlCache::new, |cache, v| {
                let mut coeff_bad = Vec::new();
                let mut value_bad = Vec::new();
                let monomials = match kl_immanant_monomials(v, cache) {
                    Ok(m) => m,
                    Err(e) => {
                        coeff_bad.push(format!("monomials failed at {v}: {e}"));
                        return (coeff_bad, value_bad);
                    }
                };
                // Structural claim: the coefficient of w is the sign
                // (-1)^(len(w) - len(v)) when w >= v, and zero otherwise.
                let table: BTreeMap<&Permutation, i64> =
                    monomials.iter().map(|(w, c)| (w, *c)).collect();
                match Permutation::bruhat_interval(v, &w0) {
                    Ok(interval) => {
                        let expected: BTreeMap<&Permutation, i64> = interval
                            .iter()
                            .map(|w| {
                                let s = if (w.length() - v.length()) % 2 == 0 { 1 } else { -1 };
                                (w, s)
                            })
                            .collect();
                        if table != expected {
                            coeff_bad.push(format!(
                                "{v}: coefficients are not the signed interval indicator"
                            ));
                        }
                    }
                    Err(e) => coeff_bad.push(format!("interval failed at {v}: {e}")),
                }
                let weights: BTreeMap<Permutation, i64> = monomials.into_iter().collect();
                for (seed, m) in &matrices {
                    let routes: Result<[Rat; 4]> = (|| {
                        Ok([
                            generic_immanant(
                                |w| rat_int(weights.get(w).copied().unwrap_or(0)),
                                m,
                            )?,
                            kl_immanant(v, m, cache)?,
                            kl_immanant_avoiding(v, m)?,
                            kl_immanant_det(v, m)?,
                        ])
                    })();
                    match routes {
                        Ok(values) => {
                            if values.iter().any(|x| *x != values[0]) {
                                value_bad.push(format!(
                                    "{v}, seed {seed}: routes disagree ({values:?})"
                                ));
                                break;
                            }
                        }
                        Err(e) => {
                            value_bad.push(format!("{v}, seed {seed}: {e}"));
                            break;
                        }
                    }
                }
                (coeff_bad, value_bad)
            })
            .collect();
        let mut coeff_bad = Vec::new();
        let mut value_bad = Vec::new();
        for (a, b) in results {
            coeff_bad.extend(a);
            value_bad.extend(b);
        }
        out.push(summarize(
            format!("n={n}/coefficients"),
            coeff_bad,
            format!("{} qualifying permutations", qualifying.len()),
        ));
        out.push(summarize(
            format!("n={n}/values"),
            value_bad,
            format!(
                "{} permutations x {} matrices, four routes each",
                qualifying.len(),
                matrices.len()
            ),
        ));
    }
    Ok(out)
}

/// Signed immanants are nonnegative on totally nonnegative matrices, for
/// every permutation.
pub fn tnn_nonneg(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for n in 1..=config.n_max.min(5) {
        let all = Permutation::all(n)?;
        let mut cache = KlCache::new();
        let lists = coefficient_lists(&all, &mut cache)?;
        let bad: Vec<String> = (0..config.samples as u64)
            .into_par_iter()
            .flat_map_iter(|t| {
                let seed = case_seed(config.seed, &format!("tnn-nonneg/{n}"), t);
                let m = gen::totally_nonnegative(n, seed);
                let values = monomial_vector(&m, &all);
                let mut local = Vec::new();
                for (v, list) in all.iter().zip(&lists) {
                    let x = sparse_dot(list, &values);
                    if sign(&x) < 0 {
                        local.push(format!("{v}, seed {seed}: value {x} is negative"));
                        break;
                    }
                }
                local
            })
            .collect();
        out.push(summarize(
            format!("n={n}/nonneg"),
            bad,
            format!(
                "{} permutations x {} totally nonnegative matrices",
                all.len(),
                config.samples
            ),
        ));
    }
    Ok(out)
}

/// The positivity theorem: for `v` avoiding 1324 and 2143 with largest
/// interval-region square of side k, the immanant is strictly positive on
/// every k-positive matrix, in both its guises (signed interval sum and
/// signed restricted determinant).
pub fn thm_main(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for n in 2..=config.n_max.min(6) {
        let qualifying = filtered(n, avoids_sign_theory_patterns)?;
        // Ranks up to 5 are exhaustive; at rank 6 an evenly spaced
        // deterministic sample keeps the sweep inside its budget.
        let chosen: Vec<&Permutation> = if n <= 5 {
            qualifying.iter().collect()
        } else {
            let want = 36.min(qualifying.len());
            let stride = qualifying.len().max(1) / want.max(1);
            qualifying.iter().step_by(stride.max(1)).take(want).collect()
        };
        let ks: BTreeSet<usize> = chosen.iter().filter_map(|v| theorem_k(v)).collect();
        let mut pools: BTreeMap<usize, Vec<(u64, RatMatrix)>> = BTreeMap::new();
        for &k in &ks {
            pools.insert(
                k,
                k_positive_pool(n, k, config.samples, config.seed, &format!("thm-main/{n}/{k}"))?,
            );
        }
        let w0 = Permutation::longest_element(n);
        let bad: Vec<String> = chosen
            .par_iter()
            .flat_map_iter(|v| {
                let mut local = Vec::new();
                let k = match theorem_k(v) {
                    Some(k) => k,
                    None => {
                        local.push(format!("{v} qualified but has no square bound"));
                        return local;
                    }
                };
                let interval = match Permutation::bruhat_interval(v, &w0) {
                    Ok(i) => i,
                    Err(e) => {
                        local.push(format!("interval failed at {v}: {e}"));
                        return local;
                    }
                };
                let vsign = if v.length() % 2 == 0 { 1i64 } else { -1 };
                for (idx, (seed, m)) in pools[&k].iter().enumerate() {
                    let det_value = match kl_immanant_det(v, m) {
                        Ok(x) => x,
                        Err(e) => {
                            local.push(format!("{v}, seed {seed}: {e}"));
                            break;
                        }
                    };
                    if sign(&det_value) != 1 {
                        local.push(format!(
                            "{v} (k = {k}), seed {seed}: signed determinant {det_value} is not positive"
                        ));
                        break;
                    }
                    // The interval-sum form is the immanant by definition
                    // for these v; cross-check it on every sample at small
                    // rank and on a prefix at rank 6.
                    if n <= 5 || idx < 20 {
                        let mut acc = Rat::zero();
                        for w in &interval {
                            let s = if w.length() % 2 == 0 { 1i64 } else { -1 };
                            acc += rat_int(vsign * s) * monomial(m, w);
                        }
                        if acc != det_value {
                            local.push(format!(
                                "{v}, seed {seed}: interval sum {acc} differs from determinant {det_value}"
                            ));
                            break;
                        }
                    }
                }
                local
            })
            .collect();
        out.push(summarize(
            format!("n={n}/positivity"),
            bad,
            format!(
                "{} permutations ({} qualifying), {} k-positive matrices each",
                chosen.len(),
                qualifying.len(),
                config.samples
            ),
        ));
    }
    Ok(out)
}

/// Avoiding 123, 1324, 2143, 1432, and 3214 forces the square bound k <= 2,
/// so those immanants are positive already on 2-positive matrices.
pub fn two_pos(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let patterns: Vec<Permutation> = [
        vec![1, 2, 3],
        vec![1, 3, 2, 4],
        vec![2, 1, 4, 3],
        vec![1, 4, 3, 2],
        vec![3, 2, 1, 4],
    ]
    .into_iter()
    .map(Permutation::new)
    .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for n in 2..=config.n_max.min(6) {
        let qualifying = filtered(n, |v| patterns.iter().all(|p| v.avoids(p)))?;
        let mut bound_bad = Vec::new();
        for v in &qualifying {
            match theorem_k(v) {
                Some(k) if k <= 2 => {}
                other => bound_bad.push(format!("{v}: square bound is {other:?}, expected <= 2")),
            }
        }
        out.push(summarize(
            format!("n={n}/square-bound"),
            bound_bad,
            format!("{} qualifying permutations", qualifying.len()),
        ));

        let pool = k_positive_pool(
            n,
            2.min(n),
            config.samples,
            config.seed,
            &format!("two-pos/{n}"),
        )?;
        let bad: Vec<String> = qualifying
            .par_iter()
            .flat_map_iter(|v| {
                let mut local = Vec::new();
                for (seed, m) in &pool {
                    match kl_immanant_det(v, m) {
                        Ok(x) if sign(&x) == 1 => {}
                        Ok(x) => {
                            local.push(format!("{v}, seed {seed}: value {x} is not positive"));
                            break;
                        }
                        Err(e) => {
                            local.push(format!("{v}, seed {seed}: {e}"));
                            break;
                        }
                    }
                }
                local
            })
            .collect();
        out.push(summarize(
            format!("n={n}/positivity"),
            bad,
            format!(
                "{} permutations x {} 2-positive matrices",
                qualifying.len(),
                pool.len()
            ),
        ));
    }
    Ok(out)
}

/// The permutations whose interval region is filled by exactly the graphs
/// of the interval's members are exactly those avoiding 1324, 24153,
/// 31524, and 426153.
pub fn sjostrand(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for n in 1..=config.n_max.min(6) {
        let everyone = Permutation::all(n)?;
        let bad: Vec<String> = everyone
            .par_iter()
            .flat_map_iter(|v| match sjostrand_check(v) {
                Ok(filled) => {
                    if filled != avoids_full_interval_patterns(v) {
                        Some(format!(
                            "{v}: interval-fill property disagrees with the four patterns"
                        ))
                    } else {
                        None
                    }
                }
                Err(e) => Some(format!("check failed at {v}: {e}")),
            })
            .collect();
        out.push(summarize(
            format!("n={n}/characterization"),
            bad,
            format!("{} permutations", everyone.len()),
        ));
    }
    Ok(out)
}

/// Deleting any dot of a qualifying permutation changes the restricted
/// determinant the same way whether the deletion happens in the
/// permutation or directly in the region.
pub fn delete_dot(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for n in 3..=config.n_max.min(5) {
        let qualifying = filtered(n, avoids_sign_theory_patterns)?;
        let matrices: Vec<(u64, RatMatrix)> = (0..config.samples.clamp(1, 10) as u64)
            .map(|t| {
                let seed = case_seed(config.seed, &format!("delete-dot/{n}"), t);
                let mut rng = gen::rng_from_seed(seed);
                (seed, gen::random_matrix(&mut rng, n - 1, n - 1))
            })
            .collect();
        let bad: Vec<String> = qualifying
            .par_iter()
            .flat_map_iter(|v| {
                let mut local = Vec::new();
                'outer: for i in 1..=n {
                    for (seed, m) in &matrices {
                        match delete_dot_check(v, i, m) {
                            Ok(true) => {}
                            Ok(false) => {
                                local.push(format!(
                                    "{v}, position {i}, seed {seed}: determinants differ"
                                ));
                                break 'outer;
                            }
                            Err(e) => {
                                local.push(format!("{v}, position {i}: {e}"));
                                break 'outer;
                            }
                        }
                    }
                }
                local
            })
            .collect();
        out.push(summarize(
            format!("n={n}/identity"),
            bad,
            format!(
                "{} permutations, all positions, {} matrices",
                qualifying.len(),
                matrices.len()
            ),
        ));
    }

    // Rank-8 spot check at position 3.
    let v = Permutation::new(vec![6, 2, 7, 8, 5, 3, 1, 4])?;
    let mut bad = Vec::new();
    for t in 0..config.samples.clamp(1, 5) as u64 {
        let seed = case_seed(config.seed, "delete-dot/spot", t);
        let mut rng = gen::rng_from_seed(seed);
        let m = gen::random_matrix(&mut rng, 7, 7);
        match delete_dot_check(&v, 3, &m) {
            Ok(true) => {}
            Ok(false) => {
                bad.push(format!("seed {seed}: determinants differ"));
                break;
            }
            Err(e) => {
                bad.push(format!("seed {seed}: {e}"));
                break;
            }
        }
    }
    out.push(
        summarize(
            "spot/62785314".into(),
            bad,
            "position 3 deletion matches on rank-7 matrices".into(),
        )
        .with_v(&v),
    );
    Ok(out)
}

/// Falsification sweep for the square-free positivity conjecture: if `v`
/// avoids the rising pattern 1 2 .. (k+1), is its immanant positive on
/// every k-positive matrix? Pairs already settled by the positivity
/// theorem are skipped; any counterexample is reported as a failing case
/// with its full witness.
pub fn conjecture_pyl(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for n in 2..=config.n_max.min(5) {
        let all = Permutation::all(n)?;
        let mut cache = KlCache::new();
        let lists = coefficient_lists(&all, &mut cache)?;
        let rising: Vec<usize> = all.iter().map(lis).collect();
        let proven: Vec<Option<usize>> = all.iter().map(theorem_k).collect();
        for k in 1..n {
            let candidates: Vec<usize> = (0..all.len())
                .filter(|&i| rising[i] <= k && !proven[i].is_some_and(|k0| k0 <= k))
                .collect();
            let case = format!("n={n}/k={k}");
            if candidates.is_empty() {
                out.push(CaseResult::ok(
                    case,
                    "every candidate is already covered by the positivity theorem",
                ));
                continue;
            }
            let pool = k_positive_pool(
                n,
                k,
                config.samples,
                config.seed,
                &format!("conjecture-pyl/{n}/{k}"),
            )?;
            let hits: Vec<(usize, u64, Rat)> = pool
                .par_iter()
                .flat_map_iter(|(seed, m)| {
                    let values = monomial_vector(m, &all);
                    let mut local = Vec::new();
                    for &i in &candidates {
                        let x = sparse_dot(&lists[i], &values);
                        if sign(&x) != 1 {
                            local.push((i, *seed, x));
                        }
                    }
                    local
                })
                .collect();
            if let Some((i, seed, x)) = hits.first() {
                out.push(
                    CaseResult::fail(
                        case,
                        format!(
                            "counterexample: immanant of {} is {x} on a {k}-positive matrix",
                            all[*i]
                        ),
                    )
                    .with_v(&all[*i])
                    .with_k(k)
                    .with_sample_seed(*seed)
                    .with_value(x),
                );
            } else {
                out.push(
                    CaseResult::ok(
                        case,
                        format!(
                            "no counterexample found among {} unsettled permutations x {} matrices",
                            candidates.len(),
                            pool.len()
                        ),
                    )
                    .with_k(k),
                );
            }
        }
    }
    Ok(out)
}

/// When the region splits into antidiagonal blocks, the immanant factors
/// as the product of the block immanants, the factors are themselves
/// unsplittable, and the worked rank-8 instance factors as tabulated.
pub fn multiple_block(config: &SweepConfig) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for n in 3..=config.n_max.min(6) {
        let splittable = filtered(n, |v| {
            avoids_sign_theory_patterns(v) && v.parabolic_split().is_some()
        })?;
        let matrices: Vec<(u64, RatMatrix)> = (0..config.samples.clamp(1, 5) as u64)
            .map(|t| {
                let seed = case_seed(config.seed, &format!("multiple-block/{n}"), t);
                let mut rng = gen::rng_from_seed(seed);
                (seed, gen::random_matrix(&mut rng, n, n))
            })
            .collect();
        let bad: Vec<String> = splittable
            .par_iter()
            .map_init(KlCache::new, |cache, v| {
                let mut local = Vec::new();
                for (seed, m) in &matrices {
                    let blocks = match factor_blocks(v, m) {
                        Ok(b) => b,
                        Err(e) => {
                            local.push(format!("{v}: {e}"));
                            break;
                        }
                    };
                    if blocks.len() < 2 {
                        local.push(format!("{v}: splittable but produced one block"));
                        break;
                    }
                    if blocks.iter().map(|(u, _)| u.n()).sum::<usize>() != n {
                        local.push(format!("{v}: block ranks do not add up"));
                        break;
                    }
                    if let Some((u, _)) = blocks.iter().find(|(u, _)| u.parabolic_split().is_some())
                    {
                        local.push(format!("{v}: factor {u} splits further"));
                        break;
                    }
                    let product: Result<Rat> = blocks
                        .iter()
                        .try_fold(rat_int(1), |acc, (u, b)| Ok(acc * kl_immanant_det(u, b)?));
                    let whole = kl_immanant(v, m, cache);
                    match (product, whole) {
                        (Ok(p), Ok(w)) => {
                            if p != w {
                                local.push(format!(
                                    "{v}, seed {seed}: block product {p} differs from immanant {w}"
                                ));
                                break;
                            }
                        }
                        (Err(e), _) | (_, Err(e)) => {
                            local.push(format!("{v}, seed {seed}: {e}"));
                            break;
                        }
                    }
                }
                local
            })
            .flatten()
            .collect();
        out.push(summarize(
            format!("n={n}/factorization"),
            bad,
            format!(
                "{} splittable permutations x {} matrices",
                splittable.len(),
                matrices.len()
            ),
        ));
    }

    // Worked rank-8 instance: 74586132 factors into 41253 and 132.
    let v = Permutation::new(vec![7, 4, 5, 8, 6, 1, 3, 2])?;
    let mut bad = Vec::new();
    for t in 0..config.samples.clamp(1, 3) as u64 {
        let seed = case_seed(config.seed, "multiple-block/spot", t);
        let mut rng = gen::rng_from_seed(seed);
        let m = gen::random_matrix(&mut rng, 8, 8);
        let blocks = factor_blocks(&v, &m)?;
        let shape: Vec<String> = blocks.iter().map(|(u, _)| u.to_string()).collect();
        if shape != ["41253", "132"] {
            bad.push(format!("factors are {shape:?}, expected [41253, 132]"));
            break;
        }
        let product: Result<Rat> = blocks
            .iter()
            .try_fold(rat_int(1), |acc, (u, b)| Ok(acc * kl_immanant_det(u, b)?));
        let whole = kl_immanant_det(&v, &m)?;
        match product {
            Ok(p) if p == whole => {}
            Ok(p) => {
                bad.push(format!("seed {seed}: product {p} differs from {whole}"));
                break;
            }
            Err(e) => {
                bad.push(format!("seed {seed}: {e}"));
                break;
            }
        }
    }
    out.push(
        summarize(
            "spot/74586132".into(),
            bad,
            "factors into 41253 and 132; products agree".into(),
        )
        .with_v(&v),
    );
    Ok(out)
}
