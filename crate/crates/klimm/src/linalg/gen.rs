//! Seeded matrix generators: generic rational matrices, totally positive
//! and totally nonnegative products of elementary bidiagonal factors, and
//! matrices whose positivity rank is exactly k.
//!
//! All randomness flows through `ChaCha8Rng::seed_from_u64` and `next_u64`,
//! so every generated matrix is reproducible from its `u64` seed alone,
//! independent of platform.

use num_traits::Zero;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{rat_int, MinorSpec, Rat, RatMatrix};
use crate::{Error, Result};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform-ish integer in `[lo, hi]`. The modulo bias is far below anything
/// these sweeps could detect, and the trivial mapping keeps streams stable.
pub fn uniform(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    debug_assert!(lo <= hi);
    let span = (hi - lo + 1) as u64;
    lo + (rng.next_u64() % span) as i64
}

/// Numerator in `[-50, 50]`, denominator in `[1, 12]`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rat {
    let p = uniform(rng, -50, 50);
    let q = uniform(rng, 1, 12);
    Rat::new(p.into(), q.into())
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n_rows: usize, n_cols: usize) -> RatMatrix {
    let mut m = RatMatrix::zero(n_rows, n_cols);
    for r in 1..=n_rows {
        for c in 1..=n_cols {
            m.set(r, c, random_rational(rng));
        }
    }
    m
}

/// `I + t * E(j+1, j)`.
fn elem_lower(n: usize, j: usize, t: i64) -> RatMatrix {
    let mut m = RatMatrix::identity(n);
    m.set(j + 1, j, rat_int(t));
    m
}

/// `I + t * E(j, j+1)`.
fn elem_upper(n: usize, j: usize, t: i64) -> RatMatrix {
    let mut m = RatMatrix::identity(n);
    m.set(j, j + 1, rat_int(t));
    m
}

/// The staircase reduced word of the longest permutation:
/// `1, 2 1, 3 2 1, ...` as adjacent-transposition indices.
fn staircase_word(n: usize) -> Vec<usize> {
    let mut word = Vec::with_capacity(n * (n - 1) / 2);
    for k in 1..n {
        for j in (1..=k).rev() {
            word.push(j);
        }
    }
    word
}

fn bidiagonal_product(rng: &mut ChaCha8Rng, n: usize, lo: i64, diag_hi: i64, hi: i64) -> RatMatrix {
    let mut a = RatMatrix::identity(n);
    for j in staircase_word(n) {
        a = a.mul(&elem_lower(n, j, uniform(rng, lo, hi))).unwrap();
    }
    let mut d = RatMatrix::identity(n);
    for i in 1..=n {
        d.set(i, i, rat_int(uniform(rng, 1, diag_hi)));
    }
    a = a.mul(&d).unwrap();
    for j in staircase_word(n) {
        a = a.mul(&elem_upper(n, j, uniform(rng, lo, hi))).unwrap();
    }
    a
}

pub fn totally_positive_with_rng(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    assert!(n >= 1);
    // Every factor parameter strictly positive over a reduced word of the
    // longest permutation gives a totally positive product.
    bidiagonal_product(rng, n, 1, 4, 4)
}

/// A totally positive matrix with small integer entries.
pub fn totally_positive(n: usize, seed: u64) -> RatMatrix {
    totally_positive_with_rng(&mut rng_from_seed(seed), n)
}

pub fn totally_nonnegative_with_rng(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    assert!(n >= 1);
    // Zero parameters are allowed, so boundary (singular-minor) cases occur
    // with sizable probability.
    bidiagonal_product(rng, n, 0, 3, 3)
}

/// A totally nonnegative matrix; some minors are typically zero.
pub fn totally_nonnegative(n: usize, seed: u64) -> RatMatrix {
    totally_nonnegative_with_rng(&mut rng_from_seed(seed), n)
}

/// Minors of the given size whose row and column sets both contain `corner`.
fn specs_through_corner(n: usize, size: usize, corner: (usize, usize)) -> Vec<MinorSpec> {
    let mut out = Vec::new();
    for mut rows in super::index_subsets(n - 1, size - 1) {
        for r in &mut rows {
            if *r >= corner.0 {
                *r += 1;
            }
        }
        rows.push(corner.0);
        rows.sort_unstable();
        for mut cols in super::index_subsets(n - 1, size - 1) {
            for c in &mut cols {
                if *c >= corner.1 {
                    *c += 1;
                }
            }
            cols.push(corner.1);
            cols.sort_unstable();
            out.push(MinorSpec::new(rows.clone(), cols).unwrap());
        }
    }
    out
}

/// Smallest ratio `minor / (minor with the corner row and column removed)`
/// over all minors of `size` through the corner. For a totally positive
/// matrix this is how far the corner entry can drop before some minor of
/// that size reaches zero.
fn min_corner_threshold(a: &RatMatrix, size: usize, corner: (usize, usize)) -> Result<Rat> {
    let n = a.n_rows();
    let mut best: Option<Rat> = None;
    for spec in specs_through_corner(n, size, corner) {
        let full = a.minor(&spec)?;
        let rows: Vec<usize> = spec.rows().iter().copied().filter(|&r| r != corner.0).collect();
        let cols: Vec<usize> = spec.cols().iter().copied().filter(|&c| c != corner.1).collect();
        let rest = a.minor(&MinorSpec::new(rows, cols)?)?;
        if rest.is_zero() {
            return Err(Error::Internal(
                "zero complementary minor in a totally positive matrix".into(),
            ));
        }
        let t = full / rest;
        if best.as_ref().map(|b| &t < b).unwrap_or(true) {
            best = Some(t);
        }
    }
    best.ok_or_else(|| Error::Internal("no minors through corner".into()))
}

/// A matrix that is k-positive but, for `k < n`, not (k+1)-positive.
///
/// Strategy: draw a totally positive matrix and push one corner entry down
/// by the exact midpoint between the smallest ratio that kills a
/// (k+1)-minor and the smallest that would kill a minor of size at most k.
/// The result is verified exactly and the draw is rejected on any failure.
pub fn k_positive(n: usize, k: usize, seed: u64) -> Result<RatMatrix> {
    if k == 0 || k > n {
        return Err(Error::MinorSizeOutOfRange { k, n });
    }
    let mut rng = rng_from_seed(seed);
    if k == n {
        return Ok(totally_positive_with_rng(&mut rng, n));
    }
    const MAX_RETRIES: u32 = 1000;
    for _ in 0..MAX_RETRIES {
        let a = totally_positive_with_rng(&mut rng, n);
        let first = if rng.next_u64().is_multiple_of(2) { (1, 1) } else { (n, n) };
        let second = if first == (1, 1) { (n, n) } else { (1, 1) };
        for corner in [first, second] {
            let drop_big = min_corner_threshold(&a, k + 1, corner)?;
            let mut keep_small = min_corner_threshold(&a, 1, corner)?;
            for size in 2..=k {
                let t = min_corner_threshold(&a, size, corner)?;
                if t < keep_small {
                    keep_small = t;
                }
            }
            if drop_big >= keep_small {
                continue;
            }
            let t = (&drop_big + &keep_small) / rat_int(2);
            let mut b = a.clone();
            b.set(corner.0, corner.1, a.get(corner.0, corner.1) - &t);
            if b.is_k_positive(k)? && !b.is_k_positive(k + 1)? {
                return Ok(b);
            }
        }
    }
    Err(Error::GenerationFailed {
        retries: MAX_RETRIES,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(totally_positive(4, 7), totally_positive(4, 7));
        assert_eq!(totally_nonnegative(5, 3), totally_nonnegative(5, 3));
        assert_eq!(
            k_positive(4, 2, 11).unwrap(),
            k_positive(4, 2, 11).unwrap()
        );
        assert_ne!(totally_positive(4, 7), totally_positive(4, 8));
        let mut r1 = rng_from_seed(9);
        let mut r2 = rng_from_seed(9);
        assert_eq!(random_matrix(&mut r1, 3, 4), random_matrix(&mut r2, 3, 4));
    }

    #[test]
    fn random_rational_bounds() {
        let mut rng = rng_from_seed(0);
        for _ in 0..200 {
            let r = random_rational(&mut rng);
            assert!(r.numer().magnitude() <= &50u32.into());
            assert!(r.denom() >= &1.into() && r.denom() <= &12.into());
        }
    }

    #[test]
    fn totally_positive_matrices_are_totally_positive() {
        for n in 1..=5 {
            for seed in 0..3 {
                let a = totally_positive(n, seed);
                assert!(a.is_k_positive(n).unwrap(), "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn totally_nonnegative_matrices_have_zero_minors() {
        let mut saw_boundary = false;
        for seed in 0..20 {
            let a = totally_nonnegative(4, seed);
            assert!(a.is_k_nonnegative(4).unwrap(), "seed={seed}");
            if !a.is_k_positive(4).unwrap() {
                saw_boundary = true;
            }
        }
        assert!(saw_boundary, "expected some vanishing minor across 20 seeds");
    }

    #[test]
    fn k_positive_rank_is_exact() {
        for n in 2..=5 {
            for k in 1..=n {
                let b = k_positive(n, k, 1000 + (n * 10 + k) as u64).unwrap();
                assert!(b.is_k_positive(k).unwrap(), "n={n} k={k}");
                if k < n {
                    assert!(!b.is_k_positive(k + 1).unwrap(), "n={n} k={k}");
                }
            }
        }
        assert!(matches!(
            k_positive(4, 0, 1),
            Err(Error::MinorSizeOutOfRange { .. })
        ));
        assert!(matches!(
            k_positive(4, 5, 1),
            Err(Error::MinorSizeOutOfRange { .. })
        ));
    }

    #[test]
    fn corner_spec_enumeration() {
        let specs = specs_through_corner(4, 2, (1, 1));
        assert_eq!(specs.len(), 9);
        assert!(specs
            .iter()
            .all(|s| s.rows().contains(&1) && s.cols().contains(&1)));
        let specs = specs_through_corner(4, 3, (4, 4));
        assert_eq!(specs.len(), 9);
        assert!(specs
            .iter()
            .all(|s| s.rows().contains(&4) && s.cols().contains(&4)));
    }
}
