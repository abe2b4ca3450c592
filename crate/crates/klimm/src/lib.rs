//! Exact computation of Kazhdan-Lusztig immanants and the combinatorics
//! that controls their signs on k-positive matrices.
//!
//! The crate is organized around five pieces:
//!
//! * [`perm`]: permutations in one-line notation, Bruhat order, pattern
//!   containment, and the deletion / block-splitting operations.
//! * [`region`]: subsets of the n x n grid, interval graphs `G[v,w]`,
//!   bounding boxes with their coloring, and Young-diagram recognizers.
//! * [`linalg`]: dense matrices over arbitrary-precision rationals, exact
//!   determinants and minors, k-positivity tests, and seeded generators
//!   for totally positive and k-positive matrices.
//! * [`kl`]: Kazhdan-Lusztig polynomials by two independent algorithms.
//! * [`immanant`]: the immanant evaluators themselves, plus the
//!   structural checks (block factorization, deletion identities,
//!   largest-square analysis) that predict signs.
//!
//! Everything is exact: no floating point is used anywhere, so every
//! reported sign is a certificate rather than an approximation.
//! [`suites`] packages the property sweeps behind named, seeded,
//! reproducible drivers shared by the CLI and the test suite.
//!
//! ```
//! use klimm::immanant::{kl_immanant_det, theorem_k};
//! use klimm::kl::KlCache;
//! use klimm::linalg::{gen::k_positive, rat};
//! use klimm::perm::Permutation;
//!
//! // The interval region of v = 2413 contains a 2 x 2 square and no
//! // larger, so its immanant must be positive on 2-positive matrices.
//! let v: Permutation = "2413".parse()?;
//! assert_eq!(theorem_k(&v), Some(2));
//!
//! let m = k_positive(4, 2, 7)?;
//! let value = kl_immanant_det(&v, &m)?;
//! assert!(value > rat(0, 1));
//!
//! // The determinantal shortcut agrees with the full signed sum.
//! let mut cache = KlCache::new();
//! assert_eq!(klimm::immanant::kl_immanant(&v, &m, &mut cache)?, value);
//! # Ok::<(), klimm::Error>(())
//! ```

pub mod immanant;
pub mod io;
pub mod kl;
pub mod linalg;
pub mod perm;
pub mod region;
pub mod suites;

use thiserror::Error;

/// Unified error type for the whole crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("position {pos} out of range for rank {n}")]
    PositionOutOfRange { pos: usize, n: usize },

    #[error("{op} refuses rank {n}: desk-scale limit is {limit}")]
    RankTooLarge {
        op: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("permutation {v} contains pattern {pattern} at positions {witness:?}")]
    PatternPresent {
        v: String,
        pattern: String,
        witness: Vec<usize>,
    },

    #[error("({i}, {j}) is not a spanning corner")]
    NotSpanningCorner { i: usize, j: usize },

    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("minor size {k} out of range for rank {n}")]
    MinorSizeOutOfRange { k: usize, n: usize },

    #[error("generation failed after {retries} retries (seed {seed})")]
    GenerationFailed { retries: u32, seed: u64 },

    #[error("invalid {what}: {msg}")]
    Invalid { what: &'static str, msg: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
