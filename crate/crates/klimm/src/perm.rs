//! Permutations of [n] in one-line notation: Bruhat order, inversions,
//! pattern containment, reduced words, and the deletion / block-splitting
//! maps used by the region and immanant modules.
//!
//! Positions and values are 1-based everywhere, matching the standard
//! combinatorics conventions and the external JSON formats.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Largest rank for which full S_n enumeration is allowed (n! blowup).
pub const ENUMERATION_LIMIT: usize = 8;

/// Largest rank for which Bruhat intervals are computed by filtering S_n.
pub const INTERVAL_LIMIT: usize = 7;

/// An inversion (or non-inversion) position pair `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InversionPair {
    pub i: usize,
    pub j: usize,
}

impl InversionPair {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i < j, "inversion pair requires i < j");
        InversionPair { i, j }
    }
}

impl fmt::Display for InversionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.i, self.j)
    }
}

/// A permutation of `[n] = {1, .., n}` in one-line notation.
///
/// `images[i - 1]` is the image of position `i`; values are `1..=n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` is a bijection on `{1, .., n}` with `n >= 1`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::Invalid {
                what: "permutation",
                msg: "rank 0 is not allowed".into(),
            });
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n {
                return Err(Error::Invalid {
                    what: "permutation",
                    msg: format!("value {x} out of range 1..={n}"),
                });
            }
            if seen[x - 1] {
                return Err(Error::Invalid {
                    what: "permutation",
                    msg: format!("value {x} repeated"),
                });
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "rank must be at least 1");
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The longest element `w0 = [n, n-1, .., 1]`.
    pub fn longest_element(n: usize) -> Self {
        assert!(n >= 1, "rank must be at least 1");
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of 1-based position `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// Position of 1-based value `x`, i.e. the image under the inverse.
    pub fn position_of(&self, x: usize) -> usize {
        self.images.iter().position(|&y| y == x).expect("value in range") + 1
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// `(self . other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch(self.n(), other.n()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let n = self.n();
        let mut inv = vec![0usize; n];
        for i in 1..=n {
            inv[self.images[i - 1] - 1] = i;
        }
        Permutation { images: inv }
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut len = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    len += 1;
                }
            }
        }
        len
    }

    /// Pairs `i < j` with `v(i) > v(j)`, in lexicographic order.
    pub fn inversions(&self) -> Vec<InversionPair> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.images[i - 1] > self.images[j - 1] {
                    out.push(InversionPair::new(i, j));
                }
            }
        }
        out
    }

    /// Pairs `i < j` with `v(i) < v(j)`, in lexicographic order.
    pub fn non_inversions(&self) -> Vec<InversionPair> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.images[i - 1] < self.images[j - 1] {
                    out.push(InversionPair::new(i, j));
                }
            }
        }
        out
    }

    /// Right multiplication by the transposition of positions `i`, `j`.
    pub fn with_positions_swapped(&self, i: usize, j: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(i - 1, j - 1);
        Permutation { images }
    }

    /// Left multiplication by the transposition of values `a`, `b`.
    pub fn with_values_swapped(&self, a: usize, b: usize) -> Permutation {
        let images = self
            .images
            .iter()
            .map(|&x| {
                if x == a {
                    b
                } else if x == b {
                    a
                } else {
                    x
                }
            })
            .collect();
        Permutation { images }
    }

    /// Bruhat order by the prefix-set criterion: `v <= w` iff for every `j`
    /// the sorted prefix `{v(1),..,v(j)}` is entrywise at most the sorted
    /// prefix of `w`.
    pub fn bruhat_leq(&self, other: &Permutation) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch(self.n(), other.n()));
        }
        let n = self.n();
        let mut a: Vec<usize> = Vec::with_capacity(n);
        let mut b: Vec<usize> = Vec::with_capacity(n);
        for j in 1..=n {
            let x = self.images[j - 1];
            let y = other.images[j - 1];
            let pa = a.partition_point(|&t| t < x);
            a.insert(pa, x);
            let pb = b.partition_point(|&t| t < y);
            b.insert(pb, y);
            if a.iter().zip(b.iter()).any(|(s, t)| s > t) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All `u` with `v <= u <= w`, by filtering S_n. Refuses n > 7.
    pub fn bruhat_interval(v: &Permutation, w: &Permutation) -> Result<Vec<Permutation>> {
        if v.n() != w.n() {
            return Err(Error::RankMismatch(v.n(), w.n()));
        }
        let n = v.n();
        if n > INTERVAL_LIMIT {
            return Err(Error::RankTooLarge {
                op: "bruhat_interval",
                n,
                limit: INTERVAL_LIMIT,
            });
        }
        let mut out = Vec::new();
        for u in Permutation::all(n)? {
            if v.bruhat_leq(&u)? && u.bruhat_leq(w)? {
                out.push(u);
            }
        }
        Ok(out)
    }

    /// Upper covers in Bruhat order: `v t_{ij}` with length exactly one more.
    pub fn bruhat_covers_up(&self) -> Vec<Permutation> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.images[i - 1] < self.images[j - 1] {
                    // Cover iff no intermediate value sits between them.
                    let blocked = (i + 1..j).any(|k| {
                        self.images[i - 1] < self.images[k - 1]
                            && self.images[k - 1] < self.images[j - 1]
                    });
                    if !blocked {
                        out.push(self.with_positions_swapped(i, j));
                    }
                }
            }
        }
        out
    }

    /// All of S_n in lexicographic order. Refuses n > 8.
    pub fn all(n: usize) -> Result<Vec<Permutation>> {
        if n == 0 {
            return Err(Error::Invalid {
                what: "rank",
                msg: "rank 0 is not allowed".into(),
            });
        }
        if n > ENUMERATION_LIMIT {
            return Err(Error::RankTooLarge {
                op: "enumerate S_n",
                n,
                limit: ENUMERATION_LIMIT,
            });
        }
        let mut out = Vec::with_capacity((1..=n).product());
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // Lexicographic successor in place.
            let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        Ok(out)
    }

    /// Lexicographic rank in `0..n!` via the factorial number system.
    pub fn lex_rank(&self) -> u64 {
        let n = self.n();
        let mut rank: u64 = 0;
        for i in 0..n {
            let smaller = (i + 1..n)
                .filter(|&j| self.images[j] < self.images[i])
                .count() as u64;
            let fact: u64 = (1..=(n - 1 - i) as u64).product();
            rank += smaller * fact;
        }
        rank
    }

    /// Inverse of [`lex_rank`](Self::lex_rank).
    pub fn from_lex_rank(n: usize, rank: u64) -> Result<Permutation> {
        if n == 0 || n > 20 {
            return Err(Error::Invalid {
                what: "rank",
                msg: format!("rank {n} out of range 1..=20"),
            });
        }
        let fact_n: u64 = (1..=n as u64).product();
        if rank >= fact_n {
            return Err(Error::Invalid {
                what: "lex rank",
                msg: format!("{rank} >= {n}!"),
            });
        }
        let mut avail: Vec<usize> = (1..=n).collect();
        let mut r = rank;
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let fact: u64 = (1..=(n - 1 - i) as u64).product();
            let idx = (r / fact) as usize;
            r %= fact;
            images.push(avail.remove(idx));
        }
        Ok(Permutation { images })
    }

    /// Does `self` contain `p` as a pattern (an order-isomorphic
    /// subsequence)? Patterns longer than `self` never occur.
    pub fn contains_pattern(&self, p: &Permutation) -> bool {
        self.pattern_witness(p).is_some()
    }

    pub fn avoids(&self, p: &Permutation) -> bool {
        !self.contains_pattern(p)
    }

    /// The lexicographically first occurrence of `p`, as 1-based positions.
    pub fn pattern_witness(&self, p: &Permutation) -> Option<Vec<usize>> {
        let m = p.n();
        if m > self.n() {
            return None;
        }
        let mut chosen: Vec<usize> = Vec::with_capacity(m);
        if self.witness_rec(p, 1, &mut chosen) {
            Some(chosen)
        } else {
            None
        }
    }

    fn witness_rec(&self, p: &Permutation, start: usize, chosen: &mut Vec<usize>) -> bool {
        let n = self.n();
        let m = p.n();
        let k = chosen.len();
        if k == m {
            return true;
        }
        for pos in start..=n {
            if n - pos + 1 < m - k {
                return false;
            }
            let val = self.images[pos - 1];
            let consistent = (0..k).all(|t| {
                let prev = self.images[chosen[t] - 1];
                (p.images[t] < p.images[k]) == (prev < val)
            });
            if consistent {
                chosen.push(pos);
                if self.witness_rec(p, pos + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// Removes position `i`, relabeling both positions and values by the
    /// order-preserving maps onto `[n-1]`.
    pub fn delete_position(&self, i: usize) -> Result<Permutation> {
        let n = self.n();
        if n < 2 {
            return Err(Error::Invalid {
                what: "deletion",
                msg: "cannot delete from a rank-1 permutation".into(),
            });
        }
        if i == 0 || i > n {
            return Err(Error::PositionOutOfRange { pos: i, n });
        }
        let a = self.images[i - 1];
        let images = self
            .images
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i - 1)
            .map(|(_, &x)| if x > a { x - 1 } else { x })
            .collect();
        Ok(Permutation { images })
    }

    /// Removes the position holding value `a`.
    pub fn delete_value(&self, a: usize) -> Result<Permutation> {
        let n = self.n();
        if a == 0 || a > n {
            return Err(Error::PositionOutOfRange { pos: a, n });
        }
        self.delete_position(self.position_of(a))
    }

    /// Splits at the smallest `j < n` such that `w0 v` preserves `{1,..,j}`,
    /// i.e. the graph of `v` is block-antidiagonal. Returns `(j, v1, v2)`
    /// with `v(i) = v1(i) + (n-j)` for `i <= j` and `v(j+t) = v2(t)`.
    pub fn parabolic_split(&self) -> Option<(usize, Permutation, Permutation)> {
        let n = self.n();
        let mut prefix_max = 0usize;
        for j in 1..n {
            let u = n + 1 - self.images[j - 1];
            prefix_max = prefix_max.max(u);
            if prefix_max == j {
                let v1 = Permutation {
                    images: (1..=j).map(|i| self.images[i - 1] - (n - j)).collect(),
                };
                let v2 = Permutation {
                    images: (j + 1..=n).map(|i| self.images[i - 1]).collect(),
                };
                return Some((j, v1, v2));
            }
        }
        None
    }

    /// A reduced word, built by moving each value into place left to right
    /// with adjacent transpositions. Letters are 1-based: letter `a` is the
    /// transposition of positions `a`, `a+1`, applied on the right in the
    /// order listed.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.n();
        let mut word = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        for i in 1..=n {
            let target = self.images[i - 1];
            let mut p = cur.iter().position(|&x| x == target).unwrap() + 1;
            while p > i {
                cur.swap(p - 2, p - 1);
                word.push(p - 1);
                p -= 1;
            }
        }
        word
    }

    /// Product of the listed adjacent transpositions, applied on the right.
    pub fn from_reduced_word(n: usize, word: &[usize]) -> Result<Permutation> {
        if n == 0 {
            return Err(Error::Invalid {
                what: "rank",
                msg: "rank 0 is not allowed".into(),
            });
        }
        let mut cur: Vec<usize> = (1..=n).collect();
        for &a in word {
            if a == 0 || a >= n {
                return Err(Error::PositionOutOfRange { pos: a, n });
            }
            cur.swap(a - 1, a);
        }
        Ok(Permutation { images: cur })
    }

    /// Right descents: positions `a` with `v(a) > v(a+1)`.
    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&a| self.images[a - 1] > self.images[a])
            .collect()
    }

    /// Left descents: values `a` whose position is after that of `a+1`.
    pub fn left_descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&a| self.position_of(a) > self.position_of(a + 1))
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &x in &self.images {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let strs: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", strs.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts a digit string for n <= 9 ("2413") or a comma-separated
    /// list ("10,2,3,..."); a comma anywhere selects the list form.
    fn from_str(s: &str) -> Result<Permutation> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Invalid {
                what: "permutation",
                msg: "empty input".into(),
            });
        }
        let images: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    tok.trim().parse::<usize>().map_err(|e| Error::Invalid {
                        what: "permutation",
                        msg: format!("bad entry {tok:?}: {e}"),
                    })
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) if d >= 1 => Ok(d as usize),
                    _ => Err(Error::Invalid {
                        what: "permutation",
                        msg: format!("bad digit {c:?}"),
                    }),
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(images)
    }
}

/// Convenience constructor for literals in tests and examples.
pub fn perm(images: &[usize]) -> Permutation {
    Permutation::new(images.to_vec()).expect("valid permutation literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_validate() {
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![2, 3]).is_err());
        assert_eq!(Permutation::longest_element(1), perm(&[1]));
        assert_eq!(Permutation::longest_element(4), perm(&[4, 3, 2, 1]));
    }

    #[test]
    fn length_counts_inversions() {
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(perm(&[4, 3, 2, 1]).length(), 6);
        assert_eq!(perm(&[2, 4, 1, 3]).length(), 3);
        for v in Permutation::all(5).unwrap() {
            assert_eq!(v.length(), v.inversions().len());
        }
    }

    #[test]
    fn inversion_sets() {
        assert!(Permutation::identity(3).inversions().is_empty());
        assert_eq!(
            perm(&[2, 1]).inversions(),
            vec![InversionPair::new(1, 2)]
        );
        assert_eq!(
            perm(&[2, 4, 1, 3]).inversions(),
            vec![
                InversionPair::new(1, 3),
                InversionPair::new(2, 3),
                InversionPair::new(2, 4)
            ]
        );
        let v = perm(&[2, 4, 1, 3]);
        let mut all: Vec<InversionPair> = v.inversions();
        all.extend(v.non_inversions());
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn compose_and_inverse() {
        let v = perm(&[2, 4, 1, 3]);
        assert_eq!(v.compose(&v.inverse()).unwrap(), Permutation::identity(4));
        assert_eq!(v.inverse().compose(&v).unwrap(), Permutation::identity(4));
        assert!(v.compose(&Permutation::identity(3)).is_err());
        // w0 v complements values.
        let w0 = Permutation::longest_element(4);
        assert_eq!(w0.compose(&v).unwrap(), perm(&[3, 1, 4, 2]));
    }

    #[test]
    fn bruhat_prefix_criterion() {
        let id = Permutation::identity(4);
        for w in Permutation::all(4).unwrap() {
            assert!(id.bruhat_leq(&w).unwrap());
            assert!(w.bruhat_leq(&Permutation::longest_element(4)).unwrap());
        }
        assert!(perm(&[2, 4, 1, 3]).bruhat_leq(&perm(&[4, 2, 3, 1])).unwrap());
        // Fails at the second prefix: {1,3} vs {1,2}.
        assert!(!perm(&[1, 3, 2, 4]).bruhat_leq(&perm(&[2, 1, 4, 3])).unwrap());
    }

    #[test]
    fn bruhat_matches_cover_closure() {
        // Transitive closure of the covering relation, downward from each w.
        let all = Permutation::all(4).unwrap();
        for v in &all {
            let mut reach = std::collections::HashSet::new();
            let mut frontier = vec![v.clone()];
            reach.insert(v.clone());
            while let Some(u) = frontier.pop() {
                for c in u.bruhat_covers_up() {
                    if reach.insert(c.clone()) {
                        frontier.push(c);
                    }
                }
            }
            for w in &all {
                assert_eq!(
                    v.bruhat_leq(w).unwrap(),
                    reach.contains(w),
                    "disagreement at {v} <= {w}"
                );
            }
        }
    }

    #[test]
    fn covers_change_length_by_one() {
        for v in Permutation::all(5).unwrap() {
            for c in v.bruhat_covers_up() {
                assert_eq!(c.length(), v.length() + 1);
            }
        }
    }

    #[test]
    fn interval_endpoints_and_size() {
        let v = perm(&[2, 4, 1, 3]);
        let single = Permutation::bruhat_interval(&v, &v).unwrap();
        assert_eq!(single, vec![v.clone()]);

        let w0 = Permutation::longest_element(4);
        let up = Permutation::bruhat_interval(&v, &w0).unwrap();
        // The upper interval of 2413 also contains w0 itself, for 8 total.
        assert_eq!(up.len(), 8);
        for listed in [
            perm(&[2, 4, 1, 3]),
            perm(&[4, 2, 1, 3]),
            perm(&[3, 4, 1, 2]),
            perm(&[2, 4, 3, 1]),
            perm(&[4, 3, 1, 2]),
            perm(&[4, 2, 3, 1]),
            perm(&[3, 4, 2, 1]),
            perm(&[4, 3, 2, 1]),
        ] {
            assert!(up.contains(&listed), "missing {listed}");
        }

        let err = Permutation::bruhat_interval(
            &Permutation::identity(8),
            &Permutation::longest_element(8),
        );
        assert!(matches!(err, Err(Error::RankTooLarge { .. })));
    }

    #[test]
    fn pattern_containment() {
        let v = perm(&[2, 4, 1, 3]);
        assert!(v.avoids(&perm(&[1, 3, 2, 4])));
        assert!(v.avoids(&perm(&[2, 1, 4, 3])));
        assert!(Permutation::identity(5).contains_pattern(&perm(&[1, 2, 3])));
        let w = perm(&[1, 4, 2, 5, 3]);
        let witness = w.pattern_witness(&perm(&[1, 2, 3])).unwrap();
        assert_eq!(witness.len(), 3);
        assert!(witness.windows(2).all(|p| p[0] < p[1]));
        // Any witness must be order-isomorphic to the pattern.
        assert!(w.image(witness[0]) < w.image(witness[1]));
        assert!(w.image(witness[1]) < w.image(witness[2]));
        // Longer patterns never occur.
        assert!(perm(&[2, 1]).avoids(&perm(&[1, 2, 3])));
    }

    #[test]
    fn deletion_relabels() {
        let v = perm(&[6, 2, 7, 8, 5, 3, 1, 4]);
        assert_eq!(v.delete_position(2).unwrap(), perm(&[5, 6, 7, 4, 2, 1, 3]));
        assert_eq!(v.delete_value(2).unwrap(), perm(&[5, 6, 7, 4, 2, 1, 3]));
        let w = perm(&[3, 4, 7, 2, 1, 6, 5]);
        assert_eq!(w.delete_value(2).unwrap(), perm(&[2, 3, 6, 1, 5, 4]));
        let id = Permutation::identity(5);
        assert_eq!(id.delete_position(3).unwrap(), Permutation::identity(4));
        assert!(id.delete_position(0).is_err());
        assert!(id.delete_position(6).is_err());
        assert!(perm(&[1]).delete_position(1).is_err());
    }

    #[test]
    fn deletion_preserves_patterns() {
        // Patterns of the deletion are patterns of the original.
        let patterns: Vec<Permutation> = Permutation::all(3).unwrap();
        for v in Permutation::all(5).unwrap() {
            for i in 1..=5 {
                let d = v.delete_position(i).unwrap();
                for p in &patterns {
                    if d.contains_pattern(p) {
                        assert!(v.contains_pattern(p), "{v} / {i} -> {d} vs {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn parabolic_split_blocks() {
        // The first block lives in the top-right corner of the grid.
        let v = perm(&[7, 4, 5, 8, 6, 1, 3, 2]);
        let (j, v1, v2) = v.parabolic_split().unwrap();
        assert_eq!(j, 5);
        assert_eq!(v1, perm(&[4, 1, 2, 5, 3]));
        assert_eq!(v2, perm(&[1, 3, 2]));

        // w0 splits at every j; the smallest is 1.
        let w0 = Permutation::longest_element(4);
        let (j, v1, v2) = w0.parabolic_split().unwrap();
        assert_eq!(j, 1);
        assert_eq!(v1, perm(&[1]));
        assert_eq!(v2, Permutation::longest_element(3));

        // w0 v a full cycle: no split.
        let v = perm(&[3, 2, 1, 4]);
        assert_eq!(
            Permutation::longest_element(4).compose(&v).unwrap(),
            perm(&[2, 3, 4, 1])
        );
        assert!(v.parabolic_split().is_none());

        // Identity never splits antidiagonally except...
        // w0 . id = w0 preserves no proper prefix set {1,..,j}? It does not.
        assert!(Permutation::identity(4).parabolic_split().is_none());

        // Reconstruction from the blocks.
        let v = perm(&[7, 4, 5, 8, 6, 1, 3, 2]);
        let (j, v1, v2) = v.parabolic_split().unwrap();
        let n = v.n();
        for i in 1..=j {
            assert_eq!(v.image(i), v1.image(i) + (n - j));
        }
        for t in 1..=n - j {
            assert_eq!(v.image(j + t), v2.image(t));
        }
    }

    #[test]
    fn reduced_words_are_reduced() {
        assert_eq!(Permutation::identity(4).reduced_word(), Vec::<usize>::new());
        assert_eq!(perm(&[2, 1, 3]).reduced_word(), vec![1]);
        assert_eq!(perm(&[2, 4, 1, 3]).reduced_word().len(), 3);
        for v in Permutation::all(6).unwrap() {
            let word = v.reduced_word();
            assert_eq!(word.len(), v.length(), "word not reduced for {v}");
            assert_eq!(Permutation::from_reduced_word(6, &word).unwrap(), v);
        }
    }

    #[test]
    fn descent_sets() {
        let v = perm(&[2, 4, 1, 3]);
        assert_eq!(v.right_descents(), vec![2]);
        // Value 1 sits after value 2? positions: 1 at 3, 2 at 1 -> yes for a=1.
        assert_eq!(v.left_descents(), vec![1, 3]);
        for v in Permutation::all(5).unwrap() {
            for a in v.right_descents() {
                assert_eq!(v.with_positions_swapped(a, a + 1).length(), v.length() - 1);
            }
            for a in v.left_descents() {
                assert_eq!(v.with_values_swapped(a, a + 1).length(), v.length() - 1);
            }
        }
    }

    #[test]
    fn lex_rank_round_trip() {
        let all = Permutation::all(5).unwrap();
        for (r, v) in all.iter().enumerate() {
            assert_eq!(v.lex_rank(), r as u64);
            assert_eq!(&Permutation::from_lex_rank(5, r as u64).unwrap(), v);
        }
        assert!(Permutation::from_lex_rank(5, 120).is_err());
    }

    #[test]
    fn parse_and_display() {
        let v: Permutation = "2413".parse().unwrap();
        assert_eq!(v, perm(&[2, 4, 1, 3]));
        assert_eq!(v.to_string(), "2413");
        let w: Permutation = "10,2,3,4,5,6,7,8,9,1".parse().unwrap();
        assert_eq!(w.image(1), 10);
        assert_eq!(w.to_string(), "10,2,3,4,5,6,7,8,9,1");
        assert!(" 2413 ".parse::<Permutation>().is_ok());
        assert!("".parse::<Permutation>().is_err());
        assert!("20".parse::<Permutation>().is_err());
        assert!("1,1".parse::<Permutation>().is_err());
        assert!("0".parse::<Permutation>().is_err());
        assert!("abc".parse::<Permutation>().is_err());
        assert!("4,x".parse::<Permutation>().is_err());
    }
}
