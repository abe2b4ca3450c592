//! Kazhdan-Lusztig polynomials for the symmetric group, computed two
//! independent ways.
//!
//! The workhorse is the classical descent recursion with mu-correction
//! terms, memoized in a [`KlCache`]. As a cross-check,
//! [`kl_table_by_inversion`] recovers the same polynomials from
//! R-polynomials through the triangular system that defines them, sharing
//! no code with the recursion beyond the permutation type. Agreement of the
//! two routes (plus the all-ones shortcut on smooth upper elements) is what
//! the verification suites and the frozen golden tables rest on.

use std::collections::HashMap;
use std::fmt;

use crate::perm::Permutation;
use crate::{Error, Result};

/// Default rank cap for cached polynomial computation.
pub const DEFAULT_MAX_N: usize = 6;

/// A polynomial in `q` with integer coefficients, dense and normalized
/// (no trailing zeros; the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![1] }
    }

    /// `q^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = 1;
        IntPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^d` (zero beyond the degree).
    pub fn coeff(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|d| self.coeff(d) + other.coeff(d)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|d| self.coeff(d) - other.coeff(d)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: i64) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Multiplication by `q^d`.
    pub fn shift(&self, d: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![0; d];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match d {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if d == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Does the Schubert variety of `w` have a smooth total space, i.e. does
/// `w` avoid both 4231 and 3412? Exactly then is every polynomial
/// `P(x, w)` with `x <= w` equal to 1.
pub fn schubert_smooth(w: &Permutation) -> bool {
    let p4231 = Permutation::new(vec![4, 2, 3, 1]).unwrap();
    let p3412 = Permutation::new(vec![3, 4, 1, 2]).unwrap();
    w.avoids(&p4231) && w.avoids(&p3412)
}

/// Memoizing calculator for the descent recursion.
pub struct KlCache {
    memo: HashMap<(Permutation, Permutation), IntPoly>,
    smooth: HashMap<Permutation, bool>,
    max_n: usize,
    use_smoothness_shortcut: bool,
}

impl KlCache {
    pub fn new() -> Self {
        KlCache::with_max_n(DEFAULT_MAX_N)
    }

    pub fn with_max_n(max_n: usize) -> Self {
        KlCache {
            memo: HashMap::new(),
            smooth: HashMap::new(),
            max_n,
            use_smoothness_shortcut: true,
        }
    }

    /// Disables the all-ones shortcut on smooth upper elements, forcing the
    /// full recursion everywhere (slower; used to cross-check the shortcut).
    pub fn without_smoothness_shortcut(max_n: usize) -> Self {
        KlCache {
            memo: HashMap::new(),
            smooth: HashMap::new(),
            max_n,
            use_smoothness_shortcut: false,
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    fn check_rank(&self, x: &Permutation, w: &Permutation) -> Result<()> {
        if x.n() != w.n() {
            return Err(Error::RankMismatch(x.n(), w.n()));
        }
        if w.n() > self.max_n {
            return Err(Error::RankTooLarge {
                op: "kazhdan-lusztig polynomial",
                n: w.n(),
                limit: self.max_n,
            });
        }
        Ok(())
    }

    /// `P(x, w)` by the descent recursion.
    pub fn polynomial(&mut self, x: &Permutation, w: &Permutation) -> Result<IntPoly> {
        self.check_rank(x, w)?;
        self.poly_inner(x, w)
    }

    /// `P(x, w)` evaluated at `q = 1`.
    pub fn at_one(&mut self, x: &Permutation, w: &Permutation) -> Result<i64> {
        Ok(self.polynomial(x, w)?.eval_at_one())
    }

    /// The mu-coefficient: coefficient of `q^((len(w) - len(x) - 1) / 2)`
    /// in `P(x, w)`, zero when that exponent is not a nonnegative integer.
    pub fn mu(&mut self, x: &Permutation, w: &Permutation) -> Result<i64> {
        self.check_rank(x, w)?;
        let lx = x.length();
        let lw = w.length();
        if lx >= lw || (lw - lx).is_multiple_of(2) {
            return Ok(0);
        }
        let p = self.poly_inner(x, w)?;
        Ok(p.coeff((lw - lx - 1) / 2))
    }

    fn is_smooth(&mut self, w: &Permutation) -> bool {
        if let Some(&s) = self.smooth.get(w) {
            return s;
        }
        let s = schubert_smooth(w);
        self.smooth.insert(w.clone(), s);
        s
    }

    fn poly_inner(&mut self, x: &Permutation, w: &Permutation) -> Result<IntPoly> {
        if !x.bruhat_leq(w)? {
            return Ok(IntPoly::zero());
        }
        if x == w || w.length() <= 2 {
            // Intervals this low are lattices of smooth elements.
            return Ok(IntPoly::one());
        }
        if self.use_smoothness_shortcut && self.is_smooth(w) {
            return Ok(IntPoly::one());
        }
        if let Some(p) = self.memo.get(&(x.clone(), w.clone())) {
            return Ok(p.clone());
        }

        // Descend on the first right descent s of w: with c = 1 if xs < x
        // and 0 otherwise,
        //   P(x, w) = q^(1-c) P(xs, ws) + q^c P(x, ws)
        //           - sum over x <= z <= ws with zs < z of
        //             mu(z, ws) q^((len(w) - len(z)) / 2) P(x, z).
        let s = *w
            .right_descents()
            .first()
            .ok_or_else(|| Error::Internal("no descent on a non-identity element".into()))?;
        let ws = w.with_positions_swapped(s, s + 1);
        let xs = x.with_positions_swapped(s, s + 1);
        let c = usize::from(xs.length() < x.length());

        let mut p = self
            .poly_inner(&xs, &ws)?
            .shift(1 - c)
            .add(&self.poly_inner(x, &ws)?.shift(c));

        let lw = w.length();
        for z in Permutation::bruhat_interval(x, &ws)? {
            let zs = z.with_positions_swapped(s, s + 1);
            if zs.length() >= z.length() {
                continue;
            }
            let lz = z.length();
            if !(lw - lz).is_multiple_of(2) {
                continue;
            }
            let m = self.mu(&z, &ws)?;
            if m == 0 {
                continue;
            }
            let correction = self.poly_inner(x, &z)?.scale(m).shift((lw - lz) / 2);
            p = p.sub(&correction);
        }

        // Two theorems worth asserting on every computed value: constant
        // term 1 and degree strictly below half the length gap.
        if p.coeff(0) != 1 {
            return Err(Error::Internal(format!(
                "P({x}, {w}) has constant term {}",
                p.coeff(0)
            )));
        }
        let gap = w.length() - x.length();
        if p.degree().unwrap_or(0) * 2 + 1 > gap {
            return Err(Error::Internal(format!(
                "P({x}, {w}) = {p} exceeds the degree bound"
            )));
        }

        self.memo.insert((x.clone(), w.clone()), p.clone());
        Ok(p)
    }
}

impl Default for KlCache {
    fn default() -> Self {
        KlCache::new()
    }
}

/// R-polynomial `R(x, y)` with memoization, by the right-descent recursion:
/// for `ys < y`, `R(x, y) = R(xs, ys)` if `xs < x`, and otherwise
/// `(q - 1) R(x, ys) + q R(xs, ys)`.
fn r_polynomial(
    x: &Permutation,
    y: &Permutation,
    memo: &mut HashMap<(Permutation, Permutation), IntPoly>,
) -> Result<IntPoly> {
    if x == y {
        return Ok(IntPoly::one());
    }
    if !x.bruhat_leq(y)? {
        return Ok(IntPoly::zero());
    }
    if let Some(r) = memo.get(&(x.clone(), y.clone())) {
        return Ok(r.clone());
    }
    let s = *y
        .right_descents()
        .first()
        .ok_or_else(|| Error::Internal("no descent on a non-identity element".into()))?;
    let ys = y.with_positions_swapped(s, s + 1);
    let xs = x.with_positions_swapped(s, s + 1);
    let r = if xs.length() < x.length() {
        r_polynomial(&xs, &ys, memo)?
    } else {
        let q_minus_1 = IntPoly::from_coeffs(vec![-1, 1]);
        q_minus_1
            .mul(&r_polynomial(x, &ys, memo)?)
            .add(&r_polynomial(&xs, &ys, memo)?.shift(1))
    };
    memo.insert((x.clone(), y.clone()), r.clone());
    Ok(r)
}

/// All polynomials `P(x, w)` for `x <= w`, recovered from R-polynomials
/// alone by solving the defining triangular system downward from `w`:
///
/// `q^(len(w) - len(x)) reverse(P(x, w)) = sum over x <= z <= w of
/// R(x, z) P(z, w)`.
///
/// The low half of the right side determines `P(x, w)`; the high half is
/// redundant and is checked, so an inconsistent system errors out instead
/// of returning garbage. Shares nothing with the descent recursion.
pub fn kl_table_by_inversion(w: &Permutation) -> Result<Vec<(Permutation, IntPoly)>> {
    let mut interval =
        Permutation::bruhat_interval(&Permutation::identity(w.n()), w)?;
    // Downward induction: longer elements first.
    interval.sort_by(|a, b| b.length().cmp(&a.length()).then_with(|| a.cmp(b)));
    let mut rmemo: HashMap<(Permutation, Permutation), IntPoly> = HashMap::new();
    let mut table: Vec<(Permutation, IntPoly)> = Vec::with_capacity(interval.len());
    for x in &interval {
        if x == w {
            table.push((x.clone(), IntPoly::one()));
            continue;
        }
        let gap = w.length() - x.length();
        // s = sum of R(x, z) P(z, w) over z strictly above x.
        let mut s = IntPoly::zero();
        for (z, p_zw) in &table {
            let r = r_polynomial(x, z, &mut rmemo)?;
            if !r.is_zero() {
                s = s.add(&r.mul(p_zw));
            }
        }
        // q^gap reverse(P) - P = s, and deg P <= (gap - 1) / 2, so the low
        // coefficients of s are -P and the high ones repeat P reversed.
        let half = (gap - 1) / 2; // gap >= 1 since x != w
        let mut coeffs = vec![0i64; half + 1];
        for (d, c) in coeffs.iter_mut().enumerate() {
            *c = -s.coeff(d);
        }
        let p = IntPoly::from_coeffs(coeffs);
        for d in half + 1..=gap {
            if s.coeff(d) != p.coeff(gap - d) {
                return Err(Error::Internal(format!(
                    "triangular system inconsistent at P({x}, {w}), degree {d}"
                )));
            }
        }
        if s.degree().map(|d| d > gap).unwrap_or(false) {
            return Err(Error::Internal(format!(
                "triangular system overflow at P({x}, {w})"
            )));
        }
        table.push((x.clone(), p));
    }
    table.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(table)
}

/// Single polynomial through the R-polynomial route.
pub fn kl_polynomial_by_inversion(x: &Permutation, w: &Permutation) -> Result<IntPoly> {
    if x.n() != w.n() {
        return Err(Error::RankMismatch(x.n(), w.n()));
    }
    if !x.bruhat_leq(w)? {
        return Ok(IntPoly::zero());
    }
    let table = kl_table_by_inversion(w)?;
    table
        .into_iter()
        .find(|(z, _)| z == x)
        .map(|(_, p)| p)
        .ok_or_else(|| Error::Internal("interval element missing from its own table".into()))
}
