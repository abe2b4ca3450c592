//! Exact rational matrices: fraction-free determinants, minor enumeration,
//! k-positivity tests, and Dodgson condensation.
//!
//! Every value is a `BigRational`; nothing here rounds. Determinants clear
//! denominators row by row and run integer Bareiss elimination, so the cost
//! stays polynomial in the bit size of the entries.

pub mod gen;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::region::Region;
use crate::{Error, Result};

pub type Rat = BigRational;

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// -1, 0, or 1.
pub fn sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// A square minor named by the row and column indices it keeps
/// (1-based, strictly increasing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSpec {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::Invalid {
                what: "minor",
                msg: format!("{} rows vs {} columns", rows.len(), cols.len()),
            });
        }
        for set in [&rows, &cols] {
            if set.contains(&0) {
                return Err(Error::Invalid {
                    what: "minor",
                    msg: "indices are 1-based".into(),
                });
            }
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Invalid {
                    what: "minor",
                    msg: "indices must be strictly increasing".into(),
                });
            }
        }
        Ok(MinorSpec { rows, cols })
    }

    /// The minor keeping everything except the given rows and columns of an
    /// n x n matrix.
    pub fn from_removed(n: usize, rows_out: &[usize], cols_out: &[usize]) -> Result<Self> {
        if rows_out.len() != cols_out.len() {
            return Err(Error::Invalid {
                what: "minor",
                msg: "must remove as many rows as columns".into(),
            });
        }
        let keep = |out: &[usize]| -> Result<Vec<usize>> {
            if out.iter().any(|&i| i == 0 || i > n) {
                return Err(Error::Invalid {
                    what: "minor",
                    msg: format!("removed index outside [{n}]"),
                });
            }
            Ok((1..=n).filter(|i| !out.contains(i)).collect())
        };
        let rows = keep(rows_out)?;
        let cols = keep(cols_out)?;
        if rows.len() != n - rows_out.len() {
            return Err(Error::Invalid {
                what: "minor",
                msg: "repeated removed row".into(),
            });
        }
        if cols.len() != n - cols_out.len() {
            return Err(Error::Invalid {
                what: "minor",
                msg: "repeated removed column".into(),
            });
        }
        MinorSpec::new(rows, cols)
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// The complementary minor inside an n x n matrix.
    pub fn complement(&self, n: usize) -> Result<MinorSpec> {
        if self.rows.last().is_some_and(|&r| r > n) || self.cols.last().is_some_and(|&c| c > n) {
            return Err(Error::Invalid {
                what: "minor",
                msg: format!("index outside [{n}]"),
            });
        }
        MinorSpec::new(
            (1..=n).filter(|i| !self.rows.contains(i)).collect(),
            (1..=n).filter(|i| !self.cols.contains(i)).collect(),
        )
    }
}

/// All size-`k` lists of indices from `1..=n`, lexicographic.
pub fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (1..=k).collect();
    loop {
        out.push(c.clone());
        let mut i = k;
        while i > 0 && c[i - 1] == n - (k - i) {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        c[i - 1] += 1;
        for j in i..k {
            c[j] = c[j - 1] + 1;
        }
    }
    out
}

/// Every square minor of the given size in an `n_rows x n_cols` matrix,
/// ordered lexicographically by rows then columns.
pub fn minor_specs(n_rows: usize, n_cols: usize, size: usize) -> Vec<MinorSpec> {
    let rows = index_subsets(n_rows, size);
    let cols = index_subsets(n_cols, size);
    let mut out = Vec::with_capacity(rows.len() * cols.len());
    for r in &rows {
        for c in &cols {
            out.push(MinorSpec {
                rows: r.clone(),
                cols: c.clone(),
            });
        }
    }
    out
}

/// A dense matrix of exact rationals, 1-based accessors.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map(|r| r.len()).unwrap_or(0);
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::Invalid {
                what: "matrix",
                msg: "no entries".into(),
            });
        }
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Invalid {
                what: "matrix",
                msg: "ragged rows".into(),
            });
        }
        Ok(RatMatrix {
            n_rows,
            n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        RatMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
    }

    pub fn zero(n_rows: usize, n_cols: usize) -> Self {
        assert!(n_rows >= 1 && n_cols >= 1);
        RatMatrix {
            n_rows,
            n_cols,
            data: vec![Rat::zero(); n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 1..=n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.n_rows)
        } else {
            Err(Error::NotSquare {
                rows: self.n_rows,
                cols: self.n_cols,
            })
        }
    }

    pub fn get(&self, row: usize, col: usize) -> &Rat {
        &self.data[(row - 1) * self.n_cols + (col - 1)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rat) {
        self.data[(row - 1) * self.n_cols + (col - 1)] = value;
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut m = RatMatrix::zero(self.n_cols, self.n_rows);
        for r in 1..=self.n_rows {
            for c in 1..=self.n_cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.n_cols != other.n_rows {
            return Err(Error::RankMismatch(self.n_cols, other.n_rows));
        }
        let mut m = RatMatrix::zero(self.n_rows, other.n_cols);
        for r in 1..=self.n_rows {
            for c in 1..=other.n_cols {
                let mut acc = Rat::zero();
                for k in 1..=self.n_cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                m.set(r, c, acc);
            }
        }
        Ok(m)
    }

    pub fn submatrix(&self, spec: &MinorSpec) -> Result<RatMatrix> {
        if spec.rows.last().is_some_and(|&r| r > self.n_rows)
            || spec.cols.last().is_some_and(|&c| c > self.n_cols)
        {
            return Err(Error::Invalid {
                what: "minor",
                msg: format!(
                    "index outside a {} x {} matrix",
                    self.n_rows, self.n_cols
                ),
            });
        }
        if spec.size() == 0 {
            return Err(Error::Invalid {
                what: "minor",
                msg: "empty submatrix has no entries".into(),
            });
        }
        let mut rows = Vec::with_capacity(spec.size());
        for &r in &spec.rows {
            rows.push(spec.cols.iter().map(|&c| self.get(r, c).clone()).collect());
        }
        RatMatrix::new(rows)
    }

    /// Determinant of the submatrix named by `spec`; the empty minor is 1.
    pub fn minor(&self, spec: &MinorSpec) -> Result<Rat> {
        if spec.size() == 0 {
            return Ok(Rat::one());
        }
        self.submatrix(spec)?.det()
    }

    /// Exact determinant: per-row denominator clearing, then fraction-free
    /// Bareiss elimination over the integers.
    pub fn det(&self) -> Result<Rat> {
        let n = self.require_square()?;
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for r in 1..=n {
            let mut l = BigInt::one();
            for c in 1..=n {
                l = l.lcm(self.get(r, c).denom());
            }
            m.push(
                (1..=n)
                    .map(|c| {
                        let e = self.get(r, c);
                        e.numer() * (&l / e.denom())
                    })
                    .collect(),
            );
            scale *= l;
        }
        Ok(Rat::new(bareiss_int_det(m), scale))
    }

    /// Copy with entries outside the region set to zero. The region and the
    /// matrix must have matching size.
    pub fn restrict(&self, region: &Region) -> Result<RatMatrix> {
        let n = self.require_square()?;
        if region.n() != n {
            return Err(Error::RankMismatch(region.n(), n));
        }
        let mut m = RatMatrix::zero(n, n);
        for r in 1..=n {
            for c in 1..=n {
                if region.contains(r, c) {
                    m.set(r, c, self.get(r, c).clone());
                }
            }
        }
        Ok(m)
    }

    fn check_minor_size(&self, k: usize) -> Result<usize> {
        let n = self.require_square()?;
        if k == 0 || k > n {
            return Err(Error::MinorSizeOutOfRange { k, n });
        }
        Ok(n)
    }

    /// First minor of size at most `k` that is not strictly positive,
    /// scanning sizes upward and specs lexicographically.
    pub fn first_nonpositive_minor(&self, k: usize) -> Result<Option<(MinorSpec, Rat)>> {
        let n = self.check_minor_size(k)?;
        for size in 1..=k {
            for spec in minor_specs(n, n, size) {
                let d = self.minor(&spec)?;
                if !d.is_positive() {
                    return Ok(Some((spec, d)));
                }
            }
        }
        Ok(None)
    }

    /// First strictly negative minor of size at most `k`.
    pub fn first_negative_minor(&self, k: usize) -> Result<Option<(MinorSpec, Rat)>> {
        let n = self.check_minor_size(k)?;
        for size in 1..=k {
            for spec in minor_specs(n, n, size) {
                let d = self.minor(&spec)?;
                if d.is_negative() {
                    return Ok(Some((spec, d)));
                }
            }
        }
        Ok(None)
    }

    /// Are all minors of size `1..=k` strictly positive?
    pub fn is_k_positive(&self, k: usize) -> Result<bool> {
        Ok(self.first_nonpositive_minor(k)?.is_none())
    }

    /// Are all minors of size `1..=k` nonnegative?
    pub fn is_k_nonnegative(&self, k: usize) -> Result<bool> {
        Ok(self.first_negative_minor(k)?.is_none())
    }

    /// Determinant by Dodgson condensation, falling back to elimination when
    /// an interior pivot vanishes.
    pub fn dodgson_det(&self) -> Result<Rat> {
        let n = self.require_square()?;
        if n == 1 {
            return Ok(self.get(1, 1).clone());
        }
        // prev has size n+1-(t-1), cur has size n+1-t; both 0-indexed here.
        let mut prev: Vec<Vec<Rat>> = vec![vec![Rat::one(); n + 1]; n + 1];
        let mut cur: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i + 1, j + 1).clone()).collect())
            .collect();
        for _t in 1..n {
            let size = cur.len() - 1;
            let mut next: Vec<Vec<Rat>> = Vec::with_capacity(size);
            for i in 0..size {
                let mut row = Vec::with_capacity(size);
                for j in 0..size {
                    let pivot = &prev[i + 1][j + 1];
                    if pivot.is_zero() {
                        return self.det();
                    }
                    let v = (&cur[i][j] * &cur[i + 1][j + 1]
                        - &cur[i][j + 1] * &cur[i + 1][j])
                        / pivot;
                    row.push(v);
                }
                next.push(row);
            }
            prev = cur;
            cur = next;
        }
        Ok(cur[0][0].clone())
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {} x {}:", self.n_rows, self.n_cols)?;
        for r in 1..=self.n_rows {
            let row: Vec<String> = (1..=self.n_cols)
                .map(|c| self.get(r, c).to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Both sides of the Desnanot-Jacobi identity
/// `det(M) * det(M with first+last rows and columns removed)
///  = det(NW) * det(SE) - det(NE) * det(SW)`,
/// where the four blocks remove one extremal row and column each.
pub fn lewis_carroll_sides(m: &RatMatrix) -> Result<(Rat, Rat)> {
    let n = if m.is_square() {
        m.n_rows()
    } else {
        return Err(Error::NotSquare {
            rows: m.n_rows(),
            cols: m.n_cols(),
        });
    };
    if n < 2 {
        return Err(Error::Invalid {
            what: "matrix",
            msg: "identity needs size at least 2".into(),
        });
    }
    let interior = m.minor(&MinorSpec::from_removed(n, &[1, n], &[1, n])?)?;
    let nw = m.minor(&MinorSpec::from_removed(n, &[n], &[n])?)?;
    let se = m.minor(&MinorSpec::from_removed(n, &[1], &[1])?)?;
    let ne = m.minor(&MinorSpec::from_removed(n, &[n], &[1])?)?;
    let sw = m.minor(&MinorSpec::from_removed(n, &[1], &[n])?)?;
    Ok((m.det()? * interior, nw * se - ne * sw))
}

fn bareiss_int_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for r in 0..n - 1 {
        if m[r][r].is_zero() {
            match (r + 1..n).find(|&i| !m[i][r].is_zero()) {
                Some(p) => {
                    m.swap(r, p);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in r + 1..n {
            for j in r + 1..n {
                // Exact division: Bareiss guarantees prev divides the product.
                m[i][j] = (&m[r][r] * &m[i][j] - &m[i][r] * &m[r][j]) / &prev;
            }
            m[i][r] = BigInt::zero();
        }
        prev = m[r][r].clone();
    }
    let d = m.pop().unwrap().pop().unwrap();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cofactor_det(m: &RatMatrix) -> Rat {
        let n = m.n_rows();
        if n == 1 {
            return m.get(1, 1).clone();
        }
        let mut acc = Rat::zero();
        for c in 1..=n {
            let rows: Vec<usize> = (2..=n).collect();
            let cols: Vec<usize> = (1..=n).filter(|&j| j != c).collect();
            let sub = m.submatrix(&MinorSpec::new(rows, cols).unwrap()).unwrap();
            let term = m.get(1, c) * cofactor_det(&sub);
            if c % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn sample_matrix(seed: u64, n: usize) -> RatMatrix {
        let mut rng = gen::rng_from_seed(seed);
        gen::random_matrix(&mut rng, n, n)
    }

    #[test]
    fn det_of_reference_matrix() {
        let m = RatMatrix::from_int_rows(&[&[11, 9, 3], &[8, 7, 3], &[2, 2, 1]]).unwrap();
        assert_eq!(m.det().unwrap(), rat_int(-1));
        assert!(m.is_k_positive(2).unwrap());
        assert!(!m.is_k_positive(3).unwrap());
        assert!(!m.is_k_nonnegative(3).unwrap());
        assert!(m.is_k_nonnegative(2).unwrap());
        let tl = MinorSpec::new(vec![1, 2], vec![1, 2]).unwrap();
        assert_eq!(m.minor(&tl).unwrap(), rat_int(5));
        let (spec, val) = m.first_nonpositive_minor(3).unwrap().unwrap();
        assert_eq!(spec.size(), 3);
        assert_eq!(val, rat_int(-1));
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        for n in 1..=5 {
            for seed in 0..6 {
                let m = sample_matrix(seed * 31 + n as u64, n);
                assert_eq!(m.det().unwrap(), cofactor_det(&m), "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn det_is_multiplicative() {
        for seed in 0..5 {
            let a = sample_matrix(100 + seed, 4);
            let b = sample_matrix(200 + seed, 4);
            let ab = a.mul(&b).unwrap();
            assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
        }
    }

    #[test]
    fn det_error_and_edge_cases() {
        let m = RatMatrix::zero(2, 3);
        assert!(matches!(m.det(), Err(Error::NotSquare { rows: 2, cols: 3 })));
        assert_eq!(RatMatrix::identity(5).det().unwrap(), rat_int(1));
        // Singular with a zero leading pivot: forces the row swap.
        let s = RatMatrix::from_int_rows(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 8]]).unwrap();
        assert_eq!(s.det().unwrap(), rat_int(0));
        // Swap path with a nonzero result picks up the sign flip.
        let p = RatMatrix::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(p.det().unwrap(), rat_int(-1));
        let z = RatMatrix::from_int_rows(&[&[0, 0], &[1, 1]]).unwrap();
        assert_eq!(z.det().unwrap(), rat_int(0));
    }

    #[test]
    fn minor_spec_conventions() {
        let spec = MinorSpec::from_removed(5, &[2, 4], &[1, 5]).unwrap();
        assert_eq!(spec.rows(), &[1, 3, 5]);
        assert_eq!(spec.cols(), &[2, 3, 4]);
        let comp = spec.complement(5).unwrap();
        assert_eq!(comp.rows(), &[2, 4]);
        assert_eq!(comp.cols(), &[1, 5]);
        assert!(MinorSpec::new(vec![2, 1], vec![1, 2]).is_err());
        assert!(MinorSpec::new(vec![1, 1], vec![1, 2]).is_err());
        assert!(MinorSpec::new(vec![0], vec![1]).is_err());
        assert!(MinorSpec::new(vec![1], vec![1, 2]).is_err());
        assert!(MinorSpec::from_removed(3, &[2, 2], &[1, 3]).is_err());
        // Empty minor is 1 by convention.
        let m = RatMatrix::identity(3);
        let empty = MinorSpec::new(vec![], vec![]).unwrap();
        assert_eq!(m.minor(&empty).unwrap(), rat_int(1));
        assert!(m.submatrix(&empty).is_err());
    }

    #[test]
    fn minor_size_validation() {
        let m = RatMatrix::identity(3);
        assert!(matches!(
            m.is_k_positive(0),
            Err(Error::MinorSizeOutOfRange { k: 0, n: 3 })
        ));
        assert!(matches!(
            m.is_k_positive(4),
            Err(Error::MinorSizeOutOfRange { k: 4, n: 3 })
        ));
        assert_eq!(minor_specs(3, 3, 2).len(), 9);
        assert_eq!(index_subsets(4, 0), vec![Vec::<usize>::new()]);
        assert!(index_subsets(3, 4).is_empty());
    }

    #[test]
    fn restrict_zeroes_outside_region() {
        use crate::perm::Permutation;
        let m = RatMatrix::from_int_rows(&[&[11, 9, 3], &[8, 7, 3], &[2, 2, 1]]).unwrap();
        assert_eq!(
            m.restrict(&Region::full(3)).unwrap().det().unwrap(),
            m.det().unwrap()
        );
        let anti = Region::graph(&Permutation::longest_element(3));
        let r = m.restrict(&anti).unwrap();
        // Only the antidiagonal survives: det = -(3 * 7 * 2).
        assert_eq!(r.det().unwrap(), rat_int(-42));
        assert_eq!(r.get(1, 1), &Rat::zero());
        assert!(m.restrict(&Region::full(4)).is_err());
    }

    #[test]
    fn lewis_carroll_identity_holds() {
        for n in 2..=5 {
            for seed in 0..5 {
                let m = sample_matrix(300 + seed + n as u64 * 17, n);
                let (lhs, rhs) = lewis_carroll_sides(&m).unwrap();
                assert_eq!(lhs, rhs, "n={n} seed={seed}");
            }
        }
        // Degenerate interior as well.
        let m = RatMatrix::from_int_rows(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 2]]).unwrap();
        let (lhs, rhs) = lewis_carroll_sides(&m).unwrap();
        assert_eq!(lhs, rhs);
        assert!(lewis_carroll_sides(&RatMatrix::identity(1)).is_err());
    }

    #[test]
    fn dodgson_matches_elimination() {
        for n in 1..=6 {
            for seed in 0..4 {
                let m = sample_matrix(400 + seed + n as u64 * 13, n);
                assert_eq!(m.dodgson_det().unwrap(), m.det().unwrap(), "n={n}");
            }
        }
        // Interior zeros force the fallback path.
        let id = RatMatrix::identity(4);
        assert_eq!(id.dodgson_det().unwrap(), rat_int(1));
        let m = RatMatrix::from_int_rows(&[&[1, 2, 3], &[4, 8, 6], &[7, 8, 9]]).unwrap();
        assert_eq!(m.dodgson_det().unwrap(), m.det().unwrap());
    }

    #[test]
    fn transpose_and_mul() {
        let m = RatMatrix::from_int_rows(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(m.transpose().get(1, 2), &rat_int(3));
        let id = RatMatrix::identity(2);
        assert_eq!(m.mul(&id).unwrap(), m);
        assert!(m.mul(&RatMatrix::identity(3)).is_err());
        assert!(RatMatrix::new(vec![vec![rat_int(1)], vec![]]).is_err());
    }
}
