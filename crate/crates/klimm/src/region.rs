//! Subsets of the n x n grid: permutation graphs, Bruhat interval graphs,
//! maximal bounding boxes with their coloring, largest contained squares,
//! and Young-diagram recognizers.
//!
//! Grid cells are 1-based `(row, column)` pairs with row 1 at the top, so
//! the main diagonal is `{(i, i)}` and the antidiagonal is `{(i, n+1-i)}`.

use std::fmt;

use crate::perm::{InversionPair, Permutation};
use crate::{Error, Result};

/// A set of cells in the n x n grid, stored densely.
#[derive(Clone, PartialEq, Eq)]
pub struct Region {
    n: usize,
    cells: Vec<bool>,
}

impl Region {
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "grid size must be at least 1");
        Region {
            n,
            cells: vec![false; n * n],
        }
    }

    pub fn full(n: usize) -> Self {
        assert!(n >= 1, "grid size must be at least 1");
        Region {
            n,
            cells: vec![true; n * n],
        }
    }

    pub fn from_cells(n: usize, cells: &[(usize, usize)]) -> Result<Self> {
        let mut r = Region::empty(n);
        for &(row, col) in cells {
            if row == 0 || row > n || col == 0 || col > n {
                return Err(Error::Invalid {
                    what: "region cell",
                    msg: format!("({row}, {col}) outside [{n}]^2"),
                });
            }
            r.insert(row, col);
        }
        Ok(r)
    }

    /// The graph `{(i, v(i))}` of a permutation.
    pub fn graph(v: &Permutation) -> Self {
        let n = v.n();
        let mut r = Region::empty(n);
        for i in 1..=n {
            r.insert(i, v.image(i));
        }
        r
    }

    /// Cells `(i, 1..=lambda_i)` of a top-left justified Young diagram.
    pub fn young(n: usize, lambda: &[usize]) -> Result<Self> {
        check_partition_in_box(n, lambda)?;
        let mut r = Region::empty(n);
        for (i, &len) in lambda.iter().enumerate() {
            for c in 1..=len {
                r.insert(i + 1, c);
            }
        }
        Ok(r)
    }

    /// The box minus a top-left justified diagram: row `i` keeps columns
    /// `mu_i + 1 ..= n`.
    pub fn complement_young(n: usize, mu: &[usize]) -> Result<Self> {
        check_partition_in_box(n, mu)?;
        let mut r = Region::full(n);
        for (i, &len) in mu.iter().enumerate() {
            for c in 1..=len {
                r.remove(i + 1, c);
            }
        }
        Ok(r)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.cells[(row - 1) * self.n + (col - 1)]
    }

    pub fn insert(&mut self, row: usize, col: usize) {
        self.cells[(row - 1) * self.n + (col - 1)] = true;
    }

    pub fn remove(&mut self, row: usize, col: usize) {
        self.cells[(row - 1) * self.n + (col - 1)] = false;
    }

    pub fn len(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(|&b| !b)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for row in 1..=self.n {
            for col in 1..=self.n {
                if self.contains(row, col) {
                    out.push((row, col));
                }
            }
        }
        out
    }

    pub fn is_subset_of(&self, other: &Region) -> bool {
        self.n == other.n
            && self
                .cells
                .iter()
                .zip(&other.cells)
                .all(|(&a, &b)| !a || b)
    }

    pub fn union_with(&mut self, other: &Region) {
        assert_eq!(self.n, other.n, "grid size mismatch");
        for (a, &b) in self.cells.iter_mut().zip(&other.cells) {
            *a = *a || b;
        }
    }

    /// Side length of the largest axis-aligned square of cells, by the
    /// classic min-of-three dynamic program.
    pub fn largest_square(&self) -> usize {
        let n = self.n;
        let mut side = vec![0usize; n * n];
        let mut best = 0;
        for row in (1..=n).rev() {
            for col in (1..=n).rev() {
                let idx = (row - 1) * n + (col - 1);
                if self.cells[idx] {
                    let s = if row == n || col == n {
                        1
                    } else {
                        let down = side[row * n + (col - 1)];
                        let right = side[(row - 1) * n + col];
                        let diag = side[row * n + col];
                        1 + down.min(right).min(diag)
                    };
                    side[idx] = s;
                    best = best.max(s);
                }
            }
        }
        best
    }

    /// Removes row `i` and column `k`, closing up the indices.
    pub fn delete_row_col(&self, i: usize, k: usize) -> Result<Region> {
        let n = self.n;
        if n < 2 {
            return Err(Error::Invalid {
                what: "region deletion",
                msg: "cannot shrink a 1 x 1 grid".into(),
            });
        }
        if i == 0 || i > n {
            return Err(Error::PositionOutOfRange { pos: i, n });
        }
        if k == 0 || k > n {
            return Err(Error::PositionOutOfRange { pos: k, n });
        }
        let mut out = Region::empty(n - 1);
        for row in 1..=n {
            if row == i {
                continue;
            }
            for col in 1..=n {
                if col == k || !self.contains(row, col) {
                    continue;
                }
                let r2 = if row > i { row - 1 } else { row };
                let c2 = if col > k { col - 1 } else { col };
                out.insert(r2, c2);
            }
        }
        Ok(out)
    }

    /// Mirror image: `(i, j) -> (i, n+1-j)`.
    pub fn reverse_columns(&self) -> Region {
        let n = self.n;
        let mut out = Region::empty(n);
        for (row, col) in self.cells() {
            out.insert(row, n + 1 - col);
        }
        out
    }

    /// Plain-text picture: `X` marks graph points of `crosses`, `.` marks
    /// other cells of the region, blanks elsewhere.
    pub fn render(&self, crosses: Option<&Permutation>) -> String {
        let n = self.n;
        let mut out = String::new();
        for row in 1..=n {
            let mut line = String::new();
            for col in 1..=n {
                let is_cross = crosses.map(|v| v.image(row) == col).unwrap_or(false);
                let sym = if is_cross && self.contains(row, col) {
                    'X'
                } else if self.contains(row, col) {
                    '.'
                } else {
                    ' '
                };
                line.push(sym);
                if col < n {
                    line.push(' ');
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Region(n={}, cells={:?})", self.n, self.cells())
    }
}

fn check_partition_in_box(n: usize, lambda: &[usize]) -> Result<()> {
    if lambda.len() > n {
        return Err(Error::Invalid {
            what: "partition",
            msg: format!("more than {n} parts"),
        });
    }
    for w in lambda.windows(2) {
        if w[0] < w[1] {
            return Err(Error::Invalid {
                what: "partition",
                msg: "parts must be weakly decreasing".into(),
            });
        }
    }
    if lambda.first().is_some_and(|&l| l > n) {
        return Err(Error::Invalid {
            what: "partition",
            msg: format!("part exceeds {n}"),
        });
    }
    Ok(())
}

/// Returns `Some(lambda)` when the region is exactly a top-left justified
/// Young diagram (row `i` holds columns `1..=lambda_i`, weakly decreasing).
pub fn young_shape(r: &Region) -> Option<Vec<usize>> {
    let n = r.n();
    let mut lambda = Vec::with_capacity(n);
    for row in 1..=n {
        let len = (1..=n).take_while(|&c| r.contains(row, c)).count();
        let count = (1..=n).filter(|&c| r.contains(row, c)).count();
        if len != count {
            return None;
        }
        lambda.push(len);
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    while lambda.last() == Some(&0) {
        lambda.pop();
    }
    Some(lambda)
}

/// Returns `Some(mu)` when the region is the full box minus a top-left
/// justified diagram `mu` (row `i` holds columns `mu_i + 1 ..= n`).
pub fn complement_young_shape(r: &Region) -> Option<Vec<usize>> {
    let n = r.n();
    let mut mu = Vec::with_capacity(n);
    for row in 1..=n {
        let kept = (1..=n).filter(|&c| r.contains(row, c)).count();
        let tail = ((n - kept + 1)..=n).all(|c| r.contains(row, c));
        if !tail {
            return None;
        }
        mu.push(n - kept);
    }
    if mu.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    while mu.last() == Some(&0) {
        mu.pop();
    }
    Some(mu)
}

/// Largest `k` with `lambda_k >= k` (side of the Durfee square).
pub fn durfee(lambda: &[usize]) -> usize {
    assert!(
        lambda.windows(2).all(|w| w[0] >= w[1]),
        "parts must be weakly decreasing"
    );
    lambda
        .iter()
        .enumerate()
        .filter(|&(i, &l)| l > i)
        .count()
}

/// Is `cell` inside the closed rectangle spanned by `(k, v(k))` and
/// `(l, v(l))` for the position pair `<k, l>`?
pub fn sandwiched(cell: (usize, usize), pair: &InversionPair, v: &Permutation) -> bool {
    let (i, j) = cell;
    let (a, b) = (v.image(pair.i), v.image(pair.j));
    pair.i <= i && i <= pair.j && a.min(b) <= j && j <= a.max(b)
}

/// `G[v, w0]`: the graph of `v` together with every cell sandwiched by a
/// non-inversion of `v`.
pub fn upper_interval_graph(v: &Permutation) -> Region {
    let n = v.n();
    let mut r = Region::graph(v);
    let pairs = v.non_inversions();
    for row in 1..=n {
        for col in 1..=n {
            if !r.contains(row, col) && pairs.iter().any(|p| sandwiched((row, col), p, v)) {
                r.insert(row, col);
            }
        }
    }
    r
}

/// `G[e, w]`: the graph of `w` together with every cell sandwiched by an
/// inversion of `w`.
pub fn lower_interval_graph(w: &Permutation) -> Region {
    let n = w.n();
    let mut r = Region::graph(w);
    let pairs = w.inversions();
    for row in 1..=n {
        for col in 1..=n {
            if !r.contains(row, col) && pairs.iter().any(|p| sandwiched((row, col), p, w)) {
                r.insert(row, col);
            }
        }
    }
    r
}

/// Oracle: the union of the graphs of every `u` in `[v, w]`. Exponential;
/// refuses n > 7 through the interval enumeration.
pub fn brute_force_interval_graph(v: &Permutation, w: &Permutation) -> Result<Region> {
    if !v.bruhat_leq(w)? {
        return Err(Error::Invalid {
            what: "interval",
            msg: format!("{v} is not below {w} in Bruhat order"),
        });
    }
    let mut r = Region::empty(v.n());
    for u in Permutation::bruhat_interval(v, w)? {
        r.union_with(&Region::graph(&u));
    }
    Ok(r)
}

/// Which diagonal the squares hang from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Squares anchored on the antidiagonal, for regions `G[v, w0]`.
    Anti,
    /// Squares anchored on the main diagonal, for regions `G[e, w]`.
    Diag,
}

/// Side of the diagonal a box corner falls on. A box whose mirror corner is
/// also a graph point is both red and blue, hence purple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    Red,
    Green,
    Blue,
    Purple,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
            Color::Purple => "purple",
        };
        write!(f, "{s}")
    }
}

/// A maximal square hung from a graph point across the chosen diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundingBox {
    /// Defining graph point `(i, v(i))`; for purple boxes, the one with the
    /// smaller row index.
    pub corner: (usize, usize),
    /// Inclusive row interval covered by the square.
    pub span: (usize, usize),
    pub color: Color,
    /// Row of the northwest corner; boxes are sorted by this key.
    pub order_key: usize,
}

impl BoundingBox {
    pub fn row_range(&self) -> (usize, usize) {
        self.span
    }

    /// Column interval; depends on which diagonal anchors the square.
    pub fn col_range(&self, n: usize, convention: Convention) -> (usize, usize) {
        match convention {
            Convention::Diag => self.span,
            Convention::Anti => (n + 1 - self.span.1, n + 1 - self.span.0),
        }
    }

    pub fn side(&self) -> usize {
        self.span.1 - self.span.0 + 1
    }

    pub fn contains_cell(&self, cell: (usize, usize), n: usize, convention: Convention) -> bool {
        let (r0, r1) = self.span;
        let (c0, c1) = self.col_range(n, convention);
        r0 <= cell.0 && cell.0 <= r1 && c0 <= cell.1 && cell.1 <= c1
    }
}

/// The maximal bounding boxes of `v`'s graph points, sorted by the row of
/// their northwest corner.
///
/// In the diagonal convention the square through `(i, v(i))` spans rows and
/// columns `[min(i, v(i)), max(i, v(i))]`; in the antidiagonal convention
/// the rows are `[min(i, n+1-v(i)), max(i, n+1-v(i))]` and the columns are
/// their mirror image. A box is kept iff it is not properly contained in
/// another. Colors: blue above the diagonal, red below, green on it, and
/// purple when the mirrored corner is also a graph point of the same box.
pub fn bounding_boxes(v: &Permutation, convention: Convention) -> Result<Vec<BoundingBox>> {
    let n = v.n();
    // Row span is driven by the diagonal-convention value at each position.
    let d: Vec<usize> = (1..=n)
        .map(|i| match convention {
            Convention::Diag => v.image(i),
            Convention::Anti => n + 1 - v.image(i),
        })
        .collect();
    let span = |i: usize| -> (usize, usize) {
        let x = d[i - 1];
        (i.min(x), i.max(x))
    };
    let mut boxes: Vec<BoundingBox> = Vec::new();
    for i in 1..=n {
        let s = span(i);
        let maximal = (1..=n).all(|j| {
            let t = span(j);
            t == s || !(t.0 <= s.0 && s.1 <= t.1)
        });
        if !maximal {
            continue;
        }
        if let Some(existing) = boxes.iter_mut().find(|b| b.span == s) {
            // Mirrored corner of the same square: the box is purple.
            existing.color = Color::Purple;
            continue;
        }
        let color = if i < d[i - 1] {
            Color::Blue
        } else if i > d[i - 1] {
            Color::Red
        } else {
            Color::Green
        };
        boxes.push(BoundingBox {
            corner: (i, v.image(i)),
            span: s,
            color,
            order_key: s.0,
        });
    }
    boxes.sort_by_key(|b| b.order_key);
    for w in boxes.windows(2) {
        if w[0].order_key == w[1].order_key {
            return Err(Error::Internal(format!(
                "bounding boxes of {v} share northwest row {}",
                w[0].order_key
            )));
        }
    }
    Ok(boxes)
}

/// Is the graph point at position `i` a corner of the interval-graph region
/// for the given convention? Interior graph points are exactly those
/// sandwiched by a pair of other graph points on the matching side: the
/// middle of a 123 occurrence (antidiagonal) or of a 321 occurrence
/// (diagonal).
pub fn is_graph_corner(v: &Permutation, i: usize, convention: Convention) -> bool {
    let n = v.n();
    let vi = v.image(i);
    !(1..i).any(|k| {
        (i + 1..=n).any(|l| match convention {
            Convention::Anti => v.image(k) < vi && vi < v.image(l),
            Convention::Diag => v.image(k) > vi && vi > v.image(l),
        })
    })
}

/// Is `B(i, v(i))` one of the maximal bounding boxes?
pub fn is_spanning_corner(v: &Permutation, i: usize, convention: Convention) -> Result<bool> {
    let n = v.n();
    if i == 0 || i > n {
        return Err(Error::PositionOutOfRange { pos: i, n });
    }
    let boxes = bounding_boxes(v, convention)?;
    let d = match convention {
        Convention::Diag => v.image(i),
        Convention::Anti => n + 1 - v.image(i),
    };
    let s = (i.min(d), i.max(d));
    Ok(boxes.iter().any(|b| b.span == s))
}

/// The permutation describing how `G[e, w]` meets the bounding box at the
/// spanning corner `(i, w(i))` (diagonal convention): restrict `w` to the
/// positions sharing an inversion with `i` (including `i`) and flatten.
///
/// Requires `w` to avoid 3412 and the corner to be spanning.
pub fn box_intersection_permutation(w: &Permutation, i: usize) -> Result<Permutation> {
    let n = w.n();
    if i == 0 || i > n {
        return Err(Error::PositionOutOfRange { pos: i, n });
    }
    let p3412 = Permutation::new(vec![3, 4, 1, 2]).unwrap();
    if let Some(witness) = w.pattern_witness(&p3412) {
        return Err(Error::PatternPresent {
            v: w.to_string(),
            pattern: "3412".into(),
            witness,
        });
    }
    if !is_spanning_corner(w, i, Convention::Diag)? {
        return Err(Error::NotSpanningCorner {
            i,
            j: w.image(i),
        });
    }
    let wi = w.image(i);
    let mut positions: Vec<usize> = (1..=n)
        .filter(|&j| {
            j == i
                || (j < i && w.image(j) > wi)
                || (j > i && w.image(j) < wi)
        })
        .collect();
    positions.sort_unstable();
    let mut values: Vec<usize> = positions.iter().map(|&j| w.image(j)).collect();
    let mut sorted = values.clone();
    sorted.sort_unstable();
    for x in &mut values {
        *x = sorted.binary_search(x).unwrap() + 1;
    }
    Permutation::new(values)
}
