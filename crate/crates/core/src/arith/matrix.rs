//! Dense matrices over the base ring.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::scalar::{BaseScalar, Rational};

/// A dense `rows x cols` matrix of base-ring scalars, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct AMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BaseScalar>,
}

impl AMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        AMatrix {
            rows,
            cols,
            data: vec![BaseScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BaseScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BaseScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        AMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix from columns of a known height.
    pub fn from_columns(rows: usize, cols: Vec<Vec<BaseScalar>>) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "column height");
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BaseScalar::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BaseScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BaseScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut BaseScalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<BaseScalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BaseScalar::is_zero)
    }

    /// True when every entry is a constant, i.e. the matrix is defined over `QQ`.
    pub fn is_constant(&self) -> bool {
        self.data.iter().all(BaseScalar::is_constant)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &AMatrix) -> AMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let p = a * b;
                        *out.entry_mut(i, j) += &p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BaseScalar]) -> Vec<BaseScalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BaseScalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &AMatrix) -> AMatrix {
        assert_eq!(self.rows, other.rows, "hcat row count");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Rows `range` of the matrix.
    pub fn row_block(&self, range: std::ops::Range<usize>) -> AMatrix {
        let mut out = Self::zeros(range.len(), self.cols);
        for (ii, i) in range.enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Columns `range` of the matrix.
    pub fn col_block(&self, range: std::ops::Range<usize>) -> AMatrix {
        let mut out = Self::zeros(self.rows, range.len());
        for i in 0..self.rows {
            for (jj, j) in range.clone().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Evaluates every entry at `t = c`.
    pub fn specialize(&self, c: &Rational) -> AMatrix {
        AMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|s| BaseScalar::constant(s.eval(c))).collect(),
        }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BaseScalar) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(src, j);
            if !s.is_zero() {
                let p = c * s;
                *self.entry_mut(dst, j) += &p;
            }
        }
    }

    /// `col[dst] += c * col[src]`.
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BaseScalar) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, src);
            if !s.is_zero() {
                let p = c * s;
                *self.entry_mut(i, dst) += &p;
            }
        }
    }

    /// Rows `(i, j)` replaced by `[[m00, m01], [m10, m11]]` times them.
    pub(crate) fn combine_rows(&mut self, i: usize, j: usize, m: [&BaseScalar; 4]) {
        for k in 0..self.cols {
            let (x, y) = (self.get(i, k).clone(), self.get(j, k).clone());
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self.set(i, k, &(m[0] * &x) + &(m[1] * &y));
            self.set(j, k, &(m[2] * &x) + &(m[3] * &y));
        }
    }

    /// Columns `(i, j)` replaced by them times `[[m00, m01], [m10, m11]]`.
    pub(crate) fn combine_cols(&mut self, i: usize, j: usize, m: [&BaseScalar; 4]) {
        for k in 0..self.rows {
            let (x, y) = (self.get(k, i).clone(), self.get(k, j).clone());
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self.set(k, i, &(&x * m[0]) + &(&y * m[2]));
            self.set(k, j, &(&x * m[1]) + &(&y * m[3]));
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &BaseScalar) {
        for j in 0..self.cols {
            let v = self.get(i, j) * c;
            self.set(i, j, v);
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: &BaseScalar) {
        for i in 0..self.rows {
            let v = self.get(i, j) * c;
            self.set(i, j, v);
        }
    }
}

impl fmt::Debug for AMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "AMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank over `QQ` of a matrix with constant entries.
pub fn rank_over_rationals(m: &AMatrix) -> usize {
    // Reduce along the shorter side; rank is the same.
    let transpose = m.cols() > m.rows();
    let (nr, nc) = if transpose { (m.cols(), m.rows()) } else { (m.rows(), m.cols()) };
    let entry = |i: usize, j: usize| if transpose { m.get(j, i) } else { m.get(i, j) };
    let rows = (0..nr).map(|i| {
        (0..nc)
            .filter_map(|j| {
                let c = entry(i, j).as_constant().expect("rank_over_rationals needs constant entries");
                (!c.is_zero()).then_some((j, c))
            })
            .collect()
    });
    sparse_rank(rows, nc)
}

/// Rank of a family of sparse rational vectors (sorted by index) of length
/// `len`.
///
/// Row echelon: each vector is reduced against the pivots found so far and
/// kept as a new pivot if anything survives.
pub fn sparse_rank(vectors: impl IntoIterator<Item = Vec<(usize, Rational)>>, len: usize) -> usize {
    let mut pivots: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
    for mut v in vectors {
        if pivots.len() == len {
            break;
        }
        while let Some((lead, c)) = v.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => v = axpy_sparse(&v, &-c, p),
                None => {
                    let inv = c.recip();
                    for e in v.iter_mut() {
                        e.1 *= &inv;
                    }
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `v + c * p` for sorted sparse vectors.
fn axpy_sparse(v: &[(usize, Rational)], c: &Rational, p: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut a, mut b) = (0, 0);
    while a < v.len() || b < p.len() {
        let ja = v.get(a).map_or(usize::MAX, |e| e.0);
        let jb = p.get(b).map_or(usize::MAX, |e| e.0);
        if ja < jb {
            out.push(v[a].clone());
            a += 1;
        } else if jb < ja {
            out.push((jb, c * &p[b].1));
            b += 1;
        } else {
            let s = &v[a].1 + c * &p[b].1;
            if !s.is_zero() {
                out.push((ja, s));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

pub(crate) fn is_identity(m: &AMatrix) -> bool {
    m.rows() == m.cols()
        && (0..m.rows()).all(|i| {
            (0..m.cols()).all(|j| {
                let e = m.get(i, j);
                if i == j {
                    e.as_constant().is_some_and(|c| c.is_one())
                } else {
                    e.is_zero()
                }
            })
        })
}
