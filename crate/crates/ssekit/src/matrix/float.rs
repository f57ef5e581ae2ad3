//! Dense matrices over `f64`, for path construction and approximate
//! verification. Entries are required to be finite; constructors panic on
//! NaN or infinity, which always indicates an upstream bug or an
//! unvalidated input (file parsers check before constructing).

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::matrix::rational::RatMatrix;

#[derive(Clone, PartialEq)]
pub struct FloatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>, // row-major
}

impl FloatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        assert!(data.iter().all(|v| v.is_finite()), "non-finite entry");
        FloatMatrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        FloatMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { 0.0 })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        assert!(v.is_finite(), "non-finite entry");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = f64> + '_ {
        self.data.iter().copied()
    }

    pub fn map(&self, mut f: impl FnMut(f64) -> f64) -> Self {
        Self::new(
            self.rows,
            self.cols,
            self.data.iter().map(|&v| f(v)).collect(),
        )
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|v| v * s)
    }

    pub fn trace(&self) -> f64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn hstack(blocks: &[&FloatMatrix]) -> Self {
        assert!(!blocks.is_empty());
        let rows = blocks[0].rows;
        assert!(blocks.iter().all(|b| b.rows == rows), "hstack row mismatch");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(i));
            }
        }
        FloatMatrix { rows, cols, data }
    }

    pub fn vstack(blocks: &[&FloatMatrix]) -> Self {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols), "vstack col mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        FloatMatrix { rows, cols, data }
    }

    pub fn direct_sum(blocks: &[&FloatMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        Self::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.get(row_idx[i], col_idx[j])
        })
    }

    pub fn is_positive(&self) -> bool {
        !self.data.is_empty() && self.data.iter().all(|&v| v > 0.0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&v| v >= 0.0)
    }

    /// No exactly-zero row and no exactly-zero column.
    pub fn is_nondegenerate(&self) -> bool {
        (0..self.rows).all(|i| self.row(i).iter().any(|&v| v != 0.0))
            && (0..self.cols).all(|j| (0..self.rows).any(|i| self.get(i, j) != 0.0))
    }

    pub fn min_entry(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest absolute value of an entry.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// max-norm of the difference, without materialising it.
    pub fn distance(&self, other: &FloatMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Numerical rank: number of nonzero rows after elimination with
    /// partial pivoting, where "nonzero" means a pivot exceeding
    /// `tol * max(1, max_norm)`.
    pub fn rank_tol(&self, tol: f64) -> usize {
        let threshold = tol * self.max_norm().max(1.0);
        let mut m = self.clone();
        let mut rank = 0;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let (p, best) = (r..m.rows)
                .map(|i| (i, m.get(i, c).abs()))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            if best <= threshold {
                continue;
            }
            if p != r {
                for j in 0..m.cols {
                    let (a, b) = (m.get(r, j), m.get(p, j));
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let piv = m.get(r, c);
            for i in r + 1..m.rows {
                let f = m.get(i, c) / piv;
                if f != 0.0 {
                    for j in c..m.cols {
                        let v = m.get(i, j) - f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            rank += 1;
            r += 1;
        }
        rank
    }

    pub fn det(&self) -> f64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1.0;
        for c in 0..n {
            let (p, best) = (c..n)
                .map(|i| (i, m.get(i, c).abs()))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            if best == 0.0 {
                return 0.0;
            }
            if p != c {
                det = -det;
                for j in 0..n {
                    let (a, b) = (m.get(c, j), m.get(p, j));
                    m.set(c, j, b);
                    m.set(p, j, a);
                }
            }
            let piv = m.get(c, c);
            det *= piv;
            for i in c + 1..n {
                let f = m.get(i, c) / piv;
                if f != 0.0 {
                    for j in c..n {
                        let v = m.get(i, j) - f * m.get(c, j);
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    /// Inverse via Gauss-Jordan with partial pivoting; None when a pivot
    /// column has no entry above `1e-300` in magnitude (structurally
    /// singular to double precision).
    pub fn inverse(&self) -> Option<FloatMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = FloatMatrix::hstack(&[self, &Self::identity(n)]);
        for c in 0..n {
            let (p, best) = (c..n)
                .map(|i| (i, m.get(i, c).abs()))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            if best < 1e-300 {
                return None;
            }
            if p != c {
                for j in 0..2 * n {
                    let (a, b) = (m.get(c, j), m.get(p, j));
                    m.set(c, j, b);
                    m.set(p, j, a);
                }
            }
            let piv = m.get(c, c);
            for j in 0..2 * n {
                let v = m.get(c, j) / piv;
                m.set(c, j, v);
            }
            for i in 0..n {
                if i != c {
                    let f = m.get(i, c);
                    if f != 0.0 {
                        for j in 0..2 * n {
                            let v = m.get(i, j) - f * m.get(c, j);
                            m.set(i, j, v);
                        }
                    }
                }
            }
        }
        let out = m.submatrix(
            &(0..n).collect::<Vec<_>>(),
            &(n..2 * n).collect::<Vec<_>>(),
        );
        out.data.iter().all(|v| v.is_finite()).then_some(out)
    }

    /// Entrywise snap to rationals with bounded denominator, via continued
    /// fractions. See `crate::matrix::f64_to_rat_bounded`.
    pub fn snap_to_rational(&self, max_denominator: u64) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| {
            crate::matrix::f64_to_rat_bounded(self.get(i, j), max_denominator)
        })
    }

    /// Exact rational image of the IEEE doubles (2^e scaling, no snapping).
    pub fn to_rational_exact(&self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| {
            crate::matrix::f64_to_rat_exact(self.get(i, j))
        })
    }
}

impl Index<(usize, usize)> for FloatMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for FloatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FloatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for FloatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v}")).collect();
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Mul for &FloatMatrix {
    type Output = FloatMatrix;
    fn mul(self, rhs: &FloatMatrix) -> FloatMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "multiply: {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        FloatMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * rhs.get(k, j)).sum()
        })
    }
}

impl Add for &FloatMatrix {
    type Output = FloatMatrix;
    fn add(self, rhs: &FloatMatrix) -> FloatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add: shape");
        FloatMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl Sub for &FloatMatrix {
    type Output = FloatMatrix;
    fn sub(self, rhs: &FloatMatrix) -> FloatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub: shape");
        FloatMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

impl Neg for &FloatMatrix {
    type Output = FloatMatrix;
    fn neg(self) -> FloatMatrix {
        self.map(|v| -v)
    }
}
