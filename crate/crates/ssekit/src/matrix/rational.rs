//! Dense matrices over arbitrary-precision rationals.
//!
//! All decision procedures in this crate (certificate verification, rank,
//! kernels, characteristic polynomials) run over `Rat` so that equality is
//! equality, not closeness. Matrices are immutable values; operations
//! return fresh matrices.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::float::FloatMatrix;

pub type Rat = num_rational::BigRational;

/// Rational from an integer numerator/denominator pair.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>, // row-major, len == rows * cols
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {}x{} = {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rat::one() } else { Rat::zero() })
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Rat::zero()
            }
        })
    }

    /// Build from rows of integers; test and example convenience.
    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].as_ref().len() };
        assert!(rows.iter().all(|row| row.as_ref().len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| rint(rows[i].as_ref()[j]))
    }

    /// Parse rows of whitespace-separated entries, each an integer or `p/q`.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let mut parsed: Vec<Vec<Rat>> = Vec::with_capacity(rows.len());
        for (ln, row) in rows.iter().enumerate() {
            let mut out = Vec::new();
            for tok in row.split_whitespace() {
                let v = Rat::from_str(tok).map_err(|e| Error::Parse {
                    line: ln + 1,
                    msg: format!("bad rational {tok:?}: {e}"),
                })?;
                out.push(v);
            }
            parsed.push(out);
        }
        let r = parsed.len();
        let c = if r == 0 { 0 } else { parsed[0].len() };
        if parsed.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        RatMatrix::new(r, c, parsed.into_iter().flatten().collect())
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

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rat> {
        self.data.iter()
    }

    pub fn map(&self, mut f: impl FnMut(&Rat) -> Rat) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| f(v)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        self.map(|v| v * s)
    }

    pub fn trace(&self) -> Rat {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square(), "pow of non-square matrix");
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Horizontal concatenation; all blocks must share a row count.
    pub fn hstack(blocks: &[&RatMatrix]) -> Self {
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
        RatMatrix { rows, cols, data }
    }

    /// Vertical concatenation; all blocks must share a column count.
    pub fn vstack(blocks: &[&RatMatrix]) -> Self {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols), "vstack col mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        RatMatrix { rows, cols, data }
    }

    /// Block matrix from a grid of blocks. Row heights and column widths
    /// must be consistent across the grid.
    pub fn block(grid: &[&[&RatMatrix]]) -> Self {
        let rows: Vec<RatMatrix> = grid.iter().map(|r| Self::hstack(r)).collect();
        Self::vstack(&rows.iter().collect::<Vec<_>>())
    }

    /// Direct (diagonal) sum of square or rectangular blocks.
    pub fn direct_sum(blocks: &[&RatMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        Self::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.get(row_idx[i], col_idx[j]).clone()
        })
    }

    /// A (column) vector times this matrix on the left: x^T · A.
    pub fn row_apply(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.rows, "row_apply length mismatch");
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| &x[i] * self.get(i, j)).sum())
            .collect()
    }

    /// This matrix applied to a column vector: A · x.
    pub fn col_apply(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols, "col_apply length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &x[j]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|v| !v.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        !self.data.is_empty() && self.data.iter().all(|v| v.is_positive())
    }

    /// No zero row and no zero column.
    pub fn is_nondegenerate(&self) -> bool {
        (0..self.rows).all(|i| self.row(i).iter().any(|v| !v.is_zero()))
            && (0..self.cols).all(|j| (0..self.rows).any(|i| !self.get(i, j).is_zero()))
    }

    /// Largest absolute value of an entry.
    pub fn max_norm(&self) -> Rat {
        self.data
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rat::zero)
    }

    /// Smallest entry (useful as a positivity margin).
    pub fn min_entry(&self) -> Rat {
        self.data.iter().min().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn to_float(&self) -> FloatMatrix {
        FloatMatrix::from_fn(self.rows, self.cols, |i, j| {
            crate::matrix::rat_to_f64(self.get(i, j))
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(r, c).clone();
            for j in 0..m.cols {
                let v = m.get(r, j) / &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                det = -det;
                for j in 0..n {
                    let a = m.get(c, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(c, j, b);
                    m.set(p, j, a);
                }
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                if !m.get(i, c).is_zero() {
                    let f = m.get(i, c) / &piv;
                    for j in c..n {
                        let v = m.get(i, j) - &f * m.get(c, j);
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let aug = Self::hstack(&[self, &Self::identity(n)]);
        let (red, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| k != c) {
            return None;
        }
        Some(red.submatrix(
            &(0..n).collect::<Vec<_>>(),
            &(n..2 * n).collect::<Vec<_>>(),
        ))
    }

    /// Solve A·X = B. Returns a particular solution (free variables zero),
    /// or None if the system is inconsistent.
    pub fn solve(&self, b: &RatMatrix) -> Option<RatMatrix> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let aug = Self::hstack(&[self, b]);
        let (red, pivots) = aug.rref();
        // Inconsistent iff some pivot lands in the augmented block.
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Self::zero(self.cols, b.cols);
        for (k, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(c, j, red.get(k, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Basis for the right kernel {x : A·x = 0}, as matrix columns.
    /// Returns a `cols x dim` matrix (possibly with zero columns count).
    pub fn kernel(&self) -> RatMatrix {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zero(self.cols, free.len());
        for (idx, &fc) in free.iter().enumerate() {
            k.set(fc, idx, Rat::one());
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(pc, idx, -red.get(r, fc).clone());
            }
        }
        k
    }

    /// Basis for the left kernel {x : x·A = 0}, as matrix rows.
    pub fn row_kernel(&self) -> RatMatrix {
        self.transpose().kernel().transpose()
    }

    /// Characteristic polynomial det(tI - A), monic, via the
    /// trace-of-powers recurrence (exact over the rationals).
    pub fn char_poly(&self) -> crate::poly::RatPoly {
        assert!(self.is_square(), "char_poly of non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut b = Self::identity(n);
        for k in 1..=n {
            b = self * &b;
            let c = -(b.trace() / rint(k as i64));
            coeffs[n - k] = c.clone();
            for i in 0..n {
                let v = b.get(i, i) + &c;
                b.set(i, i, v);
            }
        }
        crate::poly::RatPoly::from_coeffs(coeffs)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        self.get(i, j)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "multiply: {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        RatMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * rhs.get(k, j)).sum()
        })
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add: shape");
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub: shape");
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        self.map(|v| -v.clone())
    }
}
