//! Matrices over the Boolean semiring ({0,1}, or, and).
//!
//! Used for zero-pattern arguments: a chain of equations over {0,1} can be
//! mimicked over the rationals by keeping supports fixed, so the Boolean
//! layer does the combinatorics and the rational layer does the arithmetic.

use std::fmt;
use std::ops::Mul;

use num_traits::Zero;

use crate::matrix::rational::RatMatrix;

#[derive(Clone, PartialEq, Eq)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    data: Vec<bool>, // row-major
}

impl BoolMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<bool>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        BoolMatrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        BoolMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        BoolMatrix {
            rows,
            cols,
            data: vec![false; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i == j)
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        BoolMatrix {
            rows,
            cols,
            data: vec![true; rows * cols],
        }
    }

    pub fn from_int_rows(rows: &[Vec<u8>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| rows[i][j] != 0)
    }

    /// Zero pattern of a rational matrix (nonzero entry -> 1).
    pub fn pattern_of(m: &RatMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| !m.get(i, j).is_zero())
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

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: bool) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Entrywise or.
    pub fn or(&self, other: &BoolMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "or: shape");
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) || other.get(i, j)
        })
    }

    /// Entrywise order: self(i,j) = 1 implies other(i,j) = 1.
    pub fn dominated_by(&self, other: &BoolMatrix) -> bool {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).all(|(&a, &b)| !a || b)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| !v)
    }

    pub fn all_ones(&self) -> bool {
        !self.data.is_empty() && self.data.iter().all(|&v| v)
    }

    pub fn is_nondegenerate(&self) -> bool {
        (0..self.rows).all(|i| self.row(i).iter().any(|&v| v))
            && (0..self.cols).all(|j| (0..self.rows).any(|i| self.get(i, j)))
    }

    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Irreducible: the walk graph is strongly connected, i.e.
    /// I + A + ... + A^(n-1) is all ones.
    pub fn is_irreducible(&self) -> bool {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return false;
        }
        let mut reach = Self::identity(n);
        let mut power = Self::identity(n);
        for _ in 1..n {
            power = &power * self;
            reach = reach.or(&power);
        }
        reach.all_ones()
    }

    /// Primitive: some power is all ones. By Wielandt's bound it suffices
    /// to check the power (n-1)^2 + 1.
    pub fn is_primitive(&self) -> bool {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return false;
        }
        let bound = (n - 1) * (n - 1) + 1;
        let mut power = self.clone();
        for _ in 1..=bound {
            if power.all_ones() {
                return true;
            }
            power = &power * self;
        }
        power.all_ones()
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| {
            if self.get(i, j) {
                crate::matrix::rational::rint(1)
            } else {
                crate::matrix::rational::rint(0)
            }
        })
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: String = self
                .row(i)
                .iter()
                .map(|&v| if v { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<&str> = self
                .row(i)
                .iter()
                .map(|&v| if v { "1" } else { "0" })
                .collect();
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Mul for &BoolMatrix {
    type Output = BoolMatrix;
    fn mul(self, rhs: &BoolMatrix) -> BoolMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "multiply: {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        BoolMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).any(|k| self.get(i, k) && rhs.get(k, j))
        })
    }
}
