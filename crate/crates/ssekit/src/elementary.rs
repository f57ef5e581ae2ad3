//! Descriptors for the elementary matrices used as path factors and
//! conjugators: shears (transvections), signed transpositions, and
//! invertible diagonals. A descriptor is data, not a matrix; it can be
//! realised over the rationals or the floats, inverted exactly, and
//! serialised compactly.

use crate::matrix::{FloatMatrix, Rat, RatMatrix};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum Elementary<S> {
    /// I + value * E(i,j) with i != j: adds `value` times row j to row i.
    Shear { i: usize, j: usize, value: S },
    /// Identity except in rows/columns {i, j}: the (i,j) and (j,i) slots
    /// hold +1 and -1, with the minus sign at (i,j) iff `minus_at_ij`.
    /// Determinant +1.
    SignedTransposition {
        i: usize,
        j: usize,
        minus_at_ij: bool,
    },
    /// Invertible diagonal matrix.
    Diagonal { entries: Vec<S> },
}

impl<S> Elementary<S> {
    pub fn is_shear(&self) -> bool {
        matches!(self, Elementary::Shear { .. })
    }
}

impl Elementary<Rat> {
    pub fn matrix(&self, n: usize) -> RatMatrix {
        match self {
            Elementary::Shear { i, j, value } => {
                assert!(i != j && *i < n && *j < n);
                let mut m = RatMatrix::identity(n);
                m.set(*i, *j, value.clone());
                m
            }
            Elementary::SignedTransposition { i, j, minus_at_ij } => {
                assert!(i != j && *i < n && *j < n);
                let mut m = RatMatrix::identity(n);
                m.set(*i, *i, Rat::zero());
                m.set(*j, *j, Rat::zero());
                let one = Rat::one();
                m.set(*i, *j, if *minus_at_ij { -one.clone() } else { one.clone() });
                m.set(*j, *i, if *minus_at_ij { one.clone() } else { -one });
                m
            }
            Elementary::Diagonal { entries } => {
                assert_eq!(entries.len(), n);
                assert!(entries.iter().all(|v| !v.is_zero()));
                RatMatrix::diagonal(entries)
            }
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Elementary::Shear { i, j, value } => Elementary::Shear {
                i: *i,
                j: *j,
                value: -value.clone(),
            },
            Elementary::SignedTransposition { i, j, minus_at_ij } => {
                Elementary::SignedTransposition {
                    i: *i,
                    j: *j,
                    minus_at_ij: !*minus_at_ij,
                }
            }
            Elementary::Diagonal { entries } => Elementary::Diagonal {
                entries: entries.iter().map(|v| v.recip()).collect(),
            },
        }
    }

    pub fn det(&self, n: usize) -> Rat {
        match self {
            Elementary::Shear { .. } | Elementary::SignedTransposition { .. } => {
                let _ = n;
                Rat::one()
            }
            Elementary::Diagonal { entries } => entries.iter().product(),
        }
    }

    pub fn to_float(&self) -> Elementary<f64> {
        match self {
            Elementary::Shear { i, j, value } => Elementary::Shear {
                i: *i,
                j: *j,
                value: crate::matrix::rat_to_f64(value),
            },
            Elementary::SignedTransposition { i, j, minus_at_ij } => {
                Elementary::SignedTransposition {
                    i: *i,
                    j: *j,
                    minus_at_ij: *minus_at_ij,
                }
            }
            Elementary::Diagonal { entries } => Elementary::Diagonal {
                entries: entries.iter().map(crate::matrix::rat_to_f64).collect(),
            },
        }
    }
}

impl Elementary<f64> {
    pub fn matrix(&self, n: usize) -> FloatMatrix {
        match self {
            Elementary::Shear { i, j, value } => {
                assert!(i != j && *i < n && *j < n);
                let mut m = FloatMatrix::identity(n);
                m.set(*i, *j, *value);
                m
            }
            Elementary::SignedTransposition { i, j, minus_at_ij } => {
                assert!(i != j && *i < n && *j < n);
                let mut m = FloatMatrix::identity(n);
                m.set(*i, *i, 0.0);
                m.set(*j, *j, 0.0);
                m.set(*i, *j, if *minus_at_ij { -1.0 } else { 1.0 });
                m.set(*j, *i, if *minus_at_ij { 1.0 } else { -1.0 });
                m
            }
            Elementary::Diagonal { entries } => {
                assert_eq!(entries.len(), n);
                assert!(entries.iter().all(|v| *v != 0.0));
                FloatMatrix::diagonal(entries)
            }
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Elementary::Shear { i, j, value } => Elementary::Shear {
                i: *i,
                j: *j,
                value: -*value,
            },
            Elementary::SignedTransposition { i, j, minus_at_ij } => {
                Elementary::SignedTransposition {
                    i: *i,
                    j: *j,
                    minus_at_ij: !*minus_at_ij,
                }
            }
            Elementary::Diagonal { entries } => Elementary::Diagonal {
                entries: entries.iter().map(|v| 1.0 / v).collect(),
            },
        }
    }

    /// Snap shear values and diagonal entries to rationals with bounded
    /// denominator.
    pub fn snap(&self, max_denominator: u64) -> Elementary<Rat> {
        match self {
            Elementary::Shear { i, j, value } => Elementary::Shear {
                i: *i,
                j: *j,
                value: crate::matrix::f64_to_rat_bounded(*value, max_denominator),
            },
            Elementary::SignedTransposition { i, j, minus_at_ij } => {
                Elementary::SignedTransposition {
                    i: *i,
                    j: *j,
                    minus_at_ij: *minus_at_ij,
                }
            }
            Elementary::Diagonal { entries } => Elementary::Diagonal {
                entries: entries
                    .iter()
                    .map(|v| crate::matrix::f64_to_rat_bounded(*v, max_denominator))
                    .collect(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat;

    #[test]
    fn shear_times_inverse_is_identity() {
        let e = Elementary::Shear {
            i: 2,
            j: 0,
            value: rat(-7, 3),
        };
        let m = e.matrix(3);
        let mi = e.inverse().matrix(3);
        assert!((&m * &mi).is_identity());
        assert_eq!(e.det(3), rat(1, 1));
    }

    #[test]
    fn signed_transposition_has_det_one() {
        let e = Elementary::<Rat>::SignedTransposition {
            i: 0,
            j: 1,
            minus_at_ij: true,
        };
        let m = e.matrix(2);
        assert_eq!(m.det(), rat(1, 1));
        assert!((&m * &e.inverse().matrix(2)).is_identity());
    }

    #[test]
    fn diagonal_inverse() {
        let e = Elementary::Diagonal {
            entries: vec![rat(2, 1), rat(-1, 2)],
        };
        assert_eq!(e.det(2), rat(-1, 1));
        assert!((&e.matrix(2) * &e.inverse().matrix(2)).is_identity());
    }
}
