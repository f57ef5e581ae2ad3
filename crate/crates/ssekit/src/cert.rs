//! Certificates of strong shift equivalence.
//!
//! An elementary strong shift equivalence (ESSE) between square matrices
//! `A` and `B` is a pair `(R, S)` with `A = R·S` and `B = S·R`.  A chain of
//! such pairs, together with every intermediate matrix, is the basic
//! certificate object of this crate: it can be verified link by link,
//! composed, reversed, transposed, and rewritten.

use crate::error::{Error, Result};
use crate::matrix::{rat_to_f64, FloatMatrix, Rat, RatMatrix};
use crate::poly::RatPoly;

/// Matrix kinds that can appear in a certificate.
///
/// Exact rational matrices compare by equality (the tolerance argument is
/// ignored); floating-point matrices compare in max-norm.
pub trait CertMatrix: Clone {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn matmul(&self, other: &Self) -> Self;
    /// Max-norm distance between two matrices, `f64::INFINITY` on shape mismatch.
    fn residual(&self, other: &Self) -> f64;
    /// Equality test: exact for rational matrices, `residual <= tol` for float.
    fn agrees(&self, other: &Self, tol: f64) -> bool;
    fn is_nonnegative(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_nondegenerate(&self) -> bool;
    fn transposed(&self) -> Self;
}

impl CertMatrix for RatMatrix {
    fn rows(&self) -> usize {
        RatMatrix::rows(self)
    }
    fn cols(&self) -> usize {
        RatMatrix::cols(self)
    }
    fn matmul(&self, other: &Self) -> Self {
        self * other
    }
    fn residual(&self, other: &Self) -> f64 {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return f64::INFINITY;
        }
        let diff = self - other;
        rat_to_f64(&diff.max_norm())
    }
    fn agrees(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
    fn is_nonnegative(&self) -> bool {
        RatMatrix::is_nonnegative(self)
    }
    fn is_positive(&self) -> bool {
        RatMatrix::is_positive(self)
    }
    fn is_nondegenerate(&self) -> bool {
        RatMatrix::is_nondegenerate(self)
    }
    fn transposed(&self) -> Self {
        self.transpose()
    }
}

impl CertMatrix for FloatMatrix {
    fn rows(&self) -> usize {
        FloatMatrix::rows(self)
    }
    fn cols(&self) -> usize {
        FloatMatrix::cols(self)
    }
    fn matmul(&self, other: &Self) -> Self {
        self * other
    }
    fn residual(&self, other: &Self) -> f64 {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return f64::INFINITY;
        }
        self.distance(other)
    }
    fn agrees(&self, other: &Self, tol: f64) -> bool {
        self.residual(other) <= tol
    }
    fn is_nonnegative(&self) -> bool {
        FloatMatrix::is_nonnegative(self)
    }
    fn is_positive(&self) -> bool {
        FloatMatrix::is_positive(self)
    }
    fn is_nondegenerate(&self) -> bool {
        FloatMatrix::is_nondegenerate(self)
    }
    fn transposed(&self) -> Self {
        self.transpose()
    }
}

/// Default verification tolerance for floating-point certificates.
pub const DEFAULT_TOL: f64 = 1e-9;

/// One elementary strong shift equivalence step: `A = R·S`, `B = S·R`.
#[derive(Clone, Debug, PartialEq)]
pub struct EssePair<M> {
    pub r: M,
    pub s: M,
}

impl<M: CertMatrix> EssePair<M> {
    pub fn new(r: M, s: M) -> Result<Self> {
        if r.cols() != s.rows() || s.cols() != r.rows() {
            return Err(Error::Shape(format!(
                "pair shapes {}x{} and {}x{} do not chain into square products",
                r.rows(),
                r.cols(),
                s.rows(),
                s.cols()
            )));
        }
        Ok(EssePair { r, s })
    }

    /// The square product `R·S` (the source matrix it certifies).
    pub fn left(&self) -> M {
        self.r.matmul(&self.s)
    }

    /// The square product `S·R` (the target matrix it certifies).
    pub fn right(&self) -> M {
        self.s.matmul(&self.r)
    }

    /// Swapping `(R,S) -> (S,R)` certifies the reverse step `B ~ A`.
    pub fn reversed(&self) -> Self {
        EssePair {
            r: self.s.clone(),
            s: self.r.clone(),
        }
    }

    /// `(R,S) -> (Sᵀ,Rᵀ)` certifies `Aᵀ ~ Bᵀ`.
    pub fn transposed(&self) -> Self {
        EssePair {
            r: self.s.transposed(),
            s: self.r.transposed(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.r.is_nonnegative() && self.s.is_nonnegative()
    }
}

/// Which equation of a link failed verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkEquation {
    /// `A_{i-1} = R_i · S_i`
    Left,
    /// `A_i = S_i · R_i`
    Right,
    /// shape incompatibility or sign violation
    Shape,
}

impl std::fmt::Display for LinkEquation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LinkEquation::Left => write!(f, "A = R*S"),
            LinkEquation::Right => write!(f, "B = S*R"),
            LinkEquation::Shape => write!(f, "shape"),
        }
    }
}

/// Location and size of the first verification failure.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkFailure {
    /// 0-based link index (link `i` connects matrix `i` to matrix `i+1`).
    pub link: usize,
    pub equation: LinkEquation,
    pub residual: f64,
    pub detail: String,
}

/// Outcome of verifying a pair or a chain.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub ok: bool,
    pub lag: usize,
    pub first_failure: Option<LinkFailure>,
}

impl VerifyReport {
    fn pass(lag: usize) -> Self {
        VerifyReport {
            ok: true,
            lag,
            first_failure: None,
        }
    }

    fn fail(lag: usize, failure: LinkFailure) -> Self {
        VerifyReport {
            ok: false,
            lag,
            first_failure: Some(failure),
        }
    }
}

/// A lag-`ℓ` strong shift equivalence: matrices `A_0..A_ℓ` and the pairs
/// `(R_i, S_i)` linking them.  `tol` is the max-norm tolerance used when the
/// matrices are floating point; exact chains ignore it.
#[derive(Clone, Debug, PartialEq)]
pub struct SseChain<M> {
    pub matrices: Vec<M>,
    pub pairs: Vec<EssePair<M>>,
    pub tol: f64,
}

impl<M: CertMatrix> SseChain<M> {
    /// The lag-0 chain witnessing `A ~ A`.
    pub fn identity(a: M) -> Self {
        SseChain {
            matrices: vec![a],
            pairs: Vec::new(),
            tol: DEFAULT_TOL,
        }
    }

    pub fn from_links(matrices: Vec<M>, pairs: Vec<EssePair<M>>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::Shape("chain needs at least one matrix".into()));
        }
        if matrices.len() != pairs.len() + 1 {
            return Err(Error::Shape(format!(
                "{} matrices need {} pairs, got {}",
                matrices.len(),
                matrices.len() - 1,
                pairs.len()
            )));
        }
        Ok(SseChain {
            matrices,
            pairs,
            tol: DEFAULT_TOL,
        })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn lag(&self) -> usize {
        self.pairs.len()
    }

    pub fn first(&self) -> &M {
        &self.matrices[0]
    }

    pub fn last(&self) -> &M {
        self.matrices.last().expect("chain is never empty")
    }

    /// Append a link from the current last matrix: checks `last = R·S` and
    /// pushes `S·R` as the new last matrix.
    pub fn push_link(&mut self, r: M, s: M) -> Result<()> {
        let pair = EssePair::new(r, s)?;
        let left = pair.left();
        if !left.agrees(self.last(), self.tol) {
            return Err(Error::Verification(format!(
                "link {}: R*S does not reproduce the current end matrix (residual {:.3e})",
                self.pairs.len(),
                left.residual(self.last())
            )));
        }
        self.matrices.push(pair.right());
        self.pairs.push(pair);
        Ok(())
    }

    /// Verify every link.  With `require_nonnegative`, additionally insist
    /// that every matrix and every pair factor is entrywise nonnegative
    /// (a chain over the nonnegative part of the ring).
    pub fn verify_over(&self, require_nonnegative: bool) -> VerifyReport {
        let lag = self.lag();
        if self.matrices.len() != self.pairs.len() + 1 || self.matrices.is_empty() {
            return VerifyReport::fail(
                lag,
                LinkFailure {
                    link: 0,
                    equation: LinkEquation::Shape,
                    residual: f64::INFINITY,
                    detail: "matrix/pair count mismatch".into(),
                },
            );
        }
        for (i, m) in self.matrices.iter().enumerate() {
            if m.rows() != m.cols() {
                return VerifyReport::fail(
                    lag,
                    LinkFailure {
                        link: i.min(lag.saturating_sub(1)),
                        equation: LinkEquation::Shape,
                        residual: f64::INFINITY,
                        detail: format!("matrix {} is {}x{}, not square", i, m.rows(), m.cols()),
                    },
                );
            }
            if require_nonnegative && !m.is_nonnegative() {
                return VerifyReport::fail(
                    lag,
                    LinkFailure {
                        link: i.min(lag.saturating_sub(1)),
                        equation: LinkEquation::Shape,
                        residual: f64::INFINITY,
                        detail: format!("matrix {} has a negative entry", i),
                    },
                );
            }
        }
        for (i, pair) in self.pairs.iter().enumerate() {
            let a = &self.matrices[i];
            let b = &self.matrices[i + 1];
            if pair.r.rows() != a.rows() || pair.r.cols() != b.rows() || pair.s.rows() != b.rows()
                || pair.s.cols() != a.rows()
            {
                return VerifyReport::fail(
                    lag,
                    LinkFailure {
                        link: i,
                        equation: LinkEquation::Shape,
                        residual: f64::INFINITY,
                        detail: format!(
                            "link {}: R is {}x{}, S is {}x{}, endpoints {} and {}",
                            i,
                            pair.r.rows(),
                            pair.r.cols(),
                            pair.s.rows(),
                            pair.s.cols(),
                            a.rows(),
                            b.rows()
                        ),
                    },
                );
            }
            if require_nonnegative && !pair.is_nonnegative() {
                return VerifyReport::fail(
                    lag,
                    LinkFailure {
                        link: i,
                        equation: LinkEquation::Shape,
                        residual: f64::INFINITY,
                        detail: format!("link {}: pair has a negative entry", i),
                    },
                );
            }
            let left = pair.left();
            if !left.agrees(a, self.tol) {
                return VerifyReport::fail(
                    lag,
                    LinkFailure {
                        link: i,
                        equation: LinkEquation::Left,
                        residual: left.residual(a),
                        detail: format!("link {}: R*S != A_{}", i, i),
                    },
                );
            }
            let right = pair.right();
            if !right.agrees(b, self.tol) {
                return VerifyReport::fail(
                    lag,
                    LinkFailure {
                        link: i,
                        equation: LinkEquation::Right,
                        residual: right.residual(b),
                        detail: format!("link {}: S*R != A_{}", i, i + 1),
                    },
                );
            }
        }
        VerifyReport::pass(lag)
    }

    pub fn verify(&self) -> VerifyReport {
        self.verify_over(false)
    }

    /// Concatenate two chains whose endpoints agree.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if !self.last().agrees(other.first(), self.tol.max(other.tol)) {
            return Err(Error::Shape(format!(
                "cannot compose: end matrix differs from start matrix (residual {:.3e})",
                self.last().residual(other.first())
            )));
        }
        let mut matrices = self.matrices.clone();
        matrices.extend(other.matrices.iter().skip(1).cloned());
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().cloned());
        Ok(SseChain {
            matrices,
            pairs,
            tol: self.tol.max(other.tol),
        })
    }

    /// The same equivalence read backwards: certifies `A_ℓ ~ A_0`.
    pub fn reversed(&self) -> Self {
        SseChain {
            matrices: self.matrices.iter().rev().cloned().collect(),
            pairs: self.pairs.iter().rev().map(EssePair::reversed).collect(),
            tol: self.tol,
        }
    }

    /// Transpose every matrix: certifies `A_0ᵀ ~ A_ℓᵀ`.
    pub fn transposed(&self) -> Self {
        SseChain {
            matrices: self.matrices.iter().map(|m| m.transposed()).collect(),
            pairs: self.pairs.iter().map(EssePair::transposed).collect(),
            tol: self.tol,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.matrices.iter().all(|m| m.is_nonnegative())
            && self.pairs.iter().all(|p| p.is_nonnegative())
    }
}

/// Verify a single elementary step `A = R·S`, `B = S·R`.
pub fn verify_esse<M: CertMatrix>(a: &M, b: &M, pair: &EssePair<M>, tol: f64) -> VerifyReport {
    match SseChain::from_links(vec![a.clone(), b.clone()], vec![pair.clone()]) {
        Ok(chain) => chain.with_tol(tol).verify(),
        Err(e) => VerifyReport::fail(
            1,
            LinkFailure {
                link: 0,
                equation: LinkEquation::Shape,
                residual: f64::INFINITY,
                detail: e.to_string(),
            },
        ),
    }
}

impl SseChain<RatMatrix> {
    /// Replace the intermediate matrix `A_i` by `V⁻¹·A_i·V`, rewriting the
    /// two adjacent pairs as `(R_i·V, V⁻¹·S_i)` and `(V⁻¹·R_{i+1}, S_{i+1}·V)`.
    /// `i` must be interior (`0 < i < lag`).
    pub fn conjugate_intermediate(&mut self, i: usize, v: &RatMatrix) -> Result<()> {
        if i == 0 || i >= self.matrices.len() - 1 {
            return Err(Error::Precondition(format!(
                "index {} is not an interior matrix of a lag-{} chain",
                i,
                self.lag()
            )));
        }
        let n = self.matrices[i].rows();
        if v.rows() != n || v.cols() != n {
            return Err(Error::Shape(format!(
                "conjugator is {}x{}, matrix {} is {}x{}",
                v.rows(), v.cols(), i, n, n
            )));
        }
        let v_inv = v
            .inverse()
            .ok_or_else(|| Error::Precondition("conjugator is singular".into()))?;
        self.matrices[i] = &(&v_inv * &self.matrices[i]) * v;
        self.pairs[i - 1].r = &self.pairs[i - 1].r * v;
        self.pairs[i - 1].s = &v_inv * &self.pairs[i - 1].s;
        self.pairs[i].r = &v_inv * &self.pairs[i].r;
        self.pairs[i].s = &self.pairs[i].s * v;
        Ok(())
    }
}

/// `tr(A^k)` for `k = 1..=kmax`, exact.
pub fn trace_powers(a: &RatMatrix, kmax: usize) -> Vec<Rat> {
    assert_eq!(a.rows(), a.cols(), "trace powers need a square matrix");
    let mut out = Vec::with_capacity(kmax);
    let mut p = a.clone();
    for k in 1..=kmax {
        out.push(p.trace());
        if k < kmax {
            p = &p * a;
        }
    }
    out
}

/// Exact conservation of `tr(A_0^k) = tr(A_ℓ^k)` for `k = 1..=n` where `n`
/// is the size of the first matrix.  This holds for every valid chain
/// because `tr((RS)^k) = tr((SR)^k)`.
pub fn fingerprint_conserved(chain: &SseChain<RatMatrix>) -> bool {
    let n = chain.first().rows().max(1);
    trace_powers(chain.first(), n) == trace_powers(chain.last(), n)
}

/// Float analogue: largest deviation of `tr(A_0^k)` from `tr(A_ℓ^k)`,
/// `k = 1..=n`.
pub fn fingerprint_residual(chain: &SseChain<FloatMatrix>) -> f64 {
    let n = chain.first().rows().max(1);
    let mut p0 = chain.first().clone();
    let mut p1 = chain.last().clone();
    let mut worst = 0.0f64;
    for k in 1..=n {
        worst = worst.max((p0.trace() - p1.trace()).abs());
        if k < n {
            p0 = &p0 * chain.first();
            p1 = &p1 * chain.last();
        }
    }
    worst
}

/// True when `p` and `q` differ only by a factor `t^k` (either way around):
/// the characteristic-polynomial relation satisfied across every link.
pub fn differ_by_power_of_t(p: &RatPoly, q: &RatPoly) -> bool {
    if p.is_zero() || q.is_zero() {
        return p.is_zero() && q.is_zero();
    }
    p.strip_t_valuation() == q.strip_t_valuation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rint;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int_rows(rows)
    }

    #[test]
    fn single_pair_verifies() {
        let a = m(&[&[1]]);
        let pair = EssePair::new(m(&[&[1]]), m(&[&[1]])).unwrap();
        assert!(verify_esse(&a, &a, &pair, 0.0).ok);
    }

    #[test]
    fn ones_collapse_pair_verifies() {
        let a = m(&[&[1, 1], &[1, 1]]);
        let b = m(&[&[2]]);
        let pair = EssePair::new(m(&[&[1], &[1]]), m(&[&[1, 1]])).unwrap();
        let report = verify_esse(&a, &b, &pair, 0.0);
        assert!(report.ok, "{:?}", report);
    }

    #[test]
    fn mismatched_pair_fails_on_left_equation() {
        let a = RatMatrix::identity(2);
        let pair = EssePair::new(RatMatrix::identity(2), m(&[&[0, 1], &[1, 0]])).unwrap();
        let report = verify_esse(&a, &a, &pair, 0.0);
        assert!(!report.ok);
        let failure = report.first_failure.unwrap();
        assert_eq!(failure.equation, LinkEquation::Left);
        assert_eq!(failure.link, 0);
    }

    #[test]
    fn lag_zero_chain_verifies() {
        let chain = SseChain::identity(m(&[&[3, 1], &[2, 5]]));
        assert!(chain.verify().ok);
        assert_eq!(chain.lag(), 0);
    }

    #[test]
    fn corrupted_link_reports_its_index() {
        let a = m(&[&[1, 1], &[1, 1]]);
        let mut chain = SseChain::identity(a);
        chain
            .push_link(m(&[&[1], &[1]]), m(&[&[1, 1]]))
            .unwrap();
        chain.push_link(m(&[&[2]]), m(&[&[1]])).unwrap();
        assert!(chain.verify().ok);
        chain.pairs[1].s = m(&[&[7]]);
        let report = chain.verify();
        assert!(!report.ok);
        assert_eq!(report.first_failure.unwrap().link, 1);
    }

    #[test]
    fn compose_with_reverse_doubles_lag() {
        let a = m(&[&[1, 1], &[1, 1]]);
        let mut chain = SseChain::identity(a.clone());
        chain
            .push_link(m(&[&[1], &[1]]), m(&[&[1, 1]]))
            .unwrap();
        let loop_chain = chain.compose(&chain.reversed()).unwrap();
        assert_eq!(loop_chain.lag(), 2);
        assert!(loop_chain.verify().ok);
        assert_eq!(loop_chain.first(), &a);
        assert_eq!(loop_chain.last(), &a);
    }

    #[test]
    fn transpose_and_reverse_verify() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let mut chain = SseChain::identity(a);
        // a = (2 1; 1 1) = R*S with R = (1 1 0; 0 1 1)-style rectangular factors
        chain
            .push_link(m(&[&[1, 1, 0], &[0, 1, 1]]), m(&[&[1, 0], &[1, 1], &[0, 0]]))
            .unwrap();
        assert!(chain.verify().ok);
        assert!(chain.transposed().verify().ok);
        assert!(chain.reversed().verify().ok);
        assert_eq!(
            chain.transposed().first(),
            &m(&[&[2, 1], &[1, 1]]).transpose()
        );
    }

    #[test]
    fn nonnegative_verification_flags_signs() {
        let a = m(&[&[1]]);
        let mut chain = SseChain::identity(a);
        chain.push_link(m(&[&[-1]]), m(&[&[-1]])).unwrap();
        assert!(chain.verify().ok);
        let report = chain.verify_over(true);
        assert!(!report.ok);
        assert_eq!(report.first_failure.unwrap().equation, LinkEquation::Shape);
    }

    #[test]
    fn trace_fingerprint_is_conserved() {
        let a = m(&[&[1, 1], &[1, 1]]);
        let mut chain = SseChain::identity(a);
        chain
            .push_link(m(&[&[1], &[1]]), m(&[&[1, 1]]))
            .unwrap();
        assert!(fingerprint_conserved(&chain));
        assert_eq!(trace_powers(chain.first(), 2), vec![rint(2), rint(4)]);
    }

    #[test]
    fn conjugating_an_intermediate_preserves_verification() {
        let a = m(&[&[1, 1], &[1, 1]]);
        let mut chain = SseChain::identity(a.clone());
        chain
            .push_link(m(&[&[1], &[1]]), m(&[&[1, 1]]))
            .unwrap();
        chain.push_link(m(&[&[1]]), m(&[&[2]])).unwrap();
        assert!(chain.verify().ok);
        chain
            .conjugate_intermediate(1, &m(&[&[5]]))
            .unwrap();
        assert!(chain.verify().ok);
        assert_eq!(chain.first(), &a);
    }

    #[test]
    fn char_poly_power_of_t_relation() {
        let p = RatPoly::from_int_coeffs(&[0, 0, -1, 1]); // t^3 - t^2 = t^2 (t - 1)
        let q = RatPoly::from_int_coeffs(&[0, -1, 1]); // t^2 - t = t (t - 1)
        assert!(differ_by_power_of_t(&p, &q));
        let r = RatPoly::from_int_coeffs(&[-1, 1]); // t - 1
        assert!(differ_by_power_of_t(&p, &r));
        let s = RatPoly::from_int_coeffs(&[1, 1]); // t + 1
        assert!(!differ_by_power_of_t(&p, &s));
    }
}
