//! Univariate polynomials over the rationals, little-endian coefficients.
//!
//! Supports the exact spectral queries the invariant layer needs: Sturm
//! chains for counting and isolating real roots, and complete extraction
//! of rational roots with multiplicity (the denominator of any rational
//! root is bounded by the cleared leading coefficient, so a root isolated
//! to a small enough interval can be snapped to the unique small-denominator
//! rational there and verified by exact evaluation).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{rint, simplest_rational_in, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    c: Vec<Rat>, // little-endian; empty = zero, else last is nonzero
}

impl RatPoly {
    pub fn from_coeffs(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        RatPoly { c }
    }

    pub fn zero() -> Self {
        RatPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(v: Rat) -> Self {
        Self::from_coeffs(vec![v])
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn monomial(coeff: Rat, deg: usize) -> Self {
        let mut c = vec![Rat::zero(); deg + 1];
        c[deg] = coeff;
        Self::from_coeffs(c)
    }

    /// t - r
    pub fn linear_root(r: &Rat) -> Self {
        Self::from_coeffs(vec![-r.clone(), Rat::one()])
    }

    pub fn from_int_coeffs(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&v| Rat::from_integer(v.into())).collect())
    }

    /// Number of leading zero roots: the largest `k` with `t^k` dividing `self`.
    pub fn t_valuation(&self) -> usize {
        self.c.iter().take_while(|v| v.is_zero()).count()
    }

    /// Divide out the highest power of `t` (zero stays zero).
    pub fn strip_t_valuation(&self) -> Self {
        RatPoly {
            c: self.c[self.t_valuation()..].to_vec(),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.c.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.c.last()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for v in self.c.iter().rev() {
            acc = acc * x + v;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for v in self.c.iter().rev() {
            acc = acc * x + crate::matrix::rat_to_f64(v);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.c[1..]
                .iter()
                .enumerate()
                .map(|(k, v)| v * rint((k + 1) as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::from_coeffs(self.c.iter().map(|v| v * s).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: self = q * d + r with deg r < deg d.
    pub fn divrem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let dl = d.leading().unwrap().clone();
        let mut r = self.c.clone();
        let mut q = vec![Rat::zero(); self.c.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() / &dl;
            if !f.is_zero() {
                for (i, dc) in d.c.iter().enumerate() {
                    let v = &r[k + i] - &f * dc;
                    r[k + i] = v;
                }
            }
            q[k] = f;
            // Leading term cancels exactly.
            r.pop();
            while r.last().is_some_and(|v| v.is_zero()) && r.len() > dd {
                r.pop();
            }
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic(); // normalization keeps coefficient growth in check
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors: self / gcd(self, self').
    pub fn squarefree_part(&self) -> RatPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.divrem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// Strict bound on the absolute value of every complex root
    /// (Cauchy bound).
    pub fn root_bound(&self) -> Rat {
        let lead = self.leading().expect("root bound of zero polynomial");
        let m = self
            .c
            .iter()
            .take(self.c.len() - 1)
            .map(|v| (v / lead).abs())
            .max()
            .unwrap_or_else(Rat::zero);
        Rat::one() + m
    }

    fn sturm_chain(&self) -> Vec<RatPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                return chain;
            }
            let (_, r) = chain[k - 2].divrem(&chain[k - 1]);
            if r.is_zero() {
                return chain;
            }
            chain.push((-&r).monic());
        }
    }

    fn sign_variations(chain: &[RatPoly], x: &Rat) -> usize {
        let mut last: Option<bool> = None; // sign of previous nonzero value
        let mut v = 0;
        for p in chain {
            let val = p.eval(x);
            if val.is_zero() {
                continue;
            }
            let s = val.is_positive();
            if let Some(prev) = last {
                if prev != s {
                    v += 1;
                }
            }
            last = Some(s);
        }
        v
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    /// Endpoints must not themselves be roots of the squarefree part for
    /// the count to be reliable; the isolation driver guarantees this.
    pub fn count_distinct_real_roots_in(&self, a: &Rat, b: &Rat) -> usize {
        assert!(a <= b);
        let sf = self.squarefree_part();
        if sf.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let chain = sf.sturm_chain();
        Self::sign_variations(&chain, a) - Self::sign_variations(&chain, b)
    }

    pub fn count_distinct_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let b = self.root_bound();
        let lo = -&b - Rat::one();
        let hi = &b + Rat::one();
        self.count_distinct_real_roots_in(&lo, &hi)
    }

    pub fn has_real_root(&self) -> bool {
        self.count_distinct_real_roots() > 0
    }

    /// Disjoint half-open intervals (a, b], each containing exactly one
    /// distinct real root, with a and b non-roots. Sorted ascending.
    pub fn isolate_real_roots(&self) -> Vec<(Rat, Rat)> {
        let sf = self.squarefree_part();
        if sf.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let chain = sf.sturm_chain();
        let bound = sf.root_bound();
        let lo = -&bound - Rat::one();
        let hi = &bound + Rat::one();
        let mut out = Vec::new();
        let mut stack = vec![(lo, hi)];
        while let Some((a, b)) = stack.pop() {
            let count = Self::sign_variations(&chain, &a) - Self::sign_variations(&chain, &b);
            match count {
                0 => {}
                1 => out.push((a, b)),
                _ => {
                    let m = sf.nonroot_split_point(&a, &b);
                    stack.push((a, m.clone()));
                    stack.push((m, b));
                }
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    /// A point strictly inside (a, b) that is not a root of self, found by
    /// sliding off the midpoint; self has finitely many roots so this
    /// terminates.
    fn nonroot_split_point(&self, a: &Rat, b: &Rat) -> Rat {
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        let mut m = (a + b) * &half;
        let mut step = (b - a) * Rat::new(BigInt::one(), BigInt::from(4));
        while self.eval(&m).is_zero() {
            m += &step;
            step *= &half;
        }
        m
    }

    /// Shrink an isolating interval (a, b] of the squarefree part until
    /// its width is at most `width`. Returns a degenerate pair (r, r) on
    /// an exact hit.
    pub fn refine_root(&self, a: &Rat, b: &Rat, width: &Rat) -> (Rat, Rat) {
        let sf = self.squarefree_part();
        let chain = sf.sturm_chain();
        let (mut lo, mut hi) = (a.clone(), b.clone());
        while &(&hi - &lo) > width {
            let half = Rat::new(BigInt::one(), BigInt::from(2));
            let m = (&lo + &hi) * &half;
            if sf.eval(&m).is_zero() {
                return (m.clone(), m);
            }
            let left = Self::sign_variations(&chain, &lo) - Self::sign_variations(&chain, &m);
            if left == 1 {
                hi = m;
            } else {
                lo = m;
            }
        }
        (lo, hi)
    }

    /// All rational roots with multiplicities (ascending), plus the
    /// cofactor with every rational root divided out. The cofactor may
    /// still have irrational real roots; it has no rational ones.
    pub fn rational_roots(&self) -> (Vec<(Rat, usize)>, RatPoly) {
        assert!(!self.is_zero(), "rational roots of zero polynomial");
        let sf = self.squarefree_part();
        if sf.degree().unwrap_or(0) == 0 {
            return (Vec::new(), self.clone());
        }
        // Clear denominators; any rational root p/q in lowest terms has
        // q dividing the integer leading coefficient.
        let den_lcm = sf
            .c
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let int_lead = (sf.leading().unwrap() * Rat::from_integer(den_lcm)).to_integer();
        let q_max = int_lead.abs().max(BigInt::one());
        let target_width = Rat::new(BigInt::one(), &q_max * &q_max * BigInt::from(2));

        let mut roots = Vec::new();
        let mut cofactor = self.clone();
        for (a, b) in self.isolate_real_roots() {
            let (lo, hi) = self.refine_root(&a, &b, &target_width);
            let candidate = if lo == hi {
                lo
            } else {
                simplest_rational_in(&lo, &hi)
            };
            if candidate.denom() <= &q_max && sf.eval(&candidate).is_zero() {
                let mut mult = 0;
                let lin = Self::linear_root(&candidate);
                loop {
                    let (q, r) = cofactor.divrem(&lin);
                    if r.is_zero() {
                        cofactor = q;
                        mult += 1;
                    } else {
                        break;
                    }
                }
                debug_assert!(mult >= 1);
                roots.push((candidate, mult));
            }
        }
        (roots, cofactor)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in self.c.iter().enumerate().rev() {
            if v.is_zero() {
                continue;
            }
            let (sign, mag) = if v.is_negative() {
                ("-", -v.clone())
            } else {
                ("+", v.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let unit_coeff = mag.is_one() && k > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}t", if unit_coeff { "" } else { " " })?,
                _ => write!(f, "{}t^{}", if unit_coeff { "" } else { " " }, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.c.len().max(rhs.c.len());
        RatPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.c.len().max(rhs.c.len());
        RatPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::from_coeffs(self.c.iter().map(|v| -v.clone()).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in rhs.c.iter().enumerate() {
                let v = &out[i + j] + a * b;
                out[i + j] = v;
            }
        }
        RatPoly::from_coeffs(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat;

    fn poly(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_coeffs(coeffs.iter().map(|&v| rint(v)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let p = poly(&[2, -3, 0, 1, 5]); // 5t^4 + t^3 - 3t + 2
        let d = poly(&[1, 0, 1]); // t^2 + 1
        let (q, r) = p.divrem(&d);
        assert_eq!(&(&q * &d) + &r, p);
        assert!(r.degree().unwrap_or(0) < d.degree().unwrap());
    }

    #[test]
    fn gcd_finds_shared_factor() {
        let a = poly(&[-1, 0, 1]); // (t-1)(t+1)
        let b = poly(&[1, -2, 1]); // (t-1)^2
        assert_eq!(a.gcd(&b).to_string(), "t - 1");
    }

    #[test]
    fn squarefree_part_drops_multiplicity() {
        let p = poly(&[0, 0, -1, 1]); // t^2 (t - 1)
        assert_eq!(p.squarefree_part().to_string(), "t^2 - t");
    }

    #[test]
    fn sturm_counts_real_roots() {
        assert_eq!(poly(&[-2, 0, 1]).count_distinct_real_roots(), 2); // t^2 - 2
        assert_eq!(poly(&[1, 0, 1]).count_distinct_real_roots(), 0); // t^2 + 1
        assert_eq!(poly(&[0, -1, 0, 1]).count_distinct_real_roots(), 3); // t^3 - t
        assert_eq!(poly(&[1, -2, 1]).count_distinct_real_roots(), 1); // (t-1)^2
    }

    #[test]
    fn isolation_separates_roots() {
        let p = poly(&[0, -1, 0, 1]); // roots -1, 0, 1
        let ivs = p.isolate_real_roots();
        assert_eq!(ivs.len(), 3);
        for w in ivs.windows(2) {
            assert!(w[0].1 <= w[1].0);
        }
    }

    #[test]
    fn rational_root_extraction() {
        // (t - 1/2)^2 (t + 3) (t^2 + 1)
        let p = &(&RatPoly::linear_root(&rat(1, 2)).pow(2) * &RatPoly::linear_root(&rint(-3)))
            * &poly(&[1, 0, 1]);
        let (roots, rest) = p.rational_roots();
        assert_eq!(roots, vec![(rint(-3), 1), (rat(1, 2), 2)]);
        assert_eq!(rest.to_string(), "t^2 + 1");
        assert!(!rest.has_real_root());

        // t^2 - 2 has real but irrational roots.
        let (roots, rest) = poly(&[-2, 0, 1]).rational_roots();
        assert!(roots.is_empty());
        assert!(rest.has_real_root());
    }

    #[test]
    fn display_format() {
        assert_eq!(poly(&[-1, -1, 1]).to_string(), "t^2 - t - 1");
        assert_eq!(poly(&[0]).to_string(), "0");
        assert_eq!(poly(&[7]).to_string(), "7");
        assert_eq!(
            RatPoly::from_coeffs(vec![rat(1, 2), rint(0), rint(-2)]).to_string(),
            "-2 t^2 + 1/2"
        );
    }

    #[test]
    fn refine_hits_exact_roots() {
        let p = poly(&[-1, 0, 1]); // roots ±1
        for (a, b) in p.isolate_real_roots() {
            let (lo, hi) = p.refine_root(&a, &b, &rat(1, 1_000_000));
            assert!(&hi - &lo <= rat(1, 1_000_000) || lo == hi);
        }
    }
}
