//! Matrix types over the three scalar domains the crate works in:
//! arbitrary-precision rationals (exact decisions), `f64` (paths and
//! numeric search), and the Boolean semiring (zero patterns).

pub mod boolean;
pub mod float;
pub mod rational;

pub use boolean::BoolMatrix;
pub use float::FloatMatrix;
pub use rational::{rat, rint, Rat, RatMatrix};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Nearest double to a rational.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite double (mantissa times power of two).
pub fn f64_to_rat_exact(x: f64) -> Rat {
    assert!(x.is_finite(), "non-finite float");
    Rat::from_float(x).expect("finite float converts exactly")
}

/// Best rational approximation to `x` with denominator at most
/// `max_denominator`, via continued-fraction convergents and the final
/// semiconvergent. Ties resolve toward the convergent.
pub fn f64_to_rat_bounded(x: f64, max_denominator: u64) -> Rat {
    assert!(max_denominator >= 1);
    let target = f64_to_rat_exact(x);
    let cap = BigInt::from(max_denominator);

    // Continued-fraction expansion of the exact value.
    let (mut h_prev, mut h) = (BigInt::one(), target.floor().to_integer());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    let mut frac = &target - Rat::from_integer(h.clone());
    while !frac.is_zero() {
        let rec = frac.recip();
        let a = rec.floor().to_integer();
        frac = &rec - Rat::from_integer(a.clone());
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if k_next > cap {
            // Largest semiconvergent with denominator within the cap.
            let t = (&cap - &k_prev) / &k;
            let semi_h = &t * &h + &h_prev;
            let semi_k = &t * &k + &k_prev;
            let conv = Rat::new(h.clone(), k.clone());
            if t.is_zero() {
                return conv;
            }
            let semi = Rat::new(semi_h, semi_k);
            let d_conv = (&conv - &target).abs();
            let d_semi = (&semi - &target).abs();
            return if d_semi < d_conv { semi } else { conv };
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
    Rat::new(h, k)
}

/// The rational with smallest denominator in the closed interval
/// [lo, hi] (smallest numerator magnitude among those, for integers).
pub fn simplest_rational_in(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi, "empty interval");
    // An integer in range has denominator 1 and wins outright; among
    // integers, prefer the one of smallest magnitude.
    let n = lo.ceil();
    if &n <= hi {
        if lo.is_negative() && !hi.is_negative() {
            return Rat::zero();
        }
        return if n.is_negative() { hi.floor() } else { n };
    }
    let f = lo.floor();
    let sub_lo = (hi - &f).recip();
    let sub_hi = (lo - &f).recip();
    &f + simplest_rational_in(&sub_lo, &sub_hi).recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    #[test]
    fn identity_multiplication_is_neutral() {
        let m = RatMatrix::parse_rows(&["1/2 3 0", "-1 7/5 2", "0 0 9"]).unwrap();
        let i3 = RatMatrix::identity(3);
        assert_eq!(&(&i3 * &m), &m);
        assert_eq!(&(&m * &i3), &m);
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let a = RatMatrix::parse_rows(&["1/3 1/3", "1/3 1/3"]).unwrap();
        let b = &(&a + &a) + &a;
        assert!(b.entries().all(|v| v.is_one()));
    }

    #[test]
    fn boolean_square_of_golden_mean_pattern() {
        let a = BoolMatrix::from_int_rows(&[vec![1, 1], vec![1, 0]]);
        let sq = &a * &a;
        assert_eq!(sq, BoolMatrix::ones(2, 2));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::zero(4, 4).rank(), 0);
        // Rows (1,1,*) with third column varying: rank 2.
        let j = RatMatrix::from_int_rows(&[vec![1, 1, 1], vec![1, 1, 2], vec![1, 1, 3]]);
        assert_eq!(j.rank(), 2);
        let ones = RatMatrix::from_int_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(ones.rank(), 1);
        assert_eq!(RatMatrix::identity(5).rank(), 5);
    }

    #[test]
    fn char_poly_examples() {
        let z = RatMatrix::zero(2, 2);
        assert_eq!(z.char_poly().to_string(), "t^2");
        let fib = RatMatrix::from_int_rows(&[vec![1, 1], vec![1, 0]]);
        assert_eq!(fib.char_poly().to_string(), "t^2 - t - 1");
        // det(tI - A) at t = 0 is det(-A).
        let m = RatMatrix::parse_rows(&["2 1 0", "0 3 1", "1 0 1"]).unwrap();
        let p = m.char_poly();
        assert_eq!(p.eval(&Rat::zero()), (-&m).det());
        assert_eq!(p.eval(&Rat::zero()), -m.det());
    }

    #[test]
    fn float_max_norm_is_largest_magnitude() {
        let m = FloatMatrix::from_rows(&[vec![-3.4, 1.4, 5.0], vec![3.14, -3.14, 6.0]]);
        assert_eq!(m.max_norm(), 6.0);
    }

    #[test]
    fn nondegeneracy_detects_zero_lines() {
        assert!(RatMatrix::identity(3).is_nondegenerate());
        let zero_col = RatMatrix::from_int_rows(&[vec![1, 0], vec![1, 0]]);
        assert!(!zero_col.is_nondegenerate());
        let zero_row = RatMatrix::from_int_rows(&[vec![1, 1], vec![0, 0]]);
        assert!(!zero_row.is_nondegenerate());
    }

    #[test]
    fn inverse_and_solve_agree() {
        let a = RatMatrix::parse_rows(&["2 1", "1 1"]).unwrap();
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        let b = RatMatrix::parse_rows(&["3", "5"]).unwrap();
        let x = a.solve(&b).unwrap();
        assert_eq!(&a * &x, b);
        // Singular matrix has no inverse but may still be solvable.
        let s = RatMatrix::from_int_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(s.inverse().is_none());
        assert!(s.solve(&RatMatrix::from_int_rows(&[vec![1], vec![1]])).is_some());
        assert!(s.solve(&RatMatrix::from_int_rows(&[vec![1], vec![2]])).is_none());
    }

    #[test]
    fn kernel_columns_are_killed() {
        let a = RatMatrix::from_int_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = a.kernel();
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        assert_eq!(a.rank() + k.cols(), a.cols());
    }

    #[test]
    fn wielandt_primitivity() {
        let fib = BoolMatrix::from_int_rows(&[vec![1, 1], vec![1, 0]]);
        assert!(fib.is_primitive());
        assert!(fib.is_irreducible());
        // A pure cycle is irreducible but not primitive.
        let cycle = BoolMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(cycle.is_irreducible());
        assert!(!cycle.is_primitive());
        let nilp = BoolMatrix::from_int_rows(&[vec![0, 1], vec![0, 0]]);
        assert!(!nilp.is_irreducible());
        assert!(!nilp.is_primitive());
    }

    #[test]
    fn snap_recovers_simple_fractions() {
        let third = 1.0f64 / 3.0;
        assert_eq!(f64_to_rat_bounded(third, 1_000_000), rat(1, 3));
        assert_eq!(f64_to_rat_bounded(0.5, 10), rat(1, 2));
        assert_eq!(f64_to_rat_bounded(-2.0 / 7.0, 100), rat(-2, 7));
        // Exactly representable values pass through when the cap allows.
        assert_eq!(f64_to_rat_bounded(0.25, 4), rat(1, 4));
        // Cap of 1 forces the nearest integer-ish approximation.
        let v = f64_to_rat_bounded(0.4, 1);
        assert!(v == rat(0, 1) || v == rat(1, 1));
    }

    #[test]
    fn simplest_rational_picks_smallest_denominator() {
        assert_eq!(
            simplest_rational_in(&Rat::from_str("3/10").unwrap(), &Rat::from_str("2/5").unwrap()),
            rat(1, 3)
        );
        assert_eq!(
            simplest_rational_in(&Rat::from_str("-1/2").unwrap(), &Rat::from_str("1/3").unwrap()),
            Rat::zero()
        );
        assert_eq!(
            simplest_rational_in(&Rat::from_str("5/2").unwrap(), &Rat::from_str("7/2").unwrap()),
            rint(3)
        );
    }

    #[test]
    fn float_rank_with_tolerance() {
        let m = FloatMatrix::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![2.0, 4.0, 6.0 + 1e-13],
            vec![0.0, 0.0, 0.0],
        ]);
        assert_eq!(m.rank_tol(1e-9), 1);
        assert_eq!(m.rank_tol(1e-15), 2);
    }

    #[test]
    fn exact_float_round_trip() {
        let m = FloatMatrix::from_rows(&[vec![0.1, -1.5], vec![3.0, 0.0]]);
        let r = m.to_rational_exact();
        assert_eq!(r.to_float(), m);
    }
}
