//! Scalar abstraction for the LP solver: exact rationals (fixed-width
//! with overflow detection, arbitrary precision as fallback) and f64.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::tol;

/// Numbers the simplex can pivot on. All arithmetic is checked so a
/// fixed-width rational can report overflow instead of wrapping.
pub trait LpScalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn checked_add(&self, o: &Self) -> Option<Self>;
    fn checked_sub(&self, o: &Self) -> Option<Self>;
    fn checked_mul(&self, o: &Self) -> Option<Self>;
    fn checked_div(&self, o: &Self) -> Option<Self>;
    fn checked_cmp(&self, o: &Self) -> Option<Ordering>;
    fn is_zero(&self) -> bool;
    /// Strictly negative beyond the scalar's pivot tolerance.
    fn is_negative(&self) -> bool;
    /// Strictly positive beyond the scalar's pivot tolerance.
    fn is_positive(&self) -> bool;
    fn to_f64(&self) -> f64;
}

impl LpScalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn checked_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }

    fn checked_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }

    fn checked_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }

    fn checked_div(&self, o: &Self) -> Option<Self> {
        if *o == 0.0 {
            None
        } else {
            Some(self / o)
        }
    }

    fn checked_cmp(&self, o: &Self) -> Option<Ordering> {
        self.partial_cmp(o)
    }

    fn is_zero(&self) -> bool {
        self.abs() <= tol::LP_PIVOT
    }

    fn is_negative(&self) -> bool {
        *self < -tol::LP_PIVOT
    }

    fn is_positive(&self) -> bool {
        *self > tol::LP_PIVOT
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Reduced fraction over `i128`; every operation is overflow-checked.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rat {
    num: i128,
    den: i128, // > 0
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    fn build(num: i128, den: i128) -> Option<Rat> {
        if den == 0 {
            return None;
        }
        let sign = if den < 0 { -1 } else { 1 };
        let (num, den) = (num.checked_mul(sign)?, den.checked_mul(sign)?);
        let g = gcd(num, den).max(1);
        Some(Rat { num: num / g, den: den / g })
    }
}

impl LpScalar for Rat {
    fn zero() -> Self {
        Rat { num: 0, den: 1 }
    }

    fn one() -> Self {
        Rat { num: 1, den: 1 }
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rat::build(num as i128, den as i128).expect("nonzero denominator")
    }

    fn checked_add(&self, o: &Self) -> Option<Self> {
        let g = gcd(self.den, o.den).max(1);
        let left = self.num.checked_mul(o.den / g)?;
        let right = o.num.checked_mul(self.den / g)?;
        let den = (self.den / g).checked_mul(o.den)?;
        Rat::build(left.checked_add(right)?, den)
    }

    fn checked_sub(&self, o: &Self) -> Option<Self> {
        self.checked_add(&Rat { num: o.num.checked_neg()?, den: o.den })
    }

    fn checked_mul(&self, o: &Self) -> Option<Self> {
        // cross-reduce before multiplying to keep magnitudes down
        let g1 = gcd(self.num, o.den).max(1);
        let g2 = gcd(o.num, self.den).max(1);
        let num = (self.num / g1).checked_mul(o.num / g2)?;
        let den = (self.den / g2).checked_mul(o.den / g1)?;
        Rat::build(num, den)
    }

    fn checked_div(&self, o: &Self) -> Option<Self> {
        if o.num == 0 {
            return None;
        }
        self.checked_mul(&Rat::build(o.den, o.num)?)
    }

    fn checked_cmp(&self, o: &Self) -> Option<Ordering> {
        let left = self.num.checked_mul(o.den)?;
        let right = o.num.checked_mul(self.den)?;
        Some(left.cmp(&right))
    }

    fn is_zero(&self) -> bool {
        self.num == 0
    }

    fn is_negative(&self) -> bool {
        self.num < 0
    }

    fn is_positive(&self) -> bool {
        self.num > 0
    }

    fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Arbitrary-precision rational; the escalation target when [`Rat`]
/// overflows.
#[derive(Clone, PartialEq, Debug)]
pub struct BigRat(pub BigRational);

impl LpScalar for BigRat {
    fn zero() -> Self {
        BigRat(BigRational::zero())
    }

    fn one() -> Self {
        BigRat(BigRational::one())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn checked_add(&self, o: &Self) -> Option<Self> {
        Some(BigRat(&self.0 + &o.0))
    }

    fn checked_sub(&self, o: &Self) -> Option<Self> {
        Some(BigRat(&self.0 - &o.0))
    }

    fn checked_mul(&self, o: &Self) -> Option<Self> {
        Some(BigRat(&self.0 * &o.0))
    }

    fn checked_div(&self, o: &Self) -> Option<Self> {
        if o.0.is_zero() {
            None
        } else {
            Some(BigRat(&self.0 / &o.0))
        }
    }

    fn checked_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.0.cmp(&o.0))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_arithmetic_reduces() {
        let a = Rat::from_ratio(1, 3);
        let b = Rat::from_ratio(1, 6);
        let s = a.checked_add(&b).unwrap();
        assert_eq!(s, Rat::from_ratio(1, 2));
        let p = a.checked_mul(&b).unwrap();
        assert_eq!(p, Rat::from_ratio(1, 18));
        assert_eq!(a.checked_div(&b).unwrap(), Rat::from_ratio(2, 1));
        assert!(a.checked_cmp(&b) == Some(Ordering::Greater));
    }

    #[test]
    fn rat_overflow_detected() {
        let big = Rat::build(i128::MAX / 2, 1).unwrap();
        assert!(big.checked_mul(&big).is_none());
        assert!(big.checked_add(&big).is_some()); // still fits
        let bigger = Rat::build(i128::MAX - 1, 1).unwrap();
        assert!(bigger.checked_add(&bigger).is_none());
    }

    #[test]
    fn f64_tolerance_semantics() {
        assert!(!(1e-9f64).is_positive());
        assert!((1e-6f64).is_positive());
        assert!((-1e-6f64).is_negative());
        assert!((1e-9f64).is_zero());
    }
}
