use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BigRat(BigRational);

impl BigRat {
    /// Panics when `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        BigRat(BigRational::new(num.into(), den.into()))
    }

    pub fn new_i64(num: i64, den: i64) -> Self {
        Self::new(num, den)
    }

    pub fn from_int(n: BigInt) -> Self {
        BigRat(BigRational::from_integer(n))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_int(BigInt::from(n))
    }

    pub fn zero() -> Self {
        BigRat(BigRational::zero())
    }

    pub fn one() -> Self {
        BigRat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `None` for zero.
    pub fn recip(&self) -> Option<BigRat> {
        (!self.is_zero()).then(|| BigRat(self.0.recip()))
    }

    /// `None` on division by zero.
    pub fn checked_div(&self, rhs: &BigRat) -> Option<BigRat> {
        (!rhs.is_zero()).then(|| BigRat(&self.0 / &rhs.0))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn powi(&self, e: i64) -> Option<BigRat> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = BigRat::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigRat({self})")
    }
}

impl<'a> Add<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    fn add(self, rhs: &'a BigRat) -> BigRat {
        BigRat(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    fn sub(self, rhs: &'a BigRat) -> BigRat {
        BigRat(&self.0 - &rhs.0)
    }
}

impl<'a> Mul<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    fn mul(self, rhs: &'a BigRat) -> BigRat {
        BigRat(&self.0 * &rhs.0)
    }
}

/// Panics on division by zero; see [`BigRat::checked_div`].
impl<'a> Div<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    fn div(self, rhs: &'a BigRat) -> BigRat {
        BigRat(&self.0 / &rhs.0)
    }
}

impl Neg for &BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn always_reduced() {
        let r = BigRat::new_i64(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn powers_and_division() {
        let half = BigRat::new_i64(1, 2);
        assert_eq!(half.powi(-3), Some(BigRat::from_i64(8)));
        assert_eq!(BigRat::zero().powi(-1), None);
        assert_eq!(half.checked_div(&BigRat::zero()), None);
        assert_eq!(BigRat::from_i64(3).checked_div(&half), Some(BigRat::from_i64(6)));
    }
}
