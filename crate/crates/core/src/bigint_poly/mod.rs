//! Dense univariate polynomials in `q` with arbitrary-precision integer
//! coefficients, and exact rationals for evaluating them.

mod karatsuba;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use karatsuba::{mul_schoolbook, mul_with_threshold, KARATSUBA_THRESHOLD};
pub use rational::BigRat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("not divisible: remainder {remainder}")]
    NotDivisible { remainder: IntPoly },
    #[error("leading coefficient of divisor is not a unit")]
    LeadingCoeffNotUnit,
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

/// A polynomial `c_0 + c_1 q + ... + c_d q^d` over the integers.
///
/// The coefficient vector is always canonical: either empty (the zero
/// polynomial) or ending in a nonzero coefficient. Derived equality is
/// therefore mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * q^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with `None` standing in for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest power of `q` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + k);
        coeffs.resize(k, BigInt::zero());
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    /// Divides by `q^k`, which must divide `self` exactly.
    pub(crate) fn unshift(&self, k: usize) -> IntPoly {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        IntPoly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `self * (1 - q^e)`, without a general multiplication.
    pub fn mul_one_minus_q_pow(&self, e: usize) -> IntPoly {
        if e == 0 {
            return IntPoly::zero();
        }
        self - &self.shift(e)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `a / b`. Fails with [`PolyError::NotDivisible`] unless
    /// some integer polynomial `c` satisfies `c * b == a`.
    pub fn exact_div(&self, divisor: &IntPoly) -> Result<IntPoly, PolyError> {
        let (quot, rem) = long_division(self, divisor, true)?;
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(PolyError::NotDivisible { remainder: rem })
        }
    }

    /// Euclidean division by a divisor whose leading coefficient is `±1`.
    /// Returns `(quot, rem)` with `self = quot * divisor + rem` and
    /// `deg rem < deg divisor`.
    pub fn divrem_unit_leading(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly), PolyError> {
        let lead = divisor.leading().ok_or(PolyError::DivisionByZero)?;
        if !lead.abs().is_one() {
            return Err(PolyError::LeadingCoeffNotUnit);
        }
        long_division(self, divisor, false)
    }

    /// Exact Horner evaluation at a rational point.
    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| &(&acc * x) + &BigRat::from_int(c.clone()))
    }

    /// Value at `q = 1`, i.e. the coefficient sum.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// True when the coefficient sequence reads the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }
}

/// Schoolbook long division from the top coefficient down.
///
/// When `stop_on_inexact` is set, a top coefficient not divisible by the
/// divisor's leading coefficient aborts with the current partial remainder.
/// Otherwise the leading coefficient is assumed to be a unit.
fn long_division(
    dividend: &IntPoly,
    divisor: &IntPoly,
    stop_on_inexact: bool,
) -> Result<(IntPoly, IntPoly), PolyError> {
    let db = divisor.degree().ok_or(PolyError::DivisionByZero)?;
    let Some(da) = dividend.degree() else {
        return Ok((IntPoly::zero(), IntPoly::zero()));
    };
    if da < db {
        return Ok((IntPoly::zero(), dividend.clone()));
    }
    let lead = &divisor.coeffs[db];
    // Skip zero coefficients of the divisor; the q-integer moduli and the
    // (1 - q^i) factors are sparse or short.
    let support: Vec<(usize, &BigInt)> = divisor.coeffs[..db]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let lead_is_one = lead.is_one();
    let lead_is_minus_one = (-lead).is_one();

    let mut rem = dividend.coeffs.clone();
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for i in (0..=da - db).rev() {
        let top = &rem[i + db];
        if top.is_zero() {
            continue;
        }
        let factor = if lead_is_one {
            top.clone()
        } else if lead_is_minus_one {
            -top
        } else {
            let (f, r) = top.div_rem(lead);
            if !r.is_zero() {
                debug_assert!(stop_on_inexact);
                return Err(PolyError::NotDivisible {
                    remainder: IntPoly::from_coeffs(rem),
                });
            }
            f
        };
        for &(j, c) in &support {
            rem[i + j] -= &factor * c;
        }
        rem[i + db] = BigInt::zero();
        quot[i] = factor;
    }
    rem.truncate(db);
    Ok((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
}

impl fmt::Display for IntPoly {
    /// Ascending powers with explicit coefficients: `1 + q + 2*q^2 - q^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}*")?;
                    }
                    if i == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &'a IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &'a IntPoly) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, r) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= r;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &'a IntPoly) -> IntPoly {
        mul_with_threshold(self, rhs, KARATSUBA_THRESHOLD)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &'a IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for IntPoly {
    fn sum<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::one(), |acc, p| &acc * &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p(&[1, 1]) + &p(&[1, -1]), p(&[2]));
        assert_eq!(&p(&[3, 0, 5]) + &IntPoly::zero(), p(&[3, 0, 5]));
        assert_eq!(&p(&[1, 1, 1]) + &p(&[0, 0, 1]), p(&[1, 1, 2]));
        // cancellation of the top term must not leave a trailing zero
        assert_eq!(&p(&[1, 1]) - &p(&[0, 1]), p(&[1]));
        assert_eq!((&p(&[1, 1]) - &p(&[1, 1])).degree(), None);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1]), p(&[1, 2, 1]));
        assert!((&p(&[4, 5, 6]) * &IntPoly::zero()).is_zero());
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1, 1]), p(&[1, 2, 2, 1]));
    }

    #[test]
    fn exact_div_examples() {
        assert_eq!(p(&[1, 2, 1]).exact_div(&p(&[1, 1])).unwrap(), p(&[1, 1]));
        match p(&[1, 1, 1]).exact_div(&p(&[1, 1])) {
            Err(PolyError::NotDivisible { remainder }) => assert_eq!(remainder, p(&[1])),
            other => panic!("expected NotDivisible, got {other:?}"),
        }
        let q4 = p(&[1, 1, 1, 1]);
        let q3 = p(&[1, 1, 1]);
        let q2 = p(&[1, 1]);
        let prod = &(&q4 * &q3) * &q2;
        assert_eq!(prod.exact_div(&q2).unwrap(), p(&[1, 2, 3, 3, 2, 1]));
        assert_eq!(p(&[1]).exact_div(&IntPoly::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn exact_div_non_unit_leading() {
        // (2 + 3q)(1 + 2q) = 2 + 7q + 6q^2
        assert_eq!(p(&[2, 7, 6]).exact_div(&p(&[1, 2])).unwrap(), p(&[2, 3]));
        assert!(matches!(
            p(&[1, 0, 1]).exact_div(&p(&[0, 2])),
            Err(PolyError::NotDivisible { .. })
        ));
    }

    #[test]
    fn divrem_examples() {
        let (quot, rem) = p(&[0, 0, 1]).divrem_unit_leading(&p(&[1, 1])).unwrap();
        assert_eq!(quot, p(&[-1, 1]));
        assert_eq!(rem, p(&[1]));

        let small = p(&[5, 7]);
        let (quot, rem) = small.divrem_unit_leading(&p(&[1, 0, 1])).unwrap();
        assert!(quot.is_zero());
        assert_eq!(rem, small);

        let q3 = p(&[1, 1, 1]);
        let (quot, rem) = (&q3 * &q3).divrem_unit_leading(&q3).unwrap();
        assert_eq!(quot, q3);
        assert!(rem.is_zero());

        assert_eq!(
            p(&[1]).divrem_unit_leading(&p(&[1, 2])),
            Err(PolyError::LeadingCoeffNotUnit)
        );
        assert_eq!(
            p(&[1]).divrem_unit_leading(&IntPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
        // leading coefficient -1
        let (quot, rem) = p(&[0, 0, 1]).divrem_unit_leading(&p(&[1, -1])).unwrap();
        assert_eq!(&(&quot * &p(&[1, -1])) + &rem, p(&[0, 0, 1]));
        assert_eq!(rem.degree(), Some(0));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[1, 1, 1]).eval(&BigRat::from_i64(1)), BigRat::from_i64(3));
        assert_eq!(IntPoly::zero().eval(&BigRat::new_i64(7, 3)), BigRat::zero());
        assert_eq!(p(&[1, 1]).eval(&BigRat::new_i64(1, 2)), BigRat::new_i64(3, 2));
        assert_eq!(p(&[4, -1, 9]).eval_at_one(), BigInt::from(12));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[1, 1]).shift(2), p(&[0, 0, 1, 1]));
        assert!(IntPoly::zero().shift(5).is_zero());
        assert_eq!(p(&[3, 4]).shift(0), p(&[3, 4]));
        assert_eq!(p(&[0, 0, 1, 1]).unshift(2), p(&[1, 1]));
    }

    #[test]
    fn degree_and_monomials() {
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(IntPoly::monomial(3, 4).degree(), Some(4));
        assert!(IntPoly::monomial(0, 4).is_zero());
        assert_eq!(p(&[0, 0, 2]).valuation(), Some(2));
        assert_eq!(IntPoly::from_i64s(&[1, 2, 0, 0]).coeffs().len(), 2);
    }

    #[test]
    fn rendering() {
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p(&[1, 1, 2, 1, 1]).to_string(), "1 + q + 2*q^2 + q^3 + q^4");
        assert_eq!(p(&[0, -1, 0, -3]).to_string(), "-q - 3*q^3");
        assert_eq!(p(&[-2, 1]).to_string(), "-2 + q");
        assert_eq!(p(&[5]).to_string(), "5");
    }

    #[test]
    fn one_minus_q_pow() {
        let base = p(&[1, 2]);
        assert_eq!(base.mul_one_minus_q_pow(3), &base * &p(&[1, 0, 0, -1]));
        assert!(base.mul_one_minus_q_pow(0).is_zero());
    }
}
