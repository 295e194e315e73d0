use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bigint_poly::IntPoly;

/// `q^offset * body`, where `body` is zero or has a nonzero constant term.
///
/// The zero Laurent polynomial always carries offset 0, so derived equality
/// is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    offset: i64,
    body: IntPoly,
}

impl LaurentPoly {
    pub fn new(offset: i64, body: IntPoly) -> Self {
        match body.valuation() {
            None => LaurentPoly::zero(),
            Some(0) => LaurentPoly { offset, body },
            Some(v) => LaurentPoly {
                offset: offset + v as i64,
                body: body.unshift(v),
            },
        }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            offset: 0,
            body: IntPoly::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }

    pub fn from_poly(p: IntPoly) -> Self {
        Self::new(0, p)
    }

    /// `c * q^e` for any integer exponent.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        Self::new(e, IntPoly::constant(c))
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn body(&self) -> &IntPoly {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i64) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            offset: self.offset + e,
            body: self.body.clone(),
        }
    }

    /// The ordinary polynomial this represents, if no negative power occurs.
    pub fn to_poly(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        usize::try_from(self.offset).ok().map(|k| self.body.shift(k))
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let base = self.offset.min(rhs.offset);
        let lhs_body = self.body.shift((self.offset - base) as usize);
        let rhs_body = rhs.body.shift((rhs.offset - base) as usize);
        LaurentPoly::new(base, &lhs_body + &rhs_body)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        LaurentPoly::new(self.offset + rhs.offset, &self.body * &rhs.body)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            offset: self.offset,
            body: -&self.body,
        }
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> LaurentPoly {
        iter.fold(LaurentPoly::zero(), |acc, p| &acc + &p)
    }
}

impl From<IntPoly> for LaurentPoly {
    fn from(p: IntPoly) -> Self {
        LaurentPoly::from_poly(p)
    }
}

impl fmt::Display for LaurentPoly {
    /// Same layout as [`IntPoly`], with signed exponents: `-q^-1 + 2 + q^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.body.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.offset + i as i64;
            let magnitude = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if e == 0 {
                write!(f, "{magnitude}")?;
                continue;
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            if e == 1 {
                f.write_str("q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
