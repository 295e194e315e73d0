//! q-integers, q-factorials, Gaussian binomials and q-Pochhammer symbols.
//!
//! `q_binomial` uses the product formula with exact division. The q-Pascal
//! recurrence in `q_binomial_oracle` shares no code with it and exists only
//! for cross-validation.

mod cache;
mod laurent;

use num_bigint::BigInt;
use num_traits::One;

use crate::bigint_poly::{BigRat, IntPoly};
use crate::Error;

pub use cache::{QBinomialCache, DEFAULT_CACHE_LIMIT};
pub use laurent::LaurentPoly;

/// `[n] = 1 + q + ... + q^(n-1)`; `[0] = 0`.
pub fn q_int(n: usize) -> IntPoly {
    IntPoly::from_coeffs(vec![BigInt::one(); n])
}

/// `[n]! = [n][n-1]...[1]`; `[0]! = 1`.
pub fn q_factorial(n: usize) -> IntPoly {
    (1..=n).map(q_int).product()
}

/// Gaussian binomial coefficient, zero unless `0 <= k <= n`.
///
/// Built as `prod_{i<k} (1 - q^(n-i)) / prod_{i<=k} (1 - q^i)`, interleaving
/// one numerator factor with one denominator factor so that every partial
/// quotient is itself a Gaussian binomial.
pub fn q_binomial(n: i64, k: i64) -> Result<IntPoly, Error> {
    if n < 0 || k < 0 || k > n {
        return Ok(IntPoly::zero());
    }
    let (n, k) = (n as usize, k as usize);
    let mut acc = IntPoly::one();
    for i in 0..k {
        acc = acc.mul_one_minus_q_pow(n - i);
        let denominator = IntPoly::one().mul_one_minus_q_pow(i + 1);
        acc = acc.exact_div(&denominator).map_err(|e| {
            Error::Internal(format!("q_binomial({n}, {k}): inexact division at step {i}: {e}"))
        })?;
    }
    Ok(acc)
}

/// Gaussian binomial by dynamic programming on
/// `[n, k] = [n-1, k-1] + q^k [n-1, k]`.
pub fn q_binomial_oracle(n: i64, k: i64) -> IntPoly {
    if n < 0 || k < 0 || k > n {
        return IntPoly::zero();
    }
    let (n, k) = (n as usize, k as usize);
    // row[j] holds [r, j] for the current row r, for j <= k.
    let mut row = vec![IntPoly::zero(); k + 1];
    row[0] = IntPoly::one();
    for r in 1..=n {
        for j in (1..=k.min(r)).rev() {
            row[j] = &row[j - 1] + &row[j].shift(j);
        }
    }
    row.swap_remove(k)
}

/// Exact value of `(x; q)_k = prod_{i<k} (1 - x q^i)`.
pub fn q_pochhammer_eval(x: &BigRat, q: &BigRat, k: usize) -> BigRat {
    let one = BigRat::one();
    let mut term = x.clone();
    let mut acc = BigRat::one();
    for _ in 0..k {
        acc = &acc * &(&one - &term);
        term = &term * q;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn q_int_examples() {
        assert_eq!(q_int(1), p(&[1]));
        assert_eq!(q_int(3), p(&[1, 1, 1]));
        assert!(q_int(0).is_zero());
    }

    #[test]
    fn q_factorial_examples() {
        assert_eq!(q_factorial(0), IntPoly::one());
        assert_eq!(q_factorial(2), p(&[1, 1]));
        assert_eq!(q_factorial(3), p(&[1, 2, 2, 1]));
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(4, 2).unwrap(), p(&[1, 1, 2, 1, 1]));
        for n in 0..6 {
            assert_eq!(q_binomial(n, 0).unwrap(), IntPoly::one());
        }
        assert!(q_binomial(2, 5).unwrap().is_zero());
        assert!(q_binomial(-1, 0).unwrap().is_zero());
        assert!(q_binomial(3, -1).unwrap().is_zero());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(q_binomial_oracle(4, 2), p(&[1, 1, 2, 1, 1]));
        for n in 0..8 {
            assert_eq!(q_binomial_oracle(n, n), IntPoly::one());
        }
        assert_eq!(q_binomial_oracle(3, 1), q_int(3));
        assert!(q_binomial_oracle(2, 3).is_zero());
    }

    #[test]
    fn pochhammer_examples() {
        let x = BigRat::new_i64(7, 3);
        let q = BigRat::new_i64(-2, 5);
        assert_eq!(q_pochhammer_eval(&x, &q, 0), BigRat::one());
        for k in 1..5 {
            assert!(q_pochhammer_eval(&BigRat::one(), &q, k).is_zero());
        }
        let two = BigRat::from_i64(2);
        let three = BigRat::from_i64(3);
        assert_eq!(q_pochhammer_eval(&two, &three, 2), BigRat::from_i64(5));
    }
}
