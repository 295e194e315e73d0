//! Plain big-integer helpers: factorials, binomials, primality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(h, j)` by the multiplicative formula; zero when `j > h`.
///
/// Each prefix `prod_{i<t} (h-i) / t!` is itself a binomial coefficient, so
/// every division is exact.
pub fn binomial(h: u64, j: u64) -> BigInt {
    if j > h {
        return BigInt::zero();
    }
    let j = j.min(h - j);
    let mut acc = BigInt::one();
    for i in 0..j {
        acc *= h - i;
        let (quot, rem) = acc.div_rem(&BigInt::from(i + 1));
        debug_assert!(rem.is_zero());
        acc = quot;
    }
    acc
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_matches_pascal_triangle() {
        let mut row = vec![BigInt::one()];
        for h in 0..=64u64 {
            for (j, c) in row.iter().enumerate() {
                assert_eq!(&binomial(h, j as u64), c, "C({h},{j})");
            }
            assert!(binomial(h, h + 1).is_zero());
            let mut next = vec![BigInt::one(); row.len() + 1];
            for j in 1..row.len() {
                next[j] = &row[j - 1] + &row[j];
            }
            row = next;
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3_628_800));
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(!is_prime(9));
        assert!(!is_prime(1));
        assert!(is_prime(1_000_000_007));
    }
}
