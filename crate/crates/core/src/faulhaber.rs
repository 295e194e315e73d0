//! Integer congruences for odd power sums, and an evidence sweep for the open
//! conjecture on sums of odd powers of odd binomial coefficients modulo `n^2`.
//!
//! A failing conjecture instance is a counterexample, not a bug, and is
//! reported under its own claim id.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};

use crate::congruence::{CongruenceReport, Params, Witness};
use crate::int_arith::{binomial, factorial};
use crate::Error;

pub mod claims {
    pub const FAULHABER: &str = "faulhaber";
    pub const CONJECTURE: &str = "conjecture";
}

pub const ZERO_SUM: &str = "zero-sum";

/// `n >= 1` and `m >= k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConjectureInstance {
    pub n: u64,
    pub m: u64,
    pub k: u64,
}

impl ConjectureInstance {
    pub fn new(n: u64, m: u64, k: u64) -> Result<Self, Error> {
        if n == 0 || k == 0 || m < k {
            return Err(Error::InvalidParams(format!(
                "need n >= 1 and m >= k >= 1, got n={n} m={m} k={k}"
            )));
        }
        Ok(ConjectureInstance { n, m, k })
    }

    fn to_params(self) -> Params {
        Params::new()
            .with("n", self.n as i64)
            .with("m", self.m as i64)
            .with("k", self.k as i64)
    }
}

/// `sum_{h<n} h^e`, with `0^0 = 1`.
pub fn power_sum(n: u64, e: u32) -> BigInt {
    (0..n).map(|h| Pow::pow(BigInt::from(h), e)).sum()
}

/// `n^2` divides `(2m+2)! * sum_{h<n} h^(2m+1)`.
pub fn check_faulhaber_cong(n: u64, m: u64) -> Result<CongruenceReport, Error> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParams(format!("need n, m >= 1, got n={n} m={m}")));
    }
    let value = factorial(2 * m + 2) * power_sum(n, (2 * m + 1) as u32);
    let residue = value.mod_floor(&BigInt::from(n * n));
    let params = Params::new().with("n", n as i64).with("m", m as i64);
    Ok(CongruenceReport::from_outcome(claims::FAULHABER, params, residue.is_zero(), || {
        Witness::new(&value, "0", &residue)
    }))
}

/// `((2k+1)(2m+1)+1)! / ((2k+1)!)^(2m+1)`, which is always an integer.
pub fn conjecture_coefficient(m: u64, k: u64) -> Result<BigInt, Error> {
    if k == 0 || m < k {
        return Err(Error::InvalidParams(format!("need m >= k >= 1, got m={m} k={k}")));
    }
    let numerator = factorial((2 * k + 1) * (2 * m + 1) + 1);
    let denominator = Pow::pow(factorial(2 * k + 1), (2 * m + 1) as u32);
    let (quot, rem) = numerator.div_rem(&denominator);
    if !rem.is_zero() {
        return Err(Error::Internal(format!("conjecture coefficient m={m} k={k} is not an integer")));
    }
    Ok(quot)
}

/// `sum_{h<n} C(h, 2k+1)^(2m+1)`.
pub fn conjecture_sum(inst: ConjectureInstance) -> BigInt {
    let j = 2 * inst.k + 1;
    let e = (2 * inst.m + 1) as u32;
    (j..inst.n).map(|h| Pow::pow(binomial(h, j), e)).sum()
}

/// Checks one instance of the conjecture. A failure carries the full
/// integer value, the modulus and the nonzero residue.
pub fn check_conjecture(inst: ConjectureInstance) -> Result<CongruenceReport, Error> {
    let inst = ConjectureInstance::new(inst.n, inst.m, inst.k)?;
    let sum = conjecture_sum(inst);
    let value = conjecture_coefficient(inst.m, inst.k)? * &sum;
    let modulus = BigInt::from(inst.n).pow(2u32);
    let residue = value.mod_floor(&modulus);
    let report = CongruenceReport::from_outcome(
        claims::CONJECTURE,
        inst.to_params(),
        residue.is_zero(),
        || Witness::new(&value, format!("0 (mod {modulus})"), &residue),
    );
    Ok(if sum.is_zero() { report.with_note(ZERO_SUM) } else { report })
}

/// True when every report in `reports` for the conjecture passed.
pub fn no_counterexamples<'a>(reports: impl IntoIterator<Item = &'a CongruenceReport>) -> bool {
    reports
        .into_iter()
        .filter(|r| r.claim_id == claims::CONJECTURE)
        .all(|r| r.status != crate::congruence::Status::Fail)
}
