//! The weighted q-binomial power sums, the normalized quotient `S_n`, and
//! checkers for the divisibility theorems and the summation identities used
//! to prove them.
//!
//! Every checker returns a [`CongruenceReport`]. Invalid parameters are an
//! `Err`; a mathematical mismatch is a report with status `fail`.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::bigint_poly::{BigRat, IntPoly};
use crate::congruence::{
    divides, normalize_exponent_mod_p, rem_mod, residue_equal_mod, CongruenceReport, Params,
    Witness,
};
use crate::int_arith::{binomial, factorial, is_prime};
use crate::q_objects::{q_factorial, q_int, q_pochhammer_eval, LaurentPoly, QBinomialCache};
use crate::Error;

pub mod claims {
    pub const THM1: &str = "thm1";
    pub const THM1_Q1: &str = "thm1_q1";
    pub const THM2: &str = "thm2";
    pub const RECURRENCE: &str = "recurrence";
    pub const SUM_LEMMA: &str = "sum_lemma";
    pub const CHU_VANDERMONDE: &str = "chu_vandermonde";
    pub const P_MINUS_ONE: &str = "p_minus_one";
    pub const NEW3: &str = "new3";
    pub const FINAL_IDENTITY: &str = "final_identity";
    pub const PFAFF_SAALSCHUTZ: &str = "pfaff_saalschutz";
}

pub const VANISHING_SUM: &str = "vanishing-sum";

/// `n >= 1` and a nonempty list `a_1, ..., a_m` of nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThmParams {
    pub n: usize,
    pub a_list: Vec<usize>,
}

impl ThmParams {
    pub fn new(n: usize, a_list: Vec<usize>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        if a_list.is_empty() {
            return Err(Error::InvalidParams("a_list must be nonempty".into()));
        }
        Ok(ThmParams { n, a_list })
    }

    pub fn to_params(&self) -> Params {
        Params::new().with("n", self.n as i64).with_list("a", &self.a_list)
    }
}

/// Prime `p` with `p > max(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Thm2Params {
    pub p: usize,
    pub a: usize,
    pub b: usize,
}

impl Thm2Params {
    pub fn new(p: usize, a: usize, b: usize) -> Result<Self, Error> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        if p <= a.max(b) {
            return Err(Error::InvalidParams(format!("need p > max(a, b), got p={p} a={a} b={b}")));
        }
        Ok(Thm2Params { p, a, b })
    }

    pub fn to_params(&self) -> Params {
        Params::new()
            .with("p", self.p as i64)
            .with("a", self.a as i64)
            .with("b", self.b as i64)
    }
}

fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}

fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// Computes the polynomial quantities, sharing one q-binomial cache.
#[derive(Debug, Default)]
pub struct Verifier {
    cache: QBinomialCache,
}

impl Verifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache(cache: QBinomialCache) -> Self {
        Verifier { cache }
    }

    pub fn uncached() -> Self {
        Self::with_cache(QBinomialCache::disabled())
    }

    fn qbin(&self, n: i64, k: i64) -> Result<Arc<IntPoly>, Error> {
        self.cache.get(n, k)
    }

    /// `[a_1 + ... + a_m + 1]! / ([a_1]! ... [a_m]!)`.
    pub fn multinom_factor(&self, a_list: &[usize]) -> Result<IntPoly, Error> {
        let total: usize = a_list.iter().sum();
        let mut acc = q_factorial(total + 1);
        for &a in a_list {
            acc = acc.exact_div(&q_factorial(a)).map_err(|e| {
                Error::Internal(format!("multinomial factor {a_list:?} not integral: {e}"))
            })?;
        }
        Ok(acc)
    }

    /// `sum_{h<n} q^h prod_i [h, a_i]`.
    pub fn weighted_sum(&self, n: usize, a_list: &[usize]) -> Result<IntPoly, Error> {
        let start = a_list.iter().copied().max().unwrap_or(0);
        let mut total = IntPoly::zero();
        for h in start..n {
            let mut term = IntPoly::one();
            for &a in a_list {
                term = &term * &*self.qbin(h as i64, a as i64)?;
            }
            total = &total + &term.shift(h);
        }
        Ok(total)
    }

    /// `multinom_factor(a_list) * weighted_sum(n, a_list)`.
    pub fn thm1_product(&self, n: usize, a_list: &[usize]) -> Result<IntPoly, Error> {
        Ok(&self.multinom_factor(a_list)? * &self.weighted_sum(n, a_list)?)
    }

    /// `[n]` divides `multinom_factor(a_list) * weighted_sum(n, a_list)`.
    pub fn check_thm1(&self, n: usize, a_list: &[usize]) -> Result<CongruenceReport, Error> {
        let params = ThmParams::new(n, a_list.to_vec())?;
        let product = self.thm1_product(n, a_list)?;
        Ok(Self::thm1_report(&params, &product))
    }

    /// The polynomial check together with its `q = 1` shadow. The integer
    /// report fails if the pure-integer value disagrees with the polynomial
    /// product evaluated at `q = 1`, even when both are divisible by `n`.
    pub fn check_thm1_with_q1(
        &self,
        n: usize,
        a_list: &[usize],
    ) -> Result<(CongruenceReport, CongruenceReport), Error> {
        let params = ThmParams::new(n, a_list.to_vec())?;
        let product = self.thm1_product(n, a_list)?;
        let poly_report = Self::thm1_report(&params, &product);
        let mut int_report = q1_check(n, a_list)?;
        let at_one = product.eval_at_one();
        let integer = q1_value(n, a_list);
        if at_one != integer {
            let diff = &at_one - &integer;
            int_report = CongruenceReport::fail(
                claims::THM1_Q1,
                params.to_params(),
                Witness::new(at_one, integer, diff),
            )
            .with_note("q=1 evaluation disagrees with integer computation");
        }
        Ok((poly_report, int_report))
    }

    fn thm1_report(params: &ThmParams, product: &IntPoly) -> CongruenceReport {
        let n = params.n;
        let vanishing = product.is_zero();
        let modulus = q_int(n);
        let ok = divides(&modulus, product).expect("[n] is nonzero");
        let report = CongruenceReport::from_outcome(claims::THM1, params.to_params(), ok, || {
            let residue = rem_mod(product, &modulus).expect("[n] has unit leading coefficient");
            Witness::new(product, "0", residue)
        });
        if vanishing {
            report.with_note(VANISHING_SUM)
        } else {
            report
        }
    }

    /// `S_n(a_1, ..., a_m)` as the exact quotient of the theorem's product by `[n]`.
    pub fn s_poly_direct(&self, n: usize, a_list: &[usize]) -> Result<IntPoly, Error> {
        ThmParams::new(n, a_list.to_vec())?;
        self.thm1_product(n, a_list)?
            .exact_div(&q_int(n))
            .map_err(|e| Error::Internal(format!("S_{n}{a_list:?} is not a polynomial: {e}")))
    }

    /// `S_n(a_1, ..., a_m)` by peeling off the last two entries:
    ///
    /// `S(.., a', a) = sum_k [A+1, a-k] [a'+k, a] [a'+k, a'] q^(k(a'-a+k)) S(.., a'+k)`
    ///
    /// with `A = a_1 + ... + a_m` and base case `S_n(a) = q^a [n-1, a]`.
    pub fn s_poly_recurrence(&self, n: usize, a_list: &[usize]) -> Result<IntPoly, Error> {
        ThmParams::new(n, a_list.to_vec())?;
        let mut memo = HashMap::new();
        self.s_recurse(n, a_list, &mut memo)
    }

    fn s_recurse(
        &self,
        n: usize,
        a_list: &[usize],
        memo: &mut HashMap<Vec<usize>, IntPoly>,
    ) -> Result<IntPoly, Error> {
        if let [a] = a_list {
            return Ok(self.qbin(n as i64 - 1, *a as i64)?.shift(*a));
        }
        // keyed on the exact ordered tuple
        if let Some(hit) = memo.get(a_list) {
            return Ok(hit.clone());
        }
        let m = a_list.len();
        let (prev, last) = (a_list[m - 2], a_list[m - 1]);
        let total: usize = a_list.iter().sum();
        let mut reduced = a_list[..m - 1].to_vec();
        let mut acc = IntPoly::zero();
        for k in 0..=last {
            let lifted = prev + k;
            let inner = self.qbin(lifted as i64, last as i64)?;
            if inner.is_zero() {
                continue;
            }
            // lifted >= last here, so the exponent is nonnegative
            let exponent = k * (lifted - last);
            let outer = self.qbin(total as i64 + 1, (last - k) as i64)?;
            let third = self.qbin(lifted as i64, prev as i64)?;
            reduced[m - 2] = lifted;
            let sub = self.s_recurse(n, &reduced, memo)?;
            let term = &(&(&*outer * &*inner) * &*third) * &sub;
            acc = &acc + &term.shift(exponent);
        }
        memo.insert(a_list.to_vec(), acc.clone());
        Ok(acc)
    }

    /// Both routes to `S_n` agree bit for bit.
    pub fn check_recurrence(&self, n: usize, a_list: &[usize]) -> Result<CongruenceReport, Error> {
        let params = ThmParams::new(n, a_list.to_vec())?.to_params();
        let direct = self.s_poly_direct(n, a_list)?;
        let recurred = self.s_poly_recurrence(n, a_list)?;
        let report = CongruenceReport::from_outcome(
            claims::RECURRENCE,
            params,
            direct == recurred,
            || Witness::new(&direct, &recurred, &direct - &recurred),
        );
        // Exploratory only: nonnegativity of S_n is not claimed for m >= 2.
        let negative = direct.coeffs().iter().filter(|c| c.is_negative()).count();
        Ok(report.with_note(if negative == 0 {
            "coeffs>=0".to_string()
        } else {
            format!("negative-coeffs={negative}")
        }))
    }

    /// `sum_{h<n} q^h [h, a] = q^a [n, a+1]`.
    pub fn check_sum_lemma(&self, n: usize, a: usize) -> Result<CongruenceReport, Error> {
        if n == 0 {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        let lhs = self.weighted_sum(n, &[a])?;
        let rhs = self.qbin(n as i64, a as i64 + 1)?.shift(a);
        let params = Params::new().with("n", n as i64).with("a", a as i64);
        Ok(CongruenceReport::from_outcome(claims::SUM_LEMMA, params, lhs == rhs, || {
            Witness::new(&lhs, &rhs, &lhs - &rhs)
        }))
    }

    /// `sum_{k<=n} [a, k] [b, n-k] q^(k(b-n+k)) = [a+b, n]` in Laurent form.
    pub fn check_chu_vandermonde(&self, a: usize, b: usize, n: usize) -> Result<CongruenceReport, Error> {
        let (ai, bi, ni) = (a as i64, b as i64, n as i64);
        let mut lhs = LaurentPoly::zero();
        for k in 0..=ni {
            let coeff = &*self.qbin(ai, k)? * &*self.qbin(bi, ni - k)?;
            let term = LaurentPoly::new(k * (bi - ni + k), coeff);
            lhs = &lhs + &term;
        }
        let rhs = LaurentPoly::from_poly((*self.qbin(ai + bi, ni)?).clone());
        let params = Params::new().with("a", ai).with("b", bi).with("n", ni);
        Ok(CongruenceReport::from_outcome(claims::CHU_VANDERMONDE, params, lhs == rhs, || {
            Witness::new(&lhs, &rhs, &lhs - &rhs)
        }))
    }

    /// `multinom_factor([a, b]) * weighted_sum(p, [a, b])`.
    pub fn thm2_lhs(&self, p: usize, a: usize, b: usize) -> Result<IntPoly, Error> {
        Ok(&self.multinom_factor(&[a, b])? * &self.weighted_sum(p, &[a, b])?)
    }

    /// The m = 2 sum is `(-1)^(a-b) q^e [p]` modulo `[p]^2` with
    /// `e = ab - C(a,2) - C(b,2)`.
    ///
    /// The exponent is compared twice: reduced into `[0, p)`, and with a
    /// negative `e` cleared by multiplying the left side by `q^(-e)`. The two
    /// verdicts must agree.
    pub fn check_thm2(&self, p: usize, a: usize, b: usize) -> Result<CongruenceReport, Error> {
        let params = Thm2Params::new(p, a, b)?;
        let lhs = self.thm2_lhs(p, a, b)?;
        let (ai, bi) = (a as i64, b as i64);
        let e = ai * bi - choose2(ai) - choose2(bi);
        let s = BigInt::from(sign((a + b) % 2 == 1));
        let q_p = q_int(p);
        let modulus = q_p.pow(2);
        let signed_qp = q_p.scale(&s);

        let normalized = normalize_exponent_mod_p(e, p as u64) as usize;
        let rhs = signed_qp.shift(normalized);
        let ok_normalized = residue_equal_mod(&lhs, &rhs, &modulus)?;

        let ok_cleared = if e >= 0 {
            residue_equal_mod(&lhs, &signed_qp.shift(e as usize), &modulus)?
        } else {
            residue_equal_mod(&lhs.shift(e.unsigned_abs() as usize), &signed_qp, &modulus)?
        };
        if ok_normalized != ok_cleared {
            return Err(Error::Internal(format!(
                "thm2 p={p} a={a} b={b}: normalized ({ok_normalized}) and cleared ({ok_cleared}) checks disagree"
            )));
        }
        let report = CongruenceReport::from_outcome(claims::THM2, params.to_params(), ok_normalized, || {
            Witness::new(&lhs, &rhs, rem_mod(&(&lhs - &rhs), &modulus).expect("unit leading"))
        });
        Ok(report.with_note(format!("e={e} -> {normalized}")))
    }

    /// `q^C(j+1,2) [p-1, j] ≡ (-1)^j (mod [p])` for `0 <= j < p`.
    pub fn check_p_minus_one_lemma(&self, p: usize, j: usize) -> Result<CongruenceReport, Error> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        if j >= p {
            return Err(Error::InvalidParams(format!("need j < p, got p={p} j={j}")));
        }
        let lhs = self.qbin(p as i64 - 1, j as i64)?.shift(j * (j + 1) / 2);
        let rhs = IntPoly::constant(sign(j % 2 == 1));
        let modulus = q_int(p);
        let ok = residue_equal_mod(&lhs, &rhs, &modulus)?;
        let params = Params::new().with("p", p as i64).with("j", j as i64);
        Ok(CongruenceReport::from_outcome(claims::P_MINUS_ONE, params, ok, || {
            Witness::new(&lhs, &rhs, rem_mod(&(&lhs - &rhs), &modulus).expect("unit leading"))
        }))
    }

    /// `sum_{k<=b} [a+b+1, b-k] [a+k, a] [a+k, b] (-1)^k q^(k(a-b+k)+a+k-C(a+k+1,2))
    ///  = (-1)^b q^(ab-C(a,2)-C(b,2))`.
    pub fn check_identity_new3(&self, a: usize, b: usize) -> Result<CongruenceReport, Error> {
        let (ai, bi) = (a as i64, b as i64);
        let mut lhs = LaurentPoly::zero();
        for k in 0..=bi {
            let coeff = &(&*self.qbin(ai + bi + 1, bi - k)? * &*self.qbin(ai + k, ai)?)
                * &*self.qbin(ai + k, bi)?;
            let exponent = k * (ai - bi + k) + ai + k - choose2(ai + k + 1);
            let term = LaurentPoly::new(exponent, coeff.scale(&BigInt::from(sign(k % 2 == 1))));
            lhs = &lhs + &term;
        }
        let rhs = LaurentPoly::monomial(sign(b % 2 == 1), ai * bi - choose2(ai) - choose2(bi));
        let params = Params::new().with("a", ai).with("b", bi);
        Ok(CongruenceReport::from_outcome(claims::NEW3, params, lhs == rhs, || {
            Witness::new(&lhs, &rhs, &lhs - &rhs)
        }))
    }

    /// `sum_{a<=k<=a+b} [k, a] [k, b] [a+b+1, k+1] (-1)^k
    ///  q^(C(k+1,2)+C(a+1,2)+C(b+1,2)-(k+1)(a+b)) = (-1)^(a-b)`.
    pub fn check_final_identity(&self, a: usize, b: usize) -> Result<CongruenceReport, Error> {
        let (ai, bi) = (a as i64, b as i64);
        let mut lhs = LaurentPoly::zero();
        for k in ai..=ai + bi {
            let coeff = &(&*self.qbin(k, ai)? * &*self.qbin(k, bi)?) * &*self.qbin(ai + bi + 1, k + 1)?;
            let exponent =
                choose2(k + 1) + choose2(ai + 1) + choose2(bi + 1) - (k + 1) * (ai + bi);
            let term = LaurentPoly::new(exponent, coeff.scale(&BigInt::from(sign(k % 2 == 1))));
            lhs = &lhs + &term;
        }
        let rhs = LaurentPoly::monomial(sign((a + b) % 2 == 1), 0);
        let params = Params::new().with("a", ai).with("b", bi);
        Ok(CongruenceReport::from_outcome(claims::FINAL_IDENTITY, params, lhs == rhs, || {
            Witness::new(&lhs, &rhs, &lhs - &rhs)
        }))
    }
}

/// `((sum a_i + 1)! / prod a_i!) * sum_{h<n} prod_i C(h, a_i)`, in integers only.
pub fn q1_value(n: usize, a_list: &[usize]) -> BigInt {
    let total: u64 = a_list.iter().map(|&a| a as u64).sum();
    let denominator: BigInt = a_list.iter().map(|&a| factorial(a as u64)).product();
    let coefficient = factorial(total + 1) / denominator;
    let sum: BigInt = (0..n as u64)
        .map(|h| a_list.iter().map(|&a| binomial(h, a as u64)).product::<BigInt>())
        .sum();
    coefficient * sum
}

/// The `q = 1` shadow of the first theorem: `n` divides [`q1_value`].
pub fn q1_check(n: usize, a_list: &[usize]) -> Result<CongruenceReport, Error> {
    let params = ThmParams::new(n, a_list.to_vec())?.to_params();
    let value = q1_value(n, a_list);
    let residue = value.mod_floor(&BigInt::from(n));
    let report = CongruenceReport::from_outcome(claims::THM1_Q1, params, residue.is_zero(), || {
        Witness::new(&value, "0", &residue)
    });
    Ok(if value.is_zero() { report.with_note(VANISHING_SUM) } else { report })
}

/// One rational specialization of the q-Pfaff-Saalschütz sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PfaffPoint {
    pub x: BigRat,
    pub y: BigRat,
    pub z: BigRat,
    pub q: BigRat,
    pub n: usize,
}

impl PfaffPoint {
    pub fn new(x: BigRat, y: BigRat, z: BigRat, q: BigRat, n: usize) -> Self {
        PfaffPoint { x, y, z, q, n }
    }

    fn to_params(&self) -> Result<Params, Error> {
        let int = |v: &BigInt| {
            i64::try_from(v).map_err(|_| Error::InvalidParams(format!("{v} does not fit a report parameter")))
        };
        let mut params = Params::new();
        for (name, r) in [("x", &self.x), ("y", &self.y), ("z", &self.z), ("q", &self.q)] {
            params = params
                .with(format!("{name}_num"), int(r.numer())?)
                .with(format!("{name}_den"), int(r.denom())?);
        }
        Ok(params.with("n", self.n as i64))
    }
}

/// Left and right sides of
/// `sum_k (x)_k (y)_k (q^-n)_k q^k / ((q)_k (z)_k (xy q^(1-n)/z)_k)
///  = (z/x)_n (z/y)_n / ((z)_n (z/xy)_n)`,
/// or [`Error::SingularSpecialization`] when a denominator vanishes.
pub fn pfaff_saalschutz_sides(pt: &PfaffPoint) -> Result<(BigRat, BigRat), Error> {
    let singular = |what: &str| Error::SingularSpecialization(what.to_string());
    let PfaffPoint { x, y, z, q, n } = pt;
    let n = *n;
    if q.is_zero() || q.is_one() || (-q).is_one() {
        return Err(singular("q in {0, 1, -1}"));
    }
    if x.is_zero() || y.is_zero() || z.is_zero() {
        return Err(singular("x, y or z is zero"));
    }
    let xy = x * y;
    let q_neg_n = q.powi(-(n as i64)).ok_or_else(|| singular("q^-n"))?;
    let balance = (&xy * &q.powi(1 - n as i64).ok_or_else(|| singular("q^(1-n)"))?)
        .checked_div(z)
        .ok_or_else(|| singular("z"))?;

    let mut lhs = BigRat::zero();
    let mut q_pow = BigRat::one();
    for k in 0..=n {
        let num = &(&(&q_pochhammer_eval(x, q, k) * &q_pochhammer_eval(y, q, k))
            * &q_pochhammer_eval(&q_neg_n, q, k))
            * &q_pow;
        let den = &(&q_pochhammer_eval(q, q, k) * &q_pochhammer_eval(z, q, k))
            * &q_pochhammer_eval(&balance, q, k);
        let term = num.checked_div(&den).ok_or_else(|| singular("left-side denominator"))?;
        lhs = &lhs + &term;
        q_pow = &q_pow * q;
    }

    let ratio = |a: &BigRat, b: &BigRat| a.checked_div(b).ok_or_else(|| singular("ratio"));
    let rhs_num = &q_pochhammer_eval(&ratio(z, x)?, q, n) * &q_pochhammer_eval(&ratio(z, y)?, q, n);
    let rhs_den = &q_pochhammer_eval(z, q, n) * &q_pochhammer_eval(&ratio(z, &xy)?, q, n);
    let rhs = rhs_num
        .checked_div(&rhs_den)
        .ok_or_else(|| singular("right-side denominator"))?;
    Ok((lhs, rhs))
}

/// Exact check of one specialization; singular points are reported as
/// skipped, never as passing.
pub fn check_pfaff_saalschutz(pt: &PfaffPoint) -> Result<CongruenceReport, Error> {
    let params = pt.to_params()?;
    match pfaff_saalschutz_sides(pt) {
        Ok((lhs, rhs)) => Ok(CongruenceReport::from_outcome(
            claims::PFAFF_SAALSCHUTZ,
            params,
            lhs == rhs,
            || Witness::new(&lhs, &rhs, &lhs - &rhs),
        )),
        Err(Error::SingularSpecialization(why)) => {
            Ok(CongruenceReport::skipped(claims::PFAFF_SAALSCHUTZ, params, format!("singular: {why}")))
        }
        Err(e) => Err(e),
    }
}
