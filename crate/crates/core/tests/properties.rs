use num_bigint::{BigInt, Sign};
use proptest::prelude::*;

use qcong::bigint_poly::{mul_schoolbook, mul_with_threshold, BigRat, IntPoly};
use qcong::congruence::{divides, normalize_exponent_mod_p, rem_mod, residue_equal_mod};
use qcong::int_arith::binomial;
use qcong::q_objects::{q_binomial, q_binomial_oracle, q_factorial, q_int};

fn coeff() -> impl Strategy<Value = BigInt> {
    (any::<bool>(), prop::collection::vec(any::<u8>(), 0..=32)).prop_map(|(neg, bytes)| {
        let sign = if neg { Sign::Minus } else { Sign::Plus };
        BigInt::from_bytes_be(sign, &bytes)
    })
}

fn poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(coeff(), 0..=max_len).prop_map(IntPoly::from_coeffs)
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

/// Monic or anti-monic divisor.
fn unit_leading(max_len: usize) -> impl Strategy<Value = IntPoly> {
    (prop::collection::vec(coeff(), 0..max_len), any::<bool>()).prop_map(|(mut c, neg)| {
        c.push(BigInt::from(if neg { -1 } else { 1 }));
        IntPoly::from_coeffs(c)
    })
}

fn rational() -> impl Strategy<Value = BigRat> {
    (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| BigRat::new_i64(n, d))
}

fn canonical(p: &IntPoly) -> bool {
    p.coeffs().last().is_none_or(|c| *c != BigInt::from(0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_laws(a in poly(201), b in poly(201), c in poly(201)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn karatsuba_matches_schoolbook(a in poly(201), b in poly(201)) {
        let reference = mul_schoolbook(&a, &b);
        for t in [2, 7, 32, 64] {
            prop_assert_eq!(mul_with_threshold(&a, &b, t), reference.clone());
        }
    }

    #[test]
    fn exact_division_round_trip(a in poly(120), b in nonzero_poly(40)) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn divrem_contract(a in poly(150), b in unit_leading(30)) {
        let (quot, rem) = a.divrem_unit_leading(&b).unwrap();
        prop_assert_eq!(&(&quot * &b) + &rem, a.clone());
        prop_assert!(rem.degree().is_none_or(|d| Some(d) < b.degree()));
        prop_assert!(canonical(&quot) && canonical(&rem));
        prop_assert!(residue_equal_mod(&a, &rem_mod(&a, &b).unwrap(), &b).unwrap());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(60), b in poly(60), x in rational()) {
        prop_assert_eq!((&a * &b).eval(&x), &a.eval(&x) * &b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), &a.eval(&x) + &b.eval(&x));
        prop_assert_eq!(a.eval(&BigRat::one()), BigRat::from_int(a.eval_at_one()));
    }

    #[test]
    fn results_stay_canonical(a in poly(80), b in poly(80), k in 0usize..20) {
        for p in [&a + &b, &a - &b, &a * &b, a.shift(k), -&a, &a - &a] {
            prop_assert!(canonical(&p));
        }
    }
}

#[test]
fn q_binomial_product_matches_pascal() {
    for n in 0..=40i64 {
        for k in 0..=n {
            assert_eq!(q_binomial(n, k).unwrap(), q_binomial_oracle(n, k), "[{n}, {k}]");
        }
    }
}

#[test]
fn q_binomial_shape() {
    for n in 0..=40i64 {
        for k in 0..=n {
            let b = q_binomial(n, k).unwrap();
            assert!(b.is_palindromic(), "[{n}, {k}] not palindromic");
            assert_eq!(b.degree(), Some((k * (n - k)) as usize));
            assert!(b.coeffs().iter().all(|c| c.sign() != Sign::Minus));
            assert_eq!(b.eval_at_one(), binomial(n as u64, k as u64));
            assert_eq!(b, q_binomial(n, n - k).unwrap());
        }
    }
}

#[test]
fn q_factorial_shape() {
    let mut fact = BigInt::from(1);
    for n in 0..=30usize {
        if n > 0 {
            fact *= n;
        }
        let f = q_factorial(n);
        assert_eq!(f.degree(), Some(n * n.saturating_sub(1) / 2));
        assert_eq!(f.eval_at_one(), fact);
    }
}

#[test]
fn q_integer_divisibility() {
    for n in 1..=60 {
        for k in 1..=60 / n {
            assert!(divides(&q_int(n), &q_int(k * n)).unwrap(), "[{n}] | [{}]", k * n);
        }
    }
}

#[test]
fn exponent_normalization_is_licensed() {
    for p in [2usize, 3, 5, 7, 11, 13] {
        let qp = q_int(p);
        let qp_sq = qp.pow(2);
        // (q^p - 1)[p] = (q - 1)[p]^2
        let lhs = &(&IntPoly::monomial(1, p) - &IntPoly::one()) * &qp;
        let rhs = &IntPoly::from_i64s(&[-1, 1]) * &qp_sq;
        assert_eq!(lhs, rhs);

        for e in -20i64..=20 {
            let normalized = qp.shift(normalize_exponent_mod_p(e, p as u64) as usize);
            for t in 0..4i64 {
                let shifted = e + p as i64 * t;
                if shifted < 0 {
                    continue;
                }
                let other = qp.shift(shifted as usize);
                assert!(divides(&qp_sq, &(&normalized - &other)).unwrap(), "p={p} e={e} t={t}");
            }
        }
    }
}
