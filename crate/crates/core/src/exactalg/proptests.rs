use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use super::*;

fn laurent() -> impl Strategy<Value = HalfPowerLaurent> {
    prop::collection::vec((-4i64..7, -3i64..4, 1i64..4), 0..5).prop_map(|ts| {
        HalfPowerLaurent::from_terms(ts.into_iter().map(|(e, n, d)| (e, rat(n, d))))
    })
}

fn ratfunc() -> impl Strategy<Value = RationalFunctionQ> {
    (laurent(), laurent()).prop_map(|(n, d)| {
        let d = if d.is_zero() { HalfPowerLaurent::one() } else { d };
        RationalFunctionQ::new(&n, &d).unwrap()
    })
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn ring_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn canonical_form_is_idempotent(a in ratfunc()) {
        let again = RationalFunctionQ::new(&a.numerator(), &a.denominator()).unwrap();
        prop_assert_eq!(&again, &a);
        if !a.is_zero() {
            let den = a.denominator();
            prop_assert_eq!(den.min_exp(), Some(0));
            prop_assert!(den.coeff(den.max_exp().unwrap()).is_one());
        }
    }

    #[test]
    fn inverse_and_evaluation(a in ratfunc(), qn in 2i64..9) {
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
        let q = BigRational::from_integer(qn.into());
        let s_sq = BigRational::from_integer((qn * qn).into());
        // evaluating at q = n^2 through s = n matches direct evaluation in s
        if let (Ok(x), Ok(y)) = (a.eval_at_q(&s_sq), a.eval_at_s(&q)) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn reflection_is_an_involution(a in ratfunc()) {
        prop_assert_eq!(a.reflect().reflect(), a.clone());
        prop_assert_eq!(a.substitute_power(-1), a.reflect());
    }
}

#[test]
fn pochhammer_recurrence_up_to_30() {
    for x in [
        PochBase::inv_q_squared().as_rational_function(),
        PochBase::minus_inv_q().as_rational_function(),
        RationalFunctionQ::q(),
    ] {
        let mut prev = pochhammer(&x, 0);
        for j in 0..30 {
            let next = pochhammer(&x, j + 1);
            let step = RationalFunctionQ::one().sub(&x.pow(j as i64 + 1).unwrap());
            assert_eq!(next, prev.mul(&step), "j = {j}");
            prev = next;
        }
    }
}

#[test]
fn gaussian_binomial_symmetry_and_q_equals_one() {
    for n in 0..14usize {
        for k in 0..=n {
            let g = gaussian_binomial(n, k).unwrap();
            assert_eq!(g, gaussian_binomial(n, n - k).unwrap());
            assert!(g.is_laurent_polynomial());
            let at_one = g.eval_at_q(&BigRational::one()).unwrap();
            assert_eq!(at_one, BigRational::from_integer(binomial(n as u64, k as u64)));
        }
    }
}
