use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use pisum::bigreal::{agree_digits, cos_pi, PrecisionContext};
use pisum::exact::{harmonic_sum, int, pochhammer, rat, shifted_harmonic, Rational, RationalFunction, Var};
use pisum::special::gamma_pos_rational;

fn rational() -> impl Strategy<Value = Rational> {
    (-200i64..200, 1i64..60).prop_map(|(n, d)| rat(n, d))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..400, 1i64..60).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quarter_shifts_sum_to_harmonic_combination(k in 0u64..=1000) {
        let left = shifted_harmonic(&rat(-1, 4), k).unwrap() + shifted_harmonic(&rat(-3, 4), k).unwrap();
        let right = harmonic_sum(&Rational::zero(), 4 * k, 1).unwrap() * int(4)
            - harmonic_sum(&Rational::zero(), 2 * k, 1).unwrap() * int(2);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn half_shift_is_harmonic_combination(k in 0u64..=1000) {
        let left = shifted_harmonic(&rat(-1, 2), k).unwrap();
        let right = harmonic_sum(&Rational::zero(), 2 * k, 1).unwrap() * int(2)
            - harmonic_sum(&Rational::zero(), k, 1).unwrap();
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #[test]
    fn pochhammer_splits(x in rational(), m in 0u64..=50, n in 0u64..=50) {
        let shifted = &x + int(m as i64);
        prop_assert_eq!(pochhammer(&x, m + n), pochhammer(&x, m) * pochhammer(&shifted, n));
    }

    #[test]
    fn pochhammer_duplication(k in 0u64..=200) {
        let four_k = Rational::from_integer(BigInt::from(4).pow(k as u32));
        let one = Rational::one();
        prop_assert_eq!(
            pochhammer(&one, 2 * k),
            four_k * pochhammer(&rat(1, 2), k) * pochhammer(&one, k)
        );
    }

    #[test]
    fn rf_derivative_matches_difference_quotient(k in 0i64..40, c in rational()) {
        let f = RationalFunction::parse("(20k^2+(19-12c)k-5c+4)/(16(2k+1))").unwrap();
        let df = f.derivative(Var::C);
        let h = Rational::new(BigInt::one(), BigInt::from(10).pow(20));
        let at = |x: Rational| f.eval(&[(Var::K, int(k)), (Var::C, x)]).unwrap();
        let fd = (at(&c + &h) - at(&c - &h)) / (int(2) * &h);
        let exact = df.eval(&[(Var::K, int(k)), (Var::C, c.clone())]).unwrap();
        prop_assert!((fd - exact).abs() < Rational::new(BigInt::one(), BigInt::from(10).pow(15)));
    }

    #[test]
    fn cos_pi_is_even_and_periodic(q in rational(), shift in -5i64..5) {
        let ctx = PrecisionContext::new(40);
        let base = cos_pi(&q, &ctx);
        prop_assert!(agree_digits(&base, &cos_pi(&-&q, &ctx), 40) >= 38);
        prop_assert!(agree_digits(&base, &cos_pi(&(&q + int(2 * shift)), &ctx), 40) >= 38);
    }

    #[test]
    fn cos_pi_double_angle(q in rational()) {
        let ctx = PrecisionContext::new(40);
        let half = cos_pi(&(&q / int(2)), &ctx);
        let doubled = (&half * &half).mul_pow2(1).add_rational(&int(-1));
        prop_assert!(agree_digits(&cos_pi(&q, &ctx), &doubled, 40) >= 36);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn gamma_recurrence(x in positive_rational()) {
        let ctx = PrecisionContext::new(40);
        let g = gamma_pos_rational(&x, &ctx).unwrap();
        let g1 = gamma_pos_rational(&(&x + int(1)), &ctx).unwrap();
        prop_assert!(agree_digits(&g1, &g.mul_rational(&x), 40) >= 38);
    }
}
