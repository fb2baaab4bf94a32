//! Randomized structural properties of the coefficient ring, the shape
//! combinatorics, and the normalization rules.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use qschur::algebras::{sym_normalize_word, wedge_normalize_word};
use qschur::arith::{cyclotomic_poly, poly_gcd, LaurentPoly};
use qschur::braiding::ParamMatrix;
use qschur::shapes::{Letter, Partition};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-9i64..=9, -6i64..=6), 0..4)
        .prop_map(LaurentPoly::from_terms)
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..6, 0..5).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted parts form a partition")
    })
}

fn distinct_word(n: Letter) -> impl Strategy<Value = Vec<Letter>> {
    Just((1..=n).collect::<Vec<Letter>>())
        .prop_shuffle()
        .prop_flat_map(|w| (0..=w.len()).prop_map(move |k| w[..k].to_vec()))
}

fn inversions(word: &[Letter]) -> u32 {
    let mut count = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                count += 1;
            }
        }
    }
    count
}

proptest! {
    #[test]
    fn addition_and_multiplication_are_ring_operations(
        a in laurent(), b in laurent(), c in laurent()
    ) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in laurent(), b in laurent()) {
        for v in [
            BigRational::new(BigInt::from(2), BigInt::from(3)),
            BigRational::from_integer(BigInt::from(-1)),
        ] {
            prop_assert_eq!((&a + &b).evaluate(&v), a.evaluate(&v) + b.evaluate(&v));
            prop_assert_eq!((&a * &b).evaluate(&v), a.evaluate(&v) * b.evaluate(&v));
        }
    }

    #[test]
    fn exact_division_inverts_multiplication(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        let quotient = (&a * &b).exact_div(&b);
        prop_assert_eq!(quotient, Some(a));
    }

    #[test]
    fn gcd_divides_both_arguments(a in laurent(), b in laurent()) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = poly_gcd(&a, &b);
        prop_assert!(!g.is_zero());
        prop_assert!(a.is_zero() || a.exact_div(&g).is_some());
        prop_assert!(b.is_zero() || b.exact_div(&g).is_some());
    }

    #[test]
    fn conjugation_is_an_involution(p in partition()) {
        prop_assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn conjugate_preserves_size(p in partition()) {
        prop_assert_eq!(p.conjugate().size(), p.size());
    }

    #[test]
    fn lex_order_is_antisymmetric(a in partition(), b in partition()) {
        prop_assert_eq!(a.lex_cmp(&b), b.lex_cmp(&a).reverse());
    }

    #[test]
    fn wedge_normalization_sorts_with_sign_q(word in distinct_word(5)) {
        let p = ParamMatrix::ones(5);
        let (normal, coeff) =
            wedge_normalize_word(&p, &word).expect("distinct letters normalize");
        let mut sorted = word.clone();
        sorted.sort_unstable();
        prop_assert_eq!(&normal, &sorted);
        let inv = inversions(&word);
        let sign = if inv % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(coeff, LaurentPoly::from_terms([(sign, inv as i64)]));
    }

    #[test]
    fn wedge_normalization_rejects_repeats(
        word in prop::collection::vec(1u8..4, 2..6)
    ) {
        let mut seen = word.clone();
        seen.sort_unstable();
        seen.dedup();
        prop_assume!(seen.len() < word.len());
        prop_assert!(wedge_normalize_word(&ParamMatrix::ones(4), &word).is_none());
    }

    #[test]
    fn sym_normalization_sorts_with_inverse_q(
        word in prop::collection::vec(1u8..=5, 0..6)
    ) {
        let p = ParamMatrix::ones(5);
        let (normal, coeff) = sym_normalize_word(&p, &word);
        let mut sorted = word.clone();
        sorted.sort_unstable();
        prop_assert_eq!(&normal, &sorted);
        let inv = inversions(&word);
        prop_assert_eq!(coeff, LaurentPoly::from_terms([(1, -(inv as i64))]));
    }
}

#[test]
fn cyclotomic_polynomials_factor_q_power_minus_one() {
    for l in 1u32..=12 {
        let mut product = LaurentPoly::one();
        for d in 1..=l {
            if l % d == 0 {
                product = &product * &cyclotomic_poly(d).unwrap();
            }
        }
        let target = &LaurentPoly::q_power(l as i64) - &LaurentPoly::one();
        assert_eq!(product, target, "divisor product fails at l={l}");
    }
}
