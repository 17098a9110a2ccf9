use bargmann_symbolic::rewrite::{expand, rewrite_to_normal, word_expr, Letter};
use bargmann_symbolic::{
    descent_certificate, normal_order, parse_expr, power_commutator_check, rational, CPolyQ, NormalPolyQ, OperatorExpr, Rational,
    Strategy as Order,
};
use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn leaf() -> impl Strategy<Value = OperatorExpr> {
    prop_oneof![
        Just(OperatorExpr::A),
        Just(OperatorExpr::Ad),
        Just(OperatorExpr::C),
        (0i64..7, 1i64..5).prop_map(|(n, d)| OperatorExpr::Rational(rational(n, d))),
    ]
}

fn expr() -> impl Strategy<Value = OperatorExpr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| x.add(y)),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| x.sub(y)),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| x.mul(y)),
            (inner.clone(), 0u32..4).prop_map(|(x, n)| x.pow(n)),
            (inner.clone(), inner).prop_map(|(x, y)| OperatorExpr::commutator(x, y)),
        ]
    })
}

fn nf(e: &OperatorExpr) -> NormalPolyQ {
    normal_order(e)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn display_reparses_to_the_same_tree(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse_expr(&text).unwrap(), e);
    }

    #[test]
    fn normal_order_is_a_ring_homomorphism(x in expr(), y in expr()) {
        prop_assert_eq!(nf(&x.clone().mul(y.clone())), nf(&x) * nf(&y));
        prop_assert_eq!(nf(&x.clone().add(y.clone())), nf(&x) + nf(&y));
    }

    #[test]
    fn normal_order_is_idempotent(x in expr()) {
        let n = nf(&x);
        prop_assert_eq!(nf(&n.to_expr()), n);
    }

    #[test]
    fn rewriting_agrees_with_the_product_formula(x in expr(), seed in any::<u64>()) {
        let want = nf(&x);
        let (got, _) = rewrite_to_normal::<Rational>(expand(&x), Order::Random(seed));
        prop_assert_eq!(got, want);
    }
}

#[test]
fn confluence_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    for _ in 0..200 {
        let len = rng.gen_range(0..=10);
        let word: Vec<Letter> = (0..len).map(|_| if rng.gen_bool(0.5) { Letter::A } else { Letter::Ad }).collect();
        let e = word_expr(&word);
        let reference = rewrite_to_normal::<Rational>(expand(&e), Order::Leftmost).0;
        assert_eq!(rewrite_to_normal::<Rational>(expand(&e), Order::Rightmost).0, reference, "{word:?}");
        for _ in 0..3 {
            let seed = rng.gen();
            assert_eq!(rewrite_to_normal::<Rational>(expand(&e), Order::Random(seed)).0, reference, "{word:?}");
        }
        assert_eq!(nf(&e), reference, "{word:?}");
    }
}

#[test]
fn power_identity_up_to_fifty() {
    let checks = power_commutator_check(50);
    assert_eq!(checks.len(), 51);
    for c in &checks {
        assert!(c.passed(), "n = {}: {} / {}", c.n, c.residual, c.recursive_residual);
    }
}

#[test]
fn descent_verifies_up_to_twenty() {
    for k in 0..=20 {
        let cert = descent_certificate(k);
        assert_eq!(cert.steps.len(), k as usize + 1);
        assert!(cert.verified(), "K = {k}");
        assert_eq!(cert.composed, NormalPolyQ::one());
    }
}

#[test]
fn four_letter_word_by_brute_force() {
    // a a ad ad → ad² a² + 4c ad a + 2c²
    let e = parse_expr("a*a*ad*ad").unwrap();
    let (got, _) = rewrite_to_normal::<Rational>(expand(&e), Order::Leftmost);
    let want = NormalPolyQ::monomial(2, 2, CPolyQ::one())
        + NormalPolyQ::monomial(1, 1, CPolyQ::monomial(rational(4, 1), 1))
        + NormalPolyQ::scalar(CPolyQ::monomial(rational(2, 1), 2));
    assert_eq!(got, want);
}
