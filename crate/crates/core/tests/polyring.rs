mod common;

use std::collections::HashMap;

use common::{p, rng, small, vars};
use proptest::prelude::*;
use rand::Rng;
use sugra_core::gen::random_polynomial;
use sugra_core::polyring::{
    parse_polynomial, parse_rational, ratio, PolyError, Polynomial, Rational, Var,
};

fn triple(seed: u64) -> (Polynomial, Polynomial, Polynomial) {
    let mut r = rng(seed);
    let v = vars(&["x", "y", "z"]);
    (
        random_polynomial(&mut r, &v, small()),
        random_polynomial(&mut r, &v, small()),
        random_polynomial(&mut r, &v, small()),
    )
}

fn point(seed: u64) -> HashMap<Var, Rational> {
    let mut r = rng(seed ^ 0x5eed);
    vars(&["x", "y", "z"])
        .into_iter()
        .map(|v| (v, ratio(r.gen_range(-5..=5), r.gen_range(1..=4))))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let (a, b, c) = triple(seed);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(), a.clone());
    }

    #[test]
    fn derivative_is_a_derivation(seed in any::<u64>()) {
        let (a, b, _) = triple(seed);
        let lhs = (&a * &b).partial("x");
        let rhs = &(&a.partial("x") * &b) + &(&a * &b.partial("x"));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_partials_commute(seed in any::<u64>()) {
        let (a, _, _) = triple(seed);
        prop_assert_eq!(a.partial("x").partial("y"), a.partial("y").partial("x"));
    }

    #[test]
    fn evaluation_is_a_homomorphism(seed in any::<u64>()) {
        let (a, b, _) = triple(seed);
        let pt = point(seed);
        let (ea, eb) = (a.evaluate(&pt).unwrap(), b.evaluate(&pt).unwrap());
        prop_assert_eq!((&a * &b).evaluate(&pt).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).evaluate(&pt).unwrap(), ea + eb);
    }

    #[test]
    fn display_reparses(seed in any::<u64>()) {
        let (a, _, _) = triple(seed);
        prop_assert_eq!(parse_polynomial(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn exact_division_inverts_multiplication(seed in any::<u64>()) {
        let (a, b, _) = triple(seed);
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }
}

#[test]
fn grammar_examples() {
    let h = p("1/8*x1^2 + 1/8*x2^2");
    assert_eq!(
        h.evaluate(&[(Var::new("x1"), ratio(2, 1)), (Var::new("x2"), ratio(0, 1))].into())
            .unwrap(),
        ratio(1, 2)
    );
    assert_eq!(p(" x * y ^2 "), p("x*y^2"));
    assert_eq!(p("-2/4*x"), p("-1/2x"));
    assert_eq!(p("x - x"), Polynomial::zero());
    assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
}

#[test]
fn grammar_errors_carry_the_input() {
    for bad in ["x +", "1/0", "x^", "2*"] {
        match parse_polynomial(bad) {
            Err(PolyError::Parse { input, .. }) => assert_eq!(input, bad),
            other => panic!("{bad}: {other:?}"),
        }
    }
}

#[test]
fn missing_variable_is_an_error() {
    let err = p("x*y")
        .evaluate(&[(Var::new("x"), ratio(1, 1))].into())
        .unwrap_err();
    assert_eq!(err, PolyError::MissingVariable("y".into()));
}

#[test]
fn squares_and_divisibility() {
    assert_eq!(p("x^2 + 2*x*y + y^2").sqrt().unwrap(), p("x + y"));
    assert!(p("x^2 + y").sqrt().is_err());
    assert!(matches!(
        p("x^2 + 1").div_exact(&p("x")),
        Err(PolyError::NotDivisible { .. })
    ));
}
