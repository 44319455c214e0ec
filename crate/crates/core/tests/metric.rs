mod common;

use common::{chart, p, rng, small};
use proptest::prelude::*;
use sugra_core::exterior::{Blade, DifferentialForm, VectorField};
use sugra_core::fixtures::{flat_base, flat_rho, form, minkowski};
use sugra_core::gen::{random_form, random_metric, random_vector, PolyShape};
use sugra_core::metric::{diagonal_metric, make_metric, MetricError, MetricRef, Signature};
use sugra_core::polyring::Polynomial;

const COORDS: [&str; 5] = ["a", "b", "c", "d", "e"];

fn metric(seed: u64, sig: Signature) -> MetricRef {
    let n = sig.plus + sig.minus;
    let ch = chart("E", &COORDS[..n]);
    let shape = PolyShape {
        max_degree: 1,
        max_terms: 2,
        coeff: 2,
    };
    random_metric(&mut rng(seed), &ch, sig, 2, shape).unwrap()
}

fn signatures() -> impl Strategy<Value = Signature> {
    prop_oneof![
        Just(Signature::riemannian(5)),
        Just(Signature::lorentzian(5)),
        Just(Signature::new(2, 2)),
        Just(Signature::riemannian(3)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn star_star_is_the_signed_identity(seed in any::<u64>(), sig in signatures(), deg in 0usize..=5) {
        let m = metric(seed, sig);
        prop_assume!(deg <= m.dim());
        let a = random_form(&mut rng(seed ^ 1), m.chart(), deg, small());
        let twice = m.hodge_star(&m.hodge_star(&a).unwrap()).unwrap();
        prop_assert_eq!(twice, a.scale_int(m.star_star_sign(deg)));
        let expected = m.det_sign() * if (deg * (m.dim() - deg)).is_multiple_of(2) { 1 } else { -1 };
        prop_assert_eq!(m.star_star_sign(deg), expected);
    }

    #[test]
    fn wedge_with_star_is_the_inner_product(seed in any::<u64>(), sig in signatures(), deg in 0usize..=5) {
        let m = metric(seed, sig);
        prop_assume!(deg <= m.dim());
        let mut r = rng(seed ^ 2);
        let a = random_form(&mut r, m.chart(), deg, small());
        let b = random_form(&mut r, m.chart(), deg, small());
        let lhs = a.wedge(&m.hodge_star(&b).unwrap()).unwrap();
        let rhs = m.volume_form().mul_function(&m.inner_product(&a, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(m.inner_product(&a, &b).unwrap(), m.inner_product(&b, &a).unwrap());
    }

    #[test]
    fn sharp_and_flat_are_inverse(seed in any::<u64>(), sig in signatures()) {
        let m = metric(seed, sig);
        let mut r = rng(seed ^ 3);
        let nu = random_form(&mut r, m.chart(), 1, small());
        prop_assert_eq!(m.flat(&m.sharp(&nu).unwrap()).unwrap(), nu);
        let x = random_vector(&mut r, m.chart(), small());
        prop_assert_eq!(m.sharp(&m.flat(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn inverse_is_exact(seed in any::<u64>(), sig in signatures()) {
        let m = metric(seed, sig);
        let prod = sugra_core::metric::linalg::mat_mul(m.g(), m.g_inv());
        prop_assert_eq!(prod, sugra_core::metric::linalg::identity(m.dim()));
        prop_assert_eq!(m.signature(), sig);
    }
}

#[test]
fn euclidean_block_basics() {
    let g = flat_base();
    for i in 0..5 {
        for j in 0..5 {
            let e = if i == j {
                Polynomial::from_int(-1)
            } else {
                Polynomial::zero()
            };
            assert_eq!(g.g_inv()[i][j], e);
        }
    }
    assert_eq!(
        g.volume_form(),
        form(&g, &["y1", "y2", "y3", "y4", "y5"], "1")
    );
    assert_eq!(g.det_sign(), -1);
    let dt = form(&g, &["y5"], "1");
    assert_eq!(g.norm_sq(&dt).unwrap(), Polynomial::from_int(-1));
    assert!(!g.is_null(&dt).unwrap());
}

#[test]
fn star_of_the_mixed_family_three_form() {
    // computed sign under the fixed convention; recorded in the ledger
    let rho = flat_rho();
    let big = form(&rho, &["x2", "x3", "x4"], "x2");
    assert_eq!(rho.hodge_star(&big).unwrap(), form(&rho, &["x1"], "x2"));
    let chain = rho.hodge_star(&rho.hodge_star(&big).unwrap().d()).unwrap();
    assert_eq!(chain, form(&rho, &["x3", "x4"], "-1"));
}

#[test]
fn walker_null_directions() {
    let w = minkowski();
    let du = form(&w, &["u"], "1");
    assert!(w.is_null(&du).unwrap());
    assert_eq!(w.signature(), Signature::lorentzian(6));
    let dv_du = form(&w, &["v", "u"], "1");
    assert_eq!(w.norm_sq(&dv_du).unwrap(), Polynomial::from_int(-1));
}

#[test]
fn rejects_bad_metrics() {
    let ch = chart("E", &["a", "b"]);
    let nonpoly = diagonal_metric(&ch, &[p("-1 - a^2"), p("-1")], None);
    assert!(matches!(nonpoly, Err(MetricError::NonPolynomialInverse(_))));
    let mismatch = diagonal_metric(&ch, &[p("-1"), p("-1")], Some(Signature::lorentzian(2)));
    assert!(matches!(
        mismatch,
        Err(MetricError::SignatureMismatch { .. })
    ));
    let g = vec![vec![p("-1"), p("a")], vec![p("0"), p("-1")]];
    assert!(matches!(
        make_metric(&ch, g, None, None),
        Err(MetricError::NonSymmetric(..))
    ));
    let degenerate = vec![vec![p("0"), p("0")], vec![p("0"), p("0")]];
    assert!(make_metric(&ch, degenerate, None, None).is_err());
    let wrong_inverse = vec![vec![p("-1"), p("0")], vec![p("0"), p("-1")]];
    let bad = make_metric(
        &ch,
        wrong_inverse.clone(),
        Some(vec![vec![p("1"), p("0")], vec![p("0"), p("1")]]),
        None,
    );
    assert!(matches!(bad, Err(MetricError::InverseMismatch)));
}

#[test]
fn supplied_inverse_allows_polynomial_determinant() {
    // a unimodular shear with its inverse supplied
    let ch = chart("E", &["a", "b"]);
    let g = vec![vec![p("-1"), p("-a")], vec![p("-a"), p("-1 - a^2")]];
    let inv = vec![vec![p("-1 - a^2"), p("a")], vec![p("a"), p("-1")]];
    let m = make_metric(&ch, g, Some(inv), Some(Signature::riemannian(2))).unwrap();
    let x = VectorField::coordinate(&ch, 0);
    assert_eq!(m.flat(&x).unwrap().component(Blade(0b10)), p("-a"));
    let one = DifferentialForm::function(&ch, Polynomial::one());
    assert_eq!(m.hodge_star(&one).unwrap(), m.volume_form());
}
