mod common;

use common::{chart, p, rng, small};
use proptest::prelude::*;
use sugra_core::curvature::{
    christoffel, curvature, gradient, hessian, is_totally_ricci_isotropic, laplace_beltrami, ricci,
    trace,
};
use sugra_core::exterior::DifferentialForm;
use sugra_core::fixtures::{flat_base, sheared_metric, sol3, walker};
use sugra_core::gen::{random_metric, random_polynomial, random_vector, PolyShape};
use sugra_core::metric::linalg::{mat_mul, transpose};
use sugra_core::metric::{make_metric, MetricRef, PolyMatrix, Signature};
use sugra_core::polyring::{ratio, Polynomial};

fn metric(seed: u64) -> MetricRef {
    let ch = chart("E", &["a", "b", "c"]);
    let shape = PolyShape {
        max_degree: 1,
        max_terms: 2,
        coeff: 2,
    };
    random_metric(&mut rng(seed), &ch, Signature::riemannian(3), 2, shape).unwrap()
}

fn only_uu(ric: &PolyMatrix, u: usize) -> bool {
    ric.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, e)| (i == u && j == u) || e.is_zero())
    })
}

/// The flat metric `-I` pulled back along `(a, b, c) -> (a, b + a^2, c + a b)`.
fn curvilinear_flat() -> MetricRef {
    let ch = chart("C", &["a", "b", "c"]);
    let jac = vec![
        vec![p("1"), p("0"), p("0")],
        vec![p("2*a"), p("1"), p("0")],
        vec![p("b"), p("a"), p("1")],
    ];
    let minus: PolyMatrix = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| Polynomial::from_int(if i == j { -1 } else { 0 }))
                .collect()
        })
        .collect();
    let g = mat_mul(&mat_mul(&transpose(&jac), &minus), &jac);
    make_metric(&ch, g, None, Some(Signature::riemannian(3))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn christoffel_symbols_are_symmetric(seed in any::<u64>()) {
        let m = metric(seed);
        let gamma = christoffel(&m);
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert_eq!(&gamma[k][i][j], &gamma[k][j][i]);
                }
            }
        }
        let ric = ricci(&m);
        prop_assert_eq!(transpose(&ric), ric);
    }

    #[test]
    fn laplacian_is_the_divergence_of_the_gradient(seed in any::<u64>()) {
        // unimodular metrics have sqrt|det g| = 1, so Lap f = d_i (g^ij d_j f)
        let m = metric(seed);
        let f = random_polynomial(&mut rng(seed ^ 7), m.chart().coordinates(), small());
        let grad = gradient(&m, &f).unwrap();
        let div: Polynomial = (0..3).map(|i| grad.component(i).partial_derivative(m.chart().coordinate(i))).sum();
        prop_assert_eq!(laplace_beltrami(&m, &f), div);
        prop_assert_eq!(laplace_beltrami(&m, &f), trace(&m, &hessian(&m, &f)));
    }

    #[test]
    fn gradient_is_dual_to_d(seed in any::<u64>()) {
        let m = metric(seed);
        let mut r = rng(seed ^ 9);
        let f = random_polynomial(&mut r, m.chart().coordinates(), small());
        let x = random_vector(&mut r, m.chart(), small());
        let df = DifferentialForm::function(m.chart(), f.clone()).d();
        prop_assert_eq!(m.apply(&gradient(&m, &f).unwrap(), &x), df.interior_product(&x).unwrap().as_function());
    }
}

#[test]
fn flat_blocks_have_no_curvature() {
    let g = flat_base();
    assert!(christoffel(&g)
        .iter()
        .flatten()
        .flatten()
        .all(Polynomial::is_zero));
    assert!(ricci(&g).iter().flatten().all(Polynomial::is_zero));
}

#[test]
fn curvilinear_coordinates_on_flat_space_are_ricci_flat() {
    let m = curvilinear_flat();
    assert!(christoffel(&m)
        .iter()
        .flatten()
        .flatten()
        .any(|g| !g.is_zero()));
    assert!(ricci(&m).iter().flatten().all(Polynomial::is_zero));
}

#[test]
fn walker_ricci_has_one_entry() {
    for h in [
        "1/8*x1^2 + 1/8*x2^2 + 1/8*x3^2 + 1/8*x4^2",
        "1/12*x1^4 + 1/12*x2^4",
        "x1*x2 + 3*x3^2",
    ] {
        let w = walker(&p(h));
        let wd = w.walker().unwrap();
        let ric = ricci(&w);
        assert!(only_uu(&ric, wd.u), "{h}");
        let lap = laplace_beltrami(&wd.rho, &wd.h);
        assert_eq!(ric[wd.u][wd.u], lap.scale(&ratio(-1, 2)), "{h}");
        // rho negative definite: Lap = -sum d_i^2
        let direct: Polynomial = ["x1", "x2", "x3", "x4"]
            .iter()
            .map(|x| -wd.h.partial(x).partial(x))
            .sum();
        assert_eq!(lap, direct);
    }
    assert_eq!(
        laplace_beltrami(
            &walker(&p("0")).walker().unwrap().rho,
            &p("1/8*x1^2 + 1/8*x2^2 + 1/8*x3^2 + 1/8*x4^2")
        ),
        p("-1")
    );
}

#[test]
fn ricci_isotropy() {
    assert!(is_totally_ricci_isotropic(&walker(&p("x1^2"))).isotropic);
    assert!(is_totally_ricci_isotropic(sol3().unwrap().background.metric()).isotropic);
    let curved = sheared_metric("S", &["a", "b", "c"], "c^2");
    let iso = is_totally_ricci_isotropic(&curved);
    assert!(!iso.isotropic);
    assert!(iso.witness.is_some());
}

#[test]
fn curvature_is_cached() {
    let m = metric(3);
    let a = curvature(&m);
    let b = curvature(&m);
    assert!(std::sync::Arc::ptr_eq(&a, &b));
}
