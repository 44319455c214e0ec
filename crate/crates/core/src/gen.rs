//! Seeded random inputs for property tests and the acceptance suite.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::exterior::{Blade, ChartRef, DifferentialForm, VectorField};
use crate::metric::linalg::{mat_mul, transpose};
use crate::metric::{make_metric, MetricError, MetricRef, PolyMatrix, Signature};
use crate::polyring::{ratio, Monomial, Polynomial, Var};
use crate::product::ProductChart;
use crate::sugra::{Component, FluxAnsatz};

/// Shape of random polynomials.
#[derive(Debug, Clone, Copy)]
pub struct PolyShape {
    pub max_degree: u32,
    pub max_terms: usize,
    /// Numerators are drawn from `-coeff..=coeff`, denominators from `1..=3`.
    pub coeff: i64,
}

impl Default for PolyShape {
    fn default() -> Self {
        PolyShape {
            max_degree: 2,
            max_terms: 3,
            coeff: 3,
        }
    }
}

pub fn random_polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    vars: &[Var],
    shape: PolyShape,
) -> Polynomial {
    let terms = rng.gen_range(0..=shape.max_terms);
    Polynomial::from_terms((0..terms).map(|_| {
        let deg = rng.gen_range(0..=shape.max_degree);
        let m =
            Monomial::from_pairs((0..deg).filter_map(|_| vars.choose(rng).map(|v| (v.clone(), 1))));
        let num = rng.gen_range(-shape.coeff..=shape.coeff);
        (m, ratio(num, rng.gen_range(1..=3)))
    }))
}

/// A nonzero polynomial: retries, then falls back to a nonzero constant.
pub fn random_nonzero_polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    vars: &[Var],
    shape: PolyShape,
) -> Polynomial {
    for _ in 0..8 {
        let p = random_polynomial(rng, vars, shape);
        if !p.is_zero() {
            return p;
        }
    }
    Polynomial::from_int(if rng.gen_bool(0.5) { 1 } else { -1 })
}

/// A random `degree`-form on `chart` with coefficients in the chart variables.
pub fn random_form<R: Rng + ?Sized>(
    rng: &mut R,
    chart: &ChartRef,
    degree: usize,
    shape: PolyShape,
) -> DifferentialForm {
    let n = chart.dim();
    let vars = chart.coordinates().to_vec();
    let blades = blades_of_degree(n, degree);
    let count = rng.gen_range(1..=blades.len().min(4));
    let picked: Vec<Blade> = blades.choose_multiple(rng, count).copied().collect();
    DifferentialForm::from_components(
        chart,
        degree,
        picked
            .into_iter()
            .map(|b| (b, random_polynomial(rng, &vars, shape))),
    )
    .expect("blade degree matches")
}

pub fn random_vector<R: Rng + ?Sized>(
    rng: &mut R,
    chart: &ChartRef,
    shape: PolyShape,
) -> VectorField {
    let vars = chart.coordinates().to_vec();
    VectorField::from_components(
        chart,
        (0..chart.dim()).map(|k| (k, random_polynomial(rng, &vars, shape))),
    )
}

/// All blades of the given degree in dimension `n`, in mask order.
pub fn blades_of_degree(n: usize, degree: usize) -> Vec<Blade> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == degree)
        .map(Blade)
        .collect()
}

/// `P^T D P` with `D = diag(+1 x plus, -1 x minus)` and `P` unipotent upper
/// triangular with `shears` random polynomial entries, so the inverse stays
/// polynomial and the signature is known.
pub fn random_metric<R: Rng + ?Sized>(
    rng: &mut R,
    chart: &ChartRef,
    signature: Signature,
    shears: usize,
    shape: PolyShape,
) -> Result<MetricRef, MetricError> {
    let n = chart.dim();
    assert_eq!(
        signature.plus + signature.minus,
        n,
        "signature must match the chart"
    );
    let vars = chart.coordinates().to_vec();
    let mut p: PolyMatrix = vec![vec![Polynomial::zero(); n]; n];
    for (i, row) in p.iter_mut().enumerate() {
        row[i] = Polynomial::one();
    }
    if n > 1 {
        for _ in 0..shears {
            let i = rng.gen_range(0..n - 1);
            let j = rng.gen_range(i + 1..n);
            p[i][j] = &p[i][j] + &random_polynomial(rng, &vars, shape);
        }
    }
    let mut d: PolyMatrix = vec![vec![Polynomial::zero(); n]; n];
    let mut diag: Vec<i64> = (0..n)
        .map(|k| if k < signature.plus { 1 } else { -1 })
        .collect();
    diag.shuffle(rng);
    for (k, s) in diag.into_iter().enumerate() {
        d[k][k] = Polynomial::from_int(s);
    }
    let g = mat_mul(&mat_mul(&transpose(&p), &d), &p);
    make_metric(chart, g, None, Some(signature))
}

/// A random flux ansatz on `pc` with the given components. With `exact`
/// every component is `d` of a random form, so `F` is closed.
pub fn random_ansatz<R: Rng + ?Sized>(
    rng: &mut R,
    pc: &ProductChart,
    components: &[Component],
    shape: PolyShape,
    exact: bool,
) -> FluxAnsatz {
    let mut ansatz = FluxAnsatz::new();
    for &c in components {
        let chart = if c.on_fiber() {
            pc.fiber().chart()
        } else {
            pc.base().chart()
        };
        let form = if exact {
            let deeper = PolyShape {
                max_degree: shape.max_degree + 1,
                ..shape
            };
            random_form(rng, chart, c.degree() - 1, deeper).d()
        } else {
            random_form(rng, chart, c.degree(), shape)
        };
        ansatz.set(c, Some(form));
    }
    ansatz
}
