//! The worked examples: flat factors, the four Walker solution families,
//! the `Omega = x2 dx2^dx3^dx4` instance and its corrected variant, the
//! cosymplectic `B^4 x R` structure, and a satisfying and a violating
//! instance of each special case.

use num_traits::One;

use crate::exterior::{full_mask, Blade, Chart, DifferentialForm, VectorField};
use crate::metric::{flat_metric, make_metric, walker_metric, MetricRef, PolyMatrix, Signature};
use crate::polyring::{parse_polynomial, Polynomial, Rational};
use crate::product::build_product;
use crate::sugra::{
    assemble_flux, build_sol1, build_sol2, build_sol3, build_sol4, Background, Component,
    FluxAnsatz, SolutionInstance, SugraError,
};

pub const XS: [&str; 4] = ["x1", "x2", "x3", "x4"];
pub const YS: [&str; 5] = ["y1", "y2", "y3", "y4", "y5"];
pub const PS: [&str; 4] = ["p1", "p2", "p3", "p4"];

pub fn poly(s: &str) -> Polynomial {
    parse_polynomial(s).expect("fixture polynomial")
}

/// `-sum (dx^i)^2` on `x1..x4`.
pub fn flat_rho() -> MetricRef {
    flat_metric(&Chart::new("N", &XS).expect("chart")).expect("flat")
}

pub fn flat_base() -> MetricRef {
    flat_metric(&Chart::new("M", &YS).expect("chart")).expect("flat")
}

pub fn flat_p() -> MetricRef {
    flat_metric(&Chart::new("P", &PS).expect("chart")).expect("flat")
}

/// Minkowski space `2 dv du - sum (dx^i)^2` as a Walker metric with `H = 0`.
pub fn minkowski() -> MetricRef {
    walker(&Polynomial::zero())
}

pub fn walker(h: &Polynomial) -> MetricRef {
    walker_metric("W", "v", &XS, "u", flat_rho().g(), h).expect("walker")
}

/// `f(names, coeff)` on the chart of `m`.
pub fn form(m: &MetricRef, names: &[&str], coeff: &str) -> DifferentialForm {
    DifferentialForm::from_names(m.chart(), names, poly(coeff)).expect("fixture form")
}

pub fn sum(forms: &[DifferentialForm]) -> DifferentialForm {
    let mut acc = forms[0].clone();
    for f in &forms[1..] {
        acc = acc.try_add(f).expect("same chart");
    }
    acc
}

/// `theta = dx2^dx3^dx4`, `H = 1/8 sum (x^i)^2`.
pub fn sol1() -> Result<SolutionInstance, SugraError> {
    let rho = flat_rho();
    let theta = form(&rho, &["x2", "x3", "x4"], "1");
    build_sol1(
        &rho,
        &theta,
        &poly("1/8*x1^2 + 1/8*x2^2 + 1/8*x3^2 + 1/8*x4^2"),
        &flat_base(),
    )
}

/// `omega = dx1^dx2 + dx3^dx4`, `H = 1/4 sum (x^i)^2`.
pub fn sol2() -> Result<SolutionInstance, SugraError> {
    let rho = flat_rho();
    let omega = sum(&[
        form(&rho, &["x1", "x2"], "1"),
        form(&rho, &["x3", "x4"], "1"),
    ]);
    build_sol2(
        &rho,
        &omega,
        &poly("1/4*x1^2 + 1/4*x2^2 + 1/4*x3^2 + 1/4*x4^2"),
        &flat_p(),
    )
}

/// Flat Kaehler `P = R^4` with `omega = dp1^dp2 + dp3^dp4`, `H = 1/4 sum (x^i)^2`.
pub fn sol3() -> Result<SolutionInstance, SugraError> {
    let p = flat_p();
    let kaehler = sum(&[form(&p, &["p1", "p2"], "1"), form(&p, &["p3", "p4"], "1")]);
    build_sol3(
        &flat_rho(),
        &poly("1/4*x1^2 + 1/4*x2^2 + 1/4*x3^2 + 1/4*x4^2"),
        &p,
        &kaehler,
    )
}

/// The literal instance: `Omega = x2 dx2^dx3^dx4`, `nu = y1 dy1`,
/// `H = 1/12 ((x1)^4 + (x2)^4)`, with `omega = *d*Omega` computed.
pub fn sol4_literal() -> Result<SolutionInstance, SugraError> {
    let rho = flat_rho();
    let base = flat_base();
    let big = form(&rho, &["x2", "x3", "x4"], "x2");
    let nu = form(&base, &["y1"], "y1");
    build_sol4(&rho, &big, &poly("1/12*x1^4 + 1/12*x2^4"), &base, &nu)
}

/// The same data with `omega = dx3^dx4` as stated rather than computed.
pub fn sol4_stated_omega() -> Result<Background, SugraError> {
    let base = flat_base();
    let w = walker(&poly("1/12*x1^4 + 1/12*x2^4"));
    let ansatz = FluxAnsatz::new()
        .with(Component::Alpha, form(&w, &["u", "x2", "x3", "x4"], "x2"))
        .with(Component::Beta, form(&w, &["u", "x3", "x4"], "1"))
        .with(Component::Nu, form(&base, &["y1"], "y1"));
    let pc = build_product("X", &base, &w, &Polynomial::one())?;
    assemble_flux("sol4_stated", &pc, &ansatz)
}

/// The literal chain data with the engine's signs: `Omega = x2 dx2^dx3^dx4`,
/// `omega = dx3^dx4 = -*_rho d *_rho Omega` and `nu = -y1 dy1`, so that
/// `d*nu = +vol_M` and case (6) holds with `c = 1`. Same `H` as stated.
pub fn sol4_chain_c1() -> Result<Background, SugraError> {
    let base = flat_base();
    let w = walker(&poly("1/12*x1^4 + 1/12*x2^4"));
    let ansatz = FluxAnsatz::new()
        .with(Component::Alpha, form(&w, &["u", "x2", "x3", "x4"], "x2"))
        .with(Component::Beta, form(&w, &["u", "x3", "x4"], "1"))
        .with(Component::Nu, form(&base, &["y1"], "-y1"));
    let pc = build_product("X", &base, &w, &Polynomial::one())?;
    assemble_flux("sol4_chain_c1", &pc, &ansatz)
}

/// Corrected instance of the mixed family: `nu = dy1` of constant length,
/// `Omega = dx2^dx3^dx4` and `omega = dx3^dx4` closed and co-closed (the
/// `c = 0` branch), `Lap H = |Omega|^2 + |nu|^2 |omega|^2 = -2`.
pub fn sol4_corrected() -> Result<Background, SugraError> {
    let base = flat_base();
    let w = walker(&poly("1/4*x1^2 + 1/4*x2^2 + 1/4*x3^2 + 1/4*x4^2"));
    let ansatz = FluxAnsatz::new()
        .with(Component::Alpha, form(&w, &["u", "x2", "x3", "x4"], "1"))
        .with(Component::Beta, form(&w, &["u", "x3", "x4"], "1"))
        .with(Component::Nu, form(&base, &["y1"], "1"));
    let pc = build_product("X", &base, &w, &Polynomial::one())?;
    assemble_flux("sol4_corrected", &pc, &ansatz)
}

/// Flat `B^4 x R_t` with coordinates `b1..b4, t`.
pub fn cosymplectic_base() -> MetricRef {
    flat_metric(&Chart::new("B", &["b1", "b2", "b3", "b4", "t"]).expect("chart")).expect("flat")
}

/// The standard complex structure on `B^4` extended by zero on `d/dt`.
pub fn standard_phi() -> PolyMatrix {
    let mut phi = vec![vec![Polynomial::zero(); 5]; 5];
    // phi(d1) = d2, phi(d2) = -d1, phi(d3) = d4, phi(d4) = -d3
    phi[1][0] = Polynomial::one();
    phi[0][1] = Polynomial::from_int(-1);
    phi[3][2] = Polynomial::one();
    phi[2][3] = Polynomial::from_int(-1);
    phi
}

pub fn xi_t(m: &MetricRef) -> VectorField {
    VectorField::coordinate(m.chart(), 4)
}

pub fn eta_t(m: &MetricRef) -> DifferentialForm {
    DifferentialForm::coordinate_differential(m.chart(), 4)
}

/// `diag(-1, ..., -1)` blocks perturbed into a random-looking but
/// unimodular metric `P^T D P`.
pub fn sheared_metric(name: &str, coords: &[&str], shear: &str) -> MetricRef {
    let chart = Chart::new(name, coords).expect("chart");
    let n = coords.len();
    let s = poly(shear);
    let mut g = vec![vec![Polynomial::zero(); n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = Polynomial::from_int(-1);
    }
    g[0][1] = -&s;
    g[1][0] = -&s;
    g[1][1] = &Polynomial::from_int(-1) - &(&s * &s);
    make_metric(&chart, g, None, Some(Signature::riemannian(n))).expect("sheared")
}

/// A special-case fixture: flat `M^5` times a Walker factor, `f = 1`.
#[derive(Debug, Clone)]
pub struct CaseFixture {
    pub label: &'static str,
    pub case: u8,
    pub c: Rational,
    /// Whether the case conditions (and so closedness and Maxwell) hold.
    pub holds: bool,
    pub background: Background,
}

fn minkowski_background(
    name: &str,
    parts: Vec<(Component, DifferentialForm)>,
) -> Result<Background, SugraError> {
    let pc = build_product("X", &flat_base(), &minkowski(), &Polynomial::one())?;
    let ansatz = parts
        .into_iter()
        .fold(FluxAnsatz::new(), |a, (c, x)| a.with(c, x));
    assemble_flux(name, &pc, &ansatz)
}

/// `theta = y1 dy1^..^dy4`, `*eps = d*theta / c` scaled by `eps_scale`, and
/// `varpi_t` a multiple of `x1 dx1` with `d*~varpi_t = c vol`.
pub fn case7_background(c: &Rational, eps_scale: i64) -> Result<Background, SugraError> {
    let base = flat_base();
    let fiber = minkowski();
    let theta = form(&base, &["y1", "y2", "y3", "y4"], "y1");
    let ds_theta = base.d_star(&theta)?;
    // ** = det_sign on 3-forms in five dimensions
    let eps = base
        .hodge_star(&ds_theta.scale(&c.recip()))?
        .scale_int(base.det_sign() * eps_scale);
    let probe = form(&fiber, &["x1"], "x1");
    let top = Blade(full_mask(fiber.dim()));
    let lam = fiber
        .d_star(&probe)?
        .component(top)
        .div_exact(&fiber.volume_form().component(top))
        .ok()
        .and_then(|p| p.as_constant())
        .expect("constant divergence");
    let varpi = probe.scale(&(c / &lam));
    minkowski_background(
        "case7",
        vec![
            (Component::Theta, theta),
            (Component::Epsilon, eps),
            (Component::Varpi, varpi),
        ],
    )
}

/// One satisfying and one violating fixture per special case, plus the
/// mixed-chain instances of case (6).
pub fn case_fixtures() -> Result<Vec<CaseFixture>, SugraError> {
    use Component::*;
    let (m, w) = (flat_base(), minkowski());
    let one = Rational::one();
    let mut out = Vec::new();
    let mut push = |label, case, c: &Rational, holds, background| {
        out.push(CaseFixture {
            label,
            case,
            c: c.clone(),
            holds,
            background,
        })
    };
    let bg = minkowski_background;
    let alpha = form(&w, &["u", "x1", "x2", "x3"], "1");
    push(
        "du^dx1^dx2^dx3",
        1,
        &one,
        true,
        bg("c1", vec![(Alpha, alpha.clone())])?,
    );
    let bad_alpha = form(&w, &["u", "x2", "x3"], "x1^2").d();
    push(
        "d(x1^2 du^dx2^dx3)",
        1,
        &one,
        false,
        bg("c1", vec![(Alpha, bad_alpha)])?,
    );

    let beta = form(&w, &["u", "x1", "x2"], "1");
    let pair = |nu: &str| vec![(Beta, beta.clone()), (Nu, form(&m, &["y1"], nu))];
    push("du^dx1^dx2 with dy1", 2, &one, true, bg("c2", pair("1"))?);
    push(
        "du^dx1^dx2 with y1 dy1",
        2,
        &one,
        false,
        bg("c2", pair("y1"))?,
    );

    let gamma = form(&w, &["u", "x1"], "1");
    let pair = |d: &str| vec![(Gamma, gamma.clone()), (Delta, form(&m, &["y1", "y2"], d))];
    push("du^dx1 with dy1^dy2", 3, &one, true, bg("c3", pair("1"))?);
    push(
        "du^dx1 with y3 dy1^dy2",
        3,
        &one,
        false,
        bg("c3", pair("y3"))?,
    );

    let du = form(&w, &["u"], "1");
    let pair = |e: &str| {
        vec![
            (Varpi, du.clone()),
            (Epsilon, form(&m, &["y1", "y2", "y3"], e)),
        ]
    };
    push("du with dy1^dy2^dy3", 4, &one, true, bg("c4", pair("1"))?);
    push(
        "du with y4 dy1^dy2^dy3",
        4,
        &one,
        false,
        bg("c4", pair("y4"))?,
    );

    let theta = |t: &str| vec![(Theta, form(&m, &["y1", "y2", "y3", "y4"], t))];
    push("dy1^dy2^dy3^dy4", 5, &one, true, bg("c5", theta("1"))?);
    push("y1 dy1^dy2^dy3^dy4", 5, &one, false, bg("c5", theta("y1"))?);

    push("mixed chain, c = 1", 6, &one, true, sol4_chain_c1()?);
    push("corrected mixed instance", 6, &one, true, sol4_corrected()?);
    push(
        "stated omega with y1 dy1",
        6,
        &one,
        false,
        sol4_stated_omega()?,
    );

    let c7 = crate::polyring::ratio(3, 2);
    push(
        "theta, epsilon, varpi_t chain",
        7,
        &c7,
        true,
        case7_background(&c7, 1)?,
    );
    push(
        "same with 2 epsilon",
        7,
        &c7,
        false,
        case7_background(&c7, 2)?,
    );

    let zero_theta = DifferentialForm::zero(m.chart(), 4);
    push(
        "alpha_t with theta = 0",
        8,
        &one,
        true,
        bg("c8", vec![(Alpha, alpha.clone()), (Theta, zero_theta)])?,
    );
    let both = vec![
        (Alpha, alpha),
        (Theta, form(&m, &["y1", "y2", "y3", "y4"], "1")),
    ];
    push(
        "alpha_t with theta = dy1^..^dy4",
        8,
        &one,
        false,
        bg("c8", both)?,
    );

    let nine = |varpi: DifferentialForm| {
        vec![
            (Beta, beta.clone()),
            (Nu, form(&m, &["y1"], "1")),
            (Varpi, varpi),
            (Epsilon, form(&m, &["y2", "y3", "y4"], "1")),
        ]
    };
    push(
        "nu = dy1 nonzero, varpi_t = du",
        9,
        &one,
        true,
        bg("c9", nine(du.clone()))?,
    );
    push(
        "varpi_t = dx3",
        9,
        &one,
        false,
        bg("c9", nine(form(&w, &["x3"], "1")))?,
    );
    Ok(out)
}
