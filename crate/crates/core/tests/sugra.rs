mod common;

use common::{p, rng};
use num_traits::One;
use sugra_core::checks::{CheckContext, CheckRegistry};
use sugra_core::exterior::DifferentialForm;
use sugra_core::fixtures::{
    case7_background, case_fixtures, cosymplectic_base, eta_t, flat_base, form, minkowski, sol1,
    sol2, sol3, sol4_chain_c1, sol4_corrected, sol4_literal, sol4_stated_omega, standard_phi,
    walker, xi_t,
};
use sugra_core::gen::{random_ansatz, PolyShape};
use sugra_core::metric::MetricRef;
use sugra_core::polyring::{ratio, Polynomial, Rational};
use sugra_core::product::build_product;
use sugra_core::sugra::{
    assemble_flux, check_case5_contact, check_closedness, check_contact_structure, check_flux_norm,
    check_maxwell, check_solution, check_special_case, check_theorem_conditions, split_einstein,
    Background, CheckOutcome, Component, FluxAnsatz, SolutionFamily, SugraError, Theorem,
};

use Component::*;

const EQUIV: &str = "case conditions zero <=> closedness and Maxwell hold";

fn background(parts: Vec<(Component, DifferentialForm)>) -> Background {
    background_on(&flat_base(), &minkowski(), &Polynomial::one(), parts)
}

fn background_on(
    base: &MetricRef,
    fiber: &MetricRef,
    f: &Polynomial,
    parts: Vec<(Component, DifferentialForm)>,
) -> Background {
    let pc = build_product("X", base, fiber, f).unwrap();
    let ansatz = parts
        .into_iter()
        .fold(FluxAnsatz::new(), |a, (c, x)| a.with(c, x));
    assemble_flux("t", &pc, &ansatz).unwrap()
}

fn w(names: &[&str], coeff: &str) -> DifferentialForm {
    form(&minkowski(), names, coeff)
}

fn m(names: &[&str], coeff: &str) -> DifferentialForm {
    form(&flat_base(), names, coeff)
}

fn nonzero(o: &CheckOutcome) -> Vec<String> {
    o.residuals
        .iter()
        .filter(|r| !r.is_zero())
        .map(|r| r.name.clone())
        .collect()
}

fn case(bg: &Background, n: u8, c: &Rational) -> CheckOutcome {
    let o = check_special_case(bg, n, c).unwrap();
    assert_eq!(
        o.invariant_holds(EQUIV),
        Some(true),
        "case {n}: {:?}",
        o.notes
    );
    o
}

fn assert_case_holds(bg: &Background, n: u8, c: &Rational) {
    let o = case(bg, n, c);
    assert!(o.passed, "case {n} should hold, nonzero: {:?}", nonzero(&o));
}

fn assert_case_fails(bg: &Background, n: u8, c: &Rational) {
    let o = case(bg, n, c);
    assert!(!o.residuals_zero(), "case {n} should fail");
}

fn one() -> Rational {
    Rational::one()
}

#[test]
fn case1_null_four_form() {
    assert_case_holds(
        &background(vec![(Alpha, w(&["u", "x1", "x2", "x3"], "1"))]),
        1,
        &one(),
    );
    let bad = w(&["u", "x2", "x3"], "x1^2").d();
    assert_case_fails(&background(vec![(Alpha, bad)]), 1, &one());
}

#[test]
fn case2_three_form_times_one_form() {
    let beta = w(&["u", "x1", "x2"], "1");
    assert_case_holds(
        &background(vec![(Beta, beta.clone()), (Nu, m(&["y1"], "1"))]),
        2,
        &one(),
    );
    assert_case_fails(
        &background(vec![(Beta, beta), (Nu, m(&["y1"], "y1"))]),
        2,
        &one(),
    );
}

#[test]
fn case3_two_forms() {
    let gamma = w(&["u", "x1"], "1");
    let good = background(vec![(Gamma, gamma.clone()), (Delta, m(&["y1", "y2"], "1"))]);
    assert_case_holds(&good, 3, &one());
    let bad = background(vec![(Gamma, gamma), (Delta, m(&["y1", "y2"], "y3"))]);
    let o = case(&bad, 3, &one());
    assert!(nonzero(&o).contains(&"d delta".to_string()));
}

#[test]
fn case4_one_form_times_three_form() {
    let du = w(&["u"], "1");
    assert_case_holds(
        &background(vec![
            (Varpi, du.clone()),
            (Epsilon, m(&["y1", "y2", "y3"], "1")),
        ]),
        4,
        &one(),
    );
    assert_case_fails(
        &background(vec![(Varpi, du), (Epsilon, m(&["y1", "y2", "y3"], "y4"))]),
        4,
        &one(),
    );
}

#[test]
fn case5_base_four_form() {
    assert_case_holds(
        &background(vec![(Theta, m(&["y1", "y2", "y3", "y4"], "1"))]),
        5,
        &one(),
    );
    assert_case_fails(
        &background(vec![(Theta, m(&["y1", "y2", "y3", "y4"], "y1"))]),
        5,
        &one(),
    );
}

#[test]
fn case6_mixed_chain() {
    assert_case_holds(&sol4_chain_c1().unwrap(), 6, &one());
    let corrected = sol4_corrected().unwrap();
    let o = case(&corrected, 6, &one());
    assert!(o.passed);
    assert!(o.notes.iter().any(|n| n.contains("c = 0 branch")));
    assert_case_fails(&sol4_stated_omega().unwrap(), 6, &one());
}

#[test]
fn case6_literal_data_closes_with_minus_one() {
    let lit = sol4_literal().unwrap().background;
    // the direct equations do not see c, so a wrong c breaks the equivalence
    let o = check_special_case(&lit, 6, &one()).unwrap();
    assert!(!o.residuals_zero());
    assert_eq!(o.invariant_holds(EQUIV), Some(false));
    assert_case_holds(&lit, 6, &Rational::from_integer((-1).into()));
}

#[test]
fn case7_theta_with_one_form_times_three_form() {
    let c = ratio(3, 2);
    assert_case_holds(&case7_background(&c, 1).unwrap(), 7, &c);
    assert_case_fails(&case7_background(&c, 2).unwrap(), 7, &c);
}

#[test]
fn case8_alpha_and_theta() {
    let alpha = w(&["u", "x1", "x2", "x3"], "1");
    let zero_theta = DifferentialForm::zero(flat_base().chart(), 4);
    assert_case_holds(
        &background(vec![(Alpha, alpha.clone()), (Theta, zero_theta)]),
        8,
        &one(),
    );
    let both = background(vec![
        (Alpha, alpha),
        (Theta, m(&["y1", "y2", "y3", "y4"], "1")),
    ]);
    let o = case(&both, 8, &one());
    assert_eq!(nonzero(&o), vec!["alpha_t^theta".to_string()]);
}

#[test]
fn case9_holds_with_nonzero_nu() {
    let parts = |varpi: DifferentialForm| {
        vec![
            (Beta, w(&["u", "x1", "x2"], "1")),
            (Nu, m(&["y1"], "1")),
            (Varpi, varpi),
            (Epsilon, m(&["y2", "y3", "y4"], "1")),
        ]
    };
    let good = background(parts(w(&["u"], "1")));
    let o = case(&good, 9, &one());
    assert!(o.passed);
    assert!(!o.get_quantity("nu").unwrap().is_zero());
    assert!(o.notes.iter().any(|n| n.contains("nu is nonzero")));
    let bad = background(parts(w(&["x3"], "1")));
    let o = case(&bad, 9, &one());
    assert_eq!(
        nonzero(&o),
        vec!["beta_t ^ varpi_t ^ epsilon ^ nu".to_string()]
    );
}

#[test]
fn shared_case_fixtures() {
    let fixtures = case_fixtures().unwrap();
    for n in 1..=9u8 {
        let of_case: Vec<_> = fixtures.iter().filter(|f| f.case == n).collect();
        assert!(
            of_case.iter().any(|f| f.holds) && of_case.iter().any(|f| !f.holds),
            "case {n}"
        );
    }
    for f in &fixtures {
        let o = case(&f.background, f.case, &f.c);
        assert_eq!(o.passed, f.holds, "case {} {}", f.case, f.label);
    }
}

#[test]
fn case_shape_is_enforced() {
    let bg = background(vec![(Alpha, w(&["u", "x1", "x2", "x3"], "1"))]);
    assert!(matches!(
        check_special_case(&bg, 2, &one()),
        Err(SugraError::ShapeMismatch { .. })
    ));
    assert!(check_special_case(&bg, 10, &one()).is_err());
}

fn monomials() -> PolyShape {
    PolyShape {
        max_degree: 2,
        max_terms: 1,
        coeff: 3,
    }
}

#[test]
fn block_expansions_match_direct() {
    let base = flat_base();
    let fiber = walker(&p("x1^2 - x2*x3"));
    for (seed, f) in (0..8u64).zip([1, 2].into_iter().cycle()) {
        let pc = build_product("X", &base, &fiber, &Polynomial::from_int(f)).unwrap();
        let ansatz = random_ansatz(&mut rng(seed), &pc, &Component::ALL, monomials(), false);
        let bg = assemble_flux("blocks", &pc, &ansatz).unwrap();
        let mx = check_maxwell(&bg).unwrap();
        for name in [
            "*F equals its block expansion",
            "1/2 F^F equals its block expansion",
            "bidegree parts of the residual match the typed system",
        ] {
            assert_eq!(
                mx.invariant_holds(name),
                Some(true),
                "{name}, seed {seed}, f = {f}"
            );
        }
        let norm = check_flux_norm(&bg).unwrap();
        assert!(norm.passed, "seed {seed}, f = {f}");
    }
}

fn has_nonzero(a: &FluxAnsatz, c: Component) -> bool {
    a.get(c).is_some_and(|x| !x.is_zero())
}

#[test]
fn closedness_system_equivalent_to_df() {
    let pc = build_product("X", &flat_base(), &minkowski(), &Polynomial::one()).unwrap();
    let (mut closed, mut open) = (0, 0);
    let mut seed = 0u64;
    while closed + open < 30 {
        seed += 1;
        let exact = seed.is_multiple_of(2);
        let ansatz = random_ansatz(
            &mut rng(seed),
            &pc,
            &Component::ALL,
            PolyShape::default(),
            exact,
        );
        if !has_nonzero(&ansatz, Nu) || !has_nonzero(&ansatz, Varpi) {
            continue;
        }
        let bg = assemble_flux("closed", &pc, &ansatz).unwrap();
        let o = check_closedness(&bg).unwrap();
        assert!(o.invariants_hold(), "seed {seed}: {:?}", o.invariants);
        if o.passed {
            closed += 1;
        } else {
            open += 1;
        }
    }
    assert!(closed >= 5 && open >= 5, "{closed} closed, {open} open");
}

#[test]
fn closedness_degenerates_without_a_partner() {
    // b~ not closed, but its partner nu is zero: dF = 0 while db~ != 0
    let beta = w(&["x1", "x2", "u"], "x3");
    let nu = DifferentialForm::zero(flat_base().chart(), 1);
    let bg = background(vec![(Beta, beta), (Nu, nu)]);
    let o = check_closedness(&bg).unwrap();
    assert!(o.passed);
    assert_eq!(o.invariant_holds("component system zero <=> dF = 0"), None);
    assert!(!o.get_quantity("d beta_t").unwrap().is_zero());
}

#[test]
fn theorem_null_forms_on_solutions() {
    let c = one();
    for (inst, t) in [
        (sol1().unwrap(), Theorem::NullFourForm),
        (sol2().unwrap(), Theorem::NullThreeForm),
        (sol3().unwrap(), Theorem::NullOneForm),
    ] {
        let o = check_theorem_conditions(&inst.background, t, &c).unwrap();
        assert!(o.passed, "{t}: {:?}", nonzero(&o));
        assert!(o.invariants_hold());
    }
}

#[test]
fn theorem_mixed_on_literal_chain() {
    let bg = sol4_chain_c1().unwrap();
    let o = check_theorem_conditions(&bg, Theorem::Mixed, &one()).unwrap();
    assert_eq!(
        nonzero(&o),
        vec![
            "Ric^g~ + 1/2 <i alpha_t, i alpha_t> + 1/2 |nu|^2 <i beta_t, i beta_t>".to_string(),
            "Ric + 1/2 <i F, i F> - 1/6 h |F|^2".to_string(),
        ]
    );
    assert!(o.invariants_hold());
    assert!(
        check_theorem_conditions(&bg, Theorem::Mixed, &Rational::from_integer(0.into())).is_err()
    );
}

#[test]
fn theorem_constant_theta_on_flat_base_fails_einstein() {
    let bg = background(vec![(Theta, m(&["y1", "y2", "y3", "y4"], "1"))]);
    let o = check_theorem_conditions(&bg, Theorem::ConstantTheta, &one()).unwrap();
    assert!(!o.passed);
    assert!(o.invariants_hold());
    let names = nonzero(&o);
    assert!(names.contains(&"Ric^g - |theta|^2/6 g + 1/2 <i theta, i theta>".to_string()));
}

#[test]
fn solution_fixtures_pass() {
    for inst in [sol1().unwrap(), sol2().unwrap(), sol3().unwrap()] {
        assert!(
            inst.outcome.passed,
            "{}: {:?}",
            inst.outcome.name,
            nonzero(&inst.outcome)
        );
    }
    let corrected = check_solution(&sol4_corrected().unwrap(), SolutionFamily::Sol4).unwrap();
    assert!(corrected.passed, "{:?}", nonzero(&corrected));
}

#[test]
fn literal_mixed_solution_has_uu_residual() {
    let lit = sol4_literal().unwrap();
    assert!(!lit.outcome.passed);
    let e = lit
        .outcome
        .get("Ric + 1/2 <i F, i F> - 1/6 h |F|^2")
        .unwrap()
        .value
        .matrix_entry("u", "u")
        .unwrap();
    assert_eq!(e, p("1/2*x1^2 - 1/2*y1^2"));
}

#[test]
fn split_einstein_matches_direct() {
    for bg in [
        sol4_chain_c1().unwrap(),
        sol3().unwrap().background,
        case7_background(&one(), 1).unwrap(),
    ] {
        let o = split_einstein(&bg).unwrap();
        assert!(o.invariants_hold(), "{}: {:?}", bg.name(), o.invariants);
    }
    let pc = build_product(
        "X",
        &flat_base(),
        &walker(&p("x1*x2")),
        &Polynomial::from_int(2),
    )
    .unwrap();
    let ansatz = random_ansatz(&mut rng(7), &pc, &Component::ALL, monomials(), false);
    let o = split_einstein(&assemble_flux("r", &pc, &ansatz).unwrap()).unwrap();
    assert!(o.invariants_hold(), "{:?}", o.invariants);
}

#[test]
fn cosymplectic_contact_structure() {
    let g = cosymplectic_base();
    let o = check_contact_structure(&g, &xi_t(&g), &eta_t(&g), &standard_phi()).unwrap();
    assert!(o.passed, "{:?}", nonzero(&o));
}

#[test]
fn case5_einstein_obstruction_is_one_sixth() {
    let g = cosymplectic_base();
    let o = check_case5_contact(&g, &eta_t(&g), &minkowski()).unwrap();
    assert_eq!(
        o.invariant_holds("d theta = d*theta = 0 <=> d eta = d*eta = 0"),
        Some(true)
    );
    let stated = o.get("(-1/3 g |eta|^2 + 1/2 eta eta) - Ric^g").unwrap();
    // Ric^g = 0 on the flat product, while the identity demands 1/6 along t
    assert_eq!(
        stated.value.matrix_entry("t", "t"),
        Some(Polynomial::constant(ratio(1, 6)))
    );
    assert!(!o.passed);
}

#[test]
fn registry_runs_builtin_checks() {
    let reg = CheckRegistry::builtin();
    let names: Vec<&str> = reg.names().collect();
    for n in [
        "closedness",
        "maxwell",
        "einstein",
        "case9",
        "spckckck",
        "sol4",
        "walker",
        "case5_contact",
    ] {
        assert!(names.contains(&n), "{n}");
    }
    let bg = sol1().unwrap().background;
    let wanted: Vec<String> = [
        "closedness",
        "maxwell",
        "einstein",
        "walker",
        "sol1",
        "nope",
        "case2",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let report = reg.run(&bg, &wanted, &CheckContext::default());
    assert_eq!(report.outcomes.len(), 5);
    assert!(report.outcomes.iter().all(|o| o.passed));
    let errs: Vec<&str> = report.errors.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(errs, vec!["nope", "case2"]);
    assert!(!report.passed());
}

#[test]
fn ansatz_validation() {
    let pc = build_product("X", &flat_base(), &minkowski(), &Polynomial::one()).unwrap();
    let unpaired = FluxAnsatz::new().with(Beta, w(&["u", "x1", "x2"], "1"));
    assert!(matches!(
        assemble_flux("x", &pc, &unpaired),
        Err(SugraError::Unpaired(..))
    ));
    let wrong = FluxAnsatz::new().with(Alpha, w(&["u"], "1"));
    assert!(matches!(
        assemble_flux("x", &pc, &wrong),
        Err(SugraError::ComponentDegree { .. })
    ));
    assert!(matches!(
        assemble_flux("x", &pc, &FluxAnsatz::new()),
        Err(SugraError::EmptyAnsatz)
    ));
}
