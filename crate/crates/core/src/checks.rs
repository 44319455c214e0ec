//! Named checks behind one trait, so manifests and the CLI can select them
//! by name and new checks can be registered without touching the runner.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::curvature::{curvature, is_totally_ricci_isotropic, laplace_beltrami};
use crate::polyring::{ratio, Polynomial, Rational};
use crate::sugra::{
    check_case5_contact, check_closedness, check_einstein, check_flux_norm, check_maxwell,
    check_solution, check_special_case, check_theorem_conditions, split_einstein, Background,
    CheckOutcome, Component, ResidualValue, SolutionFamily, SugraError, Theorem,
    VerificationReport,
};

/// Settings shared by all checks of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckContext {
    /// The constant of special cases (3), (6) and (7).
    pub c: Rational,
}

impl Default for CheckContext {
    fn default() -> Self {
        CheckContext { c: Rational::one() }
    }
}

pub trait Check: Send + Sync {
    fn name(&self) -> &str;
    fn description(&self) -> &str;
    fn run(&self, bg: &Background, ctx: &CheckContext) -> Result<CheckOutcome, SugraError>;
}

type CheckFn =
    Box<dyn Fn(&Background, &CheckContext) -> Result<CheckOutcome, SugraError> + Send + Sync>;

struct FnCheck {
    name: String,
    description: String,
    run: CheckFn,
}

impl Check for FnCheck {
    fn name(&self) -> &str {
        &self.name
    }

    fn description(&self) -> &str {
        &self.description
    }

    fn run(&self, bg: &Background, ctx: &CheckContext) -> Result<CheckOutcome, SugraError> {
        (self.run)(bg, ctx)
    }
}

/// Checks by name, in registration order.
#[derive(Default)]
pub struct CheckRegistry {
    checks: BTreeMap<String, Box<dyn Check>>,
    order: Vec<String>,
}

impl fmt::Debug for CheckRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.order).finish()
    }
}

impl CheckRegistry {
    pub fn new() -> Self {
        CheckRegistry::default()
    }

    /// Registers `check`, replacing any check of the same name.
    pub fn register(&mut self, check: Box<dyn Check>) {
        let name = check.name().to_string();
        if self.checks.insert(name.clone(), check).is_none() {
            self.order.push(name);
        }
    }

    fn add(
        &mut self,
        name: &str,
        description: &str,
        run: impl Fn(&Background, &CheckContext) -> Result<CheckOutcome, SugraError>
            + Send
            + Sync
            + 'static,
    ) {
        self.register(Box::new(FnCheck {
            name: name.into(),
            description: description.into(),
            run: Box::new(run),
        }));
    }

    pub fn get(&self, name: &str) -> Option<&dyn Check> {
        self.checks.get(name).map(|c| c.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.order.iter().map(String::as_str)
    }

    /// Every check shipped with the engine.
    pub fn builtin() -> Self {
        let mut r = CheckRegistry::new();
        r.add("closedness", "dF = 0 and the component system", |bg, _| {
            check_closedness(bg)
        });
        r.add(
            "maxwell",
            "d*F = 1/2 F^F with block expansions and the typed system",
            |bg, _| check_maxwell(bg),
        );
        r.add("einstein", "the full Einstein residual matrix", |bg, _| {
            check_einstein(bg)
        });
        r.add(
            "split_einstein",
            "HH, VV and HV block formulas against the direct residual",
            |bg, _| split_einstein(bg),
        );
        r.add(
            "flux_norm",
            "|F|^2 directly and by the block formula",
            |bg, _| check_flux_norm(bg),
        );
        for case in 1..=9u8 {
            r.add(
                &format!("case{case}"),
                &format!("conditions of special case ({case})"),
                move |bg, ctx| check_special_case(bg, case, &ctx.c),
            );
        }
        for t in Theorem::ALL {
            r.add(
                t.key(),
                "theorem hypotheses and the field equations",
                move |bg, ctx| check_theorem_conditions(bg, t, &ctx.c),
            );
        }
        for s in SolutionFamily::ALL {
            r.add(
                s.key(),
                "solution family conditions and the field equations",
                move |bg, _| check_solution(bg, s),
            );
        }
        r.add(
            "ricci_isotropy",
            "h(ric(X), ric(Y)) = 0 on the assembled metric",
            |bg, _| ricci_isotropy(bg),
        );
        r.add(
            "walker",
            "the fiber Ricci tensor is -1/2 Lap H du du",
            |bg, _| walker_ricci(bg),
        );
        r.add(
            "case5_contact",
            "F = theta = *eta: base and fiber Einstein identities",
            |bg, _| case5_from_theta(bg),
        );
        r
    }

    /// Runs the named checks on `bg`; unknown names and engine errors are
    /// recorded in the report.
    pub fn run(&self, bg: &Background, names: &[String], ctx: &CheckContext) -> VerificationReport {
        let mut report = VerificationReport::new(bg.name());
        report.convention_notes = crate::sugra::CONVENTION_NOTES
            .iter()
            .map(|s| s.to_string())
            .collect();
        for name in names {
            match self.get(name) {
                None => report
                    .errors
                    .push((name.clone(), format!("unknown check `{name}`"))),
                Some(check) => match check.run(bg, ctx) {
                    Ok(o) => report.outcomes.push(o),
                    Err(e) => report.errors.push((name.clone(), e.to_string())),
                },
            }
        }
        report
    }
}

fn ricci_isotropy(bg: &Background) -> Result<CheckOutcome, SugraError> {
    let iso = is_totally_ricci_isotropic(bg.metric());
    let mut out = CheckOutcome::new("ricci_isotropy");
    if let Some((a, b, p)) = iso.witness {
        let chart = bg.chart();
        out.residual(
            format!(
                "Ric g^-1 Ric [{},{}]",
                chart.coordinate(a),
                chart.coordinate(b)
            ),
            p,
        );
    }
    out.invariant("totally Ricci isotropic", iso.isotropic);
    Ok(out.finish())
}

fn walker_ricci(bg: &Background) -> Result<CheckOutcome, SugraError> {
    let w = bg.product().fiber();
    let wd = w.walker().ok_or_else(|| SugraError::Requirement {
        check: "walker".into(),
        requirement: "a Walker metric on the Lorentzian factor".into(),
    })?;
    let lap = laplace_beltrami(&wd.rho, &wd.h);
    let mut expected = vec![vec![Polynomial::zero(); w.dim()]; w.dim()];
    expected[wd.u][wd.u] = lap.scale(&ratio(-1, 2));
    let ric = &curvature(w).ricci;
    let diff: Vec<Vec<Polynomial>> = ric
        .iter()
        .zip(&expected)
        .map(|(r, e)| r.iter().zip(e).map(|(a, b)| a - b).collect())
        .collect();
    let mut out = CheckOutcome::new("walker");
    out.quantity("Lap H", lap).residual(
        "Ric^W + 1/2 Lap H du du",
        ResidualValue::square(w.chart(), diff),
    );
    Ok(out.finish())
}

fn case5_from_theta(bg: &Background) -> Result<CheckOutcome, SugraError> {
    crate::sugra::check_shape(bg, "case5_contact", &[Component::Theta])?;
    let g = bg.product().base();
    // ** = det_sign on 4-forms in five dimensions, so eta = det_sign *theta
    let eta = g
        .hodge_star(&bg.comp(Component::Theta))?
        .scale_int(g.det_sign());
    check_case5_contact(g, &eta, bg.product().fiber())
}
