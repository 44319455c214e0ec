use std::fmt;
use std::str::FromStr;

use crate::curvature::{curvature, is_totally_ricci_isotropic, laplace_beltrami};
use crate::exterior::{Chart, DifferentialForm};
use crate::metric::{make_metric, walker_metric, MetricRef, Signature, WalkerData};
use crate::polyring::{Polynomial, Var};
use crate::product::build_product;

use super::ansatz::{assemble_flux, Background, Component, FluxAnsatz};
use super::cases::check_shape;
use super::equations::{einstein_residual, maxwell_residual};
use super::outcome::{CheckOutcome, ResidualValue};
use super::SugraError;

use Component::*;

/// The solution families on `M^5 x M~` with `M~` a Walker manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionFamily {
    /// `F = du ^ theta`, `Lap H = |theta|^2_rho`.
    Sol1,
    /// `F = du ^ omega ^ dt`, `Lap H = -|omega|^2_rho`.
    Sol2,
    /// `F = du ^ omega ^ dt` with `omega` Kaehler on the base, `Lap H = -2`.
    Sol3,
    /// `F = du ^ Omega + du ^ omega ^ nu`,
    /// `Lap H = |Omega|^2_rho + |nu|^2 |omega|^2_rho`.
    Sol4,
}

impl SolutionFamily {
    pub const ALL: [SolutionFamily; 4] = [
        SolutionFamily::Sol1,
        SolutionFamily::Sol2,
        SolutionFamily::Sol3,
        SolutionFamily::Sol4,
    ];

    pub fn key(self) -> &'static str {
        match self {
            SolutionFamily::Sol1 => "sol1",
            SolutionFamily::Sol2 => "sol2",
            SolutionFamily::Sol3 => "sol3",
            SolutionFamily::Sol4 => "sol4",
        }
    }

    fn components(self) -> &'static [Component] {
        match self {
            SolutionFamily::Sol1 => &[Alpha],
            SolutionFamily::Sol2 => &[Beta, Nu],
            SolutionFamily::Sol3 => &[Varpi, Epsilon],
            SolutionFamily::Sol4 => &[Alpha, Beta, Nu],
        }
    }
}

impl fmt::Display for SolutionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for SolutionFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        SolutionFamily::ALL
            .into_iter()
            .find(|t| t.key() == s)
            .ok_or_else(|| format!("unknown solution family `{s}`"))
    }
}

/// A built background with its family check.
#[derive(Debug, Clone)]
pub struct SolutionInstance {
    pub background: Background,
    pub outcome: CheckOutcome,
}

fn walker_data<'a>(bg: &'a Background, check: &str) -> Result<&'a WalkerData, SugraError> {
    bg.product()
        .fiber()
        .walker()
        .ok_or_else(|| SugraError::Requirement {
            check: check.into(),
            requirement: "a Walker metric on the Lorentzian factor".into(),
        })
}

/// Writes a fiber form as `du ^ Omega` with `Omega` on the transversal
/// chart, or fails.
pub fn walker_part(
    bg: &Background,
    form: &DifferentialForm,
) -> Result<DifferentialForm, SugraError> {
    let wd = walker_data(bg, "walker_part")?;
    let not_aligned = || SugraError::Requirement {
        check: "walker_part".into(),
        requirement: format!(
            "a form du ^ Omega with Omega on the transversal coordinates, got {form}"
        ),
    };
    let fiber = bg.product().fiber().chart();
    let inner = form.interior_coordinate(wd.u)?;
    let omega = inner
        .restrict_to(wd.rho.chart())
        .map_err(|_| not_aligned())?;
    let du = DifferentialForm::coordinate_differential(fiber, wd.u);
    if du.wedge(&omega.lift_to(fiber)?)? != *form {
        return Err(not_aligned());
    }
    Ok(omega)
}

fn equations(out: &mut CheckOutcome, bg: &Background) -> Result<(), SugraError> {
    out.residual("dF", bg.flux().d())
        .residual("d*F - 1/2 F^F", maxwell_residual(bg)?)
        .residual(
            "Ric + 1/2 <i F, i F> - 1/6 h |F|^2",
            ResidualValue::square(bg.chart(), einstein_residual(bg)?),
        );
    Ok(())
}

/// Checks the hypotheses and conclusion of a solution family on `bg`.
pub fn check_solution(bg: &Background, family: SolutionFamily) -> Result<CheckOutcome, SugraError> {
    check_shape(bg, family.key(), family.components())?;
    let wd = walker_data(bg, family.key())?;
    let rho = &wd.rho;
    let g = bg.product().base();
    let lap = laplace_beltrami(rho, &wd.h);
    let mut out = CheckOutcome::new(family.key());
    out.quantity("Lap H", lap.clone());
    if bg.product().warping() != &Polynomial::one() {
        out.residual("f - 1", bg.product().warping() - &Polynomial::one());
    }
    out.residual(
        "Ric^g",
        ResidualValue::square(g.chart(), curvature(g).ricci.clone()),
    );
    match family {
        SolutionFamily::Sol1 => {
            let theta = walker_part(bg, &bg.comp(Alpha))?;
            let n = rho.norm_sq(&theta)?;
            out.quantity("|theta|^2_rho", n.clone())
                .residual("Lap H - |theta|^2_rho", &lap - &n)
                .residual("d theta", theta.d())
                .residual("d*_rho theta", rho.d_star(&theta)?);
        }
        SolutionFamily::Sol2 => {
            let omega = walker_part(bg, &bg.comp(Beta))?;
            let nu = bg.comp(Nu);
            let n = rho.norm_sq(&omega)?;
            out.quantity("|omega|^2_rho", n.clone())
                .residual("Lap H + |omega|^2_rho", &lap + &n)
                .residual("d omega", omega.d())
                .residual("d*_rho omega", rho.d_star(&omega)?)
                .residual("|nu|^2 + 1", &g.norm_sq(&nu)? + &Polynomial::one())
                .residual("d nu", nu.d())
                .residual("d*nu", g.d_star(&nu)?);
        }
        SolutionFamily::Sol3 => {
            let varpi = bg.comp(Varpi);
            let eps = bg.comp(Epsilon);
            let du = DifferentialForm::coordinate_differential(bg.product().fiber().chart(), wd.u);
            let n = g.norm_sq(&eps)?;
            out.quantity("|epsilon|^2", n.clone())
                .residual("varpi_t - du", varpi.try_sub(&du)?)
                .residual("|epsilon|^2 + 2", &n + &Polynomial::from_int(2))
                .residual("Lap H + 2", &lap + &Polynomial::from_int(2))
                .residual("d epsilon", eps.d())
                .residual("d*epsilon", g.d_star(&eps)?);
            out.invariant(
                "assembled metric is totally Ricci isotropic",
                is_totally_ricci_isotropic(bg.metric()).isotropic,
            );
        }
        SolutionFamily::Sol4 => {
            let big = walker_part(bg, &bg.comp(Alpha))?;
            let omega = walker_part(bg, &bg.comp(Beta))?;
            let nu = bg.comp(Nu);
            let (nb, nw, nn) = (rho.norm_sq(&big)?, rho.norm_sq(&omega)?, g.norm_sq(&nu)?);
            let star_big = rho.hodge_star(&big)?;
            let chain = rho.hodge_star(&star_big.d())?;
            let ds_nu = g.d_star(&nu)?;
            let vol = g.volume_form();
            out.residual(
                "Lap H - |Omega|^2_rho - |nu|^2 |omega|^2_rho",
                &(&lap - &nb) - &(&nn * &nw),
            )
            .residual("d Omega", big.d())
            .residual("d omega", omega.d())
            .residual("d nu", nu.d())
            .quantity("*_rho Omega", star_big)
            .quantity("*_rho d *_rho Omega", chain.clone())
            .quantity("omega - *_rho d *_rho Omega", omega.try_sub(&chain)?)
            .quantity("d*nu", ds_nu.clone());
            let sign =
                |a: &DifferentialForm, b: &DifferentialForm| -> Result<Option<i64>, SugraError> {
                    Ok(if a.try_sub(b)?.is_zero() {
                        Some(1)
                    } else if a.try_add(b)?.is_zero() {
                        Some(-1)
                    } else {
                        None
                    })
                };
            match sign(&omega, &chain)? {
                Some(s) if !chain.is_zero() => {
                    out.note(format!(
                        "omega = {} *_rho d *_rho Omega",
                        if s > 0 { "+" } else { "-" }
                    ));
                }
                _ => {
                    out.note("omega is not a multiple +-1 of *_rho d *_rho Omega (c = 0 branch or free omega)");
                }
            }
            match sign(&ds_nu, &vol)? {
                Some(s) if !vol.is_zero() => {
                    out.note(format!("d*nu = {} vol_M", if s > 0 { "+" } else { "-" }));
                }
                _ => {
                    out.note(format!("d*nu = {ds_nu}"));
                }
            }
        }
    }
    equations(&mut out, bg)?;
    Ok(out.finish())
}

fn walker_from_rho(rho: &MetricRef, h: &Polynomial) -> Result<MetricRef, SugraError> {
    let names: Vec<String> = rho
        .chart()
        .coordinates()
        .iter()
        .map(|v| v.name().to_string())
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(walker_metric("W", "v", &refs, "u", rho.g(), h)?)
}

/// `p - dt^2` on the chart of `p` extended by `t`.
fn with_line(p: &MetricRef, t: &str) -> Result<MetricRef, SugraError> {
    let mut coords = p.chart().coordinates().to_vec();
    coords.push(Var::new(t));
    let chart = Chart::from_vars("M", coords)?;
    let n = p.dim() + 1;
    let mut g = vec![vec![Polynomial::zero(); n]; n];
    let mut inv = g.clone();
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            g[i][j] = p.g()[i][j].clone();
            inv[i][j] = p.g_inv()[i][j].clone();
        }
    }
    g[n - 1][n - 1] = Polynomial::from_int(-1);
    inv[n - 1][n - 1] = Polynomial::from_int(-1);
    let s = p.signature();
    Ok(make_metric(
        &chart,
        g,
        Some(inv),
        Some(Signature::new(s.plus, s.minus + 1)),
    )?)
}

fn du_wedge(w: &MetricRef, x: &DifferentialForm) -> Result<DifferentialForm, SugraError> {
    let u = w.walker().expect("walker").u;
    let du = DifferentialForm::coordinate_differential(w.chart(), u);
    Ok(du.wedge(&x.lift_to(w.chart())?)?)
}

fn finish(
    name: &str,
    base: &MetricRef,
    w: &MetricRef,
    ansatz: FluxAnsatz,
    family: SolutionFamily,
) -> Result<SolutionInstance, SugraError> {
    let pc = build_product("X", base, w, &Polynomial::one())?;
    let background = assemble_flux(name, &pc, &ansatz)?;
    let outcome = check_solution(&background, family)?;
    Ok(SolutionInstance {
        background,
        outcome,
    })
}

/// `F = du ^ theta` on `M x W` with `W` the Walker metric of `(rho, H)`.
pub fn build_sol1(
    rho: &MetricRef,
    theta: &DifferentialForm,
    h: &Polynomial,
    base: &MetricRef,
) -> Result<SolutionInstance, SugraError> {
    let w = walker_from_rho(rho, h)?;
    let ansatz = FluxAnsatz::new().with(Alpha, du_wedge(&w, theta)?);
    finish("sol1", base, &w, ansatz, SolutionFamily::Sol1)
}

/// `F = (du ^ omega) ^ dt` on `(P x R_t) x W`.
pub fn build_sol2(
    rho: &MetricRef,
    omega: &DifferentialForm,
    h: &Polynomial,
    p: &MetricRef,
) -> Result<SolutionInstance, SugraError> {
    let w = walker_from_rho(rho, h)?;
    let base = with_line(p, "t")?;
    let dt = DifferentialForm::coordinate_differential(base.chart(), base.dim() - 1);
    let ansatz = FluxAnsatz::new()
        .with(Beta, du_wedge(&w, omega)?)
        .with(Nu, dt);
    finish("sol2", &base, &w, ansatz, SolutionFamily::Sol2)
}

/// `F = du ^ (omega ^ dt)` on `(P x R_t) x W` with `omega` the Kaehler form of
/// `P`.
pub fn build_sol3(
    rho: &MetricRef,
    h: &Polynomial,
    p: &MetricRef,
    kaehler: &DifferentialForm,
) -> Result<SolutionInstance, SugraError> {
    let w = walker_from_rho(rho, h)?;
    let base = with_line(p, "t")?;
    let dt = DifferentialForm::coordinate_differential(base.chart(), base.dim() - 1);
    let eps = kaehler.lift_to(base.chart())?.wedge(&dt)?;
    let du = DifferentialForm::coordinate_differential(w.chart(), w.walker().expect("walker").u);
    let ansatz = FluxAnsatz::new().with(Varpi, du).with(Epsilon, eps);
    finish("sol3", &base, &w, ansatz, SolutionFamily::Sol3)
}

/// `F = du ^ Omega + du ^ omega ^ nu` with `omega = *_rho d *_rho Omega`.
pub fn build_sol4(
    rho: &MetricRef,
    big_omega: &DifferentialForm,
    h: &Polynomial,
    base: &MetricRef,
    nu: &DifferentialForm,
) -> Result<SolutionInstance, SugraError> {
    let w = walker_from_rho(rho, h)?;
    let on_rho = big_omega.lift_to(rho.chart())?;
    let omega = rho.hodge_star(&rho.hodge_star(&on_rho)?.d())?;
    let ansatz = FluxAnsatz::new()
        .with(Alpha, du_wedge(&w, &on_rho)?)
        .with(Beta, du_wedge(&w, &omega)?)
        .with(Nu, nu.clone());
    finish("sol4", base, &w, ansatz, SolutionFamily::Sol4)
}
