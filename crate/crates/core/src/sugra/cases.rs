use num_traits::Zero;

use crate::exterior::DifferentialForm;
use crate::polyring::{Polynomial, Rational};

use super::ansatz::{Background, Component};
use super::equations::maxwell_residual;
use super::outcome::{CheckOutcome, Residual};
use super::SugraError;

use Component::*;

/// Components a special case may contain.
pub fn case_components(case: u8) -> Option<&'static [Component]> {
    Some(match case {
        1 => &[Alpha],
        2 => &[Beta, Nu],
        3 => &[Gamma, Delta],
        4 => &[Varpi, Epsilon],
        5 => &[Theta],
        6 => &[Alpha, Beta, Nu],
        7 => &[Varpi, Epsilon, Theta],
        8 => &[Alpha, Theta],
        9 => &[Beta, Nu, Varpi, Epsilon],
        _ => return None,
    })
}

pub fn check_shape(bg: &Background, check: &str, allowed: &[Component]) -> Result<(), SugraError> {
    for c in bg.ansatz().present() {
        if !allowed.contains(&c) {
            return Err(SugraError::ShapeMismatch {
                check: check.to_string(),
                component: c.key(),
            });
        }
    }
    Ok(())
}

/// Whether closedness and the Maxwell equation hold directly.
pub(crate) fn direct_closed_maxwell(bg: &Background) -> Result<bool, SugraError> {
    Ok(bg.flux().d().is_zero() && maxwell_residual(bg)?.is_zero())
}

struct Conditions<'a> {
    bg: &'a Background,
    list: Vec<Residual>,
}

impl<'a> Conditions<'a> {
    fn push(&mut self, name: &str, r: impl Into<super::ResidualValue>) {
        self.list.push(Residual::new(name, r));
    }

    fn d(&mut self, c: Component) {
        let name = format!("d {}", c.key());
        self.push(&name, self.bg.comp(c).d());
    }

    /// `d(f^k * x)` on the factor of `c`.
    fn d_star(&mut self, c: Component, k: i32) -> Result<(), SugraError> {
        let name = match (c.on_fiber(), k) {
            (true, _) => format!("d*~{}", c.key()),
            (false, 0) => format!("d*{}", c.key()),
            (false, k) => format!("d(f^{k} *{})", c.key()),
        };
        let r = self.star_of(c)?.mul_function(&self.bg.fpow(k)?).d();
        self.push(&name, r);
        Ok(())
    }

    fn star_of(&self, c: Component) -> Result<DifferentialForm, SugraError> {
        Ok(self.bg.factor(c).hodge_star(&self.bg.comp(c))?)
    }

    fn all_zero(list: &[Residual]) -> bool {
        list.iter().all(Residual::is_zero)
    }
}

/// Evaluates the conditions of special case `case` (1..=9) as residuals.
///
/// Cases (6) and (7) involve a constant `c`. With `c != 0` the conditions of
/// the `c` branch are used; the system also admits the `c = 0` branch, where
/// both sides of the separated equation vanish, and that branch is accepted
/// when it is the one that holds.
pub fn check_special_case(
    bg: &Background,
    case: u8,
    c: &Rational,
) -> Result<CheckOutcome, SugraError> {
    let name = format!("case{case}");
    let allowed = case_components(case).ok_or_else(|| SugraError::Requirement {
        check: name.clone(),
        requirement: "a case number between 1 and 9".into(),
    })?;
    check_shape(bg, &name, allowed)?;
    let mut cond = Conditions {
        bg,
        list: Vec::new(),
    };
    let mut out = CheckOutcome::new(&name);
    let (g, gt) = (bg.product().base(), bg.product().fiber());
    match case {
        1 => {
            cond.d(Alpha);
            cond.d_star(Alpha, 0)?;
        }
        2 => {
            cond.d(Beta);
            cond.d_star(Beta, 0)?;
            cond.d(Nu);
            cond.d_star(Nu, 0)?;
        }
        3 => {
            cond.d(Gamma);
            cond.d_star(Gamma, 0)?;
            // d delta = 0 is needed separately: the (2,3) part of dF requires it
            cond.d(Delta);
            let gamma = bg.comp(Gamma);
            let delta = bg.comp(Delta);
            let st_gamma = gt.hodge_star(&gamma)?;
            let d_f2_star_delta = g.hodge_star(&delta)?.mul_function(&bg.fpow(2)?).d();
            let lhs = bg.mix(&st_gamma, &d_f2_star_delta)?;
            let gg = gamma.wedge(&gamma)?;
            let dd = delta.wedge(&delta)?;
            let rhs = bg.mix(&gg, &dd)?.scale(&crate::polyring::ratio(1, 2));
            cond.push(
                "*~gamma_t^d(f^2 *delta) - 1/2 gamma_t^gamma_t^delta^delta",
                lhs.try_sub(&rhs)?,
            );
            if !c.is_zero() {
                out.quantity(
                    "*~gamma_t - c gamma_t^gamma_t",
                    st_gamma.try_sub(&gg.scale(c))?,
                );
                let two_c = c * Rational::from_integer(2.into());
                out.quantity(
                    "d(f^2 *delta) - delta^delta/(2c)",
                    d_f2_star_delta.try_sub(&dd.scale(&two_c.recip()))?,
                );
            }
        }
        4 => {
            cond.d(Varpi);
            cond.d_star(Varpi, 0)?;
            cond.d(Epsilon);
            cond.d_star(Epsilon, 4)?;
        }
        5 => {
            cond.d(Theta);
            cond.d_star(Theta, 6)?;
        }
        6 => {
            cond.d(Alpha);
            cond.d(Beta);
            cond.d(Nu);
            cond.d_star(Beta, 0)?;
            let ds_nu = g.d_star(&bg.comp(Nu))?;
            let ds_alpha = gt.d_star(&bg.comp(Alpha))?;
            let st_beta = gt.hodge_star(&bg.comp(Beta))?;
            let zero_branch = vec![
                Residual::new("d*~alpha_t", ds_alpha.clone()),
                Residual::new("d*nu", ds_nu.clone()),
            ];
            let c_branch = if c.is_zero() {
                None
            } else {
                let vol = g
                    .volume_form()
                    .mul_function(&(&Polynomial::constant(c.clone()) * &bg.fpow(-2)?));
                Some(vec![
                    Residual::new("d*nu - (c/f^2) vol_M", ds_nu.try_sub(&vol)?),
                    Residual::new(
                        "*~beta_t + (1/c) d*~alpha_t",
                        st_beta.try_add(&ds_alpha.scale(&c.recip()))?,
                    ),
                ])
            };
            choose_branch(&mut cond.list, &mut out, c_branch, zero_branch);
        }
        7 => {
            cond.d(Theta);
            cond.d(Epsilon);
            cond.d(Varpi);
            cond.d_star(Epsilon, 4)?;
            let ds_varpi = gt.d_star(&bg.comp(Varpi))?;
            let ds_theta = g.d_star(&bg.comp(Theta))?;
            let st_eps = g.hodge_star(&bg.comp(Epsilon))?;
            let zero_branch = vec![
                Residual::new("d*~varpi_t", ds_varpi.clone()),
                Residual::new("d*theta", ds_theta.clone()),
            ];
            let c_branch = if c.is_zero() {
                None
            } else {
                // the (6,2) Maxwell part gives *eps = (f^2/c) d*theta
                let coeff = &bg.fpow(2)? * &Polynomial::constant(c.recip());
                Some(vec![
                    Residual::new(
                        "d*~varpi_t - c vol_M~",
                        ds_varpi.try_sub(&gt.volume_form().scale(c))?,
                    ),
                    Residual::new(
                        "*epsilon - (f^2/c) d*theta",
                        st_eps.try_sub(&ds_theta.mul_function(&coeff))?,
                    ),
                ])
            };
            choose_branch(&mut cond.list, &mut out, c_branch, zero_branch);
        }
        8 => {
            let at = bg.mix(&bg.comp(Alpha), &bg.comp(Theta))?;
            cond.push("alpha_t^theta", at);
            cond.d(Alpha);
            cond.d_star(Alpha, 0)?;
            cond.d(Theta);
            cond.d_star(Theta, 6)?;
        }
        9 => {
            // The reduction to nu = 0 is sufficient but not necessary:
            // the coupling term of the (4,4) Maxwell part vanishes whenever
            // beta_t^varpi_t = 0. Exact conditions for a negative definite g:
            // both summands satisfy their own case and the coupling vanishes.
            let (beta, nu, varpi, eps) =
                (bg.comp(Beta), bg.comp(Nu), bg.comp(Varpi), bg.comp(Epsilon));
            let f4_star_eps = g.hodge_star(&eps)?.mul_function(&bg.fpow(4)?);
            let pairs = [
                ("d beta_t ^ nu", beta.d(), nu.clone()),
                ("beta_t ^ d nu", beta.clone(), nu.d()),
                ("*~beta_t ^ d*nu", gt.hodge_star(&beta)?, g.d_star(&nu)?),
                ("d*~beta_t ^ *nu", gt.d_star(&beta)?, g.hodge_star(&nu)?),
                ("d varpi_t ^ epsilon", varpi.d(), eps.clone()),
                ("varpi_t ^ d epsilon", varpi.clone(), eps.d()),
                (
                    "*~varpi_t ^ d(f^4 *epsilon)",
                    gt.hodge_star(&varpi)?,
                    f4_star_eps.d(),
                ),
                (
                    "d*~varpi_t ^ *epsilon",
                    gt.d_star(&varpi)?,
                    g.hodge_star(&eps)?,
                ),
                (
                    "beta_t ^ varpi_t ^ epsilon ^ nu",
                    beta.wedge(&varpi)?,
                    eps.wedge(&nu)?,
                ),
            ];
            for (name, a, b) in pairs {
                let r = bg.mix(&a, &b)?;
                cond.push(name, r);
            }
            out.quantity("nu", nu.clone());
            if !nu.is_zero() {
                out.note("nu is nonzero, so the reduction to nu = 0 does not apply");
            }
        }
        _ => unreachable!("case range checked above"),
    }
    let conditions_zero = Conditions::all_zero(&cond.list);
    out.residuals = cond.list;
    if bg.product().warping().is_constant() {
        let direct = direct_closed_maxwell(bg)?;
        out.invariant(
            "case conditions zero <=> closedness and Maxwell hold",
            conditions_zero == direct,
        );
        if conditions_zero != direct {
            out.note(format!(
                "case conditions {} but closedness and Maxwell {}",
                if conditions_zero { "hold" } else { "fail" },
                if direct { "hold" } else { "fail" }
            ));
        }
    }
    Ok(out.finish())
}

/// Appends the branch that holds, preferring the `c` branch; when neither
/// holds the `c` branch is reported.
fn choose_branch(
    list: &mut Vec<Residual>,
    out: &mut CheckOutcome,
    c_branch: Option<Vec<Residual>>,
    zero_branch: Vec<Residual>,
) {
    let zero_holds = Conditions::all_zero(&zero_branch);
    match c_branch {
        Some(cb) if Conditions::all_zero(&cb) || !zero_holds => {
            out.quantities.extend(zero_branch);
            list.extend(cb);
        }
        Some(cb) => {
            out.note("the c = 0 branch holds");
            out.quantities.extend(cb);
            list.extend(zero_branch);
        }
        None => {
            out.note("c = 0: only the degenerate branch applies");
            list.extend(zero_branch);
        }
    }
}
