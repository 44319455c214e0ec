use std::fmt;
use std::str::FromStr;

use crate::curvature::{curvature, is_totally_ricci_isotropic};
use crate::exterior::DifferentialForm;
use crate::metric::PolyMatrix;
use crate::polyring::{ratio, Polynomial, Rational};

use super::ansatz::{Background, Component};
use super::cases::check_shape;
use super::equations::{
    contraction_gram, contraction_pairing, einstein_residual, maxwell_residual,
};
use super::outcome::{CheckOutcome, ResidualValue};
use super::SugraError;

use Component::*;

/// The existence theorems for unwarped products with a Walker-type factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    /// `F = a~` null, closed and co-closed; `Ric^g = 0`,
    /// `Ric^g~ = -1/2 <i a~, i a~>`.
    NullFourForm,
    /// `F = b~ ^ nu` with `b~` null and `|nu|^2 = -1`;
    /// `Ric^g~ = 1/2 <i b~, i b~>`.
    NullThreeForm,
    /// `F = w~ ^ eps` with `w~` null and `|eps|^2 = -2`; `Ric^g~ = w~ w~`.
    NullOneForm,
    /// `F = a~ + b~ ^ nu` under the case (6) system with
    /// `<i a~, b~> = 0`.
    Mixed,
    /// `F = theta` of constant length, `Ric^g = |theta|^2/6 g - 1/2 <i theta, i theta>`
    /// and an Einstein fiber with constant `|theta|^2/6`.
    ConstantTheta,
}

impl Theorem {
    pub const ALL: [Theorem; 5] = [
        Theorem::NullFourForm,
        Theorem::NullThreeForm,
        Theorem::NullOneForm,
        Theorem::Mixed,
        Theorem::ConstantTheta,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Theorem::NullFourForm => "thmnew1",
            Theorem::NullThreeForm => "newthem2",
            Theorem::NullOneForm => "null13form",
            Theorem::Mixed => "spckckck",
            Theorem::ConstantTheta => "ineee",
        }
    }

    fn components(self) -> &'static [Component] {
        match self {
            Theorem::NullFourForm => &[Alpha],
            Theorem::NullThreeForm => &[Beta, Nu],
            Theorem::NullOneForm => &[Varpi, Epsilon],
            Theorem::Mixed => &[Alpha, Beta, Nu],
            Theorem::ConstantTheta => &[Theta],
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for Theorem {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.key() == s)
            .ok_or_else(|| format!("unknown theorem `{s}`"))
    }
}

fn combine(terms: &[(&PolyMatrix, Polynomial)], base: &PolyMatrix) -> PolyMatrix {
    let mut out = base.clone();
    for (m, s) in terms {
        for (i, row) in m.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                out[i][j] += &(p * s);
            }
        }
    }
    out
}

fn one_form(
    bg: &Background,
    on_fiber: bool,
    comps: Vec<Polynomial>,
) -> Result<DifferentialForm, SugraError> {
    let m = if on_fiber {
        bg.product().fiber()
    } else {
        bg.product().base()
    };
    let items = comps
        .into_iter()
        .enumerate()
        .map(|(i, p)| (crate::exterior::Blade(1 << i), p));
    Ok(DifferentialForm::from_components(m.chart(), 1, items)?)
}

/// Hypotheses of `theorem` as residuals, followed by the field equations.
///
/// The theorem is reproduced on this background when every hypothesis and
/// every equation residual vanishes; the invariant records the implication
/// "hypotheses zero => equations zero".
pub fn check_theorem_conditions(
    bg: &Background,
    theorem: Theorem,
    c: &Rational,
) -> Result<CheckOutcome, SugraError> {
    check_shape(bg, theorem.key(), theorem.components())?;
    let (g, gt) = (bg.product().base(), bg.product().fiber());
    let mut out = CheckOutcome::new(theorem.key());
    let f_minus_one = bg.product().warping() - &Polynomial::one();
    let ric_g = curvature(g).ricci.clone();
    let ric_t = curvature(gt).ricci.clone();
    let half = Polynomial::constant(ratio(1, 2));
    let comp = |k: Component| bg.comp(k);
    out.residual("f - 1", f_minus_one);
    match theorem {
        Theorem::NullFourForm => {
            let a = comp(Alpha);
            out.residual("|alpha_t|^2", gt.norm_sq(&a)?)
                .residual("d alpha_t", a.d())
                .residual("d*~alpha_t", gt.d_star(&a)?)
                .residual("Ric^g", ResidualValue::square(g.chart(), ric_g))
                .residual(
                    "Ric^g~ + 1/2 <i alpha_t, i alpha_t>",
                    ResidualValue::square(
                        gt.chart(),
                        combine(&[(&contraction_gram(gt, &a)?, half)], &ric_t),
                    ),
                );
        }
        Theorem::NullThreeForm => {
            let (b, nu) = (comp(Beta), comp(Nu));
            out.residual("|beta_t|^2", gt.norm_sq(&b)?)
                .residual("|nu|^2 + 1", &g.norm_sq(&nu)? + &Polynomial::one())
                .residual("d beta_t", b.d())
                .residual("d*~beta_t", gt.d_star(&b)?)
                .residual("d nu", nu.d())
                .residual("d*nu", g.d_star(&nu)?)
                .residual("Ric^g", ResidualValue::square(g.chart(), ric_g))
                .residual(
                    "Ric^g~ - 1/2 <i beta_t, i beta_t>",
                    ResidualValue::square(
                        gt.chart(),
                        combine(&[(&contraction_gram(gt, &b)?, -half)], &ric_t),
                    ),
                );
        }
        Theorem::NullOneForm => {
            let (w, e) = (comp(Varpi), comp(Epsilon));
            out.residual("|varpi_t|^2", gt.norm_sq(&w)?)
                .residual(
                    "|epsilon|^2 + 2",
                    &g.norm_sq(&e)? + &Polynomial::from_int(2),
                )
                .residual("d varpi_t", w.d())
                .residual("d*~varpi_t", gt.d_star(&w)?)
                .residual("d epsilon", e.d())
                .residual("d*epsilon", g.d_star(&e)?)
                .residual("Ric^g", ResidualValue::square(g.chart(), ric_g))
                .residual(
                    "Ric^g~ - varpi_t varpi_t",
                    ResidualValue::square(
                        gt.chart(),
                        combine(
                            &[(&contraction_gram(gt, &w)?, Polynomial::from_int(-1))],
                            &ric_t,
                        ),
                    ),
                );
        }
        Theorem::Mixed => {
            let (a, b, nu) = (comp(Alpha), comp(Beta), comp(Nu));
            if c == &Rational::from_integer(0.into()) {
                return Err(SugraError::Requirement {
                    check: theorem.key().into(),
                    requirement: "a nonzero constant c".into(),
                });
            }
            let nu_sq = g.norm_sq(&nu)?;
            let vol = g.volume_form().scale(c);
            let ds_alpha = gt.d_star(&a)?;
            out.residual("|alpha_t|^2", gt.norm_sq(&a)?)
                .residual("|beta_t|^2", gt.norm_sq(&b)?)
                .residual("Ric^g", ResidualValue::square(g.chart(), ric_g))
                .residual("d nu", nu.d())
                .residual("d*nu - c vol_M", g.d_star(&nu)?.try_sub(&vol)?)
                .residual("d alpha_t", a.d())
                .residual("d beta_t", b.d())
                .residual("d*~beta_t", gt.d_star(&b)?)
                .residual(
                    "*~beta_t + (1/c) d*~alpha_t",
                    gt.hodge_star(&b)?.try_add(&ds_alpha.scale(&c.recip()))?,
                )
                .residual(
                    "<i alpha_t, beta_t>",
                    one_form(bg, true, contraction_pairing(gt, &a, &b)?)?,
                )
                .residual(
                    "Ric^g~ + 1/2 <i alpha_t, i alpha_t> + 1/2 |nu|^2 <i beta_t, i beta_t>",
                    ResidualValue::square(
                        gt.chart(),
                        combine(
                            &[
                                (&contraction_gram(gt, &a)?, half.clone()),
                                (&contraction_gram(gt, &b)?, &half * &nu_sq),
                            ],
                            &ric_t,
                        ),
                    ),
                );
        }
        Theorem::ConstantTheta => {
            let th = comp(Theta);
            let norm = g.norm_sq(&th)?;
            let sixth = norm.scale(&ratio(1, 6));
            let ric_rhs = combine(
                &[(g.g(), sixth.clone()), (&contraction_gram(g, &th)?, -half)],
                &vec![vec![Polynomial::zero(); g.dim()]; g.dim()],
            );
            let hh: PolyMatrix = ric_g
                .iter()
                .zip(&ric_rhs)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - b).collect())
                .collect();
            let vv = combine(&[(gt.g(), -sixth)], &ric_t);
            out.residual("d theta", th.d())
                .residual("d*theta", g.d_star(&th)?)
                .residual(
                    "d |theta|^2",
                    DifferentialForm::function(g.chart(), norm).d(),
                )
                .residual(
                    "Ric^g - |theta|^2/6 g + 1/2 <i theta, i theta>",
                    ResidualValue::square(g.chart(), hh),
                )
                .residual(
                    "Ric^g~ - |theta|^2/6 g~",
                    ResidualValue::square(gt.chart(), vv),
                );
        }
    }
    let hypotheses_zero = out.residuals_zero();
    let closed = bg.flux().d();
    let maxwell = maxwell_residual(bg)?;
    let einstein = einstein_residual(bg)?;
    let equations_zero =
        closed.is_zero() && maxwell.is_zero() && super::equations::matrix_is_zero(&einstein);
    out.residual("dF", closed)
        .residual("d*F - 1/2 F^F", maxwell)
        .residual(
            "Ric + 1/2 <i F, i F> - 1/6 h |F|^2",
            ResidualValue::square(bg.chart(), einstein),
        );
    out.invariant(
        "hypotheses zero => field equations zero",
        !hypotheses_zero || equations_zero,
    );
    if theorem == Theorem::NullOneForm && hypotheses_zero {
        out.invariant(
            "assembled metric is totally Ricci isotropic",
            is_totally_ricci_isotropic(bg.metric()).isotropic,
        );
    }
    Ok(out.finish())
}
