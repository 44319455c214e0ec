use crate::curvature::curvature;
use crate::exterior::{Blade, DifferentialForm, VectorField};
use crate::metric::{MetricRef, PolyMatrix};
use crate::polyring::{ratio, Polynomial};
use crate::product::build_product;

use super::ansatz::{assemble_flux, Component, FluxAnsatz};
use super::equations::{contraction_gram, einstein_residual, matrix_is_zero, maxwell_residual};
use super::outcome::{CheckOutcome, ResidualValue};
use super::SugraError;

fn affine(terms: &[(&PolyMatrix, Polynomial)], n: usize) -> PolyMatrix {
    let mut out = vec![vec![Polynomial::zero(); n]; n];
    for (m, s) in terms {
        for i in 0..n {
            for j in 0..n {
                out[i][j] += &(&m[i][j] * s);
            }
        }
    }
    out
}

fn sub(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(p, q)| p - q).collect())
        .collect()
}

/// The case `F = theta = *eta` on `M^5 x M~`.
///
/// Reports `d theta`, `d*theta` against `d eta`, `d*eta`; the base Einstein
/// identity in the stated form `Ric^g = -1/3 g |eta|^2 + 1/2 eta eta` (as
/// "required minus actual") and in the form exact for this engine's
/// conventions; the fiber Einstein condition; and the full eleven-dimensional
/// residuals of the unwarped product.
pub fn check_case5_contact(
    g: &MetricRef,
    eta: &DifferentialForm,
    fiber: &MetricRef,
) -> Result<CheckOutcome, SugraError> {
    if g.dim() != 5 {
        return Err(SugraError::Requirement {
            check: "case5_contact".into(),
            requirement: "a five-dimensional base".into(),
        });
    }
    let n = g.dim();
    let theta = g.hodge_star(eta)?;
    let (dth, dsth) = (theta.d(), g.d_star(&theta)?);
    let (deta, dseta) = (eta.d(), g.d_star(eta)?);
    let eta_sq = g.norm_sq(eta)?;
    let theta_sq = g.norm_sq(&theta)?;
    let mut out = CheckOutcome::new("case5_contact");
    out.residual("d theta", dth.clone())
        .residual("d*theta", dsth.clone())
        .quantity("theta = *eta", theta.clone())
        .quantity("d eta", deta.clone())
        .quantity("d*eta", dseta.clone())
        .quantity("|eta|^2", eta_sq.clone())
        .quantity("|theta|^2", theta_sq.clone());
    out.invariant(
        "d theta = d*theta = 0 <=> d eta = d*eta = 0",
        (dth.is_zero() && dsth.is_zero()) == (deta.is_zero() && dseta.is_zero()),
    )
    .invariant(
        "|theta|^2 = det_sign |eta|^2",
        theta_sq == eta_sq.scale_int(g.det_sign()),
    );

    let ric = curvature(g).ricci.clone();
    let eta_eta = contraction_gram(g, eta)?;
    let printed = affine(
        &[
            (g.g(), eta_sq.scale(&ratio(-1, 3))),
            (&eta_eta, Polynomial::constant(ratio(1, 2))),
        ],
        n,
    );
    let exact = affine(
        &[
            (g.g(), eta_sq.scale(&ratio(1, 3))),
            (&eta_eta, Polynomial::constant(ratio(-1, 2))),
        ],
        n,
    );
    out.residual(
        "(-1/3 g |eta|^2 + 1/2 eta eta) - Ric^g",
        ResidualValue::square(g.chart(), sub(&printed, &ric)),
    )
    .quantity(
        "(1/3 g |eta|^2 - 1/2 eta eta) - Ric^g",
        ResidualValue::square(g.chart(), sub(&exact, &ric)),
    )
    .quantity("Ric^g", ResidualValue::square(g.chart(), ric));

    let ric_t = curvature(fiber).ricci.clone();
    let q = fiber.dim();
    out.residual(
        "|theta|^2/6 g~ - Ric^g~",
        ResidualValue::square(
            fiber.chart(),
            sub(
                &affine(&[(fiber.g(), theta_sq.scale(&ratio(1, 6)))], q),
                &ric_t,
            ),
        ),
    )
    .quantity(
        "|eta|^2/6 g~ - Ric^g~",
        ResidualValue::square(
            fiber.chart(),
            sub(
                &affine(&[(fiber.g(), eta_sq.scale(&ratio(1, 6)))], q),
                &ric_t,
            ),
        ),
    );

    let pc = build_product("X", g, fiber, &Polynomial::one())?;
    let bg = assemble_flux(
        "case5",
        &pc,
        &FluxAnsatz::new().with(Component::Theta, theta),
    )?;
    let einstein = einstein_residual(&bg)?;
    let eleven_zero =
        matrix_is_zero(&einstein) && maxwell_residual(&bg)?.is_zero() && bg.flux().d().is_zero();
    out.quantity("dF", bg.flux().d())
        .quantity("d*F - 1/2 F^F", maxwell_residual(&bg)?)
        .residual(
            "Ric + 1/2 <i F, i F> - 1/6 h |F|^2",
            ResidualValue::square(bg.chart(), einstein),
        );
    if !eleven_zero {
        out.note("the eleven-dimensional field equations fail on this product");
    }
    Ok(out.finish())
}

fn apply_endo(phi: &PolyMatrix, x: &VectorField) -> VectorField {
    let n = phi.len();
    VectorField::from_components(
        x.chart(),
        (0..n).map(|i| (i, (0..n).map(|j| &phi[i][j] * &x.component(j)).sum())),
    )
}

/// Almost contact metric structure `(phi, xi, eta, g)`: `eta(xi) = 1`,
/// `phi^2 = -I + eta (x) xi`, antisymmetry of `Phi(X, Y) = g(X, phi Y)`,
/// `d Phi`, `d eta` and the Nijenhuis tensor
/// `N(X,Y) = [phiX, phiY] + phi^2[X,Y] - phi[phiX, Y] - phi[X, phiY] + d eta(X,Y) xi`
/// on coordinate fields. `phi[i][j]` is the component `phi^i_j`.
pub fn check_contact_structure(
    g: &MetricRef,
    xi: &VectorField,
    eta: &DifferentialForm,
    phi: &PolyMatrix,
) -> Result<CheckOutcome, SugraError> {
    let n = g.dim();
    if n.is_multiple_of(2)
        || phi.len() != n
        || phi.iter().any(|r| r.len() != n)
        || eta.degree() != 1
    {
        return Err(SugraError::Requirement {
            check: "contact_structure".into(),
            requirement: "an odd dimension, an n x n endomorphism and a 1-form".into(),
        });
    }
    let chart = g.chart();
    let eta_c: Vec<Polynomial> = (0..n).map(|i| eta.component(Blade(1 << i))).collect();
    let xi_c: Vec<Polynomial> = (0..n).map(|i| xi.component(i)).collect();
    let mut out = CheckOutcome::new("contact_structure");

    let eta_xi: Polynomial = (0..n).map(|i| &eta_c[i] * &xi_c[i]).sum();
    out.residual("eta(xi) - 1", &eta_xi - &Polynomial::one());

    let phi2 = crate::metric::linalg::mat_mul(phi, phi);
    let mut sq = vec![vec![Polynomial::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let id = if i == j {
                Polynomial::one()
            } else {
                Polynomial::zero()
            };
            sq[i][j] = &(&phi2[i][j] + &id) - &(&xi_c[i] * &eta_c[j]);
        }
    }
    out.residual("phi^2 + I - eta (x) xi", ResidualValue::square(chart, sq));

    let big_phi = crate::metric::linalg::mat_mul(g.g(), phi);
    let anti: PolyMatrix = (0..n)
        .map(|i| (0..n).map(|j| &big_phi[i][j] + &big_phi[j][i]).collect())
        .collect();
    out.residual("Phi + Phi^T", ResidualValue::square(chart, anti));
    let mut two_form = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            two_form.push((Blade((1 << i) | (1 << j)), big_phi[i][j].clone()));
        }
    }
    let big_phi_form = DifferentialForm::from_components(chart, 2, two_form)?;
    let deta = eta.d();
    out.residual("d Phi", big_phi_form.d())
        .residual("d eta", deta.clone())
        .quantity("Phi", big_phi_form);

    // N on coordinate fields, stored per output component as a 2-form
    let fields: Vec<VectorField> = (0..n).map(|k| VectorField::coordinate(chart, k)).collect();
    let phi_fields: Vec<VectorField> = fields.iter().map(|x| apply_endo(phi, x)).collect();
    let mut n_comp: Vec<Vec<(Blade, Polynomial)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let a = phi_fields[i].bracket(&phi_fields[j])?;
            let b = apply_endo(phi, &phi_fields[i].bracket(&fields[j])?);
            let c = apply_endo(phi, &fields[i].bracket(&phi_fields[j])?);
            let de = deta
                .interior_coordinate(i)?
                .interior_coordinate(j)?
                .as_function();
            let total = a
                .try_add(&b.neg())?
                .try_add(&c.neg())?
                .try_add(&xi.scale_function(&de))?;
            for (k, p) in total.components() {
                n_comp[*k].push((Blade((1 << i) | (1 << j)), p.clone()));
            }
        }
    }
    for (k, comps) in n_comp.into_iter().enumerate() {
        out.residual(
            format!("N_phi^{}", chart.coordinate(k)),
            DifferentialForm::from_components(chart, 2, comps)?,
        );
    }
    Ok(out.finish())
}
