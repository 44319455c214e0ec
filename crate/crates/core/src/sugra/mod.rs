//! The flux ansatz `F = a~ + b~^nu + c~^delta + w~^eps + theta` on
//! `M^5 x_f M~^{1,5}`, the supergravity field equations and the special
//! solution families.

mod ansatz;
mod cases;
mod contact;
mod equations;
mod outcome;
mod solutions;
mod theorems;

use thiserror::Error;

use crate::exterior::ExteriorError;
use crate::metric::MetricError;
use crate::polyring::PolyError;
use crate::product::ProductError;

pub use ansatz::{assemble_flux, Background, Component, FluxAnsatz};
pub use cases::{case_components, check_shape, check_special_case};
pub use contact::{check_case5_contact, check_contact_structure};
pub use equations::{
    check_closedness, check_einstein, check_flux_norm, check_maxwell, einstein_residual,
    flux_norm_sq, half_flux_square_blocks, maxwell_residual, split_einstein, star_flux,
    star_flux_blocks,
};
pub use outcome::{CheckOutcome, Residual, ResidualValue, VerificationReport};
pub use solutions::{
    build_sol1, build_sol2, build_sol3, build_sol4, check_solution, walker_part, SolutionFamily,
    SolutionInstance,
};
pub use theorems::{check_theorem_conditions, Theorem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SugraError {
    #[error("the flux ansatz has no components")]
    EmptyAnsatz,
    #[error("component `{name}` must have degree {expected}, found {found}")]
    ComponentDegree {
        name: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("`{0}` and `{1}` must be present together")]
    Unpaired(&'static str, &'static str),
    #[error("{check} does not allow component `{component}`")]
    ShapeMismatch {
        check: String,
        component: &'static str,
    },
    #[error("{check} requires {requirement}")]
    Requirement { check: String, requirement: String },
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Sign and normalization conventions every report carries.
pub const CONVENTION_NOTES: &[&str] = &[
    "signature mostly minus: flat factors are -I, Walker metrics 2 dv du + rho + H du^2 with rho negative definite",
    "Hodge star defined by a ^ *b = <a, b> vol with vol = sqrt|det g| dx^1 ^ ... ^ dx^n",
    "d*F means d(*F); <a, b> sums over increasing index sets, so <dx^1 ^ dx^2, dx^1 ^ dx^2> = g^11 g^22 - (g^12)^2",
    "Ric_ij = d_k G^k_ij - d_j G^k_ik + G^k_kl G^l_ij - G^k_jl G^l_ik and Lap is the Laplace-Beltrami operator g^ij Hess_ij, so a Walker metric has Ric_uu = -1/2 Lap_rho H",
    "Einstein residual Ric + 1/2 <i_a F, i_b F> - 1/6 h |F|^2; Maxwell residual d*F - 1/2 F ^ F",
    "product coordinates list the five-dimensional factor first; the warping function must be constant",
    "with these conventions *_rho Omega = x2 dx1 and *_rho d *_rho Omega = -dx3 ^ dx4 for Omega = x2 dx2 ^ dx3 ^ dx4",
    "d*nu = -vol_M for nu = y1 dy1 on flat M, so the chain of case (6) closes with c = -1 for that data",
];
