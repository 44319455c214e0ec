//! Exact exterior calculus on polynomial coordinate charts, with verifiers for
//! the eleven-dimensional supergravity field equations on products
//! `M^5 x_f M~^{1,5}`.

pub mod checks;
pub mod curvature;
pub mod exterior;
pub mod fixtures;
pub mod gen;
pub mod metric;
pub mod polyring;
pub mod product;
pub mod sugra;
