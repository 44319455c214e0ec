//! Warped products `h = g + f^2 g~` and the block Ricci oracle.

use thiserror::Error;

use crate::curvature::{curvature, grad_norm, hessian, laplace_beltrami};
use crate::exterior::{Chart, ChartRef, DifferentialForm, ExteriorError};
use crate::metric::{make_metric, MetricError, MetricRef, PolyMatrix, Signature};
use crate::polyring::{PolyError, Polynomial, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error("coordinate `{0}` belongs to both factors")]
    OverlappingCoordinates(String),
    #[error("warping function depends on `{0}`, which is not a base coordinate")]
    WarpingNotOnBase(String),
    #[error("warping function must be nonzero")]
    ZeroWarping,
    #[error("warping `{0}` is not constant, so the product metric has no polynomial inverse")]
    NonPolynomialInverse(String),
    #[error("oracle division is not polynomial: {0}")]
    NonPolynomialDivision(PolyError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// `M x_f M~` with base coordinates first.
#[derive(Debug, Clone)]
pub struct ProductChart {
    base: MetricRef,
    fiber: MetricRef,
    warping: Polynomial,
    metric: MetricRef,
    base_mask: u32,
    fiber_mask: u32,
}

/// Assembles the block metric `g + f^2 g~` on the union chart.
pub fn build_product(
    name: &str,
    base: &MetricRef,
    fiber: &MetricRef,
    warping: &Polynomial,
) -> Result<ProductChart, ProductError> {
    if warping.is_zero() {
        return Err(ProductError::ZeroWarping);
    }
    for c in fiber.chart().coordinates() {
        if base.chart().index_of(c).is_some() {
            return Err(ProductError::OverlappingCoordinates(c.to_string()));
        }
    }
    for v in warping.variables() {
        if base.chart().index_of(&v).is_none() {
            return Err(ProductError::WarpingNotOnBase(v.to_string()));
        }
    }
    let f_const: Rational = warping
        .as_constant()
        .ok_or_else(|| ProductError::NonPolynomialInverse(warping.to_string()))?;
    let mut coords = base.chart().coordinates().to_vec();
    coords.extend(fiber.chart().coordinates().iter().cloned());
    let chart: ChartRef = Chart::from_vars(name, coords)?;
    let (p, q) = (base.dim(), fiber.dim());
    let n = p + q;
    let f2 = warping * warping;
    let inv_f2 = (&f_const * &f_const).recip();
    let mut g = vec![vec![Polynomial::zero(); n]; n];
    let mut inv = vec![vec![Polynomial::zero(); n]; n];
    for i in 0..p {
        for j in 0..p {
            g[i][j] = base.g()[i][j].clone();
            inv[i][j] = base.g_inv()[i][j].clone();
        }
    }
    for i in 0..q {
        for j in 0..q {
            g[p + i][p + j] = &fiber.g()[i][j] * &f2;
            inv[p + i][p + j] = fiber.g_inv()[i][j].scale(&inv_f2);
        }
    }
    let sb = base.signature();
    let sf = fiber.signature();
    let declared = Signature::new(sb.plus + sf.plus, sb.minus + sf.minus);
    let metric = make_metric(&chart, g, Some(inv), Some(declared))?;
    let base_mask = chart.mask_of(base.chart())?;
    let fiber_mask = chart.mask_of(fiber.chart())?;
    Ok(ProductChart {
        base: base.clone(),
        fiber: fiber.clone(),
        warping: warping.clone(),
        metric,
        base_mask,
        fiber_mask,
    })
}

impl ProductChart {
    pub fn base(&self) -> &MetricRef {
        &self.base
    }

    pub fn fiber(&self) -> &MetricRef {
        &self.fiber
    }

    pub fn warping(&self) -> &Polynomial {
        &self.warping
    }

    pub fn metric(&self) -> &MetricRef {
        &self.metric
    }

    pub fn chart(&self) -> &ChartRef {
        self.metric.chart()
    }

    pub fn base_mask(&self) -> u32 {
        self.base_mask
    }

    pub fn fiber_mask(&self) -> u32 {
        self.fiber_mask
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber.dim()
    }

    pub fn lift(&self, a: &DifferentialForm) -> Result<DifferentialForm, ExteriorError> {
        a.lift_to(self.chart())
    }

    /// `f^k` for a signed exponent, when polynomial.
    pub fn warping_power(&self, k: i32) -> Result<Polynomial, ProductError> {
        if k >= 0 {
            return Ok(self.warping.pow(k as u32));
        }
        let c = self
            .warping
            .as_constant()
            .ok_or_else(|| ProductError::NonPolynomialInverse(self.warping.to_string()))?;
        Ok(Polynomial::constant(num_traits::pow(
            c.recip(),
            (-k) as usize,
        )))
    }
}

/// The block Ricci tensor predicted by the warped product formulas:
/// `Ric^g - (dim M~ / f) H^f` on the base block,
/// `Ric^g~ - h f^` on the fiber block with
/// `f^ = Lap f / f + (dim M~ - 1) g(grad f, grad f) / f^2`, zero on mixed
/// entries.
pub fn warped_ricci_oracle(pc: &ProductChart) -> Result<PolyMatrix, ProductError> {
    let (p, q) = (pc.base_dim(), pc.fiber_dim());
    let n = p + q;
    let f = pc.warping();
    let div = |a: &Polynomial, b: &Polynomial| {
        a.div_exact(b).map_err(ProductError::NonPolynomialDivision)
    };
    let ric_g = curvature(pc.base()).ricci.clone();
    let ric_t = curvature(pc.fiber()).ricci.clone();
    let hf = hessian(pc.base(), f);
    let lap = laplace_beltrami(pc.base(), f);
    let gn = grad_norm(pc.base(), f)?;
    let f2 = f * f;
    let f_hat = &div(&lap, f)? + &div(&gn.scale_int(q as i64 - 1), &f2)?;
    let mut out = vec![vec![Polynomial::zero(); n]; n];
    for i in 0..p {
        for j in 0..p {
            out[i][j] = &ric_g[i][j] - &div(&hf[i][j].scale_int(q as i64), f)?;
        }
    }
    let h = pc.metric().g();
    for i in 0..q {
        for j in 0..q {
            out[p + i][p + j] = &ric_t[i][j] - &(&h[p + i][p + j] * &f_hat);
        }
    }
    Ok(out)
}

/// Residuals of the warped inner product and Hodge star laws for a fiber
/// form `a` of degree `k~` and a base form `b` of degree `k`:
/// `<a^b, a^b>_h - f^(-2k~) <a, a>_g~ <b, b>_g` and
/// `*(a^b) - (-1)^(k (q - k~)) f^(q - 2k~) *~a ^ *b` with `q = dim M~`.
pub fn warp_law_residuals(
    pc: &ProductChart,
    a: &DifferentialForm,
    b: &DifferentialForm,
) -> Result<(Polynomial, DifferentialForm), ProductError> {
    let (kt, k, q) = (a.degree(), b.degree(), pc.fiber_dim());
    let h = pc.metric();
    let ab = pc.lift(a)?.wedge(&pc.lift(b)?)?;
    let norm = &h.norm_sq(&ab)?
        - &(&pc.warping_power(-2 * kt as i32)?
            * &(&pc.fiber().norm_sq(a)? * &pc.base().norm_sq(b)?));
    let sign = if (k * (q - kt)) % 2 == 0 { 1 } else { -1 };
    let blocks = pc
        .lift(&pc.fiber().hodge_star(a)?)?
        .wedge(&pc.lift(&pc.base().hodge_star(b)?)?)?
        .mul_function(&pc.warping_power(q as i32 - 2 * kt as i32)?)
        .scale_int(sign);
    Ok((norm, h.hodge_star(&ab)?.try_sub(&blocks)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::ricci;
    use crate::metric::{flat_metric, walker_metric};
    use crate::polyring::parse_polynomial;

    #[test]
    fn walker_times_flat() {
        let rho: PolyMatrix = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| Polynomial::from_int(if i == j { -1 } else { 0 }))
                    .collect()
            })
            .collect();
        let h = parse_polynomial("1/8*x1^2 + 1/8*x2^2 + 1/8*x3^2 + 1/8*x4^2").unwrap();
        let w = walker_metric("W", "v", &["x1", "x2", "x3", "x4"], "u", &rho, &h).unwrap();
        let m = flat_metric(&Chart::new("M", &["y1", "y2", "y3", "y4", "y5"]).unwrap()).unwrap();
        for f in ["1", "2"] {
            let pc = build_product("X", &m, &w, &parse_polynomial(f).unwrap()).unwrap();
            assert_eq!(pc.metric().signature(), Signature::new(1, 10));
            assert_eq!(warped_ricci_oracle(&pc).unwrap(), ricci(pc.metric()));
        }
        let bad = build_product("X", &m, &w, &parse_polynomial("y1").unwrap());
        assert!(matches!(bad, Err(ProductError::NonPolynomialInverse(_))));
        let off = build_product("X", &m, &w, &parse_polynomial("x1 + 1").unwrap());
        assert!(matches!(off, Err(ProductError::WarpingNotOnBase(_))));
    }
}
