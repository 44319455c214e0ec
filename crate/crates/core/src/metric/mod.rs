//! Pseudo-Riemannian metrics on charts: musical maps, inner products on
//! forms, volume forms and the Hodge star.
//!
//! Conventions: the listed coordinate order is the orientation, and
//! `<a, b> = sum_I (a^#)^I b_I` over increasing multi-indices, so that
//! `a ^ *b = <a, b> vol`.

pub mod linalg;
mod walker;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curvature::CurvatureData;
use crate::exterior::{same_chart, Blade, ChartRef, DifferentialForm, ExteriorError, VectorField};
use crate::polyring::{PolyError, Polynomial, Rational};

pub use linalg::PolyMatrix;
pub use walker::{diagonal_metric, flat_metric, walker_metric};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("metric matrix must be {0}x{0}")]
    WrongShape(usize),
    #[error("metric is not symmetric at entry ({0}, {1})")]
    NonSymmetric(usize, usize),
    #[error("determinant `{0}` is not a nonzero constant and no inverse was supplied")]
    NonPolynomialInverse(String),
    #[error("supplied inverse does not satisfy g * g_inv = I")]
    InverseMismatch,
    #[error("|det g| = `{0}` has no polynomial square root")]
    VolumeNotPolynomial(String),
    #[error("declared signature {declared} but the metric has signature {found}")]
    SignatureMismatch {
        declared: Signature,
        found: Signature,
    },
    #[error("metric is degenerate")]
    Degenerate,
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Counts of positive and negative directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
}

impl Signature {
    pub fn new(plus: usize, minus: usize) -> Self {
        Signature { plus, minus }
    }

    /// Negative definite, the Riemannian convention.
    pub fn riemannian(dim: usize) -> Self {
        Signature::new(0, dim)
    }

    /// Mostly minus Lorentzian `(1, dim - 1)`.
    pub fn lorentzian(dim: usize) -> Self {
        Signature::new(1, dim - 1)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.plus, self.minus)
    }
}

pub type MetricRef = Arc<ChartMetric>;

/// A validated polynomial metric with polynomial inverse.
pub struct ChartMetric {
    chart: ChartRef,
    g: PolyMatrix,
    g_inv: PolyMatrix,
    signature: Signature,
    det_sign: i64,
    sqrt_abs_det: Polynomial,
    walker: Option<WalkerData>,
    pub(crate) curvature: OnceLock<Arc<CurvatureData>>,
}

/// Provenance of a metric built by [`walker_metric`].
#[derive(Debug, Clone)]
pub struct WalkerData {
    /// The transversal metric on the `x` coordinates.
    pub rho: MetricRef,
    pub h: Polynomial,
    /// Positions of `v` and `u` in the Walker chart.
    pub v: usize,
    pub u: usize,
}

impl fmt::Debug for ChartMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChartMetric")
            .field("chart", &self.chart.name())
            .field("signature", &self.signature)
            .finish()
    }
}

/// Validates `g` (and `g_inv` when given) and builds the metric.
pub fn make_metric(
    chart: &ChartRef,
    g: PolyMatrix,
    g_inv: Option<PolyMatrix>,
    declared: Option<Signature>,
) -> Result<MetricRef, MetricError> {
    let n = chart.dim();
    if g.len() != n || g.iter().any(|r| r.len() != n) {
        return Err(MetricError::WrongShape(n));
    }
    for i in 0..n {
        for j in 0..i {
            if g[i][j] != g[j][i] {
                return Err(MetricError::NonSymmetric(i, j));
            }
        }
    }
    let g_inv = match g_inv {
        Some(inv) => {
            if inv.len() != n || inv.iter().any(|r| r.len() != n) {
                return Err(MetricError::WrongShape(n));
            }
            if linalg::mat_mul(&g, &inv) != linalg::identity(n) {
                return Err(MetricError::InverseMismatch);
            }
            inv
        }
        None => linalg::inverse_constant_det(&g)
            .map_err(|det| MetricError::NonPolynomialInverse(det.to_string()))?,
    };
    // a polynomial matrix with polynomial inverse has constant determinant
    let det = linalg::determinant(&g)
        .as_constant()
        .ok_or(MetricError::InverseMismatch)?;
    if num_traits::Zero::is_zero(&det) {
        return Err(MetricError::Degenerate);
    }
    let det_sign = if num_traits::Signed::is_negative(&det) {
        -1
    } else {
        1
    };
    let abs_det = Polynomial::constant(num_traits::Signed::abs(&det));
    let sqrt_abs_det = abs_det
        .sqrt()
        .map_err(|_| MetricError::VolumeNotPolynomial(abs_det.to_string()))?;
    let at_origin: Vec<Vec<Rational>> = g
        .iter()
        .map(|r| r.iter().map(Polynomial::constant_term).collect())
        .collect();
    let (plus, minus) = linalg::signature_of(&at_origin).ok_or(MetricError::Degenerate)?;
    let signature = Signature::new(plus, minus);
    if let Some(d) = declared {
        if d != signature {
            return Err(MetricError::SignatureMismatch {
                declared: d,
                found: signature,
            });
        }
    }
    Ok(Arc::new(ChartMetric {
        chart: chart.clone(),
        g,
        g_inv,
        signature,
        det_sign,
        sqrt_abs_det,
        walker: None,
        curvature: OnceLock::new(),
    }))
}

pub(crate) fn with_walker(m: MetricRef, data: WalkerData) -> MetricRef {
    Arc::new(ChartMetric {
        chart: m.chart.clone(),
        g: m.g.clone(),
        g_inv: m.g_inv.clone(),
        signature: m.signature,
        det_sign: m.det_sign,
        sqrt_abs_det: m.sqrt_abs_det.clone(),
        walker: Some(data),
        curvature: OnceLock::new(),
    })
}

impl ChartMetric {
    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn g(&self) -> &PolyMatrix {
        &self.g
    }

    pub fn g_inv(&self) -> &PolyMatrix {
        &self.g_inv
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn det_sign(&self) -> i64 {
        self.det_sign
    }

    pub fn walker(&self) -> Option<&WalkerData> {
        self.walker.as_ref()
    }

    pub fn sqrt_abs_det(&self) -> &Polynomial {
        &self.sqrt_abs_det
    }

    /// `g(X, Y)`.
    pub fn apply(&self, x: &VectorField, y: &VectorField) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (i, xi) in x.components() {
            for (j, yj) in y.components() {
                let gij = &self.g[*i][*j];
                if !gij.is_zero() {
                    acc += &(&(xi * yj) * gij);
                }
            }
        }
        acc
    }

    /// Index raising of a 1-form.
    pub fn sharp(&self, a: &DifferentialForm) -> Result<VectorField, MetricError> {
        same_chart(&self.chart, a.chart())?;
        if a.degree() != 1 {
            return Err(ExteriorError::DegreeMismatch {
                expected: 1,
                found: a.degree(),
            }
            .into());
        }
        let mut comps: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (b, p) in a.components() {
            let j = b.indices().next().unwrap();
            for i in 0..self.dim() {
                if !self.g_inv[i][j].is_zero() {
                    *comps.entry(i).or_default() += &(&self.g_inv[i][j] * p);
                }
            }
        }
        Ok(VectorField::from_components(&self.chart, comps))
    }

    /// Index lowering of a vector field.
    pub fn flat(&self, x: &VectorField) -> Result<DifferentialForm, MetricError> {
        same_chart(&self.chart, x.chart())?;
        let mut comps = Vec::new();
        for i in 0..self.dim() {
            let mut acc = Polynomial::zero();
            for (j, xj) in x.components() {
                if !self.g[i][*j].is_zero() {
                    acc += &(&self.g[i][*j] * xj);
                }
            }
            comps.push((Blade(1 << i), acc));
        }
        Ok(DifferentialForm::from_components(&self.chart, 1, comps)?)
    }

    /// Components of `(dx^J)^#` as a multivector: the minors of `g_inv`
    /// with columns `J`.
    fn raise_blade(&self, j: Blade) -> Vec<(Blade, Polynomial)> {
        let mut acc: BTreeMap<Blade, Polynomial> = BTreeMap::from([(Blade(0), Polynomial::one())]);
        for col in j.indices() {
            let mut next: BTreeMap<Blade, Polynomial> = BTreeMap::new();
            for (b, p) in &acc {
                for i in 0..self.dim() {
                    let gic = &self.g_inv[i][col];
                    if gic.is_zero() {
                        continue;
                    }
                    if let Some(s) = Blade::wedge_sign(*b, Blade(1 << i)) {
                        let t = p * gic;
                        let e = next.entry(Blade(b.0 | (1 << i))).or_default();
                        if s < 0 {
                            *e -= &t;
                        } else {
                            *e += &t;
                        }
                    }
                }
            }
            next.retain(|_, p| !p.is_zero());
            acc = next;
        }
        acc.into_iter().collect()
    }

    /// Contravariant components `(a^#)^I`.
    pub fn raise(&self, a: &DifferentialForm) -> BTreeMap<Blade, Polynomial> {
        let mut out: BTreeMap<Blade, Polynomial> = BTreeMap::new();
        for (j, p) in a.components() {
            for (i, m) in self.raise_blade(*j) {
                *out.entry(i).or_default() += &(&m * p);
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    pub fn inner_product(
        &self,
        a: &DifferentialForm,
        b: &DifferentialForm,
    ) -> Result<Polynomial, MetricError> {
        same_chart(&self.chart, a.chart())?;
        same_chart(&self.chart, b.chart())?;
        if a.degree() != b.degree() {
            return Err(ExteriorError::DegreeMismatch {
                expected: a.degree(),
                found: b.degree(),
            }
            .into());
        }
        let raised = self.raise(a);
        let mut acc = Polynomial::zero();
        for (i, q) in b.components() {
            if let Some(p) = raised.get(i) {
                acc += &(p * q);
            }
        }
        Ok(acc)
    }

    pub fn norm_sq(&self, a: &DifferentialForm) -> Result<Polynomial, MetricError> {
        self.inner_product(a, a)
    }

    pub fn is_null(&self, a: &DifferentialForm) -> Result<bool, MetricError> {
        Ok(self.norm_sq(a)?.is_zero())
    }

    pub fn volume_form(&self) -> DifferentialForm {
        let all = Blade(crate::exterior::full_mask(self.dim()));
        DifferentialForm::from_components(
            &self.chart,
            self.dim(),
            [(all, self.sqrt_abs_det.clone())],
        )
        .expect("top blade")
    }

    /// The Hodge star, characterised by `a ^ *b = <a, b> vol`.
    pub fn hodge_star(&self, b: &DifferentialForm) -> Result<DifferentialForm, MetricError> {
        same_chart(&self.chart, b.chart())?;
        let n = self.dim();
        let mut comps = Vec::new();
        for (i, p) in self.raise(b) {
            let c = i.complement(n);
            let s = Blade::wedge_sign(i, c).expect("disjoint");
            let t = &p * &self.sqrt_abs_det;
            comps.push((c, if s < 0 { -t } else { t }));
        }
        Ok(DifferentialForm::from_components(
            &self.chart,
            n - b.degree(),
            comps,
        )?)
    }

    /// The sign `s` with `** = s` on degree-p forms.
    pub fn star_star_sign(&self, p: usize) -> i64 {
        let n = self.dim();
        if (p * (n - p)).is_multiple_of(2) {
            self.det_sign
        } else {
            -self.det_sign
        }
    }

    /// `d * a`, the unnormalised codifferential.
    pub fn d_star(&self, a: &DifferentialForm) -> Result<DifferentialForm, MetricError> {
        Ok(self.hodge_star(a)?.d())
    }
}
