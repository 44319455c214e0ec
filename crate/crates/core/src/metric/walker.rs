use crate::exterior::{Chart, ChartRef};
use crate::polyring::{Polynomial, Var};

use super::{
    linalg, make_metric, with_walker, MetricError, MetricRef, PolyMatrix, Signature, WalkerData,
};

/// `diag(entries)` on `chart`.
pub fn diagonal_metric(
    chart: &ChartRef,
    entries: &[Polynomial],
    declared: Option<Signature>,
) -> Result<MetricRef, MetricError> {
    let n = chart.dim();
    if entries.len() != n {
        return Err(MetricError::WrongShape(n));
    }
    let mut g = vec![vec![Polynomial::zero(); n]; n];
    for (i, e) in entries.iter().enumerate() {
        g[i][i] = e.clone();
    }
    make_metric(chart, g, None, declared)
}

/// The flat negative definite metric `-sum (dx^i)^2`.
pub fn flat_metric(chart: &ChartRef) -> Result<MetricRef, MetricError> {
    let entries = vec![Polynomial::from_int(-1); chart.dim()];
    diagonal_metric(chart, &entries, Some(Signature::riemannian(chart.dim())))
}

/// The Walker metric `2 dv du + rho + H du^2` on coordinates
/// `(v, x^1..x^k, u)`, with the 1-form `A` set to zero.
pub fn walker_metric(
    name: &str,
    v: &str,
    xs: &[&str],
    u: &str,
    rho: &PolyMatrix,
    h: &Polynomial,
) -> Result<MetricRef, MetricError> {
    let k = xs.len();
    if rho.len() != k || rho.iter().any(|r| r.len() != k) {
        return Err(MetricError::WrongShape(k));
    }
    let mut coords = vec![Var::new(v)];
    coords.extend(xs.iter().map(|x| Var::new(x)));
    coords.push(Var::new(u));
    let chart: ChartRef = Chart::from_vars(name, coords)?;
    let rho_inv = linalg::inverse_constant_det(rho)
        .map_err(|det| MetricError::NonPolynomialInverse(det.to_string()))?;
    let n = k + 2;
    let (iv, iu) = (0, n - 1);
    let mut g = vec![vec![Polynomial::zero(); n]; n];
    let mut inv = vec![vec![Polynomial::zero(); n]; n];
    g[iv][iu] = Polynomial::one();
    g[iu][iv] = Polynomial::one();
    g[iu][iu] = h.clone();
    inv[iv][iu] = Polynomial::one();
    inv[iu][iv] = Polynomial::one();
    inv[iv][iv] = -h;
    for i in 0..k {
        for j in 0..k {
            g[i + 1][j + 1] = rho[i][j].clone();
            inv[i + 1][j + 1] = rho_inv[i][j].clone();
        }
    }
    let metric = make_metric(&chart, g, Some(inv), Some(Signature::lorentzian(n)))?;
    let rho_chart = Chart::from_vars(&format!("{name}.rho"), chart.coordinates()[1..=k].to_vec())?;
    let rho = make_metric(&rho_chart, rho.clone(), Some(rho_inv), None)?;
    Ok(with_walker(
        metric,
        WalkerData {
            rho,
            h: h.clone(),
            v: iv,
            u: iu,
        },
    ))
}
