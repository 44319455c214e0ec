//! Levi-Civita connection, Ricci tensor and derived operators.
//!
//! The Ricci convention is
//! `Ric_ij = d_k G^k_ij - d_j G^k_ik + G^k_kl G^l_ij - G^k_jl G^l_ik`, for
//! which the Walker metric `2 dv du + rho + H du^2` with flat negative definite
//! `rho` has the single entry `Ric_uu = -1/2 Laplacian(H)`.

use std::sync::Arc;

use crate::exterior::{DifferentialForm, VectorField};
use crate::metric::{ChartMetric, MetricError, PolyMatrix};
use crate::polyring::{ratio, Polynomial};

/// Christoffel symbols `christoffel[k][i][j]` and the Ricci matrix.
#[derive(Debug)]
pub struct CurvatureData {
    pub christoffel: Vec<Vec<Vec<Polynomial>>>,
    pub ricci: PolyMatrix,
}

fn compute_christoffel(m: &ChartMetric) -> Vec<Vec<Vec<Polynomial>>> {
    let n = m.dim();
    let chart = m.chart();
    let g = m.g();
    let dg: Vec<Vec<Vec<Polynomial>>> = (0..n)
        .map(|l| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| g[i][j].partial_derivative(chart.coordinate(l)))
                        .collect()
                })
                .collect()
        })
        .collect();
    let half = ratio(1, 2);
    // first kind: [ij, l]
    let mut first = vec![vec![vec![Polynomial::zero(); n]; n]; n];
    for i in 0..n {
        for j in i..n {
            for l in 0..n {
                let s = &(&dg[i][j][l] + &dg[j][i][l]) - &dg[l][i][j];
                first[i][j][l] = s.scale(&half);
                first[j][i][l] = first[i][j][l].clone();
            }
        }
    }
    let g_inv = m.g_inv();
    let mut gamma = vec![vec![vec![Polynomial::zero(); n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut acc = Polynomial::zero();
                for l in 0..n {
                    if !g_inv[k][l].is_zero() && !first[i][j][l].is_zero() {
                        acc += &(&g_inv[k][l] * &first[i][j][l]);
                    }
                }
                gamma[k][j][i] = acc.clone();
                gamma[k][i][j] = acc;
            }
        }
    }
    gamma
}

fn compute_ricci(m: &ChartMetric, gamma: &[Vec<Vec<Polynomial>>]) -> PolyMatrix {
    let n = m.dim();
    let chart = m.chart();
    let trace: Vec<Polynomial> = (0..n)
        .map(|l| (0..n).map(|k| gamma[k][k][l].clone()).sum())
        .collect();
    let mut ric = vec![vec![Polynomial::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let mut acc = Polynomial::zero();
            for k in 0..n {
                acc += &gamma[k][i][j].partial_derivative(chart.coordinate(k));
            }
            acc -= &trace[i].partial_derivative(chart.coordinate(j));
            for l in 0..n {
                if !trace[l].is_zero() && !gamma[l][i][j].is_zero() {
                    acc += &(&trace[l] * &gamma[l][i][j]);
                }
            }
            for k in 0..n {
                for l in 0..n {
                    if !gamma[k][j][l].is_zero() && !gamma[l][i][k].is_zero() {
                        acc -= &(&gamma[k][j][l] * &gamma[l][i][k]);
                    }
                }
            }
            ric[j][i] = acc.clone();
            ric[i][j] = acc;
        }
    }
    ric
}

/// Christoffel symbols and Ricci tensor, computed once per metric.
pub fn curvature(m: &ChartMetric) -> Arc<CurvatureData> {
    m.curvature
        .get_or_init(|| {
            let christoffel = compute_christoffel(m);
            let ricci = compute_ricci(m, &christoffel);
            Arc::new(CurvatureData { christoffel, ricci })
        })
        .clone()
}

pub fn christoffel(m: &ChartMetric) -> Vec<Vec<Vec<Polynomial>>> {
    curvature(m).christoffel.clone()
}

pub fn ricci(m: &ChartMetric) -> PolyMatrix {
    curvature(m).ricci.clone()
}

/// `H^f_ij = d_i d_j f - G^k_ij d_k f`.
pub fn hessian(m: &ChartMetric, f: &Polynomial) -> PolyMatrix {
    let n = m.dim();
    let chart = m.chart();
    let data = curvature(m);
    let df: Vec<Polynomial> = (0..n)
        .map(|k| f.partial_derivative(chart.coordinate(k)))
        .collect();
    let mut h = vec![vec![Polynomial::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let mut acc = df[i].partial_derivative(chart.coordinate(j));
            for k in 0..n {
                if !df[k].is_zero() && !data.christoffel[k][i][j].is_zero() {
                    acc -= &(&data.christoffel[k][i][j] * &df[k]);
                }
            }
            h[j][i] = acc.clone();
            h[i][j] = acc;
        }
    }
    h
}

/// `sum g^ij (d_i d_j f - G^k_ij d_k f)`.
pub fn laplace_beltrami(m: &ChartMetric, f: &Polynomial) -> Polynomial {
    trace(m, &hessian(m, f))
}

/// `g^ij T_ij`.
pub fn trace(m: &ChartMetric, t: &PolyMatrix) -> Polynomial {
    let n = m.dim();
    let mut acc = Polynomial::zero();
    for i in 0..n {
        for j in 0..n {
            if !m.g_inv()[i][j].is_zero() && !t[i][j].is_zero() {
                acc += &(&m.g_inv()[i][j] * &t[i][j]);
            }
        }
    }
    acc
}

pub fn gradient(m: &ChartMetric, f: &Polynomial) -> Result<VectorField, MetricError> {
    let df = DifferentialForm::function(m.chart(), f.clone()).d();
    m.sharp(&df)
}

/// `g(grad f, grad f)`.
pub fn grad_norm(m: &ChartMetric, f: &Polynomial) -> Result<Polynomial, MetricError> {
    let grad = gradient(m, f)?;
    Ok(m.apply(&grad, &grad))
}

/// Outcome of the total Ricci isotropy test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RicciIsotropy {
    pub isotropic: bool,
    /// First nonzero entry `(a, b, R_ac g^cd R_db)` when not isotropic.
    pub witness: Option<(usize, usize, Polynomial)>,
}

/// Tests `h(ric(X), ric(Y)) = 0` for all `X, Y`, i.e. `Ric g^-1 Ric = 0`.
pub fn is_totally_ricci_isotropic(m: &ChartMetric) -> RicciIsotropy {
    let ric = &curvature(m).ricci;
    let prod = crate::metric::linalg::mat_mul(&crate::metric::linalg::mat_mul(ric, m.g_inv()), ric);
    for (a, row) in prod.iter().enumerate() {
        for (b, p) in row.iter().enumerate() {
            if !p.is_zero() {
                return RicciIsotropy {
                    isotropic: false,
                    witness: Some((a, b, p.clone())),
                };
            }
        }
    }
    RicciIsotropy {
        isotropic: true,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Chart;
    use crate::metric::{diagonal_metric, flat_metric, walker_metric};
    use crate::polyring::{int, parse_polynomial};

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn flat_rho() -> PolyMatrix {
        (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| if i == j { p("-1") } else { p("0") })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn walker_ricci_single_entry() {
        let h = p("1/12*x1^4 + 1/12*x2^4 + u*x3");
        let w = walker_metric("W", "v", &["x1", "x2", "x3", "x4"], "u", &flat_rho(), &h).unwrap();
        let ric = ricci(&w);
        let flat = flat_metric(&Chart::new("N", &["x1", "x2", "x3", "x4"]).unwrap()).unwrap();
        let lap = laplace_beltrami(&flat, &h);
        assert_eq!(lap, p("-x1^2 - x2^2"));
        for i in 0..6 {
            for j in 0..6 {
                let expected = if (i, j) == (5, 5) {
                    lap.scale(&ratio(-1, 2))
                } else {
                    Polynomial::zero()
                };
                assert_eq!(ric[i][j], expected, "entry {i},{j}");
            }
        }
        assert!(is_totally_ricci_isotropic(&w).isotropic);
    }

    #[test]
    fn sphere_like_metric_is_not_isotropic() {
        // P^T diag(-1, -1) P with P = [[1, a*b], [0, 1]]: unit determinant,
        // nonzero Gauss curvature
        let c = Chart::new("S", &["a", "b"]).unwrap();
        let g = vec![vec![p("-1"), p("-a*b")], vec![p("-a*b"), p("-1 - a^2*b^2")]];
        let m = crate::metric::make_metric(&c, g, None, None).unwrap();
        assert_eq!(m.signature(), crate::metric::Signature::new(0, 2));
        let iso = is_totally_ricci_isotropic(&m);
        assert!(!iso.isotropic);
        assert!(iso.witness.is_some());
    }

    #[test]
    fn gradient_norm_and_trace() {
        let c = Chart::new("T", &["t"]).unwrap();
        let m = diagonal_metric(&c, &[p("-1")], None).unwrap();
        assert_eq!(grad_norm(&m, &p("t")).unwrap(), p("-1"));
        assert_eq!(
            laplace_beltrami(&m, &p("t^2")),
            Polynomial::constant(int(-2))
        );
    }
}
