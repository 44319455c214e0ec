//! Exact determinant, adjugate inverse, and signature of polynomial matrices.

use num_traits::{Signed, Zero};

use crate::polyring::{Polynomial, Rational};

pub type PolyMatrix = Vec<Vec<Polynomial>>;

pub fn identity(n: usize) -> PolyMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Polynomial::one()
                    } else {
                        Polynomial::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![Polynomial::zero(); m]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += &(aik * &b[k][j]);
                }
            }
        }
    }
    out
}

pub fn transpose(a: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    (0..m)
        .map(|j| (0..n).map(|i| a[i][j].clone()).collect())
        .collect()
}

/// Index sets of the connected components of the nonzero pattern of a
/// symmetric matrix.
pub fn components(a: &PolyMatrix) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut comp = Vec::new();
        seen[start] = true;
        while let Some(i) = stack.pop() {
            comp.push(i);
            for j in 0..n {
                if !seen[j] && (!a[i][j].is_zero() || !a[j][i].is_zero()) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn sub_matrix(a: &PolyMatrix, rows: &[usize], cols: &[usize]) -> PolyMatrix {
    rows.iter()
        .map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect())
        .collect()
}

/// Laplace expansion by dynamic programming over column subsets.
fn det_dense(b: &PolyMatrix) -> Polynomial {
    let k = b.len();
    if k == 0 {
        return Polynomial::one();
    }
    let mut dp: Vec<Polynomial> = vec![Polynomial::zero(); 1 << k];
    dp[0] = Polynomial::one();
    for mask in 0usize..(1 << k) {
        if dp[mask].is_zero() {
            continue;
        }
        let r = mask.count_ones() as usize;
        if r == k {
            continue;
        }
        let cur = dp[mask].clone();
        for c in 0..k {
            if mask & (1 << c) != 0 || b[r][c].is_zero() {
                continue;
            }
            let above = (mask >> (c + 1)).count_ones();
            let t = &cur * &b[r][c];
            if above % 2 == 0 {
                dp[mask | (1 << c)] += &t;
            } else {
                dp[mask | (1 << c)] -= &t;
            }
        }
    }
    dp[(1 << k) - 1].clone()
}

pub fn determinant(a: &PolyMatrix) -> Polynomial {
    let mut det = Polynomial::one();
    for comp in components(a) {
        det = &det * &det_dense(&sub_matrix(a, &comp, &comp));
        if det.is_zero() {
            break;
        }
    }
    det
}

/// Inverse of a matrix whose determinant is a nonzero constant. Returns the
/// determinant as the error value otherwise.
pub fn inverse_constant_det(a: &PolyMatrix) -> Result<PolyMatrix, Polynomial> {
    let n = a.len();
    let mut inv = vec![vec![Polynomial::zero(); n]; n];
    let mut total = Polynomial::one();
    for comp in components(a) {
        let block = sub_matrix(a, &comp, &comp);
        let det = det_dense(&block);
        total = &total * &det;
        let Some(c) = det.as_constant().filter(|c| !c.is_zero()) else {
            return Err(determinant(a));
        };
        let inv_det = c.recip();
        let k = comp.len();
        for i in 0..k {
            for j in 0..k {
                let rows: Vec<usize> = (0..k).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..k).filter(|&s| s != j).collect();
                let minor = det_dense(&sub_matrix(&block, &rows, &cols));
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                inv[comp[j]][comp[i]] = cof.scale(&inv_det);
            }
        }
    }
    Ok(inv)
}

/// Counts of positive and negative eigenvalues of a symmetric rational
/// matrix, via congruence elimination. Returns `None` if singular.
pub fn signature_of(a: &[Vec<Rational>]) -> Option<(usize, usize)> {
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut n = m.len();
    let (mut plus, mut minus) = (0, 0);
    while n > 0 {
        let pivot = (0..n).find(|&i| !m[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // all diagonal entries vanish: add row/column j to i so that
                // the new diagonal entry is 2 m[i][j]
                let (i, j) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[i][j].is_zero())?;
                for k in 0..n {
                    let t = m[j][k].clone();
                    m[i][k] += t;
                }
                for k in 0..n {
                    let t = m[k][j].clone();
                    m[k][i] += t;
                }
                i
            }
        };
        let d = m[p][p].clone();
        if d.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        let mut next = Vec::with_capacity(n - 1);
        for i in (0..n).filter(|&i| i != p) {
            let row: Vec<Rational> = (0..n)
                .filter(|&j| j != p)
                .map(|j| &m[i][j] - &m[i][p] * &m[p][j] / &d)
                .collect();
            next.push(row);
        }
        m = next;
        n -= 1;
    }
    Some((plus, minus))
}
