use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::polyring::{Polynomial, Rational};

use super::{same_chart, ChartRef, ExteriorError, VectorField};

/// A strictly increasing multi-index, stored as a bitmask of coordinate
/// positions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Blade(pub u32);

impl Blade {
    pub fn from_indices(indices: &[usize]) -> Option<Blade> {
        let mut mask = 0u32;
        for &i in indices {
            if mask & (1 << i) != 0 {
                return None;
            }
            mask |= 1 << i;
        }
        Some(Blade(mask))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    /// Positions in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    /// Number of positions in `self` strictly below `i`.
    pub fn count_below(self, i: usize) -> u32 {
        (self.0 & ((1u32 << i) - 1)).count_ones()
    }

    /// Sign of reordering `dx^a ^ dx^b` into increasing order, or `None`
    /// when the blades overlap.
    pub fn wedge_sign(a: Blade, b: Blade) -> Option<i64> {
        if a.0 & b.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        for j in b.indices() {
            inversions += (a.0 >> (j + 1)).count_ones();
        }
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }

    pub fn complement(self, dim: usize) -> Blade {
        Blade(!self.0 & full_mask(dim))
    }
}

pub(crate) fn full_mask(dim: usize) -> u32 {
    if dim >= 32 {
        u32::MAX
    } else {
        (1u32 << dim) - 1
    }
}

/// A degree-p form `sum_I a_I dx^I` on one chart. Zero components are never
/// stored.
#[derive(Clone, PartialEq, Eq)]
pub struct DifferentialForm {
    chart: ChartRef,
    degree: usize,
    components: BTreeMap<Blade, Polynomial>,
}

impl DifferentialForm {
    pub fn zero(chart: &ChartRef, degree: usize) -> Self {
        DifferentialForm {
            chart: chart.clone(),
            degree,
            components: BTreeMap::new(),
        }
    }

    pub fn function(chart: &ChartRef, p: Polynomial) -> Self {
        let mut out = DifferentialForm::zero(chart, 0);
        out.add_component(Blade(0), p);
        out
    }

    /// `coeff dx^{i_1} ^ ... ^ dx^{i_p}` for arbitrary distinct positions,
    /// sorted with the permutation sign.
    pub fn monomial(
        chart: &ChartRef,
        indices: &[usize],
        coeff: Polynomial,
    ) -> Result<Self, ExteriorError> {
        let mut out = DifferentialForm::zero(chart, indices.len());
        let mut acc = Blade(0);
        let mut sign = 1i64;
        for &i in indices {
            if i >= chart.dim() {
                return Err(ExteriorError::UnknownCoordinate(
                    format!("#{i}"),
                    chart.name().into(),
                ));
            }
            let s = Blade::wedge_sign(acc, Blade(1 << i))
                .ok_or_else(|| ExteriorError::RepeatedIndex(chart.coordinate(i).to_string()))?;
            sign *= s;
            acc = Blade(acc.0 | (1 << i));
        }
        out.add_component(acc, if sign < 0 { -coeff } else { coeff });
        Ok(out)
    }

    /// Same as [`DifferentialForm::monomial`] with coordinates given by name.
    pub fn from_names(
        chart: &ChartRef,
        names: &[&str],
        coeff: Polynomial,
    ) -> Result<Self, ExteriorError> {
        let idx = names
            .iter()
            .map(|n| chart.index_of_name(n))
            .collect::<Result<Vec<_>, _>>()?;
        DifferentialForm::monomial(chart, &idx, coeff)
    }

    /// `dx^i` for the coordinate at position `i`.
    pub fn coordinate_differential(chart: &ChartRef, i: usize) -> Self {
        let mut out = DifferentialForm::zero(chart, 1);
        out.add_component(Blade(1 << i), Polynomial::one());
        out
    }

    /// Builds a form from `(blade, coefficient)` pairs that must all have the
    /// given degree.
    pub fn from_components(
        chart: &ChartRef,
        degree: usize,
        components: impl IntoIterator<Item = (Blade, Polynomial)>,
    ) -> Result<Self, ExteriorError> {
        let mut out = DifferentialForm::zero(chart, degree);
        for (b, p) in components {
            if b.degree() != degree {
                return Err(ExteriorError::DegreeMismatch {
                    expected: degree,
                    found: b.degree(),
                });
            }
            out.add_component(b, p);
        }
        Ok(out)
    }

    fn add_component(&mut self, b: Blade, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        match self.components.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &p;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Blade, &Polynomial)> {
        self.components.iter()
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, b: Blade) -> Polynomial {
        self.components.get(&b).cloned().unwrap_or_default()
    }

    /// Coefficient of a 0-form.
    pub fn as_function(&self) -> Polynomial {
        self.component(Blade(0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coefficients(|p| p.scale(c))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.map_coefficients(|p| p.scale_int(n))
    }

    pub fn mul_function(&self, f: &Polynomial) -> Self {
        self.map_coefficients(|p| p * f)
    }

    pub fn map_coefficients(&self, mut op: impl FnMut(&Polynomial) -> Polynomial) -> Self {
        let mut out = DifferentialForm::zero(&self.chart, self.degree);
        for (b, p) in &self.components {
            out.add_component(*b, op(p));
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExteriorError> {
        same_chart(&self.chart, &other.chart)?;
        self.check_degree(other.degree)?;
        let mut out = self.clone();
        for (b, p) in &other.components {
            out.add_component(*b, p.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.try_add(&-other)
    }

    fn check_degree(&self, d: usize) -> Result<(), ExteriorError> {
        if self.degree == d {
            Ok(())
        } else {
            Err(ExteriorError::DegreeMismatch {
                expected: self.degree,
                found: d,
            })
        }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, ExteriorError> {
        same_chart(&self.chart, &other.chart)?;
        let degree = self.degree + other.degree;
        if degree > self.chart.dim() {
            return Err(ExteriorError::DegreeOverflow(
                self.degree,
                other.degree,
                self.chart.dim(),
            ));
        }
        let mut out = DifferentialForm::zero(&self.chart, degree);
        for (a, p) in &self.components {
            for (b, q) in &other.components {
                if let Some(s) = Blade::wedge_sign(*a, *b) {
                    let prod = p * q;
                    out.add_component(Blade(a.0 | b.0), if s < 0 { -prod } else { prod });
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative. A top-degree input yields the empty form of
    /// degree `dim + 1`.
    pub fn exterior_derivative(&self) -> Self {
        let mut out = DifferentialForm::zero(&self.chart, self.degree + 1);
        for (b, p) in &self.components {
            for v in p.variables() {
                let Some(k) = self.chart.index_of(&v) else {
                    continue;
                };
                if b.contains(k) {
                    continue;
                }
                let dp = p.partial_derivative(&v);
                let sign_odd = b.count_below(k) % 2 == 1;
                out.add_component(Blade(b.0 | (1 << k)), if sign_odd { -dp } else { dp });
            }
        }
        out
    }

    pub fn d(&self) -> Self {
        self.exterior_derivative()
    }

    /// Contraction `i_X` on the first slot.
    pub fn interior_product(&self, x: &VectorField) -> Result<Self, ExteriorError> {
        same_chart(&self.chart, x.chart())?;
        if self.degree == 0 {
            return Err(ExteriorError::InteriorOfFunction);
        }
        let mut out = DifferentialForm::zero(&self.chart, self.degree - 1);
        for (b, p) in &self.components {
            for k in b.indices() {
                let xk = x.component(k);
                if xk.is_zero() {
                    continue;
                }
                let t = p * &xk;
                let sign_odd = b.count_below(k) % 2 == 1;
                out.add_component(Blade(b.0 & !(1 << k)), if sign_odd { -t } else { t });
            }
        }
        Ok(out)
    }

    /// Contraction with the coordinate field at position `k`.
    pub fn interior_coordinate(&self, k: usize) -> Result<Self, ExteriorError> {
        if self.degree == 0 {
            return Err(ExteriorError::InteriorOfFunction);
        }
        let mut out = DifferentialForm::zero(&self.chart, self.degree - 1);
        for (b, p) in &self.components {
            if b.contains(k) {
                let sign_odd = b.count_below(k) % 2 == 1;
                out.add_component(
                    Blade(b.0 & !(1 << k)),
                    if sign_odd { -p.clone() } else { p.clone() },
                );
            }
        }
        Ok(out)
    }

    /// Re-indexes the form into a chart containing all of this chart's
    /// coordinates.
    pub fn lift_to(&self, target: &ChartRef) -> Result<Self, ExteriorError> {
        if std::sync::Arc::ptr_eq(&self.chart, target) {
            return Ok(self.clone());
        }
        let emb = target.embedding_of(&self.chart)?;
        let mut out = DifferentialForm::zero(target, self.degree);
        for (b, p) in &self.components {
            // sorting the images keeps the orientation only if emb is
            // increasing on b; track the permutation sign in general
            let images: Vec<usize> = b.indices().map(|i| emb[i]).collect();
            let f = DifferentialForm::monomial(target, &images, p.clone())?;
            for (bb, pp) in f.components {
                out.add_component(bb, pp);
            }
        }
        Ok(out)
    }

    /// Pulls a form back along the inclusion of `target` into this chart;
    /// fails unless every component uses only `target` coordinates.
    pub fn restrict_to(&self, target: &ChartRef) -> Result<Self, ExteriorError> {
        let emb = self.chart.embedding_of(target)?;
        let mut out = DifferentialForm::zero(target, self.degree);
        for (b, p) in &self.components {
            let mut local = Vec::new();
            for i in b.indices() {
                let pos = emb.iter().position(|&e| e == i).ok_or_else(|| {
                    ExteriorError::CoordinateMismatch {
                        coordinate: self.chart.coordinate(i).to_string(),
                        from: self.chart.name().into(),
                        to: target.name().into(),
                    }
                })?;
                local.push(pos);
            }
            let f = DifferentialForm::monomial(target, &local, p.clone())?;
            for (bb, pp) in f.components {
                out.add_component(bb, pp);
            }
        }
        Ok(out)
    }

    /// The part with exactly `k` indices inside `mask`.
    pub fn bidegree_part(&self, mask: u32, k: usize) -> Self {
        let mut out = DifferentialForm::zero(&self.chart, self.degree);
        for (b, p) in &self.components {
            if (b.0 & mask).count_ones() as usize == k {
                out.add_component(*b, p.clone());
            }
        }
        out
    }

    /// Whether `op` holds for every stored coefficient.
    pub fn all_coefficients(&self, op: impl FnMut(&Polynomial) -> bool) -> bool {
        self.components.values().all(op)
    }
}

impl Neg for &DifferentialForm {
    type Output = DifferentialForm;
    fn neg(self) -> DifferentialForm {
        self.map_coefficients(|p| -p)
    }
}

impl Neg for DifferentialForm {
    type Output = DifferentialForm;
    fn neg(self) -> DifferentialForm {
        -&self
    }
}

/// Panics on chart or degree mismatch; use [`DifferentialForm::try_add`] for
/// a fallible version.
impl Add for &DifferentialForm {
    type Output = DifferentialForm;
    fn add(self, rhs: &DifferentialForm) -> DifferentialForm {
        self.try_add(rhs).expect("form addition")
    }
}

impl Sub for &DifferentialForm {
    type Output = DifferentialForm;
    fn sub(self, rhs: &DifferentialForm) -> DifferentialForm {
        self.try_sub(rhs).expect("form subtraction")
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        for (k, (b, p)) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let basis: Vec<String> = b
                .indices()
                .map(|i| format!("d{}", self.chart.coordinate(i)))
                .collect();
            let basis = basis.join("^");
            if b.0 == 0 {
                write!(f, "({p})")?;
            } else if *p == Polynomial::one() {
                f.write_str(&basis)?;
            } else {
                write!(f, "({p}) {basis}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}; {}]({self})", self.chart.name(), self.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Chart;
    use crate::polyring::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn wedge_signs() {
        let c = Chart::new("N", &["x1", "x2", "x3", "x4"]).unwrap();
        let a = DifferentialForm::from_names(&c, &["x1", "x2"], Polynomial::one()).unwrap();
        let b = DifferentialForm::from_names(&c, &["x2", "x1"], Polynomial::one()).unwrap();
        assert_eq!(a, -&b);
        let omega =
            &a + &DifferentialForm::from_names(&c, &["x3", "x4"], Polynomial::one()).unwrap();
        let sq = omega.wedge(&omega).unwrap();
        let vol =
            DifferentialForm::from_names(&c, &["x1", "x2", "x3", "x4"], Polynomial::one()).unwrap();
        assert_eq!(sq, vol.scale_int(2));
        assert!(matches!(
            vol.wedge(&a),
            Err(ExteriorError::DegreeOverflow(4, 2, 4))
        ));
    }

    #[test]
    fn derivative_and_contraction() {
        let c = Chart::new("N", &["x1", "x2", "x3", "x4"]).unwrap();
        let omega_plus = DifferentialForm::from_names(&c, &["x2", "x3", "x4"], p("x2")).unwrap();
        assert!(omega_plus.d().is_zero());
        let f = DifferentialForm::from_names(&c, &["x2", "x3", "x4"], p("x1")).unwrap();
        assert_eq!(
            f.d(),
            DifferentialForm::from_names(&c, &["x1", "x2", "x3", "x4"], Polynomial::one()).unwrap()
        );
        let top = DifferentialForm::from_names(&c, &["x1", "x2", "x3", "x4"], p("x1")).unwrap();
        assert_eq!(top.d().degree(), 5);
        assert!(top.d().is_zero());
        let x2 = VectorField::coordinate(&c, 1);
        assert_eq!(
            omega_plus.interior_product(&x2).unwrap(),
            DifferentialForm::from_names(&c, &["x3", "x4"], p("x2")).unwrap()
        );
        let g = DifferentialForm::function(&c, p("x1"));
        assert_eq!(
            g.interior_product(&x2),
            Err(ExteriorError::InteriorOfFunction)
        );
    }

    #[test]
    fn lift_and_restrict() {
        let m = Chart::new("M", &["y1", "y2"]).unwrap();
        let big = Chart::new("X", &["a", "y2", "b", "y1"]).unwrap();
        let nu = DifferentialForm::from_names(&m, &["y1", "y2"], p("y1")).unwrap();
        let lifted = nu.lift_to(&big).unwrap();
        assert_eq!(
            lifted,
            DifferentialForm::from_names(&big, &["y1", "y2"], p("y1")).unwrap()
        );
        assert_eq!(lifted.restrict_to(&m).unwrap(), nu);
        let other = Chart::new("Z", &["z"]).unwrap();
        assert!(matches!(
            nu.lift_to(&other),
            Err(ExteriorError::CoordinateMismatch { .. })
        ));
    }
}
