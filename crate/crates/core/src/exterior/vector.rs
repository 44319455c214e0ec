use std::collections::BTreeMap;
use std::fmt;

use crate::polyring::Polynomial;

use super::{same_chart, ChartRef, ExteriorError};

/// A vector field `sum_k X^k d/dx^k` on one chart.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    chart: ChartRef,
    components: BTreeMap<usize, Polynomial>,
}

impl VectorField {
    pub fn zero(chart: &ChartRef) -> Self {
        VectorField {
            chart: chart.clone(),
            components: BTreeMap::new(),
        }
    }

    /// The coordinate field at position `k`.
    pub fn coordinate(chart: &ChartRef, k: usize) -> Self {
        VectorField::from_components(chart, [(k, Polynomial::one())])
    }

    pub fn from_components(
        chart: &ChartRef,
        components: impl IntoIterator<Item = (usize, Polynomial)>,
    ) -> Self {
        let mut out = VectorField::zero(chart);
        for (k, p) in components {
            assert!(k < chart.dim(), "component index out of range");
            out.add(k, p);
        }
        out
    }

    fn add(&mut self, k: usize, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        let e = self.components.entry(k).or_default();
        *e += &p;
        if e.is_zero() {
            self.components.remove(&k);
        }
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn component(&self, k: usize) -> Polynomial {
        self.components.get(&k).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (&usize, &Polynomial)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn scale_function(&self, f: &Polynomial) -> Self {
        VectorField::from_components(
            &self.chart,
            self.components.iter().map(|(k, p)| (*k, p * f)),
        )
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExteriorError> {
        same_chart(&self.chart, &other.chart)?;
        let mut out = self.clone();
        for (k, p) in &other.components {
            out.add(*k, p.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        VectorField::from_components(&self.chart, self.components.iter().map(|(k, p)| (*k, -p)))
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        self.components
            .iter()
            .map(|(k, p)| p * &f.partial_derivative(self.chart.coordinate(*k)))
            .sum()
    }

    /// Lie bracket `[X, Y]`.
    pub fn bracket(&self, other: &Self) -> Result<Self, ExteriorError> {
        same_chart(&self.chart, &other.chart)?;
        let mut out = VectorField::zero(&self.chart);
        for k in 0..self.chart.dim() {
            let a = self.apply(&other.component(k));
            let b = other.apply(&self.component(k));
            out.add(k, &a - &b);
        }
        Ok(out)
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, p)) in self.components.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({p}) d/d{}", self.chart.coordinate(*k))?;
        }
        Ok(())
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector[{}]({self})", self.chart.name())
    }
}
