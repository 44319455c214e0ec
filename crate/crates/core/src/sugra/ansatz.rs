use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::One;

use crate::exterior::{ChartRef, DifferentialForm};
use crate::metric::{MetricRef, PolyMatrix};
use crate::polyring::{Polynomial, Rational};
use crate::product::ProductChart;

use super::SugraError;

/// The eight summands of the flux ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    Alpha,
    Beta,
    Gamma,
    Varpi,
    Nu,
    Delta,
    Epsilon,
    Theta,
}

impl Component {
    pub const ALL: [Component; 8] = [
        Component::Alpha,
        Component::Beta,
        Component::Gamma,
        Component::Varpi,
        Component::Nu,
        Component::Delta,
        Component::Epsilon,
        Component::Theta,
    ];

    /// Manifest key.
    pub fn key(self) -> &'static str {
        match self {
            Component::Alpha => "alpha_t",
            Component::Beta => "beta_t",
            Component::Gamma => "gamma_t",
            Component::Varpi => "varpi_t",
            Component::Nu => "nu",
            Component::Delta => "delta",
            Component::Epsilon => "epsilon",
            Component::Theta => "theta",
        }
    }

    pub fn from_key(key: &str) -> Option<Component> {
        Component::ALL.into_iter().find(|c| c.key() == key)
    }

    pub fn degree(self) -> usize {
        match self {
            Component::Alpha | Component::Theta => 4,
            Component::Beta | Component::Epsilon => 3,
            Component::Gamma | Component::Delta => 2,
            Component::Varpi | Component::Nu => 1,
        }
    }

    /// Whether the component lives on the Lorentzian factor.
    pub fn on_fiber(self) -> bool {
        matches!(
            self,
            Component::Alpha | Component::Beta | Component::Gamma | Component::Varpi
        )
    }

    /// The component it is wedged with in the ansatz, if any.
    pub fn partner(self) -> Option<Component> {
        match self {
            Component::Beta => Some(Component::Nu),
            Component::Nu => Some(Component::Beta),
            Component::Gamma => Some(Component::Delta),
            Component::Delta => Some(Component::Gamma),
            Component::Varpi => Some(Component::Epsilon),
            Component::Epsilon => Some(Component::Varpi),
            _ => None,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// Components of `F`; absent components are `None`. `c` is the constant of
/// the special cases (3), (6) and (7).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FluxAnsatz {
    forms: [Option<DifferentialForm>; 8],
    pub c: Rational,
}

impl Default for FluxAnsatz {
    fn default() -> Self {
        FluxAnsatz {
            forms: Default::default(),
            c: Rational::one(),
        }
    }
}

impl FluxAnsatz {
    pub fn new() -> Self {
        FluxAnsatz::default()
    }

    pub fn with(mut self, c: Component, form: DifferentialForm) -> Self {
        self.forms[c as usize] = Some(form);
        self
    }

    pub fn set(&mut self, c: Component, form: Option<DifferentialForm>) {
        self.forms[c as usize] = form;
    }

    pub fn with_c(mut self, c: Rational) -> Self {
        self.c = c;
        self
    }

    pub fn get(&self, c: Component) -> Option<&DifferentialForm> {
        self.forms[c as usize].as_ref()
    }

    pub fn present(&self) -> impl Iterator<Item = Component> + '_ {
        Component::ALL
            .into_iter()
            .filter(|c| self.get(*c).is_some())
    }
}

#[derive(Default)]
struct Cache {
    star_flux: OnceLock<DifferentialForm>,
    maxwell: OnceLock<DifferentialForm>,
    einstein: OnceLock<PolyMatrix>,
}

/// An assembled product metric and flux, with the ansatz it came from.
#[derive(Clone)]
pub struct Background {
    name: String,
    product: ProductChart,
    ansatz: FluxAnsatz,
    flux: DifferentialForm,
    cache: Arc<Cache>,
}

impl fmt::Debug for Background {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Background")
            .field("name", &self.name)
            .field("chart", self.product.chart())
            .field("flux", &self.flux)
            .finish()
    }
}

/// Validates the ansatz against the factors and builds
/// `F = a~ + b~^nu + c~^delta + w~^eps + theta` on the product chart.
pub fn assemble_flux(
    name: &str,
    product: &ProductChart,
    ansatz: &FluxAnsatz,
) -> Result<Background, SugraError> {
    let mut normalized = FluxAnsatz::new().with_c(ansatz.c.clone());
    for c in Component::ALL {
        let Some(form) = ansatz.get(c) else { continue };
        if form.degree() != c.degree() {
            return Err(SugraError::ComponentDegree {
                name: c.key(),
                expected: c.degree(),
                found: form.degree(),
            });
        }
        if let Some(p) = c.partner() {
            if ansatz.get(p).is_none() {
                return Err(SugraError::Unpaired(c.key(), p.key()));
            }
        }
        let chart = if c.on_fiber() {
            product.fiber().chart()
        } else {
            product.base().chart()
        };
        // forms on a sub-chart of the factor (e.g. the transversal chart of a
        // Walker metric) are lifted
        normalized.set(c, Some(form.lift_to(chart)?));
    }
    if normalized.present().next().is_none() {
        return Err(SugraError::EmptyAnsatz);
    }
    let chart = product.chart();
    let mut flux = DifferentialForm::zero(chart, 4);
    let lift = |c: Component| normalized.get(c).map(|f| f.lift_to(chart)).transpose();
    for single in [Component::Alpha, Component::Theta] {
        if let Some(f) = lift(single)? {
            flux = flux.try_add(&f)?;
        }
    }
    for (a, b) in [
        (Component::Beta, Component::Nu),
        (Component::Gamma, Component::Delta),
        (Component::Varpi, Component::Epsilon),
    ] {
        if let (Some(x), Some(y)) = (lift(a)?, lift(b)?) {
            flux = flux.try_add(&x.wedge(&y)?)?;
        }
    }
    Ok(Background {
        name: name.to_string(),
        product: product.clone(),
        ansatz: normalized,
        flux,
        cache: Arc::new(Cache::default()),
    })
}

impl Background {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn product(&self) -> &ProductChart {
        &self.product
    }

    pub fn ansatz(&self) -> &FluxAnsatz {
        &self.ansatz
    }

    pub fn flux(&self) -> &DifferentialForm {
        &self.flux
    }

    pub fn metric(&self) -> &MetricRef {
        self.product.metric()
    }

    pub fn chart(&self) -> &ChartRef {
        self.product.chart()
    }

    /// The factor metric carrying component `c`.
    pub fn factor(&self, c: Component) -> &MetricRef {
        if c.on_fiber() {
            self.product.fiber()
        } else {
            self.product.base()
        }
    }

    /// Component `c` on its factor chart, zero when absent.
    pub fn comp(&self, c: Component) -> DifferentialForm {
        self.ansatz
            .get(c)
            .cloned()
            .unwrap_or_else(|| DifferentialForm::zero(self.factor(c).chart(), c.degree()))
    }

    pub fn has(&self, c: Component) -> bool {
        self.ansatz.get(c).is_some()
    }

    /// `lift(a) ^ lift(b)` on the product chart.
    pub fn mix(
        &self,
        a: &DifferentialForm,
        b: &DifferentialForm,
    ) -> Result<DifferentialForm, SugraError> {
        let chart = self.chart();
        Ok(a.lift_to(chart)?.wedge(&b.lift_to(chart)?)?)
    }

    pub fn lift(&self, a: &DifferentialForm) -> Result<DifferentialForm, SugraError> {
        Ok(a.lift_to(self.chart())?)
    }

    /// `f^k` as a polynomial (negative `k` needs constant `f`).
    pub fn fpow(&self, k: i32) -> Result<Polynomial, SugraError> {
        Ok(self.product.warping_power(k)?)
    }

    pub(crate) fn cached_star_flux(
        &self,
        compute: impl FnOnce() -> Result<DifferentialForm, SugraError>,
    ) -> Result<DifferentialForm, SugraError> {
        cached(&self.cache.star_flux, compute)
    }

    pub(crate) fn cached_maxwell(
        &self,
        compute: impl FnOnce() -> Result<DifferentialForm, SugraError>,
    ) -> Result<DifferentialForm, SugraError> {
        cached(&self.cache.maxwell, compute)
    }

    pub(crate) fn cached_einstein(
        &self,
        compute: impl FnOnce() -> Result<PolyMatrix, SugraError>,
    ) -> Result<PolyMatrix, SugraError> {
        cached(&self.cache.einstein, compute)
    }
}

fn cached<T: Clone>(
    cell: &OnceLock<T>,
    compute: impl FnOnce() -> Result<T, SugraError>,
) -> Result<T, SugraError> {
    if let Some(v) = cell.get() {
        return Ok(v.clone());
    }
    let v = compute()?;
    Ok(cell.get_or_init(|| v).clone())
}
