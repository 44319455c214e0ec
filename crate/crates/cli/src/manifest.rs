//! JSON manifests describing charts, metrics, forms, products and the
//! backgrounds to verify.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sugra_core::checks::CheckRegistry;
use sugra_core::exterior::{Chart, ChartRef, DifferentialForm};
use sugra_core::metric::{
    flat_metric, make_metric, walker_metric, MetricRef, PolyMatrix, Signature,
};
use sugra_core::polyring::{parse_polynomial, parse_rational, Polynomial, Rational, Var};
use sugra_core::product::{build_product, ProductChart};
use sugra_core::sugra::{assemble_flux, Background, Component, FluxAnsatz};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed manifest at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{kind} `{name}` referenced by {from} is not defined")]
    Unresolved {
        kind: &'static str,
        name: String,
        from: String,
    },
    #[error("{context}: bad polynomial `{input}`: {message}")]
    Polynomial {
        context: String,
        input: String,
        message: String,
    },
    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
}

fn invalid(context: impl Into<String>, message: impl Into<String>) -> ManifestError {
    ManifestError::Invalid {
        context: context.into(),
        message: message.into(),
    }
}

fn unresolved(kind: &'static str, name: &str, from: impl Into<String>) -> ManifestError {
    ManifestError::Unresolved {
        kind,
        name: name.into(),
        from: from.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// The constant `c` of the special cases, as a rational string.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<ReportFormat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub name: String,
    pub coordinates: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    /// Lower-triangular rows `g`, optional `inverse` in the same layout.
    #[default]
    Matrix,
    /// `-sum (dx^i)^2` on the chart.
    Flat,
    /// `2 dv du + rho + H du^2` on a chart `(v, rho coordinates, u)`.
    Walker,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricSpec {
    pub name: String,
    pub chart: String,
    #[serde(default)]
    pub kind: MetricKind,
    pub signature: Signature,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "H")]
    pub h: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub indices: Vec<String>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub name: String,
    pub chart: String,
    pub degree: usize,
    pub terms: Vec<TermSpec>,
}

fn one() -> String {
    "1".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub name: String,
    pub base: String,
    pub fiber: String,
    #[serde(default = "one")]
    pub warping: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BackgroundSpec {
    pub name: String,
    pub product: String,
    /// Component key (`alpha_t`, `nu`, ...) to form name.
    pub ansatz: BTreeMap<String, String>,
    /// Special case the ansatz is meant to fall under; validated against
    /// the allowed components.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    pub checks: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub settings: Settings,
    pub charts: Vec<ChartSpec>,
    pub metrics: Vec<MetricSpec>,
    #[serde(default)]
    pub forms: Vec<FormSpec>,
    pub products: Vec<ProductSpec>,
    pub backgrounds: Vec<BackgroundSpec>,
}

/// A background ready to run. `built` holds the engine error when the
/// metrics, product or flux could not be assembled.
#[derive(Debug, Clone)]
pub struct ResolvedBackground {
    pub name: String,
    pub checks: Vec<String>,
    pub c: Rational,
    pub points: Vec<HashMap<Var, Rational>>,
    pub built: Result<Background, String>,
}

#[derive(Debug, Clone)]
pub struct ResolvedManifest {
    pub manifest: Manifest,
    pub format: ReportFormat,
    pub backgrounds: Vec<ResolvedBackground>,
}

pub fn parse_manifest(path: impl AsRef<Path>) -> Result<ResolvedManifest, ManifestError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ManifestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_manifest_str(&text)
}

pub fn parse_manifest_str(text: &str) -> Result<ResolvedManifest, ManifestError> {
    let manifest: Manifest = serde_json::from_str(text).map_err(|e| ManifestError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    manifest.resolve()
}

fn poly(context: &str, input: &str) -> Result<Polynomial, ManifestError> {
    parse_polynomial(input).map_err(|e| ManifestError::Polynomial {
        context: context.into(),
        input: input.into(),
        message: e.to_string(),
    })
}

fn rational(context: &str, input: &str) -> Result<Rational, ManifestError> {
    parse_rational(input).map_err(|e| ManifestError::Polynomial {
        context: context.into(),
        input: input.into(),
        message: e.to_string(),
    })
}

fn index<'a, T>(
    items: &'a [T],
    name: impl Fn(&T) -> &str,
    kind: &'static str,
) -> Result<HashMap<&'a str, &'a T>, ManifestError> {
    let mut out = HashMap::new();
    for it in items {
        if out.insert(name(it), it).is_some() {
            return Err(invalid(format!("{kind} `{}`", name(it)), "defined twice"));
        }
    }
    Ok(out)
}

/// Expands lower-triangular rows (row `i` has `i + 1` entries) to a full
/// symmetric matrix.
fn lower_triangular(
    context: &str,
    rows: &[Vec<String>],
    n: usize,
) -> Result<PolyMatrix, ManifestError> {
    if rows.len() != n || rows.iter().enumerate().any(|(i, r)| r.len() != i + 1) {
        return Err(invalid(
            context,
            format!("expected {n} lower-triangular rows with 1, 2, ..., {n} entries"),
        ));
    }
    let mut m = vec![vec![Polynomial::zero(); n]; n];
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            let p = poly(context, s)?;
            m[j][i] = p.clone();
            m[i][j] = p;
        }
    }
    Ok(m)
}

fn form_term_chart_check(
    chart: &ChartRef,
    context: &str,
    p: &Polynomial,
) -> Result<(), ManifestError> {
    if let Some(v) = p
        .variables()
        .into_iter()
        .find(|v| chart.index_of(v).is_none())
    {
        return Err(invalid(
            context,
            format!(
                "coefficient uses `{}`, which is not a coordinate of `{}`",
                v.name(),
                chart.name()
            ),
        ));
    }
    Ok(())
}

impl Manifest {
    /// Validates references and grammar, then builds every background.
    /// Structural problems are errors; failures of the engine to build a
    /// background are kept per background.
    pub fn resolve(&self) -> Result<ResolvedManifest, ManifestError> {
        if self.backgrounds.is_empty() {
            return Err(invalid("manifest", "the backgrounds list is empty"));
        }
        let default_c = match &self.settings.c {
            Some(s) => nonzero_c("settings.c", s)?,
            None => Rational::from_integer(1.into()),
        };

        index(&self.charts, |c| &c.name, "chart")?;
        let mut charts: HashMap<&str, ChartRef> = HashMap::new();
        for spec in &self.charts {
            let coords: Vec<&str> = spec.coordinates.iter().map(String::as_str).collect();
            let chart = Chart::new(&spec.name, &coords)
                .map_err(|e| invalid(format!("chart `{}`", spec.name), e.to_string()))?;
            charts.insert(&spec.name, chart);
        }

        let metric_specs = index(&self.metrics, |m| &m.name, "metric")?;
        let mut metrics: HashMap<&str, Result<MetricRef, String>> = HashMap::new();
        for spec in &self.metrics {
            let m = self.resolve_metric(spec, &charts, &metric_specs, &mut metrics)?;
            metrics.insert(&spec.name, m);
        }

        let mut forms: HashMap<&str, DifferentialForm> = HashMap::new();
        for spec in &self.forms {
            let ctx = format!("form `{}`", spec.name);
            let chart = charts
                .get(spec.chart.as_str())
                .ok_or_else(|| unresolved("chart", &spec.chart, &ctx))?;
            let mut acc = DifferentialForm::zero(chart, spec.degree);
            for t in &spec.terms {
                if t.indices.len() != spec.degree {
                    return Err(invalid(
                        &ctx,
                        format!("term {:?} does not have degree {}", t.indices, spec.degree),
                    ));
                }
                let coeff = poly(&ctx, &t.coeff)?;
                form_term_chart_check(chart, &ctx, &coeff)?;
                let names: Vec<&str> = t.indices.iter().map(String::as_str).collect();
                let term = DifferentialForm::from_names(chart, &names, coeff)
                    .map_err(|e| invalid(&ctx, e.to_string()))?;
                acc = acc
                    .try_add(&term)
                    .map_err(|e| invalid(&ctx, e.to_string()))?;
            }
            if forms.insert(&spec.name, acc).is_some() {
                return Err(invalid(ctx, "defined twice"));
            }
        }

        let mut products: HashMap<&str, Result<ProductChart, String>> = HashMap::new();
        for spec in &self.products {
            let ctx = format!("product `{}`", spec.name);
            let base = metrics
                .get(spec.base.as_str())
                .ok_or_else(|| unresolved("metric", &spec.base, &ctx))?;
            let fiber = metrics
                .get(spec.fiber.as_str())
                .ok_or_else(|| unresolved("metric", &spec.fiber, &ctx))?;
            let f = poly(&ctx, &spec.warping)?;
            let built = match (base, fiber) {
                (Ok(b), Ok(fb)) => {
                    build_product(&spec.name, b, fb, &f).map_err(|e| format!("{ctx}: {e}"))
                }
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            };
            if products.insert(&spec.name, built).is_some() {
                return Err(invalid(ctx, "defined twice"));
            }
        }

        let registry = CheckRegistry::builtin();
        let mut seen = HashMap::new();
        let mut backgrounds = Vec::new();
        for spec in &self.backgrounds {
            let ctx = format!("background `{}`", spec.name);
            if seen.insert(spec.name.as_str(), ()).is_some() {
                return Err(invalid(ctx, "defined twice"));
            }
            if spec.checks.is_empty() {
                return Err(invalid(ctx, "names no checks"));
            }
            if let Some(bad) = spec.checks.iter().find(|c| registry.get(c).is_none()) {
                return Err(unresolved("check", bad, &ctx));
            }
            let product = products
                .get(spec.product.as_str())
                .ok_or_else(|| unresolved("product", &spec.product, &ctx))?;
            let mut ansatz = FluxAnsatz::new();
            for (key, form_name) in &spec.ansatz {
                let comp = Component::from_key(key)
                    .ok_or_else(|| invalid(&ctx, format!("unknown ansatz component `{key}`")))?;
                let form = forms
                    .get(form_name.as_str())
                    .ok_or_else(|| unresolved("form", form_name, &ctx))?;
                ansatz.set(comp, Some(form.clone()));
            }
            if let Some(case) = spec.case {
                let allowed = sugra_core::sugra::case_components(case)
                    .ok_or_else(|| invalid(&ctx, format!("case tag {case} is not in 1..=9")))?;
                if let Some(extra) = ansatz.present().find(|c| !allowed.contains(c)) {
                    return Err(invalid(
                        &ctx,
                        format!("case ({case}) does not allow component `{}`", extra.key()),
                    ));
                }
            }
            let c = match &spec.c {
                Some(s) => nonzero_c(&ctx, s)?,
                None => default_c.clone(),
            };
            let mut points = Vec::new();
            for p in &spec.points {
                let mut map = HashMap::new();
                for (k, v) in p {
                    map.insert(Var::new(k), rational(&ctx, v)?);
                }
                points.push(map);
            }
            let built = match product {
                Ok(pc) => {
                    let a = ansatz.with_c(c.clone());
                    assemble_flux(&spec.name, pc, &a).map_err(|e| format!("{ctx}: {e}"))
                }
                Err(e) => Err(e.clone()),
            };
            backgrounds.push(ResolvedBackground {
                name: spec.name.clone(),
                checks: spec.checks.clone(),
                c,
                points,
                built,
            });
        }
        Ok(ResolvedManifest {
            manifest: self.clone(),
            format: self.settings.format.unwrap_or_default(),
            backgrounds,
        })
    }

    fn resolve_metric<'a>(
        &'a self,
        spec: &'a MetricSpec,
        charts: &HashMap<&str, ChartRef>,
        specs: &HashMap<&str, &'a MetricSpec>,
        done: &mut HashMap<&'a str, Result<MetricRef, String>>,
    ) -> Result<Result<MetricRef, String>, ManifestError> {
        let ctx = format!("metric `{}`", spec.name);
        let chart = charts
            .get(spec.chart.as_str())
            .ok_or_else(|| unresolved("chart", &spec.chart, &ctx))?;
        let engine = |r: Result<MetricRef, sugra_core::metric::MetricError>| {
            r.map_err(|e| format!("{ctx}: {e}"))
        };
        let n = chart.dim();
        match spec.kind {
            MetricKind::Matrix => {
                let rows = spec
                    .g
                    .as_ref()
                    .ok_or_else(|| invalid(&ctx, "a matrix metric needs `g`"))?;
                let g = lower_triangular(&ctx, rows, n)?;
                let inv = match &spec.inverse {
                    Some(rows) => Some(lower_triangular(&format!("{ctx} inverse"), rows, n)?),
                    None => None,
                };
                for row in &g {
                    for p in row {
                        form_term_chart_check(chart, &ctx, p)?;
                    }
                }
                Ok(engine(make_metric(chart, g, inv, Some(spec.signature))))
            }
            MetricKind::Flat => {
                if spec.signature != Signature::riemannian(n) {
                    return Err(invalid(
                        &ctx,
                        format!("a flat metric has signature (0, {n})"),
                    ));
                }
                Ok(engine(flat_metric(chart)))
            }
            MetricKind::Walker => {
                let rho_name = spec
                    .rho
                    .as_deref()
                    .ok_or_else(|| invalid(&ctx, "a Walker metric needs `rho`"))?;
                let h = poly(&ctx, spec.h.as_deref().unwrap_or("0"))?;
                form_term_chart_check(chart, &ctx, &h)?;
                if !specs.contains_key(rho_name) {
                    return Err(unresolved("metric", rho_name, &ctx));
                }
                let rho = done
                    .get(rho_name)
                    .ok_or_else(|| {
                        invalid(
                            &ctx,
                            format!("`{rho_name}` must be listed before the Walker metric"),
                        )
                    })?
                    .clone();
                let rho = match rho {
                    Ok(r) => r,
                    Err(e) => return Ok(Err(e)),
                };
                let xs: Vec<&str> = rho.chart().coordinates().iter().map(|v| v.name()).collect();
                let coords = chart.coordinates();
                if n != xs.len() + 2
                    || coords[1..n - 1]
                        .iter()
                        .map(|v| v.name())
                        .ne(xs.iter().copied())
                {
                    return Err(invalid(
                        &ctx,
                        format!(
                            "chart `{}` must list (v, {}, u)",
                            chart.name(),
                            xs.join(", ")
                        ),
                    ));
                }
                if spec.signature != Signature::lorentzian(n) {
                    return Err(invalid(
                        &ctx,
                        format!("a Walker metric has signature (1, {})", n - 1),
                    ));
                }
                Ok(engine(walker_metric(
                    chart.name(),
                    coords[0].name(),
                    &xs,
                    coords[n - 1].name(),
                    rho.g(),
                    &h,
                )))
            }
        }
    }

    /// The manifest with every polynomial and rational rewritten in the
    /// engine's canonical printed form.
    pub fn canonical(&self) -> Result<Manifest, ManifestError> {
        let canon = |ctx: &str, s: &String| poly(ctx, s).map(|p| p.to_string());
        let mut out = self.clone();
        if let Some(c) = &mut out.settings.c {
            *c = rational("settings.c", c)?.to_string();
        }
        for m in &mut out.metrics {
            for block in [&mut m.g, &mut m.inverse].into_iter().flatten() {
                for row in block.iter_mut() {
                    for s in row.iter_mut() {
                        *s = canon(&m.name, s)?;
                    }
                }
            }
            if let Some(h) = &mut m.h {
                *h = canon(&m.name, h)?;
            }
        }
        for f in &mut out.forms {
            for t in &mut f.terms {
                t.coeff = canon(&f.name, &t.coeff)?;
            }
        }
        for p in &mut out.products {
            p.warping = canon(&p.name, &p.warping)?;
        }
        for b in &mut out.backgrounds {
            if let Some(c) = &mut b.c {
                *c = rational(&b.name, c)?.to_string();
            }
            for pt in &mut b.points {
                for v in pt.values_mut() {
                    *v = rational(&b.name, v)?.to_string();
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}

fn nonzero_c(context: &str, s: &str) -> Result<Rational, ManifestError> {
    let c = rational(context, s)?;
    if c == Rational::from_integer(0.into()) {
        return Err(invalid(context, "c must be nonzero"));
    }
    Ok(c)
}

impl ResolvedManifest {
    pub fn background(&self, name: &str) -> Option<&ResolvedBackground> {
        self.backgrounds.iter().find(|b| b.name == name)
    }
}
