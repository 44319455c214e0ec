use std::collections::HashMap;
use std::fmt;

use crate::exterior::{ChartRef, DifferentialForm, VectorField};
use crate::metric::PolyMatrix;
use crate::polyring::{PolyError, Polynomial, Rational, Var};

/// The value of a residual or reported quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidualValue {
    Scalar(Polynomial),
    Form(DifferentialForm),
    Vector(VectorField),
    /// Entries indexed by the coordinates of `rows` and `cols`.
    Matrix {
        rows: ChartRef,
        cols: ChartRef,
        entries: PolyMatrix,
    },
}

impl ResidualValue {
    pub fn square(chart: &ChartRef, entries: PolyMatrix) -> Self {
        ResidualValue::Matrix {
            rows: chart.clone(),
            cols: chart.clone(),
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|(_, p)| p.is_zero())
    }

    /// Labelled entries, zero ones included for scalars only.
    pub fn entries(&self) -> Vec<(String, Polynomial)> {
        match self {
            ResidualValue::Scalar(p) => vec![(String::new(), p.clone())],
            ResidualValue::Form(f) => f
                .components()
                .map(|(b, p)| {
                    let names: Vec<String> = b
                        .indices()
                        .map(|i| format!("d{}", f.chart().coordinate(i)))
                        .collect();
                    (names.join("^"), p.clone())
                })
                .collect(),
            ResidualValue::Vector(v) => v
                .components()
                .map(|(k, p)| (format!("d/d{}", v.chart().coordinate(*k)), p.clone()))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
            ResidualValue::Matrix {
                rows,
                cols,
                entries,
            } => {
                let mut out = Vec::new();
                for (i, row) in entries.iter().enumerate() {
                    for (j, p) in row.iter().enumerate() {
                        if !p.is_zero() {
                            out.push((
                                format!("[{},{}]", rows.coordinate(i), cols.coordinate(j)),
                                p.clone(),
                            ));
                        }
                    }
                }
                out
            }
        }
    }

    /// Nonzero entries only.
    pub fn nonzero_entries(&self) -> Vec<(String, Polynomial)> {
        self.entries()
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .collect()
    }

    /// The entry at coordinate names `(a, b)` of a matrix value.
    pub fn matrix_entry(&self, a: &str, b: &str) -> Option<Polynomial> {
        match self {
            ResidualValue::Matrix {
                rows,
                cols,
                entries,
            } => {
                let i = rows.index_of_name(a).ok()?;
                let j = cols.index_of_name(b).ok()?;
                Some(entries[i][j].clone())
            }
            _ => None,
        }
    }

    pub fn as_scalar(&self) -> Option<&Polynomial> {
        match self {
            ResidualValue::Scalar(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_form(&self) -> Option<&DifferentialForm> {
        match self {
            ResidualValue::Form(f) => Some(f),
            _ => None,
        }
    }

    /// Exact values of the nonzero entries at `point`.
    pub fn evaluate(
        &self,
        point: &HashMap<Var, Rational>,
    ) -> Result<Vec<(String, Rational)>, PolyError> {
        self.nonzero_entries()
            .into_iter()
            .map(|(label, p)| Ok((label, p.evaluate(point)?)))
            .collect()
    }
}

impl From<Polynomial> for ResidualValue {
    fn from(p: Polynomial) -> Self {
        ResidualValue::Scalar(p)
    }
}

impl From<DifferentialForm> for ResidualValue {
    fn from(f: DifferentialForm) -> Self {
        ResidualValue::Form(f)
    }
}

impl From<VectorField> for ResidualValue {
    fn from(v: VectorField) -> Self {
        ResidualValue::Vector(v)
    }
}

impl fmt::Display for ResidualValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidualValue::Scalar(p) => write!(f, "{p}"),
            ResidualValue::Form(form) => write!(f, "{form}"),
            ResidualValue::Vector(v) => write!(f, "{v}"),
            ResidualValue::Matrix { .. } => {
                let nz = self.nonzero_entries();
                if nz.is_empty() {
                    return f.write_str("0");
                }
                let parts: Vec<String> = nz.iter().map(|(l, p)| format!("{l} = {p}")).collect();
                f.write_str(&parts.join("; "))
            }
        }
    }
}

/// A named residual or quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub name: String,
    pub value: ResidualValue,
}

impl Residual {
    pub fn new(name: impl Into<String>, value: impl Into<ResidualValue>) -> Self {
        Residual {
            name: name.into(),
            value: value.into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// Result of one check on one background.
///
/// `residuals` must vanish for the check to pass; `quantities` are reported
/// for information; `invariants` are internal consistency assertions (for
/// instance that a reduced system agrees with the direct equation) and must
/// all hold as well.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub residuals: Vec<Residual>,
    pub quantities: Vec<Residual>,
    pub invariants: Vec<(String, bool)>,
    pub notes: Vec<String>,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            passed: false,
            residuals: Vec::new(),
            quantities: Vec::new(),
            invariants: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn residual(
        &mut self,
        name: impl Into<String>,
        value: impl Into<ResidualValue>,
    ) -> &mut Self {
        self.residuals.push(Residual::new(name, value));
        self
    }

    pub fn quantity(
        &mut self,
        name: impl Into<String>,
        value: impl Into<ResidualValue>,
    ) -> &mut Self {
        self.quantities.push(Residual::new(name, value));
        self
    }

    pub fn invariant(&mut self, name: impl Into<String>, holds: bool) -> &mut Self {
        self.invariants.push((name.into(), holds));
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    pub fn residuals_zero(&self) -> bool {
        self.residuals.iter().all(Residual::is_zero)
    }

    pub fn invariants_hold(&self) -> bool {
        self.invariants.iter().all(|(_, ok)| *ok)
    }

    /// Sets the verdict: every residual zero and every invariant holding.
    pub fn finish(mut self) -> Self {
        self.passed = self.residuals_zero() && self.invariants_hold();
        self
    }

    pub fn get(&self, name: &str) -> Option<&Residual> {
        self.residuals.iter().find(|r| r.name == name)
    }

    pub fn get_quantity(&self, name: &str) -> Option<&Residual> {
        self.quantities.iter().find(|r| r.name == name)
    }

    pub fn invariant_holds(&self, name: &str) -> Option<bool> {
        self.invariants
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, b)| *b)
    }
}

/// All checks run on one background.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub background: String,
    pub outcomes: Vec<CheckOutcome>,
    /// Checks that could not run, with the engine error.
    pub errors: Vec<(String, String)>,
    pub convention_notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(background: impl Into<String>) -> Self {
        VerificationReport {
            background: background.into(),
            outcomes: Vec::new(),
            errors: Vec::new(),
            convention_notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.outcomes.iter().all(|o| o.passed)
    }

    pub fn outcome(&self, name: &str) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}
