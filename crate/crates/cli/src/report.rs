//! Serializable report documents and their text rendering.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sugra_core::polyring::{Rational, Var};
use sugra_core::sugra::{CheckOutcome, Residual, VerificationReport};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    /// Empty for scalars, `[a,b]` for matrix entries, `dx^dy` for forms.
    pub label: String,
    /// The exact value in the polynomial grammar.
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryBlock {
    pub name: String,
    pub zero: bool,
    /// Nonzero entries only.
    pub entries: Vec<Entry>,
}

impl EntryBlock {
    fn from_residual(r: &Residual) -> Self {
        EntryBlock {
            name: r.name.clone(),
            zero: r.is_zero(),
            entries: r
                .value
                .nonzero_entries()
                .into_iter()
                .map(|(label, p)| Entry {
                    label,
                    value: p.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub residuals: Vec<EntryBlock>,
    pub quantities: Vec<EntryBlock>,
    pub invariants: Vec<InvariantReport>,
    pub notes: Vec<String>,
}

impl From<&CheckOutcome> for CheckReport {
    fn from(o: &CheckOutcome) -> Self {
        CheckReport {
            name: o.name.clone(),
            passed: o.passed,
            residuals: o.residuals.iter().map(EntryBlock::from_residual).collect(),
            quantities: o.quantities.iter().map(EntryBlock::from_residual).collect(),
            invariants: o
                .invariants
                .iter()
                .map(|(name, holds)| InvariantReport {
                    name: name.clone(),
                    holds: *holds,
                })
                .collect(),
            notes: o.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckError {
    pub check: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotValue {
    pub check: String,
    pub name: String,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointEvaluation {
    pub point: BTreeMap<String, String>,
    pub values: Vec<SpotValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BackgroundReport {
    pub name: String,
    pub c: String,
    pub passed: bool,
    /// Set when the background could not be assembled.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub checks: Vec<CheckReport>,
    pub check_errors: Vec<CheckError>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evaluations: Vec<PointEvaluation>,
}

impl BackgroundReport {
    pub fn has_error(&self) -> bool {
        self.error.is_some() || !self.check_errors.is_empty()
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub backgrounds: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub summary: Summary,
    pub convention_notes: Vec<String>,
    pub backgrounds: Vec<BackgroundReport>,
}

impl ReportDocument {
    pub fn new(backgrounds: Vec<BackgroundReport>) -> Self {
        let errors = backgrounds.iter().filter(|b| b.has_error()).count();
        let passed = backgrounds.iter().filter(|b| b.passed).count();
        ReportDocument {
            schema: SCHEMA,
            summary: Summary {
                backgrounds: backgrounds.len(),
                passed,
                failed: backgrounds.len() - passed - errors,
                errors,
            },
            convention_notes: sugra_core::sugra::CONVENTION_NOTES
                .iter()
                .map(|s| s.to_string())
                .collect(),
            backgrounds,
        }
    }

    /// 2 if anything could not be computed, else 1 if any verdict fails,
    /// else 0.
    pub fn exit_code(&self) -> i32 {
        if self.backgrounds.iter().any(BackgroundReport::has_error) {
            2
        } else if self.backgrounds.iter().any(|b| !b.passed) {
            1
        } else {
            0
        }
    }

    pub fn background(&self, name: &str) -> Option<&BackgroundReport> {
        self.backgrounds.iter().find(|b| b.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for b in &self.backgrounds {
            let verdict = if b.has_error() {
                "ERROR"
            } else if b.passed {
                "PASS"
            } else {
                "FAIL"
            };
            let _ = writeln!(s, "background {} (c = {}): {verdict}", b.name, b.c);
            if let Some(e) = &b.error {
                let _ = writeln!(s, "  error: {e}");
            }
            for c in &b.checks {
                let _ = writeln!(s, "  {} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
                for r in c.residuals.iter().filter(|r| !r.zero) {
                    let _ = writeln!(s, "    residual {}:", r.name);
                    for e in &r.entries {
                        if e.label.is_empty() {
                            let _ = writeln!(s, "      {}", e.value);
                        } else {
                            let _ = writeln!(s, "      {} = {}", e.label, e.value);
                        }
                    }
                }
                for q in &c.quantities {
                    if let [e] = q.entries.as_slice() {
                        if e.label.is_empty() {
                            let _ = writeln!(s, "    {} = {}", q.name, e.value);
                        }
                    } else if q.zero {
                        let _ = writeln!(s, "    {} = 0", q.name);
                    }
                }
                for i in c.invariants.iter().filter(|i| !i.holds) {
                    let _ = writeln!(s, "    invariant violated: {}", i.name);
                }
                for n in &c.notes {
                    let _ = writeln!(s, "    note: {n}");
                }
            }
            for e in &b.check_errors {
                let _ = writeln!(s, "  ERROR {}: {}", e.check, e.message);
            }
            for ev in &b.evaluations {
                let point: Vec<String> = ev.point.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(s, "  at {}:", point.join(", "));
                for v in &ev.values {
                    let label = if v.label.is_empty() {
                        String::new()
                    } else {
                        format!(" {}", v.label)
                    };
                    match (&v.value, &v.error) {
                        (Some(val), _) => {
                            let _ = writeln!(s, "    {} / {}{label} = {val}", v.check, v.name);
                        }
                        (None, Some(err)) => {
                            let _ = writeln!(s, "    {} / {}{label}: {err}", v.check, v.name);
                        }
                        _ => {}
                    }
                }
            }
        }
        let sm = &self.summary;
        let _ = writeln!(
            s,
            "summary: {} backgrounds, {} passed, {} failed, {} errors",
            sm.backgrounds, sm.passed, sm.failed, sm.errors
        );
        s
    }
}

fn point_labels(point: &HashMap<Var, Rational>) -> BTreeMap<String, String> {
    point
        .iter()
        .map(|(k, v)| (k.name().to_string(), v.to_string()))
        .collect()
}

/// Exact values of every nonzero residual and quantity entry at each point.
/// Entries whose polynomial needs a variable the point does not assign get
/// a missing-variable error instead of a value.
pub fn evaluate_report_at_points(
    report: &VerificationReport,
    points: &[HashMap<Var, Rational>],
) -> Vec<PointEvaluation> {
    points
        .iter()
        .map(|point| {
            let mut values = Vec::new();
            for o in &report.outcomes {
                for r in o.residuals.iter().chain(&o.quantities) {
                    for (label, p) in r.value.nonzero_entries() {
                        let (value, error) = match p.evaluate(point) {
                            Ok(v) => (Some(v.to_string()), None),
                            Err(e) => (None, Some(e.to_string())),
                        };
                        values.push(SpotValue {
                            check: o.name.clone(),
                            name: r.name.clone(),
                            label,
                            value,
                            error,
                        });
                    }
                }
            }
            PointEvaluation {
                point: point_labels(point),
                values,
            }
        })
        .collect()
}

pub fn background_report(
    report: &VerificationReport,
    c: &Rational,
    points: &[HashMap<Var, Rational>],
) -> BackgroundReport {
    BackgroundReport {
        name: report.background.clone(),
        c: c.to_string(),
        passed: report.passed(),
        error: None,
        checks: report.outcomes.iter().map(CheckReport::from).collect(),
        check_errors: report
            .errors
            .iter()
            .map(|(check, message)| CheckError {
                check: check.clone(),
                message: message.clone(),
            })
            .collect(),
        evaluations: evaluate_report_at_points(report, points),
    }
}

pub fn failed_background(name: &str, c: &Rational, error: String) -> BackgroundReport {
    BackgroundReport {
        name: name.into(),
        c: c.to_string(),
        passed: false,
        error: Some(error),
        checks: Vec::new(),
        check_errors: Vec::new(),
        evaluations: Vec::new(),
    }
}
