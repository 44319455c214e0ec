use std::collections::HashMap;
use std::thread;

use sugra_core::checks::{CheckContext, CheckRegistry};
use sugra_core::polyring::{parse_rational, Rational, Var};

use crate::manifest::{ManifestError, ResolvedBackground, ResolvedManifest};
use crate::report::{background_report, failed_background, BackgroundReport, ReportDocument};

/// Filters and overrides from the command line.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub only: Option<String>,
    /// Replaces every background's `c`.
    pub c: Option<Rational>,
    /// Extra evaluation points for every background.
    pub eval: Vec<HashMap<Var, Rational>>,
}

/// Parses `x1=1,x2=-1/2` into a point.
pub fn parse_point(spec: &str) -> Result<HashMap<Var, Rational>, String> {
    let mut out = HashMap::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("`{part}` is not of the form name=value"))?;
        let value = parse_rational(v.trim()).map_err(|e| e.to_string())?;
        out.insert(Var::new(k.trim()), value);
    }
    Ok(out)
}

fn run_one(
    bg: &ResolvedBackground,
    registry: &CheckRegistry,
    opts: &RunOptions,
) -> BackgroundReport {
    let c = opts.c.clone().unwrap_or_else(|| bg.c.clone());
    let built = match &bg.built {
        Ok(b) => b,
        Err(e) => return failed_background(&bg.name, &c, e.clone()),
    };
    let report = registry.run(built, &bg.checks, &CheckContext { c: c.clone() });
    let mut points = bg.points.clone();
    points.extend(opts.eval.iter().cloned());
    background_report(&report, &c, &points)
}

/// Verifies the selected backgrounds concurrently; the report keeps
/// manifest order.
pub fn run(
    manifest: &ResolvedManifest,
    registry: &CheckRegistry,
    opts: &RunOptions,
) -> Result<ReportDocument, ManifestError> {
    if let Some(c) = &opts.c {
        if *c == Rational::from_integer(0.into()) {
            return Err(ManifestError::Invalid {
                context: "--set c".into(),
                message: "c must be nonzero".into(),
            });
        }
    }
    let selected: Vec<&ResolvedBackground> = match &opts.only {
        Some(name) => vec![manifest
            .background(name)
            .ok_or_else(|| ManifestError::Unresolved {
                kind: "background",
                name: name.clone(),
                from: "--only".into(),
            })?],
        None => manifest.backgrounds.iter().collect(),
    };
    let reports = thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|bg| s.spawn(move || run_one(bg, registry, opts)))
            .collect();
        handles
            .into_iter()
            .zip(&selected)
            .map(|(h, bg)| {
                h.join().unwrap_or_else(|_| {
                    failed_background(&bg.name, &bg.c, "verification panicked".into())
                })
            })
            .collect()
    });
    Ok(ReportDocument::new(reports))
}
