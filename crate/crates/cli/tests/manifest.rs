use std::path::PathBuf;

use proptest::prelude::*;
use sugra_cli::{
    evaluate_report_at_points, parse_manifest, parse_manifest_str, parse_point, run, ManifestError,
    ReportDocument, RunOptions,
};
use sugra_core::checks::{CheckContext, CheckRegistry};
use sugra_core::polyring::{parse_polynomial, parse_rational};

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
}

fn text(name: &str) -> String {
    std::fs::read_to_string(example(name)).unwrap()
}

fn edit(name: &str, f: impl FnOnce(&mut serde_json::Value)) -> String {
    let mut v: serde_json::Value = serde_json::from_str(&text(name)).unwrap();
    f(&mut v);
    v.to_string()
}

fn verify(name: &str) -> ReportDocument {
    let m = parse_manifest(example(name)).unwrap();
    run(&m, &CheckRegistry::builtin(), &RunOptions::default()).unwrap()
}

#[test]
fn sol1_manifest_resolves() {
    let m = parse_manifest(example("sol1.json")).unwrap();
    assert_eq!(m.backgrounds.len(), 1);
    let bg = &m.backgrounds[0];
    assert_eq!(bg.checks, vec!["closedness", "maxwell", "einstein"]);
    assert!(bg.built.is_ok());
}

#[test]
fn undefined_chart_is_unresolved() {
    let s = edit("sol1.json", |v| v["metrics"][0]["chart"] = "Q".into());
    match parse_manifest_str(&s) {
        Err(ManifestError::Unresolved { kind, name, .. }) => {
            assert_eq!(kind, "chart");
            assert_eq!(name, "Q");
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn empty_backgrounds_rejected() {
    let s = edit("sol1.json", |v| v["backgrounds"] = serde_json::json!([]));
    assert!(matches!(
        parse_manifest_str(&s),
        Err(ManifestError::Invalid { .. })
    ));
}

#[test]
fn unknown_check_rejected() {
    let s = edit("sol1.json", |v| {
        v["backgrounds"][0]["checks"] = serde_json::json!(["maxwel"])
    });
    let err = parse_manifest_str(&s).unwrap_err();
    assert!(err.to_string().contains("maxwel"), "{err}");
}

#[test]
fn bad_polynomial_names_the_input() {
    let s = edit("sol1.json", |v| v["metrics"][2]["H"] = "x1^^2".into());
    match parse_manifest_str(&s) {
        Err(ManifestError::Polynomial { input, .. }) => assert_eq!(input, "x1^^2"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn unknown_field_rejected() {
    let s = edit("sol1.json", |v| v["products"][0]["warp"] = "1".into());
    assert!(matches!(
        parse_manifest_str(&s),
        Err(ManifestError::Syntax { .. })
    ));
}

#[test]
fn zero_c_rejected() {
    let s = edit("sol4_corrected.json", |v| {
        v["backgrounds"][0]["c"] = "0".into()
    });
    assert!(parse_manifest_str(&s).is_err());
    let m = parse_manifest(example("sol1.json")).unwrap();
    let opts = RunOptions {
        c: Some(parse_rational("0").unwrap()),
        ..RunOptions::default()
    };
    assert!(run(&m, &CheckRegistry::builtin(), &opts).is_err());
}

#[test]
fn broken_manifest_reports_position() {
    let err = parse_manifest(example("broken.json")).unwrap_err();
    assert!(
        matches!(err, ManifestError::Syntax { line, .. } if line > 1),
        "{err}"
    );
}

#[test]
fn canonical_round_trip() {
    for name in [
        "sol1.json",
        "sol2.json",
        "sol3.json",
        "sol4_literal.json",
        "sol4_corrected.json",
    ] {
        let m = parse_manifest(example(name)).unwrap();
        let canon = m.manifest.canonical().unwrap();
        let again = parse_manifest_str(&canon.to_json()).unwrap();
        assert_eq!(again.manifest, canon, "{name}");
        assert_eq!(again.manifest.canonical().unwrap(), canon, "{name}");
    }
}

#[test]
fn exit_codes() {
    for name in ["sol1.json", "sol2.json", "sol3.json", "sol4_corrected.json"] {
        assert_eq!(verify(name).exit_code(), 0, "{name}");
    }
    assert_eq!(verify("sol4_literal.json").exit_code(), 1);
}

#[test]
fn engine_error_gives_exit_two() {
    // a non-constant warping cannot be inverted exactly
    let s = edit("sol1.json", |v| v["products"][0]["warping"] = "y1".into());
    let m = parse_manifest_str(&s).unwrap();
    let doc = run(&m, &CheckRegistry::builtin(), &RunOptions::default()).unwrap();
    assert_eq!(doc.exit_code(), 2);
    assert!(doc.backgrounds[0].error.is_some());
}

#[test]
fn report_values_reparse() {
    let doc = verify("sol4_literal.json");
    let json = doc.to_json();
    let back: ReportDocument = serde_json::from_str(&json).unwrap();
    assert_eq!(back, doc);
    for b in &doc.backgrounds {
        for c in &b.checks {
            for e in c
                .residuals
                .iter()
                .chain(&c.quantities)
                .flat_map(|r| &r.entries)
            {
                parse_polynomial(&e.value).unwrap_or_else(|err| panic!("{}: {err}", e.value));
            }
        }
    }
    let bg = doc.background("sol4_literal").unwrap();
    let einstein = bg.check("einstein").unwrap();
    let uu = einstein.residuals[0]
        .entries
        .iter()
        .find(|e| e.label == "[u,u]")
        .unwrap();
    assert_eq!(
        parse_polynomial(&uu.value).unwrap(),
        parse_polynomial("1/2*x1^2 - 1/2*y1^2").unwrap()
    );
    assert!(doc.to_text().contains("[u,u] = 1/2*x1^2 - 1/2*y1^2"));
}

#[test]
fn spot_evaluation() {
    let m = parse_manifest(example("sol3.json")).unwrap();
    let built = m.backgrounds[0].built.as_ref().unwrap();
    let report = CheckRegistry::builtin().run(built, &["sol3".into()], &CheckContext::default());
    let point = parse_point("x1=1").unwrap();
    let evals = evaluate_report_at_points(&report, &[point]);
    let lap = evals[0].values.iter().find(|v| v.name == "Lap H").unwrap();
    assert_eq!(lap.value.as_deref(), Some("-2"));

    let m = parse_manifest(example("sol4_literal.json")).unwrap();
    let built = m.backgrounds[0].built.as_ref().unwrap();
    let report =
        CheckRegistry::builtin().run(built, &["einstein".into()], &CheckContext::default());
    let full = parse_point("x1=1,x2=0,y1=0").unwrap();
    let partial = parse_point("x1=1").unwrap();
    let evals = evaluate_report_at_points(&report, &[full, partial]);
    let uu = |i: usize| {
        evals[i]
            .values
            .iter()
            .find(|v| v.label == "[u,u]")
            .unwrap()
            .clone()
    };
    assert_eq!(uu(0).value.as_deref(), Some("1/2"));
    assert!(uu(1).value.is_none() && uu(1).error.is_some());
}

#[test]
fn only_and_override() {
    let m = parse_manifest(example("sol4_literal.json")).unwrap();
    let name = m.backgrounds[0].name.clone();
    let opts = RunOptions {
        only: Some(name.clone()),
        c: Some(parse_rational("-1").unwrap()),
        ..RunOptions::default()
    };
    let doc = run(&m, &CheckRegistry::builtin(), &opts).unwrap();
    assert_eq!(doc.backgrounds.len(), 1);
    assert_eq!(doc.backgrounds[0].c, "-1");
    let missing = RunOptions {
        only: Some("nope".into()),
        ..RunOptions::default()
    };
    assert!(matches!(
        run(&m, &CheckRegistry::builtin(), &missing),
        Err(ManifestError::Unresolved { .. })
    ));
}

proptest! {
    #[test]
    fn points_parse(xs in proptest::collection::btree_map("[a-z][a-z0-9]{0,3}", (-50i64..50, 1i64..9), 0..5)) {
        let spec: Vec<String> = xs.iter().map(|(k, (n, d))| format!("{k}={n}/{d}")).collect();
        let point = parse_point(&spec.join(",")).unwrap();
        prop_assert_eq!(point.len(), xs.len());
        for (k, (n, d)) in &xs {
            let v = &point[&sugra_core::polyring::Var::new(k)];
            prop_assert_eq!(v.clone(), parse_rational(&format!("{n}/{d}")).unwrap());
        }
    }

    #[test]
    fn coefficient_canonical_form_is_stable(a in -20i64..20, b in 1i64..7, e in 0u32..4) {
        let s = edit("sol1.json", |v| {
            v["forms"][0]["terms"][0]["coeff"] = format!("{a}/{b}*x1^{e} + x1^{e}*x2 - x2*x1^{e}").into();
        });
        let m = parse_manifest_str(&s).unwrap();
        let canon = m.manifest.canonical().unwrap();
        let again = parse_manifest_str(&canon.to_json()).unwrap().manifest.canonical().unwrap();
        prop_assert_eq!(again, canon);
    }
}
