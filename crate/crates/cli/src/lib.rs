//! Manifest-driven batch verification of supergravity backgrounds.

pub mod manifest;
pub mod report;
pub mod run;

pub use manifest::{
    parse_manifest, parse_manifest_str, Manifest, ManifestError, ReportFormat, ResolvedManifest,
};
pub use report::{evaluate_report_at_points, ReportDocument};
pub use run::{parse_point, run, RunOptions};
