use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::Parser;
use sugra_cli::{parse_manifest, parse_point, run, ReportFormat, RunOptions};
use sugra_core::checks::CheckRegistry;
use sugra_core::polyring::parse_rational;

/// Verify the field equations of 11-dimensional product backgrounds
/// described in a JSON manifest. Exit 0 when every check passes, 1 when a
/// check fails and 2 on malformed input or engine errors.
#[derive(Debug, Parser)]
#[command(name = "sugra-verify", version)]
struct Args {
    #[arg(long)]
    manifest: PathBuf,
    /// Run a single background.
    #[arg(long)]
    only: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Override a setting; only `c=<rational>` is supported.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Evaluate residuals at a point, e.g. `x1=1,x2=0,y1=0`.
    #[arg(long, value_name = "POINT")]
    eval: Vec<String>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum Format {
    Text,
    Json,
}

fn options(args: &Args) -> Result<RunOptions> {
    let mut opts = RunOptions {
        only: args.only.clone(),
        ..RunOptions::default()
    };
    for s in &args.set {
        match s.split_once('=') {
            Some(("c", v)) => {
                opts.c = Some(parse_rational(v.trim()).with_context(|| format!("--set {s}"))?)
            }
            _ => return Err(anyhow!("unsupported setting `{s}`; expected c=<rational>")),
        }
    }
    for p in &args.eval {
        opts.eval
            .push(parse_point(p).map_err(|e| anyhow!("--eval {p}: {e}"))?);
    }
    Ok(opts)
}

fn main_inner(args: &Args) -> Result<u8> {
    let opts = options(args)?;
    let manifest = parse_manifest(&args.manifest)?;
    let doc = run(&manifest, &CheckRegistry::builtin(), &opts)?;
    let format = match args.format {
        Some(Format::Json) => ReportFormat::Json,
        Some(Format::Text) => ReportFormat::Text,
        None => manifest.format,
    };
    match format {
        ReportFormat::Json => println!("{}", doc.to_json()),
        ReportFormat::Text => print!("{}", doc.to_text()),
    }
    Ok(doc.exit_code() as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match main_inner(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
