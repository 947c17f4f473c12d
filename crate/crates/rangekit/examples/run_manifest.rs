//! Runs a bundled experiment manifest programmatically and prints the
//! JSON report, exactly as `rangekit verify` does.
//!
//! Run with: cargo run --release --example run_manifest

use rangekit::manifest::{run_manifest, ExperimentManifest};

fn main() -> rangekit::Result<()> {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/manifests/renewal_exp1.json"
    ))?;
    let manifest = ExperimentManifest::from_json(&text)?;
    let report = run_manifest(&manifest, false)?;
    print!("{}", report.to_json_pretty()?);
    std::process::exit(if report.pass { 0 } else { 1 });
}
