//! A path, its running supremum, and both their ranges share one long-run
//! slope when the path's slope is positive.
//!
//! Run with: cargo run --release --example sup_process

use rangekit::{
    normalizer_path, simulate, sup_slope_check, Interpolation, ProcessKind, ProcessSpec,
    SampledPath, SlopeConfig, TimeGrid,
};
use std::sync::Arc;

fn print_report(label: &str, report: &rangekit::SupSlopeReport) {
    println!("{label}:");
    println!("  applicable: {}", report.applicable);
    println!("  f slope:          {:+.4}", report.f_slope.tail_mean);
    println!("  sup f slope:      {:+.4}", report.sup_slope.tail_mean);
    println!("  range(f) slope:   {:+.4}", report.range_f_slope.tail_mean);
    println!("  range(sup) slope: {:+.4}", report.range_sup_slope.tail_mean);
    println!("  sup f / f tail:   {:.5}", report.sup_over_f_tail_mean);
}

fn main() -> rangekit::Result<()> {
    // Deterministic: f(t) = 2t + sin t, all four slopes equal 2.
    let grid = Arc::new(TimeGrid::uniform(10_000.0, 0.1)?);
    let f = SampledPath::from_fn(Arc::clone(&grid), Interpolation::PiecewiseLinear, |t| {
        2.0 * t + t.sin()
    })?;
    let psi = normalizer_path("t", Arc::clone(&grid))?;
    let report = sup_slope_check(&f, &psi, SlopeConfig::default())?;
    print_report("f(t) = 2t + sin t", &report);

    // Stochastic: drifted Brownian motion, all four slopes near eta.
    let spec = ProcessSpec::new(ProcessKind::DriftedBm { eta: 1.0 }, 5000.0, 0.01, 12)?;
    let sim = simulate(&spec)?;
    let path = sim.output.path().expect("scalar process");
    let psi = normalizer_path("t", Arc::clone(path.grid()))?;
    let report = sup_slope_check(path, &psi, SlopeConfig::default())?;
    println!();
    print_report("drifted BM, eta = 1", &report);
    Ok(())
}
