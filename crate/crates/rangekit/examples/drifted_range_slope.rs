//! Flagship experiment: the range of a drifted Brownian motion grows like
//! |drift| times t.
//!
//! Simulates a few replicas of V_t = B_t + eta*t, computes each range path
//! in one pass, and estimates the long-run slope of range/t over the tail
//! of the horizon.
//!
//! Run with: cargo run --release --example drifted_range_slope

use rangekit::{
    range_slope_check, running_extrema, simulate, normalizer_path, ProcessKind, ProcessSpec,
    SlopeConfig,
};
use std::sync::Arc;

fn main() -> rangekit::Result<()> {
    let eta: f64 = 1.0;
    let horizon = 2000.0;
    let step = 0.01;

    println!("drifted Brownian motion, eta = {eta}, horizon = {horizon}, step = {step}");
    println!("expected: range/t -> |eta| = {}", eta.abs());
    println!();

    let mut estimates = Vec::new();
    for seed in 1..=5u64 {
        let spec = ProcessSpec::new(ProcessKind::DriftedBm { eta }, horizon, step, seed)?;
        let sim = simulate(&spec)?;
        let path = sim.output.path().expect("scalar process");
        let psi = normalizer_path("t", Arc::clone(path.grid()))?;
        let report = range_slope_check(path, &psi, SlopeConfig::default())?;

        let triple = running_extrema(path);
        println!(
            "seed {seed}: final range {:8.2}, path slope {:+.4}, range slope {:.4}",
            triple.total_range(),
            report.path_slope.tail_mean,
            report.range_slope.tail_mean,
        );
        estimates.push(report.range_slope.tail_mean);
    }

    let mean = estimates.iter().sum::<f64>() / estimates.len() as f64;
    println!();
    println!(
        "mean range slope over {} replicas: {mean:.4} (drift {eta})",
        estimates.len()
    );
    Ok(())
}
