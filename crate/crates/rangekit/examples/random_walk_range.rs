//! Explored sites of a nearest-neighbor walk: the discrete range, its
//! speed 2p-1, and the bridge to the connect-the-dots embedding.
//!
//! Run with: cargo run --release --example random_walk_range

use rangekit::{connect_dots, discrete_range, running_extrema, simulate, ProcessKind, ProcessSpec, SimOutput};

fn main() -> rangekit::Result<()> {
    let n = 100_000;
    for p in [0.5, 0.8, 1.0] {
        let spec = ProcessSpec::new(ProcessKind::NnWalk { p }, n as f64, 1.0, 2024)?;
        let sim = simulate(&spec)?;
        let sequence = match &sim.output {
            SimOutput::Walk { sequence, .. } => sequence,
            _ => unreachable!("walks produce walk output"),
        };

        let trace = discrete_range(sequence);
        let sites = *trace.counts().last().unwrap();
        let speed = sites as f64 / n as f64;

        // Continuous embedding through the points (n, x_n); its range stays
        // within 2 of the explored-site count at every integer time.
        let star = connect_dots(sequence);
        let range = running_extrema(&star);
        let max_gap = (0..sequence.len())
            .map(|k| (range.range_path().values()[k] - trace.counts()[k] as f64).abs())
            .fold(0.0f64, f64::max);

        println!(
            "p = {p}: sites {sites:>6}, speed {speed:.4} (|2p-1| = {:.1}), max |R_t - r_t| = {max_gap}",
            (2.0 * p - 1.0).abs()
        );
    }
    Ok(())
}
