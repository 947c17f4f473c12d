//! First-range-time: when does the range first exceed a level, and how the
//! answer mirrors the range itself.
//!
//! The first-range-time theta(a) is the right-continuous generalized
//! inverse of the non-decreasing range path. For a drifted path whose
//! range grows like eta*t, theta(a)/a settles near 1/eta, and the two
//! duality relations hold at every probed (level, time) pair.
//!
//! Run with: cargo run --release --example first_range_time

use rangekit::{
    check_duality, first_range_time, inverse_slope_check, running_extrema, simulate, ProcessKind,
    ProcessSpec,
};

fn main() -> rangekit::Result<()> {
    let eta = 2.0;
    let spec = ProcessSpec::new(ProcessKind::DriftedBm { eta }, 1000.0, 0.01, 42)?;
    let sim = simulate(&spec)?;
    let path = sim.output.path().expect("scalar process");
    let triple = running_extrema(path);

    println!("drifted BM, eta = {eta}: expected theta(a)/a -> 1/eta = {}", 1.0 / eta);
    println!();
    println!("{:>10} {:>12} {:>10}", "level a", "theta(a)", "ratio");
    for frac in [0.1, 0.2, 0.4, 0.6, 0.8] {
        let a = frac * triple.total_range();
        let theta = first_range_time(&triple, a)?;
        match theta.time.value() {
            Some(t) => println!("{a:>10.2} {t:>12.3} {:>10.4}", t / a),
            None => println!("{a:>10.2} {:>12} {:>10}", "saturated", "-"),
        }
    }

    let ladder = inverse_slope_check(&triple)?;
    println!();
    println!("ladder slope (mean over top half): {:.4}", ladder.ladder_slope);

    // Both duality relations, probed on a coarse (a, t) lattice.
    let mut violations = 0;
    let horizon = path.horizon();
    for i in 1..20 {
        for j in 1..20 {
            let a = i as f64 / 20.0 * 1.2 * triple.total_range();
            let t = j as f64 / 20.0 * horizon;
            if !check_duality(&triple, a, t)?.both_hold() {
                violations += 1;
            }
        }
    }
    println!("duality probes on a 19x19 lattice: {violations} violations");
    Ok(())
}
