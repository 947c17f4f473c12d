//! The range of norm-like processes is negligible against time: Bessel
//! processes (both the norm and the SDE construction) and coordinate-wise
//! p-norms of multidimensional Brownian motion.
//!
//! Run with: cargo run --release --example bessel_pnorm

use rangekit::{
    pnorm_negligibility_check, ExperimentConfig, PNorm, ProcessKind, ProcessSpec,
};

fn main() -> rangekit::Result<()> {
    let horizon = 5000.0;
    let step = 0.01;
    let cfg = ExperimentConfig::default();

    let cases = [
        ("bessel norm n=2", ProcessKind::BesselNorm { dim: 2 }),
        ("bessel norm n=3", ProcessKind::BesselNorm { dim: 3 }),
        ("bessel SDE  n=3", ProcessKind::BesselSde { dim: 3 }),
        (
            "max-norm    n=4",
            ProcessKind::PnormBm {
                dim: 4,
                p: PNorm::Infinity,
            },
        ),
        (
            "p=0.5 norm  n=2",
            ProcessKind::PnormBm {
                dim: 2,
                p: PNorm::Finite(0.5),
            },
        ),
    ];

    println!("range slope of the norm process against t (expected near 0):");
    for (label, kind) in cases {
        let spec = ProcessSpec::new(kind, horizon, step, 77)?;
        let summary = pnorm_negligibility_check(&spec, &cfg)?;
        println!(
            "  {label}: slope {:+.4}, converged {}/{}, floor clamps {}",
            summary.range_slope.mean,
            summary.converged_replicas,
            cfg.replicas,
            summary.floor_clamps,
        );
    }
    Ok(())
}
