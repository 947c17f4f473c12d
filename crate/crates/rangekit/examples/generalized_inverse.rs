//! Generalized inverses of non-decreasing paths: the strict and weak
//! conventions, the double-inverse identity, and inverse-transform
//! sampling.
//!
//! Run with: cargo run --example generalized_inverse

use rangekit::{
    generalized_inverse, inverse_involution_check, inverse_transform_sample, rng::stream_rng,
    Interpolation, InverseQuery, MonotonePath, SampledPath, TimeGrid,
};
use rand::Rng;

fn main() -> rangekit::Result<()> {
    // A staircase: flat pieces become jumps of the inverse and vice versa.
    let stair = MonotonePath::new(SampledPath::new(
        TimeGrid::new(vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0])?,
        vec![0.0, 1.0, 1.0, 1.0, 3.0, 4.0],
        Interpolation::PiecewiseLinear,
    )?)?;

    println!("staircase path: values {:?}", stair.base().values());
    for level in [0.5, 1.0, 2.0, 3.5] {
        let strict = generalized_inverse(&stair, InverseQuery::strict(level));
        let weak = generalized_inverse(&stair, InverseQuery::weak(level));
        println!(
            "  level {level}: strict {:?}, weak {:?}",
            strict.value(),
            weak.value()
        );
    }

    let probes: Vec<f64> = (1..50).map(|k| k as f64 * 0.1).collect();
    let report = inverse_involution_check(&stair, &probes, None);
    println!(
        "double inverse vs original over {} probes: max discrepancy {:.2e}",
        report.probes_used, report.max_discrepancy
    );

    // Inverse-transform sampling from a sampled exponential(1) CDF.
    let grid = TimeGrid::uniform(30.0, 0.001)?;
    let cdf = MonotonePath::new(SampledPath::from_fn(
        grid,
        Interpolation::PiecewiseLinear,
        |x| 1.0 - (-x).exp(),
    )?)?;
    let mut rng = stream_rng(7, 0);
    let n = 100_000;
    let mut sum = 0.0;
    for _ in 0..n {
        let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        sum += inverse_transform_sample(&cdf, u)?;
    }
    println!();
    println!(
        "exponential(1) by inverse transform: empirical mean {:.4} over {n} draws (expect 1.0)",
        sum / n as f64
    );
    Ok(())
}
