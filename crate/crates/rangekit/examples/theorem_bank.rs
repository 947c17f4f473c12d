//! The deterministic function bank: closed-form pairs (f, psi) with known
//! limits, and the verdict the range-slope check returns for each.
//!
//! Run with: cargo run --release --example theorem_bank

use rangekit::{range_slope_experiment, ExperimentConfig, ProcessKind, ProcessSpec, SlopeLimit};

fn main() -> rangekit::Result<()> {
    let cases: &[(&str, Option<f64>)] = &[
        ("drift_sine", Some(2.0)),
        ("drift_sine", Some(-3.0)),
        ("drift_sqrt", Some(3.0)),
        ("sqrt_over_t", None),
        ("quadratic", None),
        ("log_drift", None),
        ("osc_no_limit", None),
    ];

    println!(
        "{:<22} {:>10} {:>14} {:>14}",
        "bank function", "limit", "path verdict", "range slope"
    );
    for (id, param) in cases {
        let spec = ProcessSpec::new(
            ProcessKind::Deterministic {
                id: id.to_string(),
                param: *param,
            },
            10_000.0,
            0.1,
            0,
        )?;
        let summary = range_slope_experiment(&spec, &ExperimentConfig::default())?;
        let limit = match summary.expected {
            SlopeLimit::Finite(l) => format!("{l}"),
            SlopeLimit::Infinite => "infinite".into(),
            SlopeLimit::Undefined => "none".into(),
        };
        let verdict = if summary.range_diverging > 0 {
            "diverging".to_string()
        } else if summary.range_converged > 0 {
            "converged".to_string()
        } else {
            "inconclusive".to_string()
        };
        let label = match param {
            Some(p) => format!("{id}({p})"),
            None => id.to_string(),
        };
        println!(
            "{label:<22} {limit:>10} {verdict:>14} {:>14.4}",
            summary.range_slope.mean
        );
    }
    Ok(())
}
