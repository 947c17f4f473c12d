//! Renewal processes: arrival times and the counting process are
//! generalized inverses of each other, so their long-run ratios are
//! reciprocal.
//!
//! Run with: cargo run --release --example renewal_counting

use rangekit::{
    generalized_inverse, renewal_equivalence_check, simulate_renewal, DistributionSpec,
    InverseQuery, MonotonePath, ProcessKind, ProcessSpec,
};

fn main() -> rangekit::Result<()> {
    let laws = [
        ("deterministic(2)", DistributionSpec::Deterministic { value: 2.0 }),
        ("exponential(1)", DistributionSpec::Exponential { rate: 1.0 }),
        ("uniform(0,2)", DistributionSpec::Uniform { lo: 0.0, hi: 2.0 }),
    ];

    for (label, law) in laws {
        let gamma = law.mean();
        let spec = ProcessSpec::new(
            ProcessKind::Renewal { inter_arrival: law },
            20_000.0,
            1.0,
            99,
        )?;
        let r = simulate_renewal(&spec)?;
        let report = renewal_equivalence_check(&r);
        println!(
            "{label:the_width$}: {count:>6} arrivals, T_n/n = {a:.4}, N_t/t = {c:.4} (gamma = {gamma}, 1/gamma = {inv:.2})",
            count = report.arrivals,
            a = report.arrival_ratio,
            c = report.counting_ratio,
            inv = 1.0 / gamma,
            the_width = 17,
        );
    }

    // The inversion is exact on the realization: the weak inverse of the
    // counting path at level n recovers T_n.
    let spec = ProcessSpec::new(
        ProcessKind::Renewal {
            inter_arrival: DistributionSpec::Exponential { rate: 1.0 },
        },
        100.0,
        1.0,
        5,
    )?;
    let r = simulate_renewal(&spec)?;
    let counting = MonotonePath::new(r.counting().clone())?;
    let n = r.arrival_count();
    let t_n = r.arrivals().base().last_value();
    let recovered = generalized_inverse(&counting, InverseQuery::weak(n as f64))
        .value()
        .unwrap();
    println!();
    println!("inversion: T_{n} = {t_n:.6}, weak inverse of N at {n} = {recovered:.6}");
    Ok(())
}
