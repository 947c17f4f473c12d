//! Acceptance suite: one test per criterion, each ending with one printed
//! pass line (run with `-- --nocapture` to see them on success).
//!
//! Every tolerance is pinned here, in code. The stochastic criteria run at
//! fixed seeds with replicas drawn from decorrelated substreams; tolerances
//! are standard-error multiples (4-5 sigma) or analytic tail bounds, and
//! criterion 2 validates the sqrt(T)/T scaling that backs them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use rangekit::rng::stream_rng;
use rangekit::{
    check_duality, connect_dots, discrete_range, inverse_involution_check, inverse_slope_check,
    normalizer_path, pnorm_negligibility_check, range_slope_experiment, renewal_equivalence_check,
    running_extrema, simulate_renewal, simulate_replica, slope, sup_process, sup_slope_experiment,
    DistributionSpec, ExperimentConfig, Interpolation, MonotonePath, PNorm, ProcessKind,
    ProcessSpec, SampledPath, SimOutput, SlopeConfig, SlopeLimit, TimeGrid,
};
use rand::Rng;

const HORIZON: f64 = 1e4;
const STEP: f64 = 0.01;
const REPLICAS: u32 = 100;

/// Per-replica statistics shared across the drifted-Brownian criteria.
struct DriftReplica {
    range_slope: f64,
    ladder_slope: f64,
    top_ratio: f64,
    sup_slope: f64,
    range_sup_slope: f64,
}

fn drift_fixture(eta: f64, horizon: f64, seed: u64) -> Arc<Vec<DriftReplica>> {
    type Cache = Mutex<HashMap<(u64, u64, u64), Arc<Vec<DriftReplica>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (eta.to_bits(), horizon.to_bits(), seed);
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return Arc::clone(v);
    }
    let computed = Arc::new(compute_drift_replicas(eta, horizon, seed));
    Arc::clone(
        cache
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(computed),
    )
}

fn compute_drift_replicas(eta: f64, horizon: f64, seed: u64) -> Vec<DriftReplica> {
    let spec = ProcessSpec::new(ProcessKind::DriftedBm { eta }, horizon, STEP, seed).unwrap();
    let cfg = SlopeConfig::default();
    (0..REPLICAS)
        .into_par_iter()
        .map(|r| {
            let sim = simulate_replica(&spec, r).unwrap();
            let path = sim.output.path().unwrap();
            let psi = normalizer_path("t", Arc::clone(path.grid())).unwrap();
            let triple = running_extrema(path);
            let range_slope = slope(triple.range_path(), &psi, cfg).unwrap().tail_mean;
            let ladder = inverse_slope_check(&triple).unwrap();
            let sup = sup_process(path);
            let sup_slope = slope(&sup, &psi, cfg).unwrap().tail_mean;
            let range_sup = running_extrema(&sup).into_range_path();
            let range_sup_slope = slope(&range_sup, &psi, cfg).unwrap().tail_mean;
            DriftReplica {
                range_slope,
                ladder_slope: ladder.ladder_slope,
                top_ratio: ladder.top_ratio,
                sup_slope,
                range_sup_slope,
            }
        })
        .collect()
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = values.collect();
    v.iter().sum::<f64>() / v.len() as f64
}

#[test]
fn criterion_01_drifted_brownian_range_law() {
    let mut lines = Vec::new();
    for (eta, seed) in [(0.5, 4105u64), (1.0, 4110), (2.0, 4120)] {
        let stats = drift_fixture(eta, HORIZON, seed);
        let m = mean(stats.iter().map(|s| s.range_slope));
        let tol = 0.05 * eta.max(1.0);
        assert!(
            (m - eta).abs() <= tol,
            "eta {eta}: mean range slope {m} not within {tol}"
        );
        lines.push(format!("eta {eta}: {m:.4}"));
    }
    // Negative drift: the range slope is the absolute value.
    let stats = drift_fixture(-1.0, HORIZON, 4130);
    let m = mean(stats.iter().map(|s| s.range_slope));
    assert!((m - 1.0).abs() <= 0.05, "eta -1: mean range slope {m}");
    lines.push(format!("eta -1: {m:.4}"));
    println!("criterion 1 (drifted Brownian range law): PASS [{}]", lines.join(", "));
}

#[test]
fn criterion_02_driftless_range_vanishes_and_scales() {
    let at_t = drift_fixture(0.0, HORIZON, 4100);
    let m_t = mean(at_t.iter().map(|s| s.range_slope));
    assert!(m_t.abs() <= 0.1, "driftless mean range slope {m_t}");

    let at_4t = drift_fixture(0.0, 4.0 * HORIZON, 4100);
    let m_4t = mean(at_4t.iter().map(|s| s.range_slope));
    let ratio = m_4t / m_t;
    assert!(
        (0.25..=0.75).contains(&ratio),
        "horizon x4 should halve the slope (+-50%): {m_t} -> {m_4t}, ratio {ratio}"
    );
    println!(
        "criterion 2 (driftless range vanishes, sqrt(T)/T scaling): PASS [T: {m_t:.4}, 4T: {m_4t:.4}, ratio {ratio:.2}]"
    );
}

#[test]
fn criterion_03_inverse_slope_is_reciprocal_drift() {
    let mut lines = Vec::new();
    for (eta, seed) in [(1.0, 4110u64), (2.0, 4120)] {
        let stats = drift_fixture(eta, HORIZON, seed);
        let m = mean(stats.iter().map(|s| s.ladder_slope));
        assert!(
            (m - 1.0 / eta).abs() <= 0.05,
            "eta {eta}: ladder slope {m} vs {}",
            1.0 / eta
        );
        lines.push(format!("eta {eta}: {m:.4}"));
    }
    let stats = drift_fixture(0.0, HORIZON, 4100);
    let top = mean(stats.iter().map(|s| s.top_ratio));
    assert!(top > 10.0, "driftless top-of-ladder ratio {top} should exceed 10");
    lines.push(format!("eta 0 top ratio: {top:.1}"));
    println!("criterion 3 (first-range-time slope 1/eta): PASS [{}]", lines.join(", "));
}

#[test]
fn criterion_04_deterministic_theorem_suite() {
    let cases: &[(&str, Option<f64>, SlopeLimit)] = &[
        ("drift_sine", Some(2.0), SlopeLimit::Finite(2.0)),
        ("sqrt_over_t", None, SlopeLimit::Finite(0.0)),
        ("quadratic", None, SlopeLimit::Infinite),
        ("log_drift", None, SlopeLimit::Finite(-3.0)),
    ];
    let cfg = ExperimentConfig::default();
    let mut lines = Vec::new();
    for (id, param, expected) in cases {
        let spec = ProcessSpec::new(
            ProcessKind::Deterministic {
                id: id.to_string(),
                param: *param,
            },
            HORIZON,
            0.1,
            0,
        )
        .unwrap();
        let summary = range_slope_experiment(&spec, &cfg).unwrap();
        assert_eq!(summary.expected, *expected, "{id}");
        match expected {
            SlopeLimit::Finite(l) => {
                assert_eq!(summary.range_converged, 1, "{id} must converge");
                assert!(
                    (summary.range_slope.mean - l.abs()).abs() <= 0.02,
                    "{id}: range slope {} vs |{l}|",
                    summary.range_slope.mean
                );
                lines.push(format!("{id}: {:.4}", summary.range_slope.mean));
            }
            SlopeLimit::Infinite => {
                assert_eq!(summary.range_diverging, 1, "{id} must diverge");
                lines.push(format!("{id}: diverging"));
            }
            SlopeLimit::Undefined => unreachable!(),
        }
        assert!(summary.pass, "{id} experiment pass flag");
    }
    println!("criterion 4 (deterministic theorem suite): PASS [{}]", lines.join(", "));
}

#[test]
fn criterion_05_duality_probes_never_violate() {
    let kinds = [
        ProcessKind::StandardBm,
        ProcessKind::DriftedBm { eta: 1.5 },
        ProcessKind::DriftedBm { eta: -0.7 },
        ProcessKind::BesselNorm { dim: 2 },
    ];
    let mut total = 0usize;
    for (i, kind) in kinds.into_iter().enumerate() {
        let spec = ProcessSpec::new(kind.clone(), 200.0, STEP, 500 + i as u64).unwrap();
        // 20 paths per kind, 1000 probes per path.
        let violations: usize = (0..20u32)
            .into_par_iter()
            .map(|r| {
                let sim = simulate_replica(&spec, r).unwrap();
                let path = sim.output.path().unwrap();
                let triple = running_extrema(path);
                let cap = 1.2 * triple.total_range().max(1e-6);
                let mut rng = stream_rng(spec.seed, 77_000 + r as u64);
                let mut bad = 0usize;
                for _ in 0..1000 {
                    let a = rng.gen::<f64>() * cap;
                    let t = rng.gen::<f64>() * path.horizon();
                    if !check_duality(&triple, a, t).unwrap().both_hold() {
                        bad += 1;
                    }
                }
                bad
            })
            .sum();
        assert_eq!(violations, 0, "duality violations for {kind:?}");
        total += 20_000;
    }
    println!("criterion 5 (duality probes): PASS [{total} probes, 0 violations]");
}

#[test]
fn criterion_06_involution_on_random_monotone_paths() {
    let mut worst = 0.0f64;
    let mut used_total = 0usize;
    for i in 0..200u64 {
        let mut rng = stream_rng(606, i);
        let knots = 120;
        let mut values = vec![0.0f64];
        for _ in 1..knots {
            // Flats with probability ~0.3, otherwise a positive increment.
            let inc = if rng.gen::<f64>() < 0.3 {
                0.0
            } else {
                rng.gen::<f64>() * 2.0
            };
            values.push(values.last().unwrap() + inc);
        }
        let interp = if i % 2 == 0 {
            Interpolation::StepRightContinuous
        } else {
            Interpolation::PiecewiseLinear
        };
        let grid = TimeGrid::integers(knots).unwrap();
        let xi = MonotonePath::new(SampledPath::new(grid, values, interp).unwrap()).unwrap();

        // Probes at segment midpoints stay off the jump set by half a step.
        let probes: Vec<f64> = (0..knots - 1).map(|k| k as f64 + 0.5).collect();
        let report = inverse_involution_check(&xi, &probes, Some(0.25));
        assert!(report.probes_used > 0, "path {i} kept no probes");
        assert!(
            report.within_one_step,
            "path {i}: double inverse strayed beyond one grid step in the argument"
        );
        assert!(
            report.max_discrepancy <= report.grid_resolution_bound + 1e-9,
            "path {i}: discrepancy {} above grid bound {}",
            report.max_discrepancy,
            report.grid_resolution_bound
        );
        worst = worst.max(report.max_discrepancy);
        used_total += report.probes_used;
    }
    println!(
        "criterion 6 (double-inverse involution): PASS [200 paths, {used_total} probes, max discrepancy {worst:.2e}]"
    );
}

#[test]
fn criterion_07_discrete_bridge_and_walk_speed() {
    let n = 100_000usize;
    let mut observed_max = 0.0f64;
    let mut lines = Vec::new();
    for (p, seed) in [(0.5, 700u64), (0.8, 708), (1.0, 710)] {
        let spec = ProcessSpec::new(ProcessKind::NnWalk { p }, n as f64, 1.0, seed).unwrap();
        let sim = simulate_replica(&spec, 0).unwrap();
        let sequence = match &sim.output {
            SimOutput::Walk { sequence, .. } => sequence.clone(),
            _ => unreachable!(),
        };
        let star = connect_dots(&sequence);
        let range = running_extrema(&star);
        let counts = discrete_range(&sequence);

        // Exhaustive over every integer time.
        let mut max_gap = 0.0f64;
        for k in 0..sequence.len() {
            let gap = (range.range_path().values()[k] - counts.counts()[k] as f64).abs();
            assert!(gap <= 2.0, "bridge bound violated at n={k} for p={p}");
            max_gap = max_gap.max(gap);
        }
        observed_max = observed_max.max(max_gap);

        let speed = *counts.counts().last().unwrap() as f64 / n as f64;
        let expected = (2.0 * p - 1.0f64).abs();
        if p == 0.8 || p == 0.5 {
            assert!(
                (speed - expected).abs() <= 0.02,
                "p={p}: speed {speed} vs {expected}"
            );
        }
        lines.push(format!("p={p}: speed {speed:.4}, max gap {max_gap}"));
    }
    println!(
        "criterion 7 (discrete bridge |R-r| <= 2, walk speed): PASS [{}; observed max gap {observed_max}]",
        lines.join("; ")
    );
}

#[test]
fn criterion_08_renewal_equivalence() {
    let mut lines = Vec::new();
    for (label, dist, seed) in [
        ("exp(1)", DistributionSpec::Exponential { rate: 1.0 }, 801u64),
        ("uniform(0,2)", DistributionSpec::Uniform { lo: 0.0, hi: 2.0 }, 802),
    ] {
        let spec = ProcessSpec::new(
            ProcessKind::Renewal {
                inter_arrival: dist,
            },
            101_000.0,
            1.0,
            seed,
        )
        .unwrap();
        let r = simulate_renewal(&spec).unwrap();
        let report = renewal_equivalence_check(&r);
        assert!(report.arrivals >= 100_000, "{label}: {} arrivals", report.arrivals);
        assert!(
            (report.arrival_ratio - 1.0).abs() <= 0.02,
            "{label}: T_n/n = {}",
            report.arrival_ratio
        );
        assert!(
            (report.counting_ratio - 1.0).abs() <= 0.02,
            "{label}: N_t/t = {}",
            report.counting_ratio
        );
        lines.push(format!(
            "{label}: ({:.4}, {:.4})",
            report.arrival_ratio, report.counting_ratio
        ));
    }

    let spec = ProcessSpec::new(
        ProcessKind::Renewal {
            inter_arrival: DistributionSpec::Deterministic { value: 2.0 },
        },
        10_000.0,
        1.0,
        803,
    )
    .unwrap();
    let report = renewal_equivalence_check(&simulate_renewal(&spec).unwrap());
    assert_eq!(report.arrival_ratio, 2.0);
    assert_eq!(report.counting_ratio, 0.5);
    lines.push("det(2): exact (2, 0.5)".into());
    println!("criterion 8 (renewal equivalence): PASS [{}]", lines.join("; "));
}

#[test]
fn criterion_09_bessel_and_pnorm_negligibility() {
    let cfg = ExperimentConfig::default();
    let cases: &[(&str, ProcessKind)] = &[
        ("(2,2)", ProcessKind::PnormBm { dim: 2, p: PNorm::Finite(2.0) }),
        ("(3,2)", ProcessKind::PnormBm { dim: 3, p: PNorm::Finite(2.0) }),
        ("(4,inf)", ProcessKind::PnormBm { dim: 4, p: PNorm::Infinity }),
        ("(2,0.5)", ProcessKind::PnormBm { dim: 2, p: PNorm::Finite(0.5) }),
    ];
    let mut lines = Vec::new();
    for (label, kind) in cases {
        let spec = ProcessSpec::new(kind.clone(), HORIZON, STEP, 900).unwrap();
        let summary = pnorm_negligibility_check(&spec, &cfg).unwrap();
        assert_eq!(summary.converged_replicas, 1, "{label} must converge");
        assert!(
            summary.range_slope.mean.abs() <= 0.15,
            "{label}: range slope {}",
            summary.range_slope.mean
        );
        lines.push(format!("{label}: {:.4}", summary.range_slope.mean));
    }

    // Both Bessel constructions must agree in verdict at n = 3.
    let norm_spec = ProcessSpec::new(ProcessKind::BesselNorm { dim: 3 }, HORIZON, STEP, 901).unwrap();
    let sde_spec = ProcessSpec::new(ProcessKind::BesselSde { dim: 3 }, HORIZON, STEP, 901).unwrap();
    let norm = pnorm_negligibility_check(&norm_spec, &cfg).unwrap();
    let sde = pnorm_negligibility_check(&sde_spec, &cfg).unwrap();
    assert_eq!(norm.converged_replicas, 1);
    assert_eq!(sde.converged_replicas, 1);
    assert!(norm.range_slope.mean.abs() <= 0.15);
    assert!(sde.range_slope.mean.abs() <= 0.15);
    lines.push(format!(
        "BES(3) norm {:.4} vs SDE {:.4}, verdicts agree",
        norm.range_slope.mean, sde.range_slope.mean
    ));
    println!(
        "criterion 9 (Bessel / p-norm range negligible): PASS [{}]",
        lines.join("; ")
    );
}

#[test]
fn criterion_10_sup_process_suite() {
    // Deterministic: f(t) = 2t + sin t; all four slopes within 0.01 of 2.
    let spec = ProcessSpec::new(
        ProcessKind::Deterministic {
            id: "linear_plus_sine".into(),
            param: Some(2.0),
        },
        HORIZON,
        0.1,
        0,
    )
    .unwrap();
    let summary = sup_slope_experiment(&spec, &ExperimentConfig::default()).unwrap();
    assert_eq!(summary.applicable_replicas, 1);
    for (label, m) in [
        ("f", summary.f_slope.mean.abs()),
        ("sup f", summary.sup_slope.mean),
        ("range f", summary.range_f_slope.mean),
        ("range sup f", summary.range_sup_slope.mean),
    ] {
        assert!((m - 2.0).abs() <= 0.01, "{label} slope {m}");
    }
    assert!((summary.sup_over_f.mean - 1.0).abs() <= 0.01);
    assert!(summary.pass);

    // Stochastic: drifted BM with eta = 1; sup slope and its range slope
    // within 0.05 of 1 over the replica mean.
    let stats = drift_fixture(1.0, HORIZON, 4110);
    let sup_mean = mean(stats.iter().map(|s| s.sup_slope));
    let range_sup_mean = mean(stats.iter().map(|s| s.range_sup_slope));
    assert!((sup_mean - 1.0).abs() <= 0.05, "sup slope mean {sup_mean}");
    assert!(
        (range_sup_mean - 1.0).abs() <= 0.05,
        "range-of-sup slope mean {range_sup_mean}"
    );
    println!(
        "criterion 10 (sup-process suite): PASS [deterministic four-way at 2; BM sup {sup_mean:.4}, range(sup) {range_sup_mean:.4}]"
    );
}

#[test]
fn criterion_11_bundled_manifests_are_reproducible() {
    let manifest_dir = concat!(env!("CARGO_MANIFEST_DIR"), "/manifests");
    let tmp = tempfile::tempdir().unwrap();
    for name in ["drift_eta1", "bm_zero", "renewal_exp1"] {
        let manifest = format!("{manifest_dir}/{name}.json");
        let mut reports = Vec::new();
        for run in 0..2 {
            let out = tmp.path().join(format!("{name}_{run}.json"));
            let status = std::process::Command::new(env!("CARGO_BIN_EXE_rangekit"))
                .args([
                    "verify",
                    &manifest,
                    "--no-timestamp",
                    "--out",
                    out.to_str().unwrap(),
                ])
                .current_dir(tmp.path())
                .output()
                .expect("verify runs");
            assert_eq!(
                status.status.code(),
                Some(0),
                "{name} run {run} failed: {}",
                String::from_utf8_lossy(&status.stdout)
            );
            reports.push(std::fs::read(&out).unwrap());
        }
        assert_eq!(reports[0], reports[1], "{name}: reruns must be byte-identical");
    }
    println!("criterion 11 (manifest reproducibility): PASS [3 manifests, byte-identical reruns, all green]");
}
