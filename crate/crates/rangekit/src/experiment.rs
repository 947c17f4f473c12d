//! Replica-level experiments behind the manifest runner.
//!
//! Each experiment simulates `replicas` seeded replicas of one process
//! (replica index = RNG substream, so results are independent of execution
//! order), applies a check to every replica, and folds the per-replica
//! estimates with an associative (count, mean, min, max) merge. Pass rules
//! and default tolerances live here so a manifest run is fully pinned by
//! its JSON alone.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extrema::running_extrema;
use crate::inverse::{check_duality, inverse_involution_check, MonotonePath};
use crate::path::SampledPath;
use crate::rng::{stream_rng, substream, AUX_COORD_PROBES};
use crate::sim::{
    normalizer_path, simulate_renewal_replica, simulate_replica, ProcessKind, ProcessSpec,
    Simulation, SlopeLimit,
};
use crate::slope::{
    inverse_slope_check, range_slope_check, renewal_equivalence_check, slope, sup_slope_check,
    SlopeConfig, Verdict,
};
use rand::Rng;

pub const DUALITY_PROBES_PER_REPLICA: usize = 1000;
pub const INVOLUTION_PROBES_PER_REPLICA: usize = 100;
/// A driftless first-range-time ladder passes when the top ratio exceeds this.
pub const THETA_DIVERGENCE_RATIO: f64 = 10.0;

/// Associative summary of per-replica estimates.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ReplicaStats {
    pub count: u64,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl ReplicaStats {
    pub fn from_value(v: f64) -> Self {
        Self {
            count: 1,
            mean: v,
            min: v,
            max: v,
        }
    }

    /// Count-weighted merge; associative and order-insensitive up to float
    /// rounding.
    pub fn merge(a: Self, b: Self) -> Self {
        let count = a.count + b.count;
        Self {
            count,
            mean: (a.mean * a.count as f64 + b.mean * b.count as f64) / count as f64,
            min: a.min.min(b.min),
            max: a.max.max(b.max),
        }
    }

    pub fn collect(values: impl IntoIterator<Item = f64>) -> Option<Self> {
        values
            .into_iter()
            .map(Self::from_value)
            .reduce(Self::merge)
    }
}

/// How an experiment is run: normalizer, replica count, slope window, and
/// an optional tolerance override.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub psi: String,
    pub replicas: u32,
    pub slope: SlopeConfig,
    pub tolerance: Option<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            psi: "t".into(),
            replicas: 1,
            slope: SlopeConfig::default(),
            tolerance: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.replicas < 1 {
            return Err(Error::InvalidArgument("replicas must be at least 1".into()));
        }
        self.slope.validate()
    }
}

fn scalar_path(sim: &Simulation) -> Result<&SampledPath> {
    sim.output.path().ok_or_else(|| {
        Error::InvalidSpec("this check needs a scalar path, not a vector process".into())
    })
}

fn psi_for(cfg: &ExperimentConfig, path: &SampledPath) -> Result<SampledPath> {
    normalizer_path(&cfg.psi, Arc::clone(path.grid()))
}

fn expected_slope(spec: &ProcessSpec) -> Result<SlopeLimit> {
    spec.expected_path_slope().ok_or_else(|| {
        Error::InvalidSpec(format!(
            "no scalar slope expectation for process `{}`",
            spec.kind
        ))
    })
}

fn is_deterministic(spec: &ProcessSpec) -> bool {
    matches!(spec.kind, ProcessKind::Deterministic { .. })
}

/// Step-halving applies to grid-discretized processes only; walks advance
/// by unit steps and renewal grids are arrival-driven.
fn supports_step_halving(spec: &ProcessSpec) -> bool {
    !matches!(
        spec.kind,
        ProcessKind::NnWalk { .. } | ProcessKind::Renewal { .. }
    )
}

fn halved(spec: &ProcessSpec) -> ProcessSpec {
    ProcessSpec {
        kind: spec.kind.clone(),
        horizon: spec.horizon,
        step: spec.step * 0.5,
        seed: spec.seed,
    }
}

// ─── Range slope ────────────────────────────────────────────────────────

#[derive(Clone, Debug, Serialize)]
pub struct RangeSlopeSummary {
    pub expected: SlopeLimit,
    pub tolerance: f64,
    pub path_slope: ReplicaStats,
    pub range_slope: ReplicaStats,
    pub range_converged: u32,
    pub range_diverging: u32,
    pub range_inconclusive: u32,
    pub consistent_replicas: u32,
    pub floor_clamps: u64,
    /// |range slope of replica 0 at step/2 minus at step|; fresh noise at
    /// the finer step, so this mixes discretization and Monte Carlo error.
    pub halving_delta: Option<f64>,
    pub pass: bool,
}

fn default_range_tolerance(spec: &ProcessSpec, expected: SlopeLimit) -> f64 {
    match expected {
        SlopeLimit::Finite(l) => {
            if is_deterministic(spec) {
                0.02
            } else if l == 0.0 {
                0.1
            } else {
                0.05 * l.abs().max(1.0)
            }
        }
        _ => 0.0,
    }
}

/// Runs the range-slope transfer check over replicas.
pub fn range_slope_experiment(
    spec: &ProcessSpec,
    cfg: &ExperimentConfig,
) -> Result<RangeSlopeSummary> {
    cfg.validate()?;
    let expected = expected_slope(spec)?;
    let tolerance = cfg
        .tolerance
        .unwrap_or_else(|| default_range_tolerance(spec, expected));

    struct Per {
        path_mean: f64,
        range_mean: f64,
        verdict: Verdict,
        consistent: bool,
        clamps: u64,
    }
    let per: Vec<Per> = (0..cfg.replicas)
        .into_par_iter()
        .map(|r| -> Result<Per> {
            let sim = simulate_replica(spec, r)?;
            let path = scalar_path(&sim)?;
            let psi = psi_for(cfg, path)?;
            let report = range_slope_check(path, &psi, cfg.slope)?;
            Ok(Per {
                path_mean: report.path_slope.tail_mean,
                range_mean: report.range_slope.tail_mean,
                verdict: report.range_slope.verdict,
                consistent: report.consistent.unwrap_or(false),
                clamps: sim.floor_clamps,
            })
        })
        .collect::<Result<_>>()?;

    let path_slope = ReplicaStats::collect(per.iter().map(|p| p.path_mean)).unwrap();
    let range_slope = ReplicaStats::collect(per.iter().map(|p| p.range_mean)).unwrap();
    let range_converged = per
        .iter()
        .filter(|p| p.verdict.converged_value().is_some())
        .count() as u32;
    let range_diverging = per.iter().filter(|p| p.verdict.is_diverging()).count() as u32;
    let range_inconclusive = cfg.replicas - range_converged - range_diverging;
    let consistent_replicas = per.iter().filter(|p| p.consistent).count() as u32;
    let floor_clamps = per.iter().map(|p| p.clamps).sum();

    let halving_delta = if supports_step_halving(spec) {
        let sim = simulate_replica(&halved(spec), 0)?;
        let path = scalar_path(&sim)?;
        let psi = psi_for(cfg, path)?;
        let report = range_slope_check(path, &psi, cfg.slope)?;
        Some((report.range_slope.tail_mean - per[0].range_mean).abs())
    } else {
        None
    };

    let pass = match expected {
        SlopeLimit::Finite(l) => {
            range_converged == cfg.replicas && (range_slope.mean - l.abs()).abs() <= tolerance
        }
        SlopeLimit::Infinite => range_diverging == cfg.replicas,
        // Oscillating bank entries assert nothing; the summary still
        // records what happened.
        SlopeLimit::Undefined => true,
    };

    Ok(RangeSlopeSummary {
        expected,
        tolerance,
        path_slope,
        range_slope,
        range_converged,
        range_diverging,
        range_inconclusive,
        consistent_replicas,
        floor_clamps,
        halving_delta,
        pass,
    })
}

// ─── Sup-process slope ──────────────────────────────────────────────────

#[derive(Clone, Debug, Serialize)]
pub struct SupSlopeSummary {
    pub expected: SlopeLimit,
    pub tolerance: f64,
    pub f_slope: ReplicaStats,
    pub sup_slope: ReplicaStats,
    pub range_f_slope: ReplicaStats,
    pub range_sup_slope: ReplicaStats,
    pub sup_over_f: ReplicaStats,
    pub applicable_replicas: u32,
    pub pass: bool,
}

/// Runs the four-way sup/range slope agreement check over replicas.
pub fn sup_slope_experiment(
    spec: &ProcessSpec,
    cfg: &ExperimentConfig,
) -> Result<SupSlopeSummary> {
    cfg.validate()?;
    let expected = expected_slope(spec)?;
    let tolerance = cfg.tolerance.unwrap_or_else(|| {
        if is_deterministic(spec) {
            0.01
        } else {
            match expected {
                SlopeLimit::Finite(l) => 0.05 * l.abs().max(1.0),
                _ => 0.05,
            }
        }
    });

    struct Per {
        f: f64,
        sup: f64,
        range_f: f64,
        range_sup: f64,
        sup_over_f: f64,
        applicable: bool,
    }
    let per: Vec<Per> = (0..cfg.replicas)
        .into_par_iter()
        .map(|r| -> Result<Per> {
            let sim = simulate_replica(spec, r)?;
            let path = scalar_path(&sim)?;
            let psi = psi_for(cfg, path)?;
            let report = sup_slope_check(path, &psi, cfg.slope)?;
            Ok(Per {
                f: report.f_slope.tail_mean,
                sup: report.sup_slope.tail_mean,
                range_f: report.range_f_slope.tail_mean,
                range_sup: report.range_sup_slope.tail_mean,
                sup_over_f: report.sup_over_f_tail_mean,
                applicable: report.applicable,
            })
        })
        .collect::<Result<_>>()?;

    let f_slope = ReplicaStats::collect(per.iter().map(|p| p.f)).unwrap();
    let sup_slope = ReplicaStats::collect(per.iter().map(|p| p.sup)).unwrap();
    let range_f_slope = ReplicaStats::collect(per.iter().map(|p| p.range_f)).unwrap();
    let range_sup_slope = ReplicaStats::collect(per.iter().map(|p| p.range_sup)).unwrap();
    let sup_over_f = ReplicaStats::collect(per.iter().map(|p| p.sup_over_f)).unwrap();
    let applicable_replicas = per.iter().filter(|p| p.applicable).count() as u32;

    // Precondition violations are inconclusive, not failures.
    let pass = if applicable_replicas < cfg.replicas {
        true
    } else {
        match expected {
            SlopeLimit::Finite(l) => {
                let target = l.abs();
                [f_slope.mean.abs(), sup_slope.mean, range_f_slope.mean, range_sup_slope.mean]
                    .iter()
                    .all(|m| (m - target).abs() <= tolerance)
                    && (sup_over_f.mean - 1.0).abs() <= tolerance
            }
            _ => true,
        }
    };

    Ok(SupSlopeSummary {
        expected,
        tolerance,
        f_slope,
        sup_slope,
        range_f_slope,
        range_sup_slope,
        sup_over_f,
        applicable_replicas,
        pass,
    })
}

// ─── First-range-time slope ─────────────────────────────────────────────

#[derive(Clone, Debug, Serialize)]
pub struct InverseSlopeSummary {
    pub expected: SlopeLimit,
    /// 1/|expected| when the expected slope is finite and nonzero.
    pub expected_reciprocal: Option<f64>,
    pub tolerance: f64,
    pub ladder_slope: ReplicaStats,
    pub top_ratio: ReplicaStats,
    pub applicable_replicas: u32,
    pub pass: bool,
}

/// Runs the first-range-time ladder check over replicas.
pub fn inverse_slope_experiment(
    spec: &ProcessSpec,
    cfg: &ExperimentConfig,
) -> Result<InverseSlopeSummary> {
    cfg.validate()?;
    let expected = expected_slope(spec)?;
    let expected_reciprocal = match expected {
        SlopeLimit::Finite(l) if l != 0.0 => Some(1.0 / l.abs()),
        _ => None,
    };
    let tolerance = cfg.tolerance.unwrap_or_else(|| match expected_reciprocal {
        Some(r) => 0.05 * r.abs().max(1.0),
        None => 0.05,
    });

    let per: Vec<(Option<(f64, f64)>, bool)> = (0..cfg.replicas)
        .into_par_iter()
        .map(|r| -> Result<(Option<(f64, f64)>, bool)> {
            let sim = simulate_replica(spec, r)?;
            let path = scalar_path(&sim)?;
            let triple = running_extrema(path);
            let report = inverse_slope_check(&triple)?;
            if report.applicable {
                Ok((Some((report.ladder_slope, report.top_ratio)), true))
            } else {
                Ok((None, false))
            }
        })
        .collect::<Result<_>>()?;

    let applicable_replicas = per.iter().filter(|p| p.1).count() as u32;
    let ladder_slope = ReplicaStats::collect(per.iter().filter_map(|p| p.0.map(|v| v.0)))
        .unwrap_or(ReplicaStats {
            count: 0,
            mean: f64::NAN,
            min: f64::NAN,
            max: f64::NAN,
        });
    let top_ratio = ReplicaStats::collect(per.iter().filter_map(|p| p.0.map(|v| v.1)))
        .unwrap_or(ReplicaStats {
            count: 0,
            mean: f64::NAN,
            min: f64::NAN,
            max: f64::NAN,
        });

    let pass = if applicable_replicas < cfg.replicas {
        false
    } else {
        match expected {
            SlopeLimit::Finite(l) if l != 0.0 => {
                (ladder_slope.mean - 1.0 / l.abs()).abs() <= tolerance
            }
            // Driftless: the time to exceed a level outgrows the level.
            SlopeLimit::Finite(_) => top_ratio.mean > THETA_DIVERGENCE_RATIO,
            // Infinite path slope: the range explodes, so theta flattens.
            SlopeLimit::Infinite => ladder_slope.mean <= tolerance,
            SlopeLimit::Undefined => true,
        }
    };

    Ok(InverseSlopeSummary {
        expected,
        expected_reciprocal,
        tolerance,
        ladder_slope,
        top_ratio,
        applicable_replicas,
        pass,
    })
}

// ─── Renewal equivalence ────────────────────────────────────────────────

#[derive(Clone, Debug, Serialize)]
pub struct RenewalSummary {
    pub gamma: f64,
    pub tolerance: f64,
    pub arrival_ratio: ReplicaStats,
    pub counting_ratio: ReplicaStats,
    pub min_arrivals: usize,
    pub applicable_replicas: u32,
    pub pass: bool,
}

/// Runs the arrival/counting ratio equivalence over replicas.
pub fn renewal_experiment(spec: &ProcessSpec, cfg: &ExperimentConfig) -> Result<RenewalSummary> {
    cfg.validate()?;
    let gamma = match &spec.kind {
        ProcessKind::Renewal { inter_arrival } => inter_arrival.mean(),
        other => {
            return Err(Error::InvalidSpec(format!(
                "renewal check needs a renewal process, got `{other}`"
            )))
        }
    };
    let tolerance = cfg.tolerance.unwrap_or(0.02 * gamma.max(1.0));

    let per: Vec<(f64, f64, usize, bool)> = (0..cfg.replicas)
        .into_par_iter()
        .map(|r| -> Result<(f64, f64, usize, bool)> {
            let realization = simulate_renewal_replica(spec, r)?;
            let report = renewal_equivalence_check(&realization);
            Ok((
                report.arrival_ratio,
                report.counting_ratio,
                report.arrivals,
                report.applicable,
            ))
        })
        .collect::<Result<_>>()?;

    let arrival_ratio = ReplicaStats::collect(per.iter().map(|p| p.0)).unwrap();
    let counting_ratio = ReplicaStats::collect(per.iter().map(|p| p.1)).unwrap();
    let min_arrivals = per.iter().map(|p| p.2).min().unwrap_or(0);
    let applicable_replicas = per.iter().filter(|p| p.3).count() as u32;

    let pass = applicable_replicas == cfg.replicas
        && (arrival_ratio.mean - gamma).abs() <= tolerance
        && (counting_ratio.mean - 1.0 / gamma).abs() <= tolerance;

    Ok(RenewalSummary {
        gamma,
        tolerance,
        arrival_ratio,
        counting_ratio,
        min_arrivals,
        applicable_replicas,
        pass,
    })
}

// ─── Norm-process negligibility ─────────────────────────────────────────

#[derive(Clone, Debug, Serialize)]
pub struct PnormSummary {
    pub threshold: f64,
    pub range_slope: ReplicaStats,
    pub converged_replicas: u32,
    pub floor_clamps: u64,
    pub halving_delta: Option<f64>,
    pub pass: bool,
}

/// Checks that the range of a norm-like process is negligible against t:
/// converged verdict with |slope| at most the threshold.
pub fn pnorm_negligibility_check(
    spec: &ProcessSpec,
    cfg: &ExperimentConfig,
) -> Result<PnormSummary> {
    cfg.validate()?;
    let threshold = cfg.tolerance.unwrap_or(0.15);

    let per: Vec<(f64, bool, u64)> = (0..cfg.replicas)
        .into_par_iter()
        .map(|r| -> Result<(f64, bool, u64)> {
            let sim = simulate_replica(spec, r)?;
            let path = scalar_path(&sim)?;
            let psi = psi_for(cfg, path)?;
            let range = running_extrema(path).into_range_path();
            let est = slope(&range, &psi, cfg.slope)?;
            Ok((
                est.tail_mean,
                est.verdict.converged_value().is_some(),
                sim.floor_clamps,
            ))
        })
        .collect::<Result<_>>()?;

    let range_slope = ReplicaStats::collect(per.iter().map(|p| p.0)).unwrap();
    let converged_replicas = per.iter().filter(|p| p.1).count() as u32;
    let floor_clamps = per.iter().map(|p| p.2).sum();

    let halving_delta = if supports_step_halving(spec) {
        let sim = simulate_replica(&halved(spec), 0)?;
        let path = scalar_path(&sim)?;
        let psi = psi_for(cfg, path)?;
        let range = running_extrema(path).into_range_path();
        let est = slope(&range, &psi, cfg.slope)?;
        Some((est.tail_mean - per[0].0).abs())
    } else {
        None
    };

    let pass = converged_replicas == cfg.replicas && range_slope.mean.abs() <= threshold;

    Ok(PnormSummary {
        threshold,
        range_slope,
        converged_replicas,
        floor_clamps,
        halving_delta,
        pass,
    })
}

// ─── Duality probes ─────────────────────────────────────────────────────

#[derive(Clone, Debug, Serialize)]
pub struct DualitySummary {
    pub probes_per_replica: usize,
    pub total_probes: usize,
    pub equivalence_violations: usize,
    pub lower_bound_violations: usize,
    pub pass: bool,
}

/// Probes the range/first-range-time duality at random (level, time) pairs
/// on every replica.
pub fn duality_experiment(spec: &ProcessSpec, cfg: &ExperimentConfig) -> Result<DualitySummary> {
    cfg.validate()?;
    let per: Vec<(usize, usize)> = (0..cfg.replicas)
        .into_par_iter()
        .map(|r| -> Result<(usize, usize)> {
            let sim = simulate_replica(spec, r)?;
            let path = scalar_path(&sim)?;
            let triple = running_extrema(path);
            let horizon = path.horizon();
            // Levels range a little past the realized range so saturated
            // first-range-times are probed too.
            let level_cap = 1.2 * triple.total_range().max(1e-6);
            let mut rng = stream_rng(spec.seed, substream(r, AUX_COORD_PROBES));
            let mut eq_viol = 0;
            let mut lb_viol = 0;
            for _ in 0..DUALITY_PROBES_PER_REPLICA {
                let a = rng.gen::<f64>() * level_cap;
                let t = rng.gen::<f64>() * horizon;
                let probe = check_duality(&triple, a, t)?;
                if !probe.equivalence {
                    eq_viol += 1;
                }
                if !probe.lower_bound {
                    lb_viol += 1;
                }
            }
            Ok((eq_viol, lb_viol))
        })
        .collect::<Result<_>>()?;

    let equivalence_violations = per.iter().map(|p| p.0).sum();
    let lower_bound_violations = per.iter().map(|p| p.1).sum();
    let total_probes = DUALITY_PROBES_PER_REPLICA * cfg.replicas as usize;
    Ok(DualitySummary {
        probes_per_replica: DUALITY_PROBES_PER_REPLICA,
        total_probes,
        equivalence_violations,
        lower_bound_violations,
        pass: equivalence_violations == 0 && lower_bound_violations == 0,
    })
}

// ─── Involution probes ──────────────────────────────────────────────────

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionSummary {
    pub probes_used: usize,
    pub probes_excluded: usize,
    pub max_discrepancy: f64,
    pub grid_resolution_bound: f64,
    pub within_one_step: bool,
    pub pass: bool,
}

/// Double-inverts each replica's range path at random probe points and
/// compares against the range path itself.
pub fn involution_experiment(
    spec: &ProcessSpec,
    cfg: &ExperimentConfig,
) -> Result<InvolutionSummary> {
    cfg.validate()?;
    let per: Vec<(usize, usize, f64, f64, bool)> = (0..cfg.replicas)
        .into_par_iter()
        .map(|r| -> Result<(usize, usize, f64, f64, bool)> {
            let sim = simulate_replica(spec, r)?;
            let path = scalar_path(&sim)?;
            let range = running_extrema(path).into_range_path();
            let horizon = range.horizon();
            let xi = MonotonePath::new_unchecked(range);
            let mut rng = stream_rng(spec.seed, substream(r, AUX_COORD_PROBES));
            let probes: Vec<f64> = (0..INVOLUTION_PROBES_PER_REPLICA)
                .map(|_| rng.gen::<f64>() * horizon)
                .collect();
            let report = inverse_involution_check(&xi, &probes, None);
            Ok((
                report.probes_used,
                report.probes_excluded,
                report.max_discrepancy,
                report.grid_resolution_bound,
                report.within_one_step,
            ))
        })
        .collect::<Result<_>>()?;

    let probes_used = per.iter().map(|p| p.0).sum();
    let probes_excluded = per.iter().map(|p| p.1).sum();
    let max_discrepancy = per.iter().map(|p| p.2).fold(0.0f64, f64::max);
    let grid_resolution_bound = per.iter().map(|p| p.3).fold(0.0f64, f64::max);
    let within_one_step = per.iter().all(|p| p.4);
    let pass = within_one_step
        && max_discrepancy <= grid_resolution_bound + 1e-9 * (1.0 + grid_resolution_bound);
    Ok(InvolutionSummary {
        probes_used,
        probes_excluded,
        max_discrepancy,
        grid_resolution_bound,
        within_one_step,
        pass,
    })
}

// ─── Summary union ──────────────────────────────────────────────────────

/// One check's summary; the surrounding report carries the check id, so
/// the union serializes transparently.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum CheckSummary {
    RangeSlope(RangeSlopeSummary),
    SupSlope(SupSlopeSummary),
    InverseSlope(InverseSlopeSummary),
    Renewal(RenewalSummary),
    Pnorm(PnormSummary),
    Duality(DualitySummary),
    Involution(InvolutionSummary),
}

impl CheckSummary {
    pub fn pass(&self) -> bool {
        match self {
            CheckSummary::RangeSlope(s) => s.pass,
            CheckSummary::SupSlope(s) => s.pass,
            CheckSummary::InverseSlope(s) => s.pass,
            CheckSummary::Renewal(s) => s.pass,
            CheckSummary::Pnorm(s) => s.pass,
            CheckSummary::Duality(s) => s.pass,
            CheckSummary::Involution(s) => s.pass,
        }
    }

    /// Flat metric rows for the CSV report format.
    pub fn metrics(&self) -> Vec<(String, String)> {
        fn stats(rows: &mut Vec<(String, String)>, prefix: &str, s: &ReplicaStats) {
            rows.push((format!("{prefix}_mean"), s.mean.to_string()));
            rows.push((format!("{prefix}_min"), s.min.to_string()));
            rows.push((format!("{prefix}_max"), s.max.to_string()));
            rows.push((format!("{prefix}_count"), s.count.to_string()));
        }
        fn limit(l: &SlopeLimit) -> String {
            match l {
                SlopeLimit::Finite(v) => v.to_string(),
                SlopeLimit::Infinite => "infinite".into(),
                SlopeLimit::Undefined => "undefined".into(),
            }
        }
        let mut rows = Vec::new();
        match self {
            CheckSummary::RangeSlope(s) => {
                rows.push(("expected".into(), limit(&s.expected)));
                rows.push(("tolerance".into(), s.tolerance.to_string()));
                stats(&mut rows, "path_slope", &s.path_slope);
                stats(&mut rows, "range_slope", &s.range_slope);
                rows.push(("range_converged".into(), s.range_converged.to_string()));
                rows.push(("range_diverging".into(), s.range_diverging.to_string()));
                rows.push((
                    "consistent_replicas".into(),
                    s.consistent_replicas.to_string(),
                ));
                rows.push(("floor_clamps".into(), s.floor_clamps.to_string()));
                if let Some(d) = s.halving_delta {
                    rows.push(("halving_delta".into(), d.to_string()));
                }
            }
            CheckSummary::SupSlope(s) => {
                rows.push(("expected".into(), limit(&s.expected)));
                rows.push(("tolerance".into(), s.tolerance.to_string()));
                stats(&mut rows, "f_slope", &s.f_slope);
                stats(&mut rows, "sup_slope", &s.sup_slope);
                stats(&mut rows, "range_f_slope", &s.range_f_slope);
                stats(&mut rows, "range_sup_slope", &s.range_sup_slope);
                stats(&mut rows, "sup_over_f", &s.sup_over_f);
                rows.push((
                    "applicable_replicas".into(),
                    s.applicable_replicas.to_string(),
                ));
            }
            CheckSummary::InverseSlope(s) => {
                rows.push(("expected".into(), limit(&s.expected)));
                if let Some(r) = s.expected_reciprocal {
                    rows.push(("expected_reciprocal".into(), r.to_string()));
                }
                rows.push(("tolerance".into(), s.tolerance.to_string()));
                stats(&mut rows, "ladder_slope", &s.ladder_slope);
                stats(&mut rows, "top_ratio", &s.top_ratio);
                rows.push((
                    "applicable_replicas".into(),
                    s.applicable_replicas.to_string(),
                ));
            }
            CheckSummary::Renewal(s) => {
                rows.push(("gamma".into(), s.gamma.to_string()));
                rows.push(("tolerance".into(), s.tolerance.to_string()));
                stats(&mut rows, "arrival_ratio", &s.arrival_ratio);
                stats(&mut rows, "counting_ratio", &s.counting_ratio);
                rows.push(("min_arrivals".into(), s.min_arrivals.to_string()));
            }
            CheckSummary::Pnorm(s) => {
                rows.push(("threshold".into(), s.threshold.to_string()));
                stats(&mut rows, "range_slope", &s.range_slope);
                rows.push((
                    "converged_replicas".into(),
                    s.converged_replicas.to_string(),
                ));
                rows.push(("floor_clamps".into(), s.floor_clamps.to_string()));
                if let Some(d) = s.halving_delta {
                    rows.push(("halving_delta".into(), d.to_string()));
                }
            }
            CheckSummary::Duality(s) => {
                rows.push(("total_probes".into(), s.total_probes.to_string()));
                rows.push((
                    "equivalence_violations".into(),
                    s.equivalence_violations.to_string(),
                ));
                rows.push((
                    "lower_bound_violations".into(),
                    s.lower_bound_violations.to_string(),
                ));
            }
            CheckSummary::Involution(s) => {
                rows.push(("probes_used".into(), s.probes_used.to_string()));
                rows.push(("probes_excluded".into(), s.probes_excluded.to_string()));
                rows.push(("max_discrepancy".into(), s.max_discrepancy.to_string()));
                rows.push((
                    "grid_resolution_bound".into(),
                    s.grid_resolution_bound.to_string(),
                ));
                rows.push(("within_one_step".into(), s.within_one_step.to_string()));
            }
        }
        rows
    }
}
