//! Long-run slope estimation and the deterministic limit checks.
//!
//! The central estimator is [`slope`]: the pointwise ratio of a path
//! against a normalizer, summarized over a tail window. A ratio whose tail
//! spread is small has converged; a ratio that grows monotonically through
//! the tail and has gained an order of magnitude since the start of the
//! trace is diverging; anything else is inconclusive. On top of the
//! estimator sit the transfer checks: a path's slope against its range
//! slope, its running-sup slope, the first-range-time ladder, and the
//! renewal arrival/counting equivalence.
//!
//! All finite-horizon tolerances are artifact-level choices: the defaults
//! (last 10% of the horizon, 5% relative spread) match the sqrt(T)/T
//! fluctuation scale of Brownian experiments at horizon 10^4.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extrema::{running_extrema, sup_process, ExtremaTriple};
use crate::inverse::{first_range_time, Crossing};
use crate::path::SampledPath;
use crate::sim::RenewalRealization;

/// Default tail window: the last 10% of the horizon.
pub const DEFAULT_TAIL_FRACTION: f64 = 0.1;
/// Default spread tolerance: 5% of |tail mean|, absolute below 1.
pub const DEFAULT_SPREAD_TOLERANCE: f64 = 0.05;
/// A diverging ratio must have grown by this factor since the trace start.
pub const DIVERGENCE_FACTOR: f64 = 10.0;
/// Number of levels in the first-range-time ladder.
pub const THETA_LADDER_LEVELS: usize = 20;
/// The ladder spans this range of the realized final range. Levels near
/// 100% are biased by horizon truncation.
pub const THETA_LADDER_SPAN: (f64, f64) = (0.05, 0.8);
/// Arrivals needed before the renewal ratios mean anything.
pub const MIN_RENEWAL_ARRIVALS: usize = 1000;

/// Tail window and spread tolerance for slope estimation.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SlopeConfig {
    pub tail_fraction: f64,
    pub spread_tolerance: f64,
}

impl Default for SlopeConfig {
    fn default() -> Self {
        Self {
            tail_fraction: DEFAULT_TAIL_FRACTION,
            spread_tolerance: DEFAULT_SPREAD_TOLERANCE,
        }
    }
}

impl SlopeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tail_fraction > 0.0 && self.tail_fraction < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "tail fraction must lie in (0, 1), got {}",
                self.tail_fraction
            )));
        }
        if !(self.spread_tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "spread tolerance must be positive, got {}",
                self.spread_tolerance
            )));
        }
        Ok(())
    }
}

/// Outcome of a slope estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", content = "value", rename_all = "snake_case")]
pub enum Verdict {
    Converged(f64),
    Diverging,
    Inconclusive,
}

impl Verdict {
    pub fn converged_value(&self) -> Option<f64> {
        match self {
            Verdict::Converged(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_diverging(&self) -> bool {
        matches!(self, Verdict::Diverging)
    }
}

/// The ratio trace f/psi with its tail summary.
#[derive(Clone, Debug)]
pub struct SlopeEstimate {
    /// Pointwise ratio on the shared grid. Knots where the normalizer is
    /// not yet positive (only possible before the tail) carry ratio 0.
    pub ratio_trace: SampledPath,
    pub tail_mean: f64,
    /// Max minus min of the ratio over the tail window.
    pub tail_spread: f64,
    pub tail_fraction: f64,
    pub verdict: Verdict,
}

/// Estimates the long-run ratio of `path` against `psi` over a tail window.
///
/// The verdict is `Converged(tail_mean)` when the tail spread stays within
/// the tolerance (relative above 1, absolute below), `Diverging` when the
/// ratio magnitude is non-decreasing across the tail and has grown by
/// [`DIVERGENCE_FACTOR`] since the first positive-normalizer knot, and
/// `Inconclusive` otherwise.
pub fn slope(path: &SampledPath, psi: &SampledPath, cfg: SlopeConfig) -> Result<SlopeEstimate> {
    cfg.validate()?;
    if path.grid().times() != psi.grid().times() {
        return Err(Error::GridMismatch(format!(
            "path has {} knots to horizon {}, psi has {} to {}",
            path.len(),
            path.horizon(),
            psi.len(),
            psi.horizon()
        )));
    }
    let times = path.grid().times();
    let horizon = path.horizon();
    let tail_start = (1.0 - cfg.tail_fraction) * horizon;

    let mut ratio = Vec::with_capacity(path.len());
    let mut first_positive: Option<f64> = None;
    for k in 0..path.len() {
        let psi_k = psi.values()[k];
        if psi_k > 0.0 {
            let r = path.values()[k] / psi_k;
            if first_positive.is_none() {
                first_positive = Some(r);
            }
            ratio.push(r);
        } else {
            if times[k] >= tail_start {
                return Err(Error::InvalidArgument(format!(
                    "normalizer must be positive on the tail, found {psi_k} at t = {}",
                    times[k]
                )));
            }
            ratio.push(0.0);
        }
    }

    let tail: Vec<f64> = times
        .iter()
        .zip(&ratio)
        .filter(|(t, _)| **t >= tail_start)
        .map(|(_, r)| *r)
        .collect();
    debug_assert!(!tail.is_empty());
    let tail_mean = tail.iter().sum::<f64>() / tail.len() as f64;
    let tail_max = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let tail_min = tail.iter().cloned().fold(f64::INFINITY, f64::min);
    let tail_spread = tail_max - tail_min;

    let threshold = cfg.spread_tolerance * tail_mean.abs().max(1.0);
    let verdict = if tail_spread <= threshold {
        Verdict::Converged(tail_mean)
    } else {
        let monotone = tail.windows(2).all(|w| w[1].abs() >= w[0].abs());
        let reference = first_positive
            .map(f64::abs)
            .unwrap_or(0.0)
            .max(cfg.spread_tolerance);
        if monotone && tail.last().unwrap().abs() >= DIVERGENCE_FACTOR * reference {
            Verdict::Diverging
        } else {
            Verdict::Inconclusive
        }
    };

    let ratio_trace = SampledPath::new(
        std::sync::Arc::clone(path.grid()),
        ratio,
        path.interpolation(),
    )?;
    Ok(SlopeEstimate {
        ratio_trace,
        tail_mean,
        tail_spread,
        tail_fraction: cfg.tail_fraction,
        verdict,
    })
}

/// Slopes of a path and of its range against the same normalizer.
#[derive(Clone, Debug)]
pub struct RangeSlopeReport {
    pub path_slope: SlopeEstimate,
    pub range_slope: SlopeEstimate,
    /// Whether the range slope tracks |path slope|: equal verdict class,
    /// and values within the spread tolerance when both converged. `None`
    /// when either verdict is inconclusive.
    pub consistent: Option<bool>,
}

/// Checks that the range of a path inherits |slope| from the path itself.
pub fn range_slope_check(
    path: &SampledPath,
    psi: &SampledPath,
    cfg: SlopeConfig,
) -> Result<RangeSlopeReport> {
    let path_slope = slope(path, psi, cfg)?;
    let range = running_extrema(path).into_range_path();
    let range_slope = slope(&range, psi, cfg)?;
    let consistent = match (path_slope.verdict, range_slope.verdict) {
        (Verdict::Converged(lp), Verdict::Converged(lr)) => {
            let tol = cfg.spread_tolerance * lp.abs().max(1.0);
            Some((lr - lp.abs()).abs() <= tol)
        }
        (Verdict::Diverging, Verdict::Diverging) => Some(true),
        (Verdict::Converged(_), Verdict::Diverging)
        | (Verdict::Diverging, Verdict::Converged(_)) => Some(false),
        _ => None,
    };
    Ok(RangeSlopeReport {
        path_slope,
        range_slope,
        consistent,
    })
}

/// Four-way comparison of f, sup f, R(f), and R(sup f) against psi.
#[derive(Clone, Debug)]
pub struct SupSlopeReport {
    /// False when the precondition (slope converged to l > 0, or l = 0 with
    /// an eventually positive path) does not hold; fields are still filled
    /// but assert nothing.
    pub applicable: bool,
    pub f_slope: SlopeEstimate,
    pub sup_slope: SlopeEstimate,
    pub range_f_slope: SlopeEstimate,
    pub range_sup_slope: SlopeEstimate,
    /// Tail mean of sup f / f; tends to 1 when applicable.
    pub sup_over_f_tail_mean: f64,
    pub sup_over_f_tail_spread: f64,
    /// Largest pairwise gap among the four tail means (path slope taken in
    /// absolute value).
    pub four_way_max_gap: f64,
}

/// Checks that a path, its running sup, and both their ranges share the
/// same long-run slope.
pub fn sup_slope_check(
    path: &SampledPath,
    psi: &SampledPath,
    cfg: SlopeConfig,
) -> Result<SupSlopeReport> {
    let f_slope = slope(path, psi, cfg)?;
    let sup = sup_process(path);
    let sup_slope = slope(&sup, psi, cfg)?;
    let range_f = running_extrema(path).into_range_path();
    let range_f_slope = slope(&range_f, psi, cfg)?;
    let range_sup = running_extrema(&sup).into_range_path();
    let range_sup_slope = slope(&range_sup, psi, cfg)?;

    let times = path.grid().times();
    let tail_start = (1.0 - cfg.tail_fraction) * path.horizon();
    let mut tail_min_f = f64::INFINITY;
    let mut ratios = Vec::new();
    for k in 0..path.len() {
        if times[k] >= tail_start {
            let f_k = path.values()[k];
            tail_min_f = tail_min_f.min(f_k);
            if f_k != 0.0 {
                ratios.push(sup.values()[k] / f_k);
            }
        }
    }
    let (sup_over_f_tail_mean, sup_over_f_tail_spread) = if ratios.is_empty() {
        (f64::NAN, f64::NAN)
    } else {
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let max = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        (mean, max - min)
    };

    let applicable = match f_slope.verdict {
        Verdict::Converged(l) if l > 0.0 => true,
        Verdict::Converged(l) => l.abs() <= cfg.spread_tolerance && tail_min_f > 0.0,
        _ => false,
    };

    let means = [
        f_slope.tail_mean.abs(),
        sup_slope.tail_mean,
        range_f_slope.tail_mean,
        range_sup_slope.tail_mean,
    ];
    let four_way_max_gap = means.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - means.iter().cloned().fold(f64::INFINITY, f64::min);

    Ok(SupSlopeReport {
        applicable,
        f_slope,
        sup_slope,
        range_f_slope,
        range_sup_slope,
        sup_over_f_tail_mean,
        sup_over_f_tail_spread,
        four_way_max_gap,
    })
}

/// First-range-time ratios over a ladder of levels.
#[derive(Clone, Debug)]
pub struct ThetaLadderReport {
    /// False when the realized range is too small for a meaningful ladder.
    pub applicable: bool,
    pub levels: Vec<f64>,
    /// First-range-times per level; `None` marks saturation.
    pub times: Vec<Option<f64>>,
    /// theta(a)/a per realized level.
    pub ratios: Vec<f64>,
    /// Mean ratio over the top half of the ladder.
    pub ladder_slope: f64,
    /// Ratio at the highest level.
    pub top_ratio: f64,
}

/// Evaluates theta(a)/a over a geometric ladder of levels inside the
/// realized range.
pub fn inverse_slope_check(triple: &ExtremaTriple) -> Result<ThetaLadderReport> {
    let total = triple.total_range();
    if !(total > 0.0) {
        return Ok(ThetaLadderReport {
            applicable: false,
            levels: Vec::new(),
            times: Vec::new(),
            ratios: Vec::new(),
            ladder_slope: f64::NAN,
            top_ratio: f64::NAN,
        });
    }
    let (lo_frac, hi_frac) = THETA_LADDER_SPAN;
    let n = THETA_LADDER_LEVELS;
    let growth = hi_frac / lo_frac;
    let mut levels = Vec::with_capacity(n);
    let mut times = Vec::with_capacity(n);
    let mut ratios = Vec::with_capacity(n);
    for i in 0..n {
        let a = lo_frac * total * growth.powf(i as f64 / (n - 1) as f64);
        let t = first_range_time(triple, a)?.time;
        levels.push(a);
        times.push(t.value());
        if let Crossing::At(t) = t {
            ratios.push(t / a);
        }
    }
    if ratios.len() < n {
        // Levels sit strictly inside the realized range, so saturation
        // means numerically degenerate data.
        return Ok(ThetaLadderReport {
            applicable: false,
            levels,
            times,
            ratios,
            ladder_slope: f64::NAN,
            top_ratio: f64::NAN,
        });
    }
    let top_half = &ratios[n / 2..];
    let ladder_slope = top_half.iter().sum::<f64>() / top_half.len() as f64;
    let top_ratio = *ratios.last().unwrap();
    Ok(ThetaLadderReport {
        applicable: true,
        levels,
        times,
        ratios,
        ladder_slope,
        top_ratio,
    })
}

/// Tail ratios of one renewal realization.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RenewalReport {
    /// False when fewer than [`MIN_RENEWAL_ARRIVALS`] arrivals realized.
    pub applicable: bool,
    pub arrivals: usize,
    /// T_n / n at the last realized arrival.
    pub arrival_ratio: f64,
    /// N_t / t at the horizon.
    pub counting_ratio: f64,
}

/// Measures both sides of the arrival/counting equivalence.
pub fn renewal_equivalence_check(r: &RenewalRealization) -> RenewalReport {
    let n = r.arrival_count();
    let applicable = n >= MIN_RENEWAL_ARRIVALS;
    let arrival_ratio = if n > 0 {
        r.arrivals().base().last_value() / n as f64
    } else {
        f64::NAN
    };
    let counting = r.counting();
    let counting_ratio = counting.last_value() / counting.horizon();
    RenewalReport {
        applicable,
        arrivals: n,
        arrival_ratio,
        counting_ratio,
    }
}
