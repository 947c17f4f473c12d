//! Generalized inverses of non-decreasing paths.
//!
//! Two conventions are supported for a non-decreasing `xi`:
//!
//! * strict: `inf { x : xi(x) > y }`, the right-continuous inverse;
//! * weak:   `inf { x : xi(x) >= y }`, the left-continuous inverse.
//!
//! The two agree except where `xi` is flat at the queried level or jumps
//! across it. The first-range-time of a path is the strict inverse of its
//! range path. On a finite horizon the infimum of an empty super-level set
//! is reported as an in-band [`Crossing::Saturated`] carrying the horizon,
//! since "never within the horizon" is not distinguishable from "not yet".
//!
//! Inverses are resolved by binary search over knots followed by exact
//! algebra on the located linear segment (or the jump knot for step paths),
//! so the result is exact for the interpolated object rather than
//! grid-quantized.

use crate::error::{Error, Result};
use crate::extrema::ExtremaTriple;
use crate::path::{fmt_f64, Interpolation, SampledPath};

/// A sampled path certified non-decreasing at construction.
#[derive(Clone, Debug)]
pub struct MonotonePath {
    base: SampledPath,
}

impl MonotonePath {
    pub fn new(base: SampledPath) -> Result<Self> {
        if let Some(k) = base.values().windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::NotMonotone { index: k + 1 });
        }
        Ok(Self { base })
    }

    /// Wraps values already known to be non-decreasing (running extrema
    /// output); checked only in debug builds.
    pub(crate) fn new_unchecked(base: SampledPath) -> Self {
        debug_assert!(base.values().windows(2).all(|w| w[1] >= w[0]));
        Self { base }
    }

    pub fn base(&self) -> &SampledPath {
        &self.base
    }

    pub fn evaluate(&self, t: f64) -> Result<f64> {
        self.base.evaluate(t)
    }

    pub fn horizon(&self) -> f64 {
        self.base.horizon()
    }

    /// Knot times where a step-mode path changes value. Piecewise-linear
    /// paths are continuous and have none.
    pub fn jump_times(&self) -> Vec<f64> {
        match self.base.interpolation() {
            Interpolation::PiecewiseLinear => Vec::new(),
            Interpolation::StepRightContinuous => {
                let times = self.base.grid().times();
                self.base
                    .values()
                    .windows(2)
                    .enumerate()
                    .filter(|(_, w)| w[1] != w[0])
                    .map(|(k, _)| times[k + 1])
                    .collect()
            }
        }
    }
}

/// Inverse convention: strict uses `>`, weak uses `>=`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    Strict,
    Weak,
}

/// A codomain level to invert at, under one of the two conventions.
#[derive(Clone, Copy, Debug)]
pub struct InverseQuery {
    pub level: f64,
    pub convention: Convention,
}

impl InverseQuery {
    pub fn strict(level: f64) -> Self {
        Self {
            level,
            convention: Convention::Strict,
        }
    }

    pub fn weak(level: f64) -> Self {
        Self {
            level,
            convention: Convention::Weak,
        }
    }
}

/// Result of an inverse query on a finite horizon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Crossing {
    /// The level is crossed at this time.
    At(f64),
    /// The super-level set is empty up to the stated horizon.
    Saturated { horizon: f64 },
}

impl Crossing {
    pub fn value(&self) -> Option<f64> {
        match self {
            Crossing::At(t) => Some(*t),
            Crossing::Saturated { .. } => None,
        }
    }

    pub fn is_saturated(&self) -> bool {
        matches!(self, Crossing::Saturated { .. })
    }

    /// Saturation maps to +infinity, matching the infimum of an empty set.
    pub fn time_or_infinity(&self) -> f64 {
        match self {
            Crossing::At(t) => *t,
            Crossing::Saturated { .. } => f64::INFINITY,
        }
    }
}

/// Generalized inverse of a non-decreasing path at a query level.
pub fn generalized_inverse(xi: &MonotonePath, q: InverseQuery) -> Crossing {
    inverse_scan(
        xi.base.grid().times(),
        xi.base.values(),
        xi.base.interpolation(),
        q,
    )
}

/// Shared kernel for inverse queries on knot arrays known to be sorted.
pub(crate) fn inverse_scan(
    times: &[f64],
    values: &[f64],
    interpolation: Interpolation,
    q: InverseQuery,
) -> Crossing {
    let y = q.level;
    let k = match q.convention {
        Convention::Strict => values.partition_point(|&v| v <= y),
        Convention::Weak => values.partition_point(|&v| v < y),
    };
    if k == values.len() {
        return Crossing::Saturated {
            horizon: *times.last().expect("non-empty path"),
        };
    }
    if k == 0 {
        return Crossing::At(0.0);
    }
    match interpolation {
        Interpolation::StepRightContinuous => Crossing::At(times[k]),
        Interpolation::PiecewiseLinear => {
            // values[k-1] <= y < values[k] (strict) or values[k-1] < y <= values[k]
            // (weak); the segment rises, so solve it exactly.
            let (t0, t1) = (times[k - 1], times[k]);
            let (v0, v1) = (values[k - 1], values[k]);
            let x = t0 + (y - v0) * (t1 - t0) / (v1 - v0);
            Crossing::At(x.clamp(t0, t1))
        }
    }
}

/// First time a range level is strictly exceeded, or saturation.
#[derive(Clone, Copy, Debug)]
pub struct FirstRangeTime {
    pub level: f64,
    pub time: Crossing,
}

/// First-range-time: the strict inverse of the range path at level `a`.
pub fn first_range_time(triple: &ExtremaTriple, a: f64) -> Result<FirstRangeTime> {
    if !(a >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "range level must be non-negative, got {a}"
        )));
    }
    let range = triple.range_path();
    let time = inverse_scan(
        range.grid().times(),
        range.values(),
        range.interpolation(),
        InverseQuery::strict(a),
    );
    Ok(FirstRangeTime { level: a, time })
}

/// Outcome of the two duality probes at a level/time pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualityProbe {
    /// `R_t < a` holds exactly when the first-range-time of `a` is >= t.
    pub equivalence: bool,
    /// The first-range-time evaluated at `R_t` is >= t.
    pub lower_bound: bool,
}

impl DualityProbe {
    pub fn both_hold(&self) -> bool {
        self.equivalence && self.lower_bound
    }
}

/// Probes the range/first-range-time duality at `(a, t)`.
///
/// The second probe allows an ulp-scale slack: the level is obtained by
/// interpolating the range path at `t` and inverting it again, a float
/// round-trip that can land a few ulps left of `t` on rising segments.
pub fn check_duality(triple: &ExtremaTriple, a: f64, t: f64) -> Result<DualityProbe> {
    if !(a >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "range level must be non-negative, got {a}"
        )));
    }
    let range = triple.range_path();
    let r_t = range.evaluate(t)?;
    let strict = |level: f64| {
        inverse_scan(
            range.grid().times(),
            range.values(),
            range.interpolation(),
            InverseQuery::strict(level),
        )
        .time_or_infinity()
    };
    let theta_a = strict(a);
    let equivalence = (r_t < a) == (theta_a >= t);
    let slack = 64.0 * f64::EPSILON * t.abs().max(1.0);
    let lower_bound = strict(r_t) >= t - slack;
    Ok(DualityProbe {
        equivalence,
        lower_bound,
    })
}

/// Report of a double-inverse comparison against the original path.
#[derive(Clone, Debug)]
pub struct InvolutionReport {
    /// Largest |double-inverse(x) - xi(x)| over the retained probes.
    pub max_discrepancy: f64,
    /// Largest one-step value change of xi; the resolution at which the
    /// identity can be asserted on sampled data.
    pub grid_resolution_bound: f64,
    /// True when every double-inverse value stays between xi evaluated one
    /// grid step left and right of the probe.
    pub within_one_step: bool,
    pub probes_used: usize,
    pub probes_excluded: usize,
}

/// Evaluates the double strict inverse at probe points and compares it with
/// `xi` itself.
///
/// The identity holds almost everywhere for non-decreasing functions; the
/// countable jump set is excluded here by dropping probes within `delta` of
/// a jump (default: one grid step).
pub fn inverse_involution_check(
    xi: &MonotonePath,
    probe_points: &[f64],
    delta: Option<f64>,
) -> InvolutionReport {
    let times = xi.base.grid().times();
    let max_spacing = times
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0f64, f64::max);
    let delta = delta.unwrap_or(max_spacing);
    let jumps = xi.jump_times();
    let horizon = xi.horizon();

    let grid_resolution_bound = xi
        .base
        .values()
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(0.0f64, f64::max);

    let mut max_discrepancy = 0.0f64;
    let mut within_one_step = true;
    let mut used = 0;
    let mut excluded = 0;
    for &x in probe_points {
        if !(0.0..=horizon).contains(&x) || jumps.iter().any(|&j| (x - j).abs() <= delta) {
            excluded += 1;
            continue;
        }
        used += 1;
        let dd = double_inverse_at(xi, x);
        let direct = xi.evaluate(x).expect("probe inside the domain");
        max_discrepancy = max_discrepancy.max((dd - direct).abs());

        let lo = xi.evaluate((x - max_spacing).max(0.0)).expect("in domain");
        let hi = xi.evaluate((x + max_spacing).min(horizon)).expect("in domain");
        let slack = 1e-9 * (1.0 + direct.abs());
        if dd < lo - slack || dd > hi + slack {
            within_one_step = false;
        }
    }
    InvolutionReport {
        max_discrepancy,
        grid_resolution_bound,
        within_one_step,
        probes_used: used,
        probes_excluded: excluded,
    }
}

/// `inf { y : xi_dagger(y) > x }` by monotone bisection over levels; uses
/// only pointwise strict-inverse queries, never a closed form of xi.
fn double_inverse_at(xi: &MonotonePath, x: f64) -> f64 {
    let in_set = |y: f64| {
        generalized_inverse(xi, InverseQuery::strict(y)).time_or_infinity() > x
    };
    let mut lo = xi.base.first_value() - 1.0;
    let mut hi = xi.base.last_value() + 1.0;
    debug_assert!(!in_set(lo) || x < 0.0);
    debug_assert!(in_set(hi));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if in_set(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Inverse-transform sampling: the weak inverse of a sampled CDF at `u`.
///
/// `u` must lie strictly inside (0, 1). When `u` exceeds the CDF's sampled
/// maximum (a truncated tail), the horizon is returned.
pub fn inverse_transform_sample(cdf: &MonotonePath, u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "u must lie in (0, 1), got {u}"
        )));
    }
    if cdf.base.first_value() < 0.0 || cdf.base.last_value() > 1.0 {
        return Err(Error::InvalidPath(
            "cdf values must lie within [0, 1]".into(),
        ));
    }
    Ok(generalized_inverse(cdf, InverseQuery::weak(u))
        .value()
        .unwrap_or_else(|| cdf.horizon()))
}

/// Writes first-range-times as CSV with header `level,time`; saturation is
/// written as `inf`.
pub fn write_first_range_times_csv<W: std::io::Write>(
    ladder: &[FirstRangeTime],
    mut w: W,
) -> Result<()> {
    writeln!(w, "level,time")?;
    for frt in ladder {
        match frt.time {
            Crossing::At(t) => writeln!(w, "{},{}", fmt_f64(frt.level), fmt_f64(t))?,
            Crossing::Saturated { .. } => writeln!(w, "{},inf", fmt_f64(frt.level))?,
        }
    }
    Ok(())
}

/// Writes a generalized-inverse trace as CSV with header `y,x`, one row per
/// queried level; saturation is written as `inf`.
pub fn write_inverse_trace_csv<W: std::io::Write>(
    xi: &MonotonePath,
    convention: Convention,
    levels: &[f64],
    mut w: W,
) -> Result<()> {
    writeln!(w, "y,x")?;
    for &level in levels {
        let crossing = generalized_inverse(xi, InverseQuery { level, convention });
        match crossing {
            Crossing::At(x) => writeln!(w, "{},{}", fmt_f64(level), fmt_f64(x))?,
            Crossing::Saturated { .. } => writeln!(w, "{},inf", fmt_f64(level))?,
        }
    }
    Ok(())
}
