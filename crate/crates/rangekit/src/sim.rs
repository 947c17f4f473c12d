//! Seeded, reproducible process generators and the deterministic function
//! bank.
//!
//! Every generator is a pure function of a [`ProcessSpec`]: identical specs
//! (including the seed) produce bit-identical output. Monte Carlo replicas
//! and vector coordinates draw from decorrelated substreams keyed by
//! `(seed, replica, coordinate)`, so results do not depend on evaluation
//! order.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inverse::MonotonePath;
use crate::path::{connect_dots, IntegerSequence, Interpolation, SampledPath, TimeGrid};
use crate::rng::{stream_rng, substream};

// ─── Specs ──────────────────────────────────────────────────────────────

/// Order of a coordinate-wise norm; `Infinity` means the max of absolute
/// coordinates. Values below 1 are accepted and computed as written even
/// though they are not true norms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PNorm {
    Finite(f64),
    Infinity,
}

impl fmt::Display for PNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PNorm::Finite(p) => write!(f, "{p}"),
            PNorm::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for PNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(PNorm::Infinity);
        }
        let p: f64 = s
            .parse()
            .map_err(|e| Error::InvalidSpec(format!("bad norm order `{s}`: {e}")))?;
        Ok(PNorm::Finite(p))
    }
}

/// Law of renewal inter-arrivals.
#[derive(Clone, Debug, PartialEq)]
pub enum DistributionSpec {
    Exponential { rate: f64 },
    Deterministic { value: f64 },
    Uniform { lo: f64, hi: f64 },
}

impl DistributionSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            DistributionSpec::Exponential { rate } if !(rate > &0.0) => Err(Error::InvalidSpec(
                format!("exponential rate must be positive, got {rate}"),
            )),
            DistributionSpec::Deterministic { value } if !(value > &0.0) => Err(
                Error::InvalidSpec(format!("inter-arrival must be positive, got {value}")),
            ),
            DistributionSpec::Uniform { lo, hi } if !(*lo >= 0.0 && lo < hi) => {
                Err(Error::InvalidSpec(format!(
                    "uniform bounds must satisfy 0 <= lo < hi, got ({lo}, {hi})"
                )))
            }
            _ => Ok(()),
        }
    }

    /// Mean inter-arrival; the gamma of the renewal limit.
    pub fn mean(&self) -> f64 {
        match self {
            DistributionSpec::Exponential { rate } => 1.0 / rate,
            DistributionSpec::Deterministic { value } => *value,
            DistributionSpec::Uniform { lo, hi } => 0.5 * (lo + hi),
        }
    }

    /// One strictly positive draw. Draws that would round to zero are
    /// rejected and redrawn so arrival times stay strictly increasing.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        loop {
            let d = match self {
                DistributionSpec::Exponential { rate } => {
                    let u: f64 = rng.gen();
                    -(-u).ln_1p() / rate
                }
                DistributionSpec::Deterministic { value } => *value,
                DistributionSpec::Uniform { lo, hi } => {
                    // (lo, hi]: keeps draws positive even when lo == 0.
                    let u: f64 = 1.0 - rng.gen::<f64>();
                    lo + u * (hi - lo)
                }
            };
            if d > 0.0 {
                return d;
            }
        }
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributionSpec::Exponential { rate } => write!(f, "exp:{rate}"),
            DistributionSpec::Deterministic { value } => write!(f, "det:{value}"),
            DistributionSpec::Uniform { lo, hi } => write!(f, "uniform:{lo}:{hi}"),
        }
    }
}

/// What to simulate.
#[derive(Clone, Debug, PartialEq)]
pub enum ProcessKind {
    /// Standard Brownian motion from 0.
    StandardBm,
    /// Brownian motion plus `eta * t`.
    DriftedBm { eta: f64 },
    /// Independent Brownian coordinates.
    MultidimBm { dim: usize },
    /// Euclidean norm of multidimensional Brownian motion.
    BesselNorm { dim: usize },
    /// Euler-Maruyama solution of dX = dB + ((n-1)/2) dt / X.
    BesselSde { dim: usize },
    /// Coordinate-wise p-norm of multidimensional Brownian motion.
    PnormBm { dim: usize, p: PNorm },
    /// Partial sums of Rademacher(p) steps: +1 with probability p, else -1.
    NnWalk { p: f64 },
    /// Renewal counting process with the given inter-arrival law.
    Renewal { inter_arrival: DistributionSpec },
    /// Closed-form function from the bank, sampled on the grid.
    Deterministic { id: String, param: Option<f64> },
}

impl fmt::Display for ProcessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProcessKind::StandardBm => write!(f, "bm"),
            ProcessKind::DriftedBm { eta } => write!(f, "drift:{eta}"),
            ProcessKind::MultidimBm { dim } => write!(f, "mbm:{dim}"),
            ProcessKind::BesselNorm { dim } => write!(f, "bessel:{dim}"),
            ProcessKind::BesselSde { dim } => write!(f, "besselsde:{dim}"),
            ProcessKind::PnormBm { dim, p } => write!(f, "pnorm:{dim}:{p}"),
            ProcessKind::NnWalk { p } => write!(f, "walk:{p}"),
            ProcessKind::Renewal { inter_arrival } => write!(f, "renewal:{inter_arrival}"),
            ProcessKind::Deterministic { id, param } => match param {
                Some(v) => write!(f, "fn:{id}:{v}"),
                None => write!(f, "fn:{id}"),
            },
        }
    }
}

impl FromStr for ProcessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = |msg: &str| Error::InvalidSpec(format!("process `{s}`: {msg}"));
        let num = |v: &str| -> Result<f64> {
            v.parse()
                .map_err(|e| bad(&format!("bad number `{v}`: {e}")))
        };
        let dim = |v: &str| -> Result<usize> {
            v.parse()
                .map_err(|e| bad(&format!("bad dimension `{v}`: {e}")))
        };
        match parts.as_slice() {
            ["bm"] => Ok(ProcessKind::StandardBm),
            ["drift", eta] => Ok(ProcessKind::DriftedBm { eta: num(eta)? }),
            ["mbm", n] => Ok(ProcessKind::MultidimBm { dim: dim(n)? }),
            ["bessel", n] => Ok(ProcessKind::BesselNorm { dim: dim(n)? }),
            ["besselsde", n] => Ok(ProcessKind::BesselSde { dim: dim(n)? }),
            ["pnorm", n, p] => Ok(ProcessKind::PnormBm {
                dim: dim(n)?,
                p: p.parse()?,
            }),
            ["walk", p] => Ok(ProcessKind::NnWalk { p: num(p)? }),
            ["renewal", "exp", rate] => Ok(ProcessKind::Renewal {
                inter_arrival: DistributionSpec::Exponential { rate: num(rate)? },
            }),
            ["renewal", "det", value] => Ok(ProcessKind::Renewal {
                inter_arrival: DistributionSpec::Deterministic { value: num(value)? },
            }),
            ["renewal", "uniform", lo, hi] => Ok(ProcessKind::Renewal {
                inter_arrival: DistributionSpec::Uniform {
                    lo: num(lo)?,
                    hi: num(hi)?,
                },
            }),
            ["fn", id] => Ok(ProcessKind::Deterministic {
                id: id.to_string(),
                param: None,
            }),
            ["fn", id, param] => Ok(ProcessKind::Deterministic {
                id: id.to_string(),
                param: Some(num(param)?),
            }),
            _ => Err(bad("unrecognized form")),
        }
    }
}

/// Declarative description of one simulation: what, how far, how fine,
/// and from which seed. Serializes as `{process, horizon, step, seed}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecDto", into = "SpecDto")]
pub struct ProcessSpec {
    pub kind: ProcessKind,
    pub horizon: f64,
    pub step: f64,
    pub seed: u64,
}

#[derive(Serialize, Deserialize)]
struct SpecDto {
    process: String,
    horizon: f64,
    step: f64,
    seed: u64,
}

impl From<ProcessSpec> for SpecDto {
    fn from(spec: ProcessSpec) -> Self {
        SpecDto {
            process: spec.kind.to_string(),
            horizon: spec.horizon,
            step: spec.step,
            seed: spec.seed,
        }
    }
}

impl TryFrom<SpecDto> for ProcessSpec {
    type Error = Error;

    fn try_from(dto: SpecDto) -> Result<Self> {
        let spec = ProcessSpec {
            kind: dto.process.parse()?,
            horizon: dto.horizon,
            step: dto.step,
            seed: dto.seed,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl ProcessSpec {
    pub fn new(kind: ProcessKind, horizon: f64, step: f64, seed: u64) -> Result<Self> {
        let spec = Self {
            kind,
            horizon,
            step,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "horizon must be positive, got {}",
                self.horizon
            )));
        }
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "step must be positive, got {}",
                self.step
            )));
        }
        if self.step >= self.horizon {
            return Err(Error::InvalidSpec(format!(
                "step ({}) must be smaller than horizon ({})",
                self.step, self.horizon
            )));
        }
        match &self.kind {
            ProcessKind::NnWalk { p } => {
                if !(0.0..=1.0).contains(p) {
                    return Err(Error::InvalidSpec(format!(
                        "walk probability must lie in [0, 1], got {p}"
                    )));
                }
                if self.step != 1.0 {
                    return Err(Error::InvalidSpec(
                        "walks advance by unit steps; use step = 1".into(),
                    ));
                }
            }
            ProcessKind::MultidimBm { dim }
            | ProcessKind::BesselNorm { dim }
            | ProcessKind::BesselSde { dim } => {
                if *dim < 1 {
                    return Err(Error::InvalidSpec("dimension must be at least 1".into()));
                }
            }
            ProcessKind::PnormBm { dim, p } => {
                if *dim < 1 {
                    return Err(Error::InvalidSpec("dimension must be at least 1".into()));
                }
                if let PNorm::Finite(p) = p {
                    if !(p > &0.0) {
                        return Err(Error::InvalidSpec(format!(
                            "norm order must be positive, got {p}"
                        )));
                    }
                }
            }
            ProcessKind::Renewal { inter_arrival } => inter_arrival.validate()?,
            ProcessKind::Deterministic { id, param } => {
                function_bank(id, *param)?;
            }
            ProcessKind::StandardBm | ProcessKind::DriftedBm { .. } => {}
        }
        Ok(())
    }

    /// Flat `key=value` form, one key per line.
    pub fn to_config(&self) -> String {
        format!(
            "process={}\nhorizon={}\nstep={}\nseed={}\n",
            self.kind, self.horizon, self.step, self.seed
        )
    }

    /// Parses the flat `key=value` form; `#` starts a comment line.
    pub fn from_config(text: &str) -> Result<Self> {
        let mut process = None;
        let mut horizon = None;
        let mut step = None;
        let mut seed = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidSpec(format!("expected key=value, got `{line}`")))?;
            match key.trim() {
                "process" => process = Some(value.trim().to_string()),
                "horizon" => horizon = Some(parse_num(value)?),
                "step" => step = Some(parse_num(value)?),
                "seed" => {
                    seed = Some(value.trim().parse::<u64>().map_err(|e| {
                        Error::InvalidSpec(format!("bad seed `{value}`: {e}"))
                    })?)
                }
                other => {
                    return Err(Error::InvalidSpec(format!("unknown key `{other}`")));
                }
            }
        }
        let missing = |k: &str| Error::InvalidSpec(format!("missing key `{k}`"));
        let spec = ProcessSpec {
            kind: process.ok_or_else(|| missing("process"))?.parse()?,
            horizon: horizon.ok_or_else(|| missing("horizon"))?,
            step: step.ok_or_else(|| missing("step"))?,
            seed: seed.ok_or_else(|| missing("seed"))?,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Analytic long-run slope of the underlying path against psi = t, when
    /// one is known.
    pub fn expected_path_slope(&self) -> Option<SlopeLimit> {
        match &self.kind {
            ProcessKind::StandardBm => Some(SlopeLimit::Finite(0.0)),
            ProcessKind::DriftedBm { eta } => Some(SlopeLimit::Finite(*eta)),
            ProcessKind::BesselNorm { .. }
            | ProcessKind::BesselSde { .. }
            | ProcessKind::PnormBm { .. } => Some(SlopeLimit::Finite(0.0)),
            ProcessKind::NnWalk { p } => Some(SlopeLimit::Finite(2.0 * p - 1.0)),
            ProcessKind::Deterministic { id, param } => {
                function_bank(id, *param).ok().map(|b| b.limit)
            }
            ProcessKind::MultidimBm { .. } | ProcessKind::Renewal { .. } => None,
        }
    }
}

fn parse_num(value: &str) -> Result<f64> {
    value
        .trim()
        .parse()
        .map_err(|e| Error::InvalidSpec(format!("bad number `{value}`: {e}")))
}

// ─── Simulation ─────────────────────────────────────────────────────────

/// Realized output of one simulation.
#[derive(Clone, Debug)]
pub enum SimOutput {
    Path(SampledPath),
    Multi(Vec<SampledPath>),
    Walk {
        sequence: IntegerSequence,
        path: SampledPath,
    },
}

impl SimOutput {
    /// The scalar path carrying the process itself, when there is one.
    pub fn path(&self) -> Option<&SampledPath> {
        match self {
            SimOutput::Path(p) => Some(p),
            SimOutput::Walk { path, .. } => Some(path),
            SimOutput::Multi(_) => None,
        }
    }
}

/// Output plus bookkeeping produced alongside it.
#[derive(Clone, Debug)]
pub struct Simulation {
    pub output: SimOutput,
    /// Times the SDE scheme hit the positivity floor (Bessel SDE only).
    pub floor_clamps: u64,
}

/// Simulates replica 0 of a spec.
pub fn simulate(spec: &ProcessSpec) -> Result<Simulation> {
    simulate_replica(spec, 0)
}

/// Simulates one replica; replicas draw from disjoint substreams and can
/// run concurrently in any order.
pub fn simulate_replica(spec: &ProcessSpec, replica: u32) -> Result<Simulation> {
    spec.validate()?;
    let mut floor_clamps = 0;
    let output = match &spec.kind {
        ProcessKind::StandardBm => SimOutput::Path(brownian(spec, replica, 0, 0.0)?),
        ProcessKind::DriftedBm { eta } => SimOutput::Path(brownian(spec, replica, 0, *eta)?),
        ProcessKind::MultidimBm { dim } => SimOutput::Multi(multidim(spec, replica, *dim)?),
        ProcessKind::BesselNorm { dim } => {
            let coords = multidim(spec, replica, *dim)?;
            SimOutput::Path(norm_path(&coords, PNorm::Finite(2.0))?)
        }
        ProcessKind::PnormBm { dim, p } => {
            let coords = multidim(spec, replica, *dim)?;
            SimOutput::Path(norm_path(&coords, *p)?)
        }
        ProcessKind::BesselSde { dim } => {
            let (path, clamps) = bessel_sde(spec, replica, *dim)?;
            floor_clamps = clamps;
            SimOutput::Path(path)
        }
        ProcessKind::NnWalk { p } => {
            let sequence = walk(spec, replica, *p)?;
            let path = connect_dots(&sequence);
            SimOutput::Walk { sequence, path }
        }
        ProcessKind::Renewal { .. } => {
            SimOutput::Path(simulate_renewal_replica(spec, replica)?.counting().clone())
        }
        ProcessKind::Deterministic { id, param } => {
            let bank = function_bank(id, *param)?;
            let grid = TimeGrid::uniform(spec.horizon, spec.step)?;
            SimOutput::Path(bank.sample_f(grid)?)
        }
    };
    Ok(Simulation {
        output,
        floor_clamps,
    })
}

fn brownian(spec: &ProcessSpec, replica: u32, coord: u32, eta: f64) -> Result<SampledPath> {
    let grid = Arc::new(TimeGrid::uniform(spec.horizon, spec.step)?);
    let sqrt_step = spec.step.sqrt();
    let mut rng = stream_rng(spec.seed, substream(replica, coord));
    let times = grid.times();
    let mut values = Vec::with_capacity(grid.len());
    let mut b = 0.0;
    values.push(b + eta * times[0]);
    for &t in &times[1..] {
        let z: f64 = rng.sample(StandardNormal);
        b += sqrt_step * z;
        // Drift is added on top of the same noise path, so a drifted run
        // with the same seed decomposes exactly as B_t + eta * t.
        values.push(b + eta * t);
    }
    SampledPath::new(grid, values, Interpolation::PiecewiseLinear)
}

fn multidim(spec: &ProcessSpec, replica: u32, dim: usize) -> Result<Vec<SampledPath>> {
    (0..dim)
        .map(|i| brownian(spec, replica, i as u32, 0.0))
        .collect()
}

fn norm_path(coords: &[SampledPath], p: PNorm) -> Result<SampledPath> {
    let grid = Arc::clone(coords[0].grid());
    let n = grid.len();
    let mut values = vec![0.0; n];
    match p {
        PNorm::Infinity => {
            for c in coords {
                for (v, x) in values.iter_mut().zip(c.values()) {
                    *v = f64::max(*v, x.abs());
                }
            }
        }
        PNorm::Finite(p) => {
            for c in coords {
                for (v, x) in values.iter_mut().zip(c.values()) {
                    *v += x.abs().powf(p);
                }
            }
            for v in &mut values {
                *v = v.powf(1.0 / p);
            }
        }
    }
    SampledPath::new(grid, values, Interpolation::PiecewiseLinear)
}

fn bessel_sde(spec: &ProcessSpec, replica: u32, dim: usize) -> Result<(SampledPath, u64)> {
    let grid = Arc::new(TimeGrid::uniform(spec.horizon, spec.step)?);
    let sqrt_step = spec.step.sqrt();
    // The drift (n-1)/(2X) blows up near zero and an Euler step can cross
    // it; clamp at x0 = step and count the events.
    let floor = spec.step;
    let drift_coeff = 0.5 * (dim as f64 - 1.0);
    let mut rng = stream_rng(spec.seed, substream(replica, 0));
    let mut values = Vec::with_capacity(grid.len());
    let mut clamps = 0u64;
    let mut x = floor;
    values.push(x);
    for _ in 1..grid.len() {
        let z: f64 = rng.sample(StandardNormal);
        x += drift_coeff / x * spec.step + sqrt_step * z;
        if x < floor {
            x = floor;
            clamps += 1;
        }
        values.push(x);
    }
    let path = SampledPath::new(grid, values, Interpolation::PiecewiseLinear)?;
    Ok((path, clamps))
}

fn walk(spec: &ProcessSpec, replica: u32, p: f64) -> Result<IntegerSequence> {
    let steps = spec.horizon.round() as usize;
    if steps < 1 {
        return Err(Error::InvalidSpec(
            "walk horizon must cover at least one step".into(),
        ));
    }
    let mut rng = stream_rng(spec.seed, substream(replica, 0));
    let mut values = Vec::with_capacity(steps + 1);
    let mut x = 0i64;
    values.push(x);
    for _ in 0..steps {
        let u: f64 = rng.gen();
        x += if u < p { 1 } else { -1 };
        values.push(x);
    }
    IntegerSequence::nearest_neighbor(values)
}

// ─── Renewal processes ──────────────────────────────────────────────────

/// One renewal realization: the arrival sequence T_n (indexed path) and the
/// counting step path N_t on [0, horizon].
#[derive(Clone, Debug)]
pub struct RenewalRealization {
    arrivals: MonotonePath,
    counting: SampledPath,
}

impl RenewalRealization {
    /// Arrival times as a path over the index n; value at knot n is T_n,
    /// with T_0 = 0.
    pub fn arrivals(&self) -> &MonotonePath {
        &self.arrivals
    }

    /// The counting process N_t as a right-continuous step path.
    pub fn counting(&self) -> &SampledPath {
        &self.counting
    }

    /// Number of arrivals realized within the horizon.
    pub fn arrival_count(&self) -> usize {
        self.arrivals.base().len() - 1
    }
}

/// Draws inter-arrivals until the partial sum exceeds the horizon.
pub fn simulate_renewal(spec: &ProcessSpec) -> Result<RenewalRealization> {
    simulate_renewal_replica(spec, 0)
}

pub fn simulate_renewal_replica(spec: &ProcessSpec, replica: u32) -> Result<RenewalRealization> {
    let dist = match &spec.kind {
        ProcessKind::Renewal { inter_arrival } => inter_arrival,
        other => {
            return Err(Error::InvalidSpec(format!(
                "simulate_renewal needs a renewal spec, got `{other}`"
            )))
        }
    };
    dist.validate()?;
    let mut rng = stream_rng(spec.seed, substream(replica, 0));
    let mut arrivals = vec![0.0f64];
    let mut sum = 0.0;
    loop {
        sum += dist.sample(&mut rng);
        if sum > spec.horizon {
            break;
        }
        arrivals.push(sum);
    }

    let count = arrivals.len() - 1;
    let mut counting_times = arrivals.clone();
    let mut counting_values: Vec<f64> = (0..=count).map(|n| n as f64).collect();
    if *counting_times.last().unwrap() < spec.horizon {
        counting_times.push(spec.horizon);
        counting_values.push(count as f64);
    }
    let counting = SampledPath::new(
        TimeGrid::new(counting_times)?,
        counting_values,
        Interpolation::StepRightContinuous,
    )?;

    let index_grid = TimeGrid::integers(count + 1)?;
    let arrivals = MonotonePath::new(SampledPath::new(
        index_grid,
        arrivals,
        Interpolation::PiecewiseLinear,
    )?)?;
    Ok(RenewalRealization { arrivals, counting })
}

// ─── Function bank ──────────────────────────────────────────────────────

/// Known long-run slope of a ratio f/psi.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum SlopeLimit {
    Finite(f64),
    Infinite,
    /// The ratio oscillates; nothing is asserted about it.
    Undefined,
}

/// A closed-form test pair (f, psi) with analytically known limit of f/psi.
#[derive(Clone)]
pub struct BankFunction {
    pub id: String,
    pub param: Option<f64>,
    pub limit: SlopeLimit,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    psi: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl BankFunction {
    pub fn f(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    pub fn psi(&self, t: f64) -> f64 {
        (self.psi)(t)
    }

    pub fn sample_f<G: Into<Arc<TimeGrid>>>(&self, grid: G) -> Result<SampledPath> {
        let f = Arc::clone(&self.f);
        SampledPath::from_fn(grid, Interpolation::PiecewiseLinear, move |t| f(t))
    }

    pub fn sample_psi<G: Into<Arc<TimeGrid>>>(&self, grid: G) -> Result<SampledPath> {
        let psi = Arc::clone(&self.psi);
        SampledPath::from_fn(grid, Interpolation::PiecewiseLinear, move |t| psi(t))
    }
}

impl fmt::Debug for BankFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BankFunction")
            .field("id", &self.id)
            .field("param", &self.param)
            .field("limit", &self.limit)
            .finish()
    }
}

/// Bank ids, their functions, and their known limits against psi.
///
/// | id                | f(t)                      | psi(t) | limit    |
/// |-------------------|---------------------------|--------|----------|
/// | `drift_sine`      | eta·t + sqrt(t)·sin(t)    | t      | eta      |
/// | `drift_sqrt`      | eta·t + sqrt(t)           | t      | eta      |
/// | `linear_plus_sine`| eta·t + sin(t)            | t      | eta      |
/// | `sqrt_over_t`     | sqrt(t)                   | t      | 0        |
/// | `quadratic`       | t^2                       | t      | infinite |
/// | `log_drift`       | -3t + ln(1+t)             | t      | -3       |
/// | `osc_no_limit`    | t·(2 + sin(ln(1+t)))      | t      | none     |
///
/// `drift_sine`, `drift_sqrt`, and `linear_plus_sine` take eta as the
/// parameter (defaults 1, 3, and 2); the others take none. `osc_no_limit`
/// has no limit and nothing is asserted about it.
pub fn function_bank(id: &str, param: Option<f64>) -> Result<BankFunction> {
    let t_norm: Arc<dyn Fn(f64) -> f64 + Send + Sync> = Arc::new(|t| t);
    let reject_param = |id: &str| -> Result<()> {
        if param.is_some() {
            return Err(Error::InvalidSpec(format!(
                "bank function `{id}` takes no parameter"
            )));
        }
        Ok(())
    };
    let bank = match id {
        "drift_sine" => {
            let eta = param.unwrap_or(1.0);
            BankFunction {
                id: id.into(),
                param: Some(eta),
                limit: SlopeLimit::Finite(eta),
                f: Arc::new(move |t| eta * t + t.sqrt() * t.sin()),
                psi: t_norm,
            }
        }
        "drift_sqrt" => {
            let eta = param.unwrap_or(3.0);
            BankFunction {
                id: id.into(),
                param: Some(eta),
                limit: SlopeLimit::Finite(eta),
                f: Arc::new(move |t| eta * t + t.sqrt()),
                psi: t_norm,
            }
        }
        "linear_plus_sine" => {
            let eta = param.unwrap_or(2.0);
            BankFunction {
                id: id.into(),
                param: Some(eta),
                limit: SlopeLimit::Finite(eta),
                f: Arc::new(move |t| eta * t + t.sin()),
                psi: t_norm,
            }
        }
        "sqrt_over_t" => {
            reject_param(id)?;
            BankFunction {
                id: id.into(),
                param: None,
                limit: SlopeLimit::Finite(0.0),
                f: Arc::new(|t| t.sqrt()),
                psi: t_norm,
            }
        }
        "quadratic" => {
            reject_param(id)?;
            BankFunction {
                id: id.into(),
                param: None,
                limit: SlopeLimit::Infinite,
                f: Arc::new(|t| t * t),
                psi: t_norm,
            }
        }
        "log_drift" => {
            reject_param(id)?;
            BankFunction {
                id: id.into(),
                param: None,
                limit: SlopeLimit::Finite(-3.0),
                f: Arc::new(|t| -3.0 * t + t.ln_1p()),
                psi: t_norm,
            }
        }
        "osc_no_limit" => {
            reject_param(id)?;
            BankFunction {
                id: id.into(),
                param: None,
                limit: SlopeLimit::Undefined,
                f: Arc::new(|t| t * (2.0 + t.ln_1p().sin())),
                psi: t_norm,
            }
        }
        other => return Err(Error::UnknownFunction(other.into())),
    };
    Ok(bank)
}

pub const BANK_IDS: &[&str] = &[
    "drift_sine",
    "drift_sqrt",
    "linear_plus_sine",
    "sqrt_over_t",
    "quadratic",
    "log_drift",
    "osc_no_limit",
];

/// Builds a normalizer path on a grid from its id: `t`, `sqrt`, or
/// `custom:<bank id>` for a bank function's psi.
pub fn normalizer_path<G: Into<Arc<TimeGrid>>>(id: &str, grid: G) -> Result<SampledPath> {
    let grid = grid.into();
    match id {
        "t" => SampledPath::from_fn(grid, Interpolation::PiecewiseLinear, |t| t),
        "sqrt" => SampledPath::from_fn(grid, Interpolation::PiecewiseLinear, |t| t.sqrt()),
        custom => {
            let bank_id = custom
                .strip_prefix("custom:")
                .ok_or_else(|| Error::UnknownNormalizer(custom.into()))?;
            let (id, param) = match bank_id.split_once(':') {
                Some((id, p)) => (id, Some(parse_num(p)?)),
                None => (bank_id, None),
            };
            function_bank(id, param)?.sample_psi(grid)
        }
    }
}
