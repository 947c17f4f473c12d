//! Sampled paths on finite time grids.
//!
//! A [`SampledPath`] is a finite grid of knot times with one value per knot
//! and an interpolation rule. Piecewise-linear interpolation is the
//! continuous embedding used for simulated processes; right-continuous
//! steps are used for monotone inverses and renewal counting. All types are
//! immutable after construction and safe to share across threads.

use std::io::{BufRead, Write};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Interpolation rule between knots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpolation {
    /// Connect consecutive knots by straight segments.
    PiecewiseLinear,
    /// Hold each knot value until the next knot (right-continuous).
    StepRightContinuous,
}

/// Strictly increasing knot times starting at zero.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeGrid {
    times: Vec<f64>,
    uniform_step: Option<f64>,
}

impl TimeGrid {
    /// Builds a grid from explicit knot times.
    ///
    /// Times must be finite, strictly increasing, and start at exactly zero.
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::InvalidGrid("grid needs at least one knot".into()));
        }
        if times[0] != 0.0 {
            return Err(Error::InvalidGrid(format!(
                "first knot must be 0, got {}",
                times[0]
            )));
        }
        for (k, pair) in times.windows(2).enumerate() {
            if !pair[1].is_finite() {
                return Err(Error::InvalidGrid(format!("knot {} is not finite", k + 1)));
            }
            if pair[1] <= pair[0] {
                return Err(Error::InvalidGrid(format!(
                    "times must be strictly increasing, knot {} ({}) <= knot {} ({})",
                    k + 1,
                    pair[1],
                    k,
                    pair[0]
                )));
            }
        }
        Ok(Self {
            times,
            uniform_step: None,
        })
    }

    /// Builds the uniform grid 0, step, 2·step, … covering `horizon`.
    ///
    /// The horizon is truncated to a whole number of steps; knot `k` holds
    /// exactly `k as f64 * step`.
    pub fn uniform(horizon: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidGrid(format!("step must be positive, got {step}")));
        }
        if !(horizon > 0.0) || !horizon.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "horizon must be positive, got {horizon}"
            )));
        }
        if step >= horizon {
            return Err(Error::InvalidGrid(format!(
                "step ({step}) must be smaller than horizon ({horizon})"
            )));
        }
        let ratio = horizon / step;
        // Tolerate representation error when the horizon is a whole number of steps.
        let n_steps = if (ratio - ratio.round()).abs() < 1e-6 * ratio.max(1.0) {
            ratio.round() as usize
        } else {
            ratio.floor() as usize
        };
        let times = (0..=n_steps).map(|k| k as f64 * step).collect();
        Ok(Self {
            times,
            uniform_step: Some(step),
        })
    }

    /// The integer grid 0, 1, …, count−1 used for walks and arrival indices.
    pub fn integers(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidGrid("grid needs at least one knot".into()));
        }
        Ok(Self {
            times: (0..count).map(|k| k as f64).collect(),
            uniform_step: Some(1.0),
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Last knot time.
    pub fn horizon(&self) -> f64 {
        *self.times.last().expect("grid is non-empty")
    }

    pub fn uniform_step(&self) -> Option<f64> {
        self.uniform_step
    }

    /// Index `k` of the segment with `times[k] <= t` (and `t < times[k+1]`
    /// unless `t` is the horizon). Caller guarantees `0 <= t <= horizon`.
    pub(crate) fn segment_index(&self, t: f64) -> usize {
        let idx = self.times.partition_point(|&x| x <= t);
        idx.saturating_sub(1)
    }
}

/// A real-valued function of time, stored as knot values plus an
/// interpolation rule.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledPath {
    grid: Arc<TimeGrid>,
    values: Vec<f64>,
    interpolation: Interpolation,
}

impl SampledPath {
    /// Pairs a grid with knot values. Values must be finite and match the
    /// grid length.
    pub fn new<G: Into<Arc<TimeGrid>>>(
        grid: G,
        values: Vec<f64>,
        interpolation: Interpolation,
    ) -> Result<Self> {
        let grid = grid.into();
        if values.len() != grid.len() {
            return Err(Error::InvalidPath(format!(
                "{} values for {} knots",
                values.len(),
                grid.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidPath(format!("value at knot {k} is not finite")));
        }
        Ok(Self {
            grid,
            values,
            interpolation,
        })
    }

    /// Samples a closed-form function on the grid.
    pub fn from_fn<G: Into<Arc<TimeGrid>>>(
        grid: G,
        interpolation: Interpolation,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        let grid = grid.into();
        let values = grid.times().iter().map(|&t| f(t)).collect();
        Self::new(grid, values, interpolation)
    }

    pub fn grid(&self) -> &Arc<TimeGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn interpolation(&self) -> Interpolation {
        self.interpolation
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn horizon(&self) -> f64 {
        self.grid.horizon()
    }

    pub fn first_value(&self) -> f64 {
        self.values[0]
    }

    pub fn last_value(&self) -> f64 {
        *self.values.last().expect("path is non-empty")
    }

    /// Value at time `t` under the path's interpolation rule. Knot times
    /// return the stored value exactly.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        let horizon = self.horizon();
        if !(0.0..=horizon).contains(&t) {
            return Err(Error::OutOfDomain { t, horizon });
        }
        let k = self.grid.segment_index(t);
        let times = self.grid.times();
        if t == times[k] || k + 1 == times.len() {
            return Ok(self.values[k]);
        }
        match self.interpolation {
            Interpolation::StepRightContinuous => Ok(self.values[k]),
            Interpolation::PiecewiseLinear => {
                let slope = (self.values[k + 1] - self.values[k]) / (times[k + 1] - times[k]);
                Ok(self.values[k] + (t - times[k]) * slope)
            }
        }
    }

    /// Pointwise negation on the same grid.
    pub fn negate(&self) -> SampledPath {
        SampledPath {
            grid: Arc::clone(&self.grid),
            values: self.values.iter().map(|v| -v).collect(),
            interpolation: self.interpolation,
        }
    }

    /// Restriction to the first `knots` knots.
    pub fn prefix(&self, knots: usize) -> Result<SampledPath> {
        if knots == 0 || knots > self.len() {
            return Err(Error::InvalidArgument(format!(
                "prefix of {knots} knots out of {}",
                self.len()
            )));
        }
        let grid = TimeGrid {
            times: self.grid.times()[..knots].to_vec(),
            uniform_step: self.grid.uniform_step(),
        };
        Ok(SampledPath {
            grid: Arc::new(grid),
            values: self.values[..knots].to_vec(),
            interpolation: self.interpolation,
        })
    }
}

/// An integer-valued sequence indexed from 0, optionally certified to move
/// by at most one unit per step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSequence {
    values: Vec<i64>,
    nearest_neighbor: bool,
}

impl IntegerSequence {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidPath("sequence needs at least one term".into()));
        }
        Ok(Self {
            values,
            nearest_neighbor: false,
        })
    }

    /// Constructs a sequence certified nearest-neighbor: |x[k+1] − x[k]| ≤ 1.
    pub fn nearest_neighbor(values: Vec<i64>) -> Result<Self> {
        let mut seq = Self::new(values)?;
        if let Some(k) = seq
            .values
            .windows(2)
            .position(|p| (p[1] - p[0]).abs() > 1)
        {
            return Err(Error::InvalidPath(format!(
                "step {} to {} moves by more than one unit",
                k,
                k + 1
            )));
        }
        seq.nearest_neighbor = true;
        Ok(seq)
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_nearest_neighbor(&self) -> bool {
        self.nearest_neighbor
    }
}

/// Piecewise-linear embedding through the points (n, x_n); evaluating at an
/// integer time reproduces the sequence exactly.
pub fn connect_dots(x: &IntegerSequence) -> SampledPath {
    let grid = TimeGrid::integers(x.len()).expect("sequence is non-empty");
    let values = x.values().iter().map(|&v| v as f64).collect();
    SampledPath::new(grid, values, Interpolation::PiecewiseLinear)
        .expect("integer values are finite")
}

/// 17 significant digits; round-trips every finite f64 bit-exactly.
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes a path as CSV with header `t,value`.
pub fn write_path_csv<W: Write>(path: &SampledPath, mut w: W) -> Result<()> {
    writeln!(w, "t,value")?;
    for (t, v) in path.grid().times().iter().zip(path.values()) {
        writeln!(w, "{},{}", fmt_f64(*t), fmt_f64(*v))?;
    }
    Ok(())
}

/// Reads a `t,value` CSV produced by [`write_path_csv`].
///
/// Errors carry the 1-based line number of the offending row.
pub fn read_path_csv<R: BufRead>(r: R, interpolation: Interpolation) -> Result<SampledPath> {
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        let lineno = idx + 1;
        if idx == 0 {
            if line.trim() != "t,value" {
                return Err(Error::Csv {
                    line: lineno,
                    message: format!("expected header `t,value`, got `{line}`"),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let (t, v) = parse_two_floats(line, lineno)?;
        if let Some(&prev) = times.last() {
            if t <= prev {
                return Err(Error::Csv {
                    line: lineno,
                    message: format!("timestamps must increase, {t} follows {prev}"),
                });
            }
        }
        times.push(t);
        values.push(v);
    }
    let grid = TimeGrid::new(times).map_err(|e| Error::Csv {
        line: 2,
        message: e.to_string(),
    })?;
    SampledPath::new(grid, values, interpolation)
}

/// Writes an integer sequence as CSV with header `n,value`.
pub fn write_sequence_csv<W: Write>(x: &IntegerSequence, mut w: W) -> Result<()> {
    writeln!(w, "n,value")?;
    for (n, v) in x.values().iter().enumerate() {
        writeln!(w, "{n},{v}")?;
    }
    Ok(())
}

/// Reads an `n,value` CSV produced by [`write_sequence_csv`].
pub fn read_sequence_csv<R: BufRead>(r: R) -> Result<IntegerSequence> {
    let mut values = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        let lineno = idx + 1;
        if idx == 0 {
            if line.trim() != "n,value" {
                return Err(Error::Csv {
                    line: lineno,
                    message: format!("expected header `n,value`, got `{line}`"),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.splitn(2, ',');
        let n: usize = parts
            .next()
            .unwrap_or_default()
            .trim()
            .parse()
            .map_err(|e| Error::Csv {
                line: lineno,
                message: format!("bad index: {e}"),
            })?;
        let v: i64 = parts
            .next()
            .ok_or_else(|| Error::Csv {
                line: lineno,
                message: "expected two comma-separated fields".into(),
            })?
            .trim()
            .parse()
            .map_err(|e| Error::Csv {
                line: lineno,
                message: format!("bad value: {e}"),
            })?;
        if n != values.len() {
            return Err(Error::Csv {
                line: lineno,
                message: format!("expected index {}, got {n}", values.len()),
            });
        }
        values.push(v);
    }
    IntegerSequence::new(values).map_err(|e| Error::Csv {
        line: 1,
        message: e.to_string(),
    })
}

pub(crate) fn parse_two_floats(line: &str, lineno: usize) -> Result<(f64, f64)> {
    let mut parts = line.splitn(2, ',');
    let a = parts.next().unwrap_or_default().trim();
    let b = parts.next().ok_or_else(|| Error::Csv {
        line: lineno,
        message: "expected two comma-separated fields".into(),
    })?;
    let a: f64 = a.parse().map_err(|e| Error::Csv {
        line: lineno,
        message: format!("bad time: {e}"),
    })?;
    let b: f64 = b.trim().parse().map_err(|e| Error::Csv {
        line: lineno,
        message: format!("bad value: {e}"),
    })?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn linear(knots: &[(f64, f64)]) -> SampledPath {
        let grid = TimeGrid::new(knots.iter().map(|k| k.0).collect()).unwrap();
        SampledPath::new(grid, knots.iter().map(|k| k.1).collect(), Interpolation::PiecewiseLinear)
            .unwrap()
    }

    #[test]
    fn evaluate_linear_midpoint() {
        let p = linear(&[(0.0, 0.0), (2.0, 4.0)]);
        assert_eq!(p.evaluate(1.0).unwrap(), 2.0);
    }

    #[test]
    fn evaluate_step_holds_left_value() {
        let grid = TimeGrid::new(vec![0.0, 1.0]).unwrap();
        let p = SampledPath::new(grid, vec![5.0, 7.0], Interpolation::StepRightContinuous).unwrap();
        assert_eq!(p.evaluate(0.5).unwrap(), 5.0);
        assert_eq!(p.evaluate(1.0).unwrap(), 7.0);
    }

    #[test]
    fn evaluate_identity_at_knots() {
        let p = linear(&[(0.0, 0.3), (1.5, -2.0), (4.0, 9.25)]);
        for (t, v) in p.grid().times().iter().zip(p.values()) {
            assert_eq!(p.evaluate(*t).unwrap(), *v);
        }
    }

    #[test]
    fn evaluate_rejects_out_of_domain() {
        let p = linear(&[(0.0, 0.0), (1.0, 1.0)]);
        assert!(matches!(p.evaluate(-0.1), Err(Error::OutOfDomain { .. })));
        assert!(matches!(p.evaluate(1.1), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn negate_flips_values_and_keeps_grid() {
        let p = linear(&[(0.0, 0.0), (1.0, 2.0), (2.0, -1.0)]);
        let n = p.negate();
        assert_eq!(n.values(), &[0.0, -2.0, 1.0]);
        assert!(Arc::ptr_eq(p.grid(), n.grid()));
        assert_eq!(n.negate(), p);
    }

    #[test]
    fn connect_dots_hits_sequence_at_integers() {
        let x = IntegerSequence::nearest_neighbor(vec![0, 1, 0]).unwrap();
        let p = connect_dots(&x);
        assert_eq!(p.evaluate(0.0).unwrap(), 0.0);
        assert_eq!(p.evaluate(1.0).unwrap(), 1.0);
        assert_eq!(p.evaluate(2.0).unwrap(), 0.0);
        let y = IntegerSequence::new(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(connect_dots(&y).evaluate(1.5).unwrap(), 1.5);
    }

    #[test]
    fn nearest_neighbor_flag_is_checked() {
        assert!(IntegerSequence::nearest_neighbor(vec![0, 2]).is_err());
        assert!(IntegerSequence::nearest_neighbor(vec![0, 1, 1, 0]).is_ok());
    }

    #[test]
    fn grid_invariants() {
        assert!(TimeGrid::new(vec![]).is_err());
        assert!(TimeGrid::new(vec![1.0, 2.0]).is_err());
        assert!(TimeGrid::new(vec![0.0, 1.0, 1.0]).is_err());
        assert!(TimeGrid::new(vec![0.0, 2.0, 1.0]).is_err());
        let g = TimeGrid::uniform(100.0, 0.01).unwrap();
        assert_eq!(g.len(), 10001);
        assert_eq!(g.horizon(), 100.0);
        for (k, t) in g.times().iter().enumerate() {
            assert_eq!(*t, k as f64 * 0.01);
        }
    }

    #[test]
    fn rejects_non_finite_values() {
        let grid = TimeGrid::new(vec![0.0, 1.0]).unwrap();
        assert!(SampledPath::new(grid.clone(), vec![0.0, f64::INFINITY], Interpolation::PiecewiseLinear).is_err());
        assert!(SampledPath::new(grid, vec![0.0, f64::NAN], Interpolation::PiecewiseLinear).is_err());
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let p = linear(&[(0.0, 0.1), (0.7, -3.0e-17), (1.9, 12345.678901234567)]);
        let mut buf = Vec::new();
        write_path_csv(&p, &mut buf).unwrap();
        let back = read_path_csv(buf.as_slice(), Interpolation::PiecewiseLinear).unwrap();
        assert_eq!(back.grid().times(), p.grid().times());
        assert_eq!(back.values(), p.values());
    }

    #[test]
    fn csv_errors_carry_line_numbers() {
        let bad = "t,value\n0,0\nnope,1\n";
        match read_path_csv(bad.as_bytes(), Interpolation::PiecewiseLinear) {
            Err(Error::Csv { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected csv error, got {other:?}"),
        }
        let decreasing = "t,value\n0,0\n2,1\n1,2\n";
        match read_path_csv(decreasing.as_bytes(), Interpolation::PiecewiseLinear) {
            Err(Error::Csv { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected csv error, got {other:?}"),
        }
    }

    #[test]
    fn sequence_csv_round_trip() {
        let x = IntegerSequence::new(vec![3, -1, 4, 4]).unwrap();
        let mut buf = Vec::new();
        write_sequence_csv(&x, &mut buf).unwrap();
        let back = read_sequence_csv(buf.as_slice()).unwrap();
        assert_eq!(back.values(), x.values());
    }

    proptest! {
        #[test]
        fn negation_matches_at_any_time(vals in proptest::collection::vec(-1e6f64..1e6, 2..40), q in 0.0f64..1.0) {
            let grid = TimeGrid::integers(vals.len()).unwrap();
            let p = SampledPath::new(grid, vals, Interpolation::PiecewiseLinear).unwrap();
            let t = q * p.horizon();
            prop_assert_eq!(p.negate().evaluate(t).unwrap(), -p.evaluate(t).unwrap());
        }

        #[test]
        fn evaluate_is_monotone_on_ordered_segments(
            v0 in -1e3f64..1e3, v1 in -1e3f64..1e3,
            a in 0.0f64..1.0, b in 0.0f64..1.0,
        ) {
            let p = linear(&[(0.0, v0.min(v1)), (1.0, v0.max(v1))]);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(p.evaluate(lo).unwrap() <= p.evaluate(hi).unwrap());
        }

        #[test]
        fn float_format_round_trips(v in proptest::num::f64::NORMAL | proptest::num::f64::ZERO) {
            let s = fmt_f64(v);
            let back: f64 = s.parse().unwrap();
            prop_assert_eq!(back.to_bits(), v.to_bits());
        }
    }
}
