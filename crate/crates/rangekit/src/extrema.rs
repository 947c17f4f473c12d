//! Running extrema and range of a path, plus the discrete explored-site
//! count of an integer sequence.
//!
//! The range at time t is the length of the explored interval,
//! `sup_{0<=s<=t} f(s) - inf_{0<=s<=t} f(s)`. For piecewise-linear and
//! right-continuous step paths the extrema over a prefix are attained at
//! knots, so a single left-to-right pass over knot values is exact.

use std::collections::HashSet;
use std::io::Write;
use std::sync::Arc;

use crate::error::Result;
use crate::path::{fmt_f64, IntegerSequence, SampledPath};

/// Aligned running-sup, running-inf, and range paths on the source grid.
///
/// The range path is `sup - inf` pointwise, starts at 0, and is
/// non-decreasing; the sup path is non-decreasing and the inf path
/// non-increasing.
#[derive(Clone, Debug)]
pub struct ExtremaTriple {
    sup: SampledPath,
    inf: SampledPath,
    range: SampledPath,
}

impl ExtremaTriple {
    pub fn sup_path(&self) -> &SampledPath {
        &self.sup
    }

    pub fn inf_path(&self) -> &SampledPath {
        &self.inf
    }

    pub fn range_path(&self) -> &SampledPath {
        &self.range
    }

    pub fn into_range_path(self) -> SampledPath {
        self.range
    }

    /// Final value of the range path.
    pub fn total_range(&self) -> f64 {
        self.range.last_value()
    }
}

/// Computes running extrema and range in one pass, O(1) memory beyond the
/// output.
pub fn running_extrema(path: &SampledPath) -> ExtremaTriple {
    let values = path.values();
    let mut sup = Vec::with_capacity(values.len());
    let mut inf = Vec::with_capacity(values.len());
    let mut range = Vec::with_capacity(values.len());
    let mut hi = values[0];
    let mut lo = values[0];
    for &v in values {
        if v > hi {
            hi = v;
        }
        if v < lo {
            lo = v;
        }
        sup.push(hi);
        inf.push(lo);
        range.push(hi - lo);
    }
    let grid = Arc::clone(path.grid());
    let interp = path.interpolation();
    let mk = |vals: Vec<f64>| {
        SampledPath::new(Arc::clone(&grid), vals, interp).expect("extrema of finite values are finite")
    };
    ExtremaTriple {
        sup: mk(sup),
        inf: mk(inf),
        range: mk(range),
    }
}

/// The running supremum path; non-decreasing and idempotent.
pub fn sup_process(path: &SampledPath) -> SampledPath {
    let mut sup = Vec::with_capacity(path.len());
    let mut hi = path.values()[0];
    for &v in path.values() {
        if v > hi {
            hi = v;
        }
        sup.push(hi);
    }
    SampledPath::new(Arc::clone(path.grid()), sup, path.interpolation())
        .expect("sup of finite values is finite")
}

/// Number of distinct values among the first n+1 terms of a sequence, for
/// every prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteRangeTrace {
    counts: Vec<u64>,
}

impl DiscreteRangeTrace {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Explored-site count per prefix.
///
/// Nearest-neighbor sequences explore an integer interval, so the count is
/// `max - min + 1` from running extrema; general sequences fall back to an
/// exact visited-set.
pub fn discrete_range(x: &IntegerSequence) -> DiscreteRangeTrace {
    let values = x.values();
    let mut counts = Vec::with_capacity(values.len());
    if x.is_nearest_neighbor() {
        let mut hi = values[0];
        let mut lo = values[0];
        for &v in values {
            hi = hi.max(v);
            lo = lo.min(v);
            counts.push((hi - lo + 1) as u64);
        }
    } else {
        let mut seen = HashSet::new();
        for &v in values {
            seen.insert(v);
            counts.push(seen.len() as u64);
        }
    }
    DiscreteRangeTrace { counts }
}

/// Writes `t,value,sup,inf,range` CSV aligned on the source grid.
pub fn write_extrema_csv<W: Write>(
    source: &SampledPath,
    triple: &ExtremaTriple,
    mut w: W,
) -> Result<()> {
    writeln!(w, "t,value,sup,inf,range")?;
    let times = source.grid().times();
    for k in 0..source.len() {
        writeln!(
            w,
            "{},{},{},{},{}",
            fmt_f64(times[k]),
            fmt_f64(source.values()[k]),
            fmt_f64(triple.sup.values()[k]),
            fmt_f64(triple.inf.values()[k]),
            fmt_f64(triple.range.values()[k]),
        )?;
    }
    Ok(())
}
