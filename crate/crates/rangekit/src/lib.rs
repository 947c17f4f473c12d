//! Simulation of stochastic processes and analysis of the long-run
//! behavior of their running extrema, range, and first-range-time
//! (generalized inverse) processes.
//!
//! The crate is organized around a small set of carriers:
//!
//! * [`path::SampledPath`] — a function of time on a finite grid, the
//!   universal carrier for simulated processes, normalizers, ranges, and
//!   running suprema;
//! * [`extrema::ExtremaTriple`] — aligned running-sup/inf/range paths;
//! * [`inverse::MonotonePath`] — a path certified non-decreasing, the
//!   domain of generalized-inverse queries;
//! * [`sim::ProcessSpec`] — a declarative, seeded description of what to
//!   simulate;
//! * [`slope::SlopeEstimate`] — a ratio trace with its tail summary and
//!   verdict.
//!
//! Everything is deterministic given a seed; see the `examples/` directory
//! for one runnable walkthrough per capability, and [`manifest`] for the
//! batch experiment runner behind the `verify` subcommand.

pub mod error;
pub mod experiment;
pub mod extrema;
pub mod inverse;
pub mod manifest;
pub mod path;
pub mod rng;
pub mod sim;
pub mod slope;

pub use error::{Error, Result};
pub use experiment::{
    duality_experiment, inverse_slope_experiment, involution_experiment,
    pnorm_negligibility_check, range_slope_experiment, renewal_experiment, sup_slope_experiment,
    CheckSummary, ExperimentConfig, ReplicaStats,
};
pub use extrema::{discrete_range, running_extrema, sup_process, DiscreteRangeTrace, ExtremaTriple};
pub use manifest::{
    run_manifest, CheckId, CheckOutcome, ExperimentManifest, OutputFormat, OutputSpec,
    ReportDocument, SCHEMA_VERSION,
};
pub use inverse::{
    check_duality, first_range_time, generalized_inverse, inverse_involution_check,
    inverse_transform_sample, Convention, Crossing, DualityProbe, FirstRangeTime, InverseQuery,
    MonotonePath,
};
pub use path::{connect_dots, IntegerSequence, Interpolation, SampledPath, TimeGrid};
pub use sim::{
    function_bank, normalizer_path, simulate, simulate_renewal, simulate_renewal_replica,
    simulate_replica, BankFunction, DistributionSpec, PNorm, ProcessKind, ProcessSpec,
    RenewalRealization, SimOutput, Simulation, SlopeLimit,
};
pub use slope::{
    inverse_slope_check, range_slope_check, renewal_equivalence_check, slope, sup_slope_check,
    RangeSlopeReport, RenewalReport, SlopeConfig, SlopeEstimate, SupSlopeReport,
    ThetaLadderReport, Verdict,
};
