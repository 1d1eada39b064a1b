//! Cost-efficiency model for a cloud-RAN operator that leases wireless
//! spectrum, distributed MIMO antenna sites and PON wavelength channels.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! - [`scenario`]: seeded deployment geometry, PON homing and path gains,
//! - [`radio`]: antenna selection and the multi-user sum rate,
//! - [`transport`]: wavelength counting for the overlay and shared PON models,
//! - [`economics`]: lease prices, cost ratios, reference ratios and annualization,
//! - [`optimizer`]: exhaustive search over the (bandwidth, antenna count) grid,
//! - [`sweep`]: the cost-ratio sensitivity grid across transport models.
//!
//! File formats, configuration and the command line live in the `mdmimo`
//! companion crate.
#![no_std]

extern crate alloc;

pub mod economics;
mod error;
pub mod optimizer;
pub mod radio;
pub mod scenario;
pub mod sweep;
pub mod transport;

pub use economics::{CostBreakdown, CostPoint, CostRatios, ReferenceCostInputs, ReferenceCosts};
pub use error::Error;
pub use optimizer::{evaluate, optimize, Evaluation, Evaluator, Optimum};
pub use radio::{select_antennas, sum_rate, Allocation, NumeratorMode};
pub use scenario::{build_scenario, Point, PropagationConfig, Scenario, ScenarioConfig};
pub use sweep::{run_sweep, SweepPoint, SweepRecord, SweepSpec};
pub use transport::{PonAssignment, TransportModel, TransportParams, TransportVariant};

/// Width of one spectrum slot in MHz. Bandwidth is leased in multiples of it.
pub const SLOT_MHZ: u32 = 5;

pub type Result<T, E = Error> = core::result::Result<T, E>;
