//! Parallel driver for the cost-ratio sweep.

use mdmimo_core::sweep::run_point;
use mdmimo_core::{NumeratorMode, Scenario, SweepRecord, SweepSpec, TransportParams};
use rayon::prelude::*;

/// Runs every grid point on up to `jobs` threads (`1` runs serially on the
/// caller's thread). Records are returned in the same order as the serial
/// core sweep.
pub fn run_sweep_parallel(
    s: &Scenario,
    transport: &TransportParams,
    spec: &SweepSpec,
    max_bandwidth_mhz: u32,
    mode: NumeratorMode,
    jobs: usize,
) -> mdmimo_core::Result<Vec<SweepRecord>> {
    spec.validate()?;
    if jobs <= 1 {
        return mdmimo_core::run_sweep(s, transport, spec, max_bandwidth_mhz, mode);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let points = spec.points();
    pool.install(|| {
        points
            .par_iter()
            .map(|&p| run_point(s, transport, spec.normalization, p, max_bandwidth_mhz, mode))
            .collect()
    })
}
