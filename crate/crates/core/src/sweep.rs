//! Cost-ratio sensitivity grid: one optimum per (model, R_wb, R_bm).

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::economics::{ratios_to_costpoint, CostRatios};
use crate::optimizer::Evaluator;
use crate::radio::NumeratorMode;
use crate::scenario::Scenario;
use crate::transport::{TransportParams, TransportVariant};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct SweepSpec {
    pub r_wb_values: Vec<f64>,
    pub r_bm_values: Vec<f64>,
    pub models: Vec<TransportVariant>,
    /// R_bm band highlighted around the reference point.
    pub shaded_region: [f64; 2],
    /// Price of one wavelength; the other prices follow from the ratios.
    pub normalization: f64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            r_wb_values: [6.5e-5, 6.5e-4, 6.5e-3, 6.5e-2, 6.5e-1].to_vec(),
            r_bm_values: log_space(-4.0, 2.0, 25),
            models: TransportVariant::ALL.to_vec(),
            shaded_region: [0.006, 0.6],
            normalization: 1.0,
        }
    }
}

/// `n` points `10^e` with `e` evenly spaced over `[lo_exp, hi_exp]`.
pub fn log_space(lo_exp: f64, hi_exp: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![libm::pow(10.0, lo_exp)],
        _ => (0..n)
            .map(|i| {
                let e = lo_exp + (hi_exp - lo_exp) * i as f64 / (n - 1) as f64;
                libm::pow(10.0, e)
            })
            .collect(),
    }
}

fn strictly_increasing_positive(v: &[f64]) -> bool {
    !v.is_empty()
        && v.iter().all(|x| x.is_finite() && *x > 0.0)
        && v.windows(2).all(|w| w[0] < w[1])
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !strictly_increasing_positive(&self.r_wb_values) {
            return Err(Error::EmptySweep("r_wb_values"));
        }
        if !strictly_increasing_positive(&self.r_bm_values) {
            return Err(Error::EmptySweep("r_bm_values"));
        }
        if self.models.is_empty() || self.models.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::EmptySweep("models"));
        }
        if !strictly_increasing_positive(&self.shaded_region) {
            return Err(Error::InvalidParameter("shaded_region must be 0 < lo < hi"));
        }
        if !(self.normalization.is_finite() && self.normalization > 0.0) {
            return Err(Error::NonPositiveCost);
        }
        Ok(())
    }

    /// All grid points in output order: model, then R_wb, then R_bm.
    pub fn points(&self) -> Vec<SweepPoint> {
        let mut out =
            Vec::with_capacity(self.models.len() * self.r_wb_values.len() * self.r_bm_values.len());
        for &model in &self.models {
            for &r_wb in &self.r_wb_values {
                for &r_bm in &self.r_bm_values {
                    out.push(SweepPoint { model, r_wb, r_bm });
                }
            }
        }
        out
    }

    pub fn in_shaded_region(&self, r_bm: f64) -> bool {
        (self.shaded_region[0]..=self.shaded_region[1]).contains(&r_bm)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub model: TransportVariant,
    pub r_wb: f64,
    pub r_bm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub model: TransportVariant,
    pub r_wb: f64,
    pub r_bm: f64,
    pub c_w: f64,
    pub c_m: f64,
    pub c_b: f64,
    pub opt_m: usize,
    pub opt_w: u32,
    pub eta: f64,
    pub sum_rate: f64,
    pub n_wavelengths: usize,
    pub cost_total: f64,
    pub exceeds_pon_capacity: bool,
}

impl SweepRecord {
    pub const HEADER: [&'static str; 13] = [
        "model",
        "R_wb",
        "R_bm",
        "c_w",
        "c_m",
        "c_b",
        "opt_m",
        "opt_w",
        "eta",
        "sum_rate",
        "n_wavelengths",
        "cost_total",
        "feasibility_flag",
    ];
}

/// Optimizes a single grid point. Errors carry the offending triple.
pub fn run_point(
    s: &Scenario,
    transport: &TransportParams,
    normalization: f64,
    point: SweepPoint,
    max_bandwidth_mhz: u32,
    mode: NumeratorMode,
) -> Result<SweepRecord> {
    let wrap = |e: Error| Error::SweepPoint {
        model: point.model,
        r_wb: point.r_wb,
        r_bm: point.r_bm,
        source: Box::new(e),
    };
    let ratios = CostRatios::new(point.r_wb, point.r_bm).map_err(wrap)?;
    let cp = ratios_to_costpoint(ratios, normalization).map_err(wrap)?;
    let t = transport.model(point.model).map_err(wrap)?;
    let best = Evaluator::new(s, &t, cp, mode)
        .and_then(|e| e.optimize(max_bandwidth_mhz))
        .map_err(wrap)?
        .best;
    Ok(SweepRecord {
        model: point.model,
        r_wb: point.r_wb,
        r_bm: point.r_bm,
        c_w: cp.spectrum_per_mhz,
        c_m: cp.antenna,
        c_b: cp.wavelength,
        opt_m: best.num_antennas(),
        opt_w: best.bandwidth_mhz(),
        eta: best.eta,
        sum_rate: best.sum_rate,
        n_wavelengths: best.n_wavelengths,
        cost_total: best.cost.total,
        exceeds_pon_capacity: best.exceeds_pon_capacity,
    })
}

/// Serial sweep. Records come back in [`SweepSpec::points`] order.
pub fn run_sweep(
    s: &Scenario,
    transport: &TransportParams,
    spec: &SweepSpec,
    max_bandwidth_mhz: u32,
    mode: NumeratorMode,
) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    spec.points()
        .into_iter()
        .map(|p| run_point(s, transport, spec.normalization, p, max_bandwidth_mhz, mode))
        .collect()
}
