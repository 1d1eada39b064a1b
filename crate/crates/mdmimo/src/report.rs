//! Single-point optimization report: text for people, one JSON line for tools.

use std::fmt::Write;

use mdmimo_core::{CostPoint, Evaluation, NumeratorMode, Optimum, TransportModel};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizeRecord {
    pub model: String,
    pub numerator_mode: String,
    #[serde(rename = "R_wb")]
    pub r_wb: f64,
    #[serde(rename = "R_bm")]
    pub r_bm: f64,
    pub c_w: f64,
    pub c_m: f64,
    pub c_b: f64,
    pub slots_per_wavelength: usize,
    pub opt_w: u32,
    pub opt_m: usize,
    pub eta: f64,
    pub sum_rate: f64,
    pub n_wavelengths: usize,
    pub cost_antennas: f64,
    pub cost_spectrum: f64,
    pub cost_transport: f64,
    pub cost_total: f64,
    pub pons_geometric: Vec<usize>,
    pub pons_balanced: Vec<usize>,
    pub feasibility_flag: bool,
    pub grid_size: usize,
}

impl OptimizeRecord {
    pub fn new(t: &TransportModel, cp: &CostPoint, mode: NumeratorMode, opt: &Optimum) -> Self {
        let b: &Evaluation = &opt.best;
        let ratios = cp.ratios();
        OptimizeRecord {
            model: t.variant.name().into(),
            numerator_mode: mode.name().into(),
            r_wb: ratios.spectrum_to_wavelength,
            r_bm: ratios.wavelength_to_antenna,
            c_w: cp.spectrum_per_mhz,
            c_m: cp.antenna,
            c_b: cp.wavelength,
            slots_per_wavelength: t.slots_per_wavelength(),
            opt_w: b.bandwidth_mhz(),
            opt_m: b.num_antennas(),
            eta: b.eta,
            sum_rate: b.sum_rate,
            n_wavelengths: b.n_wavelengths,
            cost_antennas: b.cost.antennas,
            cost_spectrum: b.cost.spectrum,
            cost_transport: b.cost.transport,
            cost_total: b.cost.total,
            pons_geometric: b.pon_assignment.geometric.clone(),
            pons_balanced: b.pon_assignment.balanced.clone(),
            feasibility_flag: b.exceeds_pon_capacity,
            grid_size: opt.grid_size,
        }
    }

    pub fn to_text(&self) -> String {
        let rate_unit = if self.numerator_mode == "literal" {
            "(dimensionless)"
        } else {
            "bit/s"
        };
        let mut s = String::new();
        let _ = writeln!(
            s,
            "model            {} (B_p = {})",
            self.model, self.slots_per_wavelength
        );
        let _ = writeln!(s, "numerator        {}", self.numerator_mode);
        let _ = writeln!(
            s,
            "ratios           R_wb = {:.6e}  R_bm = {:.6e}",
            self.r_wb, self.r_bm
        );
        let _ = writeln!(
            s,
            "prices (cu)      c_w = {:.6e}/MHz  c_m = {:.6e}/antenna  c_b = {:.6e}/wavelength",
            self.c_w, self.c_m, self.c_b
        );
        let _ = writeln!(
            s,
            "optimum          w* = {} MHz  m* = {}",
            self.opt_w, self.opt_m
        );
        let _ = writeln!(s, "efficiency       eta = {:.9e} per cu", self.eta);
        let _ = writeln!(s, "sum rate         {:.9e} {rate_unit}", self.sum_rate);
        let _ = writeln!(s, "wavelengths      {}", self.n_wavelengths);
        let _ = writeln!(
            s,
            "cost (cu)        antennas {:.6e} + spectrum {:.6e} + transport {:.6e} = {:.6e}",
            self.cost_antennas, self.cost_spectrum, self.cost_transport, self.cost_total
        );
        let _ = writeln!(
            s,
            "antennas per PON {:?} (homing {:?})",
            self.pons_balanced, self.pons_geometric
        );
        if self.feasibility_flag {
            let _ = writeln!(s, "warning          a PON exceeds its wavelength budget");
        }
        let _ = writeln!(s, "grid             {} candidates", self.grid_size);
        s
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}
