//! Exhaustive search for the cost-efficiency maximizing `(w, m)`.

use alloc::vec::Vec;

use crate::economics::{cost_efficiency, total_cost, CostBreakdown, CostPoint};
use crate::radio::{
    antenna_order, check_antenna_count, check_bandwidth, sum_rate, Allocation, NumeratorMode,
};
use crate::scenario::Scenario;
use crate::transport::{
    assign_antennas_to_pons, wavelengths_overlay, wavelengths_per_pon, wavelengths_shared,
    PonAssignment, TransportModel,
};
use crate::{Error, Result, SLOT_MHZ};

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub allocation: Allocation,
    pub sum_rate: f64,
    pub pon_assignment: PonAssignment,
    pub n_wavelengths: usize,
    pub cost: CostBreakdown,
    pub eta: f64,
    /// Some PON needs more wavelengths than it has. Reported, not enforced.
    pub exceeds_pon_capacity: bool,
}

impl Evaluation {
    pub fn bandwidth_mhz(&self) -> u32 {
        self.allocation.bandwidth_mhz
    }

    pub fn num_antennas(&self) -> usize {
        self.allocation.num_antennas()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub best: Evaluation,
    pub grid_size: usize,
}

/// Scores allocations for one scenario, transport model and price vector.
/// The greedy antenna ranking is computed once and reused for every `m`.
#[derive(Debug, Clone)]
pub struct Evaluator<'a> {
    scenario: &'a Scenario,
    transport: &'a TransportModel,
    cost: CostPoint,
    mode: NumeratorMode,
    order: Vec<usize>,
}

impl<'a> Evaluator<'a> {
    pub fn new(
        scenario: &'a Scenario,
        transport: &'a TransportModel,
        cost: CostPoint,
        mode: NumeratorMode,
    ) -> Result<Self> {
        cost.validate()?;
        Ok(Evaluator {
            scenario,
            transport,
            cost,
            mode,
            order: antenna_order(scenario),
        })
    }

    /// Evaluates bandwidth `w_mhz` with the `m` best antennas.
    pub fn evaluate(&self, w_mhz: u32, m: usize) -> Result<Evaluation> {
        check_bandwidth(w_mhz)?;
        check_antenna_count(self.scenario, m)?;
        let allocation = Allocation {
            bandwidth_mhz: w_mhz,
            antennas: self.order[..m].to_vec(),
        };
        self.evaluate_allocation(allocation)
    }

    pub fn evaluate_allocation(&self, allocation: Allocation) -> Result<Evaluation> {
        let s = self.scenario;
        check_bandwidth(allocation.bandwidth_mhz)?;
        check_antenna_count(s, allocation.num_antennas())?;
        let w = allocation.bandwidth_mhz;
        let m = allocation.num_antennas();
        let bp = self.transport.slots_per_wavelength();

        let rate = sum_rate(s, &allocation, self.mode)?;
        let pa = assign_antennas_to_pons(s, &allocation.antennas);
        let (n_wavelengths, per_pon) = if self.transport.variant.is_shared() {
            (
                wavelengths_shared(w, &pa.balanced, bp),
                wavelengths_per_pon(w, &pa.balanced, bp),
            )
        } else {
            let each = wavelengths_overlay(w, 1, bp);
            (
                wavelengths_overlay(w, m, bp),
                pa.balanced.iter().map(|m_i| m_i * each).collect(),
            )
        };
        let cost = total_cost(&self.cost, w, m, n_wavelengths);
        let eta = cost_efficiency(rate, cost.total)?;
        Ok(Evaluation {
            allocation,
            sum_rate: rate,
            pon_assignment: pa,
            n_wavelengths,
            cost,
            eta,
            exceeds_pon_capacity: per_pon
                .iter()
                .any(|&n| n > self.transport.max_wavelengths_per_pon),
        })
    }

    /// Bandwidth candidates `5, 10, …, max_bandwidth_mhz`.
    pub fn bandwidths(max_bandwidth_mhz: u32) -> impl Iterator<Item = u32> {
        (1..=max_bandwidth_mhz / SLOT_MHZ).map(|i| i * SLOT_MHZ)
    }

    /// Every grid point, `m` outer and `w` inner.
    pub fn grid(&self, max_bandwidth_mhz: u32) -> Result<Vec<Evaluation>> {
        check_grid(self.scenario, max_bandwidth_mhz)?;
        let mut out = Vec::new();
        for m in self.scenario.num_users()..=self.scenario.num_antennas() {
            for w in Self::bandwidths(max_bandwidth_mhz) {
                out.push(self.evaluate(w, m)?);
            }
        }
        Ok(out)
    }

    /// Maximum-η grid point. Ties keep the smaller `m`, then the smaller `w`.
    pub fn optimize(&self, max_bandwidth_mhz: u32) -> Result<Optimum> {
        check_grid(self.scenario, max_bandwidth_mhz)?;
        let mut best: Option<Evaluation> = None;
        let mut grid_size = 0;
        for m in self.scenario.num_users()..=self.scenario.num_antennas() {
            for w in Self::bandwidths(max_bandwidth_mhz) {
                let e = self.evaluate(w, m)?;
                grid_size += 1;
                if best.as_ref().is_none_or(|b| e.eta > b.eta) {
                    best = Some(e);
                }
            }
        }
        Ok(Optimum {
            best: best.ok_or(Error::EmptyGrid)?,
            grid_size,
        })
    }
}

fn check_grid(s: &Scenario, max_bandwidth_mhz: u32) -> Result<()> {
    if max_bandwidth_mhz < SLOT_MHZ || !max_bandwidth_mhz.is_multiple_of(SLOT_MHZ) {
        return Err(Error::EmptyGrid);
    }
    if s.num_antennas() < s.num_users() {
        return Err(Error::EmptyGrid);
    }
    Ok(())
}

pub fn evaluate(
    s: &Scenario,
    t: &TransportModel,
    cp: CostPoint,
    w_mhz: u32,
    m: usize,
    mode: NumeratorMode,
) -> Result<Evaluation> {
    Evaluator::new(s, t, cp, mode)?.evaluate(w_mhz, m)
}

pub fn optimize(
    s: &Scenario,
    t: &TransportModel,
    cp: CostPoint,
    max_bandwidth_mhz: u32,
    mode: NumeratorMode,
) -> Result<Optimum> {
    Evaluator::new(s, t, cp, mode)?.optimize(max_bandwidth_mhz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{build_scenario, ScenarioConfig};
    use crate::transport::TransportVariant;

    fn unit() -> CostPoint {
        CostPoint::new(1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn overlay_minimum_point_cost() {
        let s = build_scenario(&ScenarioConfig::default()).unwrap();
        let t = TransportModel::standard(TransportVariant::FronthaulOverlay);
        let e = evaluate(&s, &t, unit(), 5, 20, NumeratorMode::Corrected).unwrap();
        assert_eq!(e.cost.total, 20.0 + 5.0 + 20.0);
        assert_eq!(e.n_wavelengths, 20);
        assert!(!e.exceeds_pon_capacity);
    }

    #[test]
    fn evaluation_is_pure() {
        let s = build_scenario(&ScenarioConfig::default()).unwrap();
        let t = TransportModel::standard(TransportVariant::SplitPhyShared);
        let a = evaluate(&s, &t, unit(), 35, 41, NumeratorMode::Corrected).unwrap();
        let b = evaluate(&s, &t, unit(), 35, 41, NumeratorMode::Corrected).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.eta.to_bits(), b.eta.to_bits());
    }

    #[test]
    fn grid_size_and_bounds() {
        let s = build_scenario(&ScenarioConfig::default()).unwrap();
        let t = TransportModel::standard(TransportVariant::FronthaulShared);
        let opt = optimize(&s, &t, unit(), 50, NumeratorMode::Corrected).unwrap();
        assert_eq!(opt.grid_size, 10 * 45);
        assert_eq!(
            optimize(&s, &t, unit(), 0, NumeratorMode::Corrected),
            Err(Error::EmptyGrid)
        );
        assert_eq!(
            optimize(&s, &t, unit(), 12, NumeratorMode::Corrected),
            Err(Error::EmptyGrid)
        );
    }

    #[test]
    fn free_antennas_push_to_full_deployment() {
        let s = build_scenario(&ScenarioConfig::default()).unwrap();
        let cp = CostPoint::new(1.0, 1e-12, 1e-12).unwrap();
        for v in TransportVariant::ALL {
            let t = TransportModel::standard(v);
            let opt = optimize(&s, &t, cp, 50, NumeratorMode::Corrected).unwrap();
            assert_eq!(opt.best.num_antennas(), 64, "{v}");
        }
    }

    #[test]
    fn literal_mode_prefers_narrowest_band() {
        let s = build_scenario(&ScenarioConfig::default()).unwrap();
        for v in TransportVariant::ALL {
            let t = TransportModel::standard(v);
            for cp in [unit(), CostPoint::new(1e-6, 1e3, 1e-3).unwrap()] {
                let opt = optimize(&s, &t, cp, 50, NumeratorMode::Literal).unwrap();
                assert_eq!(opt.best.bandwidth_mhz(), 5);
            }
        }
    }

    #[test]
    fn optimum_is_first_maximum_in_scan_order() {
        let s = build_scenario(&ScenarioConfig {
            rng_seed: 3,
            ..Default::default()
        })
        .unwrap();
        let t = TransportModel::standard(TransportVariant::FronthaulShared);
        let e = Evaluator::new(
            &s,
            &t,
            CostPoint::new(0.01, 0.5, 1.0).unwrap(),
            NumeratorMode::Corrected,
        )
        .unwrap();
        let grid = e.grid(50).unwrap();
        let max = grid.iter().map(|g| g.eta).fold(f64::NEG_INFINITY, f64::max);
        let first = grid.iter().find(|g| g.eta == max).unwrap();
        assert_eq!(&e.optimize(50).unwrap().best, first);
    }
}
