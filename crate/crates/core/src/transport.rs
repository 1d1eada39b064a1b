//! PON wavelength counting for the overlay and shared-wavelength models.

use alloc::vec::Vec;
use core::fmt;

use crate::scenario::Scenario;
use crate::{Error, Result, SLOT_MHZ};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum TransportVariant {
    /// Dedicated wavelengths per RRH, fronthaul rate.
    FronthaulOverlay,
    /// RRHs time-multiplexed on shared wavelengths, fronthaul rate.
    FronthaulShared,
    /// RRHs time-multiplexed on shared wavelengths, split-PHY (midhaul) rate.
    SplitPhyShared,
}

impl TransportVariant {
    pub const ALL: [TransportVariant; 3] = [
        TransportVariant::FronthaulOverlay,
        TransportVariant::FronthaulShared,
        TransportVariant::SplitPhyShared,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TransportVariant::FronthaulOverlay => "fronthaul-overlay",
            TransportVariant::FronthaulShared => "fronthaul-shared",
            TransportVariant::SplitPhyShared => "split-phy-shared",
        }
    }

    pub fn is_shared(self) -> bool {
        !matches!(self, TransportVariant::FronthaulOverlay)
    }
}

impl fmt::Display for TransportVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for TransportVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TransportVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or(Error::InvalidParameter(
                "model must be fronthaul-overlay, fronthaul-shared or split-phy-shared",
            ))
    }
}

/// Line rates from which every variant's `B_p` is derived.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct TransportParams {
    pub wavelength_capacity_gbps: f64,
    /// 1.25 Gb/s per 20 MHz LTE carrier, i.e. 0.3125 Gb/s per 5 MHz.
    pub fronthaul_per_5mhz_gbps: f64,
    /// Ten times below fronthaul.
    pub split_phy_per_5mhz_gbps: f64,
    /// Only used to flag evaluations; never a constraint.
    pub max_wavelengths_per_pon: usize,
}

impl Default for TransportParams {
    fn default() -> Self {
        TransportParams {
            wavelength_capacity_gbps: 10.0,
            fronthaul_per_5mhz_gbps: 1.25 / 4.0,
            split_phy_per_5mhz_gbps: 1.25 / 40.0,
            max_wavelengths_per_pon: 8,
        }
    }
}

impl TransportParams {
    pub fn model(&self, variant: TransportVariant) -> Result<TransportModel> {
        let per_slot = match variant {
            TransportVariant::SplitPhyShared => self.split_phy_per_5mhz_gbps,
            _ => self.fronthaul_per_5mhz_gbps,
        };
        TransportModel::new(
            variant,
            self.wavelength_capacity_gbps,
            per_slot,
            self.max_wavelengths_per_pon,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransportModel {
    pub variant: TransportVariant,
    pub wavelength_capacity_gbps: f64,
    pub per_5mhz_gbps: f64,
    pub max_wavelengths_per_pon: usize,
    slots_per_wavelength: usize,
}

impl TransportModel {
    pub fn new(
        variant: TransportVariant,
        wavelength_capacity_gbps: f64,
        per_5mhz_gbps: f64,
        max_wavelengths_per_pon: usize,
    ) -> Result<Self> {
        if !(wavelength_capacity_gbps > 0.0 && per_5mhz_gbps > 0.0)
            || !(wavelength_capacity_gbps / per_5mhz_gbps).is_finite()
        {
            return Err(Error::InvalidParameter("transport rates must be positive"));
        }
        // absorb representation error, e.g. 10 / 0.1
        let ratio = wavelength_capacity_gbps / per_5mhz_gbps;
        let slots = libm::floor(ratio * (1.0 + 1e-12)) as usize;
        if slots == 0 {
            return Err(Error::InvalidParameter(
                "a wavelength must carry at least one 5 MHz signal",
            ));
        }
        Ok(TransportModel {
            variant,
            wavelength_capacity_gbps,
            per_5mhz_gbps,
            max_wavelengths_per_pon,
            slots_per_wavelength: slots,
        })
    }

    /// Default parameters for `variant`.
    pub fn standard(variant: TransportVariant) -> Self {
        TransportParams::default()
            .model(variant)
            .expect("default transport rates are valid")
    }

    /// `B_p`: 5 MHz signals one wavelength carries.
    pub fn slots_per_wavelength(&self) -> usize {
        self.slots_per_wavelength
    }
}

/// Antennas used on each PON: the count implied by geographic homing and
/// the balanced split (max − min ≤ 1) that the shared cost model uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PonAssignment {
    pub geometric: Vec<usize>,
    pub balanced: Vec<usize>,
}

impl PonAssignment {
    pub fn total(&self) -> usize {
        self.balanced.iter().sum()
    }
}

/// Counts selected antennas per PON, then evens the counts out.
///
/// While the spread exceeds one, a unit moves from the fullest PON to the
/// emptiest (lowest index on ties). The receiving PON always has a free
/// homed antenna because homing is itself balanced.
pub fn assign_antennas_to_pons(s: &Scenario, antennas: &[usize]) -> PonAssignment {
    let mut geometric = alloc::vec![0; s.num_pons()];
    for &j in antennas {
        geometric[s.pon_homing()[j]] += 1;
    }
    let mut balanced = geometric.clone();
    loop {
        let (hi, &max) = first_extreme(&balanced, |a, b| a > b);
        let (lo, &min) = first_extreme(&balanced, |a, b| a < b);
        if max - min <= 1 {
            break;
        }
        balanced[hi] -= 1;
        balanced[lo] += 1;
    }
    PonAssignment {
        geometric,
        balanced,
    }
}

fn first_extreme(v: &[usize], better: impl Fn(usize, usize) -> bool) -> (usize, &usize) {
    let mut best = 0;
    for i in 1..v.len() {
        if better(v[i], v[best]) {
            best = i;
        }
    }
    (best, &v[best])
}

fn slots(w_mhz: u32) -> usize {
    (w_mhz / SLOT_MHZ) as usize
}

/// `m · ⌈(w/5) / B_p⌉`: a wavelength never serves two antenna sites.
pub fn wavelengths_overlay(w_mhz: u32, m: usize, slots_per_wavelength: usize) -> usize {
    m * slots(w_mhz).div_ceil(slots_per_wavelength)
}

/// Wavelengths on each PON, `⌈m_i · (w/5) / B_p⌉`.
pub fn wavelengths_per_pon(
    w_mhz: u32,
    per_pon: &[usize],
    slots_per_wavelength: usize,
) -> Vec<usize> {
    per_pon
        .iter()
        .map(|&m_i| (m_i * slots(w_mhz)).div_ceil(slots_per_wavelength))
        .collect()
}

/// `Σ_i ⌈m_i · (w/5) / B_p⌉`.
pub fn wavelengths_shared(w_mhz: u32, per_pon: &[usize], slots_per_wavelength: usize) -> usize {
    wavelengths_per_pon(w_mhz, per_pon, slots_per_wavelength)
        .into_iter()
        .sum()
}
