//! Multi-user MD-MIMO sum rate for a candidate allocation.

use alloc::vec::Vec;
use core::fmt;

use crate::scenario::Scenario;
use crate::{Error, Result, SLOT_MHZ};

/// Form of the rate numerator.
///
/// `Corrected` is the total rate `w · Σ log2(1 + SNR_k)` in bit/s.
/// `Literal` drops the leading bandwidth factor and returns the bare
/// `Σ log2(1 + r_k / (N0 w))`, which is dimensionless and always favours
/// the narrowest band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum NumeratorMode {
    #[default]
    Corrected,
    Literal,
}

impl NumeratorMode {
    pub fn name(self) -> &'static str {
        match self {
            NumeratorMode::Corrected => "corrected",
            NumeratorMode::Literal => "literal",
        }
    }
}

impl fmt::Display for NumeratorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for NumeratorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(NumeratorMode::Corrected),
            "literal" => Ok(NumeratorMode::Literal),
            _ => Err(Error::InvalidParameter(
                "numerator mode must be corrected or literal",
            )),
        }
    }
}

/// A candidate `(w, m)` together with the antennas serving it.
#[derive(Debug, Clone, PartialEq)]
pub struct Allocation {
    pub bandwidth_mhz: u32,
    pub antennas: Vec<usize>,
}

impl Allocation {
    /// Checks `w` against the 5 MHz slot grid and `K ≤ m ≤ M` for `s`.
    pub fn new(s: &Scenario, bandwidth_mhz: u32, antennas: Vec<usize>) -> Result<Self> {
        check_bandwidth(bandwidth_mhz)?;
        check_antenna_count(s, antennas.len())?;
        if let Some(&bad) = antennas.iter().find(|&&j| j >= s.num_antennas()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: s.num_antennas(),
            });
        }
        Ok(Allocation {
            bandwidth_mhz,
            antennas,
        })
    }

    pub fn num_antennas(&self) -> usize {
        self.antennas.len()
    }

    pub fn bandwidth_hz(&self) -> f64 {
        self.bandwidth_mhz as f64 * 1e6
    }
}

pub(crate) fn check_bandwidth(w: u32) -> Result<()> {
    if w == 0 || !w.is_multiple_of(SLOT_MHZ) {
        return Err(Error::InvalidBandwidth(w));
    }
    Ok(())
}

pub(crate) fn check_antenna_count(s: &Scenario, m: usize) -> Result<()> {
    let (min, max) = (s.num_users(), s.num_antennas());
    if m < min || m > max {
        return Err(Error::AntennaCountOutOfRange { m, min, max });
    }
    Ok(())
}

/// All antennas ranked by column sum `Σ_k G[k][j]`, largest first, ties to
/// the lower index. Any prefix of this order is the greedy selection.
pub fn antenna_order(s: &Scenario) -> Vec<usize> {
    let mut sums: Vec<(usize, f64)> = (0..s.num_antennas())
        .map(|j| (j, (0..s.num_users()).map(|k| s.gain(k, j)).sum()))
        .collect();
    sums.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    sums.into_iter().map(|(j, _)| j).collect()
}

/// The `m` antennas with the largest aggregate gain. Nested in `m`.
pub fn select_antennas(s: &Scenario, m: usize) -> Result<Vec<usize>> {
    check_antenna_count(s, m)?;
    let mut order = antenna_order(s);
    order.truncate(m);
    Ok(order)
}

/// Per-user SNR `r_k(A) / (N_eff · w)`.
pub fn user_snrs(s: &Scenario, a: &Allocation) -> Result<Vec<f64>> {
    let noise = s.noise_mw_per_hz() * a.bandwidth_hz();
    (0..s.num_users())
        .map(|k| s.received_power(k, &a.antennas).map(|r| r / noise))
        .collect()
}

pub fn sum_rate(s: &Scenario, a: &Allocation, mode: NumeratorMode) -> Result<f64> {
    let spectral: f64 = user_snrs(s, a)?
        .into_iter()
        .map(|snr| libm::log2(1.0 + snr))
        .sum();
    Ok(match mode {
        NumeratorMode::Corrected => a.bandwidth_hz() * spectral,
        NumeratorMode::Literal => spectral,
    })
}
