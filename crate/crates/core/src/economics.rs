//! Lease prices, cost ratios and the cost-efficiency objective.
//!
//! All prices are per unit of one common leasing period, in an abstract
//! cost unit (cu). Currency conversion only happens in
//! [`reference_ratios`].

use crate::{Error, Result};

/// Lease prices for one period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostPoint {
    /// `c_w`, per MHz of spectrum.
    pub spectrum_per_mhz: f64,
    /// `c_m`, per antenna site.
    pub antenna: f64,
    /// `c_b`, per PON wavelength channel.
    pub wavelength: f64,
}

impl CostPoint {
    pub fn new(spectrum_per_mhz: f64, antenna: f64, wavelength: f64) -> Result<Self> {
        let cp = CostPoint {
            spectrum_per_mhz,
            antenna,
            wavelength,
        };
        cp.validate()?;
        Ok(cp)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = [self.spectrum_per_mhz, self.antenna, self.wavelength]
            .iter()
            .all(|c| c.is_finite() && *c > 0.0);
        if ok {
            Ok(())
        } else {
            Err(Error::NonPositiveCost)
        }
    }

    pub fn ratios(&self) -> CostRatios {
        CostRatios {
            spectrum_to_wavelength: self.spectrum_per_mhz / self.wavelength,
            wavelength_to_antenna: self.wavelength / self.antenna,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        CostPoint {
            spectrum_per_mhz: self.spectrum_per_mhz * factor,
            antenna: self.antenna * factor,
            wavelength: self.wavelength * factor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CostRatios {
    /// `R_wb = c_w / c_b`.
    pub spectrum_to_wavelength: f64,
    /// `R_bm = c_b / c_m`.
    pub wavelength_to_antenna: f64,
}

impl CostRatios {
    pub fn new(r_wb: f64, r_bm: f64) -> Result<Self> {
        if !(r_wb.is_finite() && r_wb > 0.0 && r_bm.is_finite() && r_bm > 0.0) {
            return Err(Error::NonPositiveCost);
        }
        Ok(CostRatios {
            spectrum_to_wavelength: r_wb,
            wavelength_to_antenna: r_bm,
        })
    }

    /// Prices with `c_b` pinned to `normalization`.
    pub fn to_cost_point(&self, normalization: f64) -> Result<CostPoint> {
        ratios_to_costpoint(*self, normalization)
    }
}

/// `c_b = normalization`, `c_w = R_wb · c_b`, `c_m = c_b / R_bm`.
pub fn ratios_to_costpoint(r: CostRatios, normalization: f64) -> Result<CostPoint> {
    CostRatios::new(r.spectrum_to_wavelength, r.wavelength_to_antenna)?;
    if !(normalization.is_finite() && normalization > 0.0) {
        return Err(Error::NonPositiveCost);
    }
    CostPoint::new(
        r.spectrum_to_wavelength * normalization,
        normalization / r.wavelength_to_antenna,
        normalization,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown {
    pub antennas: f64,
    pub spectrum: f64,
    pub transport: f64,
    pub total: f64,
}

pub fn total_cost(cp: &CostPoint, w_mhz: u32, m: usize, n_wavelengths: usize) -> CostBreakdown {
    let antennas = cp.antenna * m as f64;
    let spectrum = cp.spectrum_per_mhz * w_mhz as f64;
    let transport = cp.wavelength * n_wavelengths as f64;
    CostBreakdown {
        antennas,
        spectrum,
        transport,
        total: antennas + spectrum + transport,
    }
}

/// Bits (or literal-mode rate units) per cost unit.
pub fn cost_efficiency(rate: f64, cost: f64) -> Result<f64> {
    if cost.is_nan() || cost <= 0.0 {
        return Err(Error::NonPositiveCost);
    }
    Ok(rate / cost)
}

/// Published lease figures the reference cost ratios are built from.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct ReferenceCostInputs {
    /// GBP per MHz per habitant over the whole lease.
    pub spectrum_price_gbp: f64,
    pub habitants: f64,
    pub lease_years: f64,
    /// USD per month per antenna site.
    pub site_monthly_usd: f64,
    /// USD per year per wavelength.
    pub wavelength_annual_usd: f64,
    /// USD per GBP. The default is back-solved so that the spectrum ratio
    /// lands on 0.0065; it is a reconstruction, not a sourced rate.
    pub fx_gbp_usd: f64,
}

impl Default for ReferenceCostInputs {
    fn default() -> Self {
        ReferenceCostInputs {
            spectrum_price_gbp: 0.1138,
            habitants: 1350.0,
            lease_years: 20.0,
            site_monthly_usd: 1900.0,
            wavelength_annual_usd: 1510.0,
            fx_gbp_usd: 1.278,
        }
    }
}

/// Annual prices in USD and the ratios derived from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceCosts {
    pub prices: CostPoint,
    pub ratios: CostRatios,
}

pub fn reference_ratios(inputs: &ReferenceCostInputs) -> Result<ReferenceCosts> {
    let positive = [
        inputs.spectrum_price_gbp,
        inputs.habitants,
        inputs.lease_years,
        inputs.site_monthly_usd,
        inputs.wavelength_annual_usd,
        inputs.fx_gbp_usd,
    ]
    .iter()
    .all(|v| v.is_finite() && *v > 0.0);
    if !positive {
        return Err(Error::InvalidParameter(
            "reference cost inputs must be positive",
        ));
    }
    let c_w = inputs.spectrum_price_gbp * inputs.habitants / inputs.lease_years * inputs.fx_gbp_usd;
    let c_m = inputs.site_monthly_usd * 12.0;
    let c_b = inputs.wavelength_annual_usd;
    let prices = CostPoint::new(c_w, c_m, c_b)?;
    Ok(ReferenceCosts {
        prices,
        ratios: prices.ratios(),
    })
}

/// `i(1+i)^T / ((1+i)^T − 1)`, or `1/T` when `i = 0`.
pub fn capital_recovery_factor(rate: f64, horizon_years: u32) -> f64 {
    if horizon_years == 0 {
        return 0.0;
    }
    let t = horizon_years as f64;
    if rate == 0.0 {
        return 1.0 / t;
    }
    let growth = libm::pow(1.0 + rate, t);
    rate * growth / (growth - 1.0)
}

/// Annual lease price recovering `capex` at `wacc` over `horizon_years`,
/// with `roi` as a margin on the annuity and a flat `opex_fraction` of capex.
pub fn annualize_lease(
    capex: f64,
    opex_fraction: f64,
    wacc: f64,
    roi: f64,
    horizon_years: u32,
) -> Result<f64> {
    if horizon_years == 0 {
        return Err(Error::InvalidParameter(
            "lease horizon must be at least one year",
        ));
    }
    if !(wacc >= 0.0 && capex >= 0.0 && opex_fraction >= 0.0 && roi >= 0.0) {
        return Err(Error::InvalidParameter(
            "annualization inputs must be non-negative",
        ));
    }
    Ok(capex * capital_recovery_factor(wacc, horizon_years) * (1.0 + roi) + opex_fraction * capex)
}

/// Discounted-cash-flow parameters for rebuilding a wavelength lease price.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct LeaseAnnualization {
    pub capex: f64,
    pub opex_fraction: f64,
    pub wacc: f64,
    pub roi: f64,
    pub horizon_years: u32,
}

impl LeaseAnnualization {
    pub fn annual(&self) -> Result<f64> {
        annualize_lease(
            self.capex,
            self.opex_fraction,
            self.wacc,
            self.roi,
            self.horizon_years,
        )
    }
}
