//! The run configuration file (TOML). Every section is optional and falls
//! back to the documented defaults; unknown keys are rejected.

use std::fs;
use std::path::{Path, PathBuf};

use mdmimo_core::economics::LeaseAnnualization;
use mdmimo_core::{NumeratorMode, ReferenceCostInputs, ScenarioConfig, SweepSpec, TransportParams};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub numerator: NumeratorMode,
    /// Largest bandwidth the operator may lease, MHz.
    pub max_bandwidth_mhz: u32,
    pub output: PathBuf,
    pub scenario: ScenarioConfig,
    pub transport: TransportParams,
    pub economics: EconomicsConfig,
    pub sweep: SweepSpec,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            numerator: NumeratorMode::Corrected,
            max_bandwidth_mhz: 50,
            output: PathBuf::from("sweep.csv"),
            scenario: ScenarioConfig::default(),
            transport: TransportParams::default(),
            economics: EconomicsConfig::default(),
            sweep: SweepSpec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EconomicsConfig {
    pub reference: ReferenceCostInputs,
    /// Optional capex-based rebuild of the wavelength lease price.
    pub wavelength_dcf: Option<LeaseAnnualization>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Parses TOML; `origin` names the source in diagnostics.
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config {
            path: origin.to_string(),
            message: e.to_string(),
        })
    }

    pub fn load_or_default(path: Option<&Path>) -> Result<Self, CliError> {
        path.map_or_else(|| Ok(Self::default()), Self::load)
    }

    /// Checks the model-level invariants that parsing cannot express.
    pub fn validate(&self) -> Result<(), CliError> {
        self.scenario.validate().map_err(CliError::Model)?;
        self.sweep.validate().map_err(CliError::Model)?;
        for v in &self.sweep.models {
            self.transport.model(*v).map_err(CliError::Model)?;
        }
        if self.max_bandwidth_mhz < 5 || !self.max_bandwidth_mhz.is_multiple_of(5) {
            return Err(CliError::Model(mdmimo_core::Error::InvalidBandwidth(
                self.max_bandwidth_mhz,
            )));
        }
        Ok(())
    }

    /// SHA-256 over every field that changes results (the output path is
    /// excluded), as lowercase hex.
    pub fn hash(&self) -> String {
        let mut semantic = serde_json::to_value(self).expect("config serializes");
        if let Some(map) = semantic.as_object_mut() {
            map.remove("output");
        }
        let bytes = serde_json::to_vec(&semantic).expect("config serializes");
        Sha256::digest(&bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// The default configuration as commented TOML.
    pub fn reference_toml() -> String {
        let body = toml::to_string_pretty(&Self::default()).expect("defaults serialize");
        format!("{REFERENCE_PREAMBLE}{body}")
    }
}

const REFERENCE_PREAMBLE: &str = "\
# mdmimo reference configuration: every key with its default value.
# All sections are optional; unknown keys are an error.
#
# numerator          corrected = w * sum log2(1 + SNR) in bit/s,
#                    literal   = sum log2(1 + SNR) without the bandwidth factor
# scenario           K, M and densities before density_scale; powers in dBm,
#                    noise density in dBm/Hz, path loss in dB at 1 km
# transport          line rates in Gb/s; slots per wavelength = floor(capacity / per_5mhz)
# economics.reference
#                    published lease figures; fx_gbp_usd is back-solved, not sourced
# economics.wavelength_dcf (optional table)
#                    capex, opex_fraction, wacc, roi, horizon_years
# sweep              ratio grids (strictly increasing), models, shaded R_bm band,
#                    wavelength price used as normalization

";
