//! Scenario dump: a self-describing JSON file with the generating
//! configuration, positions in km (at most six decimals) and the derived
//! PON count. Gains are not stored; they follow from positions and the
//! `scenario.propagation` block via
//! `PL(d) = ref_loss_db + 10 · path_loss_exponent · log10(max(d, min_distance) / 1 km)`.

use std::fs;
use std::path::Path;

use mdmimo_core::{Point, Scenario, ScenarioConfig};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT: &str = "mdmimo-scenario";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDump {
    pub format: String,
    pub version: u32,
    pub seed: u64,
    pub scenario: ScenarioConfig,
    pub num_users: usize,
    pub num_antennas: usize,
    pub num_pons: usize,
    /// Linear transmit power per symbol, mW.
    pub tx_power_mw: f64,
    /// Linear noise density including the noise figure, mW/Hz.
    pub noise_mw_per_hz: f64,
    pub gain_model: String,
    pub users_km: Vec<[f64; 2]>,
    pub antennas_km: Vec<[f64; 2]>,
    pub pon_homing: Vec<usize>,
}

impl ScenarioDump {
    pub fn new(cfg: &ScenarioConfig, s: &Scenario) -> Self {
        let xy = |p: &Point| [p.x, p.y];
        ScenarioDump {
            format: FORMAT.to_string(),
            version: VERSION,
            seed: cfg.rng_seed,
            scenario: cfg.clone(),
            num_users: s.num_users(),
            num_antennas: s.num_antennas(),
            num_pons: s.num_pons(),
            tx_power_mw: s.tx_power_mw(),
            noise_mw_per_hz: s.noise_mw_per_hz(),
            gain_model: "log-distance: ref_loss_db + 10*path_loss_exponent*log10(max(d_km, min_distance_m/1000))".into(),
            users_km: s.user_positions().iter().map(xy).collect(),
            antennas_km: s.antenna_positions().iter().map(xy).collect(),
            pon_homing: s.pon_homing().to_vec(),
        }
    }

    /// Rebuilds the scenario from the stored positions.
    pub fn to_scenario(&self) -> Result<Scenario, CliError> {
        let pts = |v: &[[f64; 2]]| v.iter().map(|p| Point::new(p[0], p[1])).collect();
        let s =
            Scenario::from_positions(&self.scenario, pts(&self.users_km), pts(&self.antennas_km))
                .map_err(CliError::Model)?;
        if s.num_pons() != self.num_pons || s.pon_homing() != self.pon_homing.as_slice() {
            return Err(CliError::Usage(
                "scenario dump is inconsistent: PON homing does not match its configuration".into(),
            ));
        }
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("dump serializes");
        text.push('\n');
        text
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, self.to_json()).map_err(|e| CliError::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let dump: ScenarioDump = serde_json::from_str(&text).map_err(|e| CliError::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        if dump.format != FORMAT || dump.version != VERSION {
            return Err(CliError::Format {
                path: path.to_path_buf(),
                message: format!("expected {FORMAT} v{VERSION}"),
            });
        }
        Ok(dump)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mdmimo_core::build_scenario;

    #[test]
    fn dump_round_trip_is_bit_exact() {
        let cfg = ScenarioConfig::default();
        let s = build_scenario(&cfg).unwrap();
        let dump = ScenarioDump::new(&cfg, &s);
        let back: ScenarioDump = serde_json::from_str(&dump.to_json()).unwrap();
        assert_eq!(back, dump);
        assert_eq!(back.to_scenario().unwrap(), s);
    }

    #[test]
    fn positions_have_at_most_six_decimals() {
        let cfg = ScenarioConfig {
            rng_seed: 1234,
            ..Default::default()
        };
        let s = build_scenario(&cfg).unwrap();
        let json = ScenarioDump::new(&cfg, &s).to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        for p in v["users_km"].as_array().unwrap() {
            for c in p.as_array().unwrap() {
                let text = c.to_string();
                let decimals = text.split('.').nth(1).map_or(0, str::len);
                assert!(decimals <= 6, "{text}");
            }
        }
    }
}
