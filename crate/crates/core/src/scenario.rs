//! Synthetic deployment: users dropped uniformly at random over a square
//! area, antenna sites (RRHs) on a regular grid, every site homed on one PON,
//! and the user-to-site path-gain matrix.
//!
//! Positions are quantized to 1e-6 km so that a scenario written with six
//! decimals and read back reproduces the same gains bit for bit.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        libm::hypot(self.x - other.x, self.y - other.y)
    }
}

/// Log-distance path loss: `PL(d) = ref_loss_db + 10·α·log10(max(d, d_min) / 1 km)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct PropagationConfig {
    pub path_loss_exponent: f64,
    /// Loss at 1 km, dB.
    pub ref_loss_db: f64,
    pub min_distance_m: f64,
}

impl Default for PropagationConfig {
    fn default() -> Self {
        PropagationConfig {
            path_loss_exponent: 3.67,
            ref_loss_db: 140.7,
            min_distance_m: 35.0,
        }
    }
}

impl PropagationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.path_loss_exponent.is_finite() && self.path_loss_exponent > 2.0) {
            return Err(Error::InvalidParameter("path_loss_exponent must be > 2"));
        }
        if !(self.min_distance_m.is_finite() && self.min_distance_m > 0.0) {
            return Err(Error::InvalidParameter("min_distance_m must be > 0"));
        }
        if !self.ref_loss_db.is_finite() {
            return Err(Error::InvalidParameter("ref_loss_db must be finite"));
        }
        Ok(())
    }

    /// Path loss in dB at distance `d_km`.
    pub fn path_loss_db(&self, d_km: f64) -> f64 {
        let d = d_km.max(self.min_distance_m / 1000.0);
        self.ref_loss_db + 10.0 * self.path_loss_exponent * libm::log10(d)
    }

    /// Linear power gain at distance `d_km`.
    pub fn gain(&self, d_km: f64) -> f64 {
        db_to_linear(-self.path_loss_db(d_km))
    }

    /// Largest gain any link can have.
    pub fn max_gain(&self) -> f64 {
        self.gain(0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct ScenarioConfig {
    pub area_side_km: f64,
    /// Active users `K` before density scaling.
    pub num_users: usize,
    /// Antenna sites `M` before density scaling.
    pub num_antennas: usize,
    pub dwellings_per_km2: f64,
    pub habitants_per_km2: f64,
    /// Ports per PON (ONUs and RRHs share them).
    pub pon_split: usize,
    /// Multiplies users, antennas, dwellings and habitants.
    pub density_scale: f64,
    pub rng_seed: u64,
    pub propagation: PropagationConfig,
    /// Transmit power per symbol, dBm.
    pub tx_power_dbm: f64,
    /// Thermal noise density, dBm/Hz.
    pub noise_density_dbm_hz: f64,
    pub noise_figure_db: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            area_side_km: 1.0,
            num_users: 20,
            num_antennas: 64,
            dwellings_per_km2: 570.0,
            habitants_per_km2: 1350.0,
            pon_split: 64,
            density_scale: 1.0,
            rng_seed: 42,
            propagation: PropagationConfig::default(),
            tx_power_dbm: 24.0,
            noise_density_dbm_hz: -174.0,
            noise_figure_db: 9.0,
        }
    }
}

impl ScenarioConfig {
    fn scaled(&self, n: f64) -> f64 {
        libm::round(n * self.density_scale)
    }

    /// `K` after density scaling.
    pub fn users(&self) -> usize {
        self.scaled(self.num_users as f64) as usize
    }

    /// `M` after density scaling.
    pub fn antennas(&self) -> usize {
        self.scaled(self.num_antennas as f64) as usize
    }

    pub fn dwellings(&self) -> usize {
        self.scaled(self.dwellings_per_km2 * self.area_side_km * self.area_side_km) as usize
    }

    pub fn habitants(&self) -> usize {
        self.scaled(self.habitants_per_km2 * self.area_side_km * self.area_side_km) as usize
    }

    /// Number of PONs needed to give every dwelling and every RRH a split port.
    pub fn num_pons(&self) -> usize {
        (self.dwellings() + self.antennas()).div_ceil(self.pon_split)
    }

    pub fn tx_power_mw(&self) -> f64 {
        db_to_linear(self.tx_power_dbm)
    }

    /// Effective noise density (thermal plus noise figure), mW/Hz.
    pub fn noise_mw_per_hz(&self) -> f64 {
        db_to_linear(self.noise_density_dbm_hz + self.noise_figure_db)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.density_scale.is_finite() && self.density_scale > 0.0) {
            return Err(Error::InvalidParameter("density_scale must be > 0"));
        }
        if !(self.area_side_km.is_finite() && self.area_side_km > 0.0) {
            return Err(Error::InvalidParameter("area_side_km must be > 0"));
        }
        if !(self.dwellings_per_km2 >= 0.0 && self.habitants_per_km2 >= 0.0) {
            return Err(Error::InvalidParameter("densities must be non-negative"));
        }
        if self.pon_split == 0 {
            return Err(Error::InvalidParameter("pon_split must be >= 1"));
        }
        if !(self.tx_power_dbm.is_finite()
            && self.noise_density_dbm_hz.is_finite()
            && self.noise_figure_db.is_finite())
        {
            return Err(Error::InvalidParameter("power levels must be finite"));
        }
        self.propagation.validate()?;
        let (k, m) = (self.users(), self.antennas());
        if k == 0 {
            return Err(Error::NoUsers);
        }
        if m < k {
            return Err(Error::TooFewAntennas {
                users: k,
                antennas: m,
            });
        }
        if grid_side(m).is_none() {
            return Err(Error::NonSquareAntennaCount(m));
        }
        Ok(())
    }
}

/// Immutable deployment. Gains are stored row-major, `K` rows of `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    users: Vec<Point>,
    antennas: Vec<Point>,
    num_users: usize,
    num_antennas: usize,
    gains: Vec<f64>,
    pon_homing: Vec<usize>,
    num_pons: usize,
    tx_power_mw: f64,
    noise_mw_per_hz: f64,
}

/// Builds the seeded scenario described by `cfg`.
///
/// Antennas sit at the centres of a `√M × √M` grid, listed row by row
/// (grid-scan order). Users are drawn from ChaCha8 seeded with
/// `ChaCha8Rng::seed_from_u64(rng_seed)`; each coordinate is
/// `(next_u64() >> 11) · 2⁻⁵³ · area_side`, x before y, user by user.
pub fn build_scenario(cfg: &ScenarioConfig) -> Result<Scenario> {
    cfg.validate()?;
    let k = cfg.users();
    let m = cfg.antennas();
    let side = grid_side(m).ok_or(Error::NonSquareAntennaCount(m))?;
    let pitch = cfg.area_side_km / side as f64;

    let antennas = (0..m)
        .map(|j| {
            let (row, col) = (j / side, j % side);
            Point::new(
                quantize((col as f64 + 0.5) * pitch),
                quantize((row as f64 + 0.5) * pitch),
            )
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let users = (0..k)
        .map(|_| {
            let x = unit_f64(&mut rng) * cfg.area_side_km;
            let y = unit_f64(&mut rng) * cfg.area_side_km;
            Point::new(quantize(x), quantize(y))
        })
        .collect();

    Scenario::from_positions(cfg, users, antennas)
}

impl Scenario {
    /// Builds a scenario from explicit positions. Counts and grid shape
    /// from `cfg` are not enforced here; only `K ≥ 1` and `M ≥ K`.
    pub fn from_positions(
        cfg: &ScenarioConfig,
        users: Vec<Point>,
        antennas: Vec<Point>,
    ) -> Result<Self> {
        cfg.propagation.validate()?;
        if cfg.pon_split == 0 {
            return Err(Error::InvalidParameter("pon_split must be >= 1"));
        }
        check_counts(users.len(), antennas.len())?;
        let gains = users
            .iter()
            .flat_map(|u| antennas.iter().map(move |a| (u, a)))
            .map(|(u, a)| cfg.propagation.gain(u.distance(a)))
            .collect();
        let num_pons = (cfg.dwellings() + antennas.len()).div_ceil(cfg.pon_split);
        Ok(Scenario {
            num_users: users.len(),
            num_antennas: antennas.len(),
            pon_homing: round_robin(antennas.len(), num_pons),
            users,
            antennas,
            gains,
            num_pons,
            tx_power_mw: cfg.tx_power_mw(),
            noise_mw_per_hz: cfg.noise_mw_per_hz(),
        })
    }

    /// Builds a scenario directly from a `K × M` row-major gain matrix,
    /// without geometry. Antennas are homed round-robin on `num_pons` PONs.
    pub fn from_gain_matrix(
        num_users: usize,
        num_antennas: usize,
        gains: Vec<f64>,
        num_pons: usize,
        tx_power_mw: f64,
        noise_mw_per_hz: f64,
    ) -> Result<Self> {
        check_counts(num_users, num_antennas)?;
        if gains.len() != num_users * num_antennas {
            return Err(Error::InvalidParameter("gain matrix must have K*M entries"));
        }
        if gains.iter().any(|g| !(g.is_finite() && *g > 0.0)) {
            return Err(Error::InvalidParameter("gains must be finite and positive"));
        }
        if num_pons == 0 {
            return Err(Error::InvalidParameter("num_pons must be >= 1"));
        }
        if !(tx_power_mw > 0.0 && noise_mw_per_hz > 0.0) {
            return Err(Error::InvalidParameter("power and noise must be positive"));
        }
        Ok(Scenario {
            users: Vec::new(),
            antennas: Vec::new(),
            num_users,
            num_antennas,
            gains,
            pon_homing: round_robin(num_antennas, num_pons),
            num_pons,
            tx_power_mw,
            noise_mw_per_hz,
        })
    }

    pub fn num_users(&self) -> usize {
        self.num_users
    }

    pub fn num_antennas(&self) -> usize {
        self.num_antennas
    }

    /// Empty for scenarios built from a bare gain matrix.
    pub fn user_positions(&self) -> &[Point] {
        &self.users
    }

    /// Empty for scenarios built from a bare gain matrix.
    pub fn antenna_positions(&self) -> &[Point] {
        &self.antennas
    }

    pub fn gain(&self, user: usize, antenna: usize) -> f64 {
        self.gains[user * self.num_antennas + antenna]
    }

    pub fn gain_row(&self, user: usize) -> &[f64] {
        let start = user * self.num_antennas;
        &self.gains[start..start + self.num_antennas]
    }

    /// PON index of every antenna.
    pub fn pon_homing(&self) -> &[usize] {
        &self.pon_homing
    }

    pub fn num_pons(&self) -> usize {
        self.num_pons
    }

    /// Antennas homed on each PON.
    pub fn homed_counts(&self) -> Vec<usize> {
        let mut counts = alloc::vec![0; self.num_pons];
        for &p in &self.pon_homing {
            counts[p] += 1;
        }
        counts
    }

    pub fn tx_power_mw(&self) -> f64 {
        self.tx_power_mw
    }

    pub fn noise_mw_per_hz(&self) -> f64 {
        self.noise_mw_per_hz
    }

    /// Aggregate received power of `user` over `antennas`, in mW:
    /// `r_k(A) = P · Σ_{j∈A} G[k][j]`.
    pub fn received_power(&self, user: usize, antennas: &[usize]) -> Result<f64> {
        if antennas.is_empty() {
            return Err(Error::EmptyAntennaSet);
        }
        if user >= self.num_users {
            return Err(Error::IndexOutOfRange {
                index: user,
                len: self.num_users,
            });
        }
        let row = self.gain_row(user);
        let mut total = 0.0;
        for &j in antennas {
            total += *row.get(j).ok_or(Error::IndexOutOfRange {
                index: j,
                len: self.num_antennas,
            })?;
        }
        Ok(self.tx_power_mw * total)
    }
}

fn check_counts(users: usize, antennas: usize) -> Result<()> {
    if users == 0 {
        return Err(Error::NoUsers);
    }
    if antennas < users {
        return Err(Error::TooFewAntennas { users, antennas });
    }
    Ok(())
}

fn round_robin(n: usize, pons: usize) -> Vec<usize> {
    (0..n).map(|j| j % pons).collect()
}

fn grid_side(m: usize) -> Option<usize> {
    let side = libm::round(libm::sqrt(m as f64)) as usize;
    (side * side == m).then_some(side)
}

fn quantize(x: f64) -> f64 {
    libm::round(x * 1e6) / 1e6
}

fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn db_to_linear(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * libm::log10(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn default_scenario_counts() {
        let s = build_scenario(&ScenarioConfig::default()).unwrap();
        assert_eq!(s.num_users(), 20);
        assert_eq!(s.num_antennas(), 64);
        // ceil((570 + 64) / 64)
        assert_eq!(s.num_pons(), 10);
        assert_eq!(s.homed_counts(), vec![7, 7, 7, 7, 6, 6, 6, 6, 6, 6]);
    }

    #[test]
    fn density_scale_four() {
        let cfg = ScenarioConfig {
            density_scale: 4.0,
            ..Default::default()
        };
        assert_eq!(cfg.dwellings(), 2280);
        let s = build_scenario(&cfg).unwrap();
        assert_eq!(
            (s.num_users(), s.num_antennas(), s.num_pons()),
            (80, 256, 40)
        );
    }

    #[test]
    fn single_colocated_link_uses_min_distance() {
        let cfg = ScenarioConfig {
            num_users: 1,
            num_antennas: 1,
            ..Default::default()
        };
        let p = Point::new(0.5, 0.5);
        let s = Scenario::from_positions(&cfg, vec![p], vec![p]).unwrap();
        let pl = 140.7 + 36.7 * libm::log10(0.035);
        let expected = libm::pow(10.0, -pl / 10.0);
        assert!((s.gain(0, 0) - expected).abs() <= 1e-15 * expected);
    }

    #[test]
    fn rejects_bad_counts() {
        let cfg = ScenarioConfig {
            num_users: 65,
            ..Default::default()
        };
        assert_eq!(
            build_scenario(&cfg),
            Err(Error::TooFewAntennas {
                users: 65,
                antennas: 64
            })
        );
        let cfg = ScenarioConfig {
            num_antennas: 60,
            ..Default::default()
        };
        assert_eq!(build_scenario(&cfg), Err(Error::NonSquareAntennaCount(60)));
        let cfg = ScenarioConfig {
            num_users: 0,
            ..Default::default()
        };
        assert_eq!(build_scenario(&cfg), Err(Error::NoUsers));
    }

    #[test]
    fn antennas_on_centered_grid() {
        let s = build_scenario(&ScenarioConfig::default()).unwrap();
        let a = s.antenna_positions();
        assert_eq!(a[0], Point::new(0.0625, 0.0625));
        assert_eq!(a[1], Point::new(0.1875, 0.0625));
        assert_eq!(a[8], Point::new(0.0625, 0.1875));
        assert_eq!(a[63], Point::new(0.9375, 0.9375));
    }

    #[test]
    fn users_inside_area_and_seed_dependent() {
        let a = build_scenario(&ScenarioConfig::default()).unwrap();
        let b = build_scenario(&ScenarioConfig {
            rng_seed: 7,
            ..Default::default()
        })
        .unwrap();
        assert!(a
            .user_positions()
            .iter()
            .all(|p| (0.0..=1.0).contains(&p.x) && (0.0..=1.0).contains(&p.y)));
        assert_ne!(a.user_positions(), b.user_positions());
        assert_eq!(a, build_scenario(&ScenarioConfig::default()).unwrap());
    }

    #[test]
    fn received_power_single_and_additive() {
        let s = build_scenario(&ScenarioConfig::default()).unwrap();
        let one = s.received_power(3, &[5]).unwrap();
        assert_eq!(one, s.tx_power_mw() * s.gain(3, 5));
        let a1 = s.received_power(3, &[0, 1, 2]).unwrap();
        let a2 = s.received_power(3, &[10, 20]).unwrap();
        let both = s.received_power(3, &[0, 1, 2, 10, 20]).unwrap();
        assert!((both - (a1 + a2)).abs() <= 1e-12 * both);
    }

    #[test]
    fn received_power_rejects_bad_sets() {
        let s = build_scenario(&ScenarioConfig::default()).unwrap();
        assert_eq!(s.received_power(0, &[]), Err(Error::EmptyAntennaSet));
        assert_eq!(
            s.received_power(0, &[64]),
            Err(Error::IndexOutOfRange { index: 64, len: 64 })
        );
        assert_eq!(
            s.received_power(20, &[0]),
            Err(Error::IndexOutOfRange { index: 20, len: 20 })
        );
    }

    #[test]
    fn propagation_validation() {
        let p = PropagationConfig {
            path_loss_exponent: 2.0,
            ..Default::default()
        };
        assert!(p.validate().is_err());
        let p = PropagationConfig {
            min_distance_m: 0.0,
            ..Default::default()
        };
        assert!(p.validate().is_err());
    }
}
