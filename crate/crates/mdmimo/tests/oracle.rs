//! Scenario-dump oracles. The frozen constants come from
//! `scripts/oracle.py` run on the default (seed 42) dump; the in-test
//! recomputations read the dump as plain JSON.

mod support;

use mdmimo::dump::ScenarioDump;
use mdmimo_core::radio::select_antennas;
use mdmimo_core::{
    build_scenario, evaluate, sum_rate, Allocation, CostRatios, NumeratorMode, ScenarioConfig,
    TransportModel, TransportVariant,
};
use serde_json::Value;

const RECEIVED_POWER_USER0_ALL: f64 = 4.880154400685499e-07;
const TOP20_SORTED: [usize; 20] = [
    3, 5, 8, 9, 10, 12, 13, 14, 16, 17, 35, 39, 43, 45, 46, 47, 50, 54, 60, 61,
];
const SUM_RATE_W50_M64: f64 = 7432034119.533773;
const SPLIT_PHY_ETA_W50_M64: f64 = 7609466.479166419;
const SPLIT_PHY_COST_W50_M64: f64 = 976.6826806953643;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn default_dump_json() -> Value {
    let cfg = ScenarioConfig::default();
    let s = build_scenario(&cfg).unwrap();
    serde_json::from_str(&ScenarioDump::new(&cfg, &s).to_json()).unwrap()
}

/// Gain matrix recomputed from dumped positions and parameters only.
fn gains_from_json(d: &Value) -> Vec<Vec<f64>> {
    let sc = &d["scenario"];
    let prop = &sc["propagation"];
    let alpha = prop["path_loss_exponent"].as_f64().unwrap();
    let ref_db = prop["ref_loss_db"].as_f64().unwrap();
    let dmin = prop["min_distance_m"].as_f64().unwrap() / 1000.0;
    let pts = |key: &str| -> Vec<(f64, f64)> {
        d[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
            .collect()
    };
    let (users, ants) = (pts("users_km"), pts("antennas_km"));
    users
        .iter()
        .map(|u| {
            ants.iter()
                .map(|a| {
                    let dist = ((u.0 - a.0).powi(2) + (u.1 - a.1).powi(2)).sqrt().max(dmin);
                    10f64.powf(-(ref_db + 10.0 * alpha * dist.log10()) / 10.0)
                })
                .collect()
        })
        .collect()
}

#[test]
fn dump_counts_match_default_deployment() {
    let d = default_dump_json();
    assert_eq!(d["users_km"].as_array().unwrap().len(), 20);
    assert_eq!(d["antennas_km"].as_array().unwrap().len(), 64);
    assert_eq!(d["num_pons"], 10);
    assert_eq!(d["seed"], 42);
}

#[test]
fn received_power_matches_frozen_and_recomputed() {
    let cfg = ScenarioConfig::default();
    let s = build_scenario(&cfg).unwrap();
    let all: Vec<usize> = (0..64).collect();
    let r = s.received_power(0, &all).unwrap();
    assert!(rel(r, RECEIVED_POWER_USER0_ALL) < 1e-12, "{r}");

    let d = default_dump_json();
    let g = gains_from_json(&d);
    let p_mw = 10f64.powf(d["scenario"]["tx_power_dbm"].as_f64().unwrap() / 10.0);
    let direct: f64 = p_mw * g[0].iter().sum::<f64>();
    assert!(rel(r, direct) < 1e-12);
}

#[test]
fn top_twenty_matches_frozen_sort() {
    let s = build_scenario(&ScenarioConfig::default()).unwrap();
    let mut sel = select_antennas(&s, 20).unwrap();
    sel.sort_unstable();
    assert_eq!(sel, TOP20_SORTED);
}

#[test]
fn sum_rate_matches_frozen_and_recomputed() {
    let s = build_scenario(&ScenarioConfig::default()).unwrap();
    let a = Allocation::new(&s, 50, (0..64).collect()).unwrap();
    let rate = sum_rate(&s, &a, NumeratorMode::Corrected).unwrap();
    assert!(rel(rate, SUM_RATE_W50_M64) < 1e-12, "{rate}");

    let d = default_dump_json();
    let g = gains_from_json(&d);
    let sc = &d["scenario"];
    let p_mw = 10f64.powf(sc["tx_power_dbm"].as_f64().unwrap() / 10.0);
    let n0 = 10f64.powf(
        (sc["noise_density_dbm_hz"].as_f64().unwrap() + sc["noise_figure_db"].as_f64().unwrap())
            / 10.0,
    );
    let direct: f64 = 50e6
        * g.iter()
            .map(|row| (1.0 + p_mw * row.iter().sum::<f64>() / (n0 * 50e6)).log2())
            .sum::<f64>();
    assert!(rel(rate, direct) < 1e-12);
}

#[test]
fn split_phy_end_to_end_eta() {
    let s = build_scenario(&ScenarioConfig::default()).unwrap();
    let t = TransportModel::standard(TransportVariant::SplitPhyShared);
    let ratios =
        CostRatios::new(0.1138 * 1350.0 / 20.0 * 1.278 / 1510.0, 1510.0 / 22800.0).unwrap();
    let cp = ratios.to_cost_point(1.0).unwrap();
    let e = evaluate(&s, &t, cp, 50, 64, NumeratorMode::Corrected).unwrap();
    assert_eq!(e.n_wavelengths, 10);
    assert!(rel(e.cost.total, SPLIT_PHY_COST_W50_M64) < 1e-12);
    assert!(rel(e.eta, SPLIT_PHY_ETA_W50_M64) < 1e-12, "{}", e.eta);
}

#[test]
fn hand_enumerated_two_by_three() {
    // K=2, M=3, W=10: m ∈ {2, 3}, w ∈ {5, 10}, unit prices, overlay B_p=32
    let gains = vec![2e-9, 5e-10, 1e-9, 1e-9, 2e-10, 3e-9];
    let noise = 1e-17;
    let s = mdmimo_core::Scenario::from_gain_matrix(2, 3, gains.clone(), 1, 1.0, noise).unwrap();
    let cp = mdmimo_core::CostPoint::new(1.0, 1.0, 1.0).unwrap();
    // column sums 3e-9, 7e-10, 4e-9 -> order [2, 0, 1]
    let mut cands = Vec::new();
    for (m, set) in [(2usize, vec![2usize, 0]), (3, vec![2, 0, 1])] {
        for w in [5u32, 10] {
            let w_hz = w as f64 * 1e6;
            let rate: f64 = (0..2)
                .map(|k| {
                    let g: f64 = set.iter().map(|&j| gains[k * 3 + j]).sum();
                    w_hz * (1.0 + g / (noise * w_hz)).log2()
                })
                .sum();
            let cost = m as f64 + w as f64 + m as f64; // one wavelength per antenna
            cands.push((rate / cost, m, w));
        }
    }
    let best = cands
        .iter()
        .fold(cands[0], |b, c| if c.0 > b.0 { *c } else { b });
    let t = TransportModel::standard(TransportVariant::FronthaulOverlay);
    let opt = mdmimo_core::optimize(&s, &t, cp, 10, NumeratorMode::Corrected).unwrap();
    assert_eq!(opt.grid_size, 4);
    assert_eq!(
        (opt.best.num_antennas(), opt.best.bandwidth_mhz()),
        (best.1, best.2)
    );
    assert!(rel(opt.best.eta, best.0) < 1e-12);

    let naive = support::naive_optimize(
        &s,
        TransportVariant::FronthaulOverlay,
        &cp,
        10,
        NumeratorMode::Corrected,
    );
    assert_eq!((naive.m, naive.w), (best.1, best.2));
}
