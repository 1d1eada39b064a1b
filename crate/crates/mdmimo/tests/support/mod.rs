//! Test-only reference computations, written without calling the model
//! code paths they are compared against.
#![allow(dead_code, clippy::manual_div_ceil)]

use mdmimo_core::{CostPoint, NumeratorMode, Scenario, TransportVariant};

pub struct NaiveOptimum {
    pub w: u32,
    pub m: usize,
    pub eta: f64,
}

/// Slots per wavelength for the default line rates.
pub fn naive_bp(v: TransportVariant) -> usize {
    match v {
        TransportVariant::SplitPhyShared => 320,
        _ => 32,
    }
}

/// Plain double loop over `m` then `w`, keeping the first strict maximum.
pub fn naive_optimize(
    s: &Scenario,
    v: TransportVariant,
    cp: &CostPoint,
    max_w: u32,
    mode: NumeratorMode,
) -> NaiveOptimum {
    let k_users = s.num_users();
    let m_ants = s.num_antennas();
    let n_p = s.num_pons();
    let bp = naive_bp(v);

    let mut cols: Vec<(usize, f64)> = (0..m_ants)
        .map(|j| {
            let mut acc = 0.0;
            for k in 0..k_users {
                acc += s.gain(k, j);
            }
            (j, acc)
        })
        .collect();
    cols.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));

    let mut best = NaiveOptimum {
        w: 0,
        m: 0,
        eta: f64::NEG_INFINITY,
    };
    for m in k_users..=m_ants {
        for w in (5..=max_w).step_by(5) {
            let w_hz = w as f64 * 1e6;
            let mut spectral = 0.0;
            for k in 0..k_users {
                let mut g = 0.0;
                for &(j, _) in &cols[..m] {
                    g += s.gain(k, j);
                }
                let snr = s.tx_power_mw() * g / (s.noise_mw_per_hz() * w_hz);
                spectral += (1.0 + snr).log2();
            }
            let rate = match mode {
                NumeratorMode::Corrected => w_hz * spectral,
                NumeratorMode::Literal => spectral,
            };
            let q = (w / 5) as usize;
            let lambdas = if v == TransportVariant::FronthaulOverlay {
                m * ((q + bp - 1) / bp)
            } else {
                (0..n_p)
                    .map(|i| {
                        let m_i = m / n_p + usize::from(i < m % n_p);
                        (m_i * q + bp - 1) / bp
                    })
                    .sum()
            };
            let cost = cp.antenna * m as f64
                + cp.spectrum_per_mhz * w as f64
                + cp.wavelength * lambdas as f64;
            let eta = rate / cost;
            if eta > best.eta {
                best = NaiveOptimum { w, m, eta };
            }
        }
    }
    best
}
