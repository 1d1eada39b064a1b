//! Sweep CSV and its JSON metadata sidecar.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use mdmimo_core::{SweepRecord, TransportVariant};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Nine significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.8e}")
}

pub fn record_row(r: &SweepRecord) -> [String; 13] {
    [
        r.model.name().to_string(),
        fmt_float(r.r_wb),
        fmt_float(r.r_bm),
        fmt_float(r.c_w),
        fmt_float(r.c_m),
        fmt_float(r.c_b),
        r.opt_m.to_string(),
        r.opt_w.to_string(),
        fmt_float(r.eta),
        fmt_float(r.sum_rate),
        r.n_wavelengths.to_string(),
        fmt_float(r.cost_total),
        r.exceeds_pon_capacity.to_string(),
    ]
}

pub fn csv_bytes(records: &[SweepRecord]) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SweepRecord::HEADER)?;
    for r in records {
        w.write_record(record_row(r))?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

/// One parsed CSV row, as the figure script and oracles read it back.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct CsvRow {
    pub model: String,
    #[serde(rename = "R_wb")]
    pub r_wb: f64,
    #[serde(rename = "R_bm")]
    pub r_bm: f64,
    pub c_w: f64,
    pub c_m: f64,
    pub c_b: f64,
    pub opt_m: usize,
    pub opt_w: u32,
    pub eta: f64,
    pub sum_rate: f64,
    pub n_wavelengths: usize,
    pub cost_total: f64,
    pub feasibility_flag: bool,
}

impl CsvRow {
    pub fn variant(&self) -> Option<TransportVariant> {
        self.model.parse().ok()
    }
}

pub fn read_csv(path: &Path) -> Result<Vec<CsvRow>, CliError> {
    let mut r = csv::Reader::from_path(path).map_err(|e| CliError::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    r.deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub tool: String,
    pub tool_version: String,
    pub seed: u64,
    pub config_hash: String,
    pub numerator_mode: String,
    pub max_bandwidth_mhz: u32,
    pub records: usize,
    pub num_users: usize,
    pub num_antennas: usize,
    pub num_pons: usize,
    pub shaded_region: [f64; 2],
    pub normalization: f64,
    pub reference: ReferenceEcho,
}

/// Reference prices (USD per year) and ratios computed from the config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceEcho {
    pub c_w: f64,
    pub c_m: f64,
    pub c_b: f64,
    #[serde(rename = "R_wb")]
    pub r_wb: f64,
    #[serde(rename = "R_bm")]
    pub r_bm: f64,
}

/// `sweep.csv` → `sweep.meta.json`.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("meta.json")
}

/// Writes via a temporary sibling and renames, so a failed run never
/// leaves a partial file behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let tmp = path.with_extension("partial");
    let result = fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(bytes).and_then(|_| f.sync_all()))
        .and_then(|_| fs::rename(&tmp, path));
    result.map_err(|e| {
        let _ = fs::remove_file(&tmp);
        CliError::io(path, e)
    })
}

pub fn write_sweep(
    path: &Path,
    records: &[SweepRecord],
    meta: &SweepMetadata,
) -> Result<(), CliError> {
    let bytes = csv_bytes(records).map_err(|e| CliError::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    write_atomic(path, &bytes)?;
    let mut json = serde_json::to_string_pretty(meta).expect("metadata serializes");
    json.push('\n');
    if let Err(e) = write_atomic(&sidecar_path(path), json.as_bytes()) {
        let _ = fs::remove_file(path);
        return Err(e);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record() -> SweepRecord {
        SweepRecord {
            model: TransportVariant::SplitPhyShared,
            r_wb: 0.0065,
            r_bm: 0.066,
            c_w: 0.0065,
            c_m: 1.0 / 0.066,
            c_b: 1.0,
            opt_m: 20,
            opt_w: 50,
            eta: 1.23456789012e7,
            sum_rate: 7.2e9,
            n_wavelengths: 10,
            cost_total: 313.3,
            exceeds_pon_capacity: false,
        }
    }

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_float(0.0065), "6.50000000e-3");
        assert_eq!(fmt_float(1.23456789012e7), "1.23456789e7");
        assert_eq!(fmt_float(1.0 / 0.066), "1.51515152e1");
    }

    #[test]
    fn header_and_row_layout() {
        let bytes = csv_bytes(&[record()]).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "model,R_wb,R_bm,c_w,c_m,c_b,opt_m,opt_w,eta,sum_rate,n_wavelengths,cost_total,feasibility_flag"
        );
        assert_eq!(
            lines.next().unwrap(),
            "split-phy-shared,6.50000000e-3,6.60000000e-2,6.50000000e-3,1.51515152e1,1.00000000e0,20,50,1.23456789e7,7.20000000e9,10,3.13300000e2,false"
        );
        assert!(lines.next().is_none());
    }

    #[test]
    fn csv_reads_back_at_nine_digits() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        let recs = vec![
            record(),
            SweepRecord {
                opt_m: 64,
                exceeds_pon_capacity: true,
                ..record()
            },
        ];
        std::fs::write(&path, csv_bytes(&recs).unwrap()).unwrap();
        let rows = read_csv(&path).unwrap();
        assert_eq!(rows.len(), 2);
        for (row, rec) in rows.iter().zip(&recs) {
            assert_eq!(row.variant(), Some(rec.model));
            assert_eq!(
                (row.opt_m, row.opt_w, row.n_wavelengths),
                (rec.opt_m, rec.opt_w, rec.n_wavelengths)
            );
            assert_eq!(row.feasibility_flag, rec.exceeds_pon_capacity);
            for (a, b) in [
                (row.eta, rec.eta),
                (row.c_m, rec.c_m),
                (row.sum_rate, rec.sum_rate),
            ] {
                assert!((a - b).abs() <= 5e-9 * b.abs());
            }
        }
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(
            sidecar_path(Path::new("out/sweep.csv")),
            PathBuf::from("out/sweep.meta.json")
        );
    }
}
