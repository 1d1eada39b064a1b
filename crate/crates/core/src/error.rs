use alloc::boxed::Box;
use core::fmt;

use crate::transport::TransportVariant;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    NoUsers,
    TooFewAntennas {
        users: usize,
        antennas: usize,
    },
    NonSquareAntennaCount(usize),
    InvalidParameter(&'static str),
    EmptyAntennaSet,
    IndexOutOfRange {
        index: usize,
        len: usize,
    },
    AntennaCountOutOfRange {
        m: usize,
        min: usize,
        max: usize,
    },
    InvalidBandwidth(u32),
    NonPositiveCost,
    EmptyGrid,
    EmptySweep(&'static str),
    SweepPoint {
        model: TransportVariant,
        r_wb: f64,
        r_bm: f64,
        source: Box<Error>,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NoUsers => write!(f, "scenario needs at least one user"),
            Error::TooFewAntennas { users, antennas } => write!(
                f,
                "number of antennas ({antennas}) must be at least the number of users ({users})"
            ),
            Error::NonSquareAntennaCount(m) => {
                write!(
                    f,
                    "grid placement needs a perfect-square antenna count, got {m}"
                )
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::EmptyAntennaSet => write!(f, "antenna set is empty"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range (len {len})")
            }
            Error::AntennaCountOutOfRange { m, min, max } => {
                write!(f, "antenna count {m} outside [{min}, {max}]")
            }
            Error::InvalidBandwidth(w) => {
                write!(f, "bandwidth {w} MHz is not a positive multiple of 5 MHz")
            }
            Error::NonPositiveCost => write!(f, "costs must be strictly positive"),
            Error::EmptyGrid => write!(f, "search grid is empty"),
            Error::EmptySweep(what) => {
                write!(f, "sweep {what} must be non-empty and strictly increasing")
            }
            Error::SweepPoint {
                model,
                r_wb,
                r_bm,
                source,
            } => write!(
                f,
                "sweep point (model={}, R_wb={r_wb}, R_bm={r_bm}) failed: {source}",
                model.name()
            ),
        }
    }
}

impl core::error::Error for Error {}
