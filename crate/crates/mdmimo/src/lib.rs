//! Configuration, file formats and the command line for the distributed
//! MIMO cost-efficiency simulator. The model itself lives in `mdmimo-core`.

pub mod cli;
pub mod config;
pub mod dump;
pub mod error;
pub mod output;
pub mod report;
pub mod sweep;

pub use config::RunConfig;
pub use error::CliError;

pub const TOOL_NAME: &str = env!("CARGO_PKG_NAME");
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
