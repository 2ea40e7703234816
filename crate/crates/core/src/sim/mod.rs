//! Analytic cycle/energy model of the PCM accelerator running a solver
//! trace: closed-form tile costs plus a seven-stage transfer model.

mod calibrate;
mod config;
mod cost;
mod dataflow;
mod report;

pub use calibrate::{default_update_probability, measure_update_probability};
pub use config::DeviceConfig;
pub use cost::{
    bit_serial_cost, comparator_tree_cycles, permutation_unit_cost, simulate_fw_tile, simulate_mp_tile,
    transfer_seconds, BitSerialOp, TileCost, Writes,
};
pub use dataflow::{simulate_dataflow, WriteMode};
pub use report::{
    BlockBreakdown, BlockCost, PhaseReport, ReportHeader, SimReport, StageReport, Totals, Workload,
    REPORT_SCHEMA_VERSION,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid device config: {0}")]
    Config(String),
    #[error("{what} of {size} exceeds the unit capacity {limit}")]
    Capacity { what: &'static str, size: usize, limit: usize },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("trace does not fit the device: {0}")]
    Consistency(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("config parse: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("config parse: {0}")]
    Json(#[from] serde_json::Error),
}
