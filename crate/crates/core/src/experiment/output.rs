//! CSV row types for the anytime trace, the run summary and the pooled
//! hypervolume table.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ANYTIME_FILE: &str = "anytime.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const POOLED_FILE: &str = "pooled_hv.csv";
pub const REPORT_FILE: &str = "report.csv";
pub const SWEEP_FILE: &str = "sweep.csv";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnytimeRow {
    pub problem: String,
    pub strategy: String,
    pub ps: Option<f64>,
    pub rep: usize,
    pub generation: usize,
    pub evaluations: usize,
    pub hv: f64,
    pub igd_scaled: f64,
    pub igd_raw: f64,
    pub ndom: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub problem: String,
    pub strategy: String,
    pub ps: Option<f64>,
    pub rep: usize,
    pub evaluations: usize,
    pub hv: f64,
    pub igd_scaled: f64,
    pub igd_raw: f64,
    pub ndom: f64,
    pub wall_seconds: f64,
}

/// Final hypervolume in a frame spanning every initial and final point of
/// all runs on the same problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PooledRow {
    pub problem: String,
    pub strategy: String,
    pub ps: Option<f64>,
    pub rep: usize,
    pub hv_pooled: f64,
}

/// Label of a strategy cell: `full`, `ri` or `ps=<level>`.
pub fn cell_label(strategy: &str, ps: Option<f64>) -> String {
    match (strategy, ps) {
        ("ps", Some(ps)) => format!("ps={ps}"),
        (other, _) => other.to_string(),
    }
}

pub(crate) fn csv_error(path: &Path) -> impl FnOnce(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

pub fn write_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).map_err(csv_error(path))?;
    for row in rows {
        writer.serialize(row).map_err(csv_error(path))?;
    }
    writer.flush().map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_rows<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let mut reader = csv::Reader::from_path(path).map_err(csv_error(path))?;
    reader
        .deserialize()
        .collect::<std::result::Result<Vec<T>, _>>()
        .map_err(csv_error(path))
}
