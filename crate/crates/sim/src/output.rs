use std::io::Write;

use serde::Serialize;

use crate::error::SimError;

/// One line of the long-format results table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub method: String,
    /// Empty for the complexity sweep.
    pub snr_db: Option<f64>,
    pub metric: String,
    /// `mean` / `median` for Monte Carlo rows, `N=<size>` for complexity rows.
    pub stat: String,
    pub value: f64,
    pub n_trials: usize,
    pub config_hash: String,
}

/// Writes the header and all rows with LF line endings.
pub fn write_csv<W: Write>(out: W, rows: &[Row]) -> Result<(), SimError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    if rows.is_empty() {
        w.write_record(["method", "snr_db", "metric", "stat", "value", "n_trials", "config_hash"])?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
