//! Plain CSV per figure plus a sidecar JSON naming the axes.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::csv::{fmt_f64, write_csv};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlotSidecar {
    pub figure: String,
    pub columns: Vec<String>,
    pub x: String,
    pub y: Vec<String>,
    pub log_x: bool,
    pub log_y: bool,
}

/// Writes `{dir}/{name}.csv` and `{dir}/{name}.json`; returns the CSV path.
pub fn emit_plot_data(dir: &Path, name: &str, sidecar: &PlotSidecar, rows: &[Vec<f64>]) -> Result<PathBuf> {
    if let Some(bad) = rows.iter().find(|r| r.len() != sidecar.columns.len()) {
        return Err(Error::param("plot", format!("row of {} values for {} columns", bad.len(), sidecar.columns.len())));
    }
    let csv_path = dir.join(format!("{name}.csv"));
    let cols: Vec<&str> = sidecar.columns.iter().map(String::as_str).collect();
    let text: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|v| fmt_f64(*v)).collect()).collect();
    write_csv(&csv_path, &format!("plot/{name}"), &cols, &text)?;
    let json_path = dir.join(format!("{name}.json"));
    let json = serde_json::to_string_pretty(sidecar).expect("plain data");
    std::fs::write(&json_path, json).map_err(|e| Error::io(&json_path, e))?;
    Ok(csv_path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sidecar_is_written() {
        let dir = tempfile::tempdir().unwrap();
        let side = PlotSidecar {
            figure: "decay".into(),
            columns: vec!["t".into(), "linf".into()],
            x: "t".into(),
            y: vec!["linf".into()],
            log_x: true,
            log_y: true,
        };
        emit_plot_data(dir.path(), "decay", &side, &[vec![1.0, 2.0]]).unwrap();
        let back: PlotSidecar = serde_json::from_str(&std::fs::read_to_string(dir.path().join("decay.json")).unwrap()).unwrap();
        assert_eq!(back, side);
        assert!(emit_plot_data(dir.path(), "bad", &side, &[vec![1.0]]).is_err());
    }
}
