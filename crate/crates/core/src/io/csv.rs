//! CSV tables with a schema comment line.
//!
//! Every file starts with `# schema: <name> v<version>`, followed by a
//! header row. Floats are written with 17 significant digits so values
//! round-trip exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiments::{DecayReport, LifespanReport};
use crate::integrator::Trajectory;

pub const SCHEMA_VERSION: u32 = 1;

pub const TRAJECTORY_COLUMNS: [&str; 10] = [
    "t", "hs_norm", "vsmu_norm", "linf_eta", "linf_v", "p_of_t", "h_of_t", "h_min", "mass", "energy",
];
pub const SWEEP_COLUMNS: [&str; 6] = ["eps", "mu", "t_double", "termination", "excluded", "fit_group"];
pub const DECAY_COLUMNS: [&str; 3] = ["t", "linf", "bound_ratio"];

/// Lossless decimal form of a float.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes `# schema: {schema} v1`, the header and the rows.
pub fn write_csv(path: &Path, schema: &str, columns: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    writeln!(out, "# schema: {schema} v{SCHEMA_VERSION}").map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(out);
    let fail = |e: csv::Error| Error::Format {
        path: path.to_path_buf(),
        reason: e.to_string(),
    };
    w.write_record(columns).map_err(fail)?;
    for row in rows {
        w.write_record(row).map_err(fail)?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CsvTable {
    pub schema: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    /// Parses column `name` as floats.
    pub fn column_f64(&self, name: &str) -> Result<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name).ok_or_else(|| Error::Format {
            path: Default::default(),
            reason: format!("no column `{name}`"),
        })?;
        self.rows
            .iter()
            .map(|r| {
                r[j].parse::<f64>().map_err(|e| Error::Format {
                    path: Default::default(),
                    reason: format!("column `{name}`: {e}"),
                })
            })
            .collect()
    }
}

pub fn read_csv(path: &Path) -> Result<CsvTable> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = BufReader::new(file);
    let mut first = String::new();
    reader.read_line(&mut first).map_err(|e| Error::io(path, e))?;
    let schema = first
        .trim()
        .strip_prefix("# schema: ")
        .ok_or_else(|| Error::Format {
            path: path.to_path_buf(),
            reason: "missing schema line".into(),
        })?
        .to_string();
    let mut r = csv::Reader::from_reader(reader);
    let fail = |e: csv::Error| Error::Format {
        path: path.to_path_buf(),
        reason: e.to_string(),
    };
    let columns = r.headers().map_err(fail)?.iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|x| x.iter().map(str::to_string).collect()).map_err(fail))
        .collect::<Result<_>>()?;
    Ok(CsvTable { schema, columns, rows })
}

pub fn write_trajectory_csv(path: &Path, traj: &Trajectory) -> Result<()> {
    let rows: Vec<Vec<String>> = traj
        .times
        .iter()
        .zip(&traj.records)
        .map(|(t, r)| {
            [*t, r.hs, r.vsmu, r.linf_eta, r.linf_v, r.p_of_t, r.h_of_t, r.h_min, r.mass, r.energy]
                .iter()
                .map(|v| fmt_f64(*v))
                .collect()
        })
        .collect();
    write_csv(path, "trajectory", &TRAJECTORY_COLUMNS, &rows)
}

/// One row per sweep point; `t_double` is empty when the run never doubled.
pub fn write_sweep_csv(path: &Path, report: &LifespanReport) -> Result<()> {
    let rows: Vec<Vec<String>> = report
        .points
        .iter()
        .map(|p| {
            vec![
                fmt_f64(p.eps),
                fmt_f64(p.mu),
                p.t_double.map(fmt_f64).unwrap_or_default(),
                p.termination.label().to_string(),
                p.excluded.to_string(),
                format!("mu={}", p.mu),
            ]
        })
        .collect();
    write_csv(path, "sweep", &SWEEP_COLUMNS, &rows)
}

pub fn write_decay_csv(path: &Path, report: &DecayReport) -> Result<()> {
    let rows: Vec<Vec<String>> = report
        .samples
        .iter()
        .map(|s| vec![fmt_f64(s.t), fmt_f64(s.linf), fmt_f64(s.bound_ratio)])
        .collect();
    write_csv(path, "decay", &DECAY_COLUMNS, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE, f64::MAX] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert!(fmt_f64(f64::NAN).parse::<f64>().unwrap().is_nan());
    }

    #[test]
    fn header_only_table() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.csv");
        write_csv(&path, "trajectory", &TRAJECTORY_COLUMNS, &[]).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(text.lines().next().unwrap(), "# schema: trajectory v1");
        let t = read_csv(&path).unwrap();
        assert_eq!(t.columns.len(), 10);
        assert!(t.rows.is_empty());
    }

    #[test]
    fn table_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let rows = vec![vec![fmt_f64(0.1), fmt_f64(2.0), fmt_f64(1e-17)]];
        write_csv(&path, "decay", &DECAY_COLUMNS, &rows).unwrap();
        let t = read_csv(&path).unwrap();
        assert_eq!(t.schema, "decay v1");
        assert_eq!(t.column_f64("linf").unwrap(), vec![2.0]);
        assert_eq!(t.column_f64("bound_ratio").unwrap(), vec![1e-17]);
    }
}
