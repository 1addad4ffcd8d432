//! Result persistence: `records.csv`, `points.csv`, and a `results.json`
//! mirror. Exports are byte-stable for identical inputs, and imports
//! reject files whose column order drifts from the schema.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::aggregate::SweepPoint;
use crate::eval::EvalRecord;

pub const RECORDS_CSV_HEADER: [&str; 13] = [
    "k",
    "n",
    "alpha",
    "sample_idx",
    "seed",
    "oracle",
    "outcome",
    "claimed_sat",
    "verified_sat",
    "unsat_count",
    "m",
    "h",
    "solver_calls",
];

pub const POINTS_CSV_HEADER: [&str; 11] = [
    "k",
    "n",
    "alpha",
    "n_samples",
    "p_sat_mean",
    "p_sat_stderr",
    "h_mean",
    "h_stderr",
    "random_baseline",
    "refusal_count",
    "alpha_s",
];

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("nothing to export")]
    Empty,
    #[error("I/O error at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path} has header {found:?}, expected {expected:?}")]
    HeaderMismatch {
        path: String,
        expected: Vec<String>,
        found: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExportPaths {
    pub records_csv: PathBuf,
    pub points_csv: PathBuf,
    pub results_json: PathBuf,
}

/// The JSON mirror document.
#[derive(Serialize, Deserialize)]
struct ResultsDocument {
    meta: ResultsMeta,
    records: Vec<EvalRecord>,
    points: Vec<SweepPoint>,
}

#[derive(Serialize, Deserialize)]
struct ResultsMeta {
    claimed_definition: String,
    h_definition: String,
}

impl Default for ResultsMeta {
    fn default() -> Self {
        ResultsMeta {
            claimed_definition:
                "claimed_sat means the oracle returned a parseable assignment; the protocol \
                 requests satisfying assignments, so returning one asserts satisfaction"
                    .to_string(),
            h_definition:
                "h is unsatisfied clauses / m for the returned assignment; missing when no \
                 assignment exists or m = 0"
                    .to_string(),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ExportError + '_ {
    move |source| ExportError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Writes `records.csv`, `points.csv`, and `results.json` under `out_dir`.
pub fn export_results(
    records: &[EvalRecord],
    points: &[SweepPoint],
    out_dir: &Path,
) -> Result<ExportPaths, ExportError> {
    if records.is_empty() && points.is_empty() {
        return Err(ExportError::Empty);
    }
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;

    let records_csv = out_dir.join("records.csv");
    let mut w = csv::Writer::from_path(&records_csv)?;
    for record in records {
        w.serialize(record)?;
    }
    w.flush().map_err(io_err(&records_csv))?;

    let points_csv = out_dir.join("points.csv");
    let mut w = csv::Writer::from_path(&points_csv)?;
    for point in points {
        w.serialize(point)?;
    }
    w.flush().map_err(io_err(&points_csv))?;

    let results_json = out_dir.join("results.json");
    let document = ResultsDocument {
        meta: ResultsMeta::default(),
        records: records.to_vec(),
        points: points.to_vec(),
    };
    fs::write(&results_json, serde_json::to_string_pretty(&document)?)
        .map_err(io_err(&results_json))?;

    Ok(ExportPaths {
        records_csv,
        points_csv,
        results_json,
    })
}

fn check_header(path: &Path, reader: &mut csv::Reader<fs::File>, expected: &[&str]) -> Result<(), ExportError> {
    let found: Vec<String> = reader
        .headers()?
        .iter()
        .map(str::to_string)
        .collect();
    if found != expected {
        return Err(ExportError::HeaderMismatch {
            path: path.display().to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        });
    }
    Ok(())
}

pub fn import_records_csv(path: &Path) -> Result<Vec<EvalRecord>, ExportError> {
    let mut reader = csv::Reader::from_path(path)?;
    check_header(path, &mut reader, &RECORDS_CSV_HEADER)?;
    let mut records = Vec::new();
    for row in reader.deserialize() {
        records.push(row?);
    }
    Ok(records)
}

pub fn import_points_csv(path: &Path) -> Result<Vec<SweepPoint>, ExportError> {
    let mut reader = csv::Reader::from_path(path)?;
    check_header(path, &mut reader, &POINTS_CSV_HEADER)?;
    let mut points = Vec::new();
    for row in reader.deserialize() {
        points.push(row?);
    }
    Ok(points)
}

pub fn import_results_json(path: &Path) -> Result<(Vec<EvalRecord>, Vec<SweepPoint>), ExportError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let document: ResultsDocument = serde_json::from_str(&text)?;
    Ok((document.records, document.points))
}
