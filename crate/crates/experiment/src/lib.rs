//! Orchestration for K-SAT α sweeps.
//!
//! An oracle (local solver, live model, or replayed transcripts) is run
//! over a benchmark suite; every returned assignment is re-verified, and
//! per-α points aggregate three observables: the verified satisfying
//! fraction P(SAT), the unsatisfied-clause fraction H against the 2^-K
//! random-guess baseline, and the count of exchanges whose reasoning logs
//! invoke an external SAT solver. Results persist as CSV with a JSON
//! mirror, plus self-contained SVG plots.

pub mod aggregate;
pub mod eval;
pub mod export;
pub mod plot;
pub mod sweep;
pub mod thresholds;

pub use aggregate::{aggregate_point, psat_crossing, SweepPoint};
pub use eval::{evaluate_instance, EvalError, EvalRecord, InstanceId, ObservedOutcome, OutcomeKind};
pub use export::{
    export_results, import_points_csv, import_records_csv, import_results_json, ExportError,
    ExportPaths, POINTS_CSV_HEADER, RECORDS_CSV_HEADER,
};
pub use plot::{claimed_series, emit_plots, h_series, verified_series, PlotInputs, PlotSeries, SeriesPoint};
pub use sweep::{
    run_sweep, solver_call_histogram, transcript_file_name, HistogramBin, OracleSelector,
    SweepConfig, SweepError, SweepErrorKind, SweepRun, SweepTranscript,
};
pub use thresholds::ThresholdTable;
