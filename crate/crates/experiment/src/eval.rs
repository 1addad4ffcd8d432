//! Per-instance verification records.
//!
//! Whatever an oracle returns, the verdict recorded here comes from
//! re-running the polynomial verifier on the returned assignment —
//! `claimed_sat` is what the oracle asserts, `verified_sat` is what the
//! verifier confirms, and the two are deliberately kept side by side.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use satlab_core::{Assignment, CnfError, CnfInstance};

/// Identity of one benchmark instance inside a suite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InstanceId {
    pub k: u32,
    pub n: u32,
    pub alpha: f64,
    pub sample_idx: usize,
    pub seed: Option<u64>,
}

/// What an oracle was observed to do on one instance.
///
/// `Assignment` is an oracle answer that implicitly claims satisfaction
/// (the protocol asks for satisfying assignments); `Solved` is a local
/// solver's verified SAT. `Unsat` only ever comes from complete solvers.
#[derive(Clone, Debug, PartialEq)]
pub enum ObservedOutcome {
    Assignment(Assignment),
    Refusal(String),
    Unparseable(String),
    Solved(Assignment),
    Unsat,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum OutcomeKind {
    Assignment,
    Refusal,
    Unparseable,
    Solved,
    Unsat,
    Unknown,
}

impl std::fmt::Display for OutcomeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OutcomeKind::Assignment => "ASSIGNMENT",
            OutcomeKind::Refusal => "REFUSAL",
            OutcomeKind::Unparseable => "UNPARSEABLE",
            OutcomeKind::Solved => "SOLVED",
            OutcomeKind::Unsat => "UNSAT",
            OutcomeKind::Unknown => "UNKNOWN",
        };
        f.write_str(s)
    }
}

/// One evaluated (instance, oracle outcome) pair. Field order matches the
/// records CSV schema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub k: u32,
    pub n: u32,
    pub alpha: f64,
    pub sample_idx: usize,
    pub seed: Option<u64>,
    pub oracle: String,
    pub outcome: OutcomeKind,
    pub claimed_sat: bool,
    pub verified_sat: bool,
    /// Missing when no assignment exists to count against.
    pub unsat_count: Option<u64>,
    pub m: usize,
    /// unsat_count / m; missing when no assignment exists or m = 0.
    pub h: Option<f64>,
    /// Solver keywords from the exchange's reasoning log, ';'-joined in
    /// exports.
    #[serde(with = "semicolon_list")]
    pub solver_calls: Vec<String>,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("outcome does not fit the instance: {0}")]
    Cnf(#[from] CnfError),
    #[error("cannot aggregate an empty record set")]
    EmptyPoint,
    #[error("aggregation mixes records from (k={k_a}, alpha={alpha_a}) and (k={k_b}, alpha={alpha_b})")]
    MixedPoint {
        k_a: u32,
        alpha_a: f64,
        k_b: u32,
        alpha_b: f64,
    },
}

/// Verifies one outcome against its instance and fills the record.
///
/// For any present assignment the verifier recomputes the unsatisfied
/// count; refusals, unparseable replies, and UNKNOWN verdicts yield
/// `verified_sat = false` with missing `unsat_count`/`h`.
pub fn evaluate_instance(
    id: &InstanceId,
    instance: &CnfInstance,
    oracle: &str,
    outcome: ObservedOutcome,
    solver_calls: Vec<String>,
) -> Result<EvalRecord, EvalError> {
    let m = instance.num_clauses();
    let (kind, claimed, assignment) = match outcome {
        ObservedOutcome::Assignment(a) => (OutcomeKind::Assignment, true, Some(a)),
        ObservedOutcome::Solved(a) => (OutcomeKind::Solved, true, Some(a)),
        ObservedOutcome::Refusal(_) => (OutcomeKind::Refusal, false, None),
        ObservedOutcome::Unparseable(_) => (OutcomeKind::Unparseable, false, None),
        ObservedOutcome::Unsat => (OutcomeKind::Unsat, false, None),
        ObservedOutcome::Unknown => (OutcomeKind::Unknown, false, None),
    };

    let (verified, unsat_count, h) = match &assignment {
        Some(a) => {
            let unsat = instance.count_unsatisfied(a)?;
            let h = if m > 0 { Some(unsat as f64 / m as f64) } else { None };
            (unsat == 0, Some(unsat as u64), h)
        }
        None => (false, None, None),
    };

    Ok(EvalRecord {
        k: id.k,
        n: id.n,
        alpha: id.alpha,
        sample_idx: id.sample_idx,
        seed: id.seed,
        oracle: oracle.to_string(),
        outcome: kind,
        claimed_sat: claimed,
        verified_sat: verified,
        unsat_count,
        m,
        h,
        solver_calls,
    })
}

/// `Vec<String>` ⇄ `"a;b;c"` for flat CSV/JSON cells.
mod semicolon_list {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &[String], serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.join(";"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<String>, D::Error> {
        let raw = String::deserialize(deserializer)?;
        Ok(raw
            .split(';')
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect())
    }
}
