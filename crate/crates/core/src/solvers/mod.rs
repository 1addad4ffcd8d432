//! Baseline solvers and control oracles: exhaustive enumeration, DPLL,
//! WalkSAT, and a uniform random-guess oracle.
//!
//! Every SAT verdict is verified through [`CnfInstance::is_satisfying`]
//! before it is returned; a solver that produced a bogus witness would
//! panic rather than report it. UNSAT is only ever reported by the
//! complete solvers (brute force and DPLL).

mod brute;
mod dpll;
mod random;
mod walksat;

pub use brute::{solve_brute_force, MAX_BRUTE_FORCE_VARS};
pub use dpll::{solve_dpll, solve_dpll_with, Branching};
pub use random::random_oracle;
pub use walksat::{solve_walksat, WalkSatParams};

use std::time::Duration;

use thiserror::Error;

use crate::cnf::{Assignment, CnfInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverStatus {
    Sat,
    Unsat,
    Unknown,
}

/// Search-effort counters. `decisions` counts branch points (or, for brute
/// force, assignments evaluated), `propagations` counts implied
/// assignments, `flips` counts local-search moves.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub decisions: u64,
    pub propagations: u64,
    pub flips: u64,
}

#[derive(Clone, Debug)]
pub struct SolverResult {
    pub status: SolverStatus,
    pub assignment: Option<Assignment>,
    pub stats: SolverStats,
    pub elapsed: Duration,
}

impl SolverResult {
    /// Builds a SAT result, verifying the witness first.
    pub(crate) fn sat_checked(
        instance: &CnfInstance,
        assignment: Assignment,
        stats: SolverStats,
        elapsed: Duration,
    ) -> Self {
        let ok = instance
            .is_satisfying(&assignment)
            .expect("solver produced an assignment of the wrong length");
        assert!(ok, "solver bug: SAT verdict with a non-satisfying witness");
        SolverResult {
            status: SolverStatus::Sat,
            assignment: Some(assignment),
            stats,
            elapsed,
        }
    }

    pub(crate) fn unsat(stats: SolverStats, elapsed: Duration) -> Self {
        SolverResult {
            status: SolverStatus::Unsat,
            assignment: None,
            stats,
            elapsed,
        }
    }

    pub(crate) fn unknown(stats: SolverStats, elapsed: Duration) -> Self {
        SolverResult {
            status: SolverStatus::Unknown,
            assignment: None,
            stats,
            elapsed,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    #[error("brute force enumeration is capped at {max} variables, instance has {n_vars}")]
    TooManyVariables { n_vars: u32, max: u32 },
    #[error("local search requires at least one clause")]
    NoClauses,
    #[error("noise must lie in [0, 1], got {noise}")]
    BadNoise { noise: f64 },
    #[error("flip and try budgets must be at least 1")]
    ZeroBudget,
}
