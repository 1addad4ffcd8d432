//! Random K-SAT laboratory core: CNF data model, DIMACS I/O, seeded
//! instance generation, and baseline solvers.
//!
//! Everything here is deterministic: instances are pure functions of their
//! generator parameters, solvers take explicit seeds and budgets, and all
//! values are immutable after construction so they can be shared freely
//! across threads.

pub mod cnf;
pub mod dimacs;
pub mod generator;
pub mod solvers;

pub use cnf::{Assignment, Clause, CnfError, CnfInstance, Literal};
pub use dimacs::{parse_dimacs, serialize_dimacs, DimacsError};
pub use generator::{
    alpha_range, derive_seed, generate_instance, generate_sweep_suite, format_alpha,
    load_suite, write_suite, GeneratorError, GeneratorParams, SuiteLoadError, SweepSuite,
};
pub use solvers::{
    random_oracle, solve_brute_force, solve_dpll, solve_dpll_with, solve_walksat, Branching,
    SolverError, SolverResult, SolverStats, SolverStatus, WalkSatParams, MAX_BRUTE_FORCE_VARS,
};
