//! Exhaustive enumeration over all 2^N assignments, in lexicographic
//! order of the bitstring. Complete, so it serves as ground truth for the
//! other solvers at desk scale.

use std::time::Instant;

use crate::cnf::{Assignment, CnfInstance};
use crate::solvers::{SolverError, SolverResult, SolverStats};

/// Enumeration guard: 2^24 ≈ 16M assignments.
pub const MAX_BRUTE_FORCE_VARS: u32 = 24;

/// Returns the lexicographically first satisfying assignment, or UNSAT.
/// Never returns UNKNOWN. Errors when N exceeds [`MAX_BRUTE_FORCE_VARS`].
pub fn solve_brute_force(instance: &CnfInstance) -> Result<SolverResult, SolverError> {
    let n = instance.n_vars();
    if n > MAX_BRUTE_FORCE_VARS {
        return Err(SolverError::TooManyVariables {
            n_vars: n,
            max: MAX_BRUTE_FORCE_VARS,
        });
    }
    let started = Instant::now();
    let mut stats = SolverStats::default();

    // counter bit (n - var) holds the value of variable `var`, so counting
    // up walks bitstrings in lexicographic order.
    for counter in 0..(1u64 << n) {
        stats.decisions += 1;
        if satisfies(instance, counter, n) {
            let bits = (0..n).map(|i| (counter >> (n - 1 - i)) & 1 == 1).collect();
            return Ok(SolverResult::sat_checked(
                instance,
                Assignment::new(bits),
                stats,
                started.elapsed(),
            ));
        }
    }
    Ok(SolverResult::unsat(stats, started.elapsed()))
}

fn satisfies(instance: &CnfInstance, counter: u64, n: u32) -> bool {
    instance.clauses().iter().all(|clause| {
        clause.literals().iter().any(|lit| {
            let value = (counter >> (n - lit.var())) & 1 == 1;
            lit.evaluate(value)
        })
    })
}
