//! The random-guess control oracle: independent fair bits per variable.
//!
//! On a K-SAT instance each clause is falsified by a uniform assignment
//! with probability 2^-K, so the expected unsatisfied-clause fraction is
//! exactly 2^-K — the bar any "intelligent" oracle has to beat.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cnf::{Assignment, CnfInstance};

/// Draws a uniform assignment for the instance. Deterministic in `seed`.
pub fn random_oracle(instance: &CnfInstance, seed: u64) -> Assignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Assignment::new(
        (0..instance.n_vars())
            .map(|_| rng.random_bool(0.5))
            .collect(),
    )
}
