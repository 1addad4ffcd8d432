//! WalkSAT stochastic local search.
//!
//! Each try starts from a fresh uniform assignment. Every flip picks an
//! unsatisfied clause uniformly at random; with probability `noise` a
//! random variable of that clause is flipped, otherwise the variable that
//! breaks the fewest currently-satisfied clauses (ties broken uniformly).
//! Incomplete: returns SAT (verified) or UNKNOWN, never UNSAT.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cnf::{Assignment, CnfInstance};
use crate::solvers::{SolverError, SolverResult, SolverStats};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WalkSatParams {
    noise: f64,
    max_flips: u64,
    max_tries: u32,
    seed: u64,
}

impl WalkSatParams {
    pub fn new(noise: f64, max_flips: u64, max_tries: u32, seed: u64) -> Result<Self, SolverError> {
        if !(0.0..=1.0).contains(&noise) {
            return Err(SolverError::BadNoise { noise });
        }
        if max_flips == 0 || max_tries == 0 {
            return Err(SolverError::ZeroBudget);
        }
        Ok(WalkSatParams {
            noise,
            max_flips,
            max_tries,
            seed,
        })
    }

    /// Conventional defaults: noise 0.5, 100·N·⌈α⌉ flips per try, 10 tries.
    pub fn defaults_for(instance: &CnfInstance, seed: u64) -> Self {
        let n = instance.n_vars() as u64;
        let m = instance.num_clauses() as u64;
        let alpha_ceil = if n == 0 { 1 } else { m.div_ceil(n).max(1) };
        WalkSatParams {
            noise: 0.5,
            max_flips: (100 * n * alpha_ceil).max(1),
            max_tries: 10,
            seed,
        }
    }

    pub fn noise(&self) -> f64 {
        self.noise
    }

    pub fn max_flips(&self) -> u64 {
        self.max_flips
    }

    pub fn max_tries(&self) -> u32 {
        self.max_tries
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

pub fn solve_walksat(
    instance: &CnfInstance,
    params: &WalkSatParams,
) -> Result<SolverResult, SolverError> {
    if instance.num_clauses() == 0 {
        return Err(SolverError::NoClauses);
    }
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut state = State::new(instance);
    let mut stats = SolverStats::default();

    for _ in 0..params.max_tries {
        state.randomize(&mut rng);
        for _ in 0..params.max_flips {
            if state.unsat.is_empty() {
                break;
            }
            let ci = state.unsat[rng.random_range(0..state.unsat.len())];
            let var = if rng.random_bool(params.noise) {
                let lits = &state.clauses[ci];
                lits[rng.random_range(0..lits.len())].0
            } else {
                state.min_break_var(ci, &mut rng)
            };
            state.flip(var);
            stats.flips += 1;
        }
        if state.unsat.is_empty() {
            let assignment = Assignment::new(state.values.clone());
            return Ok(SolverResult::sat_checked(
                instance,
                assignment,
                stats,
                started.elapsed(),
            ));
        }
    }
    Ok(SolverResult::unknown(stats, started.elapsed()))
}

/// Per-try search state: true-literal counts per clause and the set of
/// unsatisfied clauses with O(1) insert/remove. Break counts treat each
/// clause as having distinct variables (true for generated instances);
/// duplicate literals only make the heuristic less informed, never wrong.
struct State {
    clauses: Vec<Vec<(usize, bool)>>,
    occ: Vec<Vec<(usize, bool)>>,
    values: Vec<bool>,
    n_true: Vec<u32>,
    unsat: Vec<usize>,
    unsat_pos: Vec<usize>,
}

const NOT_IN_UNSAT: usize = usize::MAX;

impl State {
    fn new(instance: &CnfInstance) -> Self {
        let n = instance.n_vars() as usize;
        let m = instance.num_clauses();
        let mut clauses = Vec::with_capacity(m);
        let mut occ = vec![Vec::new(); n];
        for (ci, clause) in instance.clauses().iter().enumerate() {
            let lits: Vec<(usize, bool)> = clause
                .literals()
                .iter()
                .map(|l| ((l.var() - 1) as usize, l.is_negated()))
                .collect();
            for &(v, neg) in &lits {
                occ[v].push((ci, neg));
            }
            clauses.push(lits);
        }
        State {
            clauses,
            occ,
            values: vec![false; n],
            n_true: vec![0; m],
            unsat: Vec::new(),
            unsat_pos: vec![NOT_IN_UNSAT; m],
        }
    }

    fn randomize(&mut self, rng: &mut ChaCha8Rng) {
        for v in self.values.iter_mut() {
            *v = rng.random_bool(0.5);
        }
        self.unsat.clear();
        self.unsat_pos.fill(NOT_IN_UNSAT);
        for (ci, lits) in self.clauses.iter().enumerate() {
            let count = lits
                .iter()
                .filter(|&&(v, neg)| self.values[v] != neg)
                .count() as u32;
            self.n_true[ci] = count;
            if count == 0 {
                self.unsat_pos[ci] = self.unsat.len();
                self.unsat.push(ci);
            }
        }
    }

    /// Number of clauses kept satisfied solely by `var`'s current value.
    fn break_count(&self, var: usize) -> u32 {
        self.occ[var]
            .iter()
            .filter(|&&(ci, neg)| self.n_true[ci] == 1 && self.values[var] != neg)
            .count() as u32
    }

    fn min_break_var(&self, ci: usize, rng: &mut ChaCha8Rng) -> usize {
        let lits = &self.clauses[ci];
        let mut best = u32::MAX;
        let mut candidates: Vec<usize> = Vec::with_capacity(lits.len());
        for &(v, _) in lits {
            let b = self.break_count(v);
            if b < best {
                best = b;
                candidates.clear();
                candidates.push(v);
            } else if b == best {
                candidates.push(v);
            }
        }
        candidates[rng.random_range(0..candidates.len())]
    }

    fn flip(&mut self, var: usize) {
        let new_value = !self.values[var];
        self.values[var] = new_value;
        for oi in 0..self.occ[var].len() {
            let (ci, neg) = self.occ[var][oi];
            if new_value != neg {
                if self.n_true[ci] == 0 {
                    self.remove_unsat(ci);
                }
                self.n_true[ci] += 1;
            } else {
                self.n_true[ci] -= 1;
                if self.n_true[ci] == 0 {
                    self.push_unsat(ci);
                }
            }
        }
    }

    fn push_unsat(&mut self, ci: usize) {
        self.unsat_pos[ci] = self.unsat.len();
        self.unsat.push(ci);
    }

    fn remove_unsat(&mut self, ci: usize) {
        let pos = self.unsat_pos[ci];
        let last = *self.unsat.last().expect("clause is tracked as unsat");
        self.unsat[pos] = last;
        self.unsat_pos[last] = pos;
        self.unsat.pop();
        self.unsat_pos[ci] = NOT_IN_UNSAT;
    }
}
