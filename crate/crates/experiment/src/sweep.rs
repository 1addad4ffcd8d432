//! α-sweep execution over a benchmark suite.
//!
//! Local oracles evaluate every instance (optionally in parallel — records
//! are keyed and re-sorted, so the result is order-independent). Model and
//! replay oracles run batch by batch in ascending α and honor the
//! early-stop rule: once every instance at a point is refused, the sweep
//! marks that point and does not ascend further. Whatever was computed
//! before an error survives in the error's `partial` run.

use std::path::PathBuf;

use rayon::prelude::*;
use thiserror::Error;

use satlab_core::{
    derive_seed, format_alpha, random_oracle, solve_dpll_with, solve_walksat, Branching,
    CnfInstance, SolverError, SolverStatus, SweepSuite, WalkSatParams,
};
use satlab_oracle::{
    detect_solver_call, parse_response, replay_transcript, ModelClient, ModelConfig,
    OracleOutcome, QueryError, Transcript, TranscriptError,
};

use crate::aggregate::{aggregate_point, SweepPoint};
use crate::eval::{evaluate_instance, EvalError, EvalRecord, InstanceId, ObservedOutcome};
use crate::thresholds::ThresholdTable;

/// Which oracle a sweep drives.
#[derive(Clone, Debug)]
pub enum OracleSelector {
    Dpll {
        budget: u64,
        branching: Branching,
    },
    WalkSat {
        noise: f64,
        /// `None` uses the per-instance default budget 100·N·⌈α⌉.
        max_flips: Option<u64>,
        max_tries: u32,
        seed: u64,
    },
    Random {
        seed: u64,
    },
    Model {
        config: ModelConfig,
    },
    Replay {
        dir: PathBuf,
        config: ModelConfig,
    },
}

impl OracleSelector {
    pub fn dpll() -> Self {
        OracleSelector::Dpll {
            budget: u64::MAX,
            branching: Branching::Moms,
        }
    }

    /// Name recorded in the `oracle` column.
    pub fn name(&self) -> String {
        match self {
            OracleSelector::Dpll { .. } => "dpll".to_string(),
            OracleSelector::WalkSat { .. } => "walksat".to_string(),
            OracleSelector::Random { .. } => "random".to_string(),
            OracleSelector::Model { config } => format!("model:{}", config.model),
            OracleSelector::Replay { .. } => "replay".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Worker threads for local oracles; model sweeps are sequential.
    pub jobs: usize,
    pub thresholds: ThresholdTable,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            jobs: 1,
            thresholds: ThresholdTable::default(),
        }
    }
}

/// One exchange of a model/replay sweep, tagged with its grid position.
#[derive(Clone, Debug)]
pub struct SweepTranscript {
    pub alpha: f64,
    pub batch_index: usize,
    pub transcript: Transcript,
}

#[derive(Clone, Debug, Default)]
pub struct SweepRun {
    pub points: Vec<SweepPoint>,
    pub records: Vec<EvalRecord>,
    pub transcripts: Vec<SweepTranscript>,
    /// Set when the all-refusal early-stop rule fired, to the α it fired at.
    pub stopped_at_alpha: Option<f64>,
}

#[derive(Debug, Error)]
pub enum SweepErrorKind {
    #[error("no threshold entry for K={0}; extend the threshold table")]
    MissingThreshold(u32),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("model query failed: {0}")]
    Query(String),
    #[error("missing replay transcript {0}")]
    MissingTranscript(String),
    #[error(transparent)]
    Transcript(#[from] TranscriptError),
}

/// A failed sweep still carries everything evaluated so far; callers
/// persist `partial` before reporting the error.
#[derive(Debug, Error)]
#[error("{kind}")]
pub struct SweepError {
    pub kind: SweepErrorKind,
    pub partial: SweepRun,
}

/// Canonical transcript file name inside a sweep output directory:
/// `k<K>_alpha<value>_batch<index>.json`.
pub fn transcript_file_name(k: u32, alpha: f64, batch_index: usize) -> String {
    format!("k{}_alpha{}_batch{}.json", k, format_alpha(alpha), batch_index)
}

/// Evaluates the whole suite with the chosen oracle and aggregates one
/// [`SweepPoint`] per α.
pub fn run_sweep(
    suite: &SweepSuite,
    oracle: &OracleSelector,
    config: &SweepConfig,
) -> Result<SweepRun, SweepError> {
    let mut run = SweepRun::default();
    if config.thresholds.alpha_s(suite.k()).is_none() {
        return Err(SweepError {
            kind: SweepErrorKind::MissingThreshold(suite.k()),
            partial: run,
        });
    }
    let outcome = match oracle {
        OracleSelector::Model { .. } | OracleSelector::Replay { .. } => {
            drive_batched(suite, oracle, config, &mut run)
        }
        _ => drive_local(suite, oracle, config, &mut run),
    };
    match outcome {
        Ok(()) => Ok(run),
        Err(kind) => Err(SweepError { kind, partial: run }),
    }
}

fn instance_id(suite: &SweepSuite, alpha_index: usize, sample_index: usize) -> InstanceId {
    let instance = suite.instance(alpha_index, sample_index);
    InstanceId {
        k: suite.k(),
        n: suite.n_vars(),
        alpha: suite.alpha_grid()[alpha_index],
        sample_idx: sample_index,
        seed: instance.seed(),
    }
}

fn local_outcome(
    oracle: &OracleSelector,
    instance: &CnfInstance,
    alpha_index: usize,
    sample_index: usize,
) -> Result<ObservedOutcome, SweepErrorKind> {
    Ok(match oracle {
        OracleSelector::Dpll { budget, branching } => {
            let result = solve_dpll_with(instance, *budget, *branching);
            match result.status {
                SolverStatus::Sat => ObservedOutcome::Solved(result.assignment.expect("SAT carries witness")),
                SolverStatus::Unsat => ObservedOutcome::Unsat,
                SolverStatus::Unknown => ObservedOutcome::Unknown,
            }
        }
        OracleSelector::WalkSat {
            noise,
            max_flips,
            max_tries,
            seed,
        } => {
            let instance_seed = derive_seed(*seed, alpha_index as u64, sample_index as u64);
            let defaults = WalkSatParams::defaults_for(instance, instance_seed);
            let params = WalkSatParams::new(
                *noise,
                max_flips.unwrap_or(defaults.max_flips()),
                *max_tries,
                instance_seed,
            )?;
            let result = solve_walksat(instance, &params)?;
            match result.status {
                SolverStatus::Sat => ObservedOutcome::Solved(result.assignment.expect("SAT carries witness")),
                _ => ObservedOutcome::Unknown,
            }
        }
        OracleSelector::Random { seed } => {
            let instance_seed = derive_seed(*seed, alpha_index as u64, sample_index as u64);
            ObservedOutcome::Assignment(random_oracle(instance, instance_seed))
        }
        _ => unreachable!("batched oracles take the other path"),
    })
}

fn drive_local(
    suite: &SweepSuite,
    oracle: &OracleSelector,
    config: &SweepConfig,
    run: &mut SweepRun,
) -> Result<(), SweepErrorKind> {
    let name = oracle.name();
    let tasks: Vec<(usize, usize)> = (0..suite.alpha_grid().len())
        .flat_map(|ai| (0..suite.samples_per_alpha()).map(move |si| (ai, si)))
        .collect();

    let evaluate = |&(ai, si): &(usize, usize)| -> Result<EvalRecord, SweepErrorKind> {
        let instance = suite.instance(ai, si);
        let outcome = local_outcome(oracle, instance, ai, si)?;
        evaluate_instance(&instance_id(suite, ai, si), instance, &name, outcome, vec![])
            .map_err(SweepErrorKind::from)
    };

    let mut records: Vec<EvalRecord> = if config.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .expect("thread pool construction");
        pool.install(|| tasks.par_iter().map(evaluate).collect::<Result<Vec<_>, _>>())?
    } else {
        tasks.iter().map(evaluate).collect::<Result<Vec<_>, _>>()?
    };
    records.sort_by(|a, b| a.alpha.total_cmp(&b.alpha).then(a.sample_idx.cmp(&b.sample_idx)));

    for &alpha in suite.alpha_grid() {
        let point_records: Vec<EvalRecord> =
            records.iter().filter(|r| r.alpha == alpha).cloned().collect();
        let point = aggregate_point(&point_records, &config.thresholds)?;
        run.records.extend(point_records);
        run.points.push(point);
    }
    Ok(())
}

fn drive_batched(
    suite: &SweepSuite,
    oracle: &OracleSelector,
    config: &SweepConfig,
    run: &mut SweepRun,
) -> Result<(), SweepErrorKind> {
    let name = oracle.name();
    let (model_config, replay_dir) = match oracle {
        OracleSelector::Model { config } => (config.clone(), None),
        OracleSelector::Replay { dir, config } => (config.clone(), Some(dir.clone())),
        _ => unreachable!("local oracles take the other path"),
    };
    let batch_size = model_config.batch_size(suite.k());
    let mut client = match replay_dir {
        None => Some(ModelClient::new(model_config.clone()).map_err(query_kind)?),
        Some(_) => None,
    };

    for (ai, &alpha) in suite.alpha_grid().iter().enumerate() {
        let instances = suite.instances_at(ai);
        let mut point_records = Vec::with_capacity(instances.len());
        for (bi, batch) in instances.chunks(batch_size).enumerate() {
            let transcript = match &replay_dir {
                Some(dir) => {
                    let path = dir.join(transcript_file_name(suite.k(), alpha, bi));
                    if !path.exists() {
                        return Err(SweepErrorKind::MissingTranscript(path.display().to_string()));
                    }
                    replay_transcript(&path)?
                }
                None => {
                    let client = client.as_mut().expect("live client exists");
                    match client.query(batch) {
                        Ok(t) => t,
                        Err(QueryError { kind, transcript }) => {
                            // Keep the error-marked partial transcript.
                            run.transcripts.push(SweepTranscript {
                                alpha,
                                batch_index: bi,
                                transcript,
                            });
                            run.records.extend(point_records);
                            return Err(SweepErrorKind::Query(kind.to_string()));
                        }
                    }
                }
            };

            let reply = transcript.reply_text().unwrap_or("");
            let response = parse_response(reply, suite.n_vars(), batch.len()).with_solver_calls(
                detect_solver_call(transcript.reasoning_log.as_deref().unwrap_or("")),
            );
            for (j, outcome) in response.outcomes.iter().enumerate() {
                let si = bi * batch_size + j;
                let observed = match outcome {
                    OracleOutcome::Assignment(a) => ObservedOutcome::Assignment(a.clone()),
                    OracleOutcome::Refusal(text) => ObservedOutcome::Refusal(text.clone()),
                    OracleOutcome::Unparseable(text) => ObservedOutcome::Unparseable(text.clone()),
                };
                point_records.push(evaluate_instance(
                    &instance_id(suite, ai, si),
                    &instances[si],
                    &name,
                    observed,
                    response.solver_call_matches.clone(),
                )?);
            }
            run.transcripts.push(SweepTranscript {
                alpha,
                batch_index: bi,
                transcript,
            });
        }

        let point = aggregate_point(&point_records, &config.thresholds)?;
        let all_refused = point.refusal_count == point.n_samples && point.n_samples > 0;
        run.records.extend(point_records);
        run.points.push(point);
        if all_refused {
            run.stopped_at_alpha = Some(alpha);
            break;
        }
    }
    Ok(())
}

fn query_kind(e: QueryError) -> SweepErrorKind {
    SweepErrorKind::Query(e.kind.to_string())
}

/// Histogram bin: how many exchanges at this α invoked a SAT solver in
/// their reasoning log.
#[derive(Clone, Debug, PartialEq)]
pub struct HistogramBin {
    pub alpha: f64,
    pub count: usize,
}

/// Counts transcripts whose reasoning log mentions a solver, per α.
/// Transcripts without a log count 0. Every α present in the input gets a
/// bin, so an all-quiet corpus yields an all-zero histogram.
pub fn solver_call_histogram(transcripts: &[SweepTranscript]) -> Vec<HistogramBin> {
    let mut bins: Vec<HistogramBin> = Vec::new();
    let mut alphas: Vec<f64> = transcripts.iter().map(|t| t.alpha).collect();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    for alpha in alphas {
        let count = transcripts
            .iter()
            .filter(|t| t.alpha == alpha)
            .filter(|t| {
                t.transcript
                    .reasoning_log
                    .as_deref()
                    .is_some_and(|log| !detect_solver_call(log).is_empty())
            })
            .count();
        bins.push(HistogramBin { alpha, count });
    }
    bins
}

#[cfg(test)]
mod tests {
    use super::*;
    use satlab_core::{alpha_range, generate_sweep_suite};

    #[test]
    fn dpll_sweep_covers_grid() {
        let grid = alpha_range(0.2, 1.0, 0.4);
        let suite = generate_sweep_suite(2, 10, &grid, 5, 7).unwrap();
        let run = run_sweep(&suite, &OracleSelector::dpll(), &SweepConfig::default()).unwrap();
        assert_eq!(run.points.len(), 3);
        assert_eq!(run.records.len(), 15);
        assert!(run.transcripts.is_empty());
        assert_eq!(run.stopped_at_alpha, None);
        for point in &run.points {
            assert_eq!(point.n_samples, 5);
            assert_eq!(point.alpha_s, Some(1.0));
            assert_eq!(point.random_baseline, 0.25);
        }
    }

    #[test]
    fn parallel_jobs_reproduce_sequential_results() {
        let grid = alpha_range(3.0, 4.0, 0.5);
        let suite = generate_sweep_suite(3, 12, &grid, 6, 11).unwrap();
        let sequential =
            run_sweep(&suite, &OracleSelector::dpll(), &SweepConfig::default()).unwrap();
        let parallel = run_sweep(
            &suite,
            &OracleSelector::dpll(),
            &SweepConfig {
                jobs: 4,
                ..SweepConfig::default()
            },
        )
        .unwrap();
        assert_eq!(sequential.points, parallel.points);
        assert_eq!(sequential.records, parallel.records);
    }

    #[test]
    fn random_oracle_h_tracks_baseline_across_alpha() {
        let grid = alpha_range(3.0, 4.8, 0.2);
        let suite = generate_sweep_suite(3, 30, &grid, 30, 99).unwrap();
        let run = run_sweep(
            &suite,
            &OracleSelector::Random { seed: 5 },
            &SweepConfig::default(),
        )
        .unwrap();
        for point in &run.points {
            let h = point.h_mean.unwrap();
            // Loose envelope: the expectation is α-independent at 1/8.
            assert!(
                (h - 0.125).abs() < 0.06,
                "alpha={} h_mean={h}",
                point.alpha
            );
        }
        // Random-oracle records always claim but rarely verify at α≈4.
        for r in &run.records {
            assert!(r.claimed_sat);
            assert!(!r.verified_sat || r.h == Some(0.0));
        }
    }

    #[test]
    fn walksat_sweep_reports_solved_or_unknown() {
        let grid = alpha_range(2.0, 3.0, 0.5);
        let suite = generate_sweep_suite(3, 15, &grid, 4, 3).unwrap();
        let run = run_sweep(
            &suite,
            &OracleSelector::WalkSat {
                noise: 0.5,
                max_flips: None,
                max_tries: 10,
                seed: 1,
            },
            &SweepConfig::default(),
        )
        .unwrap();
        assert_eq!(run.records.len(), 12);
        for r in &run.records {
            assert!(matches!(
                r.outcome,
                crate::eval::OutcomeKind::Solved | crate::eval::OutcomeKind::Unknown
            ));
            if r.outcome == crate::eval::OutcomeKind::Solved {
                assert!(r.verified_sat);
                assert_eq!(r.h, Some(0.0));
            }
        }
    }

    #[test]
    fn unknown_k_without_threshold_entry_is_rejected() {
        let suite = generate_sweep_suite(5, 10, &[1.0], 2, 1).unwrap();
        let err = run_sweep(&suite, &OracleSelector::dpll(), &SweepConfig::default()).unwrap_err();
        assert!(matches!(err.kind, SweepErrorKind::MissingThreshold(5)));
        let config = SweepConfig {
            thresholds: ThresholdTable::default().with_entry(5, 21.117),
            ..SweepConfig::default()
        };
        assert!(run_sweep(&suite, &OracleSelector::dpll(), &config).is_ok());
    }
}
