//! Per-(K, α) aggregation: means, standard errors, and the 2^-K baseline.

use serde::{Deserialize, Serialize};

use crate::eval::{EvalError, EvalRecord, OutcomeKind};
use crate::thresholds::ThresholdTable;

/// Aggregated statistics for one grid point. Field order matches the
/// points CSV schema. `n_samples = 1` marks a single-sample point whose
/// standard errors are reported as 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub k: u32,
    pub n: u32,
    pub alpha: f64,
    pub n_samples: usize,
    pub p_sat_mean: f64,
    pub p_sat_stderr: f64,
    /// Mean H over records with a defined H; missing when none have one.
    pub h_mean: Option<f64>,
    pub h_stderr: Option<f64>,
    /// Exactly 2^-K.
    pub random_baseline: f64,
    pub refusal_count: usize,
    pub alpha_s: Option<f64>,
}

impl SweepPoint {
    /// Number of records that contributed to the H statistics.
    pub fn h_sample_count(&self, records: &[EvalRecord]) -> usize {
        records.iter().filter(|r| r.h.is_some()).count()
    }

    /// A point where the oracle does statistically better than random
    /// guessing, at the default 2σ margin: h_mean + 2·h_stderr < 2^-K.
    pub fn beats_random_guess(&self) -> bool {
        self.beats_random_guess_with(2.0)
    }

    /// Same test with a caller-chosen significance margin.
    pub fn beats_random_guess_with(&self, sigmas: f64) -> bool {
        match (self.h_mean, self.h_stderr) {
            (Some(mean), Some(stderr)) => mean + sigmas * stderr < self.random_baseline,
            _ => false,
        }
    }
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Folds the records of one (k, α) point into a [`SweepPoint`].
///
/// Records are sorted by sample index first, so the result is identical
/// for any input order. Records with missing H are excluded from the H
/// statistics; the records themselves carry the missing cells, and
/// `refusal_count` reports the refusals among them.
pub fn aggregate_point(
    records: &[EvalRecord],
    thresholds: &ThresholdTable,
) -> Result<SweepPoint, EvalError> {
    let first = records.first().ok_or(EvalError::EmptyPoint)?;
    for r in records {
        if r.k != first.k || r.alpha != first.alpha {
            return Err(EvalError::MixedPoint {
                k_a: first.k,
                alpha_a: first.alpha,
                k_b: r.k,
                alpha_b: r.alpha,
            });
        }
    }
    let mut sorted: Vec<&EvalRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.sample_idx);

    let verified: Vec<f64> = sorted
        .iter()
        .map(|r| if r.verified_sat { 1.0 } else { 0.0 })
        .collect();
    let (p_sat_mean, p_sat_stderr) = mean_and_stderr(&verified);

    let h_values: Vec<f64> = sorted.iter().filter_map(|r| r.h).collect();
    let (h_mean, h_stderr) = if h_values.is_empty() {
        (None, None)
    } else {
        let (mean, stderr) = mean_and_stderr(&h_values);
        (Some(mean), Some(stderr))
    };

    Ok(SweepPoint {
        k: first.k,
        n: first.n,
        alpha: first.alpha,
        n_samples: sorted.len(),
        p_sat_mean,
        p_sat_stderr,
        h_mean,
        h_stderr,
        random_baseline: 0.5f64.powi(first.k as i32),
        refusal_count: sorted
            .iter()
            .filter(|r| r.outcome == OutcomeKind::Refusal)
            .count(),
        alpha_s: thresholds.alpha_s(first.k),
    })
}

/// α at which the verified P(SAT) series crosses 0.5, by linear
/// interpolation at the first downward crossing; `None` when the series
/// never crosses.
pub fn psat_crossing(points: &[SweepPoint]) -> Option<f64> {
    let mut sorted: Vec<&SweepPoint> = points.iter().collect();
    sorted.sort_by(|a, b| a.alpha.total_cmp(&b.alpha));
    for pair in sorted.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        if lo.p_sat_mean >= 0.5 && hi.p_sat_mean < 0.5 {
            let t = (lo.p_sat_mean - 0.5) / (lo.p_sat_mean - hi.p_sat_mean);
            return Some(lo.alpha + t * (hi.alpha - lo.alpha));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::OutcomeKind;

    fn record(sample_idx: usize, verified: bool, h: Option<f64>, outcome: OutcomeKind) -> EvalRecord {
        EvalRecord {
            k: 3,
            n: 10,
            alpha: 4.0,
            sample_idx,
            seed: Some(sample_idx as u64),
            oracle: "test".to_string(),
            outcome,
            claimed_sat: matches!(outcome, OutcomeKind::Assignment | OutcomeKind::Solved),
            verified_sat: verified,
            unsat_count: h.map(|v| (v * 40.0) as u64),
            m: 40,
            h,
            solver_calls: vec![],
        }
    }

    #[test]
    fn mean_and_stderr_of_three_quarters() {
        let records = vec![
            record(0, true, Some(0.0), OutcomeKind::Assignment),
            record(1, false, Some(0.1), OutcomeKind::Assignment),
            record(2, true, Some(0.0), OutcomeKind::Assignment),
            record(3, true, Some(0.0), OutcomeKind::Assignment),
        ];
        let point = aggregate_point(&records, &ThresholdTable::default()).unwrap();
        assert_eq!(point.p_sat_mean, 0.75);
        assert_eq!(point.p_sat_stderr, 0.25);
        assert_eq!(point.n_samples, 4);
        assert_eq!(point.random_baseline, 0.125);
        assert_eq!(point.alpha_s, Some(4.267));
    }

    #[test]
    fn equal_h_values_have_zero_stderr() {
        let records: Vec<EvalRecord> = (0..5)
            .map(|i| record(i, false, Some(0.2), OutcomeKind::Assignment))
            .collect();
        let point = aggregate_point(&records, &ThresholdTable::default()).unwrap();
        assert_eq!(point.h_mean, Some(0.2));
        assert_eq!(point.h_stderr, Some(0.0));
    }

    #[test]
    fn single_sample_reports_zero_stderr() {
        let records = vec![record(0, true, Some(0.0), OutcomeKind::Solved)];
        let point = aggregate_point(&records, &ThresholdTable::default()).unwrap();
        assert_eq!(point.n_samples, 1);
        assert_eq!(point.p_sat_stderr, 0.0);
        assert_eq!(point.h_stderr, Some(0.0));
    }

    #[test]
    fn refusals_excluded_from_h_but_counted() {
        let records = vec![
            record(0, false, None, OutcomeKind::Refusal),
            record(1, false, None, OutcomeKind::Refusal),
            record(2, false, Some(0.3), OutcomeKind::Assignment),
        ];
        let point = aggregate_point(&records, &ThresholdTable::default()).unwrap();
        assert_eq!(point.refusal_count, 2);
        assert_eq!(point.h_mean, Some(0.3));
        assert_eq!(point.h_sample_count(&records), 1);
    }

    #[test]
    fn all_refusals_leave_h_missing() {
        let records: Vec<EvalRecord> = (0..3)
            .map(|i| record(i, false, None, OutcomeKind::Refusal))
            .collect();
        let point = aggregate_point(&records, &ThresholdTable::default()).unwrap();
        assert_eq!(point.h_mean, None);
        assert_eq!(point.h_stderr, None);
        assert_eq!(point.refusal_count, 3);
    }

    #[test]
    fn aggregation_is_order_independent() {
        let mut records: Vec<EvalRecord> = (0..10)
            .map(|i| {
                record(
                    i,
                    i % 3 == 0,
                    if i % 4 == 0 { None } else { Some(i as f64 / 20.0) },
                    if i % 4 == 0 { OutcomeKind::Refusal } else { OutcomeKind::Assignment },
                )
            })
            .collect();
        let baseline = aggregate_point(&records, &ThresholdTable::default()).unwrap();
        records.reverse();
        assert_eq!(aggregate_point(&records, &ThresholdTable::default()).unwrap(), baseline);
        records.swap(0, 5);
        records.swap(2, 7);
        assert_eq!(aggregate_point(&records, &ThresholdTable::default()).unwrap(), baseline);
    }

    #[test]
    fn empty_and_mixed_inputs_rejected() {
        assert!(matches!(
            aggregate_point(&[], &ThresholdTable::default()),
            Err(EvalError::EmptyPoint)
        ));
        let mut other = record(1, true, None, OutcomeKind::Solved);
        other.alpha = 4.2;
        let records = vec![record(0, true, None, OutcomeKind::Solved), other];
        assert!(matches!(
            aggregate_point(&records, &ThresholdTable::default()),
            Err(EvalError::MixedPoint { .. })
        ));
    }

    #[test]
    fn crossing_interpolates_linearly() {
        let mk = |alpha: f64, p: f64| SweepPoint {
            k: 3,
            n: 75,
            alpha,
            n_samples: 50,
            p_sat_mean: p,
            p_sat_stderr: 0.0,
            h_mean: None,
            h_stderr: None,
            random_baseline: 0.125,
            refusal_count: 0,
            alpha_s: Some(4.267),
        };
        let points = vec![mk(4.0, 0.9), mk(4.2, 0.6), mk(4.4, 0.2), mk(4.6, 0.1)];
        let crossing = psat_crossing(&points).unwrap();
        assert!((crossing - 4.25).abs() < 1e-12, "got {crossing}");
        assert_eq!(psat_crossing(&points[..2]), None);
        // Order does not matter.
        let mut shuffled = points.clone();
        shuffled.reverse();
        assert_eq!(psat_crossing(&shuffled), Some(crossing));
    }

    #[test]
    fn beats_random_guess_rule() {
        let mut point = SweepPoint {
            k: 3,
            n: 10,
            alpha: 4.0,
            n_samples: 10,
            p_sat_mean: 0.0,
            p_sat_stderr: 0.0,
            h_mean: Some(0.08),
            h_stderr: Some(0.01),
            random_baseline: 0.125,
            refusal_count: 0,
            alpha_s: Some(4.267),
        };
        assert!(point.beats_random_guess()); // 0.08 + 0.02 < 0.125
        point.h_stderr = Some(0.03);
        assert!(!point.beats_random_guess()); // 0.08 + 0.06 > 0.125
        point.h_mean = None;
        assert!(!point.beats_random_guess());
    }
}
