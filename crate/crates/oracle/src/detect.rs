//! Keyword scan over reasoning logs for external SAT-solver invocations.

/// Case-insensitive substring patterns that mark a solver call. Note that
/// a mention of CryptoMiniSat also contains "minisat"; both keywords are
/// reported, since each matched.
pub const SOLVER_KEYWORDS: [&str; 6] = [
    "sat solver",
    "pycosat",
    "picosat",
    "minisat",
    "cryptominisat",
    "dpll solver",
];

/// Returns each distinct keyword found in `log_text`, ordered by first
/// occurrence. Idempotent and duplicate-free by construction.
pub fn detect_solver_call(log_text: &str) -> Vec<String> {
    let lower = log_text.to_lowercase();
    let mut hits: Vec<(usize, &str)> = SOLVER_KEYWORDS
        .iter()
        .filter_map(|&kw| lower.find(kw).map(|pos| (pos, kw)))
        .collect();
    hits.sort();
    hits.into_iter().map(|(_, kw)| kw.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_generic_and_dpll_mentions() {
        let log = "Formulating a plan: Considering a SAT solver or a simple DPLL solver \
                   due to the manageable number of variables.";
        assert_eq!(detect_solver_call(log), ["sat solver", "dpll solver"]);
    }

    #[test]
    fn finds_named_solvers_in_occurrence_order() {
        assert_eq!(
            detect_solver_call("I will use Pycosat and MiniSAT"),
            ["pycosat", "minisat"]
        );
        assert_eq!(
            detect_solver_call("MiniSAT first, then Pycosat"),
            ["minisat", "pycosat"]
        );
    }

    #[test]
    fn plain_reasoning_matches_nothing() {
        assert!(detect_solver_call("I will reason step by step").is_empty());
        assert!(detect_solver_call("").is_empty());
    }

    #[test]
    fn cryptominisat_reports_both_overlapping_keywords() {
        let hits = detect_solver_call("Let me try CryptoMiniSat here.");
        assert_eq!(hits, ["cryptominisat", "minisat"]);
    }

    #[test]
    fn repeated_mentions_deduplicate() {
        let hits = detect_solver_call("sat solver, SAT SOLVER, Sat Solver");
        assert_eq!(hits, ["sat solver"]);
    }

    #[test]
    fn idempotent_over_concatenation() {
        let log = "I'm using SAT solver to find satisfying assignments";
        let once = detect_solver_call(log);
        let twice = detect_solver_call(&format!("{log}\n{log}"));
        assert_eq!(once, twice);
    }
}
