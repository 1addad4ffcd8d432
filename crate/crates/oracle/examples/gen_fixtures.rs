//! Regenerates the checked-in transcript fixtures under `fixtures/`.
//!
//! Run from the crate root: `cargo run -p satlab-oracle --example gen_fixtures`

use satlab_core::{generate_instance, parse_dimacs, CnfInstance, GeneratorParams};
use satlab_oracle::{build_batch_prompt, Message, Transcript};

const ACK: &str = "Yes, I can help with that. Send the CNF formulas and I will return a satisfying assignment for each as a string of binary variables.";

/// The released K=2, α=0.1 batch: ten single-clause instances with their
/// generator seeds, and the ten assignment strings the model returned.
const K2_INSTANCES: [(&str, &str); 10] = [
    ("67612117", "5 -6 0"),
    ("910839500", "-1 6 0"),
    ("994446506", "7 -1 0"),
    ("1812786935", "-7 -2 0"),
    ("1898440416", "9 5 0"),
    ("1979796133", "-2 -1 0"),
    ("2154785185", "10 2 0"),
    ("2449048216", "6 -7 0"),
    ("2643334712", "10 -4 0"),
    ("2807763567", "-3 -4 0"),
];

const K2_REPLY: &str = "0000100000\n0000000000\n0000000000\n0000000000\n0000000010\n0000000000\n0000000001\n0000000000\n0000000000\n0000000000";

/// Reasoning log for the solver-call fixture: the detector must find
/// "sat solver" first and "dpll solver" as well.
const SOLVER_LOG: &str = "Formulating a plan\n\
I need a satisfying assignment for each formula. Considering a SAT solver or a simple DPLL solver due to the manageable number of variables and the constraints.\n\
\n\
Testing variable satisfaction\n\
Setting every variable to True fails: several clauses contain only negative literals, so a different assignment is required.\n\
\n\
Crafting the response\n\
I'm using SAT solver to find satisfying assignments for the CNF formulas, then I'll provide binary strings as solutions. Mapping the DIMACS format.";

fn main() {
    let out_dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");

    // K=2 batch replay fixture.
    let instances: Vec<CnfInstance> = K2_INSTANCES
        .iter()
        .map(|(seed, clause)| {
            parse_dimacs(&format!("c seed={seed}\np cnf 10 1\n{clause}\n")).unwrap()
        })
        .collect();
    let prompt = build_batch_prompt(&instances, 10).unwrap();
    let mut t = Transcript::new_session("o1-preview-replay");
    t.meta.timestamp = "2024-09-14T00:00:00Z".to_string();
    t.push(Message::assistant(ACK));
    t.push(Message::user(prompt));
    t.push(Message::assistant(K2_REPLY));
    std::fs::write(out_dir.join("batch_k2_alpha0.1.json"), t.to_json()).unwrap();

    // K=4, α=8.0 solver-call fixture: two generated instances, claimed
    // assignments in the reply, solver mentions in the reasoning log.
    let batch: Vec<CnfInstance> = [41u64, 42]
        .iter()
        .map(|&seed| {
            let params = GeneratorParams::from_alpha(4, 10, 8.0, seed).unwrap();
            generate_instance(&params)
        })
        .collect();
    let prompt = build_batch_prompt(&batch, 2).unwrap();
    let mut t = Transcript::new_session("o1-preview-replay");
    t.meta.timestamp = "2024-09-14T00:00:00Z".to_string();
    t.push(Message::assistant(ACK));
    t.push(Message::user(prompt));
    t.push(Message::assistant("1011010011\n0110010111"));
    t.reasoning_log = Some(SOLVER_LOG.to_string());
    std::fs::write(out_dir.join("solver_call_k4_alpha8.json"), t.to_json()).unwrap();

    println!("fixtures written to {}", out_dir.display());
}
