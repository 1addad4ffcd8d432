//! The fixed prompt protocol: one priming message per session, then
//! numbered batches of DIMACS instances.

use satlab_core::{serialize_dimacs, CnfInstance};
use thiserror::Error;

/// The verbatim session opener. Byte-for-byte constant; tests pin it
/// against the checked-in golden fixture.
pub const PRIMING_MESSAGE: &str = "I will provide you with a CNF formula of a satisfiability problem. Can you give me an assignment that satisfies the formula as a string of binary variables? Also, can you handle a list of formulas and provide the assignments that satisfy them?";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProtocolError {
    #[error("batch is empty")]
    EmptyBatch,
    #[error("batch of {count} instances exceeds the configured size {max}")]
    BatchTooLarge { count: usize, max: usize },
}

/// Renders a batch as numbered DIMACS blocks separated by blank lines:
///
/// ```text
/// 1) c seed=67612117
/// p cnf 10 1
/// 5 -6 0
///
/// 2) ...
/// ```
pub fn build_batch_prompt(
    instances: &[CnfInstance],
    max_batch: usize,
) -> Result<String, ProtocolError> {
    if instances.is_empty() {
        return Err(ProtocolError::EmptyBatch);
    }
    if instances.len() > max_batch {
        return Err(ProtocolError::BatchTooLarge {
            count: instances.len(),
            max: max_batch,
        });
    }
    let blocks: Vec<String> = instances
        .iter()
        .enumerate()
        .map(|(i, inst)| format!("{}) {}", i + 1, serialize_dimacs(inst).trim_end()))
        .collect();
    Ok(blocks.join("\n\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use satlab_core::parse_dimacs;

    #[test]
    fn priming_matches_golden_fixture() {
        let golden = crate::fixtures::PRIMING;
        assert_eq!(PRIMING_MESSAGE, golden.trim_end_matches('\n'));
        assert_eq!(PRIMING_MESSAGE.len(), golden.trim_end_matches('\n').len());
        assert!(PRIMING_MESSAGE.starts_with("I will provide you with a CNF formula"));
    }

    #[test]
    fn single_instance_block() {
        let inst = parse_dimacs("p cnf 10 1\n5 -6 0\n").unwrap();
        let prompt = build_batch_prompt(&[inst], 10).unwrap();
        assert_eq!(prompt, "1) p cnf 10 1\n5 -6 0");
    }

    #[test]
    fn comments_lead_each_block() {
        let a = parse_dimacs("c seed=67612117\np cnf 10 1\n5 -6 0\n").unwrap();
        let b = parse_dimacs("c seed=910839500\np cnf 10 1\n-1 6 0\n").unwrap();
        let prompt = build_batch_prompt(&[a, b], 10).unwrap();
        assert!(prompt.starts_with("1) c seed=67612117\np cnf 10 1\n5 -6 0"));
        assert!(prompt.contains("\n\n2) c seed=910839500\n"));
    }

    #[test]
    fn block_count_matches_instance_count() {
        let instances: Vec<CnfInstance> = (0..7)
            .map(|i| {
                let params =
                    satlab_core::GeneratorParams::from_alpha(3, 10, 3.0, i as u64).unwrap();
                satlab_core::generate_instance(&params)
            })
            .collect();
        let prompt = build_batch_prompt(&instances, 10).unwrap();
        assert_eq!(prompt.split("\n\n").count(), 7);
    }

    #[test]
    fn size_limits_enforced() {
        let inst = parse_dimacs("p cnf 2 1\n1 2 0\n").unwrap();
        assert_eq!(build_batch_prompt(&[], 10), Err(ProtocolError::EmptyBatch));
        assert_eq!(
            build_batch_prompt(&[inst.clone(), inst], 1),
            Err(ProtocolError::BatchTooLarge { count: 2, max: 1 })
        );
    }
}
