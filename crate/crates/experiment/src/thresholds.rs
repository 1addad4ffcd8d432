//! Known satisfiability thresholds α_s by clause width.

use std::collections::BTreeMap;

/// α_s per K. The defaults cover the widths under study: 1 for 2-SAT,
/// 4.267 for 3-SAT, 9.931 for 4-SAT. A sweep requires an entry for its K.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdTable {
    entries: BTreeMap<u32, f64>,
}

impl Default for ThresholdTable {
    fn default() -> Self {
        ThresholdTable {
            entries: BTreeMap::from([(2, 1.0), (3, 4.267), (4, 9.931)]),
        }
    }
}

impl ThresholdTable {
    pub fn empty() -> Self {
        ThresholdTable {
            entries: BTreeMap::new(),
        }
    }

    pub fn with_entry(mut self, k: u32, alpha_s: f64) -> Self {
        self.entries.insert(k, alpha_s);
        self
    }

    pub fn alpha_s(&self, k: u32) -> Option<f64> {
        self.entries.get(&k).copied()
    }
}
