//! Total parsing of model replies into per-instance outcomes.
//!
//! A reply is scanned line by line for assignment witnesses; witnesses are
//! matched to instances in order. Whatever cannot be matched degrades into
//! [`OracleOutcome::Refusal`] (when the reply reads as an apology plus an
//! impracticality claim) or [`OracleOutcome::Unparseable`] — the parser
//! never fails, whatever the text.

use satlab_core::Assignment;

/// Per-instance outcome of one oracle exchange.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    /// A binary assignment the oracle claims to be satisfying.
    Assignment(Assignment),
    /// The oracle declined to answer; carries the reply text.
    Refusal(String),
    /// Nothing usable could be extracted; carries the reply text.
    Unparseable(String),
}

/// Parsed reply for a whole batch: exactly one outcome per instance sent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResponse {
    pub outcomes: Vec<OracleOutcome>,
    pub raw_reply: String,
    /// Solver keywords found in the exchange's reasoning log, if any.
    pub solver_call_matches: Vec<String>,
    pub warnings: Vec<String>,
}

impl OracleResponse {
    pub fn with_solver_calls(mut self, matches: Vec<String>) -> Self {
        self.solver_call_matches = matches;
        self
    }

    pub fn refusal_count(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| matches!(o, OracleOutcome::Refusal(_)))
            .count()
    }
}

/// Refusal recognition: the reply must contain an apology marker and an
/// impracticality marker (all case-insensitive substrings). The defaults
/// cover straight and typographic apostrophes.
#[derive(Clone, Debug)]
pub struct RefusalPatterns {
    pub apology_markers: Vec<String>,
    pub reason_markers: Vec<String>,
}

impl Default for RefusalPatterns {
    fn default() -> Self {
        RefusalPatterns {
            apology_markers: vec![
                "i'm sorry".to_string(),
                "i\u{2019}m sorry".to_string(),
                "i am sorry".to_string(),
            ],
            reason_markers: vec![
                "impractical".to_string(),
                "recommend using a sat solver".to_string(),
            ],
        }
    }
}

impl RefusalPatterns {
    pub fn matches(&self, reply: &str) -> bool {
        let lower = reply.to_lowercase();
        let apology = self.apology_markers.iter().any(|m| lower.contains(m));
        let reason = self.reason_markers.iter().any(|m| lower.contains(m));
        apology && reason
    }
}

/// Parses a reply with the default refusal patterns.
pub fn parse_response(reply: &str, n_vars: u32, expected: usize) -> OracleResponse {
    parse_response_with(reply, n_vars, expected, &RefusalPatterns::default())
}

/// Parses a reply into exactly `expected` outcomes.
///
/// Witness lines are either `{0,1}^n_vars` strings (list numbering, code
/// fences, and light markup are stripped first) or full signed-integer
/// witnesses like `-1 2 3 ... 0`, which convert as positive → 1,
/// negative → 0. Extra witnesses beyond `expected` are dropped with a
/// warning. Slots left unfilled become refusals when the refusal patterns
/// match, unparseable otherwise.
pub fn parse_response_with(
    reply: &str,
    n_vars: u32,
    expected: usize,
    refusals: &RefusalPatterns,
) -> OracleResponse {
    let mut witnesses: Vec<Assignment> = Vec::new();
    for line in reply.lines() {
        if let Some(a) = extract_witness(line, n_vars) {
            witnesses.push(a);
        }
    }

    let mut warnings = Vec::new();
    if witnesses.len() > expected {
        warnings.push(format!(
            "reply contained {} assignment strings but only {} instances were sent; extras ignored",
            witnesses.len(),
            expected
        ));
        witnesses.truncate(expected);
    }

    let refused = refusals.matches(reply);
    let mut outcomes: Vec<OracleOutcome> =
        witnesses.into_iter().map(OracleOutcome::Assignment).collect();
    while outcomes.len() < expected {
        outcomes.push(if refused {
            OracleOutcome::Refusal(reply.to_string())
        } else {
            OracleOutcome::Unparseable(reply.to_string())
        });
    }

    OracleResponse {
        outcomes,
        raw_reply: reply.to_string(),
        solver_call_matches: Vec::new(),
        warnings,
    }
}

fn extract_witness(line: &str, n_vars: u32) -> Option<Assignment> {
    let cleaned = clean_line(line);
    if cleaned.is_empty() {
        return None;
    }
    if cleaned.len() == n_vars as usize && cleaned.bytes().all(|b| b == b'0' || b == b'1') {
        return Some(Assignment::from_bitstring(cleaned).expect("checked binary"));
    }
    signed_witness(cleaned, n_vars)
}

/// Strips code-fence markers, surrounding markup, and list numbering such
/// as `3)` / `3.` / `3:` so a line like "3) 0100110010" still yields its
/// assignment string.
fn clean_line(line: &str) -> &str {
    let mut s = line.trim();
    if s.starts_with("```") {
        return "";
    }
    s = s.trim_matches(|c| c == '`' || c == '*' || c == '_');
    s = strip_ordinal(s);
    s.trim()
}

fn strip_ordinal(s: &str) -> &str {
    let digits = s.bytes().take_while(|b| b.is_ascii_digit()).count();
    if digits == 0 {
        return s;
    }
    let rest = &s[digits..];
    for marker in [')', '.', ':'] {
        if let Some(tail) = rest.strip_prefix(marker) {
            // Require separation so "0.125" or "10:30" stay intact.
            if tail.starts_with(' ') || tail.starts_with('\t') {
                return tail;
            }
        }
    }
    s
}

/// Accepts a complete signed witness: n_vars non-zero integers with
/// distinct magnitudes in `[1, n_vars]`, optionally prefixed by a DIMACS
/// `v` and optionally 0-terminated.
fn signed_witness(s: &str, n_vars: u32) -> Option<Assignment> {
    let mut tokens: Vec<&str> = s.split_whitespace().collect();
    if tokens.first() == Some(&"v") {
        tokens.remove(0);
    }
    if tokens.last() == Some(&"0") {
        tokens.pop();
    }
    if tokens.len() != n_vars as usize {
        return None;
    }
    let mut bits = vec![None; n_vars as usize];
    for token in tokens {
        let value: i64 = token.parse().ok()?;
        if value == 0 {
            return None;
        }
        let var = value.unsigned_abs();
        if var < 1 || var > n_vars as u64 {
            return None;
        }
        let slot = &mut bits[(var - 1) as usize];
        if slot.is_some() {
            return None;
        }
        *slot = Some(value > 0);
    }
    Some(Assignment::new(bits.into_iter().map(|b| b.unwrap()).collect()))
}
