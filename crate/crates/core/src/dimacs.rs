//! DIMACS CNF parsing and serialization.
//!
//! The accepted dialect: optional `c` comment lines (anywhere), exactly one
//! `p cnf N M` header, then M clauses as whitespace-separated signed
//! integers, each terminated by `0`. Clauses may span lines or share a
//! line. Comment lines are preserved, and a comment of the exact form
//! `seed=<integer>` populates the instance seed.

use thiserror::Error;

use crate::cnf::{Clause, CnfInstance, Literal};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("missing 'p cnf N M' header")]
    MissingHeader,
    #[error("line {line}: duplicate 'p' header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: malformed header {text:?}")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: invalid token {token:?}")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: variable {var} exceeds declared count {n_vars}")]
    VariableOutOfRange { line: usize, var: u32, n_vars: u32 },
    #[error("line {line}: clause terminator with no literals")]
    EmptyClause { line: usize },
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("unterminated clause at end of input")]
    UnterminatedClause,
}

/// Parses a DIMACS CNF document into a [`CnfInstance`].
pub fn parse_dimacs(text: &str) -> Result<CnfInstance, DimacsError> {
    let mut comments: Vec<String> = Vec::new();
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                comments.push(rest.strip_prefix(' ').unwrap_or(rest).to_string());
                continue;
            }
            return Err(DimacsError::InvalidToken {
                line: line_no,
                token: line.split_whitespace().next().unwrap_or("").to_string(),
            });
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::DuplicateHeader { line: line_no });
            }
            header = Some(parse_header(line, line_no)?);
            continue;
        }
        let (n_vars, _) = header.ok_or(DimacsError::MissingHeader)?;
        for token in line.split_whitespace() {
            let value: i32 = token.parse().map_err(|_| DimacsError::InvalidToken {
                line: line_no,
                token: token.to_string(),
            })?;
            if value == 0 {
                if current.is_empty() {
                    return Err(DimacsError::EmptyClause { line: line_no });
                }
                clauses.push(Clause::new(std::mem::take(&mut current)).expect("non-empty"));
                continue;
            }
            let var = value.unsigned_abs();
            if var > n_vars {
                return Err(DimacsError::VariableOutOfRange {
                    line: line_no,
                    var,
                    n_vars,
                });
            }
            current.push(Literal::from_dimacs(value).expect("non-zero"));
        }
    }

    let (n_vars, declared) = header.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        return Err(DimacsError::UnterminatedClause);
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCountMismatch {
            declared,
            found: clauses.len(),
        });
    }

    let seed = extract_seed(&comments);
    let instance = CnfInstance::new(n_vars, clauses)
        .expect("literal ranges checked during parsing")
        .with_comments(comments);
    Ok(match seed {
        Some(s) => instance.with_seed(s),
        None => instance,
    })
}

fn parse_header(line: &str, line_no: usize) -> Result<(u32, usize), DimacsError> {
    let malformed = || DimacsError::MalformedHeader {
        line: line_no,
        text: line.to_string(),
    };
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.as_slice() {
        ["p", "cnf", n, m] => {
            let n_vars: u32 = n.parse().map_err(|_| malformed())?;
            let n_clauses: usize = m.parse().map_err(|_| malformed())?;
            Ok((n_vars, n_clauses))
        }
        _ => Err(malformed()),
    }
}

fn extract_seed(comments: &[String]) -> Option<u64> {
    comments
        .iter()
        .find_map(|c| c.trim().strip_prefix("seed=").and_then(|s| s.parse().ok()))
}

/// Renders an instance back to DIMACS: comments first, then the header,
/// then one clause per line with a trailing ` 0`.
///
/// `parse_dimacs(serialize_dimacs(x)) == x` for every valid instance.
pub fn serialize_dimacs(instance: &CnfInstance) -> String {
    let mut out = String::new();
    for comment in instance.comments() {
        if comment.is_empty() {
            out.push_str("c\n");
        } else {
            out.push_str("c ");
            out.push_str(comment);
            out.push('\n');
        }
    }
    out.push_str(&format!(
        "p cnf {} {}\n",
        instance.n_vars(),
        instance.num_clauses()
    ));
    for clause in instance.clauses() {
        for lit in clause.literals() {
            out.push_str(&lit.to_dimacs().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}
