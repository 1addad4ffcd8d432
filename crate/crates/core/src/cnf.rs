//! CNF formulas, assignments, and polynomial-time verification.
//!
//! Variables are 1-based throughout, matching the DIMACS convention.
//! An [`Assignment`] stores one bit per variable; bit `i` is the value of
//! variable `i + 1`, so the textual form `"0000100000"` sets `x5 = 1` and
//! everything else to 0.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors from constructing or evaluating CNF values.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("clause must contain at least one literal")]
    EmptyClause,
    #[error("0 does not encode a literal")]
    ZeroLiteral,
    #[error("variable {var} out of range for instance with {n_vars} variables")]
    VariableOutOfRange { var: u32, n_vars: u32 },
    #[error("assignment has {actual} bits but instance has {expected} variables")]
    AssignmentLength { expected: usize, actual: usize },
    #[error("assignment strings must contain only '0' and '1'")]
    InvalidBitstring,
    #[error("unsatisfied-clause fraction is undefined for an instance with no clauses")]
    UndefinedFraction,
}

/// A Boolean variable or its negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    var: u32,
    negated: bool,
}

impl Literal {
    /// Creates a literal over 1-based variable `var`.
    ///
    /// # Panics
    /// If `var` is 0.
    pub fn new(var: u32, negated: bool) -> Self {
        assert!(var >= 1, "variable indices are 1-based");
        Literal { var, negated }
    }

    pub fn positive(var: u32) -> Self {
        Self::new(var, false)
    }

    pub fn negative(var: u32) -> Self {
        Self::new(var, true)
    }

    /// Converts from the signed DIMACS encoding; `-3` is ¬x3.
    pub fn from_dimacs(value: i32) -> Result<Self, CnfError> {
        if value == 0 {
            return Err(CnfError::ZeroLiteral);
        }
        Ok(Literal {
            var: value.unsigned_abs(),
            negated: value < 0,
        })
    }

    pub fn to_dimacs(self) -> i32 {
        let v = self.var as i32;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn is_negated(self) -> bool {
        self.negated
    }

    /// Truth value of the literal when its variable takes `value`.
    pub fn evaluate(self, value: bool) -> bool {
        value != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A disjunction of literals. Never empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Result<Self, CnfError> {
        if literals.is_empty() {
            return Err(CnfError::EmptyClause);
        }
        Ok(Clause { literals })
    }

    /// Builds a clause from signed DIMACS literals (without the trailing 0).
    pub fn from_dimacs(values: &[i32]) -> Result<Self, CnfError> {
        let literals = values
            .iter()
            .map(|&v| Literal::from_dimacs(v))
            .collect::<Result<Vec<_>, _>>()?;
        Clause::new(literals)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// True iff at least one literal is true under `assignment`.
    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.literals
            .iter()
            .any(|lit| lit.evaluate(assignment.value(lit.var())))
    }
}

/// A CNF formula with N variables and M clauses, plus provenance metadata.
///
/// `k` is the uniform clause width when every clause has the same length,
/// and 0 for mixed-width or empty formulas. `seed` and `comments` carry
/// the generator provenance found in `c seed=...` DIMACS comments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    n_vars: u32,
    clauses: Vec<Clause>,
    k: u32,
    seed: Option<u64>,
    comments: Vec<String>,
}

impl CnfInstance {
    /// Validates that every literal references a variable in `[1, n_vars]`.
    pub fn new(n_vars: u32, clauses: Vec<Clause>) -> Result<Self, CnfError> {
        for clause in &clauses {
            for lit in clause.literals() {
                if lit.var() > n_vars {
                    return Err(CnfError::VariableOutOfRange {
                        var: lit.var(),
                        n_vars,
                    });
                }
            }
        }
        let k = uniform_width(&clauses);
        Ok(CnfInstance {
            n_vars,
            clauses,
            k,
            seed: None,
            comments: Vec::new(),
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_comments(mut self, comments: Vec<String>) -> Self {
        self.comments = comments;
        self
    }

    pub fn n_vars(&self) -> u32 {
        self.n_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Clause density M/N.
    pub fn alpha(&self) -> f64 {
        self.clauses.len() as f64 / self.n_vars as f64
    }

    /// Uniform clause width, or 0 when widths are mixed or M = 0.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    fn check_len(&self, assignment: &Assignment) -> Result<(), CnfError> {
        if assignment.len() != self.n_vars as usize {
            return Err(CnfError::AssignmentLength {
                expected: self.n_vars as usize,
                actual: assignment.len(),
            });
        }
        Ok(())
    }

    /// Number of clauses with no true literal under `assignment`.
    pub fn count_unsatisfied(&self, assignment: &Assignment) -> Result<usize, CnfError> {
        self.check_len(assignment)?;
        Ok(self
            .clauses
            .iter()
            .filter(|c| !c.is_satisfied_by(assignment))
            .count())
    }

    /// True iff every clause has a true literal. Linear in total literal count.
    pub fn is_satisfying(&self, assignment: &Assignment) -> Result<bool, CnfError> {
        self.check_len(assignment)?;
        Ok(self.clauses.iter().all(|c| c.is_satisfied_by(assignment)))
    }

    /// Unsatisfied clauses divided by M. Undefined (an error) when M = 0.
    pub fn unsat_fraction(&self, assignment: &Assignment) -> Result<f64, CnfError> {
        if self.clauses.is_empty() {
            return Err(CnfError::UndefinedFraction);
        }
        let unsat = self.count_unsatisfied(assignment)?;
        Ok(unsat as f64 / self.clauses.len() as f64)
    }
}

fn uniform_width(clauses: &[Clause]) -> u32 {
    let mut widths = clauses.iter().map(|c| c.len());
    match widths.next() {
        Some(first) if widths.all(|w| w == first) => first as u32,
        _ => 0,
    }
}

/// A total truth assignment: bit `i` is the value of variable `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment { bits }
    }

    pub fn all_false(n: usize) -> Self {
        Assignment {
            bits: vec![false; n],
        }
    }

    /// Parses a `{0,1}^N` string such as `"0000100000"`.
    pub fn from_bitstring(s: &str) -> Result<Self, CnfError> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(CnfError::InvalidBitstring),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Assignment { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Value of 1-based variable `var`.
    ///
    /// # Panics
    /// If `var` is 0 or beyond the assignment length.
    pub fn value(&self, var: u32) -> bool {
        self.bits[(var - 1) as usize]
    }

    pub fn flip(&mut self, var: u32) {
        let idx = (var - 1) as usize;
        self.bits[idx] = !self.bits[idx];
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Assignment {
    type Err = CnfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Assignment::from_bitstring(s)
    }
}
