use thiserror::Error;

/// A single failed check together with the arguments that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: String,
    pub witness: Vec<String>,
    pub detail: String,
}

impl Violation {
    pub fn new(rule: &str, witness: Vec<String>, detail: impl Into<String>) -> Self {
        Self {
            rule: rule.into(),
            witness,
            detail: detail.into(),
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} at ({})", self.rule, self.witness.join(", "))?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: wrong dimensions, out-of-range indices, ill-defined matrices.
    #[error("structural error: {0}")]
    Structural(String),
    /// Well-formed input that violates axioms.
    #[error("validation failed: {} violation(s){}", .0.len(), first_line(.0))]
    Validation(Vec<Violation>),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("capacity exceeded: {what} exceeds bound {bound}")]
    Capacity { what: String, bound: u64 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("inconsistent model: {0}")]
    ModelInconsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn first_line(v: &[Violation]) -> String {
    v.first()
        .map(|x| format!("; first: {x}"))
        .unwrap_or_default()
}

pub type Result<T> = std::result::Result<T, Error>;
