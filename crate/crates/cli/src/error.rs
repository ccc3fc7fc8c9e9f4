use serde::{Deserialize, Serialize};
use stacky::Violation;
use thiserror::Error;

/// One machine-readable validation failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub kind: String,
    pub message: String,
    /// Offending cones, 0-based ray indices.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rays: Vec<usize>,
}

impl ViolationRecord {
    pub fn new(kind: &str, message: String, cones: Vec<Vec<usize>>, rays: Vec<usize>) -> Self {
        ViolationRecord { kind: kind.to_string(), message, cones, rays }
    }

    pub fn from_violation(v: &Violation) -> Self {
        let (cones, rays) = match v {
            Violation::Fan(f) => (f.cones().iter().map(|c| c.rays().to_vec()).collect(), f.rays()),
            Violation::ColumnLength { ray, .. } => (vec![], vec![*ray]),
        };
        ViolationRecord::new(v.kind(), v.to_string(), cones, rays)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {}", .0.iter().map(|v| v.message.as_str()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<ViolationRecord>),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn invalid_one(kind: &str, message: String) -> Self {
        CliError::Invalid(vec![ViolationRecord::new(kind, message, vec![], vec![])])
    }

    /// 0 ok, 1 I/O or parse, 2 validation, 3 internal consistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) | CliError::Usage(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Consistency(_) => 3,
        }
    }
}
