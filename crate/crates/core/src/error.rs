use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Parse { line: Option<usize>, message: String },

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid arc: {0}")]
    InvalidArc(String),

    #[error("unbound generator `{0}`")]
    UnboundGenerator(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A rotation number could only be enclosed, not computed exactly.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// The input group exhibits a non-abelian free subgroup, so a
    /// free-subgroup-free analysis does not apply.
    #[error("free subgroup evidence: {0}")]
    FreeSubgroupEvidence(String),

    #[error("out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
