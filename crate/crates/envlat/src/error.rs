use thiserror::Error;

/// Error type shared by every module. Variants that name elements carry the
/// element *names*, not indices, so they can be surfaced verbatim in reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a poset: {0}")]
    NotAPoset(String),

    #[error("not a lattice: {a} and {b} have no {kind}")]
    NotALattice { a: String, b: String, kind: &'static str },

    #[error("not a bounded lattice: {0}")]
    Unbounded(String),

    #[error("size cap exceeded: {0}")]
    SizeExceeded(String),

    #[error("not distributive: {0}")]
    NotDistributive(String),

    #[error("codomain is not distributive: {0}")]
    NotDistributiveCodomain(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("adjunction fails at d = {d}, e = {e}: {detail}")]
    NotAdjoint { d: String, e: String, detail: String },

    #[error("double density fails at {0}")]
    NotDoublyDense(String),

    #[error("not a TSCP: {0}")]
    NotTSCP(String),

    #[error("not a daDL morphism: {0}")]
    NotDaDLMorphism(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("parse error: {0}")]
    ParseError(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for input problems, 3 for cap
    /// violations, 1 for everything mathematical.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ParseError(_) => 2,
            Error::SizeExceeded(_) => 3,
            _ => 1,
        }
    }
}
