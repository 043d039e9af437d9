use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("sigma is not a diagram automorphism: {0}")]
    SigmaNotAutomorphism(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("Weyl group has more than {0} elements")]
    WeylTooLarge(usize),
    #[error("{0} is not a minimal coset representative")]
    NotMinimalRep(String),
    #[error("cocharacter {0} is not dominant")]
    NotDominant(String),
    #[error("incomparable: distinct κ-components")]
    Incomparable,
    #[error("vector {0} is not sigma-invariant, so its centralizer is not sigma-stable")]
    NotSigmaStable(String),
    #[error("vector {0} does not lie in V_M")]
    NotInVM(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("not in K_chi: {0}")]
    NotInKChi(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("not found up to extension degree {0}")]
    NotFound(u32),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
