use thiserror::Error;

use crate::corelin::ScalarRing;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands live in different scalar rings ({left} vs {right})")]
    MixedRings { left: ScalarRing, right: ScalarRing },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("value {0} is not integral in the target ring")]
    NotIntegral(String),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is not skew-symmetric with zero diagonal")]
    NonSkew,
    #[error("matrix has odd size {0}")]
    OddSize(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("generators span rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("operation needs a field, got {0}")]
    NotAField(ScalarRing),
    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("wedge degree {0} exceeds ambient rank {1}")]
    DegreeOverflow(usize, usize),
    #[error("expected degree {expected}, got {found}")]
    WrongDegree { expected: usize, found: usize },

    #[error("brute force needs p <= 7, got {0}")]
    FieldTooLarge(u64),
    #[error("brute force needs p <= 5, got {0}")]
    PrimeTooLarge(u64),
    #[error("ring is not very degenerate")]
    NotVeryDegenerate,
    #[error("ring is very degenerate: the pentaquadratic form vanishes identically")]
    VeryDegenerate,

    #[error("resolvent data is inconsistent: {0}")]
    InconsistentResolvent(String),
    #[error("constructed data is not a resolvent: {0}")]
    NotAResolvent(String),
    #[error("the Pfaffian bracket needs 2 to be invertible")]
    CharTwo,

    #[error("lattice is not contained in the bounding lattice M0")]
    NotInsideM0,
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),

    #[error("unknown example {0}")]
    UnknownExample(u32),
    #[error("example {0} needs a prime parameter")]
    MissingPrime(u32),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
