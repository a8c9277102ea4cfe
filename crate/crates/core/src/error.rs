use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("could not factor {0}")]
    Factorization(String),
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("degenerate quadratic form")]
    Degenerate,
    #[error("not positive definite")]
    NotPositiveDefinite,
    #[error("signature mismatch case out of scope")]
    SignatureMismatch,
    #[error("discriminant classes differ")]
    DiscriminantMismatch,
    #[error("point is not on the curve")]
    OffCurve,
    #[error("point is zero or 2-torsion")]
    TorsionPoint,
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("degenerate gamma: a conjugate vanishes")]
    DegenerateGamma,
    #[error("Lemma hypothesis violated: {0}")]
    LemmaHypothesis(String),
    #[error("insufficient truncation: need {need}, have {have}")]
    Truncation { need: usize, have: usize },
    #[error("Hecke image of basis element {index} leaves the span (first failing coefficient {coeff})")]
    NotInSpan { index: usize, coeff: usize },
    #[error("insufficient precision: basis has rank {rank} < {size} on {bound} coefficients")]
    InsufficientPrecision { rank: usize, size: usize, bound: usize },
    #[error("empty eigenspace intersection")]
    EmptyEigenspace,
    #[error("eigenspace has dimension {0}; needs more primes")]
    EigenspaceTooLarge(usize),
    #[error("Frobenius pattern at p = {0} not found in table")]
    UnknownPattern(u64),
    #[error("p = {0} divides the level")]
    PrimeDividesLevel(u64),
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
