use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("block length must be odd and at least 3, got {0}")]
    InvalidBlockLength(usize),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial does not divide exactly (remainder of degree {remainder_degree})")]
    NotDivisible { remainder_degree: usize },

    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,

    #[error("polynomial is not an idempotent modulo x^{0} + 1")]
    NotIdempotent(usize),

    #[error("{0} is not a cyclotomic coset representative")]
    UnknownRepresentative(usize),

    #[error("the coset of 0 has no reversed coset polynomial")]
    ZeroRepresentative,

    #[error("degenerate code: dimension {k} of length {n}")]
    DegenerateCode { n: usize, k: usize },

    #[error("extension degree {0} is beyond the supported field size")]
    FieldTooLarge(usize),

    #[error("parity-check matrix has rank {rank}, need {required}")]
    RankDeficient { rank: usize, required: usize },

    #[error("{rows} parity-check rows exceed the n/2 density guard for n = {n}")]
    DensityGuard { rows: usize, n: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("no candidate codewords to select from")]
    EmptyCandidates,

    #[error("dual weight distribution sums to {actual}, expected 2^{dual_dimension}")]
    IncompleteDistribution { actual: String, dual_dimension: usize },

    #[error("missing dual minimum weight for {0}")]
    MissingDualWeight(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
