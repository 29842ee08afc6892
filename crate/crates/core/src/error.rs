use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division or modular reduction by the zero polynomial.
    #[error("division by the zero polynomial")]
    ZeroModulus,
    /// Polynomial degree exceeds the supported maximum.
    #[error("degree {0} exceeds the supported maximum of {max}", max = crate::gf2poly::MAX_DEGREE)]
    DegreeTooLarge(usize),
    /// The polynomial does not satisfy a structural precondition.
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(&'static str),
    /// No factorization of `2^k - 1` is available for this degree.
    #[error("no factorization of 2^{0} - 1 in the table")]
    MissingFactorization(u32),
    /// The polynomial is not primitive.
    #[error("polynomial is not primitive")]
    NotPrimitive,
    /// The support of the parity-check polynomial is not a Golomb ruler.
    #[error("support is not a Golomb ruler (length-4 cycles present)")]
    RccViolation,
    /// Requested block length outside `[k + 1, 2^k - 1]`.
    #[error("block length {n} outside [{min}, {max}]")]
    LengthOutOfRange { n: usize, min: usize, max: u128 },
    /// Puncturing would leave no parity rows.
    #[error("puncturing {0} symbols would leave no parity rows")]
    RateOverflow(usize),
    /// Shortening depth must stay below the information length.
    #[error("cannot shorten {z} of {k} information symbols")]
    ShortenTooDeep { z: usize, k: usize },
    /// Input length does not match the expected dimension.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    /// The operation requires materialization beyond the configured cap.
    #[error("instance too large: {0}")]
    TooLarge(&'static str),
    /// A landmark walk failed; preconditions were not met.
    #[error("landmark not found: {0}")]
    NotFound(&'static str),
    /// Ruler truncation requires the target degree to be a mark.
    #[error("{k} is not a mark of the ruler")]
    MarkMissing { k: usize },
    /// The design search space is provably empty.
    #[error("empty search space: {0}")]
    EmptySearchSpace(&'static str),
    /// Malformed simulation plan.
    #[error("invalid plan: {0}")]
    InvalidPlan(&'static str),
    /// Curves do not overlap in the requested range.
    #[error("curves have no overlapping range at the requested level")]
    NoOverlap,
    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// File I/O failure, carrying the rendered cause.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
