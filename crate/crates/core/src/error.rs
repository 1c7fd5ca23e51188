//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Two triangles or series that must share a truncation order do not.
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    /// The composition-enumeration oracle refuses exponentially large inputs.
    #[error("order {order} exceeds the composition-enumeration bound {bound}")]
    EnumerationBound { order: usize, bound: usize },

    /// Scaling transform with c = 0 is not invertible.
    #[error("scale factor must be nonzero")]
    ZeroScale,

    /// The recurrence needs f(1) != 0.
    #[error("leading coefficient f(1) is zero; the equation has no series solution of this form")]
    ZeroLeadingCoefficient,

    /// f(1) has no exact square root in the coefficient type.
    #[error("leading coefficient f(1) = {value} is not a square, so a(1) does not exist in the rationals")]
    NonSquareLeadingCoefficient { value: String },

    /// Only the positive root a(1) = +sqrt(f(1)) is supported: with the
    /// negative branch the divisor a(1)^n + a(1)^k vanishes whenever n and k
    /// have opposite parity and the recurrence breaks down.
    #[error("negative branch a(1) = {value} rejected: a(1)^n + a(1)^k would vanish for mixed-parity (n,k)")]
    NegativeBranch { value: String },

    /// The f(1) = 1 specialization was asked to run on a general input.
    #[error("leading coefficient f(1) = {value}, expected exactly 1")]
    LeadingCoefficientNotOne { value: String },

    /// A halving step of an iterated-root computation failed.
    #[error("halving step {step}: {source}")]
    HalvingStep {
        step: u32,
        #[source]
        source: Box<Error>,
    },

    /// Triangle access with k < 1, n < 1 or k > n.
    #[error("index ({n},{k}) lies outside the triangle 1 <= k <= n")]
    IndexOutOfTriangle { n: usize, k: usize },

    /// An operation requiring integer input saw a fractional coefficient.
    #[error("coefficient at order {n} is {value}, expected an integer")]
    NonIntegerCoefficient { n: usize, value: String },

    /// The scaled solver produced a fractional coefficient, which its
    /// integrality guarantee rules out; treat as an implementation bug.
    #[error("internal integrality violation at order {n}: {value} is not an integer")]
    IntegralityViolation { n: usize, value: String },

    /// A coefficient convention that maps to integer terms hit a fraction.
    #[error("convention {convention} maps order {n} to {value}, which is not an integer term")]
    ConventionMismatch {
        convention: String,
        n: usize,
        value: String,
    },

    #[error("unknown catalog entry '{0}' (expected sin, expm1, catalan or quadratic:c)")]
    UnknownCatalog(String),

    #[error("fixture missing: {0}")]
    FixtureMissing(String),

    /// A fixture or inline series is shorter than the requested prefix.
    #[error("series '{id}' has order {have}, but {need} coefficients are required")]
    FixtureTooShort { id: String, have: usize, need: usize },

    #[error("corpus case '{id}' is invalid: {reason}")]
    InvalidCorpusCase { id: String, reason: String },

    #[error("invalid rational '{0}' (expected \"num\" or \"num/den\")")]
    InvalidRational(String),

    #[error("invalid series data: {0}")]
    InvalidSeries(String),

    #[error("invalid OEIS id '{0}' (expected 'A' followed by six digits)")]
    InvalidSequenceId(String),

    #[error("cannot parse b-file: {0}")]
    BFileParse(String),

    #[error("network failure for {id}: {reason}")]
    Network { id: String, reason: String },

    /// Offline mode was requested and the cache has no copy.
    #[error("offline and no cached copy of {0}")]
    OfflineCacheMiss(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Step-annotated wrapper used by the iterated-root driver.
    pub(crate) fn at_step(self, step: u32) -> Error {
        Error::HalvingStep {
            step,
            source: Box::new(self),
        }
    }
}
