use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("spin must be non-zero (twice_j >= 1)")]
    NonZeroSpinRequired,
    #[error("malformed spin `{0}`: expected an integer or a half-integer `p/2`")]
    MalformedSpin(String),
    #[error("magnetic index twice_m={twice_m} is not valid for twice_j={twice_j}")]
    InvalidMagneticIndex { twice_j: u32, twice_m: i32 },
    #[error("angle denominator must be non-zero")]
    ZeroDenominator,
    #[error("expected {expected} phases for positive m, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("m=0 phase must be 0 or pi, got {0}")]
    IllegalZeroPhase(String),
    #[error("m=0 phase supplied for half-integer spin")]
    ZeroPhaseForbidden,
    #[error("integer spin requires an m=0 phase")]
    MissingZeroPhase,
    #[error("operator is not Hermitian (max defect {0:e})")]
    NotHermitian(f64),
    #[error("state dimension {dimension} exceeds guard {guard}")]
    DimensionGuardExceeded { dimension: u128, guard: u128 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("imaginary residue {0:e} exceeds tolerance")]
    ImaginaryResidue(f64),
    #[error("n must be ≥ 3, got {0}")]
    TooFewParties(usize),
    #[error("scheme requires a half-integer spin")]
    NotHalfInteger,
    #[error("scheme requires an integer spin")]
    NotInteger,
    #[error("phase at party {party}, setting {setting}, twice_m={twice_m} is not an exact rational angle")]
    NonRationalPhase { party: usize, setting: usize, twice_m: i32 },
    #[error("sign search over 2^(2n) assignments is limited to n <= {limit}, got n={n}")]
    SearchGuardExceeded { n: usize, limit: usize },
    #[error("integer spin requires the maximal m=0 sign sum")]
    MissingSearchValue,
    #[error("malformed sign assignment: {0}")]
    MalformedSigns(String),
    #[error("scenario parse error at party {party}, setting {setting}, twice_m={twice_m}: {reason}")]
    ScenarioParse {
        party: usize,
        setting: usize,
        twice_m: i32,
        reason: String,
    },
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
