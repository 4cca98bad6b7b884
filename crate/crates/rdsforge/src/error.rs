use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by constructors and checks.
///
/// Verdict-style functions (`is_apn`, `check_rds`, ...) never use errors to
/// report a negative verdict; errors mean the question itself was malformed.
#[derive(Debug)]
pub enum Error {
    /// Extension degree outside the supported range 2..=24.
    DegreeOutOfRange(u32),
    /// Polynomial does not define GF(2^n): wrong degree or reducible.
    BadModulus { n: u32, poly: u32 },
    /// Zero has no multiplicative inverse.
    ZeroInverse,
    /// Requested inverse of an exponent not coprime to the modulus.
    ExponentNotInvertible { e: u64, modulus: u64 },
    /// A field element outside [0, 2^n) for the field in use.
    ElementOutOfRange { value: u64, bits: u32 },
    /// Family constructor requires odd extension degree.
    EvenDegree { n: u32 },
    /// A parameter that must be nonzero was zero.
    ZeroParameter(&'static str),
    /// gamma lies in {x^2 + alpha*x}, which the construction forbids.
    GammaInLinearizedImage,
    /// Tr(beta * alpha) = 0 where the construction requires 1.
    TraceConditionFailed,
    /// Monomial exponent index violates its constraints.
    BadExponentIndex(String),
    /// Missing or unknown parameter for a function family.
    BadFamilyParams(String),
    /// Two tables built over different field contexts were combined.
    SpecMismatch,
    /// Value table has the wrong length or out-of-range entries.
    BadTable(String),
    /// The affine witness or offset table is not affine/bijective as required.
    NotAffine(&'static str),
    /// A candidate forbidden set is not a subgroup of (F_2^n, +).
    NotSubgroup { witness: u32 },
    /// The set handed to a difference count was empty.
    EmptySet,
    /// Truth table is not quadratic: the derived pairing fails bilinearity.
    NotQuadratic { x: u32, y: u32 },
    /// Sweep job rejected before any work was scheduled.
    InvalidJob(String),
    /// Resume file does not match the job signature.
    IncompatibleResume(String),
    /// Verification range must satisfy 3 <= n_max <= 13.
    BadVerifyRange(u32),
    Io(std::io::Error),
    Json(serde_json::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegreeOutOfRange(n) => {
                write!(f, "extension degree {n} outside supported range 2..=24")
            }
            Error::BadModulus { n, poly } => {
                write!(f, "0x{poly:x} is not an irreducible degree-{n} polynomial")
            }
            Error::ZeroInverse => write!(f, "zero has no multiplicative inverse"),
            Error::ExponentNotInvertible { e, modulus } => {
                write!(f, "exponent {e} is not invertible modulo {modulus}")
            }
            Error::ElementOutOfRange { value, bits } => {
                write!(f, "element {value} does not fit in {bits} bits")
            }
            Error::EvenDegree { n } => write!(f, "family requires odd n, got n={n}"),
            Error::ZeroParameter(name) => write!(f, "parameter {name} must be nonzero"),
            Error::GammaInLinearizedImage => {
                write!(f, "gamma lies in the linearized image {{x^2 + alpha*x}}")
            }
            Error::TraceConditionFailed => write!(f, "trace condition Tr(beta*alpha) = 1 failed"),
            Error::BadExponentIndex(msg) => write!(f, "bad exponent index: {msg}"),
            Error::BadFamilyParams(msg) => write!(f, "bad family parameters: {msg}"),
            Error::SpecMismatch => write!(f, "tables belong to different field contexts"),
            Error::BadTable(msg) => write!(f, "bad value table: {msg}"),
            Error::NotAffine(what) => write!(f, "{what} is not affine as required"),
            Error::NotSubgroup { witness } => {
                write!(f, "forbidden set is not xor-closed (witness element {witness})")
            }
            Error::EmptySet => write!(f, "difference counts need a nonempty set"),
            Error::NotQuadratic { x, y } => {
                write!(f, "truth table has degree > 2 (bilinearity fails at x={x}, y={y})")
            }
            Error::InvalidJob(msg) => write!(f, "invalid sweep job: {msg}"),
            Error::IncompatibleResume(msg) => write!(f, "incompatible resume: {msg}"),
            Error::BadVerifyRange(n) => {
                write!(f, "verification cap must satisfy 3 <= n-max <= 13, got {n}")
            }
            Error::Io(e) => write!(f, "i/o error: {e}"),
            Error::Json(e) => write!(f, "json error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            Error::Json(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e)
    }
}
