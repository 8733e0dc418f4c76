//! Shared error type for construction, evaluation, and integration routines.

/// Parse failure for a configuration file, with enough context to point at
/// the offending line and key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    /// 1-based line number the error was detected on (0 when the problem is
    /// not tied to a single line, e.g. a missing section).
    pub line: usize,
    /// Key or section name involved, when one applies.
    pub key: Option<String>,
    /// Human-readable description of what went wrong.
    pub message: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (&self.key, self.line) {
            (Some(key), 0) => write!(f, "config: key '{key}': {}", self.message),
            (Some(key), n) => write!(f, "config line {n}: key '{key}': {}", self.message),
            (None, 0) => write!(f, "config: {}", self.message),
            (None, n) => write!(f, "config line {n}: {}", self.message),
        }
    }
}

/// Errors produced by the library.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An input value lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation was requested exactly on the beam axis, where the azimuthal
    /// phase gradient of a vortex mode diverges.
    #[error("singular point: azimuthal phase gradient diverges on the beam axis for a nonzero winding number")]
    SingularOnAxis,

    /// The operation is not defined for this parameter combination.
    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    /// A root bracket does not straddle a sign change.
    #[error("no sign change over bracket [{lo}, {hi}]: F(lo) = {f_lo:e} N, F(hi) = {f_hi:e} N")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// The requested time step violates the explicit-integrator stability bound.
    #[error("time step {dt:e} s exceeds the stability bound {bound:e} s (0.1 * mass / damping)")]
    UnstableStep { dt: f64, bound: f64 },

    /// A force evaluation returned a non-finite value during integration; the
    /// fields carry the state at which the integrator gave up.
    #[error("non-finite force during integration at t = {t:e} s, z = {z:e} m, v = {v:e} m/s")]
    NonFiniteForce { t: f64, z: f64, v: f64 },

    /// A required configuration section is absent.
    #[error("configuration is missing the [{0}] section required by this operation")]
    MissingSection(&'static str),

    /// Configuration text failed to parse.
    #[error("{0}")]
    Config(#[from] ConfigError),

    /// A name was not found in a registry; lists the accepted names.
    #[error("unknown name '{given}'; expected one of: {}", known.join(", "))]
    UnknownName { given: String, known: Vec<&'static str> },

    /// Underlying I/O failure, stringified so the error stays cloneable.
    #[error("i/o error: {0}")]
    Io(String),
}

impl std::error::Error for ConfigError {}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
