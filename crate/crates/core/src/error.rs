use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("interval [{lo}, {hi}] has no interior to split")]
    DegenerateInterval { lo: f64, hi: f64 },

    #[error("parameter {t} outside curve domain [{lo}, {hi}]")]
    OutsideDomain { t: f64, lo: f64, hi: f64 },

    #[error("curve is a constant map on its domain")]
    ConstantCurve,

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("curve does not provide {0}")]
    Unsupported(&'static str),

    #[error("quadrature did not converge: estimate {estimate}, error bound {error}")]
    QuadratureNotConverged { estimate: f64, error: f64 },

    #[error("support direction must be nonzero")]
    ZeroDirection,

    #[error("invalid obstacle: {0}")]
    InvalidObstacle(String),

    #[error("arc length bound {major} is shorter than chord {chord}")]
    BrokenArcLengthBound { major: f64, chord: f64 },

    #[error("GJK hit its iteration cap with distance in [{lower}, {upper}]")]
    GjkIterationLimit { lower: f64, upper: f64 },

    #[error("{0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid query configuration: {0}")]
    InvalidConfig(String),

    #[error("query undecided after {iterations} iterations, distance in [{lower}, {upper}]")]
    Indeterminate {
        lower: f64,
        upper: f64,
        iterations: usize,
    },
}

impl Error {
    /// Whether the error stems from malformed or inconsistent input rather than from a computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInterval { .. }
                | Error::DegenerateInterval { .. }
                | Error::OutsideDomain { .. }
                | Error::ConstantCurve
                | Error::InvalidCurve(_)
                | Error::Unsupported(_)
                | Error::ZeroDirection
                | Error::InvalidObstacle(_)
                | Error::Parse(_)
                | Error::DimensionMismatch { .. }
                | Error::InvalidConfig(_)
        )
    }
}
