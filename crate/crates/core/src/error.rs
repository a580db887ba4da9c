use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter that must be a (nonnegative) integer is not, e.g. `βa/2`.
    #[error("parameter quantization: {0}")]
    ParameterQuantization(String),

    #[error("lower parameter pole at partition {partition}: denominator Pochhammer vanishes")]
    LowerParameterPole { partition: String },

    #[error("catastrophic cancellation: condition number {condition:.3e} exceeds {limit:.1e}")]
    Cancellation { condition: f64, limit: f64 },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence: {what} (achieved error estimate {estimate:.3e})")]
    NonConvergence { what: String, estimate: f64 },

    #[error("branch inconsistency: {0}")]
    BranchInconsistency(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// `true` for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Cancellation { .. }
                | Error::NonConvergence { .. }
                | Error::BranchInconsistency(_)
                | Error::LowerParameterPole { .. }
                | Error::Resource(_)
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::ParameterQuantization(_) => "parameter_quantization",
            Error::LowerParameterPole { .. } => "lower_parameter_pole",
            Error::Cancellation { .. } => "cancellation",
            Error::Resource(_) => "resource",
            Error::Domain(_) => "domain",
            Error::NonConvergence { .. } => "nonconvergence",
            Error::BranchInconsistency(_) => "branch_inconsistency",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}

/// Returns `round(x)` when `x` is within `1e-9` (relative) of a nonnegative
/// integer.
pub(crate) fn as_nonneg_integer(x: f64) -> Option<usize> {
    if !x.is_finite() || x < -1e-9 {
        return None;
    }
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.max(1.0) {
        Some(r as usize)
    } else {
        None
    }
}

pub(crate) fn require_nonneg_integer(x: f64, what: &str) -> Result<usize> {
    as_nonneg_integer(x)
        .ok_or_else(|| Error::ParameterQuantization(format!("{what} = {x} is not a nonnegative integer")))
}
