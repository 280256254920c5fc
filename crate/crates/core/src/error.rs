use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// rho = -1 makes both reductions divide by zero.
    #[error("relative scale factor rho = {rho} is singular (rho + 1 = 0)")]
    SingularRatio { rho: f64 },

    #[error("{what} must be non-negative and finite, got {value}")]
    NegativeInertia { what: &'static str, value: f64 },

    #[error("invalid parameter {what}: {reason}")]
    InvalidParameter { what: &'static str, reason: String },

    #[error("slider position {x} m lies outside the stroke [{min}, {max}] m")]
    OutOfStroke { x: f64, min: f64, max: f64 },

    #[error("dead-center configuration at theta = {theta} rad (|dx/dtheta| = {kic:e} m/rad)")]
    DeadCenter { theta: f64, kic: f64 },

    #[error("{what} must be positive, got {value}")]
    NonPositiveLimit { what: &'static str, value: f64 },

    #[error("rho interval [{min}, {max}] contains the singular value -1")]
    IntervalContainsSingularity { min: f64, max: f64 },

    #[error("allocation policy {policy} needs a non-zero {reduction} reduction")]
    DegeneratePolicy {
        policy: &'static str,
        reduction: &'static str,
    },

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("rho = {rho}: {source}")]
    Sweep {
        rho: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            what,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn csv(path: impl Into<PathBuf>, source: csv::Error) -> Self {
        Error::Csv {
            path: path.into(),
            source,
        }
    }

    /// Innermost error, looking through sweep tags.
    pub fn root(&self) -> &Error {
        match self {
            Error::Sweep { source, .. } => source.root(),
            other => other,
        }
    }
}

pub(crate) fn check_inertia(what: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::NegativeInertia { what, value })
    }
}
