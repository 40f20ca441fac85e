//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Bernoulli inversion fell at or below the vacuum threshold.
    #[error("vacuum: enthalpy {w} at or below vacuum threshold {threshold}")]
    Vacuum { w: f64, threshold: f64 },

    /// Tabulated equation of state queried outside its sample range.
    #[error("extrapolation: density {rho} outside tabulated range [{lo}, {hi}]")]
    Extrapolation { rho: f64, lo: f64, hi: f64 },

    /// P''(1) = 0: the cubic coefficient vanishes and the shock model degenerates.
    #[error("degenerate equation of state: P''(1) = 0")]
    DegenerateEos,

    /// A time-step restriction was violated at runtime.
    #[error("step-size error: {0}")]
    StepSize(String),

    /// Too few usable samples for a fit.
    #[error("fit error: {0}")]
    Fit(String),

    /// A front collided, vanished, or left the grid; the run halts cleanly.
    #[error("topology change: {0}")]
    Topology(String),

    /// The Lax/determinism condition failed at a front.
    #[error("Lax condition violated: {0}")]
    Lax(String),

    /// Newton iteration did not converge.
    #[error("Newton solver did not converge: {0}")]
    NewtonDiverged(String),

    /// Configuration file problem, with key and line when known.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
