use thiserror::Error;

/// Errors produced anywhere in the simulator.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid or inconsistent scenario/sweep configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// Vector/matrix shapes do not line up.
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    Dimension {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    /// An argument lies outside the domain of a formula (e.g. non-positive distance).
    #[error("domain error: {0}")]
    Domain(String),

    /// The eigen/Cholesky solver failed or produced non-finite output.
    #[error("numerical solver failure: {0}")]
    Solver(String),

    /// A lower-level failure tagged with the trial that produced it.
    #[error("trial {trial} (seed {seed}): {source}")]
    Trial {
        trial: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True when the root cause is numerical rather than a bad configuration.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Solver(_) | Error::Domain(_) => true,
            Error::Trial { source, .. } => source.is_numerical(),
            _ => false,
        }
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
