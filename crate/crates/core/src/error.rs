use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("at least 2 nodes are required, got {0}")]
    TooFewNodes(usize),

    #[error("{nodes} nodes exceed the supported maximum of {max} for dense transition matrices")]
    TooManyNodes { nodes: usize, max: usize },

    /// Trace statistics that do not correspond to any edge-Markov process.
    #[error("cannot estimate parameters: {0}")]
    Estimation(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state distribution sums to {0}, expected 1")]
    NotADistribution(f64),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid flood request: {0}")]
    InvalidFlood(String),

    #[error("line {line}: {message}")]
    TraceParse { line: u64, message: String },

    #[error("trace contains no contact records")]
    EmptyTrace,

    #[error("trace too short: replay needs {needed} snapshots, trace has {available}")]
    TraceTooShort { needed: usize, available: usize },

    #[error("invalid replay configuration: {0}")]
    InvalidReplay(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be a probability in [0, 1]",
        })
    }
}
