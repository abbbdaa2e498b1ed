use thiserror::Error;

/// Errors produced by the spinbus library.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid argument or parameter outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative solver failed to reach its tolerance.
    #[error("{summary}: residual {residual:.3e} after {iterations} iterations")]
    Convergence {
        summary: String,
        residual: f64,
        iterations: usize,
    },

    /// Requested problem size exceeds the configured dense/memory budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// Invalid CLI configuration.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Process exit code for the CLI: 1 validation, 2 config, 3 non-convergence.
    /// A blown size budget counts as a config error: the request was infeasible.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Budget(_) => 2,
            Error::Convergence { .. } => 3,
            _ => 1,
        }
    }
}
