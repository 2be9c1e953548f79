use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("matrix for n = {n} needs about {needed_mib} MiB, over the {budget_mib} MiB budget")]
    MemoryBudget {
        n: usize,
        needed_mib: u64,
        budget_mib: u64,
    },

    #[error("missing D values for arguments {0:?}")]
    MissingDValues(Vec<usize>),

    #[error("internal limit exceeded: {0}")]
    InternalLimit(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
