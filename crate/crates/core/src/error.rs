use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is not symmetric: entry ({row},{col}) differs from ({col},{row})")]
    Asymmetric { row: usize, col: usize },

    #[error("empty restriction")]
    EmptyRestriction,

    #[error("not a permutation of the domain")]
    NotAPermutation,

    #[error("{0}")]
    Domain(String),

    #[error("relations do not compose: middle sets {left} and {right} differ")]
    Mismatch { left: String, right: String },

    #[error("domain too large for exact decider")]
    DomainTooLarge,

    #[error("formula valid only for k > |D| (k = {k}, |D| = {size})")]
    SmallGadget { k: usize, size: usize },

    #[error("instance too large for oracle: {states} states exceed the 2^{bits} budget")]
    Budget { states: String, bits: u32 },

    #[error("inconsistent counts: {0}")]
    Inconsistent(String),

    #[error("graph error at line {line}: {msg}")]
    Graph { line: usize, msg: String },

    #[error("graph is not bipartite with respect to the given bipartition: {0}")]
    NotBipartite(String),

    #[error("use full pipeline for matrices larger than 3x3")]
    UseFullPipeline,

    #[error("report error: {0}")]
    Report(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Error {
        Error::Parse(msg.into())
    }
}
