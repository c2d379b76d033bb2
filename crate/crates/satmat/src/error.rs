use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bad matrix text: {0}")]
    ParseMatrix(String),

    #[error("bad permutation: {0}")]
    ParsePermutation(String),

    #[error("cell ({0}, {1}) is already 1")]
    CellAlreadyOne(usize, usize),

    #[error("matrix already contains the pattern")]
    AlreadyContains,

    #[error("matrix is {rows}x{cols}; middle padding needs odd dimensions")]
    EvenDimensions { rows: usize, cols: usize },

    #[error("{op} is exhaustive and refuses {given} cells (limit {limit})")]
    BudgetExceeded {
        op: &'static str,
        limit: usize,
        given: usize,
    },

    #[error("census is exhaustive only up to k = {limit}, got k = {given}")]
    CensusTooLarge { limit: usize, given: usize },

    #[error("no matrix of this size avoids the pattern")]
    NoAvoidingMatrix,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
