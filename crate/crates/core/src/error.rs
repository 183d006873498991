use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),
    #[error("table has no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: u128, cap: usize },
    #[error("malformed group table: {0}")]
    InvalidTable(String),
    #[error("malformed permutation: {0}")]
    InvalidPermutation(String),
    #[error("map is not an injective homomorphism: {0}")]
    NotAnEmbedding(String),
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("series has zero constant term and is not invertible")]
    NonUnitConstantTerm,
    #[error("simplex set is not closed under faces: {0:?} is missing")]
    NotFaceClosed(Vec<usize>),
    #[error("element {element} maps simplex {simplex:?} outside the complex")]
    ActionNotSimplicial { element: usize, simplex: Vec<usize> },
    #[error("element {element} fixes simplex {simplex:?} setwise but not pointwise")]
    IrregularAction { element: usize, simplex: Vec<usize> },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn cap(order: u128, cap: usize) -> Self {
        Error::OrderCapExceeded { order, cap }
    }
}
