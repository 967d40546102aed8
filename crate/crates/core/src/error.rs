use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("composition parts must be positive: {0:?}")]
    ZeroPart(Vec<usize>),
    #[error("cannot parse composition {0:?}")]
    ParseComposition(String),
    #[error("zero element has no leading term")]
    ZeroElement,
    #[error("constant element: {0}")]
    ConstantElement(&'static str),
    #[error("not a partial order: relation contains a cycle through element {0}")]
    NotPartialOrder(usize),
    #[error("element index {index} out of range for poset of size {size}")]
    OutOfRange { index: usize, size: usize },
    #[error("poset too large: {size} elements exceeds the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("labeling is not a bijection onto 1..={0}")]
    BadLabeling(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid qsym json: {0}")]
    Json(String),
}
