use crate::hexsys::HexCell;

/// Errors produced by any clarcube operation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid system: {0}")]
    Validation(String),

    #[error("cell set is disconnected: {a} and {b} lie in different parts")]
    DisconnectedCells { a: HexCell, b: HexCell },

    #[error("unknown catalog name `{0}`")]
    UnknownCatalog(String),

    #[error("catalog entry `{name}` requires parameter `{param}`")]
    MissingParam { name: String, param: &'static str },

    #[error("random catafusene generation gave up after {retries} retries")]
    RandomCataExhausted { retries: usize },

    #[error("{what} cap of {cap} exceeded")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("{what} bound of {bound} exceeded (got {got})")]
    SizeBound {
        what: &'static str,
        bound: usize,
        got: usize,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("no Clar cover exists: the system has no perfect matching")]
    NoClarCover,

    #[error("directed cycle found through matchings {0:?}")]
    DirectedCycle(Vec<usize>),

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
