use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed record `{0}`")]
    MalformedRecord(String),

    #[error("empty diagram text (use `Loop[1]` or unknot() for the trivial knot)")]
    EmptyDiagram,

    #[error("edge {label} is used {count} times (expected 2)")]
    EdgeCount { label: u32, count: usize },

    #[error("inconsistent orientation: {0}")]
    Orientation(String),

    #[error("diagram has {crossings} crossings, above the cap of {cap}")]
    CapExceeded { crossings: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown crossing id {0}")]
    UnknownCrossing(usize),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("link name: {0}")]
    LinkSpec(String),

    #[error("d∘d ≠ 0 at bidegree ({i},{j})")]
    NonzeroComposition { i: i32, j: i32 },

    #[error("consecutive maps do not compose to zero")]
    NonzeroProduct,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
