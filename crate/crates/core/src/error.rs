use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a prime power: {q} = {factorization}")]
    NotPrimePower { q: u64, factorization: String },

    #[error("field order {0} out of range (must be 2..=65536)")]
    FieldTooLarge(u64),

    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("line {line}: position {pos} invalid with {strands} strands")]
    InvalidPosition { line: usize, pos: usize, strands: usize },

    #[error("unbalanced cusps: {0} strands remain at the right end")]
    Unbalanced(usize),

    #[error("line {0}: not in plat position (event after a right cusp)")]
    NotPlat(usize),

    #[error("no basepoint")]
    NoBasepoint,

    #[error("line {0}: multiple basepoints")]
    MultipleBasepoints(usize),

    #[error("diagram has {0} components, expected a knot")]
    MultipleComponents(usize),

    #[error("rotation number is {0}, a Maslov potential is required")]
    NonzeroRotation(i64),

    #[error("unknown catalog entry: {0}")]
    UnknownCatalog(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("non-composable chain: {0}")]
    NonComposable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
