use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degree {d} is below the ambient dimension n = {n}; no caliber k0 >= 1 exists")]
    DegreeTooSmall { n: u64, d: String },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("inhomogeneous polynomial: monomials of degrees {degrees:?} ({offending})")]
    Inhomogeneous { degrees: Vec<u32>, offending: String },

    #[error("twist mismatch: {0}")]
    TwistMismatch(String),

    #[error("entry ({row}, {col}) has degree {found}, expected {expected}")]
    EntryDegree {
        row: usize,
        col: usize,
        found: u32,
        expected: i64,
    },

    #[error("shape violates monotonicity: {0}")]
    Monotonicity(String),

    #[error("shape identity violated: {0}")]
    ShapeIdentity(String),

    #[error("non-generic hyperplane: {0}")]
    NonGenericHyperplane(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error("scalar domain error: {0}")]
    Domain(String),
}
