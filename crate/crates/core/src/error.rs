use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the algebra, linear-algebra, group and scenario layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("invalid algebra specification: {0}")]
    InvalidSpec(String),

    #[error("element is not homogeneous (found degrees {0} and {1})")]
    Inhomogeneous(u32, u32),

    #[error("expected an element of degree {expected}, found degree {found}")]
    WrongDegree { expected: u32, found: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid algebra map: {0}")]
    InvalidMap(String),

    #[error("operation needs every generator in degree 1, but {0} has degree {1}")]
    UnsupportedGenerator(String, u32),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("composition g*f is nonzero in column {column}")]
    NotAComplex { column: usize },

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("generators must all have dimension {expected}, found {found}")]
    MixedDimension { expected: usize, found: usize },

    #[error("matrices larger than 8x8 are not supported (got {0})")]
    MatrixTooLarge(usize),

    #[error("subgroup search exhausted after seeds {first}..{last} without finding {wanted}")]
    SearchExhausted {
        first: u64,
        last: u64,
        wanted: String,
    },

    #[error("named class {name}: {reason} (invariant dimension {dim} in degree {degree})")]
    NamedClass {
        name: String,
        degree: u32,
        dim: usize,
        reason: String,
    },

    #[error("structure theorem {name}: negative dimension {value} in degree {degree} (term contributions {partials:?})")]
    NegativeDimension {
        name: String,
        degree: u32,
        value: i64,
        partials: Vec<i64>,
    },

    #[error("module action violates {0}")]
    ModuleInvariant(String),

    #[error("differential not well defined: d({relation}) leaves the ideal in degree {degree}")]
    IllDefinedDifferential { relation: String, degree: u32 },

    #[error("unknown scenario {name:?}; valid names: {valid}")]
    UnknownScenario { name: String, valid: String },

    #[error("fixture {path} is missing; run `f2coh discover --seed 0` to regenerate it")]
    FixtureMissing { path: PathBuf },

    #[error("fixture {path}: {reason}")]
    BadFixture { path: PathBuf, reason: String },

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
