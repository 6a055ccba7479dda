use thiserror::Error;

/// Errors surfaced by state construction, analysis, and search routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vector has norm below the zero threshold")]
    ZeroVector,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid party dimensions: {0}")]
    InvalidDims(String),

    #[error("invalid bipartition: {0}")]
    InvalidCut(String),

    #[error("superposition coefficient is below the triviality threshold")]
    TrivialCoefficient,

    #[error("state must have party dimensions {expected:?}, got {got:?}")]
    WrongShape {
        expected: Vec<usize>,
        got: Vec<usize>,
    },

    #[error("state is completely product; nothing to collapse")]
    NotEntangled,

    #[error("state is not genuinely entangled")]
    NotGenuinelyEntangled,

    #[error("subspace basis is not orthonormal (max deviation {0:.3e})")]
    NonOrthonormalBasis(f64),

    #[error("nonorthogonality target lies outside the subspace (residual {0:.3e})")]
    ConstraintOutsideSubspace(f64),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("state does not factor as qubit x entangled pair across the required cut")]
    NotBiseparable,

    #[error("state does not carry the qubit-cut structure required here")]
    MissingStructure,

    #[error("index {index} out of range for set of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    MalformedJson(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code, used by the CLI's error envelope.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroVector => "zero_vector",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::InvalidDims(_) => "invalid_dims",
            Error::InvalidCut(_) => "invalid_cut",
            Error::TrivialCoefficient => "trivial_coefficient",
            Error::WrongShape { .. } => "wrong_shape",
            Error::NotEntangled => "not_entangled",
            Error::NotGenuinelyEntangled => "not_genuinely_entangled",
            Error::NonOrthonormalBasis(_) => "non_orthonormal_basis",
            Error::ConstraintOutsideSubspace(_) => "constraint_outside_subspace",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::NotBiseparable => "not_biseparable",
            Error::MissingStructure => "missing_structure",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::Io(_) => "io_error",
            Error::MalformedJson(_) => "malformed_json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
