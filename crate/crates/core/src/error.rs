use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate interpolation nodes: {0}")]
    DuplicateNodes(String),
    #[error("mixed Grassmann arities: {0} vs {1}")]
    MixedArity(usize, usize),
    #[error("generator index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("bad family parameters: {0}")]
    BadParameters(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis vector {0} is not a simultaneous eigenvector of the Cartan basis")]
    NotDiagonal(usize),
    #[error("subspace is not stable under the acting subalgebra")]
    NotAModule,
    #[error("iterated brackets did not close within the eigenvalue count")]
    NotSemisimpleAction,
    #[error("odd weight spaces of {0} are not all one-dimensional")]
    OddSpacesNotOneDim(String),
    #[error("generator recipe failed to produce the whole algebra: {0}")]
    ConstructionFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
