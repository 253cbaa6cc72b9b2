use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime below 2^32")]
    InvalidModulus(u64),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parametrization is rank deficient (rank {rank}, need {needed})")]
    DegenerateParametrization { rank: usize, needed: usize },
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("degree {0} is not supported here")]
    UnsupportedDegree(u32),
    #[error("subspace dimension {m} exceeds ambient dimension {n}")]
    DimensionOutOfRange { m: usize, n: usize },
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("object is contained in the hyperplane")]
    ImproperIntersection,
    #[error("point does not meet the hyperplane")]
    EmptyIntersection,
    #[error("object is not contained in the given subspace")]
    NotContained,
    #[error("expected a hyperplane (dimension {expected}), got dimension {found}")]
    NotAHyperplane { expected: usize, found: usize },
    #[error("empty list of objects")]
    EmptyList,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("residual of a jet point whose tangent space lies in the hyperplane is not supported")]
    UnsupportedResidual,
    #[error("parameter bounds violated: {0}")]
    ParameterBounds(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("sampler failed to produce a generic object after {0} attempts")]
    SamplingExhausted(usize),
}
