use thiserror::Error;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("point lies on hyperplane {0} (1-based)")]
    OnHyperplane(usize),

    #[error("torus element has a zero entry at position {0} (1-based)")]
    ZeroScale(usize),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("face {face} is not a facet of {of}")]
    NotFacet { face: usize, of: usize },

    #[error("invalid subdivision: {0}")]
    InvalidSubdivision(String),

    #[error("subdivision is not a matroid decomposition: {0}")]
    NotMatroidal(String),

    #[error("bad index set: {0}")]
    BadIndex(String),

    #[error("expected exactly one maximal cell containing the face, found {count}")]
    NotUnique { count: usize },

    #[error("quotient cone is not simplicial ({rays} rays in dimension {dim})")]
    NotSimplicial { rays: usize, dim: usize },

    #[error("quotient cone generators have determinant {det}, not a lattice basis")]
    NotUnimodular { det: String },

    #[error("gluing data violates the cocycle condition: {0}")]
    BadGluing(String),

    #[error("relative chain complex: {0}")]
    NotSubcomplex(String),

    #[error("arrangement is not in general position")]
    OnDegenerate,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
