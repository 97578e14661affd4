use thiserror::Error;

use crate::term::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("query point lies outside the convex hull of the vertices")]
    OutsideHull,

    #[error("vertex set is affinely dependent")]
    DegenerateVertices,

    #[error("element {elem} does not belong to {algebra}")]
    Mismatch { algebra: String, elem: String },

    #[error("{algebra} is not finite")]
    NotFinite { algebra: String },

    #[error("operation not supported for {algebra}: {what}")]
    Unsupported { algebra: String, what: String },

    #[error("invalid MV table: {0}")]
    InvalidTable(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("invalid piecewise-linear function: {0}")]
    InvalidPwl(String),

    #[error("not a good sequence: {0}")]
    NotGoodSequence(String),

    #[error("not a probability map: {0}")]
    NotProbabilityMap(String),

    #[error("not an ideal: {0}")]
    NotIdeal(String),

    #[error("state decomposition infeasible: {0}")]
    Infeasible(String),

    #[error("matrix is not stochastic: {0}")]
    NonStochastic(String),

    #[error("map is not represented by a stochastic matrix: {0}")]
    NotRepresentable(String),

    #[error("codomain is not semisimple")]
    NotSemisimple,

    #[error("search budget of {0} nodes exceeded")]
    Budget(u64),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("free interpretation needs at most one variable, found {0:?}")]
    TooManyVariables(Vec<String>),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
