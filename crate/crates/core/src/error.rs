use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rank must be at least 2, got {0}")]
    InvalidRank(usize),
    #[error("rank {got} not supported here (expected {expected})")]
    UnsupportedRank { got: usize, expected: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("eigenvalues too close for stable evaluation (separation {0:e})")]
    Degenerate(f64),
    #[error("torus point lies on a wall; pick a regular point")]
    SingularPoint,
    #[error("truncation unsound: term of order {found} dropped below order {order}")]
    TruncationUnsound { found: usize, order: usize },
    #[error("pole at or near {0}")]
    Pole(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("requested tolerance {requested:e} not reached, achieved {achieved:e}")]
    Precision { requested: f64, achieved: f64 },
    #[error("contour invalid: {0}")]
    Contour(String),
}

pub type Result<T> = std::result::Result<T, Error>;
