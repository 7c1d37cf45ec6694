use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n must be at least 1 (the trivial action is handled before enumeration)")]
    ZeroRank,

    #[error("k = {k} is smaller than n = {n}; normalize the action first")]
    KBelowN { n: usize, k: usize },

    #[error("the basepoint term is only defined for k - n odd (n = {n}, k = {k})")]
    UnsupportedParity { n: usize, k: usize },

    #[error("invalid shape {pivots:?} for n = {n}, k = {k}: {reason}")]
    InvalidShape {
        pivots: Vec<usize>,
        n: usize,
        k: usize,
        reason: &'static str,
    },

    #[error("boundary in degree {degree} is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    BoundaryShape {
        degree: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },

    #[error("boundary composition is nonzero from degree {degree} to degree {}", degree - 2)]
    BoundarySquare { degree: usize },

    #[error("input homology has torsion in degree {degree}; L-assembly needs free homology")]
    TorsionInput { degree: usize },

    #[error("reduced homology requested for a complex with empty degree 0")]
    EmptyBasepoint,

    #[error("the sphere S(0) is empty; pass n > 0 or j > 0")]
    EmptySphere,

    #[error("torsion order does not fit in 64 bits")]
    TorsionOverflow,

    #[error("internal contradiction: {0}")]
    Contradiction(String),
}
