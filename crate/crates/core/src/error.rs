//! Error types shared by all modules.

use thiserror::Error;

/// Errors produced by lattice algebra, graph construction, and search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A square matrix used as a lattice basis has determinant zero.
    #[error("singular matrix: a lattice basis must have nonzero determinant")]
    SingularLattice,

    /// Input rows do not span a full-rank sublattice of `Z^n`.
    #[error("rank-deficient input: rows do not span a full-rank lattice")]
    RankDeficient,

    /// Vector or coordinate length does not match the expected dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A 2x2 matrix is not representable as an L-shaped tile.
    #[error("not an L-shaped tile: {0}")]
    NotAnLTile(String),

    /// Operation precondition violated (wrong bound form, non-involution
    /// quotient, out-of-range symmetry shift, ...).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// BFS from the origin left vertices uncovered; the diameter is undefined.
    #[error("not strongly connected: {unreached} of {order} vertices unreachable from 0")]
    NotStronglyConnected { unreached: usize, order: usize },

    /// Generator set contains zero, duplicates, or malformed coordinates.
    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),

    /// Degenerate or out-of-range numeric parameter.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
