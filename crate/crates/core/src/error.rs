//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TilingError {
    #[error("basis is singular (determinant zero)")]
    SingularBasis,

    #[error("dimension mismatch: expected {expected:?}, got {got:?}")]
    DimensionMismatch {
        expected: crate::point::Dim,
        got: crate::point::Dim,
    },

    #[error("directions are commensurable (wedge product is zero)")]
    CommensurableDirections,

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("zero direction where a nonzero direction is required")]
    ZeroDirection,

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("decomposition identity failed: {0}")]
    DecompositionMismatch(String),

    #[error("single commensurability class; the decomposition is already one-periodic")]
    SingleClass,

    #[error("incompatible lattices: {0}")]
    IncompatibleLattices(String),

    #[error("the Tijdeman variant only applies to level-one tilings")]
    TijdemanRequiresLevelOne,

    #[error("no valid period direction found on coset {0}; this indicates a bug for valid level-one inputs")]
    NoDirectionFound(String),

    #[error("parts are not disjoint")]
    PartsNotDisjoint,

    #[error("input does not tile at level one")]
    NotLevelOne,

    #[error("render window exceeds the configured pixel cap")]
    WindowTooLarge,

    #[error("state space too large for the boundary automaton: {0}")]
    StateSpaceTooLarge(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
