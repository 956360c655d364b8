//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite entry in input vector")]
    NonFiniteInput,

    #[error("anchor tuple is linearly dependent (relative singular value {sigma_ratio:e})")]
    DependentAnchors { sigma_ratio: f64 },

    #[error("invalid order n={order} for dimension d={dimension}: need 2 <= n <= d")]
    InvalidOrder { order: usize, dimension: usize },

    #[error("degenerate space: the complement of the anchor span is trivial")]
    DegenerateSpace,

    #[error("functional does not annihilate the anchor span (relative component {component:e}); it is unbounded with respect to the anchored seminorm")]
    UnboundedFunctional { component: f64 },

    #[error("anchored seminorm of the input vanishes; the identity degenerates to 0 = 0")]
    DegenerateSeminorm,

    #[error("exponent must lie in (1, infinity), got {p}")]
    InvalidExponent { p: f64 },

    #[error("family cardinality mismatch: {left} vs {right}")]
    CardinalityMismatch { left: usize, right: usize },

    #[error("families are incompatible: {0}")]
    IncompatibleFamilies(String),

    #[error("family is not a p-frame (lower bound {lower:e} below threshold)")]
    NotAFrame { lower: f64 },

    #[error("family is not tight: bounds {lower:e} and {upper:e} differ beyond tolerance")]
    NotTight { lower: f64, upper: f64 },

    #[error("perturbation direction must be nonzero")]
    ZeroPerturbation,

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("objective returned a non-finite value at {point:?}")]
    NonFiniteObjective { point: Vec<f64> },

    #[error("empty family: at least one member is required")]
    EmptyFamily,
}

pub type Result<T> = std::result::Result<T, Error>;
