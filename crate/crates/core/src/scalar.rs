//! Scalar abstraction: the whole library is generic over the real scalar
//! type through `num-traits`, with `f64` as the working default.
//!
//! Structural tolerances (rank decisions, tightness, verdict thresholds)
//! live here as associated functions so that each scalar type carries
//! thresholds matched to its precision.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar the library computes with.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Relative singular-value threshold for rank decisions
    /// (anchor independence, pseudo-inverse truncation).
    fn rank_rel_tol() -> Self;

    /// Relative tolerance on anchor components when constructing a
    /// functional under the strict policy.
    fn strict_rel_tol() -> Self;

    /// Relative tolerance deciding whether a frame is tight (A = B).
    fn tight_rel_tol() -> Self;

    /// Scale-free frame verdict threshold: a family is a frame when
    /// its lower bound exceeds this times its upper bound.
    fn frame_rel_threshold() -> Self;

    /// Projected-gradient norm tolerance for the sphere optimizer.
    fn opt_grad_tol() -> Self;

    /// Value tolerance of the optimizer; hypothesis margins within ten
    /// times this (scaled) are inconclusive.
    fn opt_value_tol() -> Self;

    /// Final angular resolution of the low-dimension grid cross-check.
    fn grid_resolution() -> Self;

    /// Residual tolerance for reconstruction / functional identities.
    fn residual_tol() -> Self;

    /// Residual tolerance for operator intertwining identities.
    fn intertwine_tol() -> Self;

    /// Relative tolerance for predicted-envelope assertions.
    fn envelope_rel_tol() -> Self;
}

/// Shorthand for converting an `f64` constant into the scalar type.
#[inline]
pub fn real<S: Scalar>(v: f64) -> S {
    S::from_f64(v).expect("f64 constant must convert into the scalar type")
}

impl Scalar for f64 {
    fn rank_rel_tol() -> Self {
        1e-10
    }
    fn strict_rel_tol() -> Self {
        1e-10
    }
    fn tight_rel_tol() -> Self {
        1e-8
    }
    fn frame_rel_threshold() -> Self {
        1e-9
    }
    fn opt_grad_tol() -> Self {
        1e-10
    }
    fn opt_value_tol() -> Self {
        1e-9
    }
    fn grid_resolution() -> Self {
        1e-3
    }
    fn residual_tol() -> Self {
        1e-9
    }
    fn intertwine_tol() -> Self {
        1e-8
    }
    fn envelope_rel_tol() -> Self {
        1e-6
    }
}

impl Scalar for f32 {
    fn rank_rel_tol() -> Self {
        1e-5
    }
    fn strict_rel_tol() -> Self {
        1e-5
    }
    fn tight_rel_tol() -> Self {
        1e-4
    }
    fn frame_rel_threshold() -> Self {
        1e-4
    }
    fn opt_grad_tol() -> Self {
        1e-6
    }
    fn opt_value_tol() -> Self {
        1e-4
    }
    fn grid_resolution() -> Self {
        1e-3
    }
    fn residual_tol() -> Self {
        1e-4
    }
    fn intertwine_tol() -> Self {
        1e-4
    }
    fn envelope_rel_tol() -> Self {
        1e-3
    }
}
