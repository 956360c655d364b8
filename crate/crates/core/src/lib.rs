//! Frame machinery for finite-dimensional n-normed spaces: anchored
//! seminorms, bounded b-linear functionals, p-frame families with
//! certified optimal bounds, canonical duals, Cartesian products, and
//! checkers for the quantitative perturbation/stability envelopes.

pub mod error;
pub mod frame;
pub mod functional;
pub mod linalg;
pub mod optimizer;
pub mod scalar;
pub mod space;

pub use error::{Error, Result};
pub use frame::{
    cartesian_product, BoundsMethod, FrameBounds, PFrameFamily, ProductFamily, QDualFamily,
};
pub use functional::{BFunctional, Policy};
pub use optimizer::{ExtremumResult, Mode, OptimizerConfig, SphereObjective};
pub use scalar::Scalar;
pub use space::{gram_volume, AnchorTuple, NSpace, Vector};

/// Default-precision aliases.
pub type BFunctional64 = BFunctional<f64>;
pub type PFrameFamily64 = PFrameFamily<f64>;
pub type FrameBounds64 = FrameBounds<f64>;

/// Default-precision aliases.
pub type NSpace64 = NSpace<f64>;
pub type Vector64 = Vector<f64>;

/// Single-precision aliases.
pub type NSpace32 = NSpace<f32>;
pub type Vector32 = Vector<f32>;
