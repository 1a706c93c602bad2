//! Numeric differential geometry of the real Jacobi group SL(2,ℝ) ⋉ H₁ and its
//! homogeneous spaces: the Siegel–Jacobi upper half-plane, its 5-dimensional
//! extension and the group itself, with their invariant metrics, fundamental
//! vector fields, Killing-equation residuals and geodesic-vector analysis.

pub mod error;
pub mod numerics;

pub mod algebra;
pub mod group;
pub mod sample;

pub mod actions;
pub mod charts;
pub mod geodesics;
pub mod geometry;
pub mod metrics;

pub mod verify;

pub use error::{Error, Result};
