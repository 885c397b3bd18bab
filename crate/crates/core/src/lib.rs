//! Orthogonal projections of infinite round cones onto subspaces of `R^n`.
//!
//! [`projection::classify`] decides what `P[C(a, v, φ)]` is, [`witness`]
//! builds the extremal vectors that make the classification sharp,
//! [`reverse_cbs`] evaluates the underlying inequalities, and [`oracle`]
//! checks all of it against brute-force sampling.

pub mod cone;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod projection;
pub mod reverse_cbs;
pub mod witness;

pub use cone::{Flavor, RoundCone};
pub use error::{Error, Result};
pub use linalg::{Decomposition, Radians, RealVector, SubspaceBasis};
pub use projection::{ClassifierPolicy, ProjectionClass, ProjectionTag};
