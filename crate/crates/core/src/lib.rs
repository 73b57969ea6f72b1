//! Tensor products of representations of Dynkin quivers.
//!
//! The crate decomposes explicit representations of type A and D quivers,
//! computes tensor powers through a fusion table of indecomposables, evaluates
//! closed forms for the number of summands `b_n`, and implements the
//! `Delta`-tensor product attached to a partitioning morphism.
//!
//! Matrix code is generic over [`scalar::Scalar`]; the aliases below fix the
//! usual choices.

pub mod decompose;
pub mod delta;
pub mod error;
pub mod formulas;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod roots;
pub mod sampling;
pub mod scalar;
pub mod shape;
pub mod verify;

pub use decompose::{Decomposition, FusionTable};
pub use error::{Error, Result};
pub use quiver::{Arrow, DimVector, Quiver};
pub use roots::{Root, RootKind, RootSystem};
pub use scalar::Scalar;
pub use shape::{detect_shape, Dynkin, ShapeInfo};

/// Exact scalars.
pub type Rational = num_rational::BigRational;

pub type ExactMatrix = linalg::Matrix<Rational>;
pub type ExactRep = rep::Representation<Rational>;
pub type ExactDecomposer = decompose::Decomposer<Rational>;

/// Fixed-width rationals; overflow panics.
pub type SmallRep = rep::Representation<num_rational::Rational64>;

/// Floating-point entries with a rank tolerance; fine for small inputs.
pub type FloatMatrix = linalg::Matrix<f64>;
pub type FloatRep = rep::Representation<f64>;
