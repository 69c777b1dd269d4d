//! Exact scalars and small exact linear algebra.

pub mod lattice;
pub mod matrix;
pub mod scalar;

pub use lattice::{IntegerLattice, RationalLattice};
pub use matrix::ExactMatrix;
pub use scalar::{Scalar, ScalarRing};
