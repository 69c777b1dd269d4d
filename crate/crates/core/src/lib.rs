//! Sextic resolvents of quintic rings over ℤ, ℚ and prime fields.

pub mod corelin;
pub mod error;
pub mod exterior;
pub mod fieldres;
pub mod json;
pub mod latres;
pub mod quintic;
pub mod registry;
pub mod resolvent;
pub mod selfcheck;

pub use corelin::{ExactMatrix, IntegerLattice, RationalLattice, Scalar, ScalarRing};
pub use error::{Error, Result};
