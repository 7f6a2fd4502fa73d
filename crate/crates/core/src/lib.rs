//! Lie algebras by structure constants and the left-invariant geometry built on
//! them: complex and symplectic structures, hypersymplectic triples and
//! Levi-Civita connections, all over exact rational-function scalars.

pub mod connection;
pub mod error;
pub mod forms;
pub mod hypersymplectic;
pub mod json;
pub mod lie;
pub mod salamon;
pub mod structures;

pub use error::{CoreError, Result};
pub use forms::KForm;
pub use lie::{LieAlgebra, Vector};

/// Scalars are rational functions in named parameters; plain rationals are the
/// constant case.
pub type Scalar = hsx_exact::RatFun;
