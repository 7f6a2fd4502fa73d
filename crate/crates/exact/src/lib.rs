//! Exact scalars for Lie-algebra computations: rationals, multivariate
//! polynomials, rational functions in named parameters, and dense linear
//! algebra over either.

pub mod error;
pub mod field;
pub mod linalg;
pub mod matrix;
pub mod mpoly;
pub mod ratfun;
pub mod rational;
pub mod var;

pub use error::ExactError;
pub use field::Field;
pub use matrix::Matrix;
pub use mpoly::{poly_identically_zero, MPoly, Monomial};
pub use ratfun::{factor_poly, parse_rational_expr, ExprParser, RatFun};
pub use rational::Rational;
pub use var::Var;
