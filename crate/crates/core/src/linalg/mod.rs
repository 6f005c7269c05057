//! Exact field arithmetic and dense linear algebra.
//!
//! Everything above this layer reduces to [`rref`], [`rank`],
//! [`kernel_basis`] and [`solve`] over a single [`Field`].

mod echelon;
mod matrix;
mod rational;
mod scalar;

pub use echelon::{inverse, kernel_basis, rank, rref, solve, SolveResult};
pub use matrix::Matrix;
pub use rational::Rational;
pub use scalar::{Field, Scalar};
