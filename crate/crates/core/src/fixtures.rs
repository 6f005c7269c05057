//! The three reference modules used throughout the tests, the book and the
//! CLI's `--fixtures` output.
//!
//! * **A**: `R = k[x]/(x²)`, `M = k` with `x` acting by zero. `H¹` and `H²`
//!   are both one-dimensional and the cocycle `σ(x) = 1` is obstructed at
//!   order one.
//! * **B**: `R = M₂(k)` acting on column vectors. Matrix algebras are
//!   separable, so `H¹ = H² = 0` and the module is rigid.
//! * **C**: `R = k[x]/(x²)`, `M = k²` with `x` acting by `[[0,1],[0,0]]`. The
//!   cocycle `σ(x) = diag(1,−1)` integrates to every order but is itself a
//!   coboundary.

use std::sync::Arc;

use crate::algebra::{Algebra, Module};
use crate::hochschild::Cochain;
use crate::linalg::{Field, Matrix};

pub fn fixture_a(field: Field) -> Arc<Module> {
    let algebra = Arc::new(Algebra::dual_numbers(field));
    let action = vec![Matrix::identity(field, 1), Matrix::zeros(field, 1, 1)];
    Arc::new(Module::new(algebra, 1, action).expect("fixture A is valid"))
}

pub fn fixture_b(field: Field) -> Arc<Module> {
    let algebra = Arc::new(Algebra::matrix_algebra(field, 2));
    let action = (0..4)
        .map(|a| {
            let mut m = Matrix::zeros(field, 2, 2);
            m[(a / 2, a % 2)] = field.one();
            m
        })
        .collect();
    Arc::new(Module::new(algebra, 2, action).expect("fixture B is valid"))
}

pub fn fixture_c(field: Field) -> Arc<Module> {
    let algebra = Arc::new(Algebra::dual_numbers(field));
    let action = vec![
        Matrix::identity(field, 2),
        Matrix::from_i64(field, &[&[0, 1], &[0, 0]]),
    ];
    Arc::new(Module::new(algebra, 2, action).expect("fixture C is valid"))
}

/// Fixture A's obstructed seed, `σ(1) = 0`, `σ(x) = 1`.
pub fn seed_a(module: &Module) -> Cochain {
    Cochain::zero(module, 1).with(vec![1], Matrix::identity(module.field(), 1))
}

/// Fixture C's integrable seed, `σ(1) = 0`, `σ(x) = diag(1, −1)`.
pub fn seed_c(module: &Module) -> Cochain {
    let f = module.field();
    Cochain::zero(module, 1).with(vec![1], Matrix::from_i64(f, &[&[1, 0], &[0, -1]]))
}
