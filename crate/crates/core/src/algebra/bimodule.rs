use std::sync::Arc;

use super::module::combine;
use super::{Algebra, Module, ValidationReport, Violation};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// `End(M)` as an `R`-`R`-bimodule: `(r g s)(m) = r·g(s·m)`.
#[derive(Clone, Copy, Debug)]
pub struct EndBimodule<'a> {
    module: &'a Module,
}

impl<'a> EndBimodule<'a> {
    pub fn new(module: &'a Module) -> Self {
        EndBimodule { module }
    }

    /// `e_i · g = ρ(e_i) g`.
    pub fn left(&self, i: usize, g: &Matrix) -> Matrix {
        self.module.action(i).mul(g)
    }

    /// `g · e_j = g ρ(e_j)`.
    pub fn right(&self, g: &Matrix, j: usize) -> Matrix {
        g.mul(self.module.action(j))
    }

    /// `e_i · g · e_j`.
    pub fn act(&self, i: usize, g: &Matrix, j: usize) -> Matrix {
        self.right(&self.left(i, g), j)
    }
}

/// A finite-dimensional `R`-`R`-bimodule.
///
/// `left[i]` is the matrix of `m ↦ e_i m` and `right[j]` the matrix of
/// `m ↦ m e_j`, both acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    algebra: Arc<Algebra>,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(algebra: Arc<Algebra>, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Self> {
        let report = Bimodule::validate(&algebra, dim, &left, &right)?;
        if !report.is_valid() {
            return Err(Error::InvalidModule(report));
        }
        Ok(Bimodule {
            algebra,
            dim,
            left,
            right,
        })
    }

    /// The algebra as a bimodule over itself.
    pub fn regular(algebra: Arc<Algebra>) -> Self {
        let d = algebra.dim();
        let f = algebra.field();
        let by = |prod: &dyn Fn(usize, usize) -> Vec<_>| -> Vec<Matrix> {
            (0..d)
                .map(|i| {
                    let cols: Vec<_> = (0..d).map(|j| prod(i, j)).collect();
                    Matrix::from_columns(f, d, &cols)
                })
                .collect()
        };
        let left = by(&|i, j| algebra.product(i, j).to_vec());
        let right = by(&|i, j| algebra.product(j, i).to_vec());
        Bimodule::new(algebra, d, left, right).expect("regular bimodule is valid")
    }

    /// Left action must be multiplicative, right action anti-multiplicative
    /// as matrices, both unital, and the two must commute.
    pub fn validate(
        algebra: &Algebra,
        dim: usize,
        left: &[Matrix],
        right: &[Matrix],
    ) -> Result<ValidationReport> {
        let mut report = super::validate_module(algebra, dim, left)?;
        let n = algebra.dim();
        if right.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "right action has {} matrices, algebra has dimension {n}",
                right.len()
            )));
        }
        if let Some(i) = right.iter().position(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "right action [{i}] is not {dim}x{dim}"
            )));
        }
        let f = algebra.field();
        for i in 0..n {
            for j in 0..n {
                // m·(e_i e_j) = (m·e_i)·e_j, i.e. R(e_i e_j) = R_j R_i.
                if combine(f, dim, right, algebra.product(i, j)) != right[j].mul(&right[i]) {
                    report.push(Violation::RightMultiplicativity { i, j });
                }
            }
        }
        if combine(f, dim, right, algebra.unit()) != Matrix::identity(f, dim) {
            report.push(Violation::RightUnitAction);
        }
        for (i, l) in left.iter().enumerate() {
            for (j, r) in right.iter().enumerate() {
                if l.mul(r) != r.mul(l) {
                    report.push(Violation::Commutation { i, j });
                }
            }
        }
        Ok(report)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    pub fn right(&self, j: usize) -> &Matrix {
        &self.right[j]
    }
}

/// Converts a bimodule into a left module over `R ⊗ R^op` via
/// `(r ⊗ s)·m = r m s`.
///
/// The enveloping basis element `e_i ⊗ e_p` sits at index `i·d + p` and acts
/// by `left[i] · right[p]`.
pub fn enveloping_left_module(bimodule: &Bimodule) -> Result<(Arc<Algebra>, Module)> {
    let algebra = bimodule.algebra();
    let env = Arc::new(algebra.tensor(&algebra.opposite()));
    let d = algebra.dim();
    let mut action = Vec::with_capacity(d * d);
    for i in 0..d {
        for p in 0..d {
            action.push(bimodule.left(i).mul(bimodule.right(p)));
        }
    }
    let module = Module::new(env.clone(), bimodule.dim(), action)?;
    Ok((env, module))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    const Q: Field = Field::Rational;

    #[test]
    fn ground_field_envelope_is_trivial() {
        let k = Arc::new(Algebra::ground(Q));
        let id = Matrix::identity(Q, 3);
        let b = Bimodule::new(k.clone(), 3, vec![id.clone()], vec![id.clone()]).unwrap();
        let (env, m) = enveloping_left_module(&b).unwrap();
        assert_eq!(env.dim(), 1);
        assert_eq!(env.structure(), k.structure());
        assert_eq!(m.action(0), &id);
    }

    #[test]
    fn commuting_failure_is_reported() {
        let a = Arc::new(Algebra::dual_numbers(Q));
        let n = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        let nt = n.transpose();
        let id = Matrix::identity(Q, 2);
        let report = Bimodule::validate(&a, 2, &[id.clone(), n], &[id, nt]).unwrap();
        assert!(report.violations.contains(&Violation::Commutation { i: 1, j: 1 }));
    }

    #[test]
    fn end_bimodule_actions_associate() {
        let a = Arc::new(Algebra::dual_numbers(Q));
        let n = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        let m = Module::new(a, 2, vec![Matrix::identity(Q, 2), n]).unwrap();
        let end = EndBimodule::new(&m);
        let g = Matrix::from_i64(Q, &[&[1, 2], &[3, 4]]);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(end.right(&end.left(i, &g), j), end.left(i, &end.right(&g, j)));
                assert_eq!(end.act(i, &g, j), m.action(i).mul(&g).mul(m.action(j)));
            }
        }
    }
}
