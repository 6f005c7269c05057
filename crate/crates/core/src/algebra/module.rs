use std::sync::Arc;

use super::{Algebra, ValidationReport, Violation};
use crate::error::{Error, Result};
use crate::linalg::{inverse, Field, Matrix, Scalar};

/// A finite-dimensional left module, stored as the algebra map
/// `ξ: R → End(M)` evaluated on the basis: `action[i] = ξ(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
}

/// Checks `ρ(e_i)ρ(e_j) = Σ_k c_ij^k ρ(e_k)` on every pair and `ρ(1) = I`.
///
/// Errors on shape problems; axiom failures land in the report, pairs in
/// lexicographic order.
pub fn validate_module(algebra: &Algebra, dim: usize, action: &[Matrix]) -> Result<ValidationReport> {
    if action.len() != algebra.dim() {
        return Err(Error::DimensionMismatch(format!(
            "module.action has {} matrices, algebra has dimension {}",
            action.len(),
            algebra.dim()
        )));
    }
    for (i, m) in action.iter().enumerate() {
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "module.action[{i}] is {}x{}, expected {dim}x{dim}",
                m.rows(),
                m.cols()
            )));
        }
        if m.field() != algebra.field() {
            return Err(Error::InvalidInput(format!(
                "module.action[{i}] is over a different field"
            )));
        }
    }
    let mut report = ValidationReport::default();
    for i in 0..algebra.dim() {
        for j in 0..algebra.dim() {
            let lhs = action[i].mul(&action[j]);
            if lhs != combine(algebra.field(), dim, action, algebra.product(i, j)) {
                report.push(Violation::Multiplicativity { i, j });
            }
        }
    }
    if combine(algebra.field(), dim, action, algebra.unit()) != Matrix::identity(algebra.field(), dim) {
        report.push(Violation::UnitAction);
    }
    Ok(report)
}

/// `Σ_k coords[k] · mats[k]`.
pub(crate) fn combine(field: Field, dim: usize, mats: &[Matrix], coords: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, dim, dim);
    for (c, m) in coords.iter().zip(mats) {
        out.add_scaled(c, m);
    }
    out
}

impl Module {
    pub fn new(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        let report = validate_module(&algebra, dim, &action)?;
        if !report.is_valid() {
            return Err(Error::InvalidModule(report));
        }
        Ok(Module {
            algebra,
            dim,
            action,
        })
    }

    /// The left regular module: `R` acting on itself by left multiplication.
    pub fn regular(algebra: Arc<Algebra>) -> Self {
        let d = algebra.dim();
        let action = (0..d)
            .map(|i| {
                let cols: Vec<Vec<Scalar>> = (0..d).map(|j| algebra.product(i, j).to_vec()).collect();
                Matrix::from_columns(algebra.field(), d, &cols)
            })
            .collect();
        Module::new(algebra, d, action).expect("regular module is valid")
    }

    /// Direct sum `self ⊕ other` with block-diagonal action.
    pub fn direct_sum(&self, other: &Module) -> Result<Module> {
        if self.algebra != other.algebra {
            return Err(Error::ModuleMismatch);
        }
        let (a, b) = (self.dim, other.dim);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(x, y)| {
                let mut m = Matrix::zeros(self.field(), a + b, a + b);
                for i in 0..a {
                    for j in 0..a {
                        m[(i, j)] = x[(i, j)].clone();
                    }
                }
                for i in 0..b {
                    for j in 0..b {
                        m[(a + i, a + j)] = y[(i, j)].clone();
                    }
                }
                m
            })
            .collect();
        Module::new(self.algebra.clone(), a + b, action)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `ρ(e_i)`.
    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// `ρ(r)` for an algebra element given in coordinates.
    pub fn act(&self, coords: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim, &self.action, coords)
    }

    /// The same module in a new module basis: `ρ'(e_i) = s⁻¹ ρ(e_i) s`.
    pub fn change_basis(&self, s: &Matrix) -> Result<Module> {
        let s_inv = inverse_checked(s, self.dim)?;
        let action = self.action.iter().map(|m| s_inv.mul(m).mul(s)).collect();
        Module::new(self.algebra.clone(), self.dim, action)
    }

    /// The same module over the algebra re-expressed in the basis
    /// `f_i = Σ_k p[k][i] e_k` (see [`Algebra::change_basis`]).
    pub fn change_algebra_basis(&self, p: &Matrix) -> Result<Module> {
        let algebra = Arc::new(self.algebra.change_basis(p)?);
        let action = (0..algebra.dim()).map(|i| self.act(&p.column(i))).collect();
        Module::new(algebra, self.dim, action)
    }
}

fn inverse_checked(s: &Matrix, dim: usize) -> Result<Matrix> {
    if s.rows() != dim || s.cols() != dim {
        return Err(Error::DimensionMismatch(format!(
            "change of basis is {}x{}, module has dimension {dim}",
            s.rows(),
            s.cols()
        )));
    }
    inverse(s).ok_or_else(|| Error::InvalidInput("singular change of basis".into()))
}
