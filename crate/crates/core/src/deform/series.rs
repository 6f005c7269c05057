use std::sync::Arc;

use crate::algebra::Module;
use crate::error::{Error, Result};
use crate::hochschild::Cochain;
use crate::linalg::Matrix;

/// A truncated deformation `ξ_t = ξ + t ξ_1 + … + t^m ξ_m` of a module.
///
/// `ξ = ξ_0` is the module's own action; the stored terms are degree-1
/// cochains `ξ_1, …, ξ_m`. Construction checks shapes only; use
/// [`check_deformation`](super::check_deformation) for the multiplicativity
/// relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximateDeformation {
    module: Arc<Module>,
    terms: Vec<Cochain>,
}

impl ApproximateDeformation {
    pub fn new(module: Arc<Module>, terms: Vec<Cochain>) -> Result<Self> {
        for (i, t) in terms.iter().enumerate() {
            if t.degree() != 1 || !t.fits(&module) {
                return Err(Error::InvalidInput(format!(
                    "term {} is not a 1-cochain of this module",
                    i + 1
                )));
            }
        }
        Ok(ApproximateDeformation { module, terms })
    }

    /// The undeformed action, truncated at `order` with zero terms.
    pub fn trivial(module: Arc<Module>, order: usize) -> Self {
        let terms = vec![Cochain::zero(&module, 1); order];
        ApproximateDeformation { module, terms }
    }

    pub fn module(&self) -> &Arc<Module> {
        &self.module
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `ξ_1, …, ξ_m`.
    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }

    /// `ξ_n(e_i)`, with `ξ_0` the module action.
    pub fn term_value(&self, n: usize, i: usize) -> Matrix {
        if n == 0 {
            self.module.action(i).clone()
        } else {
            self.terms[n - 1].value(&[i])
        }
    }

    /// The first `order` terms.
    pub fn truncate(&self, order: usize) -> Self {
        ApproximateDeformation {
            module: self.module.clone(),
            terms: self.terms[..order.min(self.order())].to_vec(),
        }
    }

    pub(crate) fn push(&mut self, term: Cochain) {
        self.terms.push(term);
    }

    pub fn is_trivial(&self) -> bool {
        self.terms.iter().all(Cochain::is_zero)
    }
}

/// A truncated formal automorphism `φ_t = 1 + t φ_1 + … + t^m φ_m` of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalAutomorphism {
    module: Arc<Module>,
    terms: Vec<Matrix>,
}

impl FormalAutomorphism {
    pub fn new(module: Arc<Module>, terms: Vec<Matrix>) -> Result<Self> {
        let d = module.dim();
        if let Some(i) = terms
            .iter()
            .position(|m| m.rows() != d || m.cols() != d || m.field() != module.field())
        {
            return Err(Error::InvalidInput(format!(
                "automorphism term {} is not an endomorphism of this module",
                i + 1
            )));
        }
        Ok(FormalAutomorphism { module, terms })
    }

    pub fn identity(module: Arc<Module>, order: usize) -> Self {
        let zero = Matrix::zeros(module.field(), module.dim(), module.dim());
        FormalAutomorphism {
            terms: vec![zero; order],
            module,
        }
    }

    /// `1 + t^l φ`, truncated at `order`.
    pub fn monomial(module: Arc<Module>, order: usize, l: usize, phi: Matrix) -> Result<Self> {
        assert!(l >= 1 && l <= order, "monomial degree out of range");
        let mut a = FormalAutomorphism::identity(module, order);
        a.terms[l - 1] = phi;
        FormalAutomorphism::new(a.module, a.terms)
    }

    pub fn module(&self) -> &Arc<Module> {
        &self.module
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `φ_1, …, φ_m`.
    pub fn terms(&self) -> &[Matrix] {
        &self.terms
    }

    /// `φ_n`, with `φ_0 = 1`.
    pub fn term(&self, n: usize) -> Matrix {
        if n == 0 {
            Matrix::identity(self.module.field(), self.module.dim())
        } else {
            self.terms[n - 1].clone()
        }
    }

    pub fn is_identity(&self) -> bool {
        self.terms.iter().all(Matrix::is_zero)
    }

    /// Truncated product `self · other` at the smaller of the two orders.
    pub fn compose(&self, other: &FormalAutomorphism) -> Result<FormalAutomorphism> {
        same_module(&self.module, &other.module)?;
        let m = self.order().min(other.order());
        let terms = (1..=m)
            .map(|n| {
                let mut acc = Matrix::zeros(self.module.field(), self.module.dim(), self.module.dim());
                for i in 0..=n {
                    acc = acc.add(&self.term(i).mul(&other.term(n - i)));
                }
                acc
            })
            .collect();
        Ok(FormalAutomorphism {
            module: self.module.clone(),
            terms,
        })
    }
}

pub(crate) fn same_module(a: &Arc<Module>, b: &Arc<Module>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ModuleMismatch)
    }
}
