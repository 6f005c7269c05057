//! Truncated deformations of a module and their obstruction calculus.
//!
//! A deformation of order `m` satisfies, for every `n ≤ m` and all basis
//! pairs,
//!
//! ```text
//! ξ_n(e_i e_j) = Σ_{p+q=n} ξ_p(e_i) ξ_q(e_j)
//! ```
//!
//! The order-`(m+1)` relation can be met by a new term `ξ_{m+1}` exactly when
//! the obstruction `Obs(a, b) = Σ_{i=1}^m ξ_i(a) ξ_{m+1−i}(b)` is a
//! coboundary, and the new term then solves `d_1 ξ_{m+1} = −Obs`.

mod series;

use crate::error::{Error, Result};
use crate::hochschild::{Cochain, HochschildComplex};
use crate::linalg::Matrix;

pub use series::{ApproximateDeformation, FormalAutomorphism};
use series::same_module;

/// Result of checking the multiplicativity relations order by order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationCheck {
    Valid,
    /// The smallest order whose relation fails, and the first failing basis pair.
    Violated { order: usize, pair: (usize, usize) },
}

impl RelationCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, RelationCheck::Valid)
    }
}

/// Checks `ξ_n(e_i e_j) = Σ_{p+q=n} ξ_p(e_i) ξ_q(e_j)` for `n = 0, …, m`.
pub fn check_deformation(d: &ApproximateDeformation) -> RelationCheck {
    let module = d.module();
    let algebra = module.algebra();
    let (dr, dm) = (algebra.dim(), module.dim());
    let field = module.field();
    let values: Vec<Vec<Matrix>> = (0..=d.order())
        .map(|n| (0..dr).map(|i| d.term_value(n, i)).collect())
        .collect();
    for n in 0..=d.order() {
        for i in 0..dr {
            for j in 0..dr {
                let mut lhs = Matrix::zeros(field, dm, dm);
                for (k, c) in algebra.product_terms(i, j) {
                    lhs.add_scaled(c, &values[n][k]);
                }
                let mut rhs = Matrix::zeros(field, dm, dm);
                for p in 0..=n {
                    rhs = rhs.add(&values[p][i].mul(&values[n - p][j]));
                }
                if lhs != rhs {
                    return RelationCheck::Violated { order: n, pair: (i, j) };
                }
            }
        }
    }
    RelationCheck::Valid
}

fn require_valid(d: &ApproximateDeformation) -> Result<()> {
    match check_deformation(d) {
        RelationCheck::Valid => Ok(()),
        RelationCheck::Violated { order, .. } => Err(Error::NotADeformation { order }),
    }
}

fn require_complex(complex: &HochschildComplex, d: &ApproximateDeformation) -> Result<()> {
    same_module(complex.module(), d.module())
}

/// The first nonzero term `(l, ξ_l)`, or `None` when every term vanishes.
///
/// For a valid deformation `ξ_l` is always a 1-cocycle.
pub fn infinitesimal(d: &ApproximateDeformation) -> Result<Option<(usize, Cochain)>> {
    require_valid(d)?;
    Ok(d.terms()
        .iter()
        .enumerate()
        .find(|(_, t)| !t.is_zero())
        .map(|(i, t)| (i + 1, t.clone())))
}

/// The obstruction cocycle `Obs(a, b) = Σ_{i=1}^m ξ_i(e_a) ξ_{m+1−i}(e_b)`.
pub fn obstruction(d: &ApproximateDeformation) -> Cochain {
    let module = d.module();
    let m = d.order();
    let dr = module.algebra().dim();
    let mut obs = Cochain::zero(module, 2);
    for a in 0..dr {
        for b in 0..dr {
            let mut acc = Matrix::zeros(module.field(), module.dim(), module.dim());
            for i in 1..=m {
                let (x, y) = (&d.terms()[i - 1], &d.terms()[m - i]);
                if let (Some(u), Some(v)) = (x.get(&[a]), y.get(&[b])) {
                    acc = acc.add(&u.mul(v));
                }
            }
            obs.set(vec![a, b], acc);
        }
    }
    obs
}

/// An obstruction cocycle together with the verdict on its class.
///
/// When the class vanishes, `witness` solves `d_1 witness = −obstruction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionOutcome {
    pub obstruction: Cochain,
    pub witness: Option<Cochain>,
    pub class_is_zero: bool,
}

impl ObstructionOutcome {
    /// Computes `Obs(d)` and tries to solve `d_1 x = −Obs(d)`.
    pub fn of(complex: &HochschildComplex, d: &ApproximateDeformation) -> Result<Self> {
        require_complex(complex, d)?;
        require_valid(d)?;
        let obstruction = obstruction(d);
        let witness = complex.coboundary_witness(&obstruction.neg())?;
        Ok(ObstructionOutcome {
            class_is_zero: witness.is_some(),
            obstruction,
            witness,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Extended {
        deformation: ApproximateDeformation,
        outcome: ObstructionOutcome,
    },
    Obstructed(ObstructionOutcome),
}

/// Extends an order-`m` deformation by one order, appending the canonical
/// solution of `d_1 ξ_{m+1} = −Obs`, or reports the obstruction.
pub fn extend_once(complex: &HochschildComplex, d: &ApproximateDeformation) -> Result<Extension> {
    let outcome = ObstructionOutcome::of(complex, d)?;
    let Some(next) = outcome.witness.clone() else {
        return Ok(Extension::Obstructed(outcome));
    };
    let mut deformation = d.clone();
    deformation.push(next);
    debug_assert!(check_deformation(&deformation).is_valid());
    Ok(Extension::Extended {
        deformation,
        outcome,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Integration {
    Integrated(ApproximateDeformation),
    /// Integration stopped: `reached` cannot be extended past its order.
    Obstructed {
        reached: ApproximateDeformation,
        outcome: ObstructionOutcome,
    },
}

/// Integrates a 1-cocycle `σ` order by order, starting from `ξ + tσ`.
///
/// Success certifies a deformation through order `target` only.
pub fn integrate(complex: &HochschildComplex, sigma: &Cochain, target: usize) -> Result<Integration> {
    if target == 0 {
        return Err(Error::InvalidInput("target order must be at least 1".into()));
    }
    complex.guardrails().check_order(target)?;
    if sigma.degree() != 1 {
        return Err(Error::InvalidInput(format!(
            "seed has degree {}, expected 1",
            sigma.degree()
        )));
    }
    if !complex.is_cocycle(sigma)? {
        return Err(Error::NotACocycle { degree: 1 });
    }
    let mut d = ApproximateDeformation::new(complex.module().clone(), vec![sigma.clone()])?;
    while d.order() < target {
        match extend_once(complex, &d)? {
            Extension::Extended { deformation, .. } => d = deformation,
            Extension::Obstructed(outcome) => {
                return Ok(Integration::Obstructed {
                    reached: d,
                    outcome,
                })
            }
        }
    }
    Ok(Integration::Integrated(d))
}

/// Inverse series: `ψ_n = −Σ_{i=1}^n φ_i ψ_{n−i}`, `ψ_0 = 1`.
pub fn invert(phi: &FormalAutomorphism) -> FormalAutomorphism {
    let mut psi: Vec<Matrix> = vec![phi.term(0)];
    for n in 1..=phi.order() {
        let mut acc = Matrix::zeros(phi.module().field(), phi.module().dim(), phi.module().dim());
        for i in 1..=n {
            acc = acc.sub(&phi.term(i).mul(&psi[n - i]));
        }
        psi.push(acc);
    }
    psi.remove(0);
    FormalAutomorphism::new(phi.module().clone(), psi).expect("same shape as input")
}

/// `φ_t⁻¹ ξ_t φ_t`, truncated at the smaller of the two orders.
///
/// Term `n` on a basis element `r` is `Σ_{i+j+k=n} ψ_i ξ_j(r) φ_k`.
pub fn conjugate(phi: &FormalAutomorphism, d: &ApproximateDeformation) -> Result<ApproximateDeformation> {
    same_module(phi.module(), d.module())?;
    let module = d.module();
    let m = phi.order().min(d.order());
    let psi = invert(phi);
    let dr = module.algebra().dim();
    let (field, dm) = (module.field(), module.dim());
    let mut terms = Vec::with_capacity(m);
    for n in 1..=m {
        let mut t = Cochain::zero(module, 1);
        for r in 0..dr {
            let mut acc = Matrix::zeros(field, dm, dm);
            for i in 0..=n {
                for j in 0..=n - i {
                    let k = n - i - j;
                    let xi = d.term_value(j, r);
                    if xi.is_zero() {
                        continue;
                    }
                    acc = acc.add(&psi.term(i).mul(&xi).mul(&phi.term(k)));
                }
            }
            t.set(vec![r], acc);
        }
        terms.push(t);
    }
    ApproximateDeformation::new(module.clone(), terms)
}

/// A deformation pushed to normal form, with the automorphism that does it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub deformation: ApproximateDeformation,
    /// Conjugating the input by this reproduces `deformation`.
    pub automorphism: FormalAutomorphism,
    /// Order of the leading term, whose class is nonzero; `None` when the
    /// result is trivial through the truncation order.
    pub leading: Option<usize>,
}

/// Repeatedly removes a leading term that is a coboundary `ξ_l = d_0 φ_l` by
/// conjugating with `1 − t^l φ_l`, until the leading term has a nonzero
/// class or every term vanishes.
pub fn normalize(complex: &HochschildComplex, d: &ApproximateDeformation) -> Result<Normalization> {
    require_complex(complex, d)?;
    let module = d.module().clone();
    let m = d.order();
    let mut current = d.clone();
    let mut total = FormalAutomorphism::identity(module.clone(), m);
    // The leading order rises by at least one per pass.
    for _ in 0..=m {
        let Some((l, leading)) = infinitesimal(&current)? else {
            return Ok(Normalization {
                deformation: current,
                automorphism: total,
                leading: None,
            });
        };
        let Some(phi) = complex.coboundary_witness(&leading)? else {
            return Ok(Normalization {
                deformation: current,
                automorphism: total,
                leading: Some(l),
            });
        };
        let step = FormalAutomorphism::monomial(module.clone(), m, l, phi.value(&[]).neg())?;
        current = conjugate(&step, &current)?;
        total = total.compose(&step)?;
    }
    unreachable!("leading order exceeded the truncation order")
}

/// If two order-`(m+1)` extensions of one order-`m` deformation differ in
/// their top term by a coboundary `d_0 φ`, returns `1 + t^{m+1} φ`, which
/// conjugates the first into the second. Returns `None` otherwise; that
/// does not prove the two are inequivalent.
pub fn equivalent_one_step(
    complex: &HochschildComplex,
    first: &ApproximateDeformation,
    second: &ApproximateDeformation,
) -> Result<Option<FormalAutomorphism>> {
    require_complex(complex, first)?;
    same_module(first.module(), second.module())?;
    let top = first.order();
    if top == 0 || second.order() != top {
        return Err(Error::InvalidInput(format!(
            "expected two extensions of equal positive order, got {} and {}",
            first.order(),
            second.order()
        )));
    }
    if first.terms()[..top - 1] != second.terms()[..top - 1] {
        return Err(Error::InvalidInput(format!(
            "extensions disagree below order {top}"
        )));
    }
    require_valid(first)?;
    require_valid(second)?;
    let difference = second.terms()[top - 1].sub(&first.terms()[top - 1]);
    let Some(phi) = complex.coboundary_witness(&difference)? else {
        return Ok(None);
    };
    let module = first.module().clone();
    Ok(Some(FormalAutomorphism::monomial(module, top, top, phi.value(&[]))?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rigidity {
    /// `H^1 = 0`, so every deformation is equivalent to the trivial one.
    RigidCertified,
    /// `H^1 ≠ 0`; this alone does not decide rigidity.
    Inconclusive { dim_h1: usize },
}

pub fn rigidity_check(complex: &HochschildComplex) -> Result<Rigidity> {
    let h1 = complex.cohomology(1)?;
    Ok(match h1.dim_cohomology {
        0 => Rigidity::RigidCertified,
        dim_h1 => Rigidity::Inconclusive { dim_h1 },
    })
}
