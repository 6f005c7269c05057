use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use super::cochain::{tuple_index, tuples, Cochain};
use crate::algebra::Module;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank, rref, solve, Matrix, Scalar};

/// Size limits checked before any large matrix is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guardrails {
    pub max_algebra_dim: usize,
    pub max_module_dim: usize,
    /// Largest truncation order a deformation may be integrated to.
    pub max_order: usize,
    /// Largest `n` for which `d_n` may be assembled.
    pub max_degree: usize,
    /// Largest number of entries in one assembled differential matrix.
    pub max_matrix_entries: usize,
}

impl Default for Guardrails {
    fn default() -> Self {
        Guardrails {
            max_algebra_dim: 8,
            max_module_dim: 6,
            max_order: 16,
            max_degree: 3,
            max_matrix_entries: 4_000_000,
        }
    }
}

impl Guardrails {
    pub fn check_module(&self, module: &Module) -> Result<()> {
        let (dr, dm) = (module.algebra().dim(), module.dim());
        if dr > self.max_algebra_dim {
            return Err(Error::Guardrail(format!(
                "algebra dimension {dr} exceeds limit {}",
                self.max_algebra_dim
            )));
        }
        if dm > self.max_module_dim {
            return Err(Error::Guardrail(format!(
                "module dimension {dm} exceeds limit {}",
                self.max_module_dim
            )));
        }
        Ok(())
    }

    pub fn check_order(&self, order: usize) -> Result<()> {
        if order > self.max_order {
            return Err(Error::Guardrail(format!(
                "truncation order {order} exceeds limit {}",
                self.max_order
            )));
        }
        Ok(())
    }

    /// Rejects `d_n` when `n` or its projected size is over the limit.
    pub fn check_differential(&self, module: &Module, n: usize) -> Result<()> {
        let (dr, dm) = (module.algebra().dim(), module.dim());
        let cols = dr.saturating_pow(n as u32).saturating_mul(dm * dm);
        let rows = cols.saturating_mul(dr);
        if n > self.max_degree {
            return Err(Error::Guardrail(format!(
                "d_{n} would be a {rows}x{cols} matrix; degree {n} exceeds limit {}",
                self.max_degree
            )));
        }
        if rows.saturating_mul(cols) > self.max_matrix_entries {
            return Err(Error::Guardrail(format!(
                "d_{n} would be a {rows}x{cols} matrix, over the {}-entry limit",
                self.max_matrix_entries
            )));
        }
        Ok(())
    }
}

/// Dimensions and representatives of `H^n(R, End(M))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degree: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_cohomology: usize,
    /// Cocycles whose classes form a basis of the cohomology.
    pub representatives: Vec<Cochain>,
}

/// A preimage under the differential together with the kernel that
/// parametrises all other preimages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preimage {
    pub witness: Option<Cochain>,
    pub kernel: Vec<Cochain>,
}

/// The Hochschild cochain complex `Hom(R^{⊗n}, End(M))` of one module.
///
/// Assembled differential matrices are cached, so one complex should be
/// reused across related computations.
#[derive(Debug)]
pub struct HochschildComplex {
    module: Arc<Module>,
    guardrails: Guardrails,
    matrices: Mutex<BTreeMap<usize, Arc<Matrix>>>,
}

impl HochschildComplex {
    pub fn new(module: Arc<Module>) -> Result<Self> {
        HochschildComplex::with_guardrails(module, Guardrails::default())
    }

    pub fn with_guardrails(module: Arc<Module>, guardrails: Guardrails) -> Result<Self> {
        guardrails.check_module(&module)?;
        Ok(HochschildComplex {
            module,
            guardrails,
            matrices: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn module(&self) -> &Arc<Module> {
        &self.module
    }

    pub fn guardrails(&self) -> &Guardrails {
        &self.guardrails
    }

    /// `dim C^n = d_R^n · d_M²`.
    pub fn cochain_dim(&self, n: usize) -> usize {
        let dm = self.module.dim();
        self.module.algebra().dim().pow(n as u32) * dm * dm
    }

    fn check(&self, f: &Cochain) -> Result<()> {
        if f.fits(&self.module) {
            Ok(())
        } else {
            Err(Error::ModuleMismatch)
        }
    }

    /// The Hochschild differential, evaluated tuple by tuple:
    ///
    /// `(d f)(a_0,…,a_n) = a_0·f(a_1,…,a_n) + Σ_{i=1}^n (−1)^i f(…, a_{i−1}a_i, …)
    ///  + (−1)^{n+1} f(a_0,…,a_{n−1})·a_n`.
    pub fn differential(&self, f: &Cochain) -> Result<Cochain> {
        self.check(f)?;
        let n = f.degree();
        let algebra = self.module.algebra();
        let field = self.module.field();
        let (dr, dm) = (algebra.dim(), self.module.dim());
        let sign = |k: usize| if k.is_multiple_of(2) { field.one() } else { -&field.one() };
        let mut out = Cochain::zero_shaped(field, dr, dm, n + 1);
        if f.is_zero() {
            return Ok(out);
        }
        for a in tuples(dr, n + 1) {
            let mut acc = Matrix::zeros(field, dm, dm);
            if let Some(v) = f.get(&a[1..]) {
                acc = acc.add(&self.module.action(a[0]).mul(v));
            }
            let mut merged = Vec::with_capacity(n);
            for i in 1..=n {
                let s = sign(i);
                for (k, c) in algebra.product_terms(a[i - 1], a[i]) {
                    merged.clear();
                    merged.extend_from_slice(&a[..i - 1]);
                    merged.push(k);
                    merged.extend_from_slice(&a[i + 1..]);
                    if let Some(v) = f.get(&merged) {
                        acc.add_scaled(&(&s * c), v);
                    }
                }
            }
            if let Some(v) = f.get(&a[..n]) {
                acc.add_scaled(&sign(n + 1), &v.mul(self.module.action(a[n])));
            }
            out.set(a, acc);
        }
        Ok(out)
    }

    /// `d_n` as a `(d_R^{n+1}·d_M²) × (d_R^n·d_M²)` matrix in the coordinate
    /// order of [`Cochain::flatten`].
    pub fn differential_matrix(&self, n: usize) -> Result<Arc<Matrix>> {
        if let Some(m) = self.matrices.lock().expect("cache poisoned").get(&n) {
            return Ok(m.clone());
        }
        self.guardrails.check_differential(&self.module, n)?;
        let m = Arc::new(self.assemble(n));
        self.matrices
            .lock()
            .expect("cache poisoned")
            .insert(n, m.clone());
        Ok(m)
    }

    fn assemble(&self, n: usize) -> Matrix {
        let algebra = self.module.algebra();
        let field = self.module.field();
        let (dr, dm) = (algebra.dim(), self.module.dim());
        let d2 = dm * dm;
        let mut out = Matrix::zeros(field, self.cochain_dim(n + 1), self.cochain_dim(n));
        let one = field.one();
        let minus_one = -&one;
        let sign = |k: usize| if k.is_multiple_of(2) { &one } else { &minus_one };
        let mut merged = Vec::with_capacity(n);
        for (row_block, a) in tuples(dr, n + 1).enumerate() {
            let head = tuple_index(&a[1..], dr) * d2;
            let tail = tuple_index(&a[..n], dr) * d2;
            let left = self.module.action(a[0]);
            let right = self.module.action(a[n]);
            for r in 0..dm {
                for c in 0..dm {
                    let row = row_block * d2 + r * dm + c;
                    // ρ(a_0) · f(a_1..a_n)
                    for s in 0..dm {
                        out[(row, head + s * dm + c)] += &left[(r, s)];
                    }
                    for i in 1..=n {
                        for (k, coeff) in algebra.product_terms(a[i - 1], a[i]) {
                            merged.clear();
                            merged.extend_from_slice(&a[..i - 1]);
                            merged.push(k);
                            merged.extend_from_slice(&a[i + 1..]);
                            let col = tuple_index(&merged, dr) * d2 + r * dm + c;
                            out[(row, col)].add_mul_assign(sign(i), coeff);
                        }
                    }
                    // (−1)^{n+1} f(a_0..a_{n−1}) · ρ(a_n)
                    for s in 0..dm {
                        out[(row, tail + r * dm + s)].add_mul_assign(sign(n + 1), &right[(s, c)]);
                    }
                }
            }
        }
        out
    }

    /// Whether `d f = 0`, checked entrywise.
    pub fn is_cocycle(&self, f: &Cochain) -> Result<bool> {
        Ok(self.differential(f)?.is_zero())
    }

    /// All `g` with `d g = f`: the canonical witness (free variables zero)
    /// and the kernel of `d_{n−1}`.
    pub fn preimage(&self, f: &Cochain) -> Result<Preimage> {
        self.check(f)?;
        let n = f.degree();
        if n == 0 {
            return Err(Error::InvalidInput(
                "degree-0 cochains have no coboundary witness".into(),
            ));
        }
        let d = self.differential_matrix(n - 1)?;
        let sol = solve(&d, &f.flatten())?;
        Ok(Preimage {
            witness: sol.particular.map(|x| f.reshape(n - 1, &x)),
            kernel: sol
                .kernel_basis
                .iter()
                .map(|v| f.reshape(n - 1, v))
                .collect(),
        })
    }

    /// The canonical `g` with `d g = f`, or `None` when `f` is not a coboundary.
    pub fn coboundary_witness(&self, f: &Cochain) -> Result<Option<Cochain>> {
        Ok(self.preimage(f)?.witness)
    }

    /// `H^n` by rank–nullity, with representatives chosen as the kernel
    /// basis vectors that become pivots after the coboundaries.
    pub fn cohomology(&self, n: usize) -> Result<CohomologyReport> {
        let dn = self.differential_matrix(n)?;
        let cocycles = kernel_basis(&dn);
        let dim_cocycles = cocycles.len();
        let field = self.module.field();
        let (dr, dm) = (self.module.algebra().dim(), self.module.dim());
        let to_cochain = |v: &Vec<Scalar>| Cochain::from_flat(field, dr, dm, n, v);

        let (dim_coboundaries, representatives) = if n == 0 {
            (0, cocycles.iter().map(to_cochain).collect())
        } else {
            let prev = self.differential_matrix(n - 1)?;
            let b = rank(&prev);
            let z = Matrix::from_columns(field, self.cochain_dim(n), &cocycles);
            let (_, pivots) = rref(&prev.hstack(&z));
            let reps: Vec<Cochain> = pivots
                .iter()
                .filter(|&&p| p >= prev.cols())
                .map(|&p| to_cochain(&cocycles[p - prev.cols()]))
                .collect();
            (b, reps)
        };
        let dim_cohomology = dim_cocycles - dim_coboundaries;
        debug_assert_eq!(representatives.len(), dim_cohomology);
        Ok(CohomologyReport {
            degree: n,
            dim_cocycles,
            dim_coboundaries,
            dim_cohomology,
            representatives,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fixture_a, fixture_b, fixture_c, seed_c};
    use crate::linalg::Field;

    fn q() -> Field {
        Field::Rational
    }

    // Fixture A worked by hand: ρ(1) = 1, ρ(x) = 0, x² = 0.
    #[test]
    fn fixture_a_differentials_by_hand() {
        let c = HochschildComplex::new(fixture_a(q())).unwrap();
        assert!(c.differential_matrix(0).unwrap().is_zero());
        assert_eq!(c.differential_matrix(0).unwrap().rows(), 2);

        let d1 = Matrix::from_i64(q(), &[&[1, 0], &[0, 0], &[0, 0], &[0, 0]]);
        assert_eq!(*c.differential_matrix(1).unwrap(), d1);

        let mut d2 = Matrix::zeros(q(), 8, 4);
        d2[(1, 1)] = q().one();
        d2[(4, 2)] = q().from_i64(-1);
        assert_eq!(*c.differential_matrix(2).unwrap(), d2);

        let dims: Vec<_> = (0..3).map(|n| c.cohomology(n).unwrap().dim_cohomology).collect();
        assert_eq!(dims, [1, 1, 1]);
    }

    #[test]
    fn squares_vanish_on_fixtures() {
        for module in [fixture_a(q()), fixture_b(q()), fixture_c(q())] {
            let c = HochschildComplex::new(module).unwrap();
            for n in 0..2 {
                let prod = c.differential_matrix(n + 1).unwrap().mul(&c.differential_matrix(n).unwrap());
                assert!(prod.is_zero());
            }
        }
    }

    #[test]
    fn entrywise_and_matrix_agree() {
        let module = fixture_c(q());
        let c = HochschildComplex::new(module.clone()).unwrap();
        let coords: Vec<_> = (0..8).map(|i| q().from_i64(i * i - 3)).collect();
        let f = Cochain::from_flat(q(), 2, 2, 1, &coords);
        let by_matrix = c.differential_matrix(1).unwrap().mul_vec(&coords);
        assert_eq!(c.differential(&f).unwrap().flatten(), by_matrix);
    }

    #[test]
    fn fixture_c_seed_has_canonical_witness() {
        let module = fixture_c(q());
        let c = HochschildComplex::new(module.clone()).unwrap();
        let sigma = seed_c(&module);
        assert!(c.is_cocycle(&sigma).unwrap());
        let w = c.coboundary_witness(&sigma).unwrap().unwrap();
        assert_eq!(w.value(&[]), Matrix::from_i64(q(), &[&[0, 0], &[1, 0]]));
        assert_eq!(c.differential(&w).unwrap(), sigma);
    }

    #[test]
    fn fixture_b_is_acyclic_in_low_degrees() {
        let c = HochschildComplex::new(fixture_b(q())).unwrap();
        assert_eq!(c.cohomology(0).unwrap().dim_cohomology, 1);
        assert_eq!(c.cohomology(1).unwrap().dim_cohomology, 0);
        assert_eq!(c.cohomology(2).unwrap().dim_cohomology, 0);
    }

    #[test]
    fn degree_guardrail_names_projected_size() {
        let c = HochschildComplex::new(fixture_b(q())).unwrap();
        let err = c.differential_matrix(4).unwrap_err().to_string();
        assert!(err.contains("4096x1024"), "{err}");
    }

    #[test]
    fn degree_zero_has_no_preimage() {
        let module = fixture_a(q());
        let c = HochschildComplex::new(module.clone()).unwrap();
        assert!(c.preimage(&Cochain::zero(&module, 0)).is_err());
    }
}
