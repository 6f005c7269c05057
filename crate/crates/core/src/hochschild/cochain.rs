use std::collections::BTreeMap;

use crate::algebra::Module;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

/// A Hochschild `n`-cochain: a linear map `R^{⊗n} → End(M)`, recorded by its
/// values on basis tuples `(e_{a_1}, …, e_{a_n})`.
///
/// Tuples that are absent map to zero, and zero values are never stored, so
/// two cochains are equal exactly when they agree as linear maps. A degree-0
/// cochain is a single endomorphism keyed by the empty tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    field: Field,
    algebra_dim: usize,
    module_dim: usize,
    degree: usize,
    entries: BTreeMap<Vec<usize>, Matrix>,
}

/// All `n`-tuples over `0..d` in lexicographic order.
pub fn tuples(d: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = d.pow(n as u32);
    (0..count).map(move |mut idx| {
        let mut t = vec![0; n];
        for slot in t.iter_mut().rev() {
            *slot = idx % d;
            idx /= d;
        }
        t
    })
}

/// Position of `t` in [`tuples`] order.
pub fn tuple_index(t: &[usize], d: usize) -> usize {
    t.iter().fold(0, |acc, &a| acc * d + a)
}

impl Cochain {
    pub fn zero(module: &Module, degree: usize) -> Self {
        Cochain::zero_shaped(module.field(), module.algebra().dim(), module.dim(), degree)
    }

    pub fn zero_shaped(field: Field, algebra_dim: usize, module_dim: usize, degree: usize) -> Self {
        Cochain {
            field,
            algebra_dim,
            module_dim,
            degree,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a cochain from `(tuple, matrix)` pairs, checking arity, index
    /// bounds, matrix shape, field, and duplicates.
    pub fn from_entries(
        module: &Module,
        degree: usize,
        entries: impl IntoIterator<Item = (Vec<usize>, Matrix)>,
    ) -> Result<Self> {
        let (dr, dm) = (module.algebra().dim(), module.dim());
        Cochain::from_entries_shaped(module.field(), dr, dm, degree, entries)
    }

    /// [`Cochain::from_entries`] without a module at hand.
    pub fn from_entries_shaped(
        field: Field,
        algebra_dim: usize,
        module_dim: usize,
        degree: usize,
        entries: impl IntoIterator<Item = (Vec<usize>, Matrix)>,
    ) -> Result<Self> {
        let mut c = Cochain::zero_shaped(field, algebra_dim, module_dim, degree);
        for (t, m) in entries {
            c.check_entry(&t, &m)?;
            if c.entries.contains_key(&t) {
                return Err(Error::InvalidInput(format!("duplicate tuple {t:?}")));
            }
            c.entries.insert(t, m);
        }
        c.entries.retain(|_, m| !m.is_zero());
        Ok(c)
    }

    fn check_entry(&self, t: &[usize], m: &Matrix) -> Result<()> {
        if t.len() != self.degree {
            return Err(Error::InvalidInput(format!(
                "tuple {t:?} has arity {}, cochain has degree {}",
                t.len(),
                self.degree
            )));
        }
        if let Some(&a) = t.iter().find(|&&a| a >= self.algebra_dim) {
            return Err(Error::InvalidInput(format!(
                "tuple {t:?} names basis element {a}, algebra has dimension {}",
                self.algebra_dim
            )));
        }
        if m.rows() != self.module_dim || m.cols() != self.module_dim {
            return Err(Error::DimensionMismatch(format!(
                "value at {t:?} is {}x{}, expected {d}x{d}",
                m.rows(),
                m.cols(),
                d = self.module_dim
            )));
        }
        if m.field() != self.field {
            return Err(Error::InvalidInput(format!("value at {t:?} is over a different field")));
        }
        Ok(())
    }

    /// Sets the value on a basis tuple. Panics on a malformed tuple or matrix.
    pub fn set(&mut self, tuple: Vec<usize>, value: Matrix) {
        if let Err(e) = self.check_entry(&tuple, &value) {
            panic!("{e}");
        }
        if value.is_zero() {
            self.entries.remove(&tuple);
        } else {
            self.entries.insert(tuple, value);
        }
    }

    pub fn with(mut self, tuple: Vec<usize>, value: Matrix) -> Self {
        self.set(tuple, value);
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    /// Whether this cochain lives in the complex of `module`.
    pub fn fits(&self, module: &Module) -> bool {
        self.field == module.field()
            && self.algebra_dim == module.algebra().dim()
            && self.module_dim == module.dim()
    }

    pub(crate) fn same_shape(&self, other: &Cochain) -> bool {
        self.field == other.field
            && self.algebra_dim == other.algebra_dim
            && self.module_dim == other.module_dim
            && self.degree == other.degree
    }

    pub fn get(&self, tuple: &[usize]) -> Option<&Matrix> {
        self.entries.get(tuple)
    }

    /// Value on a basis tuple, zero when absent.
    pub fn value(&self, tuple: &[usize]) -> Matrix {
        self.get(tuple)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.module_dim, self.module_dim))
    }

    /// Nonzero values in lexicographic tuple order.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Matrix)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Dimension of the cochain space, `d_R^n · d_M²`.
    pub fn space_dim(&self) -> usize {
        self.algebra_dim.pow(self.degree as u32) * self.module_dim * self.module_dim
    }

    fn combine(&self, other: &Cochain, f: impl Fn(&Matrix, &Matrix) -> Matrix) -> Cochain {
        assert!(self.same_shape(other), "cochain shape mismatch");
        let mut out = Cochain { entries: BTreeMap::new(), ..self.clone() };
        let keys: std::collections::BTreeSet<&Vec<usize>> =
            self.entries.keys().chain(other.entries.keys()).collect();
        for k in keys {
            let v = f(&self.value(k), &other.value(k));
            if !v.is_zero() {
                out.entries.insert(k.clone(), v);
            }
        }
        out
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.combine(other, Matrix::add)
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.combine(other, Matrix::sub)
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            entries: self.entries.iter().map(|(k, v)| (k.clone(), v.neg())).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, s: &Scalar) -> Cochain {
        let mut out = Cochain { entries: BTreeMap::new(), ..self.clone() };
        if !s.is_zero() {
            out.entries = self.entries.iter().map(|(k, v)| (k.clone(), v.scale(s))).collect();
        }
        out
    }

    /// Dense coordinates: tuples in lexicographic order, each value
    /// flattened row-major.
    pub fn flatten(&self) -> Vec<Scalar> {
        let d2 = self.module_dim * self.module_dim;
        let mut out = vec![self.field.zero(); self.space_dim()];
        for (t, m) in &self.entries {
            let base = tuple_index(t, self.algebra_dim) * d2;
            out[base..base + d2].clone_from_slice(m.entries());
        }
        out
    }

    /// Inverse of [`Cochain::flatten`].
    pub fn from_flat(
        field: Field,
        algebra_dim: usize,
        module_dim: usize,
        degree: usize,
        coords: &[Scalar],
    ) -> Self {
        let mut c = Cochain::zero_shaped(field, algebra_dim, module_dim, degree);
        assert_eq!(coords.len(), c.space_dim(), "coordinate vector length");
        let d2 = module_dim * module_dim;
        for (idx, t) in tuples(algebra_dim, degree).enumerate() {
            let chunk = &coords[idx * d2..(idx + 1) * d2];
            if chunk.iter().all(Scalar::is_zero) {
                continue;
            }
            let rows = chunk.chunks(module_dim.max(1)).map(<[Scalar]>::to_vec).collect();
            c.entries.insert(t, Matrix::from_rows(field, rows));
        }
        c
    }

    /// Same map, shaped like `self`, from flat coordinates.
    pub(crate) fn reshape(&self, degree: usize, coords: &[Scalar]) -> Cochain {
        Cochain::from_flat(self.field, self.algebra_dim, self.module_dim, degree, coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use std::sync::Arc;

    const Q: Field = Field::Rational;

    fn module() -> Module {
        let n = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        Module::new(Arc::new(Algebra::dual_numbers(Q)), 2, vec![Matrix::identity(Q, 2), n]).unwrap()
    }

    #[test]
    fn tuple_order_is_lexicographic() {
        let ts: Vec<_> = tuples(2, 2).collect();
        assert_eq!(ts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        for (i, t) in ts.iter().enumerate() {
            assert_eq!(tuple_index(t, 2), i);
        }
        assert_eq!(tuples(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn flatten_layout() {
        let m = module();
        let c = Cochain::zero(&m, 1).with(vec![1], Matrix::from_i64(Q, &[&[1, 2], &[3, 4]]));
        let flat: Vec<String> = c.flatten().iter().map(|s| s.to_string()).collect();
        assert_eq!(flat, ["0", "0", "0", "0", "1", "2", "3", "4"]);
        assert_eq!(c.reshape(1, &c.flatten()), c);
    }

    #[test]
    fn zero_values_are_not_stored() {
        let m = module();
        let c = Cochain::zero(&m, 1).with(vec![0], Matrix::zeros(Q, 2, 2));
        assert!(c.is_zero());
        let a = Cochain::zero(&m, 1).with(vec![0], Matrix::identity(Q, 2));
        assert!(a.sub(&a).is_zero());
        assert!(a.scale(&Q.zero()).is_zero());
    }

    #[test]
    fn from_entries_rejects_bad_input() {
        let m = module();
        let id = Matrix::identity(Q, 2);
        assert!(Cochain::from_entries(&m, 1, [(vec![0, 0], id.clone())]).is_err());
        assert!(Cochain::from_entries(&m, 1, [(vec![2], id.clone())]).is_err());
        assert!(Cochain::from_entries(&m, 1, [(vec![0], Matrix::identity(Q, 3))]).is_err());
        assert!(Cochain::from_entries(&m, 1, [(vec![0], id.clone()), (vec![0], id.clone())]).is_err());
        assert!(Cochain::from_entries(&m, 0, [(vec![], id)]).is_ok());
    }
}
