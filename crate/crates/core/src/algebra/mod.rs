//! Finite-dimensional associative algebras, their modules, and bimodules.
//!
//! An algebra is given by structure constants: for basis elements `e_i`,
//! `e_j` the product is `e_i e_j = Σ_k c[i][j][k] e_k`. A left module of
//! dimension `d` is given by one `d×d` action matrix per basis element,
//! which is the same data as an algebra map `ξ: R → End(M)`.
//!
//! Every constructor validates eagerly. Downstream code may assume the
//! axioms hold exactly.

mod bimodule;
mod module;
mod report;

use crate::error::{Error, Result};
use crate::linalg::{inverse, Field, Matrix, Scalar};

pub use bimodule::{enveloping_left_module, Bimodule, EndBimodule};
pub use module::{validate_module, Module};
pub use report::{ValidationReport, Violation};

/// Unvalidated algebra data as read from input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraData {
    pub field: Field,
    pub labels: Vec<String>,
    /// `structure[i][j]` is the coordinate vector of `e_i e_j`.
    pub structure: Vec<Vec<Vec<Scalar>>>,
    pub unit: Vec<Scalar>,
}

/// A validated associative unital algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    dim: usize,
    // c[(i * dim + j) * dim + k]
    constants: Vec<Scalar>,
    unit: Vec<Scalar>,
}

/// Checks tensor shapes, then every associativity triple and both unit laws.
///
/// Shape problems are errors naming the offending path; axiom failures are
/// collected in the returned report.
pub fn validate_algebra(data: &AlgebraData) -> Result<ValidationReport> {
    let dim = data.structure.len();
    check_shapes(data)?;
    let c = |i: usize, j: usize| data.structure[i][j].as_slice();
    let zero = data.field.zero();
    let mut report = ValidationReport::default();

    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let mut left = vec![zero.clone(); dim];
                let mut right = vec![zero.clone(); dim];
                for m in 0..dim {
                    let a = &c(i, j)[m];
                    let b = &c(j, k)[m];
                    for n in 0..dim {
                        left[n].add_mul_assign(a, &c(m, k)[n]);
                        right[n].add_mul_assign(b, &c(i, m)[n]);
                    }
                }
                if left != right {
                    report.push(Violation::Associativity { i, j, k });
                }
            }
        }
    }

    for i in 0..dim {
        let mut left = vec![zero.clone(); dim];
        let mut right = vec![zero.clone(); dim];
        for (m, u) in data.unit.iter().enumerate() {
            for n in 0..dim {
                left[n].add_mul_assign(u, &c(m, i)[n]);
                right[n].add_mul_assign(u, &c(i, m)[n]);
            }
        }
        let e_i = basis_vector(data.field, dim, i);
        if left != e_i {
            report.push(Violation::LeftUnit { i });
        }
        if right != e_i {
            report.push(Violation::RightUnit { i });
        }
    }
    Ok(report)
}

fn check_shapes(data: &AlgebraData) -> Result<()> {
    let dim = data.structure.len();
    if !data.labels.is_empty() && data.labels.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "algebra.basis has {} labels, structure has dimension {dim}",
            data.labels.len()
        )));
    }
    if data.unit.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "algebra.unit has length {}, expected {dim}",
            data.unit.len()
        )));
    }
    for (i, row) in data.structure.iter().enumerate() {
        if row.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "algebra.structure[{i}] has length {}, expected {dim}",
                row.len()
            )));
        }
        for (j, v) in row.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "algebra.structure[{i}][{j}] has length {}, expected {dim}",
                    v.len()
                )));
            }
        }
    }
    let foreign = data
        .structure
        .iter()
        .flatten()
        .flatten()
        .chain(&data.unit)
        .any(|s| s.field() != data.field);
    if foreign {
        return Err(Error::InvalidInput("algebra mixes fields".into()));
    }
    Ok(())
}

pub(crate) fn basis_vector(field: Field, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

impl Algebra {
    /// Validates `data` and builds the algebra.
    pub fn new(data: AlgebraData) -> Result<Self> {
        let report = validate_algebra(&data)?;
        if !report.is_valid() {
            return Err(Error::InvalidAlgebra(report));
        }
        let dim = data.structure.len();
        let labels = if data.labels.is_empty() {
            (0..dim).map(|i| format!("e{i}")).collect()
        } else {
            data.labels
        };
        Ok(Algebra {
            field: data.field,
            labels,
            dim,
            constants: data.structure.into_iter().flatten().flatten().collect(),
            unit: data.unit,
        })
    }

    /// Builds an algebra from a basis-product closure returning integer
    /// coordinates. Used for the built-in examples.
    pub fn from_table(
        field: Field,
        labels: &[&str],
        unit: &[i64],
        product: impl Fn(usize, usize) -> Vec<i64>,
    ) -> Result<Self> {
        let dim = labels.len();
        let structure = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| product(i, j).into_iter().map(|x| field.from_i64(x)).collect())
                    .collect()
            })
            .collect();
        Algebra::new(AlgebraData {
            field,
            labels: labels.iter().map(|s| s.to_string()).collect(),
            structure,
            unit: unit.iter().map(|&x| field.from_i64(x)).collect(),
        })
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Self {
        Algebra::from_table(field, &["1"], &[1], |_, _| vec![1]).expect("ground field is valid")
    }

    /// `k[x]/(x^n)` with basis `1, x, …, x^{n-1}`.
    pub fn truncated_polynomial(field: Field, n: usize) -> Self {
        assert!(n >= 1);
        let labels: Vec<String> = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let unit: Vec<i64> = (0..n).map(|i| i64::from(i == 0)).collect();
        Algebra::from_table(field, &refs, &unit, |i, j| {
            (0..n).map(|k| i64::from(i + j == k)).collect()
        })
        .expect("truncated polynomial algebra is valid")
    }

    /// The dual numbers `k[x]/(x²)`.
    pub fn dual_numbers(field: Field) -> Self {
        Algebra::truncated_polynomial(field, 2)
    }

    /// The full matrix algebra `M_n(k)` in the matrix-unit basis
    /// `e_{11}, e_{12}, …, e_{nn}` (row-major), with `e_{pq} e_{rs} = δ_{qr} e_{ps}`.
    pub fn matrix_algebra(field: Field, n: usize) -> Self {
        let labels: Vec<String> = (0..n * n)
            .map(|a| format!("e{}{}", a / n + 1, a % n + 1))
            .collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let unit: Vec<i64> = (0..n * n).map(|a| i64::from(a / n == a % n)).collect();
        Algebra::from_table(field, &refs, &unit, |a, b| {
            let (p, q) = (a / n, a % n);
            let (r, s) = (b / n, b % n);
            let mut v = vec![0; n * n];
            if q == r {
                v[p * n + s] = 1;
            }
            v
        })
        .expect("matrix algebra is valid")
    }

    /// The group algebra of the cyclic group of order `n`, basis `g^0, …, g^{n-1}`.
    pub fn cyclic_group(field: Field, n: usize) -> Self {
        assert!(n >= 1);
        let labels: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let unit: Vec<i64> = (0..n).map(|i| i64::from(i == 0)).collect();
        Algebra::from_table(field, &refs, &unit, |i, j| {
            (0..n).map(|k| i64::from((i + j) % n == k)).collect()
        })
        .expect("group algebra is valid")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Coordinates of `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.constants[start..start + self.dim]
    }

    /// Nonzero coordinates of `e_i e_j` as `(k, c_ij^k)`.
    pub fn product_terms(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, &Scalar)> {
        self.product(i, j).iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Structure tensor as nested vectors, the `structure[i][j]` layout.
    pub fn structure(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.product(i, j).to_vec()).collect())
            .collect()
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        if u.len() != self.dim || v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "coordinate vectors of length {} and {}, algebra has dimension {}",
                u.len(),
                v.len(),
                self.dim
            )));
        }
        let mut out = vec![self.field.zero(); self.dim];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.product_terms(i, j) {
                    out[k].add_mul_assign(&ab, c);
                }
            }
        }
        Ok(out)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        basis_vector(self.field, self.dim, i)
    }

    /// The opposite algebra, `e_i ∘ e_j = e_j e_i`.
    pub fn opposite(&self) -> Algebra {
        let mut constants = Vec::with_capacity(self.constants.len());
        for i in 0..self.dim {
            for j in 0..self.dim {
                constants.extend_from_slice(self.product(j, i));
            }
        }
        Algebra {
            labels: self.labels.iter().map(|l| format!("{l}°")).collect(),
            constants,
            ..self.clone()
        }
    }

    /// Tensor product over the field, basis `(i, p)` at index `i * dim(other) + p`.
    pub fn tensor(&self, other: &Algebra) -> Algebra {
        assert_eq!(self.field, other.field, "tensor of algebras over different fields");
        let (d, e) = (self.dim, other.dim);
        let n = d * e;
        let mut constants = vec![self.field.zero(); n * n * n];
        for i in 0..d {
            for p in 0..e {
                for j in 0..d {
                    for q in 0..e {
                        let row = ((i * e + p) * n + (j * e + q)) * n;
                        for (k, a) in self.product_terms(i, j) {
                            for (r, b) in other.product_terms(p, q) {
                                constants[row + k * e + r] = a * b;
                            }
                        }
                    }
                }
            }
        }
        let mut unit = Vec::with_capacity(n);
        for a in &self.unit {
            for b in &other.unit {
                unit.push(a * b);
            }
        }
        let mut labels = Vec::with_capacity(n);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a}⊗{b}"));
            }
        }
        Algebra {
            field: self.field,
            labels,
            dim: n,
            constants,
            unit,
        }
    }

    /// Re-expresses the algebra in the basis `f_i = Σ_k p[k][i] e_k`.
    ///
    /// `p` must be invertible; the result is isomorphic to `self`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Algebra> {
        let d = self.dim;
        if p.rows() != d || p.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "change of basis is {}x{}, algebra has dimension {d}",
                p.rows(),
                p.cols()
            )));
        }
        let p_inv = inverse(p).ok_or_else(|| Error::InvalidInput("singular change of basis".into()))?;
        let mut structure = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = Vec::with_capacity(d);
            for j in 0..d {
                let old = self.multiply(&p.column(i), &p.column(j))?;
                row.push(p_inv.mul_vec(&old));
            }
            structure.push(row);
        }
        Algebra::new(AlgebraData {
            field: self.field,
            labels: (0..d).map(|i| format!("f{i}")).collect(),
            structure,
            unit: p_inv.mul_vec(&self.unit),
        })
    }
}
