use super::{Matrix, Scalar};
use crate::error::{Error, Result};

/// Outcome of solving `A x = b`.
///
/// `particular` is the canonical solution with every free variable of the
/// reduced echelon form set to zero; `kernel_basis` spans the solutions of
/// the homogeneous system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub particular: Option<Vec<Scalar>>,
    pub kernel_basis: Vec<Vec<Scalar>>,
}

impl SolveResult {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }
}

/// A reduced row-echelon basis of a row space, built one row at a time.
///
/// Rows are stored sparsely with their pivot entry equal to one; every
/// pivot column is zero in all other rows.
struct EchelonBasis {
    rows: Vec<(usize, Vec<(usize, Scalar)>)>,
    row_of_pivot: Vec<Option<usize>>,
}

impl EchelonBasis {
    fn new(cols: usize) -> Self {
        EchelonBasis {
            rows: Vec::new(),
            row_of_pivot: vec![None; cols],
        }
    }

    /// Reduces `v` against the basis and keeps it if something remains.
    fn insert(&mut self, mut v: Vec<Scalar>) {
        for c in 0..v.len() {
            if v[c].is_zero() {
                continue;
            }
            let Some(k) = self.row_of_pivot[c] else { continue };
            let f = v[c].clone();
            for (j, x) in &self.rows[k].1 {
                v[*j].sub_mul_assign(&f, x);
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return;
        };
        let inv = v[p].inv().expect("pivot is nonzero");
        let new: Vec<(usize, Scalar)> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x * &inv))
            .collect();
        for (_, row) in &mut self.rows {
            let Some(at) = row.iter().position(|(j, _)| *j == p) else { continue };
            let f = row[at].1.clone();
            let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(row.len() + new.len());
            let (mut a, mut b) = (row.iter().peekable(), new.iter().peekable());
            loop {
                let entry = match (a.peek(), b.peek()) {
                    (Some((ja, xa)), Some((jb, xb))) if ja == jb => {
                        let mut x = xa.clone();
                        x.sub_mul_assign(&f, xb);
                        a.next();
                        b.next();
                        (*ja, x)
                    }
                    (Some((ja, xa)), Some((jb, _))) if ja < jb => {
                        a.next();
                        (*ja, xa.clone())
                    }
                    (Some((ja, xa)), None) => {
                        a.next();
                        (*ja, xa.clone())
                    }
                    (_, Some((jb, xb))) => {
                        b.next();
                        (*jb, -&(&f * xb))
                    }
                    (None, None) => break,
                };
                if !entry.1.is_zero() {
                    merged.push(entry);
                }
            }
            *row = merged;
        }
        self.row_of_pivot[p] = Some(self.rows.len());
        self.rows.push((p, new));
    }
}

/// Gauss-Jordan elimination in place, returning the pivot columns.
fn reduce_in_place(m: &mut Matrix) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut basis = EchelonBasis::new(cols);
    // Sparse rows first keeps fill-in low; the reduced form is unique.
    let mut order: Vec<(usize, usize)> = (0..rows)
        .map(|i| (m.row(i).iter().filter(|x| !x.is_zero()).count(), i))
        .filter(|&(nnz, _)| nnz > 0)
        .collect();
    order.sort_unstable();
    for (_, i) in order {
        if basis.rows.len() == cols {
            break;
        }
        basis.insert(m.row(i).to_vec());
    }
    let mut found = basis.rows;
    found.sort_by_key(|(p, _)| *p);
    let zero = m.field().zero();
    let data = m.data_mut();
    data.iter_mut().for_each(|x| *x = zero.clone());
    for (r, (_, row)) in found.iter().enumerate() {
        for (j, x) in row {
            data[r * cols + j] = x.clone();
        }
    }
    found.into_iter().map(|(p, _)| p).collect()
}

/// Reduced row-echelon form and its strictly increasing pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut r = m.clone();
    let pivots = reduce_in_place(&mut r);
    (r, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Null-space basis read off the reduced echelon form: one vector per free
/// column, with that column set to one and the other free columns to zero.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(m);
    kernel_from_rref(&r, &pivots)
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize]) -> Vec<Vec<Scalar>> {
    let field = r.field();
    let cols = r.cols();
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(row, free)];
            }
            v
        })
        .collect()
}

/// Solves `a x = b` exactly.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<SolveResult> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let field = a.field();
    let cols = a.cols();
    let rhs = Matrix::from_columns(field, a.rows(), std::slice::from_ref(&b.to_vec()));
    let (r, pivots) = rref(&a.hstack(&rhs));

    // A pivot in the augmented column means b is outside the column span.
    let consistent = pivots.last().is_none_or(|&p| p < cols);
    let coeff_pivots: Vec<usize> = pivots.iter().copied().filter(|&p| p < cols).collect();

    let particular = consistent.then(|| {
        let mut x = vec![field.zero(); cols];
        for (row, &p) in coeff_pivots.iter().enumerate() {
            x[p] = r[(row, cols)].clone();
        }
        x
    });

    // Kernel of `a` from the same reduction, dropping the augmented column.
    let kernel_basis = kernel_from_rref(&drop_last_column(&r), &coeff_pivots);
    Ok(SolveResult {
        particular,
        kernel_basis,
    })
}

fn drop_last_column(m: &Matrix) -> Matrix {
    let rows = m
        .to_rows()
        .into_iter()
        .map(|mut r| {
            r.pop();
            r
        })
        .collect();
    let mut out = Matrix::from_rows(m.field(), rows);
    if m.rows() == 0 {
        out = Matrix::zeros(m.field(), 0, m.cols() - 1);
    }
    out
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    assert!(m.is_square(), "inverse of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Some(m.clone());
    }
    let (r, pivots) = rref(&m.hstack(&Matrix::identity(m.field(), n)));
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let mut inv = Matrix::zeros(m.field(), n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = r[(i, n + j)].clone();
        }
    }
    Some(inv)
}
