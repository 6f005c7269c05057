#![allow(dead_code)]

use std::sync::Arc;

use hochdef::algebra::{Algebra, Module};
use hochdef::hochschild::{Cochain, HochschildComplex};
use hochdef::linalg::{kernel_basis, Field, Matrix, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(rng: &mut ChaCha8Rng, field: Field, bound: i64) -> Scalar {
    field.from_i64(rng.gen_range(-bound..=bound))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, field: Field, rows: usize, cols: usize, bound: i64) -> Matrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| small(rng, field, bound)).collect())
        .collect();
    if rows == 0 || cols == 0 {
        return Matrix::zeros(field, rows, cols);
    }
    Matrix::from_rows(field, data)
}

/// Unit lower times unit upper triangular: determinant one.
pub fn random_unimodular(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Matrix {
    let mut lower = Matrix::identity(field, n);
    let mut upper = Matrix::identity(field, n);
    for i in 0..n {
        for j in 0..i {
            lower[(i, j)] = small(rng, field, 2);
            upper[(j, i)] = small(rng, field, 2);
        }
    }
    lower.mul(&upper)
}

fn strictly_upper(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in i + 1..n {
            m[(i, j)] = small(rng, field, 2);
        }
    }
    m
}

fn powers(base: &Matrix, count: usize) -> Vec<Matrix> {
    let mut out = vec![Matrix::identity(base.field(), base.rows())];
    for k in 1..count {
        out.push(out[k - 1].mul(base));
    }
    out
}

fn cyclic_shift(field: Field, dim: usize, cycle: usize) -> Matrix {
    let mut m = Matrix::identity(field, dim);
    if cycle >= 2 {
        for i in 0..cycle {
            m[(i, i)] = field.zero();
            m[((i + 1) % cycle, i)] = field.one();
        }
    }
    m
}

/// A valid module in a standard basis, `d_R ≤ 4`, `d_M ≤ 3`.
fn standard_module(rng: &mut ChaCha8Rng, field: Field) -> Module {
    let kind = rng.gen_range(0..8);
    let dm = rng.gen_range(1..=3usize);
    match kind {
        0 => {
            let a = Arc::new(Algebra::ground(field));
            Module::new(a, dm, vec![Matrix::identity(field, dm)]).unwrap()
        }
        1 => {
            let a = Arc::new(Algebra::dual_numbers(field));
            let mut n = Matrix::zeros(field, dm, dm);
            if dm >= 2 && rng.gen_bool(0.8) {
                n[(0, dm - 1)] = small(rng, field, 3);
            }
            Module::new(a, dm, vec![Matrix::identity(field, dm), n]).unwrap()
        }
        2 | 3 => {
            let a = Arc::new(Algebra::truncated_polynomial(field, kind + 1));
            let n = strictly_upper(rng, field, dm);
            Module::new(a, dm, powers(&n, kind + 1)).unwrap()
        }
        4 => {
            let order = rng.gen_range(2..=4usize);
            let a = Arc::new(Algebra::cyclic_group(field, order));
            let cycle = match order {
                3 if dm == 3 => 3,
                2 | 4 if dm >= 2 => 2,
                _ => 1,
            };
            Module::new(a, dm, powers(&cyclic_shift(field, dm, cycle), order)).unwrap()
        }
        5 => {
            let a = Arc::new(Algebra::matrix_algebra(field, 2));
            let action = (0..4)
                .map(|u| {
                    let mut m = Matrix::zeros(field, 2, 2);
                    m[(u / 2, u % 2)] = field.one();
                    m
                })
                .collect();
            Module::new(a, 2, action).unwrap()
        }
        6 => {
            let a = match rng.gen_range(0..3) {
                0 => Algebra::dual_numbers(field),
                1 => Algebra::truncated_polynomial(field, 3),
                _ => Algebra::cyclic_group(field, 3),
            };
            Module::regular(Arc::new(a))
        }
        _ => {
            let d = Algebra::dual_numbers(field);
            let a = Arc::new(d.tensor(&d));
            let mut x = Matrix::zeros(field, dm, dm);
            let mut y = Matrix::zeros(field, dm, dm);
            if dm >= 2 {
                x[(0, dm - 1)] = small(rng, field, 2);
                y[(0, dm - 1)] = small(rng, field, 2);
            }
            let id = Matrix::identity(field, dm);
            let action = vec![id, y.clone(), x.clone(), x.mul(&y)];
            Module::new(a, dm, action).unwrap()
        }
    }
}

/// A random valid module with randomly changed algebra and module bases.
pub fn random_module(rng: &mut ChaCha8Rng, field: Field) -> Arc<Module> {
    let m = standard_module(rng, field);
    let p = random_unimodular(rng, field, m.algebra().dim());
    let s = random_unimodular(rng, field, m.dim());
    Arc::new(m.change_algebra_basis(&p).unwrap().change_basis(&s).unwrap())
}

pub fn random_cochain(rng: &mut ChaCha8Rng, module: &Module, degree: usize) -> Cochain {
    let field = module.field();
    let dr = module.algebra().dim();
    let dm = module.dim();
    let len = dr.pow(degree as u32) * dm * dm;
    let coords: Vec<Scalar> = (0..len)
        .map(|_| if rng.gen_bool(0.6) { small(rng, field, 4) } else { field.zero() })
        .collect();
    Cochain::from_flat(field, dr, dm, degree, &coords)
}

/// A random element of the kernel of `d_n`.
pub fn random_cocycle(rng: &mut ChaCha8Rng, complex: &HochschildComplex, degree: usize) -> Cochain {
    let module = complex.module();
    let field = module.field();
    let basis = kernel_basis(&complex.differential_matrix(degree).unwrap());
    let mut coords = vec![field.zero(); complex.cochain_dim(degree)];
    for v in &basis {
        let c = small(rng, field, 3);
        for (x, y) in coords.iter_mut().zip(v) {
            *x += &(&c * y);
        }
    }
    Cochain::from_flat(field, module.algebra().dim(), module.dim(), degree, &coords)
}
