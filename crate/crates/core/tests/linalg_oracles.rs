use hochdef::linalg::{inverse, kernel_basis, rank, rref, solve, Field, Matrix, Scalar};
use proptest::prelude::*;

/// Fraction-free elimination over the integers.
fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (nr, nc) = (m.len(), m.first().map_or(0, Vec::len));
    let mut prev = 1i128;
    let mut r = 0;
    for c in 0..nc {
        let Some(p) = (r..nr).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in r + 1..nr {
            for j in c + 1..nc {
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
        if r == nr {
            break;
        }
    }
    r
}

fn int_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-4i64..=4, c), r)
    })
}

fn to_matrix(field: Field, rows: &[Vec<i64>]) -> Matrix {
    Matrix::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
}

fn low_rank(rows: &[Vec<i64>], keep: usize) -> Vec<Vec<i64>> {
    // Later rows become sums of the first `keep` ones.
    let keep = keep.max(1).min(rows.len());
    let mut out = rows.to_vec();
    for i in keep..out.len() {
        let (a, b) = (i % keep, (i * 7 + 3) % keep);
        out[i] = out[a].iter().zip(&out[b]).map(|(x, y)| x - 2 * y).collect();
    }
    out
}

#[test]
fn worked_rref() {
    let q = Field::Rational;
    let a = Matrix::from_i64(q, &[&[2, 4, 2], &[1, 2, 3], &[0, 0, 4]]);
    let (r, pivots) = rref(&a);
    assert_eq!(r, Matrix::from_i64(q, &[&[1, 2, 0], &[0, 0, 1], &[0, 0, 0]]));
    assert_eq!(pivots, [0, 2]);
    let k = kernel_basis(&a);
    assert_eq!(k, vec![vec![q.from_i64(-2), q.one(), q.zero()]]);
}

#[test]
fn rational_solution_is_exact() {
    let q = Field::Rational;
    let a = Matrix::from_i64(q, &[&[3, 1], &[1, 2]]);
    let b = vec![q.one(), q.zero()];
    let x = solve(&a, &b).unwrap().particular.unwrap();
    assert_eq!(x, vec![q.fraction(2, 5).unwrap(), q.fraction(-1, 5).unwrap()]);
}

#[test]
fn prime_field_rank_can_drop() {
    let a = [vec![1, 2], vec![3, 1]];
    assert_eq!(rank(&to_matrix(Field::Rational, &a)), 2);
    assert_eq!(rank(&to_matrix(Field::prime(5).unwrap(), &a)), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_matches_bareiss(rows in int_matrix(6, 6), keep in 1usize..6) {
        let rows = low_rank(&rows, keep);
        prop_assert_eq!(rank(&to_matrix(Field::Rational, &rows)), bareiss_rank(&rows));
    }

    #[test]
    fn rref_is_idempotent_and_row_equivalent(rows in int_matrix(5, 6), keep in 1usize..5) {
        let rows = low_rank(&rows, keep);
        let a = to_matrix(Field::Rational, &rows);
        let (r, pivots) = rref(&a);
        prop_assert_eq!(&rref(&r).0, &r);
        for (i, &p) in pivots.iter().enumerate() {
            for k in 0..r.rows() {
                prop_assert_eq!(r[(k, p)].is_one(), k == i);
                prop_assert!(k == i || r[(k, p)].is_zero());
            }
        }
        // Stacking the rref under the input adds no rank.
        let mut both = a.to_rows();
        both.extend(r.to_rows());
        prop_assert_eq!(rank(&Matrix::from_rows(Field::Rational, both)), pivots.len());
    }

    #[test]
    fn rank_nullity(rows in int_matrix(6, 6), keep in 1usize..6, p in prop::sample::select(vec![0u64, 2, 3, 7, 101])) {
        let field = if p == 0 { Field::Rational } else { Field::prime(p).unwrap() };
        let a = to_matrix(field, &low_rank(&rows, keep));
        let k = kernel_basis(&a);
        prop_assert_eq!(k.len() + rank(&a), a.cols());
        for v in &k {
            prop_assert!(a.mul_vec(v).iter().all(Scalar::is_zero));
        }
        let km = Matrix::from_columns(field, a.cols(), &k);
        prop_assert_eq!(rank(&km), k.len());
    }

    #[test]
    fn solve_is_consistent(rows in int_matrix(5, 5), keep in 1usize..5, rhs in prop::collection::vec(-3i64..=3, 5), in_image: bool) {
        let q = Field::Rational;
        let a = to_matrix(q, &low_rank(&rows, keep));
        let b: Vec<Scalar> = if in_image {
            let x: Vec<Scalar> = rhs.iter().take(a.cols()).chain(std::iter::repeat(&1)).take(a.cols()).map(|&v| q.from_i64(v)).collect();
            a.mul_vec(&x)
        } else {
            rhs.iter().chain(std::iter::repeat(&0)).take(a.rows()).map(|&v| q.from_i64(v)).collect()
        };
        let sol = solve(&a, &b).unwrap();
        let augmented = a.hstack(&Matrix::from_columns(q, a.rows(), std::slice::from_ref(&b)));
        prop_assert_eq!(sol.is_consistent(), rank(&augmented) == rank(&a));
        if in_image {
            prop_assert!(sol.is_consistent());
        }
        if let Some(x) = &sol.particular {
            prop_assert_eq!(&a.mul_vec(x), &b);
        }
        prop_assert_eq!(sol.kernel_basis.len(), a.cols() - rank(&a));
    }

    #[test]
    fn kronecker_rank_multiplies(a in int_matrix(3, 3), b in int_matrix(3, 3)) {
        let q = Field::Rational;
        let (ma, mb) = (to_matrix(q, &a), to_matrix(q, &b));
        prop_assert_eq!(rank(&ma.kronecker(&mb)), rank(&ma) * rank(&mb));
    }

    #[test]
    fn inverse_is_two_sided(rows in int_matrix(4, 4), p in prop::sample::select(vec![0u64, 5, 13])) {
        let field = if p == 0 { Field::Rational } else { Field::prime(p).unwrap() };
        let n = rows.len().min(rows[0].len());
        let square: Vec<Vec<i64>> = rows.iter().take(n).map(|r| r[..n].to_vec()).collect();
        let a = to_matrix(field, &square);
        match inverse(&a) {
            Some(inv) => {
                prop_assert_eq!(a.mul(&inv), Matrix::identity(field, n));
                prop_assert_eq!(inv.mul(&a), Matrix::identity(field, n));
            }
            None => prop_assert!(rank(&a) < n),
        }
    }

    #[test]
    fn rational_text_round_trip(num in -10_000i64..10_000, den in 1i64..10_000) {
        let q = Field::Rational;
        let x = q.fraction(num, den).unwrap();
        let text = x.to_string();
        prop_assert_eq!(q.parse(&text).unwrap(), x);
        prop_assert!(!text.contains('/') || !text.ends_with("/1"));
    }

    #[test]
    fn residue_text_round_trip(v in 0u64..1_000_003) {
        let f = Field::prime(1_000_003).unwrap();
        let x = f.parse(&v.to_string()).unwrap();
        prop_assert_eq!(x.to_string(), v.to_string());
    }
}
