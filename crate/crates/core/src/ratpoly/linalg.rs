use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

/// Exact rank by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled to integers; the elimination then stays in
/// `BigInt` and every division is exact.
pub fn rank_exact(matrix: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            row.iter()
                .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in rank + 1..rows {
            let f = m[i][col].clone();
            for j in col + 1..cols {
                let v = &m[i][j] * &pivot - &f * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Basis of the right kernel, one vector per free column of the reduced
/// row echelon form (free entry set to 1).
pub fn null_vector_exact(matrix: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = matrix.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..cols {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

/// Thin singular value decomposition `A V = U diag(sigma)`; only `sigma`
/// and `V` are kept.
#[derive(Clone, Debug)]
pub struct Svd {
    /// Decreasing singular values, one per column of the input.
    pub sigma: Vec<f64>,
    /// Right singular vectors; `v[k]` pairs with `sigma[k]`.
    pub v: Vec<Vec<f64>>,
}

/// One-sided Jacobi (Hestenes) SVD of a row-major matrix.
pub fn svd_jacobi(matrix: &[Vec<f64>]) -> Svd {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut u: Vec<Vec<f64>> = (0..cols)
        .map(|j| (0..rows).map(|i| matrix[i][j]).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..cols)
        .map(|j| (0..cols).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: f64 = u[p].iter().map(|x| x * x).sum();
                let beta: f64 = u[q].iter().map(|x| x * x).sum();
                let gamma: f64 = u[p].iter().zip(&u[q]).map(|(x, y)| x * y).sum();
                if gamma == 0.0 || libm::fabs(gamma) <= 1e-15 * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = libm::copysign(1.0, zeta) / (libm::fabs(zeta) + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                for cols_pair in [&mut u, &mut v] {
                    let (a, b) = cols_pair.split_at_mut(q);
                    for (x, y) in a[p].iter_mut().zip(b[0].iter_mut()) {
                        let (xp, yq) = (*x, *y);
                        *x = c * xp - s * yq;
                        *y = s * xp + c * yq;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut pairs: Vec<(f64, Vec<f64>)> = u
        .iter()
        .map(|col| libm::sqrt(col.iter().map(|x| x * x).sum()))
        .zip(v)
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let (sigma, v) = pairs.into_iter().unzip();
    Svd { sigma, v }
}

/// Count of singular values above `tol` relative to the largest one.
pub fn numerical_rank(matrix: &[Vec<f64>], tol: f64) -> usize {
    let svd = svd_jacobi(matrix);
    let top = svd.sigma.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    svd.sigma.iter().filter(|&&s| s > tol * top).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use proptest::prelude::*;

    fn qm(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&c| Rational::from_i64(c)).collect())
            .collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank_exact(&qm(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_exact(&qm(&[&[0]])), 0);
        assert_eq!(rank_exact(&qm(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank_exact(&qm(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]])), 2);
        // the Taylor matrix [f4, f3; f5, f4] for gammas (9, 4, 1)
        assert_eq!(rank_exact(&qm(&[&[-126, -18], &[-882, -126]])), 1);
    }

    #[test]
    fn rational_rows() {
        let m = vec![
            vec![Rational::from_ratio(1, 3), Rational::from_ratio(1, 2)],
            vec![Rational::from_ratio(2, 9), Rational::from_ratio(1, 3)],
        ];
        assert_eq!(rank_exact(&m), 1);
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        let ker = null_vector_exact(&m);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for row in &m {
                let dot: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn jacobi_against_known_values() {
        let svd = svd_jacobi(&[vec![3.0, 0.0], vec![0.0, -4.0], vec![0.0, 0.0]]);
        assert!((svd.sigma[0] - 4.0).abs() < 1e-14);
        assert!((svd.sigma[1] - 3.0).abs() < 1e-14);
    }

    fn int_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-9i64..10, n), n)
    }

    proptest! {
        #[test]
        fn exact_rank_matches_float_rank(n in 1usize..9, seed in any::<u64>()) {
            // low-rank products B C keep the matrix well separated from its rank
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let k = rng.gen_range(0..=n);
            let b: Vec<Vec<i64>> = (0..n).map(|_| (0..k).map(|_| rng.gen_range(-5..6)).collect()).collect();
            let c: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-5..6)).collect()).collect();
            let a: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| (0..k).map(|l| b[i][l] * c[l][j]).sum()).collect())
                .collect();
            let exact = rank_exact(&a.iter().map(|r| r.iter().map(|&x| Rational::from_i64(x)).collect()).collect::<Vec<_>>());
            let af: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
            let float = numerical_rank(&af, 1e-9);
            prop_assert_eq!(exact, float);
            let na = nalgebra::DMatrix::from_fn(n, n, |i, j| af[i][j]);
            let sv = na.singular_values();
            let top = sv.max();
            let oracle = if top == 0.0 { 0 } else { sv.iter().filter(|&&s| s > 1e-9 * top).count() };
            prop_assert_eq!(exact, oracle);
        }

        #[test]
        fn exact_rank_random_full(m in int_matrix(6)) {
            let exact = rank_exact(&m.iter().map(|r| r.iter().map(|&x| Rational::from_i64(x)).collect()).collect::<Vec<_>>());
            let na = nalgebra::DMatrix::from_fn(6, 6, |i, j| m[i][j] as f64);
            let det = na.determinant();
            // full rank iff the integer determinant is nonzero
            prop_assert_eq!(exact == 6, det.abs() > 0.5);
        }

        #[test]
        fn jacobi_matches_nalgebra(m in prop::collection::vec(prop::collection::vec(-10.0f64..10.0, 4), 5)) {
            let ours = svd_jacobi(&m).sigma;
            let na = nalgebra::DMatrix::from_fn(5, 4, |i, j| m[i][j]);
            let mut theirs: Vec<f64> = na.singular_values().iter().copied().collect();
            theirs.sort_by(|a, b| b.total_cmp(a));
            for (a, b) in ours.iter().zip(&theirs) {
                prop_assert!((a - b).abs() < 1e-9 * (1.0 + b));
            }
        }
    }
}
