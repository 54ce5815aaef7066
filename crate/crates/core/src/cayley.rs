//! Matrix form of the periodicity condition.
//!
//! With `f(t) = sqrt(prod (1 - gamma_i t)) = sum f_l t^l`, trajectories
//! sharing the caustics are periodic with elliptic period `m` iff `m >= n`
//! and the `(m - 1) x (m - n + 1)` matrix with rows `f_{m+1} .. f_{n+1}`
//! down to `f_{2m-1} .. f_{m+n-1}` has rank below `m - n + 1`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::confocal::MergedSpectrum;
use crate::error::{Error, Result};
use crate::ratpoly::{elementary_symmetric, rank_exact, svd_jacobi, Poly, Rational};
use crate::scalar::Scalar;

/// Taylor coefficients `f_0 .. f_L` of `sqrt(prod (1 - gamma_i t))`.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorSeries<S> {
    gammas: Vec<S>,
    coeffs: Vec<S>,
}

impl<S: Scalar> TaylorSeries<S> {
    pub fn gammas(&self) -> &[S] {
        &self.gammas
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `f_l`; panics past the order.
    pub fn f(&self, l: usize) -> S {
        self.coeffs[l].clone()
    }

    /// `f^2 - prod (1 - gamma_i t)` vanishes through degree `L`, up to `tol`
    /// for floats.
    pub fn squares_to_product(&self, tol: f64) -> bool {
        let f = Poly::new(self.coeffs.clone());
        let r = self
            .gammas
            .iter()
            .fold(Poly::one(), |acc, g| &acc * &Poly::new(vec![S::one(), -g.clone()]));
        let diff = &(&f * &f) - &r;
        (0..=self.order()).all(|l| diff.coeff(l).is_negligible(tol))
    }
}

/// The recursion `f_0 = 1`, `2 f_l = (-1)^l e_l(gamma) - sum_{k=1}^{l-1} f_k f_{l-k}`.
pub fn taylor_coeffs<S: Scalar>(gammas: &[S], order: usize) -> TaylorSeries<S> {
    let two = S::from_i64(2);
    let mut f: Vec<S> = Vec::with_capacity(order + 1);
    f.push(S::one());
    for l in 1..=order {
        let e = elementary_symmetric(gammas, l);
        let signed = if l % 2 == 0 { e } else { -e };
        let conv = (1..l).fold(S::zero(), |acc, k| acc + f[k].clone() * f[l - k].clone());
        f.push((signed - conv) / two.clone());
    }
    let series = TaylorSeries {
        gammas: gammas.to_vec(),
        coeffs: f,
    };
    debug_assert!(!S::EXACT || series.squares_to_product(0.0));
    series
}

/// The matrix of the condition, laid out as displayed: row `i`, column `j`
/// (both 0-based) holds `f_{m+1+i-j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyMatrix<S> {
    m: usize,
    n: usize,
    entries: Vec<Vec<S>>,
}

impl<S: Scalar> CayleyMatrix<S> {
    /// Needs a series of order at least `2m - 1`.
    pub fn new(series: &TaylorSeries<S>, m: usize, n: usize) -> Result<Self> {
        if m < n {
            return Err(Error::EllipticPeriodBelowDimension { m, n });
        }
        if series.order() + 1 < 2 * m {
            return Err(Error::IndexOutOfRange(format!(
                "series of order {} is too short for m = {m}",
                series.order()
            )));
        }
        let entries = (0..m - 1)
            .map(|i| (0..=m - n).map(|j| series.f(m + 1 + i - j)).collect())
            .collect();
        Ok(CayleyMatrix { m, n, entries })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> S {
        self.entries[i][j].clone()
    }

    /// `[top-left, top-right, bottom-left, bottom-right]`.
    pub fn corners(&self) -> [S; 4] {
        let (r, c) = (self.entries.len() - 1, self.m - self.n);
        [self.entry(0, 0), self.entry(0, c), self.entry(r, 0), self.entry(r, c)]
    }

    /// Column-reversed copy, a standard Hankel matrix `h_{ij} = f_{n+1+i+j}`.
    pub fn hankel(&self) -> Vec<Vec<S>> {
        self.entries
            .iter()
            .map(|row| row.iter().rev().cloned().collect())
            .collect()
    }
}

/// Verdict of the exact rank test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyVerdict {
    pub holds: bool,
    pub rank: usize,
    /// Number of columns, `m - n + 1`; the condition is `rank < columns`.
    pub columns: usize,
}

/// Exact rank test on raw `gamma` values (`2n - 1` of them).
pub fn cayley_rank(gammas: &[Rational], m: usize) -> Result<CayleyVerdict> {
    let n = gammas.len().div_ceil(2);
    if m < n {
        return Err(Error::EllipticPeriodBelowDimension { m, n });
    }
    let series = taylor_coeffs(gammas, 2 * m - 1);
    let mat = CayleyMatrix::new(&series, m, n)?;
    let rank = if mat.rows().is_empty() {
        0
    } else {
        rank_exact(mat.rows())
    };
    Ok(CayleyVerdict {
        holds: rank < m - n + 1,
        rank,
        columns: m - n + 1,
    })
}

/// The condition `C(m, n)` decided by exact rank.
pub fn cayley_condition(spec: &MergedSpectrum<Rational>, m: usize) -> Result<CayleyVerdict> {
    cayley_rank(spec.gammas(), m)
}

/// Float diagnostic: singular values of the matrix built from gammas
/// rescaled by `1 / gamma_1` (the rank is scale invariant), divided by the
/// Frobenius norm of the same matrix built from the majorant series
/// `prod (2 - sqrt(1 - gamma_i t))`. That norm bounds the size of every
/// partial sum in the recursion, so it is the scale rounding errors live on.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyDiagnostic {
    pub singular_values: Vec<f64>,
    pub numerical_rank: usize,
    pub columns: usize,
}

impl CayleyDiagnostic {
    /// Rank deficient at the given relative threshold.
    pub fn holds(&self) -> bool {
        self.numerical_rank < self.columns
    }

    /// Smallest normalized singular value, the distance-to-periodicity gauge.
    pub fn smallest(&self) -> f64 {
        self.singular_values.last().copied().unwrap_or(0.0)
    }
}

pub fn cayley_diagnostic(spec: &MergedSpectrum<f64>, m: usize, tol: f64) -> Result<CayleyDiagnostic> {
    let n = spec.n();
    if m < n {
        return Err(Error::EllipticPeriodBelowDimension { m, n });
    }
    let g1 = spec.gammas()[0];
    let scaled: Vec<f64> = spec.gammas().iter().map(|g| g / g1).collect();
    let series = taylor_coeffs(&scaled, 2 * m - 1);
    let mat = CayleyMatrix::new(&series, m, n)?;
    let columns = m - n + 1;
    if mat.rows().is_empty() {
        return Ok(CayleyDiagnostic {
            singular_values: vec![0.0; columns],
            numerical_rank: 0,
            columns,
        });
    }
    let svd = svd_jacobi(mat.rows());
    let majorant = majorant_series(&scaled, 2 * m - 1);
    let scale = libm::sqrt(
        (0..m - 1)
            .flat_map(|i| (0..columns).map(move |j| (i, j)))
            .map(|(i, j)| {
                let v = majorant[m + 1 + i - j];
                v * v
            })
            .sum::<f64>(),
    );
    let singular_values: Vec<f64> = svd.sigma.iter().map(|s| s / scale).collect();
    let numerical_rank = singular_values.iter().filter(|&&s| s > tol).count();
    Ok(CayleyDiagnostic {
        singular_values,
        numerical_rank,
        columns,
    })
}

/// Coefficients of `prod (2 - sqrt(1 - gamma t))` through `t^order`; each
/// dominates the absolute value of the matching Taylor coefficient.
fn majorant_series(gammas: &[f64], order: usize) -> Vec<f64> {
    let mut acc = vec![0.0; order + 1];
    acc[0] = 1.0;
    for &g in gammas {
        // |binom(1/2, k)| g^k
        let mut factor = vec![1.0; order + 1];
        for k in 1..=order {
            let ratio = if k == 1 { 0.5 } else { (2 * k - 3) as f64 / (2 * k) as f64 };
            factor[k] = factor[k - 1] * ratio * g;
        }
        let mut next = vec![0.0; order + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, f) in factor.iter().enumerate().take(order + 1 - i) {
                next[i + j] += a * f;
            }
        }
        acc = next;
    }
    acc
}

/// `M_{m,n,l}`: determinant of the first `m - n` rows plus row `m - n + l`
/// (1-based) of the matrix, on raw gamma values.
pub fn minor<S: Scalar>(gammas: &[S], m: usize, l: usize) -> Result<S> {
    let n = gammas.len().div_ceil(2);
    if m < n {
        return Err(Error::EllipticPeriodBelowDimension { m, n });
    }
    if l == 0 || l + 1 > n {
        return Err(Error::IndexOutOfRange(format!(
            "minor index l = {l} outside 1..={}",
            n - 1
        )));
    }
    let series = taylor_coeffs(gammas, 2 * m - 1);
    let mat = CayleyMatrix::new(&series, m, n)?;
    let mut rows: Vec<Vec<S>> = mat.rows()[..m - n].to_vec();
    rows.push(mat.rows()[m - n + l - 1].clone());
    Ok(determinant(rows))
}

/// `M_{m,n,l}` on a merged spectrum.
pub fn minor_system<S: Scalar>(spec: &MergedSpectrum<S>, m: usize, l: usize) -> Result<S> {
    minor(spec.gammas(), m, l)
}

/// Determinant by Gaussian elimination (exact on rationals, partial
/// pivoting on floats).
pub fn determinant<S: Scalar>(mut a: Vec<Vec<S>>) -> S {
    let n = a.len();
    let mut det = S::one();
    for col in 0..n {
        let pivot = if S::EXACT {
            (col..n).find(|&i| !a[i][col].is_zero())
        } else {
            (col..n)
                .filter(|&i| !a[i][col].is_zero())
                .max_by(|&i, &j| {
                    a[i][col]
                        .abs()
                        .partial_cmp(&a[j][col].abs())
                        .unwrap_or(core::cmp::Ordering::Equal)
                })
        };
        let Some(p) = pivot else {
            return S::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col].clone();
        det = det * piv.clone();
        for i in col + 1..n {
            let f = a[i][col].clone() / piv.clone();
            if f.is_zero() {
                continue;
            }
            for j in col..n {
                let v = a[i][j].clone() - f.clone() * a[col][j].clone();
                a[i][j] = v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn taylor_small_cases() {
        let s = taylor_coeffs(&ints(&[3, 2, 1]), 3);
        assert_eq!(s.coeffs(), ints(&[1, -3, 1, 0]).as_slice());
        let s = taylor_coeffs(&ints(&[9, 4, 1]), 5);
        assert_eq!(s.f(3), q(-18, 1));
        assert_eq!(s.f(4), q(-126, 1));
        assert_eq!(s.f(5), q(-882, 1));
        assert!(s.squares_to_product(0.0));
        let g = ints(&[7, 5, 2, 1, 1]);
        assert_eq!(taylor_coeffs(&g, 1).f(1), q(-8, 1));
    }

    #[test]
    fn layout_corners() {
        let g = ints(&[13, 11, 7, 5, 3]);
        let s = taylor_coeffs(&g, 20);
        for (m, n) in [(3, 3), (4, 3), (5, 3), (7, 3)] {
            let mat = CayleyMatrix::new(&s, m, n).unwrap();
            assert_eq!(mat.rows().len(), m - 1);
            assert_eq!(mat.rows()[0].len(), m - n + 1);
            assert_eq!(
                mat.corners(),
                [s.f(m + 1), s.f(n + 1), s.f(2 * m - 1), s.f(m + n - 1)]
            );
            let h = mat.hankel();
            for (i, row) in h.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    assert_eq!(*v, s.f(n + 1 + i + j));
                }
            }
        }
    }

    #[test]
    fn worked_examples() {
        assert!(cayley_rank(&ints(&[3, 2, 1]), 2).unwrap().holds);
        assert_eq!(cayley_rank(&ints(&[3, 2, 1]), 2).unwrap().rank, 0);
        assert!(cayley_rank(&ints(&[6, 5, 4, 2, 1]), 3).unwrap().holds);
        assert!(cayley_rank(&ints(&[9, 4, 1]), 3).unwrap().holds);
        assert!(!cayley_rank(&ints(&[9, 4, 1]), 2).unwrap().holds);
        assert_eq!(
            cayley_rank(&ints(&[6, 5, 4, 2, 1]), 2),
            Err(Error::EllipticPeriodBelowDimension { m: 2, n: 3 })
        );
    }

    #[test]
    fn float_diagnostic_matches_examples() {
        let spec = MergedSpectrum::from_gammas(vec![9.0, 4.0, 1.0]).unwrap();
        assert!(cayley_diagnostic(&spec, 3, 1e-9).unwrap().holds());
        assert!(!cayley_diagnostic(&spec, 2, 1e-9).unwrap().holds());
    }

    #[test]
    fn minor_examples_and_range() {
        assert_eq!(minor(&ints(&[3, 2, 1]), 2, 1).unwrap(), q(0, 1));
        assert!(minor(&ints(&[3, 2, 1]), 2, 2).is_err());
        assert!(minor(&ints(&[3, 2, 1]), 2, 0).is_err());
        assert_eq!(minor(&ints(&[6, 5, 4, 2, 1]), 3, 1).unwrap(), q(0, 1));
        assert_eq!(minor(&ints(&[6, 5, 4, 2, 1]), 3, 2).unwrap(), q(0, 1));
    }

    #[test]
    fn determinant_float_and_exact() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        assert!((determinant(a) - 5.0).abs() < 1e-14);
        let a = vec![ints(&[0, 1]), ints(&[1, 0])];
        assert_eq!(determinant(a), q(-1, 1));
    }

    fn triple() -> impl Strategy<Value = [Rational; 3]> {
        [(1i64..60, 1i64..12), (1i64..60, 1i64..12), (1i64..60, 1i64..12)]
            .prop_map(|v| v.map(|(a, b)| q(a, b)))
    }

    proptest! {
        #[test]
        fn series_squares_back(g in prop::collection::vec((1i64..40, 1i64..9), 3..8), order in 0usize..12) {
            let gs: Vec<Rational> = g.iter().map(|&(a, b)| q(a, b)).collect();
            prop_assert!(taylor_coeffs(&gs, order).squares_to_product(0.0));
        }

        #[test]
        fn m2_factorization(g in triple()) {
            let [g1, g2, g3] = g.clone();
            let lhs = q(-16, 1) * minor(&g, 2, 1).unwrap();
            let rhs = (&g1 - &g2 - &g3) * (&g3 - &g1 - &g2) * (&g2 - &g3 - &g1);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn m3_factorization(g in triple()) {
            let [g1, g2, g3] = g.clone();
            let two = q(2, 1);
            let q0 = &g1 * &g1 + &g2 * &g2 + &g3 * &g3
                - &two * &g1 * &g2 - &two * &g1 * &g3 - &two * &g2 * &g3;
            let qk = |k: &Rational, i: &Rational, j: &Rational| {
                q(3, 1) * k * k - &two * (i + j) * k - (i - j) * (i - j)
            };
            let rhs = q0 * qk(&g1, &g2, &g3) * qk(&g2, &g1, &g3) * qk(&g3, &g1, &g2);
            prop_assert_eq!(q(-16384, 1) * minor(&g, 3, 1).unwrap(), rhs);
        }

        #[test]
        fn minor_homogeneity(
            g in prop::collection::btree_set(1i64..50, 5),
            sn in 1i64..9, sd in 1i64..9, m in 3usize..5, l in 1usize..3,
        ) {
            let gs: Vec<Rational> = g.iter().rev().map(|&v| q(v, 1)).collect();
            let sigma = q(sn, sd);
            let scaled: Vec<Rational> = gs.iter().map(|v| v * &sigma).collect();
            let deg = ((m - 3 + 2) * m - 3 + l) as u32;
            prop_assert_eq!(
                minor(&scaled, m, l).unwrap(),
                minor(&gs, m, l).unwrap() * sigma.powi(deg)
            );
        }
    }
}
