//! Closed-form families of periodic trajectories.
//!
//! Three constructions work in any dimension (elliptic periods `n`, `n + 1`
//! and `2n - 1`). The planar and spatial tables give explicit caustic
//! parameters for small periods, [`solve_c43`] handles period 4 with
//! signature `(0, 0, 1)` in space, and [`residual_c53`] is the pair of
//! symmetric equations for period 5 with signature `(1, 1, 0)`.

mod constructions;
mod rotation;
mod tables;

use alloc::vec::Vec;
use core::cmp::Ordering;

pub use constructions::{
    construct_m_eq_2n_minus_1, construct_m_eq_n, construct_m_eq_n_plus_1, main_caustic_type,
    Instance,
};
pub use rotation::rotation_number;
pub use tables::{
    planar_table, residual_c53, solve_c43, spatial_table, Conic, PlanarResult, PlanarRow,
    SpatialRow, PLANAR_TABLE, SPATIAL_TABLE,
};

use crate::confocal::{CausticSet, Ellipsoid};
use crate::error::{Error, Result};
use crate::polyform::Signature;
use crate::ratpoly::Poly;
use crate::scalar::{rational_from_f64, Scalar};

/// Float inputs closer than this (relative) to an existence threshold are
/// reported as indeterminate.
pub const THRESHOLD_TOL: f64 = 1e-12;

/// Caustic parameters produced by a closed formula, with the data needed
/// to check them against the simulator.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm<S> {
    pub ellipsoid: Ellipsoid<S>,
    pub caustics: CausticSet<S>,
    /// Elliptic period.
    pub m: usize,
    pub signature: Signature,
    /// Expected winding numbers `m_0, ..., m_{n-1}`.
    pub winding: Vec<usize>,
    /// Every caustic parameter is the exact value (rational inputs with rational roots).
    pub exact: bool,
    /// Auxiliary parameter of the construction (`d` for period 4).
    pub d: Option<S>,
}

/// `s_l = sum w_i / p_i^l` for a recorded list of `(p_i, w_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSums<S> {
    terms: Vec<(S, i64)>,
    values: Vec<S>,
}

impl<S: Scalar> PowerSums<S> {
    pub fn new(terms: Vec<(S, i64)>, max_l: u32) -> Self {
        let values = (1..=max_l).map(|l| Self::eval(&terms, l)).collect();
        PowerSums { terms, values }
    }

    fn eval(terms: &[(S, i64)], l: u32) -> S {
        terms.iter().fold(S::zero(), |acc, (p, w)| {
            acc + S::from_i64(*w) * p.recip().powi(l)
        })
    }

    pub fn terms(&self) -> &[(S, i64)] {
        &self.terms
    }

    /// `s_l`, for `1 <= l <= max_l`.
    pub fn s(&self, l: u32) -> S {
        self.values[l as usize - 1].clone()
    }

    /// Recompute every value from the recipe and compare.
    pub fn consistent(&self, tol: f64) -> bool {
        self.values.iter().enumerate().all(|(i, v)| {
            let fresh = Self::eval(&self.terms, i as u32 + 1);
            (fresh - v.clone()).is_negligible(tol * v.to_f64().abs().max(1.0))
        })
    }
}

/// Sign of `lhs - rhs`; floats within [`THRESHOLD_TOL`] of each other are
/// indeterminate.
pub(crate) fn compare<S: Scalar>(lhs: &S, rhs: &S, what: &'static str) -> Result<Ordering> {
    let diff = lhs.clone() - rhs.clone();
    if !S::EXACT {
        let scale = lhs.abs().to_f64() + rhs.abs().to_f64();
        if diff.abs().to_f64() <= THRESHOLD_TOL * scale {
            return Err(Error::Indeterminate(what));
        }
    }
    Ok(diff.partial_cmp(&S::zero()).unwrap_or(Ordering::Equal))
}

/// Sign of `u + v sqrt(w)`, indeterminate for floats near zero.
pub(crate) fn surd_compare<S: Scalar>(u: &S, v: &S, w: &S, what: &'static str) -> Result<Ordering> {
    S::surd_sign(u, v, w, THRESHOLD_TOL).ok_or(Error::Indeterminate(what))
}

/// `sqrt(x)`, exact when possible; the flag says whether it is.
pub(crate) fn sqrt_or_approx<S: Scalar>(x: &S) -> (S, bool) {
    match x.sqrt_exact() {
        Some(r) => (r, true),
        None => {
            let f = libm::sqrt(x.to_f64());
            (S::from_rational(&rational_from_f64(f).expect("finite")), false)
        }
    }
}

/// Real roots with multiplicity 1 expected; the flag says whether every
/// root is exact.
pub(crate) fn simple_roots<S: Scalar>(p: &Poly<S>) -> Result<(Vec<S>, bool)> {
    let roots = S::real_roots(p)?;
    if roots.iter().any(|(_, k)| *k > 1) {
        return Err(Error::SingularTrajectory("repeated root".into()));
    }
    let exact = S::EXACT && roots.iter().all(|(r, _)| p.eval(r).is_zero());
    Ok((roots.into_iter().map(|(r, _)| r).collect(), exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::Rational;
    use alloc::vec;

    #[test]
    fn power_sums_follow_recipe() {
        let q = |n, d| Rational::from_ratio(n, d);
        let ps = PowerSums::new(vec![(q(4, 1), 1), (q(1, 1), 1), (q(1, 5), 1), (q(5, 1), -2)], 2);
        assert_eq!(ps.s(1), q(1, 4) + q(1, 1) + q(5, 1) - q(2, 5));
        assert_eq!(ps.s(2), q(1, 16) + q(1, 1) + q(25, 1) - q(2, 25));
        assert!(ps.consistent(0.0));
    }

    #[test]
    fn threshold_comparison() {
        assert_eq!(compare(&1.0, &2.0, "t"), Ok(Ordering::Less));
        assert_eq!(compare(&1.0, &(1.0 + 1e-14), "t"), Err(Error::Indeterminate("t")));
        let q = |n| Rational::from_i64(n);
        assert_eq!(compare(&q(3), &q(3), "t"), Ok(Ordering::Equal));
    }
}
