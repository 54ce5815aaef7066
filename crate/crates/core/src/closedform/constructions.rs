//! The three constructions valid in every dimension.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::confocal::{existence_check, CausticSet, Ellipsoid, MergedSpectrum};
use crate::error::{Error, Result};
use crate::polyform::{verify_certificate, Certificate, TForm};
use crate::ratpoly::Poly;
use crate::scalar::Scalar;

use super::simple_roots;

/// A periodic instance together with its certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance<S> {
    pub m: usize,
    pub spectrum: MergedSpectrum<S>,
    /// Present when the split into axes and caustics is known.
    pub ellipsoid: Option<Ellipsoid<S>>,
    pub caustics: Option<CausticSet<S>>,
    /// Double roots `d_l` of the construction (as parameters, not gammas).
    pub d: Vec<S>,
    pub certificate: Certificate<S>,
    /// The certificate identity holds exactly.
    pub exact: bool,
}

/// The caustic type of the period-`n` family: `(1, 1, 3, 3, ...)` for odd
/// `n`, `(0, 2, 2, 4, 4, ...)` for even `n`.
pub fn main_caustic_type(n: usize) -> Vec<usize> {
    (1..n)
        .map(|k| if n % 2 == 1 { 2 * (k.div_ceil(2)) - 1 } else { 2 * (k / 2) })
        .collect()
}

/// `prod (1 - t / c)`.
fn unit_product<S: Scalar>(cs: &[S]) -> Poly<S> {
    Poly::from_reciprocal_roots(cs)
}

fn finish<S: Scalar>(
    m: usize,
    spectrum: MergedSpectrum<S>,
    ellipsoid: Option<Ellipsoid<S>>,
    caustics: Option<CausticSet<S>>,
    d: Vec<S>,
    t: TForm<S>,
) -> Result<Instance<S>> {
    let certificate = Certificate::from_t_form(m, spectrum.n(), &t)?;
    let check = verify_certificate(&spectrum, &certificate)?;
    if !S::EXACT && !check.holds {
        return Err(Error::Rejected(format!(
            "certificate residual {:e} above tolerance",
            check.residual
        )));
    }
    Ok(Instance {
        m,
        spectrum,
        ellipsoid,
        caustics,
        d,
        certificate,
        exact: S::EXACT && check.holds,
    })
}

/// Period `n`: caustic parameters are the roots of `t^n - prod (t - a_j)`.
pub fn construct_m_eq_n<S: Scalar>(e: &Ellipsoid<S>) -> Result<Instance<S>> {
    let n = e.dim();
    let diff = &Poly::monomial(S::one(), n) - &Poly::from_roots(e.axes());
    let roots = S::real_roots(&diff)?;
    if let Some((r, _)) = roots.iter().find(|(_, k)| *k > 1) {
        return Err(Error::SingularTrajectory(format!("double root {r}")));
    }
    if roots.len() + 1 != n {
        return Err(Error::ComplexRoots(format!(
            "t^n - prod (t - a_j) has {} real roots out of {}",
            roots.len(),
            n - 1
        )));
    }
    let lambdas: Vec<S> = roots.into_iter().map(|(r, _)| r).collect();
    let caustics = existence_check(e, &lambdas).map_err(|err| match err {
        Error::SingularCaustic { index } => {
            Error::SingularTrajectory(format!("lambda_{index} coincides with an axis"))
        }
        other => other,
    })?;
    if caustics.type_vector() != main_caustic_type(n) {
        return Err(Error::Rejected(format!(
            "caustic type {:?} differs from {:?}",
            caustics.type_vector(),
            main_caustic_type(n)
        )));
    }
    let spectrum = MergedSpectrum::new(e, &caustics)?;
    // alpha = (-1)^n / prod a_j, s = 1, q = prod (1 - t / lambda_k)
    let prod_a = e.axes().iter().fold(S::one(), |acc, a| acc * a.clone());
    let sign = if n.is_multiple_of(2) { S::one() } else { -S::one() };
    let t = TForm {
        s: Poly::one(),
        q: unit_product(&lambdas),
        alpha: sign / prod_a,
    };
    finish(n, spectrum, Some(e.clone()), Some(caustics), Vec::new(), t)
}

/// Period `n + 1`: the axes are the roots of `t^{n+1} - (t - d)^2 prod (t - lambda_k)`.
pub fn construct_m_eq_n_plus_1<S: Scalar>(lambdas: &[S], d: &S) -> Result<Instance<S>> {
    let n = lambdas.len() + 1;
    if *d <= S::zero() || lambdas.iter().any(|l| *l <= S::zero()) {
        return Err(Error::InvalidInput("d and the caustic parameters must be positive".into()));
    }
    let sq = Poly::from_roots(&[d.clone(), d.clone()]);
    let diff = &Poly::monomial(S::one(), n + 1) - &(&sq * &Poly::from_roots(lambdas));
    let (axes, _) = simple_roots(&diff).map_err(|_| {
        Error::Rejected("the axis polynomial has a repeated root".into())
    })?;
    if axes.len() != n || axes[0] <= S::zero() {
        return Err(Error::Rejected(format!(
            "the axis polynomial has {} positive real roots, {} needed",
            axes.iter().filter(|a| **a > S::zero()).count(),
            n
        )));
    }
    let e = Ellipsoid::new(axes.clone())
        .map_err(|err| Error::Rejected(format!("{err}")))?;
    let caustics = existence_check(&e, lambdas)
        .map_err(|err| Error::Rejected(format!("caustics do not interleave the axes: {err}")))?;
    let spectrum = MergedSpectrum::new(&e, &caustics)?;
    // alpha = (-1)^{n+1} / (d^2 prod lambda_k), s = 1 - t / d, q = prod (1 - t / a_j)
    let prod_l = lambdas.iter().fold(S::one(), |acc, l| acc * l.clone());
    let sign = if n % 2 == 1 { S::one() } else { -S::one() };
    let t = TForm {
        s: unit_product(core::slice::from_ref(d)),
        q: unit_product(&axes),
        alpha: sign / (d.clone() * d.clone() * prod_l),
    };
    finish(n + 1, spectrum, Some(e), Some(caustics), vec![d.clone()], t)
}

/// Period `2n - 1`: every root of `t^{2n-1} - prod (t - c_i)` is double.
/// The `c_i` are the merged parameters; which are axes is not decided here.
pub fn construct_m_eq_2n_minus_1<S: Scalar>(cs: &[S]) -> Result<Instance<S>> {
    if cs.len().is_multiple_of(2) || cs.len() < 3 {
        return Err(Error::InvalidInput("need 2n - 1 >= 3 parameters".into()));
    }
    let n = cs.len().div_ceil(2);
    let mut sorted = cs.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("comparable parameters"));
    let spectrum = MergedSpectrum::from_gammas(sorted.iter().map(Scalar::recip).collect())?;
    let diff = &Poly::monomial(S::one(), 2 * n - 1) - &Poly::from_roots(&sorted);
    let roots = S::real_roots(&diff)?;
    if roots.len() != n - 1 || roots.iter().any(|(_, k)| *k != 2) {
        return Err(Error::Rejected(format!(
            "t^(2n-1) - prod (t - c_i) is not a constant times a square (roots {:?})",
            roots.iter().map(|(r, k)| (r.to_f64(), *k)).collect::<Vec<_>>()
        )));
    }
    let d: Vec<S> = roots.into_iter().map(|(r, _)| r).collect();
    // s = prod (1 - t / d_l), q = s^2, alpha = prod (-1 / c_i)
    let s = unit_product(&d);
    let alpha = sorted
        .iter()
        .fold(S::one(), |acc, c| acc * (-c.recip()));
    let t = TForm {
        q: &s * &s,
        s,
        alpha,
    };
    finish(2 * n - 1, spectrum, None, None, d, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{cayley_condition, cayley_diagnostic};
    use crate::ratpoly::Rational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn caustic_type_patterns() {
        assert_eq!(main_caustic_type(2), vec![0]);
        assert_eq!(main_caustic_type(3), vec![1, 1]);
        assert_eq!(main_caustic_type(4), vec![0, 2, 2]);
        assert_eq!(main_caustic_type(5), vec![1, 1, 3, 3]);
        assert_eq!(main_caustic_type(6), vec![0, 2, 2, 4, 4]);
    }

    #[test]
    fn period_n_planar() {
        let e = Ellipsoid::new(vec![q(1, 1), q(2, 1)]).unwrap();
        let inst = construct_m_eq_n(&e).unwrap();
        assert!(inst.exact);
        assert_eq!(inst.caustics.unwrap().params(), &[q(2, 3)]);
    }

    #[test]
    fn period_n_spatial() {
        let e = Ellipsoid::new(vec![0.25, 1.0, 4.0]).unwrap();
        let inst = construct_m_eq_n(&e).unwrap();
        let l = inst.caustics.unwrap().params().to_vec();
        let disc = libm::sqrt(5.25f64 * 5.25 - 4.0 * 5.25);
        assert!((l[0] - (5.25 - disc) / 10.5).abs() < 1e-12);
        assert!((l[1] - (5.25 + disc) / 10.5).abs() < 1e-12);
        assert!((l[0] - 0.2560).abs() < 1e-4 && (l[1] - 0.7440).abs() < 1e-4);
        let e = Ellipsoid::new(vec![0.9, 1.0, 4.0]).unwrap();
        assert!(matches!(construct_m_eq_n(&e), Err(Error::ComplexRoots(_))));
    }

    #[test]
    fn period_2n_minus_1_planar() {
        let inst = construct_m_eq_2n_minus_1(&[q(1, 9), q(1, 4), q(1, 1)]).unwrap();
        assert!(inst.exact);
        assert_eq!(inst.d, vec![q(1, 7)]);
        assert_eq!(inst.m, 3);
        assert!(cayley_condition(&inst.spectrum, 3).unwrap().holds);
        assert!(matches!(
            construct_m_eq_2n_minus_1(&[q(1, 8), q(1, 4), q(1, 1)]),
            Err(Error::Rejected(_))
        ));
    }

    #[test]
    fn period_n_plus_1_rejects_complex() {
        // (t - 1)^2 (t - 1/2) dominates t^3 badly: expect a rejection, never a panic
        let r = construct_m_eq_n_plus_1(&[q(1, 2)], &q(1, 100));
        assert!(matches!(r, Err(Error::Rejected(_))), "{r:?}");
    }

    #[test]
    fn period_n_plus_1_spatial_float() {
        // lambdas of an H1H1 pair with d beyond the largest axis
        let inst = construct_m_eq_n_plus_1(&[0.4, 0.6], &5.0);
        if let Ok(inst) = inst {
            let spec = inst.spectrum.to_f64();
            assert!(cayley_diagnostic(&spec, 4, 1e-9).unwrap().holds());
        }
    }

    proptest! {
        #[test]
        fn period_2n_minus_1_synthesis(d1 in 1i64..20, d2 in 1i64..20, k in 50i64..2000) {
            // t^5 - kappa (t - d1)^2 (t - d2)^2 must have 5 positive simple roots
            prop_assume!(d1 != d2);
            let kappa = q(k, 10);
            let sq = Poly::from_roots(&[q(d1, 7), q(d1, 7), q(d2, 7), q(d2, 7)]);
            let p = &Poly::monomial(q(1, 1), 5) - &sq.scale(&kappa);
            let roots = crate::ratpoly::real_roots_f64(&p.to_f64(), None, 1e-12).unwrap();
            prop_assume!(roots.len() == 5 && roots.iter().all(|(r, k)| *r > 1e-6 && *k == 1));
            let mut cs: Vec<f64> = roots.iter().map(|(r, _)| *r).collect();
            cs.sort_by(|a, b| a.total_cmp(b));
            prop_assume!(cs.windows(2).all(|w| w[1] - w[0] > 1e-6 * w[1]));
            let inst = construct_m_eq_2n_minus_1(&cs).unwrap();
            prop_assert_eq!(inst.m, 5);
            let mut d = inst.d.clone();
            d.sort_by(|a, b| a.total_cmp(b));
            let mut want = [d1 as f64 / 7.0, d2 as f64 / 7.0];
            want.sort_by(|a, b| a.total_cmp(b));
            prop_assert!((d[0] - want[0]).abs() < 1e-6 && (d[1] - want[1]).abs() < 1e-6);
        }
    }
}
