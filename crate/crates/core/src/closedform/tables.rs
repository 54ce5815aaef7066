//! Explicit caustic parameters for small periods in the plane and in space.

use alloc::format;
use alloc::vec;
use core::cmp::Ordering;

use crate::confocal::{existence_check, Ellipsoid};
use crate::error::{Error, Result};
use crate::polyform::Signature;
use crate::ratpoly::Poly;
use crate::scalar::Scalar;

use super::{compare, simple_roots, sqrt_or_approx, surd_compare, ClosedForm};

/// Planar caustic kind: confocal ellipse or hyperbola.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Conic {
    E,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PlanarFormula {
    /// `ab / (a + b)`
    Sum,
    /// `ab / (a - b)`
    Difference,
    /// `ab / (a + b + 2 sqrt(ab))`
    RootSum,
    /// `ab / (a + b - 2 sqrt(ab))`
    RootDifference,
    /// `3ab / (a + b + 2 sqrt(a^2 - ab + b^2))`
    ThirdE,
    /// `ab / (2 sqrt(a^2 - ab) + b - a)`
    ThirdH,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PlanarCondition {
    /// `2b < a`
    TwoB,
    /// `4b < a`
    FourB,
    /// `4b < 3a`
    FourBThreeA,
}

/// One row of the planar table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarRow {
    pub m: usize,
    pub m0: usize,
    pub m1: usize,
    pub tau: [usize; 2],
    pub kind: Conic,
    formula: PlanarFormula,
    condition: Option<PlanarCondition>,
}

/// Every nonsingular periodic trajectory in an ellipse with elliptic period 2 or 3.
pub static PLANAR_TABLE: [PlanarRow; 6] = [
    PlanarRow { m: 2, m0: 4, m1: 2, tau: [0, 0], kind: Conic::E, formula: PlanarFormula::Sum, condition: None },
    PlanarRow { m: 2, m0: 4, m1: 2, tau: [0, 0], kind: Conic::H, formula: PlanarFormula::Difference, condition: Some(PlanarCondition::TwoB) },
    PlanarRow { m: 3, m0: 6, m1: 2, tau: [1, 0], kind: Conic::E, formula: PlanarFormula::RootSum, condition: None },
    PlanarRow { m: 3, m0: 6, m1: 2, tau: [1, 0], kind: Conic::H, formula: PlanarFormula::RootDifference, condition: Some(PlanarCondition::FourB) },
    PlanarRow { m: 3, m0: 3, m1: 2, tau: [0, 1], kind: Conic::E, formula: PlanarFormula::ThirdE, condition: None },
    PlanarRow { m: 3, m0: 6, m1: 4, tau: [0, 1], kind: Conic::H, formula: PlanarFormula::ThirdH, condition: Some(PlanarCondition::FourBThreeA) },
];

impl PlanarRow {
    /// `rho = m_1 / (2 m_0)` as a numerator/denominator pair.
    pub fn rho(&self) -> (usize, usize) {
        (self.m1, 2 * self.m0)
    }

    pub fn rho_f64(&self) -> f64 {
        self.m1 as f64 / (2 * self.m0) as f64
    }

    /// The existence condition on the ellipse, as text.
    pub fn condition(&self) -> &'static str {
        match self.condition {
            None => "any",
            Some(PlanarCondition::TwoB) => "2b < a",
            Some(PlanarCondition::FourB) => "4b < a",
            Some(PlanarCondition::FourBThreeA) => "4b < 3a",
        }
    }

    pub fn exists<S: Scalar>(&self, a: &S, b: &S) -> Result<bool> {
        let (k, l) = match self.condition {
            None => return Ok(true),
            Some(PlanarCondition::TwoB) => (2, 1),
            Some(PlanarCondition::FourB) => (4, 1),
            Some(PlanarCondition::FourBThreeA) => (4, 3),
        };
        let lhs = S::from_i64(k) * b.clone();
        let rhs = S::from_i64(l) * a.clone();
        Ok(compare(&lhs, &rhs, self.condition())? == Ordering::Less)
    }

    /// The caustic parameter and whether it is exact.
    pub fn lambda<S: Scalar>(&self, a: &S, b: &S) -> (S, bool) {
        let ab = a.clone() * b.clone();
        let two = S::from_i64(2);
        match self.formula {
            PlanarFormula::Sum => (ab.clone() / (a.clone() + b.clone()), true),
            PlanarFormula::Difference => (ab.clone() / (a.clone() - b.clone()), true),
            PlanarFormula::RootSum => {
                let (r, ex) = sqrt_or_approx(&ab);
                (ab.clone() / (a.clone() + b.clone() + two * r), ex)
            }
            PlanarFormula::RootDifference => {
                let (r, ex) = sqrt_or_approx(&ab);
                (ab.clone() / (a.clone() + b.clone() - two * r), ex)
            }
            PlanarFormula::ThirdE => {
                let w = a.clone() * a.clone() - ab.clone() + b.clone() * b.clone();
                let (r, ex) = sqrt_or_approx(&w);
                (S::from_i64(3) * ab / (a.clone() + b.clone() + two * r), ex)
            }
            PlanarFormula::ThirdH => {
                let w = a.clone() * a.clone() - ab.clone();
                let (r, ex) = sqrt_or_approx(&w);
                (ab / (two * r + b.clone() - a.clone()), ex)
            }
        }
    }
}

/// A row of the planar table evaluated on one ellipse.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarResult<S> {
    pub row: &'static PlanarRow,
    pub lambda: S,
    pub exact: bool,
}

/// Caustic parameter of the period-`m` trajectories of the given kind and
/// signature inside `x^2 / a + y^2 / b = 1`, `a > b > 0`.
pub fn planar_table<S: Scalar>(
    a: &S,
    b: &S,
    m: usize,
    kind: Conic,
    tau: &[usize],
) -> Result<PlanarResult<S>> {
    if !(*a > *b && *b > S::zero()) {
        return Err(Error::InvalidEllipsoid("need a > b > 0".into()));
    }
    let row = PLANAR_TABLE
        .iter()
        .find(|r| r.m == m && r.kind == kind && r.tau[..] == *tau)
        .ok_or_else(|| {
            Error::InvalidInput(format!("no planar row for m = {m}, {kind:?}, tau = {tau:?}"))
        })?;
    if !row.exists(a, b)? {
        return Err(Error::NoSuchTrajectory(row.condition()));
    }
    let (lambda, exact) = row.lambda(a, b);
    let inside = match kind {
        Conic::E => lambda > S::zero() && lambda < *b,
        Conic::H => lambda > *b && lambda < *a,
    };
    if !inside {
        return Err(Error::Rejected(format!(
            "lambda = {} outside its interval",
            lambda.to_f64()
        )));
    }
    Ok(PlanarResult { row, lambda, exact })
}

/// One row of the spatial table (elliptic period 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpatialRow {
    pub name: &'static str,
    pub varsigma: [usize; 2],
    pub condition: &'static str,
}

pub static SPATIAL_TABLE: [SpatialRow; 4] = [
    SpatialRow { name: "EH1", varsigma: [0, 1], condition: "c < ab/(a+b+sqrt(ab))" },
    SpatialRow { name: "H1H1", varsigma: [1, 1], condition: "c < ab/(a+b+2sqrt(ab))" },
    SpatialRow { name: "EH2", varsigma: [0, 2], condition: "2b < a and c < (a-2b)a/(2a-3b)" },
    SpatialRow { name: "H1H2", varsigma: [1, 2], condition: "c < (a-2b)ab/(a-b)^2 and b > ac/(a+c-sqrt(ac))" },
];

fn check_triaxial<S: Scalar>(a: &S, b: &S, c: &S) -> Result<Ellipsoid<S>> {
    if !(*a > *b && *b > *c && *c > S::zero()) {
        return Err(Error::InvalidEllipsoid("need a > b > c > 0".into()));
    }
    Ellipsoid::new(vec![c.clone(), b.clone(), a.clone()])
}

fn spatial_exists<S: Scalar>(row: &SpatialRow, a: &S, b: &S, c: &S) -> Result<bool> {
    let ab = a.clone() * b.clone();
    let ac = a.clone() * c.clone();
    let zero = S::zero();
    Ok(match row.name {
        // c (a + b) - ab + c sqrt(ab) < 0
        "EH1" => {
            let u = c.clone() * (a.clone() + b.clone()) - ab.clone();
            surd_compare(&u, c, &ab, row.condition)? == Ordering::Less
        }
        "H1H1" => {
            let u = c.clone() * (a.clone() + b.clone()) - ab.clone();
            let v = S::from_i64(2) * c.clone();
            surd_compare(&u, &v, &ab, row.condition)? == Ordering::Less
        }
        "EH2" => {
            let two_b = S::from_i64(2) * b.clone();
            if compare(&two_b, a, row.condition)? != Ordering::Less {
                return Ok(false);
            }
            let lhs = c.clone() * (S::from_i64(2) * a.clone() - S::from_i64(3) * b.clone());
            let rhs = (a.clone() - two_b) * a.clone();
            compare(&lhs, &rhs, row.condition)? == Ordering::Less
        }
        "H1H2" => {
            let amb = a.clone() - b.clone();
            let lhs = c.clone() * amb.clone() * amb;
            let rhs = (a.clone() - S::from_i64(2) * b.clone()) * ab;
            if compare(&lhs, &rhs, row.condition)? != Ordering::Less {
                return Ok(false);
            }
            // b (a + c) - ac - b sqrt(ac) > 0
            let u = b.clone() * (a.clone() + c.clone()) - ac.clone();
            surd_compare(&u, &(zero - b.clone()), &ac, row.condition)? == Ordering::Greater
        }
        _ => unreachable!("unknown spatial row"),
    })
}

/// Caustic parameters of the period-3 trajectories of the given caustic
/// type inside `x^2/a + y^2/b + z^2/c = 1`, `a > b > c > 0`.
pub fn spatial_table<S: Scalar>(a: &S, b: &S, c: &S, varsigma: &[usize]) -> Result<ClosedForm<S>> {
    let e = check_triaxial(a, b, c)?;
    let row = SPATIAL_TABLE
        .iter()
        .find(|r| r.varsigma[..] == *varsigma)
        .ok_or_else(|| Error::InvalidInput(format!("no spatial row for caustic type {varsigma:?}")))?;
    if !spatial_exists(row, a, b, c)? {
        return Err(Error::NoSuchTrajectory(row.condition));
    }
    let (lambdas, exact) = match row.name {
        "EH1" => {
            // c^3 = (c - l1)(b - c)(a - c), then 1/l2 = 1/a + 1/b + 1/l1 - 1/c
            let l1 = c.clone()
                - c.powi(3) / ((b.clone() - c.clone()) * (a.clone() - c.clone()));
            let inv = a.recip() + b.recip() + l1.recip() - c.recip();
            (vec![l1, inv.recip()], S::EXACT)
        }
        "H1H1" => {
            let p = Poly::new(vec![
                a.clone() * b.clone() * c.clone(),
                -(a.clone() * b.clone() + a.clone() * c.clone() + b.clone() * c.clone()),
                a.clone() + b.clone() + c.clone(),
            ]);
            simple_roots(&p)?
        }
        "EH2" => {
            let p = Poly::new(vec![
                a.clone() * a.clone() * b.clone() * c.clone(),
                (b.clone() * c.clone() - a.clone() * (b.clone() + c.clone())) * a.clone(),
                (a.clone() - b.clone()) * (a.clone() - c.clone()),
            ]);
            simple_roots(&p)?
        }
        _ => {
            // b^3 = (b - c)(l2 - b)(a - b), then 1/l1 = 1/a + 1/c + 1/l2 - 1/b
            let l2 = b.clone()
                + b.powi(3) / ((b.clone() - c.clone()) * (a.clone() - b.clone()));
            let inv = a.recip() + c.recip() + l2.recip() - b.recip();
            (vec![inv.recip(), l2], S::EXACT)
        }
    };
    if lambdas.len() != 2 {
        return Err(Error::Rejected(format!("{} caustic parameters instead of 2", lambdas.len())));
    }
    let caustics = existence_check(&e, &lambdas)?;
    if caustics.type_vector() != varsigma {
        return Err(Error::Rejected(format!(
            "caustic type {:?} instead of {varsigma:?}",
            caustics.type_vector()
        )));
    }
    Ok(ClosedForm {
        ellipsoid: e,
        caustics,
        m: 3,
        signature: Signature::zero(3),
        winding: vec![6, 4, 2],
        exact,
        d: None,
    })
}

/// Period 4, signature `(0, 0, 1)`, caustic type H1H1.
pub fn solve_c43<S: Scalar>(a: &S, b: &S, c: &S) -> Result<ClosedForm<S>> {
    let e = check_triaxial(a, b, c)?;
    const THRESHOLD: &str = "c < ab/(a+b)";
    let ab = a.clone() * b.clone();
    if compare(&(c.clone() * (a.clone() + b.clone())), &ab, THRESHOLD)? != Ordering::Less {
        return Err(Error::NoSuchTrajectory(THRESHOLD));
    }
    let sum = a.clone() + b.clone() + c.clone();
    let cubic = Poly::new(vec![
        -S::from_i64(4) * ab.clone() * c.clone(),
        S::from_i64(3) * (ab.clone() + a.clone() * c.clone() + b.clone() * c.clone()),
        -S::from_i64(2) * sum.clone(),
        S::one(),
    ]);
    // all three roots are positive, so they sum below 2 (a + b + c)
    let upper = S::from_i64(2) * sum;
    let roots = S::real_roots_in(&cubic, a, &upper)?;
    let [(d, 1)] = roots.as_slice() else {
        return Err(Error::Rejected(format!("{} roots of the cubic above a", roots.len())));
    };
    let d_exact = !S::EXACT || cubic.eval(d).is_zero();
    let inv = |x: &S, l: u32| x.recip().powi(l);
    let s = |l: u32| {
        inv(a, l) + inv(b, l) + inv(c, l) - S::from_i64(2) * inv(d, l)
    };
    let (s1, s2) = (s(1), s(2));
    let quad = Poly::new(vec![
        S::one(),
        -s1.clone(),
        (s1.clone() * s1 - s2) / S::from_i64(2),
    ]);
    let (lambdas, exact) = simple_roots(&quad)?;
    if lambdas.len() != 2 {
        return Err(Error::Rejected("complex caustic parameters".into()));
    }
    let caustics = existence_check(&e, &lambdas)?;
    if caustics.type_vector() != [1, 1] {
        return Err(Error::Rejected(format!(
            "caustic type {:?} instead of H1H1",
            caustics.type_vector()
        )));
    }
    Ok(ClosedForm {
        ellipsoid: e,
        caustics,
        m: 4,
        signature: Signature::new(4, 3, vec![0, 0, 1]).expect("valid signature"),
        winding: vec![4, 3, 2],
        exact: exact && d_exact,
        d: Some(d.clone()),
    })
}

/// `(8 s_3 + s_1^3 - 6 s_1 s_2, 16 s_4 + s_1^4 - 4 s_1^2 s_2 - 4 s_2^2)` with
/// `s_l` the sum of the `l`-th powers of the five reciprocals. Both vanish
/// exactly for period 5 with signature `(1, 1, 0)`.
pub fn residual_c53<S: Scalar>(a: &S, b: &S, c: &S, l1: &S, l2: &S) -> [S; 2] {
    let s = |l: u32| {
        [a, b, c, l1, l2]
            .iter()
            .fold(S::zero(), |acc, p| acc + p.recip().powi(l))
    };
    let (s1, s2, s3, s4) = (s(1), s(2), s(3), s(4));
    let k = |v: i64| S::from_i64(v);
    [
        k(8) * s3 + s1.powi(3) - k(6) * s1.clone() * s2.clone(),
        k(16) * s4 + s1.powi(4) - k(4) * s1.powi(2) * s2.clone() - k(4) * s2.powi(2),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use crate::cayley::cayley_diagnostic;
    use crate::closedform::{construct_m_eq_n, construct_m_eq_n_plus_1, rotation_number};
    use crate::confocal::MergedSpectrum;
    use crate::polyform::{solve_signature, SolveOptions};
    use crate::ratpoly::Rational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn planar_examples() {
        let r = planar_table(&q(2, 1), &q(1, 1), 2, Conic::E, &[0, 0]).unwrap();
        assert_eq!(r.lambda, q(2, 3));
        assert!(r.exact);
        assert_eq!((r.row.m0, r.row.m1, r.row.rho()), (4, 2, (2, 8)));
        assert_eq!(
            planar_table(&q(2, 1), &q(1, 1), 2, Conic::H, &[0, 0]),
            Err(Error::NoSuchTrajectory("2b < a"))
        );
        let r = planar_table(&5.0, &1.0, 3, Conic::H, &[1, 0]).unwrap();
        assert!((r.lambda - 5.0 / (6.0 - 2.0 * libm::sqrt(5.0))).abs() < 1e-14);
        // perfect squares give exact values: a b = 4
        let r = planar_table(&q(4, 1), &q(1, 1), 3, Conic::E, &[1, 0]).unwrap();
        assert_eq!(r.lambda, q(4, 9));
        assert!(r.exact);
        assert_eq!(
            planar_table(&4.0, &1.0, 3, Conic::H, &[1, 0]),
            Err(Error::Indeterminate("4b < a"))
        );
        assert_eq!(
            planar_table(&q(4, 1), &q(1, 1), 3, Conic::H, &[1, 0]),
            Err(Error::NoSuchTrajectory("4b < a"))
        );
    }

    #[test]
    fn planar_rows_match_rotation_numbers() {
        for row in &PLANAR_TABLE {
            for (a, b) in [(2.0, 1.0), (5.0, 1.0), (7.3, 0.4), (3.0, 2.9)] {
                let Ok(r) = planar_table(&a, &b, row.m, row.kind, &row.tau) else {
                    continue;
                };
                let rho = rotation_number(a, b, r.lambda).unwrap();
                assert!((rho - row.rho_f64()).abs() < 1e-9, "{row:?} at ({a}, {b}): {rho}");
            }
        }
    }

    #[test]
    fn planar_rows_match_matrix() {
        for row in &PLANAR_TABLE {
            let Ok(r) = planar_table(&6.1, &1.3, row.m, row.kind, &row.tau) else {
                continue;
            };
            let cs = crate::confocal::existence_check(
                &Ellipsoid::new(vec![1.3, 6.1]).unwrap(),
                &[r.lambda],
            )
            .unwrap();
            let spec = MergedSpectrum::new(&Ellipsoid::new(vec![1.3, 6.1]).unwrap(), &cs).unwrap();
            assert!(cayley_diagnostic(&spec, row.m, 1e-9).unwrap().holds(), "{row:?}");
        }
    }

    #[test]
    fn planar_symmetries() {
        for rho in [(1usize, 3usize), (1, 4), (1, 6)] {
            let rows = |kind| {
                PLANAR_TABLE
                    .iter()
                    .find(move |r| r.kind == kind && r.m1 * rho.1 == rho.0 * 2 * r.m0)
            };
            let (e, h) = (rows(Conic::E).unwrap(), rows(Conic::H).unwrap());
            for (a, b) in [(9.0, 1.0), (20.0, 3.0), (10.0, 1.7)] {
                let le = e.lambda(&a, &b).0;
                assert!((e.lambda(&b, &a).0 - le).abs() < 1e-12);
                if let Ok(hr) = planar_table(&a, &b, h.m, Conic::H, &h.tau) {
                    let back = e.lambda(&a, &hr.lambda).0;
                    assert!((back - b).abs() < 1e-10, "{rho:?} ({a}, {b})");
                }
            }
        }
    }

    #[test]
    fn spatial_examples() {
        let r = spatial_table(&q(5, 1), &q(2, 1), &q(1, 2), &[0, 1]).unwrap();
        assert!(r.exact);
        let l1 = q(1, 2) - q(1, 8) / (q(3, 2) * q(9, 2));
        assert_eq!(r.caustics.params()[0], l1);
        assert!((r.caustics.params()[0].to_f64() - 0.48148).abs() < 1e-5);
        let h = spatial_table(&4.0, &1.0, &0.25, &[1, 1]).unwrap();
        let m = construct_m_eq_n(&Ellipsoid::new(vec![0.25, 1.0, 4.0]).unwrap()).unwrap();
        assert_eq!(h.caustics.params(), m.caustics.unwrap().params());
        let eh2 = spatial_table(&4.0, &1.0, &0.3, &[0, 2]).unwrap();
        let l = eh2.caustics.params();
        assert!(l[0] > 0.0 && l[0] < 0.3 && l[1] > 1.0 && l[1] < 4.0);
        assert_eq!(eh2.winding, vec![6, 4, 2]);
    }

    #[test]
    fn spatial_thresholds_are_exact() {
        // H1H1 threshold with a b a perfect square: ab/(a+b+2sqrt(ab)) = 4/9 for (4, 1)
        assert_eq!(
            spatial_table(&q(4, 1), &q(1, 1), &q(4, 9), &[1, 1]),
            Err(Error::NoSuchTrajectory(SPATIAL_TABLE[1].condition))
        );
        assert!(spatial_table(&q(4, 1), &q(1, 1), &q(4, 9), &[1, 1]).is_err());
        assert!(spatial_table(&q(4, 1), &q(1, 1), &(q(4, 9) - q(1, 1_000_000)), &[1, 1]).is_ok());
        assert_eq!(
            spatial_table(&4.0, &1.0, &(4.0 / 9.0), &[1, 1]),
            Err(Error::Indeterminate(SPATIAL_TABLE[1].condition))
        );
    }

    #[test]
    fn c43_example() {
        let r = solve_c43(&4.0, &1.0, &0.2).unwrap();
        let d = r.d.unwrap();
        assert!(d > 4.0);
        let cubic = d * d * d - 10.4 * d * d + 15.0 * d - 3.2;
        assert!(cubic.abs() < 1e-10);
        assert_eq!(r.caustics.type_vector(), &[1, 1]);
        assert_eq!(solve_c43(&4.0, &1.0, &0.9), Err(Error::NoSuchTrajectory("c < ab/(a+b)")));
        let spec = MergedSpectrum::new(&r.ellipsoid, &r.caustics).unwrap();
        assert!(cayley_diagnostic(&spec, 4, 1e-9).unwrap().holds());
        // and back through the period n + 1 construction
        let inst = construct_m_eq_n_plus_1(r.caustics.params(), &d).unwrap();
        let axes = inst.ellipsoid.unwrap().axes().to_vec();
        for (x, y) in axes.iter().zip([0.2, 1.0, 4.0]) {
            assert!((x - y).abs() < 1e-10, "{axes:?}");
        }
    }

    #[test]
    fn c43_matches_signature_solver() {
        // the small caustic hugs c when c is far below ab/(a+b), which is
        // a poor test of the generic solver
        let e = Ellipsoid::new(vec![1.0, 2.0, 3.0]).unwrap();
        let sig = Signature::new(4, 3, vec![0, 0, 1]).unwrap();
        let sol = solve_signature(&e, &[1, 1], &sig, &SolveOptions::default()).unwrap();
        let closed = solve_c43(&3.0, &2.0, &1.0).unwrap();
        for (x, y) in sol.caustics.iter().zip(closed.caustics.params()) {
            assert!((x - y).abs() < 1e-10, "{x} {y}");
        }
        assert!((1.0 / sol.deltas[0] - closed.d.unwrap()).abs() < 1e-8);
    }

    #[test]
    fn c53_residual_vanishes_on_solutions() {
        let e = Ellipsoid::new(vec![0.197, 1.51, 3.93]).unwrap();
        let sig = Signature::new(5, 3, vec![1, 1, 0]).unwrap();
        let sol = solve_signature(&e, &[0, 1], &sig, &SolveOptions::default()).unwrap();
        let [r3, r4] = residual_c53(&3.93, &1.51, &0.197, &sol.caustics[0], &sol.caustics[1]);
        let s1: f64 = [3.93, 1.51, 0.197, sol.caustics[0], sol.caustics[1]].iter().map(|x| 1.0 / x).sum();
        assert!(r3.abs() / s1.powi(3) < 1e-10 && r4.abs() / s1.powi(4) < 1e-10);
        let [n3, _] = residual_c53(&3.93, &1.51, &0.197, &0.2, &0.5);
        assert!(n3.abs() > 1e-3);
    }

    proptest! {
        #[test]
        fn c53_homogeneity(v in prop::collection::vec(1i64..50, 5), sn in 1i64..9, sd in 1i64..9) {
            let p: Vec<Rational> = v.iter().map(|&x| q(x, 7)).collect();
            let sigma = q(sn, sd);
            let base = residual_c53(&p[0], &p[1], &p[2], &p[3], &p[4]);
            let sc: Vec<Rational> = p.iter().map(|x| x * &sigma).collect();
            let scaled = residual_c53(&sc[0], &sc[1], &sc[2], &sc[3], &sc[4]);
            prop_assert_eq!(&scaled[0] * sigma.powi(3), base[0].clone());
            prop_assert_eq!(&scaled[1] * sigma.powi(4), base[1].clone());
        }

        #[test]
        fn spatial_rows_satisfy_matrix(a in 1.0f64..10.0, bf in 0.05f64..0.95, cf in 0.02f64..0.98) {
            let b = a * bf;
            let c = b * cf;
            for row in &SPATIAL_TABLE {
                if let Ok(r) = spatial_table(&a, &b, &c, &row.varsigma) {
                    let spec = MergedSpectrum::new(&r.ellipsoid, &r.caustics).unwrap();
                    let sep = spec.c().windows(2).map(|w| (w[1] - w[0]) / w[1]).fold(1.0, f64::min);
                    prop_assume!(sep > 1e-6);
                    prop_assert!(cayley_diagnostic(&spec, 3, 1e-9).unwrap().holds(), "{} at {a} {b} {c}", row.name);
                }
            }
        }
    }
}
