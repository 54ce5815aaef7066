//! Ellipsoids, their confocal families, caustic sets and Jacobi elliptic
//! coordinates.
//!
//! An ellipsoid is `Q = { sum x_j^2 / a_j = 1 }` with `0 < a_1 < ... < a_n`.
//! Its confocal family is `Q_mu = { sum x_j^2 / (a_j - mu) = 1 }`. A
//! nonsingular billiard trajectory inside `Q` is tangent to `n - 1` members
//! of the family, the caustics, whose parameters `lambda_k` must satisfy
//! `lambda_k in (a_{k-1}, a_k) U (a_k, a_{k+1})` with `a_0 = 0`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Axis parameters `0 < a_1 < ... < a_n` (stored 0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct Ellipsoid<S> {
    axes: Vec<S>,
}

impl<S: Scalar> Ellipsoid<S> {
    pub fn new(axes: Vec<S>) -> Result<Self> {
        if axes.len() < 2 {
            return Err(Error::InvalidEllipsoid(format!(
                "dimension {} < 2",
                axes.len()
            )));
        }
        if axes[0] <= S::zero() {
            return Err(Error::InvalidEllipsoid("axis parameters must be positive".into()));
        }
        if axes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidEllipsoid(
                "axis parameters must be strictly increasing".into(),
            ));
        }
        Ok(Ellipsoid { axes })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[S] {
        &self.axes
    }

    /// `a_j` with the convention `a_0 = 0` (1-based).
    pub fn axis(&self, j: usize) -> S {
        if j == 0 {
            S::zero()
        } else {
            self.axes[j - 1].clone()
        }
    }

    /// Residual `sum x_j^2 / a_j - 1`.
    pub fn residual(&self, x: &[S]) -> S {
        x.iter()
            .zip(&self.axes)
            .fold(S::zero(), |acc, (xi, a)| acc + xi.clone() * xi.clone() / a.clone())
            - S::one()
    }

    pub fn to_f64(&self) -> Ellipsoid<f64> {
        Ellipsoid {
            axes: self.axes.iter().map(Scalar::to_f64).collect(),
        }
    }

    /// Comma separated list of axis literals.
    pub fn parse(text: &str) -> Result<Self> {
        Ellipsoid::new(parse_list(text)?)
    }

    pub fn to_text(&self) -> String {
        join_list(&self.axes)
    }
}

/// Caustic type for the usual low-dimensional names.
///
/// Planar: `E` (confocal ellipse) and `H` (hyperbola). Spatial: the first
/// caustic is an ellipsoid `E` or a one-sheet hyperboloid `H1`, the second
/// a one-sheet `H1` or a two-sheet `H2` hyperboloid.
pub fn caustic_type_name(varsigma: &[usize]) -> Option<&'static str> {
    Some(match varsigma {
        [0] => "E",
        [1] => "H",
        [0, 1] => "EH1",
        [1, 1] => "H1H1",
        [0, 2] => "EH2",
        [1, 2] => "H1H2",
        _ => return None,
    })
}

/// Parse a caustic type name (`E`, `H`, `EH1`, `H1H1`, `EH2`, `H1H2`) or an
/// explicit comma separated `varsigma` vector of length `n - 1`.
pub fn parse_caustic_type(n: usize, text: &str) -> Result<Vec<usize>> {
    let t = text.trim();
    let named: Option<Vec<usize>> = match t.to_ascii_uppercase().as_str() {
        "E" => Some([0].into()),
        "H" => Some([1].into()),
        "EH1" => Some([0, 1].into()),
        "H1H1" => Some([1, 1].into()),
        "EH2" => Some([0, 2].into()),
        "H1H2" => Some([1, 2].into()),
        _ => None,
    };
    let v = match named {
        Some(v) => v,
        None => t
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad caustic type {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    if v.len() + 1 != n || v.iter().enumerate().any(|(k, &s)| s != k && s != k + 1) {
        return Err(Error::InvalidInput(format!(
            "caustic type {text:?} is not valid in dimension {n}"
        )));
    }
    Ok(v)
}

/// Accepted caustic parameters `lambda_1 < ... < lambda_{n-1}` together with
/// the caustic type: `lambda_k in (a_{varsigma_k}, a_{varsigma_k + 1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct CausticSet<S> {
    params: Vec<S>,
    varsigma: Vec<usize>,
}

impl<S: Scalar> CausticSet<S> {
    pub fn params(&self) -> &[S] {
        &self.params
    }

    /// The caustic type vector, entry `k - 1` is `varsigma_k`.
    pub fn type_vector(&self) -> &[usize] {
        &self.varsigma
    }

    pub fn type_name(&self) -> Option<&'static str> {
        caustic_type_name(&self.varsigma)
    }

    pub fn to_f64(&self) -> CausticSet<f64> {
        CausticSet {
            params: self.params.iter().map(Scalar::to_f64).collect(),
            varsigma: self.varsigma.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        join_list(&self.params)
    }
}

/// Accept `params` as caustic parameters of `e` and classify them.
///
/// Floats closer than `1e-12` (relative) to an axis count as singular.
pub fn existence_check<S: Scalar>(e: &Ellipsoid<S>, params: &[S]) -> Result<CausticSet<S>> {
    let n = e.dim();
    if params.len() + 1 != n {
        return Err(Error::InvalidInput(format!(
            "expected {} caustic parameters, got {}",
            n - 1,
            params.len()
        )));
    }
    if params.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "caustic parameters must be strictly increasing".into(),
        ));
    }
    let mut varsigma = Vec::with_capacity(n - 1);
    for (idx, lam) in params.iter().enumerate() {
        let k = idx + 1;
        for a in e.axes() {
            let tol = 1e-12 * a.to_f64();
            if (lam.clone() - a.clone()).is_negligible(tol) {
                return Err(Error::SingularCaustic { index: k });
            }
        }
        let (lo, mid, hi) = (e.axis(k - 1), e.axis(k), e.axis(k + 1));
        if *lam > lo && *lam < mid {
            varsigma.push(k - 1);
        } else if *lam > mid && *lam < hi {
            varsigma.push(k);
        } else {
            return Err(Error::NoTangentTrajectories { index: k });
        }
    }
    Ok(CausticSet {
        params: params.to_vec(),
        varsigma,
    })
}

/// Where an entry of the merged spectrum comes from (1-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Axis(usize),
    Caustic(usize),
    /// Built directly from `gamma` values with no ellipsoid attached.
    Unlabeled,
}

/// The `2n - 1` parameters `c_1 < ... < c_{2n-1}` (axes and caustics merged)
/// and their reciprocals `gamma_1 > ... > gamma_{2n-1} > gamma_{2n} = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct MergedSpectrum<S> {
    c: Vec<S>,
    gamma: Vec<S>,
    origin: Vec<Origin>,
}

impl<S: Scalar> MergedSpectrum<S> {
    pub fn new(e: &Ellipsoid<S>, caustics: &CausticSet<S>) -> Result<Self> {
        let mut tagged: Vec<(S, Origin)> = e
            .axes()
            .iter()
            .enumerate()
            .map(|(j, a)| (a.clone(), Origin::Axis(j + 1)))
            .chain(
                caustics
                    .params()
                    .iter()
                    .enumerate()
                    .map(|(k, l)| (l.clone(), Origin::Caustic(k + 1))),
            )
            .collect();
        tagged.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("comparable parameters"));
        let (c, origin): (Vec<S>, Vec<Origin>) = tagged.into_iter().unzip();
        let spec = MergedSpectrum {
            gamma: c.iter().map(Scalar::recip).collect(),
            c,
            origin,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Spectrum from `gamma_1 > ... > gamma_{2n-1} > 0` alone.
    pub fn from_gammas(gamma: Vec<S>) -> Result<Self> {
        if gamma.len().is_multiple_of(2) || gamma.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "need 2n - 1 >= 3 gamma values, got {}",
                gamma.len()
            )));
        }
        let spec = MergedSpectrum {
            c: gamma.iter().map(Scalar::recip).collect(),
            origin: alloc::vec![Origin::Unlabeled; gamma.len()],
            gamma,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.c.first().is_some_and(|c| *c <= S::zero()) {
            return Err(Error::InvalidInput("parameters must be positive".into()));
        }
        if self.c.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(
                "merged parameters must be pairwise distinct".into(),
            ));
        }
        if self.gamma.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidInput("gammas must be strictly decreasing".into()));
        }
        let axes = self.origin.iter().filter(|o| matches!(o, Origin::Axis(_))).count();
        let caus = self.origin.iter().filter(|o| matches!(o, Origin::Caustic(_))).count();
        if axes + caus > 0 && (axes != self.n() || caus != self.n() - 1) {
            return Err(Error::InvalidInput("inconsistent origin tags".into()));
        }
        Ok(())
    }

    /// Dimension `n`.
    pub fn n(&self) -> usize {
        self.c.len().div_ceil(2)
    }

    pub fn c(&self) -> &[S] {
        &self.c
    }

    pub fn gammas(&self) -> &[S] {
        &self.gamma
    }

    pub fn origins(&self) -> &[Origin] {
        &self.origin
    }

    /// `gamma_i` for `1 <= i <= 2n`, with `gamma_{2n} = 0`.
    pub fn gamma(&self, i: usize) -> S {
        if i == self.gamma.len() + 1 {
            S::zero()
        } else {
            self.gamma[i - 1].clone()
        }
    }

    /// `c_i` for `0 <= i <= 2n - 1`, with `c_0 = 0`.
    pub fn c_ext(&self, i: usize) -> S {
        if i == 0 {
            S::zero()
        } else {
            self.c[i - 1].clone()
        }
    }

    pub fn to_f64(&self) -> MergedSpectrum<f64> {
        MergedSpectrum {
            c: self.c.iter().map(Scalar::to_f64).collect(),
            gamma: self.gamma.iter().map(Scalar::to_f64).collect(),
            origin: self.origin.clone(),
        }
    }
}

/// Jacobi elliptic coordinates `mu_0 <= a_1 <= mu_1 <= ... <= mu_{n-1} <= a_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticCoords {
    pub mu: Vec<f64>,
}

/// Elliptic coordinates of `x`: the `n` roots of
/// `g(mu) = sum x_j^2 / (a_j - mu) - 1`, one per interlacing interval.
///
/// A vanishing coordinate `x_j = 0` removes the pole at `a_j`; `a_j` is
/// then itself one of the coordinates and the remaining root decides the
/// slot: `a_j` takes the lower slot `mu_{j-1}` unless the root lies below
/// `a_j`.
pub fn to_elliptic(e: &Ellipsoid<f64>, x: &[f64]) -> EllipticCoords {
    let terms: Vec<(f64, f64)> = e
        .axes()
        .iter()
        .zip(x)
        .filter(|(_, xi)| **xi != 0.0)
        .map(|(a, xi)| (*a, xi * xi))
        .collect();
    let g = |mu: f64| terms.iter().map(|(a, x2)| x2 / (a - mu)).sum::<f64>() - 1.0;
    let mut mu: Vec<f64> = e
        .axes()
        .iter()
        .zip(x)
        .filter(|(_, xi)| **xi == 0.0)
        .map(|(a, _)| *a)
        .collect();
    let norm2: f64 = terms.iter().map(|t| t.1).sum();
    let mut lo = terms.first().map_or(0.0, |t| t.0) - norm2 - 1.0;
    for (a, _) in &terms {
        mu.push(bisect_increasing(&g, lo, *a));
        lo = *a;
    }
    mu.sort_by(f64::total_cmp);
    EllipticCoords { mu }
}

/// Root of a function increasing from `-inf` to `+inf` on `(lo, hi)`.
fn bisect_increasing(g: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..2100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = g(mid);
        if v == 0.0 {
            return mid;
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Cartesian point with nonnegative coordinates from elliptic coordinates:
/// `x_j^2 = prod_i (a_j - mu_i) / prod_{i != j} (a_j - a_i)`.
pub fn from_elliptic(e: &Ellipsoid<f64>, mu: &EllipticCoords) -> Result<Vec<f64>> {
    let a = e.axes();
    if mu.mu.len() != a.len() {
        return Err(Error::InvalidInput(format!(
            "expected {} elliptic coordinates, got {}",
            a.len(),
            mu.mu.len()
        )));
    }
    let mut x = Vec::with_capacity(a.len());
    for (j, aj) in a.iter().enumerate() {
        let num: f64 = mu.mu.iter().map(|m| aj - m).product();
        let den: f64 = a
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, ai)| aj - ai)
            .product();
        let r = num / den;
        let scale = mu.mu.iter().map(|m| libm::fabs(aj - m)).product::<f64>() / libm::fabs(den);
        if r < -1e-9 * scale.max(1e-300) {
            return Err(Error::NonInterlaced);
        }
        x.push(libm::sqrt(r.max(0.0)));
    }
    Ok(x)
}

fn parse_list<S: Scalar>(text: &str) -> Result<Vec<S>> {
    text.split(',').map(S::parse_text).collect()
}

fn join_list<S: Scalar>(values: &[S]) -> String {
    values.iter().map(Scalar::to_text).collect::<Vec<_>>().join(",")
}

/// Parse a comma separated list of literals of one scalar kind.
pub fn parse_params<S: Scalar>(text: &str) -> Result<Vec<S>> {
    parse_list(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::Rational;
    use alloc::vec;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn sample_ellipsoid() -> Ellipsoid<Rational> {
        Ellipsoid::new(vec![q(1, 5), q(1, 2), q(1, 1)]).unwrap()
    }

    #[test]
    fn ellipsoid_validation() {
        assert!(Ellipsoid::new(vec![1.0]).is_err());
        assert!(Ellipsoid::new(vec![1.0, 1.0]).is_err());
        assert!(Ellipsoid::new(vec![0.0, 1.0]).is_err());
        assert!(Ellipsoid::new(vec![2.0, 1.0]).is_err());
        assert!(Ellipsoid::new(vec![1.0, 2.0]).is_ok());
    }

    #[test]
    fn spatial_example_is_eh1() {
        let cs = existence_check(&sample_ellipsoid(), &[q(1, 6), q(1, 4)]).unwrap();
        assert_eq!(cs.type_vector(), &[0, 1]);
        assert_eq!(cs.type_name(), Some("EH1"));
    }

    #[test]
    fn planar_rejections() {
        let e = Ellipsoid::new(vec![q(1, 1), q(2, 1)]).unwrap();
        assert_eq!(
            existence_check(&e, &[q(3, 1)]),
            Err(Error::NoTangentTrajectories { index: 1 })
        );
        assert_eq!(
            existence_check(&e, &[q(1, 1)]),
            Err(Error::SingularCaustic { index: 1 })
        );
        assert_eq!(existence_check(&e, &[q(3, 2)]).unwrap().type_name(), Some("H"));
    }

    #[test]
    fn second_caustic_below_first_axis_rejected() {
        // lambda_2 must lie above a_1
        let e = sample_ellipsoid();
        assert_eq!(
            existence_check(&e, &[q(1, 10), q(1, 6)]),
            Err(Error::NoTangentTrajectories { index: 2 })
        );
    }

    #[test]
    fn merged_spectrum_of_example() {
        let e = sample_ellipsoid();
        let cs = existence_check(&e, &[q(1, 6), q(1, 4)]).unwrap();
        let spec = MergedSpectrum::new(&e, &cs).unwrap();
        let g: Vec<Rational> = [6, 5, 4, 2, 1].iter().map(|&v| q(v, 1)).collect();
        assert_eq!(spec.gammas(), g.as_slice());
        assert_eq!(spec.gamma(6), q(0, 1));
        assert_eq!(spec.n(), 3);
        assert_eq!(
            spec.origins(),
            &[
                Origin::Caustic(1),
                Origin::Axis(1),
                Origin::Caustic(2),
                Origin::Axis(2),
                Origin::Axis(3)
            ]
        );
        assert!(MergedSpectrum::from_gammas(vec![q(3, 1), q(3, 1), q(1, 1)]).is_err());
        assert!(MergedSpectrum::from_gammas(vec![q(3, 1), q(1, 1)]).is_err());
    }

    #[test]
    fn caustic_type_parsing() {
        assert_eq!(parse_caustic_type(3, "h1h1").unwrap(), vec![1, 1]);
        assert_eq!(parse_caustic_type(3, "0,2").unwrap(), vec![0, 2]);
        assert!(parse_caustic_type(3, "E").is_err());
        assert!(parse_caustic_type(3, "0,0").is_err());
        assert_eq!(parse_caustic_type(2, "H").unwrap(), vec![1]);
    }

    #[test]
    fn text_round_trip() {
        let e = sample_ellipsoid();
        assert_eq!(e.to_text(), "1/5,1/2,1");
        assert_eq!(Ellipsoid::<Rational>::parse(&e.to_text()).unwrap(), e);
        let f = Ellipsoid::<f64>::parse("0.2, 0.5, 1").unwrap();
        assert_eq!(Ellipsoid::<f64>::parse(&f.to_text()).unwrap(), f);
        assert!(Ellipsoid::<f64>::parse("1/5,1").is_err());
    }

    #[test]
    fn boundary_convention() {
        let e = Ellipsoid::new(vec![1.0, 2.0]).unwrap();
        // x_2 = 0: the reduced root is 0, and a_2 fills its lower slot mu_1
        let mu = to_elliptic(&e, &[1.0, 0.0]).mu;
        assert!(mu[0].abs() < 1e-15 && mu[1] == 2.0);
        // x_1 = 0 with reduced root 2 - 1.44 < a_1: interlacing forces a_1 upward
        let mu = to_elliptic(&e, &[0.0, 1.2]).mu;
        assert!((mu[0] - 0.56).abs() < 1e-14 && mu[1] == 1.0);
        // a point whose reduced root lies above a_1: a_1 takes the lower slot
        let mu = to_elliptic(&e, &[0.0, 0.5]).mu;
        assert_eq!(mu[0], 1.0);
        assert!((mu[1] - 1.75).abs() < 1e-14);
        let x = from_elliptic(&e, &EllipticCoords { mu }).unwrap();
        assert_eq!(x[0], 0.0);
        assert!((x[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn generic_interior_point_residual() {
        let e = Ellipsoid::new(vec![1.0, 2.0]).unwrap();
        let (x0, y0) = (0.4, -0.7);
        for m in to_elliptic(&e, &[x0, y0]).mu {
            let g = x0 * x0 / (1.0 - m) + y0 * y0 / (2.0 - m) - 1.0;
            assert!(g.abs() < 1e-10);
        }
    }

    #[test]
    fn non_interlaced_rejected() {
        let e = Ellipsoid::new(vec![1.0, 2.0]).unwrap();
        assert_eq!(
            from_elliptic(&e, &EllipticCoords { mu: vec![1.5, 1.6] }),
            Err(Error::NonInterlaced)
        );
    }

    #[test]
    fn sample_ellipsoid_round_trip() {
        use rand::{Rng, SeedableRng};
        let e = sample_ellipsoid().to_f64();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let x: Vec<f64> = e
                .axes()
                .iter()
                .map(|a| rng.gen_range(-1.0..1.0) * libm::sqrt(*a))
                .collect();
            let mu = to_elliptic(&e, &x);
            let y = from_elliptic(&e, &mu).unwrap();
            for (xi, yi) in x.iter().zip(&y) {
                worst = worst.max((xi.abs() - yi).abs());
            }
        }
        assert!(worst < 1e-9, "worst round-trip error {worst}");
    }

    fn interlaced(axes: &[f64], fr: &[f64]) -> Vec<f64> {
        let mut mu = vec![axes[0] * (fr[0] * 2.0 - 1.0)];
        for j in 1..axes.len() {
            mu.push(axes[j - 1] + fr[j] * (axes[j] - axes[j - 1]));
        }
        mu
    }

    proptest! {
        #[test]
        fn varsigma_in_allowed_set(
            a in prop::collection::btree_set(1u32..200, 3..6),
            picks in prop::collection::vec((any::<bool>(), 0.05f64..0.95), 5),
        ) {
            let axes: Vec<f64> = a.iter().map(|&v| v as f64 / 10.0).collect();
            let e = Ellipsoid::new(axes.clone()).unwrap();
            let n = axes.len();
            let mut lam = Vec::new();
            for k in 1..n {
                let (up, f) = picks[k - 1];
                let (lo, hi) = if up { (e.axis(k), e.axis(k + 1)) } else { (e.axis(k - 1), e.axis(k)) };
                lam.push(lo + f * (hi - lo));
            }
            if lam.windows(2).all(|w| w[0] < w[1]) {
                let cs = existence_check(&e, &lam).unwrap();
                for (k, s) in cs.type_vector().iter().enumerate() {
                    prop_assert!(*s == k || *s == k + 1);
                }
                let spec = MergedSpectrum::new(&e, &cs).unwrap();
                prop_assert_eq!(spec.c().len(), 2 * n - 1);
            }
        }

        #[test]
        fn elliptic_round_trip(
            a in prop::collection::btree_set(1u32..100, 2..5),
            fr in prop::collection::vec(0.02f64..0.98, 5),
        ) {
            let axes: Vec<f64> = a.iter().map(|&v| v as f64 / 7.0).collect();
            let e = Ellipsoid::new(axes.clone()).unwrap();
            let mu = interlaced(&axes, &fr);
            let x = from_elliptic(&e, &EllipticCoords { mu: mu.clone() }).unwrap();
            let back = to_elliptic(&e, &x).mu;
            for (m, b) in mu.iter().zip(&back) {
                prop_assert!((m - b).abs() < 1e-9 * (1.0 + m.abs()));
            }
        }

        #[test]
        fn sign_reflection_invariance(
            x in prop::collection::vec(-1.0f64..1.0, 3),
            signs in prop::collection::vec(any::<bool>(), 3),
        ) {
            let e = Ellipsoid::new(vec![0.2, 0.5, 1.0]).unwrap();
            let y: Vec<f64> = x.iter().zip(&signs).map(|(v, s)| if *s { -v } else { *v }).collect();
            prop_assert_eq!(to_elliptic(&e, &x), to_elliptic(&e, &y));
        }

        #[test]
        fn planar_root_brackets(x0 in -1.0f64..1.0, y0 in -1.4f64..1.4) {
            prop_assume!(x0 * x0 + y0 * y0 / 2.0 < 1.0 && x0 != 0.0 && y0 != 0.0);
            let e = Ellipsoid::new(vec![1.0, 2.0]).unwrap();
            let g = |m: f64| x0 * x0 / (1.0 - m) + y0 * y0 / (2.0 - m) - 1.0;
            // backward accuracy: g changes sign within a few ulps of every coordinate
            for m in to_elliptic(&e, &[x0, y0]).mu {
                let d = 1e-14 * m.abs().max(1.0);
                prop_assert!(g(m - d) <= 0.0 && g(m + d) >= 0.0);
            }
        }
    }
}
