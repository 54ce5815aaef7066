//! The billiard map, per-chord caustic extraction and tangent launches.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::confocal::{
    existence_check, from_elliptic, to_elliptic, CausticSet, EllipticCoords, Ellipsoid,
    MergedSpectrum,
};
use crate::error::{Error, Result};
use crate::polyform::solve_linear;
use crate::ratpoly::{real_roots_f64, Poly};

/// Discriminant threshold below which a chord counts as tangent to `Q`.
pub const GRAZING_TOL: f64 = 1e-14;

/// A bounce point on `Q` and a unit direction.
#[derive(Clone, Debug, PartialEq)]
pub struct BilliardState {
    pub point: Vec<f64>,
    pub direction: Vec<f64>,
}

impl BilliardState {
    /// Point and direction after normalizing the direction.
    pub fn new(point: Vec<f64>, direction: Vec<f64>) -> Result<Self> {
        if point.len() != direction.len() {
            return Err(Error::InvalidInput("point and direction differ in length".into()));
        }
        let norm = libm::sqrt(dot(&direction, &direction));
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidInput("direction must be a nonzero vector".into()));
        }
        Ok(BilliardState {
            point,
            direction: direction.iter().map(|v| v / norm).collect(),
        })
    }

    /// `d/ds` of the ellipsoid function along the direction at `s = 0`.
    /// Negative when the direction points into the ellipsoid.
    pub fn inwardness(&self, e: &Ellipsoid<f64>) -> f64 {
        2.0 * weighted(e, &self.point, &self.direction)
    }
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// `sum x_i y_i / a_i`.
fn weighted(e: &Ellipsoid<f64>, x: &[f64], y: &[f64]) -> f64 {
    e.axes().iter().zip(x.iter().zip(y)).map(|(a, (p, q))| p * q / a).sum()
}

/// Follow the chord from `s.point` along `s.direction` to the far side of
/// `Q` and reflect. Returns the new state and the chord length.
pub fn reflect_step(e: &Ellipsoid<f64>, s: &BilliardState) -> Result<(BilliardState, f64)> {
    let (x, v) = (&s.point, &s.direction);
    // sum (x + t v)^2 / a - 1 = qa t^2 + 2 qb t + qc
    let qa = weighted(e, v, v);
    let qb = weighted(e, x, v);
    let qc = weighted(e, x, x) - 1.0;
    let disc = qb * qb - qa * qc;
    if disc < GRAZING_TOL * qa {
        return Err(Error::GrazingSegment);
    }
    if qb >= 0.0 {
        return Err(Error::InvalidInput("direction does not point inward".into()));
    }
    // the root away from zero, without cancellation
    let t = (-qb + libm::sqrt(disc)) / qa;
    let mut point: Vec<f64> = x.iter().zip(v).map(|(p, d)| p + t * d).collect();
    let scale = libm::sqrt(weighted(e, &point, &point));
    for p in &mut point {
        *p /= scale;
    }
    let normal: Vec<f64> = point.iter().zip(e.axes()).map(|(p, a)| p / a).collect();
    let nn = dot(&normal, &normal);
    let k = 2.0 * dot(v, &normal) / nn;
    let mut direction: Vec<f64> = v.iter().zip(&normal).map(|(d, m)| d - k * m).collect();
    let norm = libm::sqrt(dot(&direction, &direction));
    for d in &mut direction {
        *d /= norm;
    }
    Ok((BilliardState { point, direction }, t))
}

/// Tangency polynomial of the line `p + t v` cleared of denominators:
/// `sum_i v_i^2 prod_{k != i} (a_k - l) - sum_{i<j} (p_i v_j - p_j v_i)^2
/// prod_{k != i, j} (a_k - l)`. Its roots are the caustic parameters.
fn tangency_value(a: &[f64], p: &[f64], v: &[f64], l: f64) -> f64 {
    let n = a.len();
    let d: Vec<f64> = a.iter().map(|ai| ai - l).collect();
    let prod_except = |skip: &[usize]| -> f64 {
        (0..n).filter(|k| !skip.contains(k)).map(|k| d[k]).product()
    };
    let mut total = 0.0;
    for i in 0..n {
        total += v[i] * v[i] * prod_except(&[i]);
        for j in i + 1..n {
            let w = p[i] * v[j] - p[j] * v[i];
            total -= w * w * prod_except(&[i, j]);
        }
    }
    total
}

/// The `n - 1` caustic parameters of the line through `p` with direction
/// `v`, increasing.
///
/// The tangency polynomial (degree `n - 1`) is sampled at `n` Chebyshev
/// nodes of `(0, a_n)`, interpolated and its real roots polished.
pub fn line_caustics(e: &Ellipsoid<f64>, p: &[f64], v: &[f64]) -> Result<Vec<f64>> {
    let a = e.axes();
    let n = a.len();
    let top = a[n - 1];
    let nodes: Vec<f64> = (0..n)
        .map(|k| {
            let theta = core::f64::consts::PI * (2 * k + 1) as f64 / (2 * n) as f64;
            0.5 * top * (1.0 - libm::cos(theta))
        })
        .collect();
    let values: Vec<f64> = nodes.iter().map(|l| tangency_value(a, p, v, *l)).collect();
    let poly = interpolate(&nodes, &values);
    let f = |l: f64| tangency_value(a, p, v, l);
    let mut out = Vec::with_capacity(n - 1);
    for (r, k) in real_roots_f64(&poly, None, 1e-12)? {
        let r = polish(&f, r, top);
        for _ in 0..k {
            out.push(r);
        }
    }
    if out.len() != n - 1 {
        return Err(Error::TangencyExtractionFailed);
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Newton form interpolation, expanded to monomial coefficients.
fn interpolate(x: &[f64], y: &[f64]) -> Poly<f64> {
    let n = x.len();
    let mut c = y.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            c[i] = (c[i] - c[i - 1]) / (x[i] - x[i - j]);
        }
    }
    let mut acc = Poly::constant(c[n - 1]);
    for i in (0..n - 1).rev() {
        acc = &(&acc * &Poly::new(vec![-x[i], 1.0])) + &Poly::constant(c[i]);
    }
    acc
}

/// A few secant steps on the direct evaluation to remove interpolation error.
fn polish(f: &impl Fn(f64) -> f64, r: f64, scale: f64) -> f64 {
    let h = 1e-7 * scale;
    let (mut x0, mut x1) = (r - h, r);
    let (mut f0, mut f1) = (f(x0), f(x1));
    for _ in 0..8 {
        if f1 == 0.0 || f1 == f0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !x2.is_finite() || libm::fabs(x2 - r) > 1e-3 * scale {
            return r;
        }
        (x0, f0) = (x1, f1);
        x1 = x2;
        f1 = f(x1);
        if libm::fabs(x1 - x0) <= 4.0 * f64::EPSILON * libm::fabs(x1) {
            break;
        }
    }
    x1
}

/// Outward normal of the confocal quadric `Q_mu` through `x`, unit length.
fn confocal_normal(a: &[f64], x: &[f64], mu: f64) -> Vec<f64> {
    let mut nrm: Vec<f64> = a.iter().zip(x).map(|(ai, xi)| xi / (ai - mu)).collect();
    let len = libm::sqrt(dot(&nrm, &nrm));
    for v in &mut nrm {
        *v /= len;
    }
    nrm
}

/// A bounce point and an inward direction whose line is tangent to the
/// prescribed caustics.
///
/// The seed picks the elliptic coordinates of the boundary point inside the
/// bands allowed by the caustics and the signs of the direction components.
/// The direction is first built from the closed expression of its
/// components along the confocal normals, then polished by Newton on the
/// caustic equations. Up to 32 seeded starts are tried.
pub fn launch_tangent(e: &Ellipsoid<f64>, caustics: &[f64], seed: u64) -> Result<BilliardState> {
    let cs = existence_check(e, caustics)?;
    let spec = MergedSpectrum::new(e, &cs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    for _ in 0..32 {
        match launch_once(e, &cs, &spec, &mut rng) {
            Ok(s) => return Ok(s),
            Err(err) => best = best.min(err),
        }
    }
    Err(Error::LaunchFailure(format!(
        "no tangent direction found (best mismatch {best:e})"
    )))
}

fn launch_once(
    e: &Ellipsoid<f64>,
    cs: &CausticSet<f64>,
    spec: &MergedSpectrum<f64>,
    rng: &mut ChaCha8Rng,
) -> core::result::Result<BilliardState, f64> {
    let a = e.axes();
    let n = a.len();
    let lam = cs.params();
    let mut mu = vec![0.0; n];
    for (j, m) in mu.iter_mut().enumerate().skip(1) {
        let (lo, hi) = (spec.c_ext(2 * j), spec.c_ext(2 * j + 1));
        *m = lo + (hi - lo) * rng.gen_range(0.05..0.95);
    }
    let mut point = from_elliptic(e, &EllipticCoords { mu: mu.clone() })
        .map_err(|_| f64::INFINITY)?;
    for x in &mut point {
        if rng.gen::<bool>() {
            *x = -*x;
        }
    }
    let normals: Vec<Vec<f64>> = mu.iter().map(|m| confocal_normal(a, &point, *m)).collect();
    // w_j^2 = prod_k (mu_j - lambda_k) / prod_{i != j} (mu_j - mu_i)
    let mut w: Vec<f64> = (0..n)
        .map(|j| {
            let num: f64 = lam.iter().map(|l| mu[j] - l).product();
            let den: f64 = (0..n).filter(|i| *i != j).map(|i| mu[j] - mu[i]).product();
            libm::sqrt((num / den).max(0.0))
        })
        .collect();
    w[0] = -w[0];
    for wj in w.iter_mut().skip(1) {
        if rng.gen::<bool>() {
            *wj = -*wj;
        }
    }
    let direction_of = |w: &[f64]| -> Vec<f64> {
        let mut d = vec![0.0; n];
        for (wj, nj) in w.iter().zip(&normals) {
            for (di, ni) in d.iter_mut().zip(nj) {
                *di += wj * ni;
            }
        }
        let len = libm::sqrt(dot(&d, &d));
        d.iter().map(|x| x / len).collect()
    };
    let mismatch = |w: &[f64]| -> Option<Vec<f64>> {
        let got = line_caustics(e, &point, &direction_of(w)).ok()?;
        Some(got.iter().zip(lam).map(|(g, l)| g - l).collect())
    };
    let scale = a[n - 1];
    let sup = |r: &[f64]| r.iter().fold(0.0, |m, x| f64::max(m, libm::fabs(*x)));
    let mut r = mismatch(&w).ok_or(f64::INFINITY)?;
    // Newton on the tangential components; w_0 follows from normalization
    for _ in 0..30 {
        if sup(&r) <= 1e-12 * scale {
            break;
        }
        let h = 1e-7;
        let mut jac = vec![vec![0.0; n - 1]; n - 1];
        for c in 0..n - 1 {
            let mut wp = w.clone();
            wp[c + 1] += h;
            let rp = mismatch(&wp).ok_or(sup(&r))?;
            for row in 0..n - 1 {
                jac[row][c] = (rp[row] - r[row]) / h;
            }
        }
        let step = solve_linear(jac, r.clone()).ok_or(sup(&r))?;
        let mut t = 1.0;
        loop {
            let wn: Vec<f64> = w
                .iter()
                .enumerate()
                .map(|(i, x)| if i == 0 { *x } else { x - t * step[i - 1] })
                .collect();
            match mismatch(&wn) {
                Some(rn) if sup(&rn) < sup(&r) => {
                    w = wn;
                    r = rn;
                    break;
                }
                _ if t < 1e-6 => return Err(sup(&r)),
                _ => t *= 0.5,
            }
        }
    }
    let err = sup(&r);
    if err > 1e-10 * scale {
        return Err(err);
    }
    let state = BilliardState { point, direction: direction_of(&w) };
    if state.inwardness(e) >= 0.0 {
        return Err(err);
    }
    Ok(state)
}

/// Maximum relative spread of each caustic parameter over a list of chords.
pub fn caustic_drift(chords: &[Vec<f64>]) -> f64 {
    let Some(first) = chords.first() else { return 0.0 };
    let mut worst: f64 = 0.0;
    for k in 0..first.len() {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for c in chords {
            lo = lo.min(c[k]);
            hi = hi.max(c[k]);
        }
        worst = worst.max((hi - lo) / libm::fabs(first[k]));
    }
    worst
}

/// Elliptic coordinates of every bounce point (used for band checks).
pub fn bounce_coordinates(e: &Ellipsoid<f64>, states: &[BilliardState]) -> Vec<Vec<f64>> {
    states.iter().map(|s| to_elliptic(e, &s.point).mu).collect()
}
