//! Multistart damped Newton for the power-sum system of a signature.
//!
//! The unknowns are the `n - 1` caustic gammas (their slots in the merged
//! sequence are fixed by the caustic type) and the `m - n` double roots
//! `delta`. Iterates live on the scale `u = gamma * a_1` so that the axis
//! gammas are at most 1, and every step is kept inside the ordering
//! constraints by backtracking.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    certificate_from_signature, decomposition_from_signature, deltas_match_signature,
    power_sum_residual_raw, verify_certificate, Certificate, Signature,
};
use crate::confocal::{existence_check, Ellipsoid, MergedSpectrum};
use crate::error::{Error, Result};
use crate::ratpoly::{simplest_rational_between, Rational};
use crate::scalar::{rational_from_f64, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    pub seed: u64,
    /// Jittered starts tried after the midpoint start.
    pub restarts: usize,
    pub max_iter: usize,
    /// Target for the scaled residual sup-norm.
    pub tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            restarts: 8,
            max_iter: 200,
            tol: 1e-12,
        }
    }
}

/// A converged solution of the power-sum system for one signature.
#[derive(Clone, Debug, PartialEq)]
pub struct SignatureSolution<S> {
    /// Caustic parameters `lambda_1 < ... < lambda_{n-1}`.
    pub caustics: Vec<S>,
    /// `1 / lambda_k`, same order.
    pub caustic_gammas: Vec<S>,
    /// `delta_1 > ... > delta_{m-n}`.
    pub deltas: Vec<S>,
    /// Merged `gamma_1 > ... > gamma_{2n-1}`.
    pub gammas: Vec<S>,
    /// Sup-norm of the residual, each equation divided by the sum of the
    /// absolute values of its terms.
    pub residual: f64,
    /// The residual vanishes identically (rational inputs only).
    pub exact: bool,
    pub certificate: Certificate<S>,
    pub signature: Signature,
    pub varsigma: Vec<usize>,
}

/// Where each unknown sits in the merged gamma list.
struct Layout {
    m: usize,
    n: usize,
    /// `u`-values of the axes, indexed by gamma slot (`None` for caustics).
    fixed: Vec<Option<f64>>,
    /// Gamma slot (0-based) of caustic `k`.
    caustic_slot: Vec<usize>,
    /// Coefficient of `gamma_i^l` in every equation (+1 for J, -1 for K).
    gamma_sign: Vec<f64>,
    /// Coefficient of `delta_u^l` (+2 for V, -2 for W).
    delta_sign: Vec<f64>,
    /// Gap index (1-based) of each delta.
    delta_gap: Vec<usize>,
}

impl Layout {
    fn new(axes: &[f64], varsigma: &[usize], sig: &Signature) -> Result<Self> {
        let n = axes.len();
        if varsigma.len() + 1 != n || sig.n() != n {
            return Err(Error::InvalidInput(
                "caustic type and signature must match the dimension".into(),
            ));
        }
        if varsigma.iter().enumerate().any(|(i, &s)| s != i && s != i + 1) {
            return Err(Error::InvalidInput(
                "caustic type entry k must be k - 1 or k".into(),
            ));
        }
        let a1 = axes[0];
        // ascending c: per interval i, its caustics then the axis a_{i+1}
        let mut fixed = Vec::with_capacity(2 * n - 1);
        let mut caustic_slot = vec![0; n - 1];
        for i in 0..n {
            for (k, _) in varsigma.iter().enumerate().filter(|(_, &s)| s == i) {
                caustic_slot[k] = fixed.len();
                fixed.push(None);
            }
            fixed.push(Some(a1 / axes[i]));
        }
        let d = decomposition_from_signature(sig);
        let mut gamma_sign = vec![0.0; 2 * n - 1];
        for &j in &d.j {
            gamma_sign[j - 1] = 1.0;
        }
        for &k in &d.k {
            gamma_sign[k - 1] = -1.0;
        }
        let mut delta_sign = vec![0.0; sig.m() - n];
        for &v in &d.v {
            delta_sign[v - 1] = 2.0;
        }
        for &w in &d.w {
            delta_sign[w - 1] = -2.0;
        }
        let delta_gap = sig
            .tau()
            .iter()
            .enumerate()
            .flat_map(|(r, &t)| core::iter::repeat_n(r + 1, t))
            .collect();
        Ok(Layout {
            m: sig.m(),
            n,
            fixed,
            caustic_slot,
            gamma_sign,
            delta_sign,
            delta_gap,
        })
    }

    fn unknowns(&self) -> usize {
        self.m - 1
    }

    fn gammas(&self, x: &[f64]) -> Vec<f64> {
        let mut g: Vec<f64> = self.fixed.iter().map(|v| v.unwrap_or(0.0)).collect();
        for (k, &slot) in self.caustic_slot.iter().enumerate() {
            g[slot] = x[k];
        }
        g
    }

    fn deltas<'a>(&self, x: &'a [f64]) -> &'a [f64] {
        &x[self.n - 1..]
    }

    /// Gap `(gamma_{2r}, gamma_{2r-1})` on the `u` scale.
    fn gap(&self, g: &[f64], r: usize) -> (f64, f64) {
        let lo = if r == self.n { 0.0 } else { g[2 * r - 1] };
        (lo, g[2 * r - 2])
    }

    /// Scaled residual and the matching Jacobian rows.
    fn system(&self, x: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
        let g = self.gammas(x);
        let dl = self.deltas(x);
        let dim = self.unknowns();
        let mut res = Vec::with_capacity(dim);
        let mut jac = Vec::with_capacity(dim);
        for l in 1..self.m as i32 {
            let lf = l as f64;
            let mut r = 0.0;
            let mut scale = 0.0;
            for (gi, si) in g.iter().zip(&self.gamma_sign) {
                let t = libm::pow(*gi, lf);
                r += si * t;
                scale += libm::fabs(si * t);
            }
            for (di, si) in dl.iter().zip(&self.delta_sign) {
                let t = libm::pow(*di, lf);
                r += si * t;
                scale += libm::fabs(si * t);
            }
            let scale = if scale > 0.0 { scale } else { 1.0 };
            let mut row = vec![0.0; dim];
            for (k, &slot) in self.caustic_slot.iter().enumerate() {
                row[k] = self.gamma_sign[slot] * lf * libm::pow(x[k], lf - 1.0) / scale;
            }
            for (u, (di, si)) in dl.iter().zip(&self.delta_sign).enumerate() {
                row[self.n - 1 + u] = si * lf * libm::pow(*di, lf - 1.0) / scale;
            }
            res.push(r / scale);
            jac.push(row);
        }
        (res, jac)
    }

    fn merit(&self, x: &[f64]) -> f64 {
        sup(&self.system(x).0)
    }

    /// Strict ordering of the merged list and every delta inside its gap,
    /// at least `SEPARATION` (relative) away from the gammas and each other.
    fn feasible(&self, x: &[f64]) -> bool {
        if x.iter().any(|v| !v.is_finite()) {
            return false;
        }
        let g = self.gammas(x);
        if g.last().is_some_and(|v| *v <= 0.0)
            || g.windows(2).any(|w| w[0] <= w[1] * (1.0 + 1e-12))
        {
            return false;
        }
        let dl = self.deltas(x);
        if dl.windows(2).any(|w| w[0] <= w[1] * (1.0 + SEPARATION)) {
            return false;
        }
        dl.iter().zip(&self.delta_gap).all(|(d, &r)| {
            let (lo, hi) = self.gap(&g, r);
            *d > lo + SEPARATION * hi && *d < hi * (1.0 - SEPARATION)
        })
    }

    /// Caustics at fractions of their intervals (in `c`), deltas spread in
    /// their gaps; `jitter` draws the fractions at random instead.
    fn start(&self, axes: &[f64], varsigma: &[usize], rng: Option<&mut ChaCha8Rng>) -> Vec<f64> {
        let a1 = axes[0];
        let mut rng = rng;
        let mut x = vec![0.0; self.unknowns()];
        for i in 0..self.n {
            let members: Vec<usize> = (0..self.n - 1).filter(|&k| varsigma[k] == i).collect();
            let mut fr: Vec<f64> = (1..=members.len())
                .map(|j| match rng.as_deref_mut() {
                    Some(r) => r.gen_range(0.02..0.98),
                    None => j as f64 / (members.len() + 1) as f64,
                })
                .collect();
            fr.sort_by(|a, b| a.total_cmp(b));
            let lo = if i == 0 { 0.0 } else { axes[i - 1] };
            for (k, f) in members.iter().zip(fr) {
                x[*k] = a1 / (lo + f * (axes[i] - lo));
            }
        }
        let g = self.gammas(&x);
        for r in 1..=self.n {
            let idx: Vec<usize> = (0..self.delta_gap.len()).filter(|&u| self.delta_gap[u] == r).collect();
            let (lo, hi) = self.gap(&g, r);
            let mut fr: Vec<f64> = (1..=idx.len())
                .map(|j| match rng.as_deref_mut() {
                    Some(r) => r.gen_range(0.02..0.98),
                    None => j as f64 / (idx.len() + 1) as f64,
                })
                .collect();
            // delta_1 is the largest, so fractions go downwards
            fr.sort_by(|a, b| b.total_cmp(a));
            for (u, f) in idx.iter().zip(fr) {
                x[self.n - 1 + u] = lo + f * (hi - lo);
            }
        }
        x
    }

    /// Damped Newton from `x`; returns the final point and its merit.
    fn newton(&self, mut x: Vec<f64>, opts: &SolveOptions) -> (Vec<f64>, f64) {
        if !self.feasible(&x) {
            return (x, f64::INFINITY);
        }
        let mut merit = self.merit(&x);
        for _ in 0..opts.max_iter {
            if merit < opts.tol {
                break;
            }
            let (r, jac) = self.system(&x);
            let rhs: Vec<f64> = r.iter().map(|v| -v).collect();
            let Some(step) = solve_linear(jac, rhs) else {
                break;
            };
            let mut t = 1.0;
            let mut accepted = false;
            for _ in 0..=30 {
                let trial: Vec<f64> = x.iter().zip(&step).map(|(a, s)| a + t * s).collect();
                if self.feasible(&trial) {
                    let mt = self.merit(&trial);
                    if mt < merit {
                        x = trial;
                        merit = mt;
                        accepted = true;
                        break;
                    }
                }
                t *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        (x, merit)
    }
}

const SEPARATION: f64 = 1e-8;

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |acc, r| acc.max(libm::fabs(*r)))
}

/// Gaussian elimination with partial pivoting; `None` when singular.
pub(crate) fn solve_linear<S: Scalar>(mut a: Vec<Vec<S>>, mut b: Vec<S>) -> Option<Vec<S>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| {
            a[i][col]
                .abs()
                .partial_cmp(&a[j][col].abs())
                .unwrap_or(core::cmp::Ordering::Equal)
        })?;
        if a[piv][col].is_zero() || !a[piv][col].to_f64().is_finite() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col].clone() / a[col][col].clone();
            if f.is_zero() {
                continue;
            }
            for k in col..n {
                let v = a[col][k].clone();
                a[row][k] = a[row][k].clone() - f.clone() * v;
            }
            let v = b[col].clone();
            b[row] = b[row].clone() - f * v;
        }
    }
    let mut x = vec![S::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            acc = acc - a[row][k].clone() * x[k].clone();
        }
        x[row] = acc / a[row][row].clone();
    }
    x.iter().all(|v| v.to_f64().is_finite()).then_some(x)
}

/// Every distinct solution reached from the midpoint start and the jittered
/// restarts, best residual first.
pub fn solve_signature_all<S: Scalar>(
    e: &Ellipsoid<S>,
    varsigma: &[usize],
    sig: &Signature,
    opts: &SolveOptions,
) -> Result<Vec<SignatureSolution<S>>> {
    let axes: Vec<f64> = e.axes().iter().map(Scalar::to_f64).collect();
    let layout = Layout::new(&axes, varsigma, sig)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut found: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut best = f64::INFINITY;
    for attempt in 0..=opts.restarts {
        let x0 = if attempt == 0 {
            layout.start(&axes, varsigma, None)
        } else {
            layout.start(&axes, varsigma, Some(&mut rng))
        };
        let (x, merit) = layout.newton(x0, opts);
        best = best.min(merit);
        if merit >= opts.tol {
            continue;
        }
        let dup = found.iter().any(|(y, _)| {
            x.iter()
                .zip(y)
                .all(|(a, b)| libm::fabs(a - b) <= SEPARATION * libm::fabs(*a).max(libm::fabs(*b)))
        });
        if !dup {
            found.push((x, merit));
        }
    }
    if found.is_empty() {
        return Err(Error::NoConvergence {
            restarts: opts.restarts + 1,
            best_residual: best,
        });
    }
    found.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut out = Vec::new();
    let mut last_err = None;
    for (x, merit) in found {
        match finish(e, varsigma, sig, &layout, &x, merit) {
            Ok(s) => out.push(s),
            Err(err) => last_err = Some(err),
        }
    }
    match (out.is_empty(), last_err) {
        (true, Some(err)) => Err(err),
        _ => Ok(out),
    }
}

/// The best solution of [`solve_signature_all`].
pub fn solve_signature<S: Scalar>(
    e: &Ellipsoid<S>,
    varsigma: &[usize],
    sig: &Signature,
    opts: &SolveOptions,
) -> Result<SignatureSolution<S>> {
    Ok(solve_signature_all(e, varsigma, sig, opts)?.swap_remove(0))
}

fn scaled_sup(terms: &[Rational], gammas: &[Rational], sig: &Signature, deltas: &[Rational]) -> f64 {
    let abs_g: Vec<Rational> = gammas.iter().map(Signed::abs).collect();
    let abs_d: Vec<Rational> = deltas.iter().map(Signed::abs).collect();
    let d = decomposition_from_signature(sig);
    terms
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let l = i as u32 + 1;
            let scale = abs_g
                .iter()
                .enumerate()
                .filter(|(j, _)| d.j.contains(&(j + 1)) || d.k.contains(&(j + 1)))
                .fold(Rational::zero(), |acc, (_, g)| acc + g.powi(l))
                + abs_d
                    .iter()
                    .fold(Rational::zero(), |acc, v| acc + v.powi(l))
                    * Rational::from_i64(2);
            if scale.is_zero() {
                r.to_f64().abs()
            } else {
                (r / scale).to_f64().abs()
            }
        })
        .fold(0.0, f64::max)
}

fn round_to_grid(x: &Rational, bits: usize) -> Rational {
    let den = BigInt::one() << bits;
    let scaled = x * Rational::from_integer(den.clone());
    Rational::new(scaled.round().to_integer(), den)
}

/// Exact values for a float solution: a rational snap when one satisfies
/// the system identically, otherwise a few Newton steps in exact arithmetic
/// on a `2^-200` grid.
fn exact_values(
    e_axes: &[Rational],
    layout: &Layout,
    sig: &Signature,
    x: &[f64],
) -> Option<(Vec<Rational>, Vec<Rational>, bool)> {
    let a1 = e_axes[0].clone();
    let to_gamma = |u: f64| rational_from_f64(u).map(|r| r / &a1);
    let vals: Vec<Rational> = x.iter().map(|&u| to_gamma(u)).collect::<Option<_>>()?;
    let axis_gammas: Vec<Rational> = e_axes.iter().map(Scalar::recip).collect();
    let assemble = |v: &[Rational]| {
        let mut g = Vec::with_capacity(layout.fixed.len());
        let mut axis = axis_gammas.iter();
        for f in &layout.fixed {
            g.push(if f.is_some() { axis.next().expect("axis slot").clone() } else { Rational::zero() });
        }
        for (k, &slot) in layout.caustic_slot.iter().enumerate() {
            g[slot] = v[k].clone();
        }
        g
    };
    let split = layout.n - 1;
    let snapped: Vec<Rational> = vals
        .iter()
        .map(|v| {
            let eps = Signed::abs(v) * Rational::from_ratio(1, 10_000_000_000);
            simplest_rational_between(&(v - &eps), &(v + &eps))
        })
        .collect();
    let g = assemble(&snapped);
    if power_sum_residual_raw(&g, sig, &snapped[split..]).iter().all(Zero::is_zero) {
        return Some((g, snapped[split..].to_vec(), true));
    }
    let mut cur = vals;
    let dim = layout.unknowns();
    for _ in 0..5 {
        let g = assemble(&cur);
        let r = power_sum_residual_raw(&g, sig, &cur[split..]);
        if r.iter().all(Zero::is_zero) {
            return Some((g, cur[split..].to_vec(), true));
        }
        let jac: Vec<Vec<Rational>> = (1..layout.m as u32)
            .map(|l| {
                let lq = Rational::from_i64(l as i64);
                (0..dim)
                    .map(|i| {
                        let sign = if i < split {
                            layout.gamma_sign[layout.caustic_slot[i]]
                        } else {
                            layout.delta_sign[i - split]
                        };
                        Rational::from_i64(sign as i64) * lq.clone() * cur[i].powi(l - 1)
                    })
                    .collect()
            })
            .collect();
        let rhs: Vec<Rational> = r.iter().map(|v| -v.clone()).collect();
        let step = solve_linear(jac, rhs)?;
        cur = cur
            .iter()
            .zip(&step)
            .map(|(a, s)| round_to_grid(&(a + s), 200))
            .collect();
    }
    let g = assemble(&cur);
    Some((g, cur[split..].to_vec(), false))
}

fn finish<S: Scalar>(
    e: &Ellipsoid<S>,
    varsigma: &[usize],
    sig: &Signature,
    layout: &Layout,
    x: &[f64],
    merit: f64,
) -> Result<SignatureSolution<S>> {
    let split = layout.n - 1;
    let (gammas, deltas, exact, residual): (Vec<S>, Vec<S>, bool, f64) = if S::EXACT {
        let axes: Vec<Rational> = e
            .axes()
            .iter()
            .map(|a| a.to_rational().expect("rational axes"))
            .collect();
        let (g, d, exact) = exact_values(&axes, layout, sig, x).ok_or_else(|| {
            Error::SpuriousRoot("exact refinement of the float solution failed".into())
        })?;
        let r = power_sum_residual_raw(&g, sig, &d);
        let res = scaled_sup(&r, &g, sig, &d);
        (
            g.iter().map(S::from_rational).collect(),
            d.iter().map(S::from_rational).collect(),
            exact,
            res,
        )
    } else {
        let a1 = e.axes()[0].clone();
        let lift = |u: f64| S::from_rational(&rational_from_f64(u).expect("finite")) / a1.clone();
        let g = layout.gammas(x);
        let mut gs: Vec<S> = e.axes().iter().map(Scalar::recip).collect::<Vec<_>>();
        // axis gammas exact, caustic gammas from the iterate
        let mut full = Vec::with_capacity(g.len());
        let mut axis = gs.drain(..);
        for f in &layout.fixed {
            full.push(if f.is_some() { axis.next().expect("axis slot") } else { S::zero() });
        }
        for (k, &slot) in layout.caustic_slot.iter().enumerate() {
            full[slot] = lift(x[k]);
        }
        (full, x[split..].iter().map(|&u| lift(u)).collect(), false, merit)
    };
    let caustic_gammas: Vec<S> = layout.caustic_slot.iter().map(|&s| gammas[s].clone()).collect();
    let caustics: Vec<S> = caustic_gammas.iter().map(Scalar::recip).collect();
    let cs = existence_check(e, &caustics)?;
    if cs.type_vector() != varsigma {
        return Err(Error::SpuriousRoot("caustic left its prescribed interval".into()));
    }
    let spec = MergedSpectrum::new(e, &cs)?;
    if !deltas_match_signature(&spec, sig, &deltas) {
        return Err(Error::SpuriousRoot("a delta left its prescribed gap".into()));
    }
    let certificate = certificate_from_signature(spec.gammas(), sig, &deltas)?;
    let check = verify_certificate(&spec, &certificate)?;
    if !S::EXACT && !check.holds {
        return Err(Error::SpuriousRoot("certificate identity fails at the solution".into()));
    }
    Ok(SignatureSolution {
        caustics,
        caustic_gammas,
        deltas,
        gammas: spec.gammas().to_vec(),
        residual,
        exact: S::EXACT && check.holds && exact,
        certificate,
        signature: sig.clone(),
        varsigma: varsigma.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{cayley_condition, cayley_diagnostic};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn ellipse_period_three_exact() {
        let e = Ellipsoid::new(vec![q(1, 4), q(1, 1)]).unwrap();
        let sig = Signature::new(3, 2, vec![1, 0]).unwrap();
        let sol = solve_signature(&e, &[0], &sig, &SolveOptions::default()).unwrap();
        assert!(sol.exact);
        assert_eq!(sol.caustics, vec![q(1, 9)]);
        assert_eq!(sol.deltas, vec![q(7, 1)]);
        assert_eq!(sol.residual, 0.0);
        let spec = MergedSpectrum::from_gammas(sol.gammas.clone()).unwrap();
        assert!(cayley_condition(&spec, 3).unwrap().holds);
    }

    #[test]
    fn spatial_minimal_exact() {
        let e = Ellipsoid::new(vec![q(1, 5), q(1, 2), q(1, 1)]).unwrap();
        let sol = solve_signature(&e, &[0, 1], &Signature::zero(3), &SolveOptions::default()).unwrap();
        assert!(sol.exact);
        assert_eq!(sol.caustics, vec![q(1, 6), q(1, 4)]);
        assert!(sol.deltas.is_empty());
    }

    #[test]
    fn float_solution_agrees_with_matrix() {
        let e = Ellipsoid::new(vec![0.3, 1.0]).unwrap();
        let sig = Signature::new(3, 2, vec![1, 0]).unwrap();
        let sol = solve_signature(&e, &[0], &sig, &SolveOptions::default()).unwrap();
        assert!(sol.residual < 1e-12);
        assert!(!sol.exact);
        let spec = MergedSpectrum::from_gammas(sol.gammas.clone()).unwrap();
        assert!(cayley_diagnostic(&spec, 3, 1e-9).unwrap().holds());
        let spec_other = MergedSpectrum::from_gammas(vec![sol.gammas[0] * 1.01, sol.gammas[1], sol.gammas[2]]).unwrap();
        assert!(!cayley_diagnostic(&spec_other, 3, 1e-9).unwrap().holds());
    }

    #[test]
    fn hyperbolic_signature_ellipse() {
        // tau = (0, 1): the double root sits below gamma_3, caustic a hyperbola
        let e = Ellipsoid::new(vec![1.0, 3.0]).unwrap();
        let sig = Signature::new(3, 2, vec![0, 1]).unwrap();
        let sol = solve_signature(&e, &[1], &sig, &SolveOptions::default()).unwrap();
        assert!(sol.caustics[0] > 1.0 && sol.caustics[0] < 3.0);
        assert!(sol.deltas[0] < sol.gammas[2]);
        assert!(sol.residual < 1e-12);
    }

    #[test]
    fn solutions_are_deduplicated() {
        let e = Ellipsoid::new(vec![0.25, 1.0]).unwrap();
        let sig = Signature::new(3, 2, vec![1, 0]).unwrap();
        let all = solve_signature_all(&e, &[0], &sig, &SolveOptions::default()).unwrap();
        assert_eq!(all.len(), 1);
        assert!((all[0].caustics[0] - 1.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn impossible_signature_reports_no_convergence() {
        // tau = (1, 0) needs the caustic below a_1; a hyperbola cannot carry it here
        let e = Ellipsoid::new(vec![1.0, 1.5]).unwrap();
        let sig = Signature::new(3, 2, vec![1, 0]).unwrap();
        let err = solve_signature(&e, &[1], &sig, &SolveOptions::default()).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { .. }), "{err:?}");
    }

    #[test]
    fn linear_solver() {
        let a = vec![vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(3, 1)]];
        let x = solve_linear(a, vec![q(3, 1), q(5, 1)]).unwrap();
        assert_eq!(x, vec![q(4, 5), q(7, 5)]);
        assert!(solve_linear(vec![vec![1.0, 2.0], vec![2.0, 4.0]], vec![1.0, 1.0]).is_none());
    }
}
