//! Trajectories, closure detection and winding numbers.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::billiard::{caustic_drift, line_caustics, reflect_step, BilliardState};
use crate::confocal::{existence_check, to_elliptic, Ellipsoid, MergedSpectrum, Origin};
use crate::error::{Error, Result};

/// Default closure tolerance (sup norm on point and direction).
pub const CLOSURE_TOL: f64 = 1e-8;

/// Chord samples per segment for oscillation counting.
pub const SAMPLES_PER_CHORD: usize = 256;

/// Closure data of a periodic trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct Closure {
    /// Cartesian period.
    pub m0: usize,
    /// Elliptic period.
    pub m: usize,
    /// Sign vector realizing the elliptic closure.
    pub sigma: Vec<i8>,
    /// `m0 / m`, either 1 or 2.
    pub d: usize,
    /// Length of one Cartesian period.
    pub length: f64,
    /// Sup-norm mismatch at the Cartesian closure.
    pub residual: f64,
}

/// Bounce sequence with per-chord caustics and cumulative lengths.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub states: Vec<BilliardState>,
    /// Caustic parameters of chord `k` (from state `k` to state `k + 1`).
    pub caustics: Vec<Vec<f64>>,
    /// `lengths[k]` is the length travelled after `k` bounces.
    pub lengths: Vec<f64>,
    pub closure: Option<Closure>,
}

impl Trajectory {
    /// Relative spread of the per-chord caustic parameters.
    pub fn caustic_drift(&self) -> f64 {
        caustic_drift(&self.caustics)
    }
}

/// Winding numbers over one Cartesian period.
#[derive(Clone, Debug, PartialEq)]
pub struct Winding {
    /// `m_0, ..., m_{n-1}`.
    pub m: Vec<usize>,
    /// Elliptic winding numbers `m_j / d`.
    pub elliptic: Vec<usize>,
    /// Largest excursion of `mu_j` outside its band.
    pub band_violation: f64,
}

impl Winding {
    /// Strictly decreasing winding numbers (recorded, not assumed).
    pub fn strictly_decreasing(&self) -> bool {
        self.m.windows(2).all(|w| w[0] > w[1])
    }
}

fn sup_diff(x: &[f64], y: &[f64], sigma: &[i8]) -> f64 {
    x.iter()
        .zip(y)
        .zip(sigma)
        .map(|((a, b), s)| libm::fabs(a - f64::from(*s) * b))
        .fold(0.0, f64::max)
}

fn sign_vector(n: usize, bits: usize) -> Vec<i8> {
    (0..n).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect()
}

/// Mismatch of `s` against `sigma` applied to `s0`.
fn mismatch(s: &BilliardState, s0: &BilliardState, sigma: &[i8]) -> f64 {
    sup_diff(&s.point, &s0.point, sigma).max(sup_diff(&s.direction, &s0.direction, sigma))
}

/// Run the billiard from `start` until the Cartesian closure or
/// `max_bounces`.
///
/// After every bounce all `2^n` sign vectors are tried; the first bounce
/// that matches some sign vector gives the elliptic period, the first that
/// matches the identity gives the Cartesian period. An open trajectory is
/// returned with `closure = None`.
pub fn simulate(
    e: &Ellipsoid<f64>,
    start: &BilliardState,
    max_bounces: usize,
    tol: f64,
) -> Result<Trajectory> {
    let n = e.dim();
    let mut states = vec![start.clone()];
    let mut caustics = Vec::new();
    let mut lengths = vec![0.0];
    let mut elliptic: Option<(usize, Vec<i8>)> = None;
    let mut closure = None;
    for k in 1..=max_bounces {
        let cur = states.last().expect("nonempty");
        caustics.push(line_caustics(e, &cur.point, &cur.direction)?);
        let (next, len) = reflect_step(e, cur)?;
        lengths.push(lengths[k - 1] + len);
        states.push(next);
        let s = &states[k];
        let mut hit = None;
        for bits in 0..1usize << n {
            let sigma = sign_vector(n, bits);
            let r = mismatch(s, start, &sigma);
            if r < tol {
                hit = Some((sigma, r));
                break;
            }
        }
        let Some((sigma, r)) = hit else { continue };
        if elliptic.is_none() {
            elliptic = Some((k, sigma.clone()));
        }
        if sigma.iter().all(|x| *x == 1) {
            let (m, sig) = elliptic.take().expect("set above");
            if k % m != 0 || !(k / m == 1 || k / m == 2) {
                return Err(Error::WindingInconsistent(format!(
                    "Cartesian period {k} is not 1 or 2 times elliptic period {m}"
                )));
            }
            closure = Some(Closure {
                m0: k,
                m,
                sigma: sig,
                d: k / m,
                length: lengths[k],
                residual: r,
            });
            break;
        }
    }
    Ok(Trajectory { states, caustics, lengths, closure })
}

/// Position of `mu` inside `[lo, hi]`, 0 at the low end and 1 at the high end.
fn band_position(mu: f64, lo: f64, hi: f64) -> f64 {
    (mu - lo) / (hi - lo)
}

/// Count complete oscillations of every elliptic coordinate over the
/// Cartesian period of a closed trajectory.
///
/// Each chord is sampled at `SAMPLES_PER_CHORD` points. Between turning
/// points `mu_j` runs from one end of its band to the other, so a
/// half-oscillation is counted each time the coordinate, having last been
/// near one end, comes near the other. A turning point found in the middle
/// of the band means the sampling missed an end: the density is raised
/// once by a factor 4 before giving up.
pub fn winding_numbers(e: &Ellipsoid<f64>, t: &Trajectory) -> Result<Winding> {
    let closure = t
        .closure
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("trajectory is not closed".into()))?;
    let cs = existence_check(e, &t.caustics[0])?;
    let spec = MergedSpectrum::new(e, &cs)?;
    let mut last_err = None;
    for density in [SAMPLES_PER_CHORD, 4 * SAMPLES_PER_CHORD] {
        match count_oscillations(e, t, closure.m0, &spec, density) {
            Ok((m, violation)) => return finish(closure, &spec, m, violation),
            Err(err) => last_err = Some(err),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

fn count_oscillations(
    e: &Ellipsoid<f64>,
    t: &Trajectory,
    m0: usize,
    spec: &MergedSpectrum<f64>,
    density: usize,
) -> Result<(Vec<usize>, f64)> {
    let n = e.dim();
    let bands: Vec<(f64, f64)> = (0..n).map(|j| (spec.c_ext(2 * j), spec.c_ext(2 * j + 1))).collect();
    // state per coordinate: last end touched (0 low, 1 high), half counts
    let mut last: Vec<Option<u8>> = vec![None; n];
    let mut first: Vec<Option<u8>> = vec![None; n];
    let mut halves = vec![0usize; n];
    let mut prev: Vec<Option<(f64, f64)>> = vec![None; n];
    let mut violation: f64 = 0.0;
    const NEAR: f64 = 0.1;
    for k in 0..m0 {
        let s = &t.states[k];
        let len = t.lengths[k + 1] - t.lengths[k];
        for i in 0..density {
            let h = len * i as f64 / density as f64;
            let x: Vec<f64> = s.point.iter().zip(&s.direction).map(|(p, v)| p + h * v).collect();
            let mu = to_elliptic(e, &x).mu;
            for j in 0..n {
                let (lo, hi) = bands[j];
                let scale = hi.max(1.0);
                violation = violation.max((lo - mu[j]) / scale).max((mu[j] - hi) / scale);
                let pos = band_position(mu[j], lo, hi);
                let end = if pos < NEAR {
                    Some(0)
                } else if pos > 1.0 - NEAR {
                    Some(1)
                } else {
                    None
                };
                if let Some(end) = end {
                    if first[j].is_none() {
                        first[j] = Some(end);
                    }
                    if last[j].is_some_and(|l| l != end) {
                        halves[j] += 1;
                    }
                    last[j] = Some(end);
                }
                // a turning point in the middle of the band is unresolved
                if let Some((p2, p1)) = prev[j] {
                    let turning = (p1 - p2) * (pos - p1) < 0.0;
                    if turning && p1 > 2.0 * NEAR && p1 < 1.0 - 2.0 * NEAR {
                        return Err(Error::OscillationCountUnresolved(j));
                    }
                }
                prev[j] = Some((prev[j].map_or(pos, |p| p.1), pos));
            }
        }
    }
    // close the loop back to the starting end
    for j in 0..n {
        if let (Some(l), Some(f)) = (last[j], first[j]) {
            if l != f {
                halves[j] += 1;
            }
        }
        if !halves[j].is_multiple_of(2) {
            return Err(Error::OscillationCountUnresolved(j));
        }
    }
    Ok((halves.into_iter().map(|h| h / 2).collect(), violation))
}

fn finish(
    closure: &Closure,
    spec: &MergedSpectrum<f64>,
    m: Vec<usize>,
    violation: f64,
) -> Result<Winding> {
    if m[0] != closure.m0 {
        return Err(Error::WindingInconsistent(format!(
            "m_0 = {} but the Cartesian period is {}",
            m[0], closure.m0
        )));
    }
    let origins = spec.origins();
    for (j, mj) in m.iter().enumerate() {
        // band [c_{2j}, c_{2j+1}]; index 0 is the boundary itself
        let axis_end = [2 * j, 2 * j + 1]
            .iter()
            .any(|&i| i > 0 && matches!(origins[i - 1], Origin::Axis(_)));
        if axis_end && mj % 2 != 0 {
            return Err(Error::WindingInconsistent(format!(
                "m_{j} = {mj} is odd on a band bounded by an axis"
            )));
        }
    }
    if m.iter().any(|x| x % closure.d != 0) {
        return Err(Error::WindingInconsistent(format!(
            "winding numbers {m:?} not divisible by {}",
            closure.d
        )));
    }
    let elliptic = m.iter().map(|x| x / closure.d).collect();
    Ok(Winding { m, elliptic, band_violation: violation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::billiard::launch_tangent;

    #[test]
    fn four_cycle_closure() {
        let e = Ellipsoid::new(vec![1.0, 2.0]).unwrap();
        let s0 = BilliardState::new(vec![0.0, libm::sqrt(2.0)], vec![1.0, -libm::sqrt(2.0)]).unwrap();
        let t = simulate(&e, &s0, 100, CLOSURE_TOL).unwrap();
        let c = t.closure.clone().unwrap();
        assert_eq!((c.m0, c.m, c.d), (4, 2, 2));
        assert_eq!(c.sigma, vec![-1, -1]);
        assert!((c.length - 4.0 * libm::sqrt(3.0)).abs() < 1e-12);
        let w = winding_numbers(&e, &t).unwrap();
        assert_eq!(w.m, vec![4, 2]);
        assert_eq!(w.elliptic, vec![2, 1]);
        assert!(w.band_violation < 1e-8);
    }

    #[test]
    fn planar_period_three() {
        let (a, b) = (3.0, 1.0);
        let row = crate::closedform::planar_table(&a, &b, 3, crate::closedform::Conic::E, &[0, 1]).unwrap();
        let e = Ellipsoid::new(vec![b, a]).unwrap();
        let s = launch_tangent(&e, &[row.lambda], 1).unwrap();
        let t = simulate(&e, &s, 50, CLOSURE_TOL).unwrap();
        let c = t.closure.clone().unwrap();
        assert_eq!((c.m0, c.m), (3, 3));
        assert!(c.sigma.iter().all(|x| *x == 1));
    }

    #[test]
    fn spatial_h1h1_period_three() {
        let e = Ellipsoid::new(vec![0.25, 1.0, 4.0]).unwrap();
        let cf = crate::closedform::spatial_table(&4.0, &1.0, &0.25, &[1, 1]).unwrap();
        let s = launch_tangent(&e, cf.caustics.params(), 2).unwrap();
        let t = simulate(&e, &s, 50, CLOSURE_TOL).unwrap();
        let c = t.closure.clone().unwrap();
        assert_eq!((c.m0, c.m), (6, 3));
        assert_eq!(winding_numbers(&e, &t).unwrap().m, vec![6, 4, 2]);
        assert!(t.caustic_drift() < 1e-8);
    }

    #[test]
    fn c43_winding() {
        let cf = crate::closedform::solve_c43(&3.0, &2.0, &1.0).unwrap();
        let e = Ellipsoid::new(vec![1.0, 2.0, 3.0]).unwrap();
        let s = launch_tangent(&e, cf.caustics.params(), 4).unwrap();
        let t = simulate(&e, &s, 50, CLOSURE_TOL).unwrap();
        let c = t.closure.clone().unwrap();
        assert_eq!((c.m0, c.m), (4, 4));
        assert_eq!(winding_numbers(&e, &t).unwrap().m, vec![4, 3, 2]);
    }

    #[test]
    fn open_trajectory() {
        let e = Ellipsoid::new(vec![1.0, 2.0]).unwrap();
        let s = launch_tangent(&e, &[0.5123], 0).unwrap();
        let t = simulate(&e, &s, 200, CLOSURE_TOL).unwrap();
        assert!(t.closure.is_none());
        assert_eq!(t.states.len(), 201);
        assert!(t.caustic_drift() < 1e-8);
        assert!(winding_numbers(&e, &t).is_err());
    }
}
