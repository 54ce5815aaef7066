use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Poly, Rational};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Irrational roots are refined until the enclosure is narrower than `2^-REFINE_BITS`.
pub const REFINE_BITS: u32 = 60;

/// Closed interval `[lower, upper]` holding exactly one real root.
/// `lower == upper` marks a root found exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct RootEnclosure {
    pub lower: Rational,
    pub upper: Rational,
}

impl RootEnclosure {
    pub fn exact(r: Rational) -> Self {
        RootEnclosure {
            lower: r.clone(),
            upper: r,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lower + &self.upper) / Rational::from_i64(2)
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }
}

/// Yun's algorithm: `p = c * prod f_k^k` with every `f_k` monic and square-free.
/// Only the factors of positive degree are returned, as `(f_k, k)`.
pub fn square_free_decomposition(p: &Poly<Rational>) -> Vec<(Poly<Rational>, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut k = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.monic(), k));
        }
        k += 1;
    }
    out
}

fn sturm_sequence(p: &Poly<Rational>) -> Vec<Poly<Rational>> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].degree().unwrap_or(0) == 0 {
            break;
        }
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_variations(seq: &[Poly<Rational>], x: &Rational) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for q in seq {
        let v = q.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// Smallest power of two bounding the moduli of all roots (Cauchy).
fn cauchy_bound(p: &Poly<Rational>) -> Rational {
    let lead = Signed::abs(&p.lead());
    let max = p
        .coeffs()
        .iter()
        .map(|c| Signed::abs(c) / &lead)
        .fold(Rational::zero(), |m, v| if v > m { v } else { m });
    let bound = max + Rational::one();
    let mut pow = Rational::one();
    while pow < bound {
        pow *= Rational::from_i64(2);
    }
    pow
}

/// Lead coefficient of the primitive integer multiple of `p`. Any rational
/// root has a denominator dividing it.
fn integer_lead(p: &Poly<Rational>) -> BigInt {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    (ints.last().expect("nonzero polynomial") / g).abs()
}

/// Isolate and refine the roots of a square-free polynomial.
fn isolate_square_free(p: &Poly<Rational>) -> Vec<RootEnclosure> {
    let seq = sturm_sequence(p);
    let bound = cauchy_bound(p);
    let lead = Rational::from_integer(integer_lead(p));
    let target = Rational::new(BigInt::one(), BigInt::one() << REFINE_BITS);
    let two = Rational::from_i64(2);

    let mut out = Vec::new();
    // work list of half-open intervals (lo, hi] with their root counts
    let lo0 = -bound.clone();
    let total = sign_variations(&seq, &lo0) - sign_variations(&seq, &bound);
    let mut stack = vec![(lo0, bound, total)];
    while let Some((lo, hi, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push(refine(p, lo, hi, &lead, &target));
            continue;
        }
        let mid = (&lo + &hi) / &two;
        let left = sign_variations(&seq, &lo) - sign_variations(&seq, &mid);
        stack.push((mid.clone(), hi, count - left));
        stack.push((lo, mid, left));
    }
    out.sort_by(|a, b| a.lower.cmp(&b.lower));
    out
}

/// Shrink `(lo, hi]`, known to hold one simple root, to the target width,
/// recognizing rational roots on the way.
fn refine(
    p: &Poly<Rational>,
    mut lo: Rational,
    mut hi: Rational,
    lead: &Rational,
    target: &Rational,
) -> RootEnclosure {
    if p.eval(&hi).is_zero() {
        return RootEnclosure::exact(hi);
    }
    let two = Rational::from_i64(2);
    let lead_width = lead.recip();
    let mut tried_candidate = false;
    // the root is simple, so p has the sign opposite to p(hi) on (lo, root)
    let s_lo = !p.eval(&hi).is_positive();
    loop {
        let width = &hi - &lo;
        if !tried_candidate && width < lead_width {
            // a rational root k/L is the only multiple of 1/L this close to mid
            tried_candidate = true;
            let mid = (&lo + &hi) / &two;
            let cand = (mid * lead).round() / lead;
            if cand > lo && cand <= hi && p.eval(&cand).is_zero() {
                return RootEnclosure::exact(cand);
            }
        }
        if tried_candidate && width <= *target {
            return RootEnclosure {
                lower: lo,
                upper: hi,
            };
        }
        let mid = (&lo + &hi) / &two;
        let v = p.eval(&mid);
        if v.is_zero() {
            return RootEnclosure::exact(mid);
        }
        if v.is_positive() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// All real roots of `p` with multiplicities, in increasing order, optionally
/// restricted to the open interval `(lo, hi)`.
pub fn real_roots_exact(
    p: &Poly<Rational>,
    interval: Option<(Rational, Rational)>,
) -> Result<Vec<(RootEnclosure, usize)>> {
    if p.is_zero() {
        return Err(Error::UndefinedRootSet);
    }
    let mut roots: Vec<(RootEnclosure, usize, Poly<Rational>)> = Vec::new();
    for (f, k) in square_free_decomposition(p) {
        for r in isolate_square_free(&f) {
            roots.push((r, k, f.clone()));
        }
    }
    if let Some((a, b)) = interval {
        let mut kept = Vec::new();
        for (mut r, k, f) in roots {
            // an irrational root never equals a rational endpoint, so this ends
            loop {
                if r.upper <= a || r.lower >= b {
                    break;
                }
                if r.lower > a && r.upper < b {
                    kept.push((r, k, f));
                    break;
                }
                let mid = r.midpoint();
                let s_lo = !f.eval(&r.upper).is_positive();
                let v = f.eval(&mid);
                if v.is_zero() {
                    r = RootEnclosure::exact(mid);
                } else if v.is_positive() == s_lo {
                    r.lower = mid;
                } else {
                    r.upper = mid;
                }
            }
        }
        roots = kept;
    }
    roots.sort_by_key(|x| x.0.midpoint());
    Ok(roots.into_iter().map(|(r, k, _)| (r, k)).collect())
}

/// Float roots by recursive critical-point bracketing.
///
/// The roots of `p'` split the line into monotone pieces; each sign change
/// is bisected to full precision. A critical point where `|p|` is below
/// `tol` times the evaluation scale is reported as a root of multiplicity
/// one more than its multiplicity in `p'`.
pub fn real_roots_f64(
    p: &Poly<f64>,
    interval: Option<(f64, f64)>,
    tol: f64,
) -> Result<Vec<(f64, usize)>> {
    if p.is_zero() {
        return Err(Error::UndefinedRootSet);
    }
    let mut roots = roots_f64_all(p, tol);
    if let Some((a, b)) = interval {
        roots.retain(|&(r, _)| r > a && r < b);
    }
    Ok(roots)
}

fn eval_scale(p: &Poly<f64>, x: f64) -> f64 {
    let ax = libm::fabs(x);
    p.coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * ax + libm::fabs(*c))
}

fn roots_f64_all(p: &Poly<f64>, tol: f64) -> Vec<(f64, usize)> {
    let deg = match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    if deg == 1 {
        return vec![(-p.coeff(0) / p.coeff(1), 1)];
    }
    let lead = libm::fabs(p.lead());
    let bound = 1.0
        + p.coeffs()
            .iter()
            .map(|c| libm::fabs(*c) / lead)
            .fold(0.0, f64::max);

    let crit = roots_f64_all(&p.derivative(), tol);
    let mut out = Vec::new();
    let mut nodes: Vec<(f64, bool)> = vec![(-bound, false)];
    for &(c, k) in &crit {
        let on_root = libm::fabs(p.eval(&c)) <= tol * eval_scale(p, c);
        if on_root {
            out.push((c, k + 1));
        }
        nodes.push((c, on_root));
    }
    nodes.push((bound, false));

    for w in nodes.windows(2) {
        let ((lo, lo_root), (hi, hi_root)) = (w[0], w[1]);
        if lo_root || hi_root || hi <= lo {
            continue;
        }
        let (flo, fhi) = (p.eval(&lo), p.eval(&hi));
        if flo == 0.0 {
            out.push((lo, 1));
            continue;
        }
        if (flo < 0.0) == (fhi < 0.0) || fhi == 0.0 {
            continue;
        }
        out.push((bisect(p, lo, hi, flo < 0.0), 1));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out.dedup_by(|b, a| b.0 == a.0);
    out
}

fn bisect(p: &Poly<f64>, mut lo: f64, mut hi: f64, neg_lo: bool) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = p.eval(&mid);
        if v == 0.0 {
            return mid;
        }
        if (v < 0.0) == neg_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
