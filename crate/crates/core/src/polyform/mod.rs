//! Polynomial certificates for the periodicity condition.
//!
//! With `R(x) = x prod (x - gamma_i)`, the condition `C(m, n)` holds iff
//! there are monic `S` (degree `m - n`) and `P` (degree `m`) with
//! `P(0) != 0` and `S^2 R = P (P - P(0))`. When the roots
//! `delta_1 > ... > delta_{m-n}` of `S` are real, the way they spread over
//! the gaps `(gamma_{2r}, gamma_{2r-1})` is the signature `tau`, and the
//! condition reduces to `m - 1` power-sum equations.

mod solve;
pub(crate) use solve::solve_linear;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

pub use solve::{solve_signature, solve_signature_all, SignatureSolution, SolveOptions};

use crate::cayley::{taylor_coeffs, CayleyMatrix};
use crate::confocal::MergedSpectrum;
use crate::error::{Error, Result};
use crate::ratpoly::{null_vector_exact, svd_jacobi, Poly, Rational, DEFAULT_TOL};
use crate::scalar::Scalar;

/// A pair `(S, P)` in x-form.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<S> {
    m: usize,
    n: usize,
    s: Poly<S>,
    p: Poly<S>,
}

/// The same certificate in t-form: `s^2 r = (alpha t^m + q) q`, `s(0) = q(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TForm<S> {
    pub s: Poly<S>,
    pub q: Poly<S>,
    pub alpha: S,
}

impl<S: Scalar> Certificate<S> {
    /// `S` must be monic of degree `m - n`, `P` monic of degree `m`.
    pub fn new(n: usize, s: Poly<S>, p: Poly<S>) -> Result<Self> {
        let m = p.degree().unwrap_or(0);
        let ds = s.degree();
        if !p.is_monic() || !s.is_monic() || ds.is_none() || m < n || ds != Some(m - n) {
            return Err(Error::InvalidInput(format!(
                "certificate needs monic S of degree m - n and P of degree m (n = {n})"
            )));
        }
        Ok(Certificate { m, n, s, p })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> &Poly<S> {
        &self.s
    }

    pub fn p(&self) -> &Poly<S> {
        &self.p
    }

    /// `alpha = P(0)`, the t-form leading datum.
    pub fn alpha(&self) -> S {
        self.p.coeff(0)
    }

    pub fn to_t_form(&self) -> TForm<S> {
        let alpha = self.alpha();
        let shifted = &self.p - &Poly::constant(alpha.clone());
        TForm {
            s: self.s.reversed(self.m - self.n),
            q: shifted.reversed(self.m),
            alpha,
        }
    }

    pub fn from_t_form(m: usize, n: usize, t: &TForm<S>) -> Result<Self> {
        if m < n {
            return Err(Error::EllipticPeriodBelowDimension { m, n });
        }
        let s = t.s.reversed(m - n);
        let p = &t.q.reversed(m) + &Poly::constant(t.alpha.clone());
        Certificate::new(n, s, p)
    }

    pub fn to_f64(&self) -> Certificate<f64> {
        Certificate {
            m: self.m,
            n: self.n,
            s: self.s.to_f64(),
            p: self.p.to_f64(),
        }
    }
}

/// `R(x) = x prod (x - gamma_i)`.
pub fn r_poly<S: Scalar>(gammas: &[S]) -> Poly<S> {
    &Poly::x() * &Poly::from_roots(gammas)
}

/// Outcome of [`verify_certificate`].
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateCheck {
    pub holds: bool,
    /// Largest coefficient of `S^2 R - P (P - P(0))`, relative to the
    /// largest coefficient of `S^2 R` (exactly 0 when the identity holds on rationals).
    pub residual: f64,
}

/// Check `S^2 R = P (P - P(0))`, exactly on rationals and to `DEFAULT_TOL`
/// (relative) on floats.
pub fn verify_certificate<S: Scalar>(
    spec: &MergedSpectrum<S>,
    cert: &Certificate<S>,
) -> Result<CertificateCheck> {
    if cert.alpha().is_zero() {
        return Err(Error::DegenerateCertificate);
    }
    if cert.n != spec.n() {
        return Err(Error::InvalidInput(format!(
            "certificate for n = {} applied to a spectrum with n = {}",
            cert.n,
            spec.n()
        )));
    }
    let lhs = &(&cert.s * &cert.s) * &r_poly(spec.gammas());
    let shifted = &cert.p - &Poly::constant(cert.alpha());
    let rhs = &cert.p * &shifted;
    let diff = &lhs - &rhs;
    let scale = lhs.max_abs_coeff().max(f64::MIN_POSITIVE);
    let residual = diff.max_abs_coeff() / scale;
    let holds = if S::EXACT {
        diff.is_zero()
    } else {
        residual < DEFAULT_TOL
    };
    Ok(CertificateCheck { holds, residual })
}

/// A signature `tau in T(m, n)`: `n` nonnegative counts summing to `m - n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    tau: Vec<usize>,
}

impl Signature {
    pub fn new(m: usize, n: usize, tau: Vec<usize>) -> Result<Self> {
        if tau.len() != n || m < n || tau.iter().sum::<usize>() != m - n {
            return Err(Error::InvalidInput(format!(
                "signature {tau:?} is not in T({m}, {n})"
            )));
        }
        Ok(Signature { tau })
    }

    /// The trivial signature of the minimal case.
    pub fn zero(n: usize) -> Self {
        Signature { tau: vec![0; n] }
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    pub fn n(&self) -> usize {
        self.tau.len()
    }

    pub fn m(&self) -> usize {
        self.tau.iter().sum::<usize>() + self.n()
    }

    /// Every element of `T(m, n)`, in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<Signature> {
        fn rec(left: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Signature>) {
            if slots == 1 {
                cur.push(left);
                out.push(Signature { tau: cur.clone() });
                cur.pop();
                return;
            }
            for v in 0..=left {
                cur.push(v);
                rec(left - v, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 && m >= n {
            rec(m - n, n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Parse `"1,0"`-style text.
    pub fn parse(m: usize, n: usize, text: &str) -> Result<Self> {
        let tau = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad signature {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Signature::new(m, n, tau)
    }
}

/// `{1..2n-1} = J u K` and `{1..m-n} = V u W` (1-based, sorted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub j: Vec<usize>,
    pub k: Vec<usize>,
    pub v: Vec<usize>,
    pub w: Vec<usize>,
}

/// Item of the merged root sequence: a gamma index or a doubled delta index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Gamma(usize),
    Delta(usize),
}

/// Positions `0, 1` belong to `P` (alpha roots), `2, 3` to `P - P(0)` (beta
/// roots), and so on: this is the ascending interlacing pattern
/// for both parities of `m`.
fn is_alpha_position(k: usize) -> bool {
    (k / 2).is_multiple_of(2)
}

fn decomposition_from_slots(slots: &[Slot]) -> Decomposition {
    let mut d = Decomposition {
        j: Vec::new(),
        k: Vec::new(),
        v: Vec::new(),
        w: Vec::new(),
    };
    let mut pos = 0;
    for slot in slots {
        let alpha = is_alpha_position(pos);
        match *slot {
            Slot::Gamma(i) => {
                if alpha { d.j.push(i) } else { d.k.push(i) }
                pos += 1;
            }
            Slot::Delta(u) => {
                // a doubled root always starts on an even position, so both
                // copies fall in the same pair of the pattern
                debug_assert!(pos % 2 == 0);
                if alpha { d.v.push(u) } else { d.w.push(u) }
                pos += 2;
            }
        }
    }
    for s in [&mut d.j, &mut d.k, &mut d.v, &mut d.w] {
        s.sort_unstable();
    }
    d
}

/// `J_tau, K_tau, V_tau, W_tau` from the signature alone: the doubled
/// `delta`s are placed symbolically in their gaps and the merged sequence is
/// labelled with the interlacing pattern.
pub fn decomposition_from_signature(sig: &Signature) -> Decomposition {
    let n = sig.n();
    let mut slots = Vec::with_capacity(2 * n - 1 + sig.m() - n);
    // deltas are indexed downwards from the top, so the lowest one is m - n
    let mut next_delta = sig.m() - n;
    for r in (1..=n).rev() {
        if r < n {
            slots.push(Slot::Gamma(2 * r));
        }
        for _ in 0..sig.tau()[r - 1] {
            slots.push(Slot::Delta(next_delta));
            next_delta -= 1;
        }
        slots.push(Slot::Gamma(2 * r - 1));
    }
    decomposition_from_slots(&slots)
}

/// The same decomposition read off numeric values: `gammas` decreasing,
/// `deltas` decreasing (`delta_1` first), all distinct and positive.
pub fn decomposition_from_values<S: Scalar>(gammas: &[S], deltas: &[S]) -> Result<Decomposition> {
    let mut items: Vec<(S, Slot)> = gammas
        .iter()
        .enumerate()
        .map(|(i, g)| (g.clone(), Slot::Gamma(i + 1)))
        .chain(
            deltas
                .iter()
                .enumerate()
                .map(|(u, d)| (d.clone(), Slot::Delta(u + 1))),
        )
        .collect();
    items.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("comparable values"));
    if items.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::InvalidInput("values must be distinct".into()));
    }
    // every delta must sit at an even position, i.e. inside a gap (gamma_{2r}, gamma_{2r-1})
    let mut pos = 0;
    for (_, s) in &items {
        match s {
            Slot::Gamma(_) => pos += 1,
            Slot::Delta(_) if pos % 2 == 1 => {
                return Err(Error::InvalidInput("a delta lies outside the gaps of R < 0".into()))
            }
            Slot::Delta(_) => pos += 2,
        }
    }
    let slots: Vec<Slot> = items.into_iter().map(|(_, s)| s).collect();
    Ok(decomposition_from_slots(&slots))
}

/// `true` iff `alphas` (the `m` positive roots of `P`) and `betas` (the
/// `m - 1` positive roots of `P - P(0)`) interlace the way the roots of a
/// certificate must: ascending pairs `alpha alpha | beta beta | alpha alpha ...`,
/// with `<=` inside a pair and `<` between pairs.
pub fn ordering_partition<S: Scalar>(alphas: &[S], betas: &[S]) -> bool {
    let m = alphas.len();
    if m == 0 || betas.len() + 1 != m {
        return false;
    }
    let sorted = |v: &[S]| {
        let mut v = v.to_vec();
        v.sort_by(|a, b| a.partial_cmp(b).expect("comparable values"));
        v
    };
    let (a, b) = (sorted(alphas), sorted(betas));
    let (mut ia, mut ib) = (0, 0);
    let mut seq = Vec::with_capacity(2 * m - 1);
    for k in 0..2 * m - 1 {
        if is_alpha_position(k) {
            seq.push(a[ia].clone());
            ia += 1;
        } else {
            seq.push(b[ib].clone());
            ib += 1;
        }
    }
    if seq[0] <= S::zero() {
        return false;
    }
    seq.windows(2).enumerate().all(|(k, w)| {
        if k % 2 == 0 {
            w[0] <= w[1]
        } else {
            w[0] < w[1]
        }
    })
}

/// Gap index `r` with `x in (gamma_{2r}, gamma_{2r-1})`, if any.
pub fn gap_of<S: Scalar>(spec: &MergedSpectrum<S>, x: &S) -> Option<usize> {
    (1..=spec.n()).find(|&r| *x > spec.gamma(2 * r) && *x < spec.gamma(2 * r - 1))
}

/// `tau` is respected by `deltas` (decreasing, `delta_1` first).
pub fn deltas_match_signature<S: Scalar>(
    spec: &MergedSpectrum<S>,
    sig: &Signature,
    deltas: &[S],
) -> bool {
    if deltas.len() != sig.m() - sig.n() || deltas.windows(2).any(|w| w[0] <= w[1]) {
        return false;
    }
    let mut counts = vec![0; spec.n()];
    for d in deltas {
        match gap_of(spec, d) {
            Some(r) => counts[r - 1] += 1,
            None => return false,
        }
    }
    counts == sig.tau()
}

/// Power sums `sum_J gamma^l + 2 sum_V delta^l - sum_K gamma^l - 2 sum_W delta^l`
/// for `l = 1 .. m-1`. `gammas` are `gamma_1 .. gamma_{2n-1}`, `deltas` are
/// `delta_1 .. delta_{m-n}`.
pub fn power_sum_residual_raw<S: Scalar>(
    gammas: &[S],
    sig: &Signature,
    deltas: &[S],
) -> Vec<S> {
    let d = decomposition_from_signature(sig);
    let two = S::from_i64(2);
    (1..sig.m() as u32)
        .map(|l| {
            let sum = |idx: &[usize], vals: &[S]| {
                idx.iter()
                    .fold(S::zero(), |acc, &i| acc + vals[i - 1].powi(l))
            };
            sum(&d.j, gammas) + two.clone() * sum(&d.v, deltas)
                - sum(&d.k, gammas)
                - two.clone() * sum(&d.w, deltas)
        })
        .collect()
}

pub fn power_sum_residual<S: Scalar>(
    spec: &MergedSpectrum<S>,
    sig: &Signature,
    deltas: &[S],
) -> Result<Vec<S>> {
    if sig.n() != spec.n() || deltas.len() != sig.m() - sig.n() {
        return Err(Error::InvalidInput(format!(
            "signature {:?} and {} deltas do not fit a spectrum with n = {}",
            sig.tau(),
            deltas.len(),
            spec.n()
        )));
    }
    Ok(power_sum_residual_raw(spec.gammas(), sig, deltas))
}

/// `S = prod (x - delta_u)`, `P = prod_J (x - gamma_j) prod_V (x - delta_v)^2`.
pub fn certificate_from_signature<S: Scalar>(
    gammas: &[S],
    sig: &Signature,
    deltas: &[S],
) -> Result<Certificate<S>> {
    let d = decomposition_from_signature(sig);
    let s = Poly::from_roots(deltas);
    let pj = Poly::from_roots(d.j.iter().map(|&j| &gammas[j - 1]));
    let pv = Poly::from_roots(d.v.iter().map(|&v| &deltas[v - 1]));
    let p = &pj * &(&pv * &pv);
    Certificate::new(sig.n(), s, p)
}

/// Certificate from a kernel vector `s_0 .. s_{m-n}` of the matrix:
/// `g = s f`, `q = g_0 .. g_{m-1}`, `alpha = 2 g_m`, normalized so that
/// `s(0) = q(0) = 1`.
pub fn certificate_from_null_vector<S: Scalar>(
    gammas: &[S],
    m: usize,
    null: &[S],
) -> Result<Certificate<S>> {
    let n = gammas.len().div_ceil(2);
    if null.len() != m + 1 - n || null[0].is_zero() {
        return Err(Error::DegenerateCertificate);
    }
    let s0 = null[0].clone();
    let s = Poly::new(null.iter().map(|v| v.clone() / s0.clone()).collect());
    let f = Poly::new(taylor_coeffs(gammas, m).coeffs().to_vec());
    let g = &s * &f;
    let q = Poly::new((0..m).map(|l| g.coeff(l)).collect());
    let alpha = S::from_i64(2) * g.coeff(m);
    if alpha.is_zero() {
        return Err(Error::DegenerateCertificate);
    }
    Certificate::from_t_form(m, n, &TForm { s, q, alpha })
}

/// Exact certificate from the kernel of the matrix, when `C(m, n)` holds.
pub fn certificate_from_kernel(spec: &MergedSpectrum<Rational>, m: usize) -> Result<Option<Certificate<Rational>>> {
    let n = spec.n();
    if m < n {
        return Err(Error::EllipticPeriodBelowDimension { m, n });
    }
    let series = taylor_coeffs(spec.gammas(), 2 * m - 1);
    let mat = CayleyMatrix::new(&series, m, n)?;
    let kernel = if mat.rows().is_empty() {
        vec![vec![Rational::from_i64(1)]]
    } else {
        null_vector_exact(mat.rows())
    };
    let Some(v) = kernel.into_iter().find(|v| !v[0].is_zero()) else {
        return Ok(None);
    };
    certificate_from_null_vector(spec.gammas(), m, &v).map(Some)
}

/// Float certificate from the right singular vector of the smallest
/// singular value (gammas rescaled by `1 / gamma_1` for conditioning and
/// scaled back afterwards).
pub fn certificate_from_kernel_f64(spec: &MergedSpectrum<f64>, m: usize) -> Result<Certificate<f64>> {
    let n = spec.n();
    if m < n {
        return Err(Error::EllipticPeriodBelowDimension { m, n });
    }
    let g1 = spec.gammas()[0];
    let scaled: Vec<f64> = spec.gammas().iter().map(|g| g / g1).collect();
    let series = taylor_coeffs(&scaled, 2 * m - 1);
    let mat = CayleyMatrix::new(&series, m, n)?;
    let null = if mat.rows().is_empty() {
        vec![1.0]
    } else {
        svd_jacobi(mat.rows()).v.pop().expect("nonempty matrix")
    };
    let cert = certificate_from_null_vector(&scaled, m, &null)?;
    // S(x) and P(x) for gamma scaled by 1/g1: substitute x -> x / g1
    let rescale = |p: &Poly<f64>, deg: usize| {
        Poly::new(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| c * libm::pow(g1, (deg - k) as f64))
                .collect(),
        )
    };
    Certificate::new(n, rescale(cert.s(), m - n), rescale(cert.p(), m))
}

/// Facts about a verified certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct RootReport<S> {
    /// Real roots of `S`, decreasing (`delta_1` first).
    pub s_real_roots: Vec<S>,
    /// Gap index of each real root of `S`.
    pub gaps: Vec<usize>,
    /// The signature, when every root of `S` is real.
    pub signature: Option<Signature>,
    /// Non-real roots of `S` (only possible for `m > n + 3`).
    pub s_nonreal_roots: usize,
    pub p_real_roots: usize,
    pub p_shift_real_roots: usize,
}

/// Check the structural properties every certificate must have: `S`
/// square-free, its real roots inside `{R < 0}`, equal real-root counts for
/// `P` and `P - P(0)`, and all roots of `S` real when `m <= n + 3`.
/// Non-real roots for `m > n + 3` are reported, not rejected.
pub fn certificate_root_structure<S: Scalar>(
    cert: &Certificate<S>,
    spec: &MergedSpectrum<S>,
) -> Result<RootReport<S>> {
    let (m, n) = (cert.m, cert.n);
    let s_roots = if cert.s.degree() == Some(0) {
        Vec::new()
    } else {
        S::real_roots(&cert.s)?
    };
    if s_roots.iter().any(|(_, k)| *k > 1) {
        return Err(Error::RootStructure("S has a multiple root".into()));
    }
    let mut gaps_found = Vec::new();
    let mut real = Vec::new();
    let mut counts = vec![0usize; n];
    for r in 1..=n {
        let lo = spec.gamma(2 * r);
        let hi = spec.gamma(2 * r - 1);
        let inside = if cert.s.degree() == Some(0) {
            Vec::new()
        } else {
            S::real_roots_in(&cert.s, &lo, &hi)?
        };
        counts[r - 1] = inside.len();
        for (x, _) in inside {
            real.push((x, r));
        }
    }
    if real.len() != s_roots.len() {
        return Err(Error::RootStructure(
            "a real root of S lies outside {R < 0}".into(),
        ));
    }
    real.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("comparable roots"));
    for (_, r) in &real {
        gaps_found.push(*r);
    }
    let nonreal = (m - n) - s_roots.len();
    if nonreal > 0 && m <= n + 3 {
        return Err(Error::RootStructure(format!(
            "S has {nonreal} non-real roots although m <= n + 3"
        )));
    }
    let count = |p: &Poly<S>| -> Result<usize> {
        Ok(S::real_roots(p)?.iter().map(|(_, k)| *k).sum())
    };
    let p_real = count(&cert.p)?;
    let p_shift = count(&(&cert.p - &Poly::constant(cert.alpha())))?;
    if p_real != p_shift {
        return Err(Error::RootStructure(format!(
            "P has {p_real} real roots but P - P(0) has {p_shift}"
        )));
    }
    let signature = (nonreal == 0).then_some(Signature { tau: counts });
    Ok(RootReport {
        s_real_roots: real.into_iter().map(|(x, _)| x).collect(),
        gaps: gaps_found,
        signature,
        s_nonreal_roots: nonreal,
        p_real_roots: p_real,
        p_shift_real_roots: p_shift,
    })
}
