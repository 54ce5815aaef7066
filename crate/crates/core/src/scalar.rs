//! Number types shared by the exact and the floating-point paths.
//!
//! Every algebraic routine in the crate is written once against [`Scalar`]
//! and instantiated twice: with [`Rational`] (arbitrary precision, exact
//! verdicts) and with `f64` (binary64 mirror used for simulation and for
//! parameters that are irrational anyway).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{Debug, Display};
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::{parse_rational, real_roots_exact, real_roots_f64, Poly, Rational, DEFAULT_TOL};

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// `true` for the arbitrary-precision rational type.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    fn powi(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// Exact zero test for rationals, `|x| <= tol` for floats.
    fn is_negligible(&self, tol: f64) -> bool;

    /// Sign of `u + v * sqrt(w)` for `w >= 0`. `None` when a float
    /// evaluation lies within `tol` (relative) of zero.
    fn surd_sign(u: &Self, v: &Self, w: &Self, tol: f64) -> Option<Ordering>;

    /// Square root when it exists in the type (perfect squares for rationals).
    fn sqrt_exact(&self) -> Option<Self>;

    /// Real roots with multiplicity, increasing. Rational roots come back
    /// exactly; irrational ones as the midpoint of a `2^-60` enclosure.
    fn real_roots(p: &Poly<Self>) -> Result<Vec<(Self, usize)>>;

    /// Real roots inside the open interval `(lo, hi)`. Exact on rationals
    /// even when an irrational root sits very close to an endpoint.
    fn real_roots_in(p: &Poly<Self>, lo: &Self, hi: &Self) -> Result<Vec<(Self, usize)>>;

    fn from_rational(r: &Rational) -> Self;

    /// Exact rational value (`None` for non-finite floats).
    fn to_rational(&self) -> Option<Rational>;

    /// Parse one literal: `"p/q"`, integers and decimals for rationals;
    /// decimals and integers for floats.
    fn parse_text(text: &str) -> Result<Self>;

    /// Lossless text form (`"p/q"` or shortest round-trip decimal).
    fn to_text(&self) -> String {
        format!("{self}")
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn surd_sign(u: &Self, v: &Self, w: &Self, _tol: f64) -> Option<Ordering> {
        let zero = Rational::zero();
        let su = u.cmp(&zero);
        let sv = if w.is_zero() { Ordering::Equal } else { v.cmp(&zero) };
        Some(match (su, sv) {
            (a, Ordering::Equal) => a,
            (Ordering::Equal, b) => b,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            // opposite signs: compare u^2 with v^2 w
            (Ordering::Greater, Ordering::Less) => (u * u).cmp(&(v * v * w)),
            (Ordering::Less, Ordering::Greater) => (v * v * w).cmp(&(u * u)),
        })
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }

    fn real_roots(p: &Poly<Self>) -> Result<Vec<(Self, usize)>> {
        Ok(real_roots_exact(p, None)?
            .into_iter()
            .map(|(r, k)| (r.midpoint(), k))
            .collect())
    }

    fn real_roots_in(p: &Poly<Self>, lo: &Self, hi: &Self) -> Result<Vec<(Self, usize)>> {
        Ok(real_roots_exact(p, Some((lo.clone(), hi.clone())))?
            .into_iter()
            .map(|(r, k)| (r.midpoint(), k))
            .collect())
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn parse_text(text: &str) -> Result<Self> {
        parse_rational(text)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        libm::fabs(*self)
    }

    fn is_negligible(&self, tol: f64) -> bool {
        libm::fabs(*self) <= tol
    }

    fn surd_sign(u: &Self, v: &Self, w: &Self, tol: f64) -> Option<Ordering> {
        let root = libm::sqrt(w.max(0.0));
        let value = u + v * root;
        let scale = libm::fabs(*u) + libm::fabs(v * root);
        if libm::fabs(value) <= tol * scale {
            None
        } else {
            value.partial_cmp(&0.0)
        }
    }

    fn sqrt_exact(&self) -> Option<Self> {
        (*self >= 0.0).then(|| libm::sqrt(*self))
    }

    fn real_roots(p: &Poly<Self>) -> Result<Vec<(Self, usize)>> {
        real_roots_f64(p, None, DEFAULT_TOL)
    }

    fn real_roots_in(p: &Poly<Self>, lo: &Self, hi: &Self) -> Result<Vec<(Self, usize)>> {
        real_roots_f64(p, Some((*lo, *hi)), DEFAULT_TOL)
    }

    fn from_rational(r: &Rational) -> Self {
        Scalar::to_f64(r)
    }

    fn to_rational(&self) -> Option<Rational> {
        rational_from_f64(*self)
    }

    fn parse_text(text: &str) -> Result<Self> {
        let t = text.trim();
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() && !t.contains('/') => Ok(v),
            _ => Err(Error::Parse(format!("not a decimal number: {text:?}"))),
        }
    }
}

/// Exact binary expansion of a finite double.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_f64(x)
}
