use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Dense univariate polynomial, lowest degree first.
///
/// The coefficient list never ends in an (exact) zero, so the zero
/// polynomial is the empty list and `degree = len - 1` otherwise.
#[derive(Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn x() -> Self {
        Poly::monomial(T::one(), 1)
    }

    /// Monic `prod (x - r)`.
    pub fn from_roots<'a, I>(roots: I) -> Self
    where
        I: IntoIterator<Item = &'a T>,
    {
        roots.into_iter().fold(Poly::one(), |acc, r| {
            &acc * &Poly::new(vec![-r.clone(), T::one()])
        })
    }

    /// `prod (1 - t / r)`, the reciprocal-root form used for `r(t)`, `s(t)`, `q(t)`.
    pub fn from_reciprocal_roots<'a, I>(roots: I) -> Self
    where
        I: IntoIterator<Item = &'a T>,
    {
        roots.into_iter().fold(Poly::one(), |acc, r| {
            &acc * &Poly::new(vec![T::one(), -r.recip()])
        })
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// `x^deg * p(1/x)`; `deg` must be at least the degree of `p`.
    pub fn reversed(&self, deg: usize) -> Self {
        let mut coeffs = vec![T::zero(); deg + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[deg - k] = c.clone();
        }
        Poly::new(coeffs)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.lead().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d].clone() * lead_inv.clone();
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
                }
            }
            // the leading term cancels by construction; force it for floats
            rem[k + d] = T::zero();
            quot[k] = c;
        }
        rem.truncate(d);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd. Only meaningful for exact coefficients.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Largest absolute coefficient, as a float.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| libm::fabs(c.to_f64()))
            .fold(0.0, f64::max)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_f64(&self) -> Poly<f64> {
        self.map(|c| c.to_f64())
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}
