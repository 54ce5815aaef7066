//! Exact rationals, dense univariate polynomials, real-root isolation and
//! small dense linear algebra.

mod linalg;
mod poly;
mod roots;

use alloc::format;
use alloc::vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

pub use linalg::{null_vector_exact, numerical_rank, rank_exact, svd_jacobi, Svd};
pub use poly::Poly;
pub use roots::{
    real_roots_exact, real_roots_f64, square_free_decomposition, RootEnclosure, REFINE_BITS,
};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Default tolerance for every float comparison in the crate.
pub const DEFAULT_TOL: f64 = 1e-9;

/// `e_l(values)`: 1 for `l = 0`, 0 when `l` exceeds the count.
pub fn elementary_symmetric<T: Scalar>(values: &[T], l: usize) -> T {
    if l > values.len() {
        return T::zero();
    }
    // e[k] after processing a prefix; only indices up to l are needed
    let mut e = vec![T::zero(); l + 1];
    e[0] = T::one();
    for v in values {
        for k in (1..=l).rev() {
            e[k] = e[k].clone() + e[k - 1].clone() * v.clone();
        }
    }
    e.swap_remove(l)
}

/// Parse `"p/q"`, an integer, or a decimal literal such as `"0.25"` or `"1e-3"`
/// into an exact rational (decimals are read at face value, not via binary64).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a number: {text:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], i32::from_str(&s[i + 1..]).map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.trim_start_matches(['+', '-']).is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = match digits.as_str() {
        "-" | "+" => format!("{digits}0"),
        _ => digits,
    };
    let num = BigInt::from_str(&digits).map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    Ok(if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    })
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (continued-fraction descent).
pub fn simplest_rational_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    let zero = Rational::zero();
    if *lo <= zero && zero <= *hi {
        return zero;
    }
    if *hi < zero {
        return -simplest_rational_between(&-hi.clone(), &-lo.clone());
    }
    let c = lo.ceil();
    if c <= *hi {
        return c;
    }
    let fl = lo.floor();
    let inner = simplest_rational_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn elementary_symmetric_small() {
        let v = [q(3, 1), q(2, 1), q(1, 1)];
        assert_eq!(elementary_symmetric(&v, 0), q(1, 1));
        assert_eq!(elementary_symmetric(&v, 1), q(6, 1));
        assert_eq!(elementary_symmetric(&v, 2), q(11, 1));
        assert_eq!(elementary_symmetric(&v, 3), q(6, 1));
        assert_eq!(elementary_symmetric(&v, 4), q(0, 1));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("2/3").unwrap(), q(2, 3));
        assert_eq!(parse_rational("-4/6").unwrap(), q(-2, 3));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-.5").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("1.5e2").unwrap(), q(150, 1));
        assert_eq!(parse_rational("2e-3").unwrap(), q(1, 500));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_rational_between(&q(1, 3), &q(1, 2)), q(1, 2));
        assert_eq!(simplest_rational_between(&q(-7, 2), &q(-3, 1)), q(-3, 1));
        let pi_lo = q(314159, 100000);
        let pi_hi = q(314160, 100000);
        assert_eq!(simplest_rational_between(&pi_lo, &pi_hi), q(355, 113));
        let x = q(1, 7);
        let eps = q(1, 10_000_000);
        assert_eq!(simplest_rational_between(&(&x - &eps), &(&x + &eps)), x);
    }

    proptest! {
        #[test]
        fn product_expansion_matches_symmetric(vals in prop::collection::vec((-20i64..20, 1i64..9), 0..7)) {
            let xs: Vec<Rational> = vals.iter().map(|&(n, d)| q(n, d)).collect();
            // prod (1 + x_i t), expanded literally
            let prod = xs.iter().fold(Poly::one(), |acc, x| {
                &acc * &Poly::new(vec![Rational::from_i64(1), x.clone()])
            });
            for l in 0..=xs.len() + 1 {
                prop_assert_eq!(prod.coeff(l), elementary_symmetric(&xs, l));
            }
        }
    }
}
