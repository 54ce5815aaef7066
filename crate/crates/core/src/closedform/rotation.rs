//! Rotation number of a planar caustic as a ratio of elliptic integrals.

use crate::error::{Error, Result};

// 15-point Kronrod nodes on [-1, 1] (nonnegative half) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed nodes.
const XK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let pair = f(c - h * XK[i]) + f(c + h * XK[i]);
        k += WK[i] * pair;
        if i % 2 == 1 {
            g += WG[i / 2] * pair;
        }
    }
    (k * h, libm::fabs((k - g) * h))
}

fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (v, err) = kronrod(f, a, b);
    if err <= tol || depth == 0 {
        return v;
    }
    let m = 0.5 * (a + b);
    adaptive(f, a, m, 0.5 * tol, depth - 1) + adaptive(f, m, b, 0.5 * tol, depth - 1)
}

fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (rough, _) = kronrod(&f, a, b);
    adaptive(&f, a, b, 1e-15 * libm::fabs(rough).max(1e-300), 48)
}

/// `rho(lambda; b, a)`: the integral of `1 / sqrt(|(lambda - t)(b - t)(a - t)|)`
/// over `(0, min(b, lambda))` divided by twice the same integral over
/// `(max(b, lambda), a)`. Endpoint singularities are removed with the
/// substitution `t = endpoint -+ u^2`.
pub fn rotation_number(a: f64, b: f64, lambda: f64) -> Result<f64> {
    if !(a > b && b > 0.0) {
        return Err(Error::InvalidEllipsoid("need a > b > 0".into()));
    }
    if libm::fabs(lambda - b) <= 1e-12 * b || libm::fabs(lambda - a) <= 1e-12 * a {
        return Err(Error::SingularCaustic { index: 1 });
    }
    if !(lambda > 0.0 && lambda < a) {
        return Err(Error::NoTangentTrajectories { index: 1 });
    }
    // the integrand is symmetric in (lambda, b, a): sort the three roots
    let (r1, r2, r3) = if lambda < b { (lambda, b, a) } else { (b, lambda, a) };
    let num = integrate(
        |u| 2.0 / libm::sqrt((r2 - r1 + u * u) * (r3 - r1 + u * u)),
        0.0,
        libm::sqrt(r1),
    );
    let mid = 0.5 * (r2 + r3);
    let low = integrate(
        |u| 2.0 / libm::sqrt((r2 - r1 + u * u) * (r3 - r2 - u * u)),
        0.0,
        libm::sqrt(mid - r2),
    );
    let high = integrate(
        |u| 2.0 / libm::sqrt((r3 - r1 - u * u) * (r3 - r2 - u * u)),
        0.0,
        libm::sqrt(r3 - mid),
    );
    Ok(num / (2.0 * (low + high)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        let rho = rotation_number(2.0, 1.0, 2.0 / 3.0).unwrap();
        assert!((rho - 0.25).abs() < 1e-12, "{rho}");
        let l = 2.0 / (3.0 + 2.0 * libm::sqrt(2.0));
        assert!((rotation_number(2.0, 1.0, l).unwrap() - 1.0 / 6.0).abs() < 1e-12);
        // hyperbola: ab/(a - b) with 2b < a
        assert!((rotation_number(5.0, 1.0, 1.25).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn smooth_integral() {
        let v = integrate(libm::exp, 0.0, 1.0);
        assert!((v - (core::f64::consts::E - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn singular_and_invalid() {
        assert_eq!(rotation_number(2.0, 1.0, 1.0), Err(Error::SingularCaustic { index: 1 }));
        assert!(rotation_number(1.0, 2.0, 0.5).is_err());
        assert!(rotation_number(2.0, 1.0, 2.5).is_err());
    }

    #[test]
    fn symmetric_in_parameters() {
        // swapping the roles of lambda and b maps an E-caustic to an H-caustic
        for (a, b, l) in [(3.0, 1.0, 0.4), (10.0, 2.0, 1.1), (2.0, 1.9, 0.3)] {
            let r1 = rotation_number(a, b, l).unwrap();
            let r2 = rotation_number(a, l, b).unwrap();
            assert!((r1 - r2).abs() < 1e-12);
        }
    }

    #[test]
    fn monotone_on_ellipses() {
        let (a, b) = (3.0, 1.2);
        let vals: std::vec::Vec<f64> = (1..50)
            .map(|i| rotation_number(a, b, b * i as f64 / 50.0).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]));
        assert!(vals[0] > 0.0 && vals[0] < 0.05);
        assert!(*vals.last().unwrap() < 0.5);
        // both limits are approached, the upper one only logarithmically
        assert!(rotation_number(a, b, 1e-9).unwrap() < 1e-3);
        let near = [1e-3, 1e-6, 1e-11].map(|e| rotation_number(a, b, b * (1.0 - e)).unwrap());
        assert!(near[0] < near[1] && near[1] < near[2] && near[2] < 0.5 && near[2] > 0.46);
    }
}
