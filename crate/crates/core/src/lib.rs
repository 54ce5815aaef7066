//! Periodic billiard trajectories inside ellipsoids.
//!
//! The crate decides, constructs and checks the algebraic conditions under
//! which a billiard trajectory inside an ellipsoid of `R^n` closes after `m`
//! bounces in elliptic coordinates. Two formulations are implemented and
//! cross-checked: a rank test on a matrix of Taylor coefficients
//! ([`cayley`]) and a polynomial certificate `S^2 R = P (P - P(0))`
//! ([`polyform`]). Closed-form families live in [`closedform`], and the
//! [`simulator`] runs the billiard map itself as ground truth.
//!
//! Everything is `no_std` with `alloc`. Algebra is written once over
//! [`Scalar`], implemented for exact [`Rational`] and for `f64`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cayley;
pub mod closedform;
pub mod confocal;
pub mod error;
pub mod polyform;
pub mod ratpoly;
pub mod scalar;
pub mod simulator;

pub use error::{Error, Result};
pub use ratpoly::{Poly, Rational};
pub use scalar::Scalar;
