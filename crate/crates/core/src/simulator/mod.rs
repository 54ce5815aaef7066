//! The billiard map inside an ellipsoid, used as geometric ground truth.
//!
//! [`reflect_step`] follows one chord and reflects, [`line_caustics`]
//! recovers the `n - 1` confocal quadrics a line is tangent to, and
//! [`launch_tangent`] builds an initial state on prescribed caustics.
//! [`simulate`] detects closure up to a coordinate-sign reflection and
//! [`winding_numbers`] counts oscillations of the elliptic coordinates.

mod billiard;
mod closure;

pub use billiard::{
    bounce_coordinates, caustic_drift, launch_tangent, line_caustics, reflect_step,
    BilliardState, GRAZING_TOL,
};
pub use closure::{
    simulate, winding_numbers, Closure, Trajectory, Winding, CLOSURE_TOL, SAMPLES_PER_CHORD,
};
