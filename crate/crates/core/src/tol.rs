//! Shared numerical tolerances.

/// Relative distance in `u` below which a state counts as lying on a curve.
pub const ON_CURVE: f64 = 1e-10;

/// Relative tolerance for deciding that an algebraic quantity vanishes.
pub const ZERO_REL: f64 = 1e-12;

/// Convergence tolerance for bracketed root finding.
pub const ROOT: f64 = 1e-12;

/// Iteration cap for bisection.
pub const MAX_BISECT: usize = 200;

/// `|x| <= ZERO_REL * scale`, with `scale` floored at the smallest normal.
pub fn is_zero(x: f64, scale: f64) -> bool {
    x.abs() <= ZERO_REL * scale.abs().max(f64::MIN_POSITIVE)
}

/// On-curve comparison for velocities.
pub fn same_velocity(u: f64, v: f64) -> bool {
    (u - v).abs() <= ON_CURVE * u.abs().max(1.0)
}
