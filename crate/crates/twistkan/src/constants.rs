//! Physical constants used throughout the crate, in SI units.
//!
//! These are fixed CODATA values and are deliberately not configurable:
//! every quantity that legitimately varies between runs lives in a parameter
//! struct instead.

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054571817e-34;

/// Elementary charge, C.
pub const E_CHARGE: f64 = 1.602176634e-19;

/// Standard acceleration of gravity, m/s^2.
pub const G_ACCEL: f64 = 9.80665;

/// Boltzmann constant, J/K.
pub const K_BOLTZMANN: f64 = 1.380649e-23;
