//! Cylindrical coordinates and vectors for beam-centred field evaluation.

use crate::error::{Error, Result};

/// Maps an angle onto the canonical interval `[0, 2*pi)` radians.
///
/// Idempotent: applying it to an already-normalized angle returns the same
/// bits. Non-finite input is rejected rather than propagated.
pub fn normalize_angle(phi: f64) -> Result<f64> {
    if !phi.is_finite() {
        return Err(Error::Domain(format!("angle must be finite, got {phi}")));
    }
    let wrapped = phi.rem_euclid(std::f64::consts::TAU);
    // rem_euclid can round up to exactly 2*pi for tiny negative inputs.
    if wrapped >= std::f64::consts::TAU {
        Ok(0.0)
    } else {
        Ok(wrapped)
    }
}

/// A point in beam-centred cylindrical coordinates.
///
/// Radius and height are in metres; the azimuth is stored normalized to
/// `[0, 2*pi)`. Construction validates, so downstream code can rely on
/// `r >= 0` and a canonical angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylPoint {
    r: f64,
    phi: f64,
    z: f64,
}

impl CylPoint {
    /// Builds a point, normalizing the azimuth.
    ///
    /// Rejects negative radius and any non-finite coordinate.
    pub fn new(r: f64, phi: f64, z: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::Domain(format!(
                "radius must be finite and non-negative, got {r}"
            )));
        }
        if !z.is_finite() {
            return Err(Error::Domain(format!("axial coordinate must be finite, got {z}")));
        }
        Ok(CylPoint {
            r,
            phi: normalize_angle(phi)?,
            z,
        })
    }

    /// Radial distance from the beam axis, m.
    pub fn r(&self) -> f64 {
        self.r
    }

    /// Azimuthal angle in `[0, 2*pi)`, rad.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Distance along the propagation axis from the focal plane, m.
    pub fn z(&self) -> f64 {
        self.z
    }
}

/// A vector expressed in the local cylindrical basis (radial, azimuthal,
/// axial). Used both for phase gradients (rad/m) and forces (N).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3Cyl {
    pub radial: f64,
    pub azimuthal: f64,
    pub axial: f64,
}

impl Vec3Cyl {
    /// The zero vector.
    pub fn zero() -> Self {
        Vec3Cyl {
            radial: 0.0,
            azimuthal: 0.0,
            axial: 0.0,
        }
    }

    /// Euclidean dot product with another vector at the same point.
    pub fn dot(&self, other: &Vec3Cyl) -> f64 {
        self.radial * other.radial + self.azimuthal * other.azimuthal + self.axial * other.axial
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// True when every component is finite.
    pub fn is_finite(&self) -> bool {
        self.radial.is_finite() && self.azimuthal.is_finite() && self.axial.is_finite()
    }

    /// Componentwise scaling.
    pub fn scaled(&self, factor: f64) -> Self {
        Vec3Cyl {
            radial: self.radial * factor,
            azimuthal: self.azimuthal * factor,
            axial: self.axial * factor,
        }
    }
}
