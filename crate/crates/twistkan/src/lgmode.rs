//! Laguerre-Gaussian mode evaluation: amplitude, phase, and phase gradient.
//!
//! Amplitudes are evaluated in the log domain so that very large winding
//! numbers stay finite: a mode with `|l| = 137` involves 137!, far beyond
//! what f64 can represent directly. Only the factorial/power/exponential
//! part moves through logs; the Laguerre polynomial (which can change sign)
//! and the axial envelope are applied multiplicatively.

use crate::error::{Error, Result};
use crate::geometry::{CylPoint, Vec3Cyl};

/// Parameters of a Laguerre-Gaussian beam mode.
///
/// Fields are validated in [`BeamParams::new`]; the wavenumber and Rayleigh
/// range are derived on demand so they can never drift out of step with the
/// stored wavelength and waist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamParams {
    /// Vacuum wavelength, m.
    pub wavelength: f64,
    /// Beam waist radius at the focus, m.
    pub waist_w0: f64,
    /// Azimuthal (winding) index; sign sets the handedness of the twist.
    pub winding_l: i32,
    /// Radial index; the number of intensity rings beyond the innermost one.
    pub radial_p: u32,
}

impl BeamParams {
    /// Builds a beam, rejecting non-positive wavelength or waist.
    pub fn new(wavelength: f64, waist_w0: f64, winding_l: i32, radial_p: u32) -> Result<Self> {
        if !wavelength.is_finite() || wavelength <= 0.0 {
            return Err(Error::Domain(format!(
                "wavelength must be positive, got {wavelength}"
            )));
        }
        if !waist_w0.is_finite() || waist_w0 <= 0.0 {
            return Err(Error::Domain(format!(
                "waist must be positive, got {waist_w0}"
            )));
        }
        Ok(BeamParams {
            wavelength,
            waist_w0,
            winding_l,
            radial_p,
        })
    }

    /// Vacuum wavenumber `2*pi / wavelength`, rad/m.
    pub fn wavenumber_k(&self) -> f64 {
        std::f64::consts::TAU / self.wavelength
    }

    /// Rayleigh range `pi * w0^2 / wavelength`, m.
    pub fn rayleigh_zr(&self) -> f64 {
        std::f64::consts::PI * self.waist_w0 * self.waist_w0 / self.wavelength
    }

    /// Beam width `w(z) = w0 * sqrt(1 + (z/zR)^2)`, m.
    pub fn beam_width(&self, z: f64) -> f64 {
        let zeta = z / self.rayleigh_zr();
        self.waist_w0 * (1.0 + zeta * zeta).sqrt()
    }

    /// Combined mode order `2p + |l| + 1` that scales the Gouy phase.
    pub fn gouy_order(&self) -> f64 {
        2.0 * self.radial_p as f64 + self.winding_l.unsigned_abs() as f64 + 1.0
    }
}

/// Field quantities of the mode at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSample {
    /// Dimensionless amplitude profile `f(r, z)`; carries the sign of the
    /// Laguerre polynomial factor.
    pub amplitude_f: f64,
    /// Total phase `Theta(r, phi, z)`, rad (not wrapped).
    pub phase_theta: f64,
    /// Relative intensity `f^2`, dimensionless.
    pub intensity_rel: f64,
}

/// Associated Laguerre polynomial `L_p^alpha(x)` by the standard three-term
/// recurrence. Exact for small `p`; the recurrence keeps only the running
/// pair of values.
pub fn laguerre(p: u32, alpha: u32, x: f64) -> f64 {
    let a = alpha as f64;
    if p == 0 {
        return 1.0;
    }
    let mut prev = 1.0; // L_0
    let mut curr = 1.0 + a - x; // L_1
    for k in 2..=p {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0 + a - x) * curr - (kf - 1.0 + a) * prev) / kf;
        prev = curr;
        curr = next;
    }
    curr
}

/// `ln(n!)` as a sum of logarithms. Exact integer factorials overflow f64
/// around 170!, while the sum stays accurate to a few ulp for any n that
/// matters here.
fn ln_factorial(n: u32) -> f64 {
    (2..=n as u64).map(|k| (k as f64).ln()).sum()
}

/// Dimensionless mode amplitude `f(r, z)`.
///
/// Normalized so that the mode power in waist units is one:
/// `integral of f^2 * 2*pi*(r/w0) d(r/w0) = 1` at every `z`.
/// Negative radius is rejected; on the axis the amplitude is exactly zero
/// for any nonzero winding number.
pub fn mode_amplitude(beam: &BeamParams, r: f64, z: f64) -> Result<f64> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::Domain(format!(
            "radius must be finite and non-negative, got {r}"
        )));
    }
    let l_abs = beam.winding_l.unsigned_abs();
    if r == 0.0 && l_abs != 0 {
        // The r^|l| factor vanishes; short-circuit instead of taking ln(0).
        return Ok(0.0);
    }
    let p = beam.radial_p;
    let zeta = z / beam.rayleigh_zr();
    let env = 1.0 + zeta * zeta;
    let w = beam.waist_w0 * env.sqrt();
    let x = 2.0 * r * r / (w * w);

    let ln_norm = 0.5
        * (std::f64::consts::LN_2 + ln_factorial(p)
            - std::f64::consts::PI.ln()
            - ln_factorial(p + l_abs));
    let ln_radial = if l_abs == 0 {
        0.0
    } else {
        l_abs as f64 * (r * std::f64::consts::SQRT_2 / w).ln()
    };
    let ln_magnitude = ln_norm + ln_radial - r * r / (w * w) - 0.5 * env.ln();

    Ok(laguerre(p, l_abs, x) * ln_magnitude.exp())
}

/// Total mode phase `Theta` at a point, rad.
///
/// `Theta = k z + l phi - (2p + |l| + 1) atan(z/zR) + k r^2 z / (2 (z^2 + zR^2))`,
/// returned unwrapped so axial derivatives stay meaningful.
pub fn mode_phase(beam: &BeamParams, point: &CylPoint) -> f64 {
    let k = beam.wavenumber_k();
    let zr = beam.rayleigh_zr();
    let (r, z) = (point.r(), point.z());
    k * z + beam.winding_l as f64 * point.phi() - beam.gouy_order() * (z / zr).atan()
        + k * r * r * z / (2.0 * (z * z + zr * zr))
}

/// Analytic gradient of the mode phase in the cylindrical basis, rad/m.
///
/// The azimuthal component is the signed `l / r`; on the axis it diverges
/// for any nonzero winding number, which is reported as an error rather
/// than an infinity.
pub fn phase_gradient(beam: &BeamParams, point: &CylPoint) -> Result<Vec3Cyl> {
    let (r, z) = (point.r(), point.z());
    if r == 0.0 && beam.winding_l != 0 {
        return Err(Error::SingularOnAxis);
    }
    let k = beam.wavenumber_k();
    let zr = beam.rayleigh_zr();
    let denom = z * z + zr * zr;

    let radial = k * r * z / denom;
    let azimuthal = if beam.winding_l == 0 {
        0.0
    } else {
        beam.winding_l as f64 / r
    };
    let axial =
        k - beam.gouy_order() * zr / denom + k * r * r * (zr * zr - z * z) / (2.0 * denom * denom);

    Ok(Vec3Cyl {
        radial,
        azimuthal,
        axial,
    })
}

/// Amplitude, phase, and relative intensity at one point.
pub fn sample_mode(beam: &BeamParams, point: &CylPoint) -> Result<ModeSample> {
    let amplitude_f = mode_amplitude(beam, point.r(), point.z())?;
    Ok(ModeSample {
        amplitude_f,
        phase_theta: mode_phase(beam, point),
        intensity_rel: amplitude_f * amplitude_f,
    })
}

/// Location of the focal-plane intensity maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntensityPeak {
    /// `l = 0`: the maximum sits on the beam axis.
    OnAxis,
    /// `l != 0`: a bright ring at the stored radius, m.
    Ring(f64),
}

impl IntensityPeak {
    /// Radius of the maximum, m; zero when the peak is on the axis.
    pub fn radius(&self) -> f64 {
        match self {
            IntensityPeak::OnAxis => 0.0,
            IntensityPeak::Ring(r) => *r,
        }
    }

    /// True when the peak is the on-axis maximum of an untwisted beam.
    pub fn is_on_axis(&self) -> bool {
        matches!(self, IntensityPeak::OnAxis)
    }
}

/// Radius of the focal-plane intensity maximum, `w0 * sqrt(|l| / 2)`.
///
/// Only defined for single-ring modes (`p = 0`); modes with extra radial
/// rings have no single characteristic ring and are rejected.
pub fn ring_radius(beam: &BeamParams) -> Result<IntensityPeak> {
    if beam.radial_p != 0 {
        return Err(Error::Unsupported(format!(
            "ring radius is defined for single-ring modes (p = 0), got p = {}",
            beam.radial_p
        )));
    }
    if beam.winding_l == 0 {
        return Ok(IntensityPeak::OnAxis);
    }
    let l_abs = beam.winding_l.unsigned_abs() as f64;
    Ok(IntensityPeak::Ring(
        beam.waist_w0 * (l_abs / 2.0).sqrt(),
    ))
}
