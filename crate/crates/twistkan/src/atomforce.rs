//! Scattering force on a two-level atom in a Laguerre-Gaussian beam, and its
//! decomposition into a constant push, a twist-induced axial reduction, and a
//! velocity-proportional damping term.

use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::geometry::{CylPoint, Vec3Cyl};
use crate::lgmode::{mode_amplitude, phase_gradient, ring_radius, BeamParams};

/// Internal two-level properties of the atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomParams {
    /// Natural linewidth of the transition, rad/s.
    pub gamma: f64,
    /// Atomic mass, kg.
    pub mass: f64,
}

impl AtomParams {
    /// Builds atom parameters, rejecting non-positive linewidth or mass.
    pub fn new(gamma: f64, mass: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(Error::Domain(format!("linewidth must be positive, got {gamma}")));
        }
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::Domain(format!("mass must be positive, got {mass}")));
        }
        Ok(AtomParams { gamma, mass })
    }
}

/// How the local Rabi frequency follows the beam profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RabiScaling {
    /// Use the quoted Rabi frequency as-is at every evaluation point. This is
    /// the convention under which the headline force numbers reproduce.
    Peak,
    /// Scale the quoted Rabi frequency by the mode amplitude `f(r, z)`.
    ModeProfile,
}

/// Laser-atom coupling parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    /// Laser detuning from resonance at rest, rad/s; negative = red detuned.
    pub detuning0: f64,
    /// Rabi frequency scale, rad/s.
    pub rabi0: f64,
    /// Spatial convention for the local Rabi frequency.
    pub rabi_scaling: RabiScaling,
}

impl CouplingParams {
    /// Builds coupling parameters, rejecting a negative Rabi frequency.
    pub fn new(detuning0: f64, rabi0: f64, rabi_scaling: RabiScaling) -> Result<Self> {
        if !detuning0.is_finite() {
            return Err(Error::Domain(format!("detuning must be finite, got {detuning0}")));
        }
        if !rabi0.is_finite() || rabi0 < 0.0 {
            return Err(Error::Domain(format!(
                "Rabi frequency must be finite and non-negative, got {rabi0}"
            )));
        }
        Ok(CouplingParams {
            detuning0,
            rabi0,
            rabi_scaling,
        })
    }
}

/// Steady-state excitation line shape
/// `(omega^2/4) / (delta^2 + gamma^2/4 + omega^2/2)`.
///
/// Bounded by `[0, 1/2)`: the scattering rate saturates at half the
/// linewidth no matter how hard the transition is driven.
pub fn lorentzian(delta: f64, gamma: f64, omega: f64) -> f64 {
    let om2 = omega * omega;
    (om2 / 4.0) / (delta * delta + gamma * gamma / 4.0 + om2 / 2.0)
}

/// Effective detuning seen by a moving atom: `delta0 - grad(Theta) . v`.
///
/// The Doppler shift uses the full three-component phase gradient, so both
/// axial motion and motion around the ring shift the resonance.
pub fn doppler_detuning(
    coupling: &CouplingParams,
    phase_grad: &Vec3Cyl,
    velocity: &Vec3Cyl,
) -> f64 {
    coupling.detuning0 - phase_grad.dot(velocity)
}

/// Local Rabi frequency at `(r, z)` under the configured scaling convention.
///
/// With [`RabiScaling::ModeProfile`] the result inherits the sign of the
/// mode amplitude; it only ever enters squared.
pub fn local_rabi(coupling: &CouplingParams, beam: &BeamParams, r: f64, z: f64) -> Result<f64> {
    match coupling.rabi_scaling {
        RabiScaling::Peak => Ok(coupling.rabi0),
        RabiScaling::ModeProfile => Ok(coupling.rabi0 * mode_amplitude(beam, r, z)?),
    }
}

/// Scattering force on the atom at a point, N, in the cylindrical basis.
///
/// `F = hbar * gamma * L(delta(v), omega) * grad(Theta)`: the force points
/// along the local phase gradient, weighted by the Doppler-shifted line
/// shape. On the beam axis a vortex mode carries no light, so the force is
/// exactly zero under the mode-profile convention; under the peak convention
/// the axis is genuinely singular and reported as an error.
pub fn scattering_force(
    beam: &BeamParams,
    atom: &AtomParams,
    coupling: &CouplingParams,
    point: &CylPoint,
    velocity: &Vec3Cyl,
) -> Result<Vec3Cyl> {
    if point.r() == 0.0 && beam.winding_l != 0 {
        match coupling.rabi_scaling {
            RabiScaling::ModeProfile => return Ok(Vec3Cyl::zero()),
            RabiScaling::Peak => return Err(Error::SingularOnAxis),
        }
    }
    let grad = phase_gradient(beam, point)?;
    let omega = local_rabi(coupling, beam, point.r(), point.z())?;
    let delta = doppler_detuning(coupling, &grad, velocity);
    let force = grad.scaled(HBAR * atom.gamma * lorentzian(delta, atom.gamma, omega));
    if !force.is_finite() {
        return Err(Error::Domain(
            "scattering force evaluated to a non-finite value".into(),
        ));
    }
    Ok(force)
}

/// Saturation parameter `s = (omega^2/2) / (delta0^2 + gamma^2/4)`.
pub fn saturation_parameter(coupling: &CouplingParams, atom: &AtomParams, omega: f64) -> f64 {
    (omega * omega / 2.0) / (coupling.detuning0 * coupling.detuning0 + atom.gamma * atom.gamma / 4.0)
}

/// Rabi frequency at the focal-plane intensity maximum under the configured
/// scaling convention. Requires a single-ring mode (`p = 0`).
fn rabi_at_ring(beam: &BeamParams, coupling: &CouplingParams) -> Result<f64> {
    let peak = ring_radius(beam)?;
    local_rabi(coupling, beam, peak.radius(), 0.0)
}

/// Velocity-damping coefficient `a = dF/dv` at `v = 0` for axial motion on
/// the focal ring, kg/s. Negative for red detuning (the force opposes the
/// velocity change), positive for blue.
///
/// `a = hbar k^2 (1 - |l|/(2 k zR))^2 * s/(1+s)^2 * delta0 gamma / (delta0^2 + gamma^2/4)`
/// with the saturation parameter `s` evaluated at the ring.
pub fn damping_coefficient(
    beam: &BeamParams,
    atom: &AtomParams,
    coupling: &CouplingParams,
) -> Result<f64> {
    let omega = rabi_at_ring(beam, coupling)?;
    let k = beam.wavenumber_k();
    let reduction = 1.0 - axial_reduction_ratio(beam);
    let s = saturation_parameter(coupling, atom, omega);
    let d0 = coupling.detuning0;
    let g = atom.gamma;
    Ok(HBAR * k * k * reduction * reduction * s / ((1.0 + s) * (1.0 + s)) * (d0 * g)
        / (d0 * d0 + g * g / 4.0))
}

/// The twist-induced fractional reduction of the axial wavenumber,
/// `|l| / (2 k zR)`. Dimensionless; exceeds 1 only for extreme twists that
/// reverse the axial push.
pub fn axial_reduction_ratio(beam: &BeamParams) -> f64 {
    beam.winding_l.unsigned_abs() as f64 / (2.0 * beam.wavenumber_k() * beam.rayleigh_zr())
}

/// Axial scattering force on the focal ring in the large-twist form, N:
/// `F(v) = hbar gamma k (1 - |l|/(2 k zR)) * L(delta0 - k_eff v, omega_ring)`.
///
/// The Doppler shift uses the same reduced axial wavenumber
/// `k_eff = k (1 - |l|/(2 k zR))` that scales the force. Requires `p = 0`.
pub fn axial_force_large_l(
    beam: &BeamParams,
    atom: &AtomParams,
    coupling: &CouplingParams,
    v_axial: f64,
) -> Result<f64> {
    let omega = rabi_at_ring(beam, coupling)?;
    let k_eff = beam.wavenumber_k() * (1.0 - axial_reduction_ratio(beam));
    let delta = coupling.detuning0 - k_eff * v_axial;
    Ok(HBAR * atom.gamma * k_eff * lorentzian(delta, atom.gamma, omega))
}

/// The three-term split of the on-ring axial force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceDecomposition {
    /// Constant light push `hbar gamma k L0`, N. Non-negative.
    pub f_o: f64,
    /// Twist-induced reduction `hbar gamma |l| / (2 zR) * L0`, N. Non-negative.
    pub f_l: f64,
    /// Velocity-damping coefficient, kg/s; see [`damping_coefficient`].
    pub damping_a: f64,
    /// Net velocity-independent force `f_o - f_l`, N.
    pub net_const: f64,
}

impl ForceDecomposition {
    /// Linearized axial force `net_const + damping_a * v`, N.
    pub fn linear_force(&self, v_axial: f64) -> f64 {
        self.net_const + self.damping_a * v_axial
    }
}

/// Splits the on-ring axial force into its three terms, all evaluated with
/// the same rest-frame line-shape factor. Requires `p = 0`.
pub fn axial_decomposition(
    beam: &BeamParams,
    atom: &AtomParams,
    coupling: &CouplingParams,
) -> Result<ForceDecomposition> {
    let omega = rabi_at_ring(beam, coupling)?;
    let l0 = lorentzian(coupling.detuning0, atom.gamma, omega);
    let f_o = HBAR * atom.gamma * beam.wavenumber_k() * l0;
    let f_l = HBAR * atom.gamma * beam.winding_l.unsigned_abs() as f64
        / (2.0 * beam.rayleigh_zr())
        * l0;
    let damping_a = damping_coefficient(beam, atom, coupling)?;
    Ok(ForceDecomposition {
        f_o,
        f_l,
        damping_a,
        net_const: f_o - f_l,
    })
}

/// Doppler-limit speed scale `sqrt(hbar gamma / (2 m))`, m/s.
pub fn doppler_limit_speed(atom: &AtomParams) -> f64 {
    (HBAR * atom.gamma / (2.0 * atom.mass)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn reference_beam() -> BeamParams {
        BeamParams::new(852.35e-9, 7e-6, 137, 0).unwrap()
    }

    fn reference_atom() -> AtomParams {
        AtomParams::new(3.25e7, 2.2069e-25).unwrap()
    }

    fn reference_coupling() -> CouplingParams {
        let gamma = 3.25e7;
        CouplingParams::new(-0.5 * gamma, 4.0 * gamma, RabiScaling::Peak).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(AtomParams::new(0.0, 1e-25).is_err());
        assert!(AtomParams::new(3e7, -1e-25).is_err());
        assert!(CouplingParams::new(f64::NAN, 1e7, RabiScaling::Peak).is_err());
        assert!(CouplingParams::new(0.0, -1e7, RabiScaling::Peak).is_err());
    }

    #[test]
    fn lorentzian_operating_point() {
        // delta = -gamma/2, omega = 4*gamma gives exactly 4/8.5 = 8/17.
        let g = 3.25e7;
        assert_relative_eq!(
            lorentzian(-0.5 * g, g, 4.0 * g),
            8.0 / 17.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn lorentzian_bounds_and_monotonicity() {
        let g = 3.25e7;
        let mut prev = 0.0;
        for i in 1..200 {
            let omega = g * i as f64 * 0.5;
            let val = lorentzian(-0.7 * g, g, omega);
            assert!(val > prev, "must grow with drive strength");
            assert!(val < 0.5, "saturation bound");
            prev = val;
        }
        // Maximized over detuning at resonance.
        let at_res = lorentzian(0.0, g, 2.0 * g);
        for &d in &[-3.0, -1.0, -0.1, 0.1, 2.5] {
            assert!(lorentzian(d * g, g, 2.0 * g) < at_res);
        }
        assert_eq!(lorentzian(0.0, g, 0.0), 0.0);
    }

    #[test]
    fn doppler_detuning_uses_all_components() {
        let coupling = reference_coupling();
        let grad = Vec3Cyl {
            radial: 1e5,
            azimuthal: 2e6,
            axial: 7e6,
        };
        let v = Vec3Cyl {
            radial: 1.0,
            azimuthal: 2.0,
            axial: 3.0,
        };
        let expected = coupling.detuning0 - (1e5 + 4e6 + 21e6);
        assert_eq!(doppler_detuning(&coupling, &grad, &v), expected);
        // An atom at rest sees the bare detuning.
        assert_eq!(
            doppler_detuning(&coupling, &grad, &Vec3Cyl::zero()),
            coupling.detuning0
        );
    }

    #[test]
    fn saturation_at_operating_point_is_sixteen() {
        let s = saturation_parameter(&reference_coupling(), &reference_atom(), 4.0 * 3.25e7);
        assert_eq!(s, 16.0);
    }

    #[test]
    fn force_is_line_shape_times_gradient() {
        use crate::lgmode::phase_gradient;
        let (beam, atom, coupling) = (reference_beam(), reference_atom(), reference_coupling());
        let ring = crate::lgmode::ring_radius(&beam).unwrap().radius();
        let point = CylPoint::new(ring, 0.0, 0.0).unwrap();
        let force = scattering_force(&beam, &atom, &coupling, &point, &Vec3Cyl::zero()).unwrap();
        let grad = phase_gradient(&beam, &point).unwrap();
        let weight = HBAR * atom.gamma * lorentzian(coupling.detuning0, atom.gamma, coupling.rabi0);
        assert_relative_eq!(force.axial, weight * grad.axial, max_relative = 1e-15);
        assert_relative_eq!(force.azimuthal, weight * grad.azimuthal, max_relative = 1e-15);
        assert_eq!(force.radial, 0.0);
        // Headline magnitude: about 1.13e-20 N along the axis at the ring.
        assert_relative_eq!(force.axial, 1.1268804646765333e-20, max_relative = 1e-12);
    }

    #[test]
    fn force_on_axis_depends_on_rabi_convention() {
        let (beam, atom) = (reference_beam(), reference_atom());
        let axis = CylPoint::new(0.0, 0.0, 0.0).unwrap();
        let profile =
            CouplingParams::new(-0.5 * atom.gamma, 4.0 * atom.gamma, RabiScaling::ModeProfile)
                .unwrap();
        let force = scattering_force(&beam, &atom, &profile, &axis, &Vec3Cyl::zero()).unwrap();
        assert_eq!(force, Vec3Cyl::zero());
        // Forcing full drive on the axis hits the genuine singularity.
        assert!(matches!(
            scattering_force(&beam, &atom, &reference_coupling(), &axis, &Vec3Cyl::zero()),
            Err(Error::SingularOnAxis)
        ));
    }

    #[test]
    fn doppler_shift_weakens_the_force_for_red_detuning() {
        let (beam, atom, coupling) = (reference_beam(), reference_atom(), reference_coupling());
        let ring = crate::lgmode::ring_radius(&beam).unwrap().radius();
        let point = CylPoint::new(ring, 0.0, 0.0).unwrap();
        let at_rest = scattering_force(&beam, &atom, &coupling, &point, &Vec3Cyl::zero()).unwrap();
        let moving = scattering_force(
            &beam,
            &atom,
            &coupling,
            &point,
            &Vec3Cyl {
                radial: 0.0,
                azimuthal: 0.0,
                axial: 20.0,
            },
        )
        .unwrap();
        assert!(moving.axial < at_rest.axial);
    }

    #[test]
    fn damping_coefficient_headline_value() {
        let a = damping_coefficient(&reference_beam(), &reference_atom(), &reference_coupling()).unwrap();
        assert_relative_eq!(a, -2.8545713531565497e-22, max_relative = 1e-12);
    }

    #[test]
    fn damping_sign_follows_detuning() {
        let (beam, atom) = (reference_beam(), reference_atom());
        let red = reference_coupling();
        let blue = CouplingParams::new(0.5 * atom.gamma, 4.0 * atom.gamma, RabiScaling::Peak)
            .unwrap();
        let a_red = damping_coefficient(&beam, &atom, &red).unwrap();
        let a_blue = damping_coefficient(&beam, &atom, &blue).unwrap();
        assert!(a_red < 0.0);
        assert!(a_blue > 0.0);
        // Exact odd symmetry: every detuning-dependent factor is either even
        // or proportional to delta0.
        assert_eq!(a_blue.to_bits(), (-a_red).to_bits());
        // No damping on resonance.
        let on_res =
            CouplingParams::new(0.0, 4.0 * atom.gamma, RabiScaling::Peak).unwrap();
        assert_eq!(damping_coefficient(&beam, &atom, &on_res).unwrap(), 0.0);
    }

    #[test]
    fn axial_force_large_twist_values() {
        let (beam, atom, coupling) = (reference_beam(), reference_atom(), reference_coupling());
        assert_relative_eq!(
            axial_force_large_l(&beam, &atom, &coupling, 0.0).unwrap(),
            1.1277735081484694e-20,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            axial_force_large_l(&beam, &atom, &coupling, 40.0).unwrap(),
            1.0514735719586118e-21,
            max_relative = 1e-12
        );
        // Strictly positive and decaying with speed for red detuning.
        let mut prev = f64::INFINITY;
        for i in 0..50 {
            let f = axial_force_large_l(&beam, &atom, &coupling, i as f64 * 4.0).unwrap();
            assert!(f > 0.0);
            assert!(f < prev);
            prev = f;
        }
        let multi_ring = BeamParams::new(852.35e-9, 7e-6, 137, 2).unwrap();
        assert!(matches!(
            axial_force_large_l(&multi_ring, &atom, &coupling, 0.0),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn decomposition_headline_values() {
        let d = axial_decomposition(&reference_beam(), &reference_atom(), &reference_coupling()).unwrap();
        assert_relative_eq!(d.f_o, 1.1889469859760874e-20, max_relative = 1e-12);
        assert_relative_eq!(d.f_l, 6.1173477827618005e-22, max_relative = 1e-12);
        assert_relative_eq!(d.damping_a, -2.8545713531565497e-22, max_relative = 1e-12);
        assert_relative_eq!(d.net_const, 1.1277735081484694e-20, max_relative = 1e-12);
        assert!(d.f_o >= 0.0 && d.f_l >= 0.0);
        // The two constant terms share the line-shape factor, so their ratio
        // is the purely geometric reduction ratio.
        assert_relative_eq!(
            d.f_l / d.f_o,
            axial_reduction_ratio(&reference_beam()),
            max_relative = 1e-13
        );
        assert_relative_eq!(d.f_l / d.f_o, 0.051451812863965957, max_relative = 1e-12);
        // Linearized force and its root.
        assert_relative_eq!(
            d.linear_force(39.507630695634613),
            0.0,
            epsilon = 1e-12 * d.net_const.abs()
        );
    }

    #[test]
    fn decomposition_net_matches_large_twist_force_at_rest() {
        // At v = 0 the linear and the full expressions coincide exactly:
        // both are hbar*gamma*k*(1 - ratio)*L0, up to the order of rounding.
        let (beam, atom, coupling) = (reference_beam(), reference_atom(), reference_coupling());
        let d = axial_decomposition(&beam, &atom, &coupling).unwrap();
        assert_relative_eq!(
            d.net_const,
            axial_force_large_l(&beam, &atom, &coupling, 0.0).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn mode_profile_convention_weakens_the_push() {
        let (beam, atom) = (reference_beam(), reference_atom());
        let profile =
            CouplingParams::new(-0.5 * atom.gamma, 4.0 * atom.gamma, RabiScaling::ModeProfile)
                .unwrap();
        let d = axial_decomposition(&beam, &atom, &profile).unwrap();
        // The ring amplitude is about 0.147, so the drive drops well below
        // saturation and the constant push falls by a factor of about 3.7.
        assert_relative_eq!(d.f_o, 3.25402453924e-21, max_relative = 1e-10);
        let peak = axial_decomposition(&beam, &atom, &reference_coupling()).unwrap();
        assert!(d.f_o < peak.f_o);
    }

    #[test]
    fn doppler_limit_speed_value() {
        assert_relative_eq!(
            doppler_limit_speed(&reference_atom()),
            0.088119786392903003,
            max_relative = 1e-12
        );
    }
}
