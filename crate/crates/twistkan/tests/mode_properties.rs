//! Property tests for the vortex-mode field: power normalization across
//! windings and radial orders, and the analytic phase gradient checked
//! against high-order finite differences at random points.

mod common;

use common::{fd_phase_gradient, mode_power, reference_beam};
use proptest::prelude::*;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistkan::geometry::{normalize_angle, CylPoint};
use twistkan::lgmode::{mode_amplitude, phase_gradient, ring_radius, BeamParams};

/// Allowed departure of the mode power from one in waist units.
const NORMALIZATION_TOL: f64 = 1e-6;
/// Finite-difference agreement for the phase gradient, relative to the
/// local gradient magnitude (single components pass through zero).
const GRADIENT_FD_TOL: f64 = 1e-6;

#[test]
fn mode_power_is_one_across_windings_orders_and_heights() {
    for l in [0, 1, 5, 50, 137] {
        for p in [0, 1, 3] {
            let beam = BeamParams::new(852.35e-9, 7.0e-6, l, p).unwrap();
            for z in [0.0, beam.rayleigh_zr()] {
                let power = mode_power(&beam, z);
                assert!(
                    (power - 1.0).abs() <= NORMALIZATION_TOL,
                    "l={l} p={p} z={z}: power = {power:.12}"
                );
            }
        }
    }
}

#[test]
fn mode_power_is_height_independent_for_negative_winding() {
    let beam = BeamParams::new(1.064e-6, 5.0e-6, -23, 2).unwrap();
    for z in [-1.7 * beam.rayleigh_zr(), 0.4 * beam.rayleigh_zr()] {
        let power = mode_power(&beam, z);
        assert!(
            (power - 1.0).abs() <= NORMALIZATION_TOL,
            "z={z}: power = {power:.12}"
        );
    }
}

#[test]
fn focal_amplitude_peaks_on_the_analytic_ring() {
    let beam = reference_beam();
    let ring = ring_radius(&beam).unwrap().radius();
    let f_ring = mode_amplitude(&beam, ring, 0.0).unwrap();
    for shift in [-0.02, -0.005, 0.005, 0.02] {
        let f_off = mode_amplitude(&beam, ring * (1.0 + shift), 0.0).unwrap();
        assert!(
            f_off < f_ring,
            "amplitude off the ring ({shift:+}) should drop: {f_off} vs {f_ring}"
        );
    }
}

#[test]
fn phase_gradient_matches_finite_differences_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1209_4207);
    let beams = [
        reference_beam(),
        BeamParams::new(852.35e-9, 7.0e-6, -137, 0).unwrap(),
        BeamParams::new(1.064e-6, 4.0e-6, 12, 2).unwrap(),
        BeamParams::new(6.33e-7, 9.0e-6, 1, 0).unwrap(),
    ];
    for i in 0..100 {
        let beam = &beams[i % beams.len()];
        let w0 = beam.waist_w0;
        let zr = beam.rayleigh_zr();
        let r = rng.random_range(0.2 * w0..3.0 * w0);
        let phi = rng.random_range(0.1..6.1);
        let z = rng.random_range(-2.0 * zr..2.0 * zr);

        let point = CylPoint::new(r, phi, z).unwrap();
        let grad = phase_gradient(beam, &point).unwrap();
        let scale = grad.norm();
        let (fd_r, fd_phi, fd_z) = fd_phase_gradient(beam, r, phi, z);

        assert!(
            (grad.radial - fd_r).abs() <= GRADIENT_FD_TOL * scale,
            "point {i}: radial {0} vs fd {fd_r}",
            grad.radial
        );
        assert!(
            (grad.azimuthal - fd_phi).abs() <= GRADIENT_FD_TOL * scale,
            "point {i}: azimuthal {0} vs fd {fd_phi}",
            grad.azimuthal
        );
        assert!(
            (grad.axial - fd_z).abs() <= GRADIENT_FD_TOL * scale,
            "point {i}: axial {0} vs fd {fd_z}",
            grad.axial
        );
    }
}

#[test]
fn phase_gradient_is_singular_on_axis_only_for_twisted_modes() {
    let twisted = reference_beam();
    let axis = CylPoint::new(0.0, 0.0, 1e-5).unwrap();
    assert!(phase_gradient(&twisted, &axis).is_err());

    let plain = BeamParams::new(852.35e-9, 7.0e-6, 0, 0).unwrap();
    let grad = phase_gradient(&plain, &axis).unwrap();
    assert!(grad.is_finite());
    assert_eq!(grad.azimuthal, 0.0);
}

proptest! {
    /// Any finite angle lands in the canonical interval, and renormalizing
    /// returns the identical bits.
    #[test]
    fn normalize_angle_is_canonical_and_idempotent(phi in -1.0e6..1.0e6f64) {
        let once = normalize_angle(phi).unwrap();
        prop_assert!((0.0..std::f64::consts::TAU).contains(&once));
        let twice = normalize_angle(once).unwrap();
        prop_assert_eq!(once.to_bits(), twice.to_bits());
    }

    /// The amplitude is finite and non-negative for p = 0 modes anywhere
    /// in the physically sampled domain.
    #[test]
    fn single_ring_amplitude_is_finite_and_non_negative(
        r_frac in 0.0..6.0f64,
        z_frac in -3.0..3.0f64,
        l in -150..150i32,
    ) {
        let beam = BeamParams::new(852.35e-9, 7.0e-6, l, 0).unwrap();
        let r = r_frac * beam.waist_w0;
        let z = z_frac * beam.rayleigh_zr();
        let f = mode_amplitude(&beam, r, z).unwrap();
        prop_assert!(f.is_finite());
        prop_assert!(f >= 0.0);
    }
}
