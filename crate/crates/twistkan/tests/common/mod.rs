//! Shared helpers for the integration test suite: reference setups,
//! adaptive quadrature, and Richardson-extrapolated derivatives.

// Each test binary compiles its own copy of this module and uses a
// different subset of the helpers.
#![allow(dead_code)]

use twistkan::atomforce::{AtomParams, CouplingParams, RabiScaling};
use twistkan::lgmode::BeamParams;
use twistkan::millikan::DropletConfig;

/// Caesium D2 wavelength used by the reference configuration [m].
pub const REF_WAVELENGTH: f64 = 852.35e-9;
/// Beam waist of the reference configuration [m].
pub const REF_WAIST: f64 = 7.0e-6;
/// Winding number of the reference configuration.
pub const REF_WINDING: i32 = 137;
/// Natural linewidth of the reference two-level atom [rad/s].
pub const REF_GAMMA: f64 = 3.25e7;
/// Mass of the reference atom (caesium-133) [kg].
pub const REF_MASS: f64 = 2.2069e-25;

/// Beam of the reference configuration: l = 137, p = 0 at the caesium
/// D2 line focused to a 7 um waist.
pub fn reference_beam() -> BeamParams {
    BeamParams::new(REF_WAVELENGTH, REF_WAIST, REF_WINDING, 0).unwrap()
}

/// Two-level atom of the reference configuration.
pub fn reference_atom() -> AtomParams {
    AtomParams::new(REF_GAMMA, REF_MASS).unwrap()
}

/// Drive of the reference configuration: detuning -Gamma/2, peak Rabi
/// frequency 4*Gamma interpreted as the on-ring value.
pub fn reference_coupling() -> CouplingParams {
    CouplingParams::new(-0.5 * REF_GAMMA, 4.0 * REF_GAMMA, RabiScaling::Peak).unwrap()
}

/// Charged droplet of the reference configuration: radius 1.070 um,
/// density 1050 kg/m^3, two elementary charges between plates at 50 V
/// over a 6 mm gap, with the default air drag model.
pub fn reference_droplet() -> DropletConfig {
    DropletConfig::new(1.070e-6, 1050.0, 2, 50.0, 6.0e-3).unwrap()
}

/// Smaller droplet used for the drag-coefficient reading: the same
/// 1.070 um figure taken as a diameter (radius 0.535 um).
pub fn half_radius_droplet() -> DropletConfig {
    DropletConfig::new(0.535e-6, 1050.0, 2, 50.0, 6.0e-3).unwrap()
}

// ────────────────────────────────────────────────────────────────────
// Adaptive Simpson quadrature
// ────────────────────────────────────────────────────────────────────

fn simpson_estimate(h: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

/// One interval `[a, b]` with its endpoint/midpoint samples and Simpson
/// estimate, carried through the recursive refinement.
struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    estimate: f64,
}

fn adaptive_step<F: Fn(f64) -> f64>(f: &F, panel: &Panel, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (panel.a + panel.b);
    let lm = 0.5 * (panel.a + m);
    let rm = 0.5 * (m + panel.b);
    let flm = f(lm);
    let frm = f(rm);
    let left = Panel {
        a: panel.a,
        b: m,
        fa: panel.fa,
        fm: flm,
        fb: panel.fm,
        estimate: simpson_estimate(m - panel.a, panel.fa, flm, panel.fm),
    };
    let right = Panel {
        a: m,
        b: panel.b,
        fa: panel.fm,
        fm: frm,
        fb: panel.fb,
        estimate: simpson_estimate(panel.b - m, panel.fm, frm, panel.fb),
    };
    let delta = left.estimate + right.estimate - panel.estimate;
    // Standard adaptive-Simpson acceptance: the pair of half-interval
    // estimates is one order more accurate than the whole-interval one,
    // so delta/15 bounds the remaining error.
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left.estimate + right.estimate + delta / 15.0
    } else {
        adaptive_step(f, &left, 0.5 * tol, depth - 1)
            + adaptive_step(f, &right, 0.5 * tol, depth - 1)
    }
}

/// Integrate `f` over `[a, b]` with adaptive Simpson refinement.
///
/// The interval is pre-split into 64 uniform panels before refinement so
/// that narrow features (a thin high-winding ring occupies a small
/// fraction of the radial domain) cannot hide inside a single coarse
/// error estimate. `tol` is the absolute error target for the total.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    const PANELS: usize = 64;
    const MAX_DEPTH: u32 = 40;
    let width = (b - a) / PANELS as f64;
    let panel_tol = tol / PANELS as f64;
    let mut total = 0.0;
    for i in 0..PANELS {
        let x0 = a + width * i as f64;
        let x1 = a + width * (i + 1) as f64;
        let xm = 0.5 * (x0 + x1);
        let f0 = f(x0);
        let fm = f(xm);
        let f1 = f(x1);
        let panel = Panel {
            a: x0,
            b: x1,
            fa: f0,
            fm,
            fb: f1,
            estimate: simpson_estimate(x1 - x0, f0, fm, f1),
        };
        total += adaptive_step(&f, &panel, panel_tol, MAX_DEPTH);
    }
    total
}

// ────────────────────────────────────────────────────────────────────
// Richardson-extrapolated central differences
// ────────────────────────────────────────────────────────────────────

/// First derivative of `f` at `x` from central differences at steps `h`
/// and `h/2` combined by one Richardson extrapolation (error O(h^4)).
pub fn richardson_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let central = |step: f64| (f(x + step) - f(x - step)) / (2.0 * step);
    (4.0 * central(0.5 * h) - central(h)) / 3.0
}

// ────────────────────────────────────────────────────────────────────
// Mode-field oracles
// ────────────────────────────────────────────────────────────────────

/// Mode power in waist units, `integral of f^2 2 pi rho d rho` with
/// `rho = r / w0`, evaluated at height `z`. The amplitude convention
/// makes this one at every height.
pub fn mode_power(beam: &BeamParams, z: f64) -> f64 {
    let w0 = beam.waist_w0;
    let l_abs = beam.winding_l.unsigned_abs() as f64;
    let p = beam.radial_p as f64;
    // The outermost radial lobe sits near width_ratio * sqrt(|l|/2 + 2p),
    // with a Gaussian tail; twelve extra scaled widths make the truncated
    // tail negligible at the 1e-6 level even for l = 137, p = 3.
    let width_ratio = beam.beam_width(z) / w0;
    let rho_max = width_ratio * ((l_abs / 2.0 + 2.0 * p + 2.0).sqrt() + 12.0);
    integrate_adaptive(
        |rho| {
            let f = twistkan::lgmode::mode_amplitude(beam, rho * w0, z).unwrap();
            f * f * std::f64::consts::TAU * rho
        },
        0.0,
        rho_max,
        1e-8,
    )
}

/// Finite-difference gradient of the mode phase at a point, using
/// Richardson extrapolation radially and axially. The azimuthal
/// dependence is linear, so a plain central difference is already exact
/// there. Returns `(radial, azimuthal, axial)` in rad/m.
pub fn fd_phase_gradient(beam: &BeamParams, r: f64, phi: f64, z: f64) -> (f64, f64, f64) {
    use twistkan::geometry::CylPoint;
    use twistkan::lgmode::mode_phase;
    let h_r = 1e-4 * beam.waist_w0;
    let h_phi = 1e-5;
    let h_z = 1e-6 * beam.rayleigh_zr();
    let phase = |rr: f64, pp: f64, zz: f64| mode_phase(beam, &CylPoint::new(rr, pp, zz).unwrap());
    let radial = richardson_derivative(|x| phase(x, phi, z), r, h_r);
    let azimuthal = (phase(r, phi + h_phi, z) - phase(r, phi - h_phi, z)) / (2.0 * h_phi) / r;
    let axial = richardson_derivative(|x| phase(r, phi, x), z, h_z);
    (radial, azimuthal, axial)
}
