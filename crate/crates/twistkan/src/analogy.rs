//! Quantitative mapping between the on-ring atom force balance and the
//! Millikan droplet balance: effective mass, charge, and field, plus the
//! paired force ratios of the two systems.

use crate::atomforce::{axial_decomposition, AtomParams, CouplingParams};
use crate::constants::{E_CHARGE, G_ACCEL, HBAR};
use crate::error::Result;
use crate::lgmode::BeamParams;
use crate::millikan::{drag_coefficient, electric_force, terminal_velocity, weight, DropletConfig};

/// The droplet-language parameters that reproduce the atom's force balance.
///
/// The mapping holds modulo the shared line-shape factor: each atom force
/// carries the same Lorentzian weight, which cancels from every ratio, so
/// the effective parameters are defined from the unweighted force scales.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveParameters {
    /// Mass whose weight equals the unweighted light push: `hbar k gamma / g`, kg.
    pub mass: f64,
    /// Quantized charge `|l| e`, C.
    pub charge: f64,
    /// Number of elementary charges, exactly `|l|`.
    pub charge_multiple: u32,
    /// Field strength that closes the mapping: `hbar gamma / (zR e)`, V/m.
    pub field: f64,
}

/// Computes the effective Millikan parameters of an atom in a twisted beam.
pub fn effective_parameters(beam: &BeamParams, atom: &AtomParams) -> EffectiveParameters {
    let charge_multiple = beam.winding_l.unsigned_abs();
    EffectiveParameters {
        mass: HBAR * beam.wavenumber_k() * atom.gamma / G_ACCEL,
        charge: charge_multiple as f64 * E_CHARGE,
        charge_multiple,
        field: HBAR * atom.gamma / (beam.rayleigh_zr() * E_CHARGE),
    }
}

/// Side-by-side force balances of the two systems.
///
/// Pairing: weight with the constant light push, electrostatic lift with the
/// twist-induced reduction, and drag with the velocity damping. The atom's
/// damping force is quoted at the reference speed `v_ref`; the droplet's at
/// its terminal velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalogyReport {
    /// Reference atomic speed for the damping-force row, m/s.
    pub v_ref: f64,
    /// Constant light push `f_o`, N.
    pub atom_constant: f64,
    /// Twist-induced force reduction `f_l`, N.
    pub atom_quantized: f64,
    /// Damping force magnitude `|a| v_ref`, N.
    pub atom_damping_force: f64,
    /// Droplet weight `W`, N.
    pub millikan_constant: f64,
    /// Electrostatic lift `F_el`, N.
    pub millikan_quantized: f64,
    /// Drag force at terminal velocity `K_d v_t`, N.
    pub millikan_damping_force: f64,
    /// Droplet terminal velocity, m/s.
    pub terminal_velocity: f64,
    /// `f_l / f_o`; equals `|l| / (2 k zR)` independent of the coupling.
    pub atom_ratio_quantized: f64,
    /// `F_el / W` for the droplet.
    pub millikan_ratio_quantized: f64,
    /// `|a| v_ref / f_o` for the atom.
    pub atom_ratio_damping: f64,
    /// `K_d v_t / W` for the droplet.
    pub millikan_ratio_damping: f64,
    /// Effective droplet-language parameters of the atom.
    pub effective: EffectiveParameters,
}

/// Builds the full comparison between an atom configuration and a droplet
/// configuration at a reference atomic speed.
pub fn compare(
    beam: &BeamParams,
    atom: &AtomParams,
    coupling: &CouplingParams,
    droplet: &DropletConfig,
    v_ref: f64,
) -> Result<AnalogyReport> {
    let decomposition = axial_decomposition(beam, atom, coupling)?;
    let w = weight(droplet);
    let f_el = electric_force(droplet);
    let k_d = drag_coefficient(droplet);
    let v_t = terminal_velocity(droplet)?;

    Ok(AnalogyReport {
        v_ref,
        atom_constant: decomposition.f_o,
        atom_quantized: decomposition.f_l,
        atom_damping_force: decomposition.damping_a.abs() * v_ref,
        millikan_constant: w,
        millikan_quantized: f_el,
        millikan_damping_force: k_d * v_t,
        terminal_velocity: v_t,
        atom_ratio_quantized: decomposition.f_l / decomposition.f_o,
        millikan_ratio_quantized: f_el / w,
        atom_ratio_damping: decomposition.damping_a.abs() * v_ref / decomposition.f_o,
        millikan_ratio_damping: k_d * v_t / w,
        effective: effective_parameters(beam, atom),
    })
}
