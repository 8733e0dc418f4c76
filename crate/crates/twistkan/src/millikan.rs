//! Force balance on a charged droplet between capacitor plates: weight,
//! quantized electrostatic lift, and slip-corrected Stokes drag.

use crate::constants::{E_CHARGE, G_ACCEL};
use crate::error::{Error, Result};

/// Dynamic viscosity of air at room temperature, Pa s.
pub const AIR_VISCOSITY: f64 = 1.81e-5;

/// Slip-correction constant for air, Pa m: the drag on droplets comparable
/// to the mean free path is reduced by `1 / (1 + b / (P r))`.
pub const SLIP_CONSTANT_B: f64 = 8.2e-3;

/// Standard atmospheric pressure, Pa.
pub const ATM_PRESSURE: f64 = 101325.0;

/// A charged droplet in a vertical capacitor field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DropletConfig {
    /// Droplet radius, m.
    pub radius: f64,
    /// Droplet mass density, kg/m^3.
    pub density: f64,
    /// Number of elementary charges on the droplet.
    pub charge_n: u32,
    /// Potential difference across the plates, V.
    pub field_volt: f64,
    /// Plate separation, m.
    pub field_gap: f64,
    /// Dynamic viscosity of the surrounding gas, Pa s.
    pub viscosity: f64,
    /// Slip-correction constant of the gas, Pa m.
    pub slip_b: f64,
    /// Gas pressure, Pa.
    pub pressure: f64,
}

impl DropletConfig {
    /// Builds a droplet with the standard air drag constants.
    pub fn new(
        radius: f64,
        density: f64,
        charge_n: u32,
        field_volt: f64,
        field_gap: f64,
    ) -> Result<Self> {
        DropletConfig {
            radius,
            density,
            charge_n,
            field_volt,
            field_gap,
            viscosity: AIR_VISCOSITY,
            slip_b: SLIP_CONSTANT_B,
            pressure: ATM_PRESSURE,
        }
        .validated()
    }

    /// Replaces the drag environment (viscosity, slip constant, pressure).
    pub fn with_drag(mut self, viscosity: f64, slip_b: f64, pressure: f64) -> Result<Self> {
        self.viscosity = viscosity;
        self.slip_b = slip_b;
        self.pressure = pressure;
        self.validated()
    }

    fn validated(self) -> Result<Self> {
        let positive = [
            (self.radius, "radius"),
            (self.density, "density"),
            (self.field_gap, "plate gap"),
            (self.viscosity, "viscosity"),
            (self.pressure, "pressure"),
        ];
        for (value, name) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::Domain(format!("{name} must be positive, got {value}")));
            }
        }
        if !self.field_volt.is_finite() || self.field_volt < 0.0 {
            return Err(Error::Domain(format!(
                "plate voltage must be non-negative, got {}",
                self.field_volt
            )));
        }
        if !self.slip_b.is_finite() || self.slip_b < 0.0 {
            return Err(Error::Domain(format!(
                "slip constant must be non-negative, got {}",
                self.slip_b
            )));
        }
        Ok(self)
    }

    /// Electric field between the plates, V/m.
    pub fn electric_field(&self) -> f64 {
        self.field_volt / self.field_gap
    }

    /// Droplet mass `(4/3) pi r^3 rho`, kg.
    pub fn mass(&self) -> f64 {
        4.0 / 3.0 * std::f64::consts::PI * self.radius.powi(3) * self.density
    }
}

/// Gravitational force on the droplet `m g`, N. Positive downward.
pub fn weight(cfg: &DropletConfig) -> f64 {
    cfg.mass() * G_ACCEL
}

/// Electrostatic force `n e V / d`, N. Quantized in the charge number;
/// oriented against the weight.
pub fn electric_force(cfg: &DropletConfig) -> f64 {
    cfg.charge_n as f64 * E_CHARGE * cfg.electric_field()
}

/// Slip-corrected Stokes drag coefficient
/// `K_d = 6 pi eta r / (1 + b / (P r))`, kg/s.
pub fn drag_coefficient(cfg: &DropletConfig) -> f64 {
    6.0 * std::f64::consts::PI * cfg.viscosity * cfg.radius
        / (1.0 + cfg.slip_b / (cfg.pressure * cfg.radius))
}

/// Net downward force on a droplet falling at speed `v`:
/// `W - F_el - K_d v`, N.
pub fn net_force(cfg: &DropletConfig, v: f64) -> f64 {
    weight(cfg) - electric_force(cfg) - drag_coefficient(cfg) * v
}

/// Steady fall speed at which the net force vanishes, m/s. Signed: negative
/// means the electric lift exceeds the weight and the droplet drifts upward.
pub fn terminal_velocity(cfg: &DropletConfig) -> Result<f64> {
    let drag = drag_coefficient(cfg);
    if drag == 0.0 {
        return Err(Error::Domain(
            "drag coefficient is zero; no finite terminal velocity".into(),
        ));
    }
    Ok((weight(cfg) - electric_force(cfg)) / drag)
}
