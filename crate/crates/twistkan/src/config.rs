//! INI-style run configuration: parsing with line-accurate errors, a
//! canonical renderer whose output parses back bit-identically, and typed
//! accessors that convert the file's units into SI parameter structs.
//!
//! The file keeps the units people quote (nm, um, mm, multiples of the
//! linewidth); conversion to SI happens only in the accessors, so a parsed
//! config can be re-rendered without any unit round-off.

use crate::atomforce::{AtomParams, CouplingParams, RabiScaling};
use crate::dynamics::{model_names, AtomSide, ModelInputs};
use crate::error::{ConfigError, Error, Result};
use crate::lgmode::BeamParams;
use crate::millikan::{DropletConfig, AIR_VISCOSITY, ATM_PRESSURE, SLIP_CONSTANT_B};

/// `[beam]` section: mode geometry in quoted units.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamSection {
    /// Vacuum wavelength, nm.
    pub wavelength_nm: f64,
    /// Waist radius at focus, um.
    pub waist_um: f64,
    /// Winding number (sign sets the twist handedness).
    pub winding_l: i32,
    /// Radial mode index.
    pub radial_p: u32,
}

/// `[atom]` section.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomSection {
    /// Natural linewidth, rad/s.
    pub gamma_rad_s: f64,
    /// Atomic mass, kg.
    pub mass_kg: f64,
}

/// `[coupling]` section: laser drive quoted in linewidth units.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingSection {
    /// Detuning at rest divided by the linewidth.
    pub detuning_over_gamma: f64,
    /// Rabi frequency divided by the linewidth.
    pub rabi_over_gamma: f64,
    /// Spatial convention for the local Rabi frequency.
    pub rabi_scaling: RabiScaling,
}

/// Droplet size as quoted in the file: exactly one of radius or diameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DropletSize {
    /// Radius, um.
    RadiusUm(f64),
    /// Diameter, um.
    DiameterUm(f64),
}

/// `[droplet]` section.
#[derive(Debug, Clone, PartialEq)]
pub struct DropletSection {
    /// Size as quoted (radius or diameter), um.
    pub size: DropletSize,
    /// Droplet density, kg/m^3.
    pub density_kg_m3: f64,
    /// Number of elementary charges.
    pub charge_n: u32,
}

/// `[field]` section: capacitor plates. Absent section means plates off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSection {
    /// Plate voltage, V.
    pub volt_v: f64,
    /// Plate gap, mm.
    pub gap_mm: f64,
}

/// `[drag]` section: gas environment. Absent keys fall back to air at
/// atmospheric pressure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DragSection {
    /// Dynamic viscosity, Pa*s.
    pub viscosity_pa_s: f64,
    /// Slip-correction constant, Pa*m.
    pub slip_b_pa_m: f64,
    /// Gas pressure, Pa.
    pub pressure_pa: f64,
}

/// `[simulation]` section: force model and time stepping.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSection {
    /// Registered force-model name.
    pub model: String,
    /// Time step, s.
    pub dt_s: f64,
    /// Total integration time, s.
    pub t_end_s: f64,
    /// Record every this-many steps.
    pub record_stride: usize,
    /// Initial axial velocity, m/s.
    pub v0_mps: f64,
    /// Initial axial position, m (defaults to 0).
    pub z0_m: f64,
}

/// A parsed run configuration; sections a file omits stay `None`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub beam: Option<BeamSection>,
    pub atom: Option<AtomSection>,
    pub coupling: Option<CouplingSection>,
    pub droplet: Option<DropletSection>,
    pub field: Option<FieldSection>,
    pub drag: Option<DragSection>,
    pub simulation: Option<SimulationSection>,
}

const SECTION_NAMES: [&str; 7] = [
    "beam",
    "atom",
    "coupling",
    "droplet",
    "field",
    "drag",
    "simulation",
];

/// Plate gap substituted when the `[field]` section is absent; it cancels
/// out because the voltage is zero in that case.
const FIELD_OFF_GAP_MM: f64 = 10.0;

fn config_err(line: usize, key: Option<&str>, message: impl Into<String>) -> Error {
    Error::Config(ConfigError {
        line,
        key: key.map(str::to_string),
        message: message.into(),
    })
}

/// One `key = value` occurrence with its source line.
#[derive(Debug)]
struct RawEntry {
    line: usize,
    key: String,
    value: String,
}

/// All entries of one section, plus where the section header sits.
#[derive(Debug)]
struct RawSection {
    name: String,
    header_line: usize,
    entries: Vec<RawEntry>,
}

impl RawSection {
    /// Takes the value of `key`; errors if the key appears twice. Returns
    /// the entry's line alongside the raw value.
    fn take(&mut self, key: &str) -> Result<Option<(usize, String)>> {
        let mut found: Option<(usize, String)> = None;
        for entry in &self.entries {
            if entry.key == key {
                if found.is_some() {
                    return Err(config_err(
                        entry.line,
                        Some(key),
                        format!("duplicate key in [{}]", self.name),
                    ));
                }
                found = Some((entry.line, entry.value.clone()));
            }
        }
        Ok(found)
    }

    /// Errors on the first entry whose key this section does not define,
    /// with a unit-suffix hint when the key's stem matches a known key.
    /// Runs before the required-key checks so a typo'd unit suffix reads as
    /// "unknown key, did you mean ..." rather than "missing key".
    fn check_known(&self, known: &[&str]) -> Result<()> {
        for entry in &self.entries {
            if known.contains(&entry.key.as_str()) {
                continue;
            }
            let stem = entry.key.split('_').next().unwrap_or(&entry.key);
            let hint = known
                .iter()
                .find(|k| k.split('_').next() == Some(stem))
                .map(|k| format!(" (did you mean '{k}'? note the unit suffix)"))
                .unwrap_or_default();
            return Err(config_err(
                entry.line,
                Some(&entry.key),
                format!(
                    "unknown key in [{}]{hint}; known keys: {}",
                    self.name,
                    known.join(", ")
                ),
            ));
        }
        Ok(())
    }

    fn missing(&self, key: &str) -> Error {
        config_err(
            self.header_line,
            Some(key),
            format!(
                "section [{}] starting on line {} is missing this required key",
                self.name, self.header_line
            ),
        )
    }

    fn require(&mut self, key: &str) -> Result<(usize, String)> {
        self.take(key)?.ok_or_else(|| self.missing(key))
    }

    fn f64_at(&self, line: usize, key: &str, raw: &str) -> Result<f64> {
        let value: f64 = raw
            .parse()
            .map_err(|_| config_err(line, Some(key), format!("expected a number, got '{raw}'")))?;
        if !value.is_finite() {
            return Err(config_err(line, Some(key), "value must be finite"));
        }
        Ok(value)
    }

    fn f64_required(&mut self, key: &str) -> Result<f64> {
        let (line, raw) = self.require(key)?;
        self.f64_at(line, key, &raw)
    }

    fn f64_positive(&mut self, key: &str) -> Result<f64> {
        let (line, raw) = self.require(key)?;
        let value = self.f64_at(line, key, &raw)?;
        if value <= 0.0 {
            return Err(config_err(line, Some(key), format!("must be positive, got {value}")));
        }
        Ok(value)
    }

    fn f64_non_negative(&mut self, key: &str) -> Result<f64> {
        let (line, raw) = self.require(key)?;
        let value = self.f64_at(line, key, &raw)?;
        if value < 0.0 {
            return Err(config_err(
                line,
                Some(key),
                format!("must be non-negative, got {value}"),
            ));
        }
        Ok(value)
    }

    /// Positive float with a default when the key is absent.
    fn f64_positive_or(&mut self, key: &str, default: f64) -> Result<f64> {
        match self.take(key)? {
            None => Ok(default),
            Some((line, raw)) => {
                let value = self.f64_at(line, key, &raw)?;
                if value <= 0.0 {
                    return Err(config_err(line, Some(key), format!("must be positive, got {value}")));
                }
                Ok(value)
            }
        }
    }

    fn f64_non_negative_or(&mut self, key: &str, default: f64) -> Result<f64> {
        match self.take(key)? {
            None => Ok(default),
            Some((line, raw)) => {
                let value = self.f64_at(line, key, &raw)?;
                if value < 0.0 {
                    return Err(config_err(
                        line,
                        Some(key),
                        format!("must be non-negative, got {value}"),
                    ));
                }
                Ok(value)
            }
        }
    }

    fn f64_finite_or(&mut self, key: &str, default: f64) -> Result<f64> {
        match self.take(key)? {
            None => Ok(default),
            Some((line, raw)) => self.f64_at(line, key, &raw),
        }
    }

    /// Positive float, present or not, for keys that are jointly required.
    fn f64_positive_optional(&mut self, key: &str) -> Result<Option<(usize, f64)>> {
        match self.take(key)? {
            None => Ok(None),
            Some((line, raw)) => {
                let value = self.f64_at(line, key, &raw)?;
                if value <= 0.0 {
                    return Err(config_err(line, Some(key), format!("must be positive, got {value}")));
                }
                Ok(Some((line, value)))
            }
        }
    }

    fn i32_required(&mut self, key: &str) -> Result<i32> {
        let (line, raw) = self.require(key)?;
        raw.parse().map_err(|_| {
            config_err(line, Some(key), format!("expected an integer, got '{raw}'"))
        })
    }

    fn u32_required(&mut self, key: &str) -> Result<u32> {
        let (line, raw) = self.require(key)?;
        raw.parse().map_err(|_| {
            config_err(
                line,
                Some(key),
                format!("expected a non-negative integer, got '{raw}'"),
            )
        })
    }

    fn stride_required(&mut self, key: &str) -> Result<usize> {
        let (line, raw) = self.require(key)?;
        let value: usize = raw.parse().map_err(|_| {
            config_err(
                line,
                Some(key),
                format!("expected a positive integer, got '{raw}'"),
            )
        })?;
        if value == 0 {
            return Err(config_err(line, Some(key), "must be at least 1"));
        }
        Ok(value)
    }
}

fn build_beam(section: &mut RawSection) -> Result<BeamSection> {
    section.check_known(&["wavelength_nm", "waist_um", "winding_l", "radial_p"])?;
    let built = BeamSection {
        wavelength_nm: section.f64_positive("wavelength_nm")?,
        waist_um: section.f64_positive("waist_um")?,
        winding_l: section.i32_required("winding_l")?,
        radial_p: section.u32_required("radial_p")?,
    };
    Ok(built)
}

fn build_atom(section: &mut RawSection) -> Result<AtomSection> {
    section.check_known(&["gamma_rad_s", "mass_kg"])?;
    let built = AtomSection {
        gamma_rad_s: section.f64_positive("gamma_rad_s")?,
        mass_kg: section.f64_positive("mass_kg")?,
    };
    Ok(built)
}

fn build_coupling(section: &mut RawSection) -> Result<CouplingSection> {
    section.check_known(&["detuning_over_gamma", "rabi_over_gamma", "rabi_scaling"])?;
    let detuning_over_gamma = section.f64_required("detuning_over_gamma")?;
    let rabi_over_gamma = section.f64_non_negative("rabi_over_gamma")?;
    let (line, raw) = section.require("rabi_scaling")?;
    let rabi_scaling = match raw.as_str() {
        "peak" => RabiScaling::Peak,
        "mode_profile" => RabiScaling::ModeProfile,
        other => {
            return Err(config_err(
                line,
                Some("rabi_scaling"),
                format!("unknown value '{other}'; expected 'peak' or 'mode_profile'"),
            ))
        }
    };
    Ok(CouplingSection {
        detuning_over_gamma,
        rabi_over_gamma,
        rabi_scaling,
    })
}

fn build_droplet(section: &mut RawSection) -> Result<DropletSection> {
    section.check_known(&["radius_um", "diameter_um", "density_kg_m3", "charge_n"])?;
    let radius = section.f64_positive_optional("radius_um")?;
    let diameter = section.f64_positive_optional("diameter_um")?;
    let size = match (radius, diameter) {
        (Some((_, r)), None) => DropletSize::RadiusUm(r),
        (None, Some((_, d))) => DropletSize::DiameterUm(d),
        (Some(_), Some((line, _))) => {
            return Err(config_err(
                line,
                Some("diameter_um"),
                "specify radius_um or diameter_um, not both",
            ))
        }
        (None, None) => {
            return Err(config_err(
                section.header_line,
                None,
                format!(
                    "section [droplet] starting on line {} needs radius_um or diameter_um",
                    section.header_line
                ),
            ))
        }
    };
    let built = DropletSection {
        size,
        density_kg_m3: section.f64_positive("density_kg_m3")?,
        charge_n: section.u32_required("charge_n")?,
    };
    Ok(built)
}

fn build_field(section: &mut RawSection) -> Result<FieldSection> {
    section.check_known(&["volt_v", "gap_mm"])?;
    let built = FieldSection {
        volt_v: section.f64_non_negative("volt_v")?,
        gap_mm: section.f64_positive("gap_mm")?,
    };
    Ok(built)
}

fn build_drag(section: &mut RawSection) -> Result<DragSection> {
    section.check_known(&["viscosity_pa_s", "slip_b_pa_m", "pressure_pa"])?;
    let built = DragSection {
        viscosity_pa_s: section.f64_positive_or("viscosity_pa_s", AIR_VISCOSITY)?,
        slip_b_pa_m: section.f64_non_negative_or("slip_b_pa_m", SLIP_CONSTANT_B)?,
        pressure_pa: section.f64_positive_or("pressure_pa", ATM_PRESSURE)?,
    };
    Ok(built)
}

fn build_simulation(section: &mut RawSection) -> Result<SimulationSection> {
    section.check_known(&["model", "dt_s", "t_end_s", "record_stride", "v0_mps", "z0_m"])?;
    let (line, model) = section.require("model")?;
    let known = model_names();
    if !known.contains(&model.as_str()) {
        return Err(config_err(
            line,
            Some("model"),
            format!("unknown model '{model}'; expected one of: {}", known.join(", ")),
        ));
    }
    let built = SimulationSection {
        model,
        dt_s: section.f64_positive("dt_s")?,
        t_end_s: section.f64_positive("t_end_s")?,
        record_stride: section.stride_required("record_stride")?,
        v0_mps: section.f64_required("v0_mps")?,
        z0_m: section.f64_finite_or("z0_m", 0.0)?,
    };
    Ok(built)
}

/// Parses configuration text. Lines are 1-based in every error; `#` starts a
/// comment (whole-line or inline); sections may appear in any order but at
/// most once each.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut sections: Vec<RawSection> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let stripped = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let trimmed = stripped.trim();
        if trimmed.is_empty() {
            continue;
        }

        if let Some(rest) = trimmed.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or_else(|| {
                config_err(line_no, None, format!("malformed section header '{trimmed}'"))
            })?;
            if !SECTION_NAMES.contains(&name) {
                return Err(config_err(
                    line_no,
                    Some(name),
                    format!("unknown section; expected one of: {}", SECTION_NAMES.join(", ")),
                ));
            }
            if let Some(previous) = sections.iter().find(|s| s.name == name) {
                return Err(config_err(
                    line_no,
                    Some(name),
                    format!("duplicate section; first defined on line {}", previous.header_line),
                ));
            }
            sections.push(RawSection {
                name: name.to_string(),
                header_line: line_no,
                entries: Vec::new(),
            });
            continue;
        }

        let (key, value) = trimmed.split_once('=').ok_or_else(|| {
            config_err(line_no, None, format!("expected 'key = value', got '{trimmed}'"))
        })?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() {
            return Err(config_err(line_no, None, "empty key before '='"));
        }
        if value.is_empty() {
            return Err(config_err(line_no, Some(key), "empty value after '='"));
        }
        let section = sections.last_mut().ok_or_else(|| {
            config_err(
                line_no,
                Some(key),
                "key appears before any [section] header",
            )
        })?;
        section.entries.push(RawEntry {
            line: line_no,
            key: key.to_string(),
            value: value.to_string(),
        });
    }

    let mut config = RunConfig::default();
    for mut section in sections {
        match section.name.as_str() {
            "beam" => config.beam = Some(build_beam(&mut section)?),
            "atom" => config.atom = Some(build_atom(&mut section)?),
            "coupling" => config.coupling = Some(build_coupling(&mut section)?),
            "droplet" => config.droplet = Some(build_droplet(&mut section)?),
            "field" => config.field = Some(build_field(&mut section)?),
            "drag" => config.drag = Some(build_drag(&mut section)?),
            "simulation" => config.simulation = Some(build_simulation(&mut section)?),
            _ => unreachable!("section names are validated during the scan"),
        }
    }
    Ok(config)
}

/// Reads and parses a configuration file.
pub fn read_config(path: &std::path::Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

/// Formats a float so `str::parse::<f64>` recovers the identical bits:
/// Rust's shortest-round-trip printing, in scientific notation outside a
/// comfortable plain-decimal range.
fn fmt_value(x: f64) -> String {
    let magnitude = x.abs();
    if x == 0.0 || (1e-3..1e7).contains(&magnitude) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Renders a configuration in canonical form: fixed section and key order,
/// shortest-round-trip numbers. `parse_config(render_config(c)) == c`.
pub fn render_config(config: &RunConfig) -> String {
    let mut out = String::new();
    let mut push_section = |header: &str, lines: Vec<String>| {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(header);
        out.push('\n');
        for line in lines {
            out.push_str(&line);
            out.push('\n');
        }
    };

    if let Some(beam) = &config.beam {
        push_section(
            "[beam]",
            vec![
                format!("wavelength_nm = {}", fmt_value(beam.wavelength_nm)),
                format!("waist_um = {}", fmt_value(beam.waist_um)),
                format!("winding_l = {}", beam.winding_l),
                format!("radial_p = {}", beam.radial_p),
            ],
        );
    }
    if let Some(atom) = &config.atom {
        push_section(
            "[atom]",
            vec![
                format!("gamma_rad_s = {}", fmt_value(atom.gamma_rad_s)),
                format!("mass_kg = {}", fmt_value(atom.mass_kg)),
            ],
        );
    }
    if let Some(coupling) = &config.coupling {
        let scaling = match coupling.rabi_scaling {
            RabiScaling::Peak => "peak",
            RabiScaling::ModeProfile => "mode_profile",
        };
        push_section(
            "[coupling]",
            vec![
                format!(
                    "detuning_over_gamma = {}",
                    fmt_value(coupling.detuning_over_gamma)
                ),
                format!("rabi_over_gamma = {}", fmt_value(coupling.rabi_over_gamma)),
                format!("rabi_scaling = {scaling}"),
            ],
        );
    }
    if let Some(droplet) = &config.droplet {
        let size_line = match droplet.size {
            DropletSize::RadiusUm(r) => format!("radius_um = {}", fmt_value(r)),
            DropletSize::DiameterUm(d) => format!("diameter_um = {}", fmt_value(d)),
        };
        push_section(
            "[droplet]",
            vec![
                size_line,
                format!("density_kg_m3 = {}", fmt_value(droplet.density_kg_m3)),
                format!("charge_n = {}", droplet.charge_n),
            ],
        );
    }
    if let Some(field) = &config.field {
        push_section(
            "[field]",
            vec![
                format!("volt_v = {}", fmt_value(field.volt_v)),
                format!("gap_mm = {}", fmt_value(field.gap_mm)),
            ],
        );
    }
    if let Some(drag) = &config.drag {
        push_section(
            "[drag]",
            vec![
                format!("viscosity_pa_s = {}", fmt_value(drag.viscosity_pa_s)),
                format!("slip_b_pa_m = {}", fmt_value(drag.slip_b_pa_m)),
                format!("pressure_pa = {}", fmt_value(drag.pressure_pa)),
            ],
        );
    }
    if let Some(sim) = &config.simulation {
        push_section(
            "[simulation]",
            vec![
                format!("model = {}", sim.model),
                format!("dt_s = {}", fmt_value(sim.dt_s)),
                format!("t_end_s = {}", fmt_value(sim.t_end_s)),
                format!("record_stride = {}", sim.record_stride),
                format!("v0_mps = {}", fmt_value(sim.v0_mps)),
                format!("z0_m = {}", fmt_value(sim.z0_m)),
            ],
        );
    }
    out
}

impl RunConfig {
    /// Beam parameters in SI units.
    pub fn beam_params(&self) -> Result<BeamParams> {
        let beam = self.beam.as_ref().ok_or(Error::MissingSection("beam"))?;
        BeamParams::new(
            beam.wavelength_nm * 1e-9,
            beam.waist_um * 1e-6,
            beam.winding_l,
            beam.radial_p,
        )
    }

    /// Atom parameters in SI units.
    pub fn atom_params(&self) -> Result<AtomParams> {
        let atom = self.atom.as_ref().ok_or(Error::MissingSection("atom"))?;
        AtomParams::new(atom.gamma_rad_s, atom.mass_kg)
    }

    /// Coupling parameters in SI units; needs `[atom]` to scale the
    /// linewidth-relative values.
    pub fn coupling_params(&self) -> Result<CouplingParams> {
        let atom = self.atom.as_ref().ok_or(Error::MissingSection("atom"))?;
        let coupling = self
            .coupling
            .as_ref()
            .ok_or(Error::MissingSection("coupling"))?;
        CouplingParams::new(
            coupling.detuning_over_gamma * atom.gamma_rad_s,
            coupling.rabi_over_gamma * atom.gamma_rad_s,
            coupling.rabi_scaling,
        )
    }

    /// Droplet configuration in SI units, folding in the `[field]` and
    /// `[drag]` sections (plates off and air drag when absent).
    pub fn droplet_config(&self) -> Result<DropletConfig> {
        let droplet = self
            .droplet
            .as_ref()
            .ok_or(Error::MissingSection("droplet"))?;
        let radius = match droplet.size {
            DropletSize::RadiusUm(r) => r * 1e-6,
            DropletSize::DiameterUm(d) => 0.5 * d * 1e-6,
        };
        let (volt, gap_mm) = match &self.field {
            Some(field) => (field.volt_v, field.gap_mm),
            None => (0.0, FIELD_OFF_GAP_MM),
        };
        let config = DropletConfig::new(
            radius,
            droplet.density_kg_m3,
            droplet.charge_n,
            volt,
            gap_mm * 1e-3,
        )?;
        match &self.drag {
            Some(drag) => config.with_drag(drag.viscosity_pa_s, drag.slip_b_pa_m, drag.pressure_pa),
            None => Ok(config),
        }
    }

    /// The `[simulation]` section, required for trajectory runs.
    pub fn simulation(&self) -> Result<&SimulationSection> {
        self.simulation
            .as_ref()
            .ok_or(Error::MissingSection("simulation"))
    }

    /// Bundles whatever model inputs the configured sections support: the
    /// atom side when `[beam]`/`[atom]`/`[coupling]` are all present, the
    /// droplet side when `[droplet]` is.
    pub fn model_inputs(&self) -> Result<ModelInputs> {
        let atom = if self.beam.is_some() && self.atom.is_some() && self.coupling.is_some() {
            Some(AtomSide {
                beam: self.beam_params()?,
                atom: self.atom_params()?,
                coupling: self.coupling_params()?,
            })
        } else {
            None
        };
        let droplet = match &self.droplet {
            Some(_) => Some(self.droplet_config()?),
            None => None,
        };
        Ok(ModelInputs { atom, droplet })
    }
}
