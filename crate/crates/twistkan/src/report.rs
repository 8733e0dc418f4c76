//! Output formatting: full-precision numbers, CSV files, and the
//! side-by-side force-balance table.

use crate::analogy::AnalogyReport;
use crate::atomforce::{
    axial_decomposition, axial_reduction_ratio, doppler_limit_speed, AtomParams, CouplingParams,
};
use crate::constants::E_CHARGE;
use crate::error::Result;
use crate::lgmode::{mode_amplitude, ring_radius, BeamParams, IntensityPeak};
use crate::millikan::{
    drag_coefficient, electric_force, terminal_velocity, weight, DropletConfig,
};
use std::io::Write;
use std::path::Path;

/// Formats a float with 17 significant digits, enough to reproduce the bits.
pub fn fmt_full(x: f64) -> String {
    format!("{x:.16e}")
}

/// Formats a slice of floats as full-precision CSV cells.
pub fn float_cells(values: &[f64]) -> Vec<String> {
    values.iter().map(|v| fmt_full(*v)).collect()
}

/// Writes a CSV file with `\n` line endings: optional `#`-prefixed comment
/// lines, one header line, then the rows.
pub fn write_csv(
    path: &Path,
    comments: &[String],
    header: &str,
    rows: &[Vec<String>],
) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut out = std::io::BufWriter::new(file);
    for comment in comments {
        writeln!(out, "# {comment}")?;
    }
    writeln!(out, "{header}")?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()?;
    Ok(())
}

/// Text summary of the beam geometry and its intensity peak.
pub fn beam_summary(beam: &BeamParams) -> String {
    let mut text = String::new();
    text.push_str(&format!(
        "beam: wavelength = {} m, waist = {} m, winding = {}, radial index = {}\n",
        fmt_full(beam.wavelength),
        fmt_full(beam.waist_w0),
        beam.winding_l,
        beam.radial_p
    ));
    text.push_str(&format!("wavenumber k = {} rad/m\n", fmt_full(beam.wavenumber_k())));
    text.push_str(&format!("rayleigh range zR = {} m\n", fmt_full(beam.rayleigh_zr())));
    text.push_str(&format!("k * zR = {}\n", fmt_full(beam.wavenumber_k() * beam.rayleigh_zr())));
    match ring_radius(beam) {
        Ok(IntensityPeak::Ring(r)) => {
            text.push_str(&format!("intensity ring radius = {} m\n", fmt_full(r)));
            if let Ok(f) = mode_amplitude(beam, r, 0.0) {
                text.push_str(&format!("amplitude on the ring at focus = {}\n", fmt_full(f)));
            }
        }
        Ok(IntensityPeak::OnAxis) => text.push_str("intensity peak: on axis\n"),
        Err(_) => text.push_str("intensity peak: no closed form for this radial index\n"),
    }
    text
}

/// Text summary of the on-ring axial force decomposition.
pub fn force_summary(
    beam: &BeamParams,
    atom: &AtomParams,
    coupling: &CouplingParams,
) -> Result<String> {
    let d = axial_decomposition(beam, atom, coupling)?;
    let rho = axial_reduction_ratio(beam);
    let k_eff = beam.wavenumber_k() * (1.0 - rho);
    let mut text = String::new();
    text.push_str(&format!("constant light push f_o = {} N\n", fmt_full(d.f_o)));
    text.push_str(&format!("twist-induced reduction f_l = {} N\n", fmt_full(d.f_l)));
    text.push_str(&format!("reduction ratio f_l / f_o = {}\n", fmt_full(rho)));
    text.push_str(&format!("velocity damping a = {} kg/s\n", fmt_full(d.damping_a)));
    text.push_str(&format!("net force at rest = {} N\n", fmt_full(d.net_const)));
    text.push_str(&format!("effective axial wavenumber k_eff = {} rad/m\n", fmt_full(k_eff)));
    if d.damping_a < 0.0 && d.net_const > 0.0 {
        text.push_str(&format!(
            "linear balance speed = {} m/s\n",
            fmt_full(-d.net_const / d.damping_a)
        ));
    }
    text.push_str(&format!(
        "doppler limit speed = {} m/s\n",
        fmt_full(doppler_limit_speed(atom))
    ));
    Ok(text)
}

/// Text summary of the droplet force balance.
pub fn millikan_summary(droplet: &DropletConfig) -> Result<String> {
    let w = weight(droplet);
    let f_el = electric_force(droplet);
    let k_d = drag_coefficient(droplet);
    let v_t = terminal_velocity(droplet)?;
    let mut text = String::new();
    text.push_str(&format!(
        "droplet: radius = {} m, density = {} kg/m^3, charge = {} e\n",
        fmt_full(droplet.radius),
        fmt_full(droplet.density),
        droplet.charge_n
    ));
    text.push_str(&format!("plate field E = {} V/m\n", fmt_full(droplet.electric_field())));
    text.push_str(&format!("weight W = {} N\n", fmt_full(w)));
    text.push_str(&format!("electrostatic lift F_el = {} N\n", fmt_full(f_el)));
    text.push_str(&format!("drag coefficient K_d = {} kg/s\n", fmt_full(k_d)));
    text.push_str(&format!("terminal velocity v_t = {} m/s\n", fmt_full(v_t)));
    text.push_str(&format!("F_el / W = {}\n", fmt_full(f_el / w)));
    text.push_str(&format!("K_d v_t / W = {}\n", fmt_full(k_d * v_t / w)));
    Ok(text)
}

/// Two decimal places, the precision at which the paired ratios of the two
/// systems are meant to be read.
fn fmt_ratio(x: f64) -> String {
    format!("{x:.2}")
}

fn table_row(label: &str, atom: &str, droplet: &str) -> String {
    format!("  {label:<28}{atom:<26}{droplet}\n")
}

/// Renders the aligned two-column comparison of the atom and droplet force
/// balances, with the paired ratios quoted to two decimals.
pub fn analogy_table(report: &AnalogyReport, droplet: &DropletConfig) -> String {
    let mut text = String::new();
    text.push_str("force balance: ring-guided atom vs. charged droplet\n");
    text.push_str("(scale mapping modulo the shared Lorentzian factor)\n\n");
    text.push_str(&table_row("role", "atom", "droplet"));
    text.push_str(&table_row(
        "constant drive [N]",
        &fmt_full(report.atom_constant),
        &fmt_full(report.millikan_constant),
    ));
    text.push_str(&table_row(
        "quantized opposition [N]",
        &fmt_full(report.atom_quantized),
        &fmt_full(report.millikan_quantized),
    ));
    text.push_str(&table_row(
        "velocity damping [N]",
        &fmt_full(report.atom_damping_force),
        &fmt_full(report.millikan_damping_force),
    ));
    text.push_str(&table_row(
        "ratio quantized/constant",
        &fmt_ratio(report.atom_ratio_quantized),
        &fmt_ratio(report.millikan_ratio_quantized),
    ));
    text.push_str(&table_row(
        "ratio damping/constant",
        &fmt_ratio(report.atom_ratio_damping),
        &fmt_ratio(report.millikan_ratio_damping),
    ));
    text.push('\n');
    text.push_str(&format!(
        "  atom damping quoted at v_ref = {} m/s; droplet drag at terminal speed {} m/s\n",
        report.v_ref,
        fmt_full(report.terminal_velocity)
    ));
    text.push('\n');
    text.push_str("  droplet-language scale of the atom        actual droplet\n");
    text.push_str(&table_row(
        "mass [kg]",
        &fmt_full(report.effective.mass),
        &fmt_full(droplet.mass()),
    ));
    text.push_str(&table_row(
        &format!("charge [C] ({} e vs {} e)", report.effective.charge_multiple, droplet.charge_n),
        &fmt_full(report.effective.charge),
        &fmt_full(droplet.charge_n as f64 * E_CHARGE),
    ));
    text.push_str(&table_row(
        "field [V/m]",
        &fmt_full(report.effective.field),
        &fmt_full(droplet.electric_field()),
    ));
    text
}

/// The comparison as CSV rows under the header `quantity,atom,droplet`.
pub fn analogy_rows(report: &AnalogyReport, droplet: &DropletConfig) -> Vec<Vec<String>> {
    let row = |name: &str, atom: f64, drop: f64| -> Vec<String> {
        vec![name.to_string(), fmt_full(atom), fmt_full(drop)]
    };
    vec![
        row(
            "constant_force_N",
            report.atom_constant,
            report.millikan_constant,
        ),
        row(
            "quantized_force_N",
            report.atom_quantized,
            report.millikan_quantized,
        ),
        row(
            "damping_force_N",
            report.atom_damping_force,
            report.millikan_damping_force,
        ),
        row(
            "ratio_quantized_over_constant",
            report.atom_ratio_quantized,
            report.millikan_ratio_quantized,
        ),
        row(
            "ratio_damping_over_constant",
            report.atom_ratio_damping,
            report.millikan_ratio_damping,
        ),
        row(
            "reference_speed_mps",
            report.v_ref,
            report.terminal_velocity,
        ),
        row("mass_kg", report.effective.mass, droplet.mass()),
        row(
            "charge_C",
            report.effective.charge,
            droplet.charge_n as f64 * E_CHARGE,
        ),
        row(
            "field_V_m",
            report.effective.field,
            droplet.electric_field(),
        ),
    ]
}
