//! Subcommand implementations shared by the binary and the integration
//! tests: each takes a parsed configuration, writes CSV artifacts into an
//! output directory, and returns the text meant for stdout.

use crate::analogy::compare;
use crate::atomforce::{axial_decomposition, axial_force_large_l, doppler_limit_speed};
use crate::config::RunConfig;
use crate::dynamics::{build_model, integrate, IntegratorConfig, TrajectoryState};
use crate::error::{Error, Result};
use crate::lgmode::{phase_gradient, ring_radius, sample_mode, BeamParams, IntensityPeak};
use crate::millikan::{drag_coefficient, electric_force, terminal_velocity, weight};
use crate::report::{
    analogy_rows, analogy_table, beam_summary, float_cells, fmt_full, force_summary,
    millikan_summary, write_csv,
};
use crate::geometry::CylPoint;
use std::path::{Path, PathBuf};

/// Names accepted as the positional subcommand, in help order.
pub const SUBCOMMANDS: [&str; 5] = ["beam", "force", "millikan", "analogy", "trajectory"];

/// What a subcommand produced: the files it wrote and its stdout text.
#[derive(Debug)]
pub struct RunOutcome {
    pub files: Vec<PathBuf>,
    pub stdout: String,
}

/// Dispatches one subcommand by name.
pub fn run_subcommand(
    name: &str,
    config: &RunConfig,
    out_dir: &Path,
    v_ref: f64,
) -> Result<RunOutcome> {
    std::fs::create_dir_all(out_dir)?;
    match name {
        "beam" => run_beam(config, out_dir),
        "force" => run_force(config, out_dir),
        "millikan" => run_millikan(config, out_dir),
        "analogy" => run_analogy(config, out_dir, v_ref),
        "trajectory" => run_trajectory(config, out_dir),
        _ => Err(Error::UnknownName {
            given: name.to_string(),
            known: SUBCOMMANDS.to_vec(),
        }),
    }
}

const SCAN_HEADER: &str = "r_m,z_m,f,intensity,grad_axial,grad_azimuthal,grad_radial";
/// Radial scan resolution: enough to localize the intensity ring to a
/// fraction of a percent of its radius.
const RADIAL_SAMPLES: usize = 600;
const AXIAL_SAMPLES: usize = 400;

/// Radius used to size the scan window and to anchor the axial scan.
fn scan_scale(beam: &BeamParams) -> (f64, f64) {
    match ring_radius(beam) {
        Ok(IntensityPeak::Ring(r)) => (r, r),
        Ok(IntensityPeak::OnAxis) => (beam.waist_w0, 0.0),
        // Higher radial indices have no closed-form peak; cover the
        // classical extent of the mode instead.
        Err(_) => {
            let extent = beam.waist_w0
                * (beam.winding_l.unsigned_abs() as f64 / 2.0 + 2.0 * beam.radial_p as f64 + 1.0)
                    .sqrt()
                    .max(1.0);
            (extent, extent)
        }
    }
}

fn scan_row(beam: &BeamParams, r: f64, z: f64) -> Result<Vec<String>> {
    let point = CylPoint::new(r, 0.0, z)?;
    let sample = sample_mode(beam, &point)?;
    let grad = phase_gradient(beam, &point)?;
    Ok(float_cells(&[
        r,
        z,
        sample.amplitude_f,
        sample.intensity_rel,
        grad.axial,
        grad.azimuthal,
        grad.radial,
    ]))
}

fn run_beam(config: &RunConfig, out_dir: &Path) -> Result<RunOutcome> {
    let beam = config.beam_params()?;
    let (scale, r_anchor) = scan_scale(&beam);
    let r_max = 3.0 * scale;

    // Radial scan across the focal plane. The axis itself is skipped for
    // vortex modes, where the azimuthal phase gradient diverges.
    let first = if beam.winding_l != 0 { 1 } else { 0 };
    let mut radial_rows = Vec::with_capacity(RADIAL_SAMPLES + 1);
    for i in first..=RADIAL_SAMPLES {
        let r = r_max * i as f64 / RADIAL_SAMPLES as f64;
        radial_rows.push(scan_row(&beam, r, 0.0)?);
    }
    let radial_path = out_dir.join("beam_radial.csv");
    write_csv(&radial_path, &[], SCAN_HEADER, &radial_rows)?;

    // Axial scan along the intensity peak, two Rayleigh ranges either side.
    let z_r = beam.rayleigh_zr();
    let mut axial_rows = Vec::with_capacity(AXIAL_SAMPLES + 1);
    for i in 0..=AXIAL_SAMPLES {
        let z = z_r * (4.0 * i as f64 / AXIAL_SAMPLES as f64 - 2.0);
        axial_rows.push(scan_row(&beam, r_anchor, z)?);
    }
    let axial_path = out_dir.join("beam_axial.csv");
    write_csv(&axial_path, &[], SCAN_HEADER, &axial_rows)?;

    Ok(RunOutcome {
        files: vec![radial_path, axial_path],
        stdout: beam_summary(&beam),
    })
}

const FORCE_HEADER: &str = "v_mps,F_full_N,F_linear_N";
const FORCE_SAMPLES: usize = 400;

fn run_force(config: &RunConfig, out_dir: &Path) -> Result<RunOutcome> {
    let beam = config.beam_params()?;
    let atom = config.atom_params()?;
    let coupling = config.coupling_params()?;
    let decomposition = axial_decomposition(&beam, &atom, &coupling)?;

    // Scan out to twice the linear balance speed when one exists, otherwise
    // twice the Doppler-limit speed.
    let v_max = if decomposition.damping_a < 0.0 && decomposition.net_const > 0.0 {
        -2.0 * decomposition.net_const / decomposition.damping_a
    } else {
        2.0 * doppler_limit_speed(&atom)
    };
    let mut rows = Vec::with_capacity(FORCE_SAMPLES + 1);
    for i in 0..=FORCE_SAMPLES {
        let v = v_max * i as f64 / FORCE_SAMPLES as f64;
        let full = axial_force_large_l(&beam, &atom, &coupling, v)?;
        let linear = decomposition.linear_force(v);
        rows.push(float_cells(&[v, full, linear]));
    }
    let path = out_dir.join("force_scan.csv");
    write_csv(&path, &[], FORCE_HEADER, &rows)?;

    Ok(RunOutcome {
        files: vec![path],
        stdout: force_summary(&beam, &atom, &coupling)?,
    })
}

const MILLIKAN_HEADER: &str = "W_N,F_el_N,K_d_kg_s,v_t_mps";

fn run_millikan(config: &RunConfig, out_dir: &Path) -> Result<RunOutcome> {
    let droplet = config.droplet_config()?;
    let rows = vec![float_cells(&[
        weight(&droplet),
        electric_force(&droplet),
        drag_coefficient(&droplet),
        terminal_velocity(&droplet)?,
    ])];
    let path = out_dir.join("millikan.csv");
    write_csv(&path, &[], MILLIKAN_HEADER, &rows)?;

    Ok(RunOutcome {
        files: vec![path],
        stdout: millikan_summary(&droplet)?,
    })
}

const ANALOGY_HEADER: &str = "quantity,atom,droplet";

fn run_analogy(config: &RunConfig, out_dir: &Path, v_ref: f64) -> Result<RunOutcome> {
    if !v_ref.is_finite() || v_ref <= 0.0 {
        return Err(Error::Domain(format!(
            "reference speed must be positive, got {v_ref}"
        )));
    }
    let beam = config.beam_params()?;
    let atom = config.atom_params()?;
    let coupling = config.coupling_params()?;
    let droplet = config.droplet_config()?;
    let report = compare(&beam, &atom, &coupling, &droplet, v_ref)?;

    let path = out_dir.join("analogy.csv");
    write_csv(&path, &[], ANALOGY_HEADER, &analogy_rows(&report, &droplet))?;

    Ok(RunOutcome {
        files: vec![path],
        stdout: analogy_table(&report, &droplet),
    })
}

const TRAJECTORY_HEADER: &str = "t_s,z_m,v_mps,F_N";
/// Beyond this fraction of the Rayleigh range the on-ring force law starts
/// to pick up focusing corrections the atom models neglect.
const Z_VALID_FRACTION: f64 = 0.1;

fn run_trajectory(config: &RunConfig, out_dir: &Path) -> Result<RunOutcome> {
    let sim = config.simulation()?.clone();
    let inputs = config.model_inputs()?;
    let model = build_model(&sim.model, &inputs)?;
    let integrator = IntegratorConfig::new(sim.dt_s, sim.t_end_s, sim.record_stride, model.as_ref())?;
    let initial = TrajectoryState {
        t: 0.0,
        z: sim.z0_m,
        v: sim.v0_mps,
    };
    let samples = integrate(initial, &integrator, model.as_ref())?;

    let mut rows = Vec::with_capacity(samples.len());
    for s in &samples {
        rows.push(float_cells(&[s.t, s.z, s.v, model.force(s.v)?]));
    }

    let mut comments = vec![
        format!("model = {}", model.name()),
        format!("dt_s = {}", fmt_full(sim.dt_s)),
        format!("t_end_s = {}", fmt_full(sim.t_end_s)),
        format!("record_stride = {}", sim.record_stride),
        format!("mass_kg = {}", fmt_full(model.mass())),
        format!("samples = {}", samples.len()),
    ];

    // The atom-side force law is the on-ring, near-focus expression; flag
    // trajectories that wander beyond a tenth of the Rayleigh range.
    let mut warning = None;
    if sim.model.starts_with("atom") {
        let z_r = config.beam_params()?.rayleigh_zr();
        let z_max = samples.iter().map(|s| s.z.abs()).fold(0.0, f64::max);
        if z_max > Z_VALID_FRACTION * z_r {
            let text = format!(
                "warning: |z| reaches {} m, beyond {} of the Rayleigh range {} m; \
                 the axial force law assumes near-focus travel",
                fmt_full(z_max),
                Z_VALID_FRACTION,
                fmt_full(z_r)
            );
            comments.push(text.clone());
            warning = Some(text);
        }
    }

    let path = out_dir.join("trajectory.csv");
    write_csv(&path, &comments, TRAJECTORY_HEADER, &rows)?;

    let last = samples.last().expect("integrate always returns samples");
    let mut stdout = format!(
        "model {}: {} samples over {} s\nfinal state: t = {} s, z = {} m, v = {} m/s\nforce at final speed = {} N\n",
        model.name(),
        samples.len(),
        fmt_full(last.t),
        fmt_full(last.t),
        fmt_full(last.z),
        fmt_full(last.v),
        fmt_full(model.force(last.v)?),
    );
    if let Some(text) = warning {
        stdout.push_str(&text);
        stdout.push('\n');
    }

    Ok(RunOutcome {
        files: vec![path],
        stdout,
    })
}
