//! One-dimensional axial dynamics: force models behind a common trait, a
//! name-based model registry, an explicit RK4 integrator, and a bisection
//! solver for force-balance speeds.

use crate::atomforce::{
    axial_decomposition, axial_force_large_l, AtomParams, CouplingParams, ForceDecomposition,
};
use crate::error::{Error, Result};
use crate::lgmode::BeamParams;
use crate::millikan::{drag_coefficient, net_force, DropletConfig};

/// Instantaneous state of the integrated motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryState {
    /// Time, s.
    pub t: f64,
    /// Axial position, m.
    pub z: f64,
    /// Axial velocity, m/s.
    pub v: f64,
}

/// A one-dimensional force law `F(v)` together with the inertia it acts on.
///
/// Implementations are registered by name and selected at run time, so new
/// force laws can be added without touching the integrator or the callers.
pub trait ForceModel {
    /// Registry name of this model.
    fn name(&self) -> &'static str;

    /// Inertial mass of the moving object, kg.
    fn mass(&self) -> f64;

    /// Net axial force at axial velocity `v`, N.
    fn force(&self, v: f64) -> Result<f64>;

    /// Magnitude of the velocity-damping slope near equilibrium, kg/s.
    ///
    /// Used to validate explicit time steps; return 0.0 when the model has
    /// no damping and any step size is stable.
    fn damping_scale(&self) -> f64;
}

/// Registry name of the full Lorentzian axial force on the atom.
pub const ATOM_FULL: &str = "atom_full";
/// Registry name of the linearized (constant + damping) atom force.
pub const ATOM_LINEAR: &str = "atom_linear";
/// Registry name of the falling-droplet force balance.
pub const DROPLET: &str = "droplet";

/// Beam, atom, and coupling parameters needed by the atom-side models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomSide {
    pub beam: BeamParams,
    pub atom: AtomParams,
    pub coupling: CouplingParams,
}

/// Parameter bundle the model builders draw from; leave a side `None` when
/// the corresponding sections are not configured.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModelInputs {
    pub atom: Option<AtomSide>,
    pub droplet: Option<DropletConfig>,
}

/// Full velocity-dependent light force on the ring-guided atom.
pub struct AtomFullModel {
    beam: BeamParams,
    atom: AtomParams,
    coupling: CouplingParams,
    damping_abs: f64,
}

impl AtomFullModel {
    pub fn new(beam: BeamParams, atom: AtomParams, coupling: CouplingParams) -> Result<Self> {
        let decomposition = axial_decomposition(&beam, &atom, &coupling)?;
        Ok(Self {
            beam,
            atom,
            coupling,
            damping_abs: decomposition.damping_a.abs(),
        })
    }
}

impl ForceModel for AtomFullModel {
    fn name(&self) -> &'static str {
        ATOM_FULL
    }

    fn mass(&self) -> f64 {
        self.atom.mass
    }

    fn force(&self, v: f64) -> Result<f64> {
        axial_force_large_l(&self.beam, &self.atom, &self.coupling, v)
    }

    fn damping_scale(&self) -> f64 {
        self.damping_abs
    }
}

/// Linearization of the atom force about zero velocity.
pub struct AtomLinearModel {
    decomposition: ForceDecomposition,
    mass: f64,
}

impl AtomLinearModel {
    pub fn new(beam: BeamParams, atom: AtomParams, coupling: CouplingParams) -> Result<Self> {
        Ok(Self {
            decomposition: axial_decomposition(&beam, &atom, &coupling)?,
            mass: atom.mass,
        })
    }

    /// The constant-plus-damping force decomposition behind this model.
    pub fn decomposition(&self) -> &ForceDecomposition {
        &self.decomposition
    }
}

impl ForceModel for AtomLinearModel {
    fn name(&self) -> &'static str {
        ATOM_LINEAR
    }

    fn mass(&self) -> f64 {
        self.mass
    }

    fn force(&self, v: f64) -> Result<f64> {
        Ok(self.decomposition.linear_force(v))
    }

    fn damping_scale(&self) -> f64 {
        self.decomposition.damping_a.abs()
    }
}

/// Weight, electrostatic lift, and Stokes drag on the charged droplet.
pub struct DropletModel {
    config: DropletConfig,
    drag: f64,
}

impl DropletModel {
    pub fn new(config: DropletConfig) -> Self {
        let drag = drag_coefficient(&config);
        Self { config, drag }
    }
}

impl ForceModel for DropletModel {
    fn name(&self) -> &'static str {
        DROPLET
    }

    fn mass(&self) -> f64 {
        self.config.mass()
    }

    fn force(&self, v: f64) -> Result<f64> {
        Ok(net_force(&self.config, v))
    }

    fn damping_scale(&self) -> f64 {
        self.drag
    }
}

type ModelBuilder = fn(&ModelInputs) -> Result<Box<dyn ForceModel>>;

fn build_atom_full(inputs: &ModelInputs) -> Result<Box<dyn ForceModel>> {
    let side = inputs.atom.as_ref().ok_or(Error::MissingSection("atom"))?;
    Ok(Box::new(AtomFullModel::new(
        side.beam,
        side.atom,
        side.coupling,
    )?))
}

fn build_atom_linear(inputs: &ModelInputs) -> Result<Box<dyn ForceModel>> {
    let side = inputs.atom.as_ref().ok_or(Error::MissingSection("atom"))?;
    Ok(Box::new(AtomLinearModel::new(
        side.beam,
        side.atom,
        side.coupling,
    )?))
}

fn build_droplet(inputs: &ModelInputs) -> Result<Box<dyn ForceModel>> {
    let config = inputs
        .droplet
        .as_ref()
        .ok_or(Error::MissingSection("droplet"))?;
    Ok(Box::new(DropletModel::new(*config)))
}

const MODEL_REGISTRY: &[(&str, ModelBuilder)] = &[
    (ATOM_FULL, build_atom_full),
    (ATOM_LINEAR, build_atom_linear),
    (DROPLET, build_droplet),
];

/// Names of all registered force models, in registry order.
pub fn model_names() -> Vec<&'static str> {
    MODEL_REGISTRY.iter().map(|(name, _)| *name).collect()
}

/// Builds the force model registered under `name` from the supplied inputs.
pub fn build_model(name: &str, inputs: &ModelInputs) -> Result<Box<dyn ForceModel>> {
    for (registered, builder) in MODEL_REGISTRY {
        if *registered == name {
            return builder(inputs);
        }
    }
    Err(Error::UnknownName {
        given: name.to_string(),
        known: model_names(),
    })
}

/// Validated time-stepping plan for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    /// Time step, s.
    pub dt: f64,
    /// Total integration time, s (rounded up to a whole number of steps).
    pub t_end: f64,
    /// Record every this-many steps (the final step is always recorded).
    pub record_stride: usize,
}

/// Safety factor applied to the damping time scale when validating `dt`.
const STABILITY_MARGIN: f64 = 0.1;

impl IntegratorConfig {
    /// Validates the plan against the model's damping time scale.
    ///
    /// Rejects `dt >= 0.1 * mass / damping` so the explicit stepper stays
    /// far from its stability boundary; a model with zero damping accepts
    /// any positive step.
    pub fn new(
        dt: f64,
        t_end: f64,
        record_stride: usize,
        model: &dyn ForceModel,
    ) -> Result<Self> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::Domain(format!("time step must be positive, got {dt}")));
        }
        if !t_end.is_finite() || t_end <= 0.0 {
            return Err(Error::Domain(format!(
                "integration time must be positive, got {t_end}"
            )));
        }
        if record_stride == 0 {
            return Err(Error::Domain("record stride must be at least 1".into()));
        }
        let damping = model.damping_scale();
        if damping > 0.0 {
            let bound = STABILITY_MARGIN * model.mass() / damping;
            if dt >= bound {
                return Err(Error::UnstableStep { dt, bound });
            }
        }
        Ok(Self {
            dt,
            t_end,
            record_stride,
        })
    }

    /// Number of whole steps covering `t_end` (a near-integer quotient is
    /// rounded instead of ceiled so `1.6e-2 / 1e-5` gives 1600, not 1601).
    pub fn n_steps(&self) -> usize {
        let quotient = self.t_end / self.dt;
        let rounded = quotient.round();
        if (quotient - rounded).abs() <= 1e-9 * rounded.max(1.0) {
            (rounded as usize).max(1)
        } else {
            (quotient.ceil() as usize).max(1)
        }
    }
}

/// Advances one classic fourth-order Runge-Kutta step of
/// `dz/dt = v`, `dv/dt = force(v) / mass`.
pub fn step_rk4<F>(
    state: &TrajectoryState,
    force: F,
    mass: f64,
    dt: f64,
) -> Result<TrajectoryState>
where
    F: Fn(f64) -> Result<f64>,
{
    let accel = |v: f64| -> Result<f64> {
        let f = force(v)?;
        if !f.is_finite() {
            return Err(Error::NonFiniteForce {
                t: state.t,
                z: state.z,
                v,
            });
        }
        Ok(f / mass)
    };

    let k1v = state.v;
    let k1a = accel(k1v)?;
    let k2v = state.v + 0.5 * dt * k1a;
    let k2a = accel(k2v)?;
    let k3v = state.v + 0.5 * dt * k2a;
    let k3a = accel(k3v)?;
    let k4v = state.v + dt * k3a;
    let k4a = accel(k4v)?;

    Ok(TrajectoryState {
        t: state.t + dt,
        z: state.z + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
        v: state.v + dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a),
    })
}

/// Integrates the model from `initial`, recording the initial state, every
/// `record_stride`-th step, and always the final step.
pub fn integrate(
    initial: TrajectoryState,
    cfg: &IntegratorConfig,
    model: &dyn ForceModel,
) -> Result<Vec<TrajectoryState>> {
    if !(initial.t.is_finite() && initial.z.is_finite() && initial.v.is_finite()) {
        return Err(Error::Domain(format!(
            "initial state must be finite, got t = {}, z = {}, v = {}",
            initial.t, initial.z, initial.v
        )));
    }
    let n_steps = cfg.n_steps();
    let mut samples = Vec::with_capacity(n_steps / cfg.record_stride + 2);
    samples.push(initial);
    let mut state = initial;
    for step in 1..=n_steps {
        state = step_rk4(&state, |v| model.force(v), model.mass(), cfg.dt)?;
        if !(state.z.is_finite() && state.v.is_finite()) {
            return Err(Error::NonFiniteForce {
                t: state.t,
                z: state.z,
                v: state.v,
            });
        }
        if step % cfg.record_stride == 0 || step == n_steps {
            samples.push(state);
        }
    }
    Ok(samples)
}

/// Bisection interval width below which the root is considered located, m/s.
const BALANCE_WIDTH: f64 = 1e-9;
/// Residual force threshold, relative to the zero-velocity force magnitude.
const BALANCE_RESIDUAL_REL: f64 = 1e-12;
/// Hard cap on bisection iterations; 200 halvings exhaust f64 resolution
/// from any finite starting bracket.
const BALANCE_MAX_ITER: usize = 200;

/// Finds the velocity at which the model's net force vanishes, by bisection
/// over `bracket`.
///
/// Iterates until the interval is narrower than 1e-9 m/s *and* the residual
/// force is below 1e-12 of the zero-velocity force (or the floating-point
/// grid is exhausted, whichever comes first). Returns
/// [`Error::NoSignChange`] when the bracket endpoints have the same sign.
pub fn equilibrium_velocity(model: &dyn ForceModel, bracket: (f64, f64)) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::Domain(format!(
            "bracket must be finite with lo < hi, got [{lo}, {hi}]"
        )));
    }
    let mut f_lo = model.force(lo)?;
    let f_hi = model.force(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }
    let residual_scale = model.force(0.0)?.abs();

    let mut mid = 0.5 * (lo + hi);
    for _ in 0..BALANCE_MAX_ITER {
        mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // The midpoint collided with an endpoint: f64 exhausted.
            return Ok(mid.clamp(lo, hi));
        }
        let f_mid = model.force(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if hi - lo <= BALANCE_WIDTH && f_mid.abs() <= BALANCE_RESIDUAL_REL * residual_scale {
            return Ok(mid);
        }
    }
    Ok(mid)
}
