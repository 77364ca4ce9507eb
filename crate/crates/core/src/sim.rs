//! Direct (forward) simulation: fixed-step fourth-order Runge-Kutta over the
//! 12-state closure, plus the steady-level trim solver.
//!
//! The integrator is deliberately fixed-step: the algebraic part of the
//! system is triangular, so no DAE machinery is needed, and a fixed step
//! keeps runs bit-reproducible and convergence-order testable.

use crate::aero::{dynamic_pressure, ControlInputs};
use crate::airframe::AirframeParams;
use crate::atmosphere::{self, constants::G0};
use crate::axes::{
    path_angle_residuals, wrap_pi, BodyRates, EulerAngles, GroundPosition, WindState,
};
use crate::dynamics::{evaluate, DerivedOutputs, DynamicsOptions, FlightState};
use crate::error::{Error, Result};
use crate::real::Real;

/// How control samples are interpolated between breakpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Interpolation {
    /// Piecewise-linear between breakpoints.
    #[default]
    Linear,
    /// Hold each sample until the next breakpoint (doublets, steps).
    ZeroOrderHold,
}

/// A sampled control history.
///
/// Breakpoints must start at t = 0 and be strictly increasing. Sampling
/// before the first breakpoint returns the first value; sampling past the
/// last returns the last. A single-sample schedule is constant for all time.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlSchedule<R> {
    samples: Vec<(R, ControlInputs<R>)>,
    pub interpolation: Interpolation,
}

impl<R: Real> ControlSchedule<R> {
    pub fn new(samples: Vec<(R, ControlInputs<R>)>, interpolation: Interpolation) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidSchedule("schedule has no samples".into()));
        }
        if samples[0].0 != R::zero() {
            return Err(Error::InvalidSchedule(format!(
                "schedule must start at t = 0, got t = {}",
                samples[0].0
            )));
        }
        for pair in samples.windows(2) {
            if pair[1].0 <= pair[0].0 {
                return Err(Error::InvalidSchedule(format!(
                    "breakpoints not strictly increasing at t = {}",
                    pair[1].0.as_f64()
                )));
            }
        }
        for (t, controls) in &samples {
            if controls.thrust < R::zero() {
                return Err(Error::InvalidSchedule(format!(
                    "negative thrust {} N at t = {}",
                    controls.thrust.as_f64(),
                    t.as_f64()
                )));
            }
        }
        Ok(Self {
            samples,
            interpolation,
        })
    }

    /// Constant controls for all time.
    pub fn constant(controls: ControlInputs<R>) -> Self {
        Self {
            samples: vec![(R::zero(), controls)],
            interpolation: Interpolation::ZeroOrderHold,
        }
    }

    /// Builds a schedule by sampling a closure on a uniform grid.
    pub fn from_fn(
        t_end: R,
        dt: R,
        interpolation: Interpolation,
        mut f: impl FnMut(R) -> ControlInputs<R>,
    ) -> Result<Self> {
        let n = (t_end / dt).round().as_f64() as usize;
        let samples = (0..=n)
            .map(|i| {
                let t = R::of(i as f64) * dt;
                (t, f(t))
            })
            .collect();
        Self::new(samples, interpolation)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Last breakpoint time.
    pub fn end_time(&self) -> R {
        self.samples.last().expect("validated non-empty").0
    }

    /// Controls at time `t`.
    pub fn sample(&self, t: R) -> ControlInputs<R> {
        let samples = &self.samples;
        if t <= samples[0].0 {
            return samples[0].1;
        }
        let last = samples.len() - 1;
        if t >= samples[last].0 {
            return samples[last].1;
        }
        // Index of the last breakpoint <= t.
        let mut lo = 0;
        let mut hi = last;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if samples[mid].0 <= t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        match self.interpolation {
            Interpolation::ZeroOrderHold => samples[lo].1,
            Interpolation::Linear => {
                let (t0, c0) = samples[lo];
                let (t1, c1) = samples[hi];
                let w = (t - t0) / (t1 - t0);
                ControlInputs {
                    aileron: c0.aileron + (c1.aileron - c0.aileron) * w,
                    elevator: c0.elevator + (c1.elevator - c0.elevator) * w,
                    rudder: c0.rudder + (c1.rudder - c0.rudder) * w,
                    thrust: c0.thrust + (c1.thrust - c0.thrust) * w,
                }
            }
        }
    }
}

/// Fixed-step simulation setup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig<R> {
    /// Integration step (s).
    pub dt: R,
    /// Final time (s).
    pub t_end: R,
    pub initial: FlightState<R>,
    pub options: DynamicsOptions<R>,
    /// Record every n-th step (1 = every step).
    pub decimation: usize,
}

impl<R: Real> SimulationConfig<R> {
    pub fn new(dt: R, t_end: R, initial: FlightState<R>) -> Self {
        Self {
            dt,
            t_end,
            initial,
            options: DynamicsOptions::default(),
            decimation: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dt <= R::zero() {
            return Err(Error::InvalidConfig(format!(
                "dt must be > 0, got {}",
                self.dt
            )));
        }
        if self.t_end < self.dt {
            return Err(Error::InvalidConfig(format!(
                "t_end ({}) must be at least one step ({})",
                self.t_end, self.dt
            )));
        }
        if self.decimation == 0 {
            return Err(Error::InvalidConfig("decimation must be >= 1".into()));
        }
        Ok(())
    }
}

/// One recorded step of a simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow<R> {
    pub t: R,
    pub state: FlightState<R>,
    pub controls: ControlInputs<R>,
    pub outputs: DerivedOutputs<R>,
}

/// Extrema and consistency monitors accumulated over the recorded rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary<R> {
    pub alpha_min: R,
    pub alpha_max: R,
    pub aileron_min: R,
    pub aileron_max: R,
    pub elevator_min: R,
    pub elevator_max: R,
    pub rudder_min: R,
    pub rudder_max: R,
    pub thrust_min: R,
    pub thrust_max: R,
    /// Max of |Fz| / (m g0) over the run.
    pub load_factor_max: R,
    /// Max |residual| of the azimuth path-angle identity.
    pub max_residual_azimuth: R,
    /// Max |residual| of the elevation path-angle identity.
    pub max_residual_elevation: R,
    /// Number of recorded rows with the stall warning raised.
    pub stall_rows: usize,
}

/// A completed simulation: recorded rows plus the run summary.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord<R> {
    pub rows: Vec<TrajectoryRow<R>>,
    pub summary: RunSummary<R>,
}

fn axpy<R: Real>(y: &[R; 12], k: &[R; 12], h: R) -> [R; 12] {
    let mut out = *y;
    for (o, ki) in out.iter_mut().zip(k.iter()) {
        *o += h * *ki;
    }
    out
}

/// One classical fourth-order Runge-Kutta step from `t` to `t + dt`.
///
/// Controls are sampled at t, t + dt/2, and t + dt according to the
/// schedule's interpolation mode. Roll and yaw are re-wrapped to (-pi, pi]
/// after the step.
pub fn rk4_step<R: Real>(
    state: &FlightState<R>,
    t: R,
    dt: R,
    schedule: &ControlSchedule<R>,
    params: &AirframeParams<R>,
    opts: &DynamicsOptions<R>,
) -> Result<FlightState<R>> {
    let half = R::of(0.5);
    let sixth = R::of(1.0 / 6.0);
    let two = R::of(2.0);

    let f = |time: R, y: &[R; 12]| -> Result<[R; 12]> {
        let s = FlightState::from_array(y);
        let controls = schedule.sample(time);
        evaluate(&s, &controls, params, opts)
            .map(|(d, _)| d.to_array())
            .map_err(|e| e.at_time(time.as_f64()))
    };

    let y0 = state.to_array();
    let k1 = f(t, &y0)?;
    let k2 = f(t + half * dt, &axpy(&y0, &k1, half * dt))?;
    let k3 = f(t + half * dt, &axpy(&y0, &k2, half * dt))?;
    let k4 = f(t + dt, &axpy(&y0, &k3, dt))?;

    let mut y1 = y0;
    for i in 0..12 {
        y1[i] = y0[i] + dt * sixth * (k1[i] + two * k2[i] + two * k3[i] + k4[i]);
    }
    let mut next = FlightState::from_array(&y1);
    next.euler.phi = wrap_pi(next.euler.phi);
    next.euler.psi = wrap_pi(next.euler.psi);
    Ok(next)
}

fn summary_seed<R: Real>() -> RunSummary<R> {
    let inf = R::infinity();
    RunSummary {
        alpha_min: inf,
        alpha_max: -inf,
        aileron_min: inf,
        aileron_max: -inf,
        elevator_min: inf,
        elevator_max: -inf,
        rudder_min: inf,
        rudder_max: -inf,
        thrust_min: inf,
        thrust_max: -inf,
        load_factor_max: R::zero(),
        max_residual_azimuth: R::zero(),
        max_residual_elevation: R::zero(),
        stall_rows: 0,
    }
}

fn fold_row<R: Real>(summary: &mut RunSummary<R>, row: &TrajectoryRow<R>, mass: R) {
    let s = summary;
    s.alpha_min = s.alpha_min.min(row.state.wind.alpha);
    s.alpha_max = s.alpha_max.max(row.state.wind.alpha);
    s.aileron_min = s.aileron_min.min(row.controls.aileron);
    s.aileron_max = s.aileron_max.max(row.controls.aileron);
    s.elevator_min = s.elevator_min.min(row.controls.elevator);
    s.elevator_max = s.elevator_max.max(row.controls.elevator);
    s.rudder_min = s.rudder_min.min(row.controls.rudder);
    s.rudder_max = s.rudder_max.max(row.controls.rudder);
    s.thrust_min = s.thrust_min.min(row.controls.thrust);
    s.thrust_max = s.thrust_max.max(row.controls.thrust);
    s.load_factor_max = s
        .load_factor_max
        .max(row.outputs.forces_moments.fz.abs() / (mass * R::of(G0)));
    let (r_az, r_el) =
        path_angle_residuals(&row.state.wind, &row.state.euler, &row.outputs.flight_path);
    s.max_residual_azimuth = s.max_residual_azimuth.max(r_az.abs());
    s.max_residual_elevation = s.max_residual_elevation.max(r_el.abs());
    if row.outputs.stall_warning {
        s.stall_rows += 1;
    }
}

/// Runs a fixed-step simulation and records the trajectory.
///
/// Any singularity or altitude-bound violation aborts with an error carrying
/// the failure time; rows recorded before the failure are discarded with it.
pub fn simulate<R: Real>(
    config: &SimulationConfig<R>,
    schedule: &ControlSchedule<R>,
    params: &AirframeParams<R>,
) -> Result<TrajectoryRecord<R>> {
    config.validate()?;
    let params = params.validate()?;
    if schedule.len() > 1 && schedule.end_time() < config.t_end {
        return Err(Error::InvalidSchedule(format!(
            "schedule ends at {} s but the run lasts {} s",
            schedule.end_time().as_f64(),
            config.t_end.as_f64()
        )));
    }

    let n_steps = (config.t_end / config.dt + R::of(1e-9)).floor().as_f64() as usize;
    let mut rows = Vec::with_capacity(n_steps / config.decimation + 2);
    let mut summary = summary_seed();

    let record = |rows: &mut Vec<TrajectoryRow<R>>,
                  summary: &mut RunSummary<R>,
                  t: R,
                  state: &FlightState<R>|
     -> Result<()> {
        let controls = schedule.sample(t);
        let (_, outputs) = evaluate(state, &controls, &params, &config.options)
            .map_err(|e| e.at_time(t.as_f64()))?;
        let row = TrajectoryRow {
            t,
            state: *state,
            controls,
            outputs,
        };
        fold_row(summary, &row, params.mass);
        rows.push(row);
        Ok(())
    };

    let mut state = config.initial;
    record(&mut rows, &mut summary, R::zero(), &state)?;

    for i in 0..n_steps {
        let t = R::of(i as f64) * config.dt;
        state = rk4_step(&state, t, config.dt, schedule, &params, &config.options)?;
        let step = i + 1;
        if step % config.decimation == 0 {
            let t_next = R::of(step as f64) * config.dt;
            record(&mut rows, &mut summary, t_next, &state)?;
        }
    }

    Ok(TrajectoryRecord { rows, summary })
}

/// A steady-level flight equilibrium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrimSolution<R> {
    /// Trim angle of attack (rad).
    pub alpha: R,
    /// Trim elevator deflection (rad).
    pub elevator: R,
    /// Trim thrust (N).
    pub thrust: R,
    /// Pitch attitude (rad); equals alpha so the flight path is level.
    pub theta: R,
    /// True when the trim angle of attack exceeds the stall-warning
    /// threshold, i.e. the linear lift model is being stretched.
    pub stall_warning: bool,
}

impl<R: Real> TrimSolution<R> {
    /// The control inputs of this equilibrium.
    pub fn controls(&self) -> ControlInputs<R> {
        ControlInputs::new(R::zero(), self.elevator, R::zero(), self.thrust)
    }

    /// The flight state of this equilibrium at airspeed `v` and altitude `h`.
    pub fn state(&self, v: R, h: R, params: &AirframeParams<R>) -> FlightState<R> {
        FlightState {
            wind: WindState::new(v, self.alpha, R::zero()),
            rates: BodyRates::zero(),
            euler: EulerAngles::new(R::zero(), self.theta, R::zero()),
            position: GroundPosition::new(R::zero(), R::zero(), params.h_ini - h),
        }
    }
}

fn trim_elevator<R: Real>(alpha: R, params: &AirframeParams<R>) -> Result<R> {
    let sd = &params.derivatives;
    if sd.c_m_delta_m == R::zero() {
        return Err(Error::SingularElevator);
    }
    // Zero pitch moment with zero pitch rate.
    Ok(-(sd.c_m0 + sd.c_m_alpha * alpha) / sd.c_m_delta_m)
}

/// Closed-form trim estimate from the idealized force balances
/// T = qbar S C_D and m g0 = qbar S C_L.
///
/// Exact when the trim angle of attack is zero; otherwise it ignores the
/// vertical thrust component and serves as the seed for
/// [`trim_steady_level`].
pub fn trim_estimate<R: Real>(v: R, h: R, params: &AirframeParams<R>) -> Result<TrimSolution<R>> {
    if v < R::of(crate::axes::DEFAULT_V_MIN) {
        return Err(Error::HoverSingularity {
            airspeed: v.as_f64(),
            v_min: crate::axes::DEFAULT_V_MIN,
        });
    }
    let fc = &params.force_constants;
    if fc.c_l_alpha == R::zero() {
        return Err(Error::UnattainableTrim(
            "zero lift-curve slope: angle of attack cannot set the lift".into(),
        ));
    }
    let qbar = dynamic_pressure(atmosphere::density(h)?, v);
    let qs = qbar * params.wing_area;
    let lift = params.mass * R::of(G0) / qs;
    let alpha = (lift - fc.c_l0) / fc.c_l_alpha;
    let drag = fc.c_d0 + fc.k_cd * lift * lift;
    Ok(TrimSolution {
        alpha,
        elevator: trim_elevator(alpha, params)?,
        thrust: qs * drag,
        theta: alpha,
        stall_warning: alpha > params.alpha_warn,
    })
}

/// Solves the steady-level equilibrium at airspeed `v` (m/s) and altitude
/// `h` (m).
///
/// With pitch attitude equal to the angle of attack (level flight path),
/// zero sideslip, zero bank, and zero rates, the longitudinal balance
/// reduces to one equation in alpha:
///
/// ```text
/// qbar S C_L(alpha) + qbar S C_D(alpha) tan(alpha) = m g0
/// ```
///
/// solved by Newton from the closed-form estimate; thrust then follows as
/// qbar S C_D / cos(alpha) and the elevator cancels the pitch moment. The
/// returned solution is a fixed point of the full state derivative (only
/// the ground position advances).
pub fn trim_steady_level<R: Real>(
    v: R,
    h: R,
    params: &AirframeParams<R>,
) -> Result<TrimSolution<R>> {
    let seed = trim_estimate(v, h, params)?;
    let fc = &params.force_constants;
    let qbar = dynamic_pressure(atmosphere::density(h)?, v);
    let qs = qbar * params.wing_area;
    let weight = params.mass * R::of(G0);

    let alpha_limit = R::of(1.2);
    let mut alpha = seed.alpha;
    let mut converged = false;
    for _ in 0..50 {
        let lift = fc.c_l0 + fc.c_l_alpha * alpha;
        let drag = fc.c_d0 + fc.k_cd * lift * lift;
        let residual = qs * (lift + drag * alpha.tan()) - weight;
        if residual.abs() <= R::of(1e-12) * weight.max(qs) {
            converged = true;
            break;
        }
        let cos_a = alpha.cos();
        let slope = qs
            * (fc.c_l_alpha
                + R::of(2.0) * fc.k_cd * lift * fc.c_l_alpha * alpha.tan()
                + drag / (cos_a * cos_a));
        if slope == R::zero() {
            break;
        }
        alpha -= residual / slope;
        if alpha.abs() > alpha_limit {
            return Err(Error::UnattainableTrim(format!(
                "required angle of attack {} rad is outside the linear model",
                alpha.as_f64()
            )));
        }
    }
    if !converged {
        return Err(Error::UnattainableTrim(
            "longitudinal balance did not converge".into(),
        ));
    }

    let lift = fc.c_l0 + fc.c_l_alpha * alpha;
    let drag = fc.c_d0 + fc.k_cd * lift * lift;
    Ok(TrimSolution {
        alpha,
        elevator: trim_elevator(alpha, params)?,
        thrust: qs * drag / alpha.cos(),
        theta: alpha,
        stall_warning: alpha > params.alpha_warn,
    })
}
