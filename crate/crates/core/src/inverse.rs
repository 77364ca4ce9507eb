//! Inverse (normative) simulation: recover the four control histories from a
//! prescribed trajectory plus one constrained flight variable.
//!
//! The trajectory is differentiated twice by second-order finite
//! differences; each sample then poses a small nonlinear system in the
//! unknown attitude, wind angles, and thrust, with attitude rates
//! approximated by backward differences across already-solved steps. A
//! damped Newton iteration with a central-difference Jacobian solves each
//! step, warm-started from the previous one; the converged moment
//! requirements map to surface deflections through the closed-form
//! coefficient inverses.
//!
//! Trajectory smoothness is the caller's responsibility: the double
//! differentiation amplifies sample noise, and no smoothing is applied.

use crate::aero::{
    aileron_rudder_from_roll_yaw, body_force_coefficients, dynamic_pressure,
    elevator_from_pitch_coefficient, lift_drag_side, ControlInputs, DEFAULT_DEFLECTION_LIMIT,
};
use crate::airframe::AirframeParams;
use crate::atmosphere::{self, constants::G0};
use crate::axes::{
    body_rates_from_euler_rates, flight_path_angles, path_angle_residuals, wrap_pi, BodyRates,
    EulerAngles, EulerRates, FlightPathAngles, GroundPosition, WindState, DEFAULT_V_MIN,
};
use crate::dynamics::{
    auxiliary_moments, linear_accelerations, DynamicsOptions, FlightState, LateralThrustSign,
};
use crate::error::{Error, Result};
use crate::linalg::{solve_dense, Vec3};
use crate::real::Real;
use crate::sim::trim_steady_level;

/// The fourth constrained flight variable, sampled on the trajectory grid.
#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintSeries<R> {
    /// Prescribed sideslip history (coordinated flight is all zeros).
    Sideslip(Vec<R>),
    /// Prescribed bank-angle history.
    Roll(Vec<R>),
}

impl<R> ConstraintSeries<R> {
    fn values(&self) -> &[R] {
        match self {
            ConstraintSeries::Sideslip(v) | ConstraintSeries::Roll(v) => v,
        }
    }
}

/// A desired trajectory: uniformly sampled positions plus the fourth
/// constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySpec<R> {
    times: Vec<R>,
    positions: Vec<GroundPosition<R>>,
    constraint: ConstraintSeries<R>,
    dt: R,
}

impl<R: Real> TrajectorySpec<R> {
    pub fn new(
        times: Vec<R>,
        positions: Vec<GroundPosition<R>>,
        constraint: ConstraintSeries<R>,
    ) -> Result<Self> {
        if times.len() < 5 {
            return Err(Error::TooFewSamples(times.len()));
        }
        if positions.len() != times.len() {
            return Err(Error::InvalidTrajectory(format!(
                "{} times but {} positions",
                times.len(),
                positions.len()
            )));
        }
        if constraint.values().len() != times.len() {
            return Err(Error::InvalidTrajectory(format!(
                "{} times but {} constraint samples",
                times.len(),
                constraint.values().len()
            )));
        }
        let dt0 = times[1] - times[0];
        if dt0 <= R::zero() {
            return Err(Error::InvalidTrajectory(
                "times not strictly increasing".into(),
            ));
        }
        for (index, pair) in times.windows(2).enumerate() {
            let dt = pair[1] - pair[0];
            if ((dt - dt0) / dt0).abs() > R::of(1e-6) {
                return Err(Error::NonUniformSampling {
                    index: index + 1,
                    dt: dt.as_f64(),
                    dt0: dt0.as_f64(),
                });
            }
        }
        Ok(Self {
            times,
            positions,
            constraint,
            dt: dt0,
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn sample_spacing(&self) -> R {
        self.dt
    }

    pub fn times(&self) -> &[R] {
        &self.times
    }

    pub fn positions(&self) -> &[GroundPosition<R>] {
        &self.positions
    }

    pub fn constraint(&self) -> &ConstraintSeries<R> {
        &self.constraint
    }
}

/// Second-order finite-difference first derivative of a uniformly sampled
/// series: central in the interior, one-sided at the ends.
///
/// The one-sided stencils are chosen so their leading truncation error
/// equals the central one (+dt^2/6 f'''), keeping the error envelope
/// continuous through the endpoints. The per-sample step solver is anchored
/// to its own history, so a jump in the target bias at the last sample
/// would otherwise be absorbed into the state and amplified by the rate
/// stencils.
fn fd_first<R: Real>(series: &[R], dt: R) -> Vec<R> {
    let n = series.len();
    let two_dt = R::of(2.0) * dt;
    let mut out = Vec::with_capacity(n);
    out.push(
        (-R::of(2.0) * series[0] + R::of(3.5) * series[1] - R::of(2.0) * series[2]
            + R::of(0.5) * series[3])
            / dt,
    );
    for i in 1..n - 1 {
        out.push((series[i + 1] - series[i - 1]) / two_dt);
    }
    out.push(
        (R::of(2.0) * series[n - 1] - R::of(3.5) * series[n - 2] + R::of(2.0) * series[n - 3]
            - R::of(0.5) * series[n - 4])
            / dt,
    );
    out
}

/// Second-order finite-difference second derivative, same layout and same
/// error-envelope matching (+dt^2/12 f'''') as [`fd_first`].
fn fd_second<R: Real>(series: &[R], dt: R) -> Vec<R> {
    let n = series.len();
    let dt2 = dt * dt;
    let one_sided = |s: [R; 5]| {
        (R::of(3.0) * s[0] - R::of(9.0) * s[1] + R::of(10.0) * s[2] - R::of(5.0) * s[3] + s[4])
            / dt2
    };
    let mut out = Vec::with_capacity(n);
    out.push(one_sided([
        series[0], series[1], series[2], series[3], series[4],
    ]));
    for i in 1..n - 1 {
        out.push((series[i + 1] - R::of(2.0) * series[i] + series[i - 1]) / dt2);
    }
    out.push(one_sided([
        series[n - 1],
        series[n - 2],
        series[n - 3],
        series[n - 4],
        series[n - 5],
    ]));
    out
}

/// Per-sample velocity and acceleration of the trajectory coordinates.
pub fn differentiate_trajectory<R: Real>(spec: &TrajectorySpec<R>) -> Vec<(Vec3<R>, Vec3<R>)> {
    let north: Vec<R> = spec.positions.iter().map(|p| p.north).collect();
    let east: Vec<R> = spec.positions.iter().map(|p| p.east).collect();
    let down: Vec<R> = spec.positions.iter().map(|p| p.down).collect();
    let dt = spec.dt;
    let (vn, ve, vd) = (
        fd_first(&north, dt),
        fd_first(&east, dt),
        fd_first(&down, dt),
    );
    let (an, ae, ad) = (
        fd_second(&north, dt),
        fd_second(&east, dt),
        fd_second(&down, dt),
    );
    (0..spec.len())
        .map(|i| {
            (
                Vec3::new(vn[i], ve[i], vd[i]),
                Vec3::new(an[i], ae[i], ad[i]),
            )
        })
        .collect()
}

/// Kinematic targets one trajectory sample imposes on the flight state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicTargets<R> {
    pub airspeed: R,
    pub airspeed_dot: R,
    pub flight_path: FlightPathAngles<R>,
}

/// Airspeed, its rate, and the flight-path angles implied by one sample's
/// velocity and acceleration.
pub fn kinematic_inversion<R: Real>(
    velocity: &Vec3<R>,
    acceleration: &Vec3<R>,
    v_min: R,
) -> Result<KinematicTargets<R>> {
    let airspeed = velocity.norm();
    let flight_path = flight_path_angles(velocity, airspeed, v_min)?;
    Ok(KinematicTargets {
        airspeed,
        airspeed_dot: velocity.dot(*acceleration) / airspeed,
        flight_path,
    })
}

/// Tuning of the per-step Newton solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseOptions<R> {
    /// Convergence tolerance on the scaled residual norm.
    pub tol: R,
    pub max_iter: usize,
    pub v_min: R,
    pub lateral_thrust_sign: LateralThrustSign,
    /// Deflections beyond this magnitude are flagged, never clamped (rad).
    pub deflection_limit: R,
}

impl<R: Real> Default for InverseOptions<R> {
    fn default() -> Self {
        Self {
            tol: R::of(1e-8),
            max_iter: 50,
            v_min: R::of(DEFAULT_V_MIN),
            lateral_thrust_sign: LateralThrustSign::Derived,
            deflection_limit: R::of(DEFAULT_DEFLECTION_LIMIT),
        }
    }
}

/// One solved sample of an inverse run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseStep<R> {
    pub t: R,
    pub state: FlightState<R>,
    pub controls: ControlInputs<R>,
    /// Scaled residual norm of the accepted Newton iterate.
    pub residual_norm: R,
    pub iterations: usize,
    /// Saturation flags for aileron, elevator, rudder.
    pub saturated: [bool; 3],
}

/// The full inverse solution.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseSolution<R> {
    pub steps: Vec<InverseStep<R>>,
}

/// Bounds of the solution chart; leaving it counts as divergence.
const ALPHA_BOUND: f64 = 1.3;
const BETA_BOUND: f64 = 1.45;
const THETA_BOUND: f64 = 1.45;
const PHI_BOUND: f64 = 1.5;

struct StepContext<R> {
    t: R,
    targets: KinematicTargets<R>,
    qbar: R,
    constraint_value: R,
    constraint_rate: R,
}

/// Sequential per-step solver. Steps must be solved in order; the solved
/// history feeds the backward-difference rate stencils of later steps.
pub struct InverseSolver<R: Real> {
    params: AirframeParams<R>,
    opts: InverseOptions<R>,
    dyn_opts: DynamicsOptions<R>,
    dt: R,
    sideslip_mode: bool,
    contexts: Vec<StepContext<R>>,
    positions: Vec<GroundPosition<R>>,
    // Solved histories, one entry per completed step.
    alpha: Vec<R>,
    beta: Vec<R>,
    phi: Vec<R>,
    theta: Vec<R>,
    psi: Vec<R>,
    p: Vec<R>,
    q: Vec<R>,
    r: Vec<R>,
    warm: [R; 5],
}

impl<R: Real> InverseSolver<R> {
    pub fn new(
        spec: &TrajectorySpec<R>,
        params: &AirframeParams<R>,
        opts: InverseOptions<R>,
    ) -> Result<Self> {
        let params = params.validate()?;
        let derivatives = differentiate_trajectory(spec);
        let sideslip_mode = matches!(spec.constraint, ConstraintSeries::Sideslip(_));
        let constraint_values = spec.constraint.values().to_vec();
        let constraint_rates = fd_first(&constraint_values, spec.dt);

        let mut contexts = Vec::with_capacity(spec.len());
        for i in 0..spec.len() {
            let (vel, acc) = derivatives[i];
            let targets = kinematic_inversion(&vel, &acc, opts.v_min).map_err(|e| e.at_step(i))?;
            let altitude = params.h_ini - spec.positions[i].down;
            let rho = atmosphere::density(altitude).map_err(|e| e.at_step(i))?;
            contexts.push(StepContext {
                t: spec.times[i],
                targets,
                qbar: dynamic_pressure(rho, targets.airspeed),
                constraint_value: constraint_values[i],
                constraint_rate: constraint_rates[i],
            });
        }

        Ok(Self {
            params,
            opts,
            dyn_opts: DynamicsOptions {
                v_min: opts.v_min,
                lateral_thrust_sign: opts.lateral_thrust_sign,
            },
            dt: spec.dt,
            sideslip_mode,
            contexts,
            positions: spec.positions.clone(),
            alpha: Vec::new(),
            beta: Vec::new(),
            phi: Vec::new(),
            theta: Vec::new(),
            psi: Vec::new(),
            p: Vec::new(),
            q: Vec::new(),
            r: Vec::new(),
            warm: [R::zero(); 5],
        })
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    fn backward_rate(&self, i: usize, current: R, hist: &[R]) -> R {
        if i >= 2 {
            (R::of(3.0) * current - R::of(4.0) * hist[i - 1] + hist[i - 2]) / (R::of(2.0) * self.dt)
        } else {
            (current - hist[i - 1]) / self.dt
        }
    }

    /// Unknown vector layout: [alpha, phi-or-beta, theta, psi, thrust/(m g0)].
    fn unpack(&self, i: usize, x: &[R; 5]) -> (R, R, R, R, R, R) {
        let ctx = &self.contexts[i];
        let (alpha, beta, phi) = if self.sideslip_mode {
            (x[0], ctx.constraint_value, x[1])
        } else {
            (x[0], x[1], ctx.constraint_value)
        };
        let thrust = x[4] * self.params.mass * R::of(G0);
        (alpha, beta, phi, x[2], x[3], thrust)
    }

    /// Scaled residuals of the step system, or `None` when the iterate left
    /// the physical chart.
    fn residual(&self, i: usize, x: &[R; 5]) -> Option<[R; 5]> {
        let ctx = &self.contexts[i];
        let (alpha, beta, phi, theta, psi, thrust) = self.unpack(i, x);
        if alpha.abs() > R::of(ALPHA_BOUND)
            || beta.abs() > R::of(BETA_BOUND)
            || theta.abs() > R::of(THETA_BOUND)
            || phi.abs() > R::of(PHI_BOUND)
        {
            return None;
        }

        let euler = EulerAngles::new(phi, theta, psi);
        let wind = WindState::new(ctx.targets.airspeed, alpha, beta);

        // Attitude rates by backward differences over the solved history;
        // the constrained series uses its (central) precomputed rate.
        let phi_dot = if self.sideslip_mode {
            self.backward_rate(i, phi, &self.phi)
        } else {
            ctx.constraint_rate
        };
        let theta_dot = self.backward_rate(i, theta, &self.theta);
        let psi_dot = self.backward_rate(i, psi, &self.psi);
        let rates =
            body_rates_from_euler_rates(&euler, &EulerRates::new(phi_dot, theta_dot, psi_dot));

        let alpha_dot = self.backward_rate(i, alpha, &self.alpha);
        let beta_dot = if self.sideslip_mode {
            ctx.constraint_rate
        } else {
            self.backward_rate(i, beta, &self.beta)
        };

        let wc = lift_drag_side(
            alpha,
            beta,
            &self.params.force_constants,
            self.params.alpha_warn,
        );
        let (cx, cy, cz) = body_force_coefficients(wc.lift, wc.drag, wc.side, alpha, beta);

        let state = FlightState {
            wind,
            rates,
            euler,
            position: self.positions[i],
        };
        let (v_dot_model, beta_dot_model, alpha_dot_model) = linear_accelerations(
            &state,
            &self.params,
            ctx.qbar,
            cx,
            cy,
            cz,
            thrust,
            &self.dyn_opts,
        )
        .ok()?;

        let (r_az, r_el) = path_angle_residuals(&wind, &euler, &ctx.targets.flight_path);
        let g = R::of(G0);
        let v = ctx.targets.airspeed;
        Some([
            r_az,
            r_el,
            (ctx.targets.airspeed_dot - v_dot_model) / g,
            (beta_dot - beta_dot_model) * v / g,
            (alpha_dot - alpha_dot_model) * v / g,
        ])
    }

    fn norm(res: &[R; 5]) -> R {
        res.iter().fold(R::zero(), |acc, r| acc + *r * *r).sqrt()
    }

    fn jacobian(&self, i: usize, x: &[R; 5]) -> Option<[[R; 5]; 5]> {
        let h = R::of(1e-6);
        let mut jac = [[R::zero(); 5]; 5];
        for col in 0..5 {
            let mut xp = *x;
            let mut xm = *x;
            xp[col] += h;
            xm[col] -= h;
            let rp = self.residual(i, &xp)?;
            let rm = self.residual(i, &xm)?;
            for row in 0..5 {
                jac[row][col] = (rp[row] - rm[row]) / (R::of(2.0) * h);
            }
        }
        Some(jac)
    }

    /// Seeds the history with the steady-level trim at the first sample.
    /// Must be called exactly once, before any [`InverseSolver::step`].
    pub fn init_from_trim(&mut self) -> Result<InverseStep<R>> {
        let ctx = &self.contexts[0];
        let altitude = self.params.h_ini - self.positions[0].down;
        let trim = trim_steady_level(ctx.targets.airspeed, altitude, &self.params)
            .map_err(|e| e.at_step(0))?;
        let psi0 = wrap_pi(ctx.targets.flight_path.azimuth);
        let (alpha, beta, phi) = if self.sideslip_mode {
            (trim.alpha, ctx.constraint_value, R::zero())
        } else {
            (trim.alpha, R::zero(), ctx.constraint_value)
        };

        self.alpha.push(alpha);
        self.beta.push(beta);
        self.phi.push(phi);
        self.theta.push(trim.theta);
        self.psi.push(psi0);
        self.p.push(R::zero());
        self.q.push(R::zero());
        self.r.push(R::zero());
        self.warm = [
            alpha,
            if self.sideslip_mode { phi } else { beta },
            trim.theta,
            psi0,
            trim.thrust / (self.params.mass * R::of(G0)),
        ];

        let state = FlightState {
            wind: WindState::new(ctx.targets.airspeed, alpha, beta),
            rates: BodyRates::zero(),
            euler: EulerAngles::new(phi, trim.theta, psi0),
            position: self.positions[0],
        };
        let controls = trim.controls();
        Ok(InverseStep {
            t: ctx.t,
            state,
            controls,
            residual_norm: R::zero(),
            iterations: 0,
            saturated: self.saturation_flags(&controls),
        })
    }

    fn saturation_flags(&self, controls: &ControlInputs<R>) -> [bool; 3] {
        let lim = self.opts.deflection_limit;
        [
            controls.aileron.abs() > lim,
            controls.elevator.abs() > lim,
            controls.rudder.abs() > lim,
        ]
    }

    /// Solves step `i` (i >= 1), warm-started from the previous step. Steps
    /// must be solved in ascending order after [`InverseSolver::init_from_trim`].
    pub fn step(&mut self, i: usize) -> Result<InverseStep<R>> {
        let mut x = self.warm;
        let mut res = self.residual(i, &x).ok_or(Error::NoConvergence {
            step: i,
            residual: f64::INFINITY,
            iterations: 0,
        })?;
        let mut norm = Self::norm(&res);
        let mut iterations = 0;

        while norm > self.opts.tol {
            if iterations >= self.opts.max_iter {
                return Err(Error::NoConvergence {
                    step: i,
                    residual: norm.as_f64(),
                    iterations,
                });
            }
            iterations += 1;

            let jac = self.jacobian(i, &x).ok_or(Error::NoConvergence {
                step: i,
                residual: norm.as_f64(),
                iterations,
            })?;
            let mut a: Vec<Vec<R>> = jac.iter().map(|row| row.to_vec()).collect();
            let mut b: Vec<R> = res.iter().map(|r| -*r).collect();
            let delta = solve_dense(&mut a, &mut b, R::of(1e-14))
                .ok_or(Error::SingularJacobian { step: i })?;

            // Damped update: halve the step while the residual grows.
            let mut scale = R::one();
            let mut accepted = false;
            for _ in 0..=10 {
                let mut candidate = x;
                for (c, d) in candidate.iter_mut().zip(delta.iter()) {
                    *c += scale * *d;
                }
                if let Some(cand_res) = self.residual(i, &candidate) {
                    let cand_norm = Self::norm(&cand_res);
                    if cand_norm < norm {
                        x = candidate;
                        res = cand_res;
                        norm = cand_norm;
                        accepted = true;
                        break;
                    }
                }
                scale *= R::of(0.5);
            }
            if !accepted {
                return Err(Error::NoConvergence {
                    step: i,
                    residual: norm.as_f64(),
                    iterations,
                });
            }
        }

        self.accept(i, &x, norm, iterations)
    }

    /// Commits a converged iterate: reconstructs rates, maps required
    /// moments to deflections, and extends the history.
    fn accept(
        &mut self,
        i: usize,
        x: &[R; 5],
        norm: R,
        iterations: usize,
    ) -> Result<InverseStep<R>> {
        let (alpha, beta, phi, theta, psi, thrust) = self.unpack(i, x);
        let ctx = &self.contexts[i];
        let euler = EulerAngles::new(phi, theta, psi);

        let phi_dot = if self.sideslip_mode {
            self.backward_rate(i, phi, &self.phi)
        } else {
            ctx.constraint_rate
        };
        let theta_dot = self.backward_rate(i, theta, &self.theta);
        let psi_dot = self.backward_rate(i, psi, &self.psi);
        let rates =
            body_rates_from_euler_rates(&euler, &EulerRates::new(phi_dot, theta_dot, psi_dot));

        let p_dot = self.backward_rate(i, rates.p, &self.p);
        let q_dot = self.backward_rate(i, rates.q, &self.q);
        let r_dot = self.backward_rate(i, rates.r, &self.r);

        // Required moments: M = I omega_dot + omega x (I omega). The
        // zero-moment auxiliary form supplies the gyroscopic part.
        let i_omega_dot = self
            .params
            .inertia
            .matrix()
            .mul_vec(Vec3::new(p_dot, q_dot, r_dot));
        let gyro = auxiliary_moments(
            &rates,
            &self.params.inertia,
            R::zero(),
            R::zero(),
            R::zero(),
        );
        let mx = i_omega_dot.x - gyro.t1;
        let my = i_omega_dot.y - gyro.t2;
        let mz = i_omega_dot.z - gyro.t3;

        let qs = ctx.qbar * self.params.wing_area;
        let c_roll = mx / (qs * self.params.span);
        let c_pitch = my / (qs * self.params.chord);
        let c_yaw = mz / (qs * self.params.span);

        let v = ctx.targets.airspeed;
        let sd = &self.params.derivatives;
        let elevator = elevator_from_pitch_coefficient(
            c_pitch,
            alpha,
            rates.q,
            v,
            sd,
            self.params.chord,
            self.opts.v_min,
        )
        .map_err(|e| e.at_step(i))?;
        let (aileron, rudder) = aileron_rudder_from_roll_yaw(
            c_roll,
            c_yaw,
            beta,
            rates.p,
            rates.r,
            v,
            sd,
            self.params.span,
            self.opts.v_min,
        )
        .map_err(|e| e.at_step(i))?;

        self.alpha.push(alpha);
        self.beta.push(beta);
        self.phi.push(phi);
        self.theta.push(theta);
        self.psi.push(psi);
        self.p.push(rates.p);
        self.q.push(rates.q);
        self.r.push(rates.r);
        self.warm = *x;

        let controls = ControlInputs::new(aileron, elevator, rudder, thrust);
        Ok(InverseStep {
            t: ctx.t,
            state: FlightState {
                wind: WindState::new(v, alpha, beta),
                rates,
                euler,
                position: self.positions[i],
            },
            controls,
            residual_norm: norm,
            iterations,
            saturated: self.saturation_flags(&controls),
        })
    }
}

/// Recovers the control histories for a trajectory spec.
///
/// The first sample is initialized from the steady-level trim at its
/// airspeed and altitude; every later sample is Newton-solved, warm-started
/// from its predecessor.
pub fn inverse_simulate<R: Real>(
    spec: &TrajectorySpec<R>,
    params: &AirframeParams<R>,
    opts: InverseOptions<R>,
) -> Result<InverseSolution<R>> {
    let mut solver = InverseSolver::new(spec, params, opts)?;
    let mut steps = Vec::with_capacity(solver.len());
    steps.push(solver.init_from_trim()?);
    for i in 1..solver.len() {
        steps.push(solver.step(i)?);
    }
    Ok(InverseSolution { steps })
}
