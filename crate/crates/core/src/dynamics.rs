//! Assembly of the full 12-state derivative.
//!
//! Linear momentum is written in wind axes (airspeed, sideslip, and
//! angle-of-attack rates), angular momentum in body axes through the
//! auxiliary-moment form that expands the inverse inertia matrix by
//! cofactors. The algebraic closure is triangular: each quantity is computed
//! exactly once per evaluation, in dependency order, with no fixed-point
//! iteration.

use crate::aero::{
    body_force_coefficients, dynamic_pressure, forces_and_moments, lift_drag_side,
    moment_coefficients, CoefficientSet, ControlInputs, ForcesMoments,
};
use crate::airframe::{AirframeParams, InertiaTensor};
use crate::atmosphere::{self, constants::G0};
use crate::axes::{
    altitude_from_position, body_velocity_from_wind, climb_rate, earth_velocity,
    euler_rates_from_body_rates, flight_path_angles, BodyRates, EulerAngles, FlightPathAngles,
    GroundPosition, WindState, DEFAULT_V_MIN,
};
use crate::error::{EquationGroup, Error, Result};
use crate::linalg::Vec3;
use crate::real::Real;

/// Lowest altitude the simulation tolerates before aborting (m).
pub const ALTITUDE_FLOOR: f64 = -500.0;

/// Guard on |cos(beta)| below which the angle-of-attack rate is undefined.
pub const SIDESLIP_GUARD: f64 = 1e-6;

/// Sign convention for the thrust term in the sideslip-rate equation.
///
/// Re-deriving the wind-axes equations from the body-axes momentum balance
/// gives the term as -T cos(alpha) sin(beta); the equation also circulates
/// in print with a positive sign. `Derived` is the default and is the only
/// convention consistent with the body-axes form; `Published` reproduces the
/// printed sign for traceability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LateralThrustSign {
    #[default]
    Derived,
    Published,
}

/// Knobs shared by every derivative evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicsOptions<R> {
    /// Hover guard on the airspeed (m/s).
    pub v_min: R,
    pub lateral_thrust_sign: LateralThrustSign,
}

impl<R: Real> Default for DynamicsOptions<R> {
    fn default() -> Self {
        Self {
            v_min: R::of(DEFAULT_V_MIN),
            lateral_thrust_sign: LateralThrustSign::Derived,
        }
    }
}

/// The twelve integrated states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlightState<R> {
    pub wind: WindState<R>,
    pub rates: BodyRates<R>,
    pub euler: EulerAngles<R>,
    pub position: GroundPosition<R>,
}

impl<R: Real> FlightState<R> {
    /// Packs the state in integration order:
    /// V, beta, alpha, p, q, r, phi, theta, psi, north, east, down.
    pub fn to_array(&self) -> [R; 12] {
        [
            self.wind.airspeed,
            self.wind.beta,
            self.wind.alpha,
            self.rates.p,
            self.rates.q,
            self.rates.r,
            self.euler.phi,
            self.euler.theta,
            self.euler.psi,
            self.position.north,
            self.position.east,
            self.position.down,
        ]
    }

    pub fn from_array(x: &[R; 12]) -> Self {
        Self {
            wind: WindState::new(x[0], x[2], x[1]),
            rates: BodyRates::new(x[3], x[4], x[5]),
            euler: EulerAngles::new(x[6], x[7], x[8]),
            position: GroundPosition::new(x[9], x[10], x[11]),
        }
    }
}

/// Time derivative of [`FlightState`], same field order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDerivative<R> {
    pub airspeed_dot: R,
    pub beta_dot: R,
    pub alpha_dot: R,
    pub p_dot: R,
    pub q_dot: R,
    pub r_dot: R,
    pub phi_dot: R,
    pub theta_dot: R,
    pub psi_dot: R,
    pub north_dot: R,
    pub east_dot: R,
    pub down_dot: R,
}

impl<R: Real> StateDerivative<R> {
    pub fn to_array(&self) -> [R; 12] {
        [
            self.airspeed_dot,
            self.beta_dot,
            self.alpha_dot,
            self.p_dot,
            self.q_dot,
            self.r_dot,
            self.phi_dot,
            self.theta_dot,
            self.psi_dot,
            self.north_dot,
            self.east_dot,
            self.down_dot,
        ]
    }
}

/// The three auxiliary moments of the angular-momentum equations (N m):
/// the applied moments minus the gyroscopic coupling terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxiliaryMoments<R> {
    pub t1: R,
    pub t2: R,
    pub t3: R,
}

/// Per-step algebraic quantities, recorded alongside the state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedOutputs<R> {
    /// Geometric altitude (m).
    pub altitude: R,
    /// Air density (kg/m^3).
    pub rho: R,
    pub coefficients: CoefficientSet<R>,
    pub forces_moments: ForcesMoments<R>,
    pub aux_moments: AuxiliaryMoments<R>,
    pub flight_path: FlightPathAngles<R>,
    /// Flank angle of attack (rad); diagnostic output.
    pub flank_angle: R,
    /// Climb rate (m/s).
    pub climb_rate: R,
    pub stall_warning: bool,
}

/// Auxiliary moments from the body rates, inertia, and applied moments:
///
/// ```text
/// T1 = (B-C) q r + (E q - F r) p + (q^2 - r^2) D + Mx
/// T2 = (C-A) r p + (F r - D p) q + (r^2 - p^2) E + My
/// T3 = (A-B) p q + (D p - E q) r + (p^2 - q^2) F + Mz
/// ```
///
/// with (A..F) = (Ixx, Iyy, Izz, Iyz, Ixz, Ixy). Componentwise this equals
/// M - omega x (I omega).
pub fn auxiliary_moments<R: Real>(
    rates: &BodyRates<R>,
    inertia: &InertiaTensor<R>,
    mx: R,
    my: R,
    mz: R,
) -> AuxiliaryMoments<R> {
    let (a, b, c, d, e, f) = inertia.entries();
    let BodyRates { p, q, r } = *rates;
    AuxiliaryMoments {
        t1: (b - c) * q * r + (e * q - f * r) * p + (q * q - r * r) * d + mx,
        t2: (c - a) * r * p + (f * r - d * p) * q + (r * r - p * p) * e + my,
        t3: (a - b) * p * q + (d * p - e * q) * r + (p * p - q * q) * f + mz,
    }
}

/// Angular accelerations by the cofactor (adjugate) expansion of the inverse
/// inertia matrix:
///
/// ```text
/// T0 p_dot = (BC - D^2) T1 + (FC + ED) T2 + (FD + EB) T3
/// T0 q_dot = (AC - E^2) T2 + (AD + EF) T3 + (FC + ED) T1
/// T0 r_dot = (AB - F^2) T3 + (FD + BE) T1 + (AD + FE) T2
/// ```
pub fn angular_accelerations<R: Real>(
    t0: R,
    inertia: &InertiaTensor<R>,
    aux: &AuxiliaryMoments<R>,
) -> Result<(R, R, R)> {
    if t0 <= R::zero() {
        return Err(Error::SingularInertia(t0.as_f64()));
    }
    let (a, b, c, d, e, f) = inertia.entries();
    let AuxiliaryMoments { t1, t2, t3 } = *aux;
    let p_dot = ((b * c - d * d) * t1 + (f * c + e * d) * t2 + (f * d + e * b) * t3) / t0;
    let q_dot = ((a * c - e * e) * t2 + (a * d + e * f) * t3 + (f * c + e * d) * t1) / t0;
    let r_dot = ((a * b - f * f) * t3 + (f * d + b * e) * t1 + (a * d + f * e) * t2) / t0;
    Ok((p_dot, q_dot, r_dot))
}

/// Reduced angular accelerations for airframes whose x_b-z_b plane is a
/// plane of symmetry (Iyz = Ixy = 0 exactly):
///
/// ```text
/// p_dot (AC - E^2) = (BC - E^2 - C^2) q r + (A - B + C) E p q + C Mx + E Mz
/// q_dot B          = E r^2 - E p^2 + (C - A) p r + My
/// r_dot (AC - E^2) = (A^2 + E^2 - AB) p q + (B - A - C) E q r + A Mz + E Mx
/// ```
pub fn angular_accelerations_symmetric<R: Real>(
    inertia: &InertiaTensor<R>,
    rates: &BodyRates<R>,
    mx: R,
    my: R,
    mz: R,
) -> Result<(R, R, R)> {
    let (a, b, c, d, e, f) = inertia.entries();
    if d != R::zero() || f != R::zero() {
        return Err(Error::NotSymmetric {
            iyz: d.as_f64(),
            ixy: f.as_f64(),
        });
    }
    let BodyRates { p, q, r } = *rates;
    let ac_e2 = a * c - e * e;
    let p_dot =
        ((b * c - e * e - c * c) * q * r + (a - b + c) * e * p * q + c * mx + e * mz) / ac_e2;
    let q_dot = (e * r * r - e * p * p + (c - a) * p * r + my) / b;
    let r_dot =
        ((a * a + e * e - a * b) * p * q + (b - a - c) * e * q * r + a * mz + e * mx) / ac_e2;
    Ok((p_dot, q_dot, r_dot))
}

/// Wind-axes linear accelerations (V_dot, beta_dot, alpha_dot) from the
/// transformed momentum equations.
///
/// The thrust term of the sideslip-rate equation takes its sign from
/// [`DynamicsOptions::lateral_thrust_sign`]; everything else is common to
/// both conventions.
#[allow(clippy::too_many_arguments)]
pub fn linear_accelerations<R: Real>(
    state: &FlightState<R>,
    params: &AirframeParams<R>,
    qbar: R,
    cx: R,
    cy: R,
    cz: R,
    thrust: R,
    opts: &DynamicsOptions<R>,
) -> Result<(R, R, R)> {
    let v = state.wind.airspeed;
    if v < opts.v_min {
        return Err(Error::HoverSingularity {
            airspeed: v.as_f64(),
            v_min: opts.v_min.as_f64(),
        });
    }
    let (sin_a, cos_a) = state.wind.alpha.sin_cos();
    let (sin_b, cos_b) = state.wind.beta.sin_cos();
    if cos_b.abs() < R::of(SIDESLIP_GUARD) {
        return Err(Error::SideslipSingularity(cos_b.abs().as_f64()));
    }
    let (sin_phi, cos_phi) = state.euler.phi.sin_cos();
    let (sin_theta, cos_theta) = state.euler.theta.sin_cos();
    let BodyRates { p, q, r } = state.rates;

    let m = params.mass;
    let qs = qbar * params.wing_area;
    let mg = m * R::of(G0);
    let thrust_sign = match opts.lateral_thrust_sign {
        LateralThrustSign::Derived => -R::one(),
        LateralThrustSign::Published => R::one(),
    };

    let v_dot = (qs * (cx * cos_a * cos_b + cy * sin_b + cz * sin_a * cos_b)
        + mg * (cos_theta * sin_phi * sin_b - sin_theta * cos_a * cos_b
            + cos_theta * cos_phi * sin_a * cos_b)
        + thrust * cos_a * cos_b)
        / m;

    let beta_dot = (qs * (cy * cos_b - cx * cos_a * sin_b - cz * sin_a * sin_b)
        + mg * (cos_theta * sin_phi * cos_b + sin_theta * cos_a * sin_b
            - cos_theta * cos_phi * sin_a * sin_b)
        + thrust_sign * thrust * cos_a * sin_b)
        / (m * v)
        + (-r * cos_a + p * sin_a);

    let alpha_dot = ((qs * (cz * cos_a - cx * sin_a)
        + mg * (sin_theta * sin_a + cos_theta * cos_phi * cos_a)
        - thrust * sin_a)
        / (m * v)
        + (q * cos_b - r * sin_a * sin_b - p * cos_a * sin_b))
        / cos_b;

    Ok((v_dot, beta_dot, alpha_dot))
}

/// Residuals of the body-axes momentum equations for a given wind-axes
/// derivative. Zero (to rounding) when the derivative is consistent with the
/// body-axes form.
///
/// (u_dot, v_dot, w_dot) are reconstructed by differentiating the spherical
/// velocity decomposition, then substituted into
///
/// ```text
/// m (u_dot - v r + w q) = Fx - m g0 sin(theta) + T
/// m (v_dot - w p + u r) = Fy + m g0 cos(theta) sin(phi)
/// m (w_dot - u q + v p) = Fz + m g0 cos(theta) cos(phi)
/// ```
#[allow(clippy::too_many_arguments)]
pub fn body_axes_residual<R: Real>(
    state: &FlightState<R>,
    airspeed_dot: R,
    beta_dot: R,
    alpha_dot: R,
    fx: R,
    fy: R,
    fz: R,
    thrust: R,
    mass: R,
) -> (R, R, R) {
    let v = state.wind.airspeed;
    let (sin_a, cos_a) = state.wind.alpha.sin_cos();
    let (sin_b, cos_b) = state.wind.beta.sin_cos();
    let (sin_phi, cos_phi) = state.euler.phi.sin_cos();
    let (sin_theta, cos_theta) = state.euler.theta.sin_cos();
    let BodyRates { p, q, r } = state.rates;

    let vel = body_velocity_from_wind(&state.wind);
    let (u, vv, w) = (vel.x, vel.y, vel.z);

    let u_dot =
        airspeed_dot * cos_a * cos_b - v * sin_a * cos_b * alpha_dot - v * cos_a * sin_b * beta_dot;
    let v_dot = airspeed_dot * sin_b + v * cos_b * beta_dot;
    let w_dot =
        airspeed_dot * sin_a * cos_b + v * cos_a * cos_b * alpha_dot - v * sin_a * sin_b * beta_dot;

    let g = R::of(G0);
    (
        mass * (u_dot - vv * r + w * q) - (fx - mass * g * sin_theta + thrust),
        mass * (v_dot - w * p + u * r) - (fy + mass * g * cos_theta * sin_phi),
        mass * (w_dot - u * q + vv * p) - (fz + mass * g * cos_theta * cos_phi),
    )
}

/// One full derivative evaluation: the state derivative plus every algebraic
/// intermediate, computed in closure order.
pub fn evaluate<R: Real>(
    state: &FlightState<R>,
    controls: &ControlInputs<R>,
    params: &AirframeParams<R>,
    opts: &DynamicsOptions<R>,
) -> Result<(StateDerivative<R>, DerivedOutputs<R>)> {
    use EquationGroup as G;

    let altitude = altitude_from_position(state.position.down, params.h_ini);
    if altitude < R::of(ALTITUDE_FLOOR) {
        return Err(Error::AltitudeBelowFloor(altitude.as_f64()).in_group(G::Altitude));
    }
    let rho = atmosphere::density(altitude).map_err(|e| e.in_group(G::AirDensity))?;
    let qbar = dynamic_pressure(rho, state.wind.airspeed);

    let wind_coeffs = lift_drag_side(
        state.wind.alpha,
        state.wind.beta,
        &params.force_constants,
        params.alpha_warn,
    );
    let (cx, cy, cz) = body_force_coefficients(
        wind_coeffs.lift,
        wind_coeffs.drag,
        wind_coeffs.side,
        state.wind.alpha,
        state.wind.beta,
    );
    let (c_roll, c_pitch, c_yaw) = moment_coefficients(
        state.wind.alpha,
        state.wind.beta,
        &state.rates,
        state.wind.airspeed,
        controls,
        &params.derivatives,
        params.span,
        params.chord,
        opts.v_min,
    )
    .map_err(|e| e.in_group(G::MomentCoefficients))?;

    let coefficients = CoefficientSet {
        lift: wind_coeffs.lift,
        drag: wind_coeffs.drag,
        side: wind_coeffs.side,
        x: cx,
        y: cy,
        z: cz,
        roll: c_roll,
        pitch: c_pitch,
        yaw: c_yaw,
    };
    let fm = forces_and_moments(
        qbar,
        &coefficients,
        params.wing_area,
        params.span,
        params.chord,
    );

    let aux = auxiliary_moments(&state.rates, &params.inertia, fm.mx, fm.my, fm.mz);
    let (p_dot, q_dot, r_dot) =
        angular_accelerations(params.inertia.determinant(), &params.inertia, &aux)
            .map_err(|e| e.in_group(G::AngularMomentum))?;

    let (airspeed_dot, beta_dot, alpha_dot) =
        linear_accelerations(state, params, qbar, cx, cy, cz, controls.thrust, opts)
            .map_err(|e| e.in_group(G::LinearMomentum))?;

    let euler_rates = euler_rates_from_body_rates(&state.euler, &state.rates)
        .map_err(|e| e.in_group(G::AttitudeKinematics))?;

    let ground_vel = earth_velocity(&state.wind, &state.euler);
    let flight_path = flight_path_angles(&ground_vel, state.wind.airspeed, opts.v_min)
        .map_err(|e| e.in_group(G::TrajectoryKinematics))?;

    let body_vel = body_velocity_from_wind(&state.wind);
    let derivative = StateDerivative {
        airspeed_dot,
        beta_dot,
        alpha_dot,
        p_dot,
        q_dot,
        r_dot,
        phi_dot: euler_rates.phi_dot,
        theta_dot: euler_rates.theta_dot,
        psi_dot: euler_rates.psi_dot,
        north_dot: ground_vel.x,
        east_dot: ground_vel.y,
        down_dot: ground_vel.z,
    };
    let outputs = DerivedOutputs {
        altitude,
        rho,
        coefficients,
        forces_moments: fm,
        aux_moments: aux,
        flight_path,
        flank_angle: body_vel.y.atan2(body_vel.x),
        climb_rate: climb_rate(state.wind.airspeed, &flight_path),
        stall_warning: wind_coeffs.stall_warning,
    };
    Ok((derivative, outputs))
}

/// The state derivative alone; see [`evaluate`] for the full closure.
pub fn state_derivative<R: Real>(
    state: &FlightState<R>,
    controls: &ControlInputs<R>,
    params: &AirframeParams<R>,
    opts: &DynamicsOptions<R>,
) -> Result<StateDerivative<R>> {
    evaluate(state, controls, params, opts).map(|(derivative, _)| derivative)
}

/// Ground-relative velocity of a state, exposed for the record writers.
pub fn ground_velocity<R: Real>(state: &FlightState<R>) -> Vec3<R> {
    earth_velocity(&state.wind, &state.euler)
}
