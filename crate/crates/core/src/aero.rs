//! Dynamic pressure, the nine aerodynamic coefficients, the body-axes forces
//! and moments they produce, and the inverse solves that map required moment
//! coefficients back to control deflections.
//!
//! The coefficient models are linear in the flight angles and
//! nondimensionalized rates: lift is linear in the angle of attack, drag
//! follows the quadratic drag polar, the side force is linear in sideslip,
//! and each moment coefficient is a linear combination of an angle, scaled
//! rates, and deflections. Everything here is a pure function.

use crate::airframe::{AeroForceConstants, StabilityDerivatives};
use crate::axes::BodyRates;
use crate::error::{Error, Result};
use crate::real::Real;

/// Default saturation limit on control-surface deflections (rad). Reported
/// in inverse mode when exceeded; never used to clamp.
pub const DEFAULT_DEFLECTION_LIMIT: f64 = 0.5;

/// The four control inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlInputs<R> {
    /// Aileron deflection (rad).
    pub aileron: R,
    /// Elevator deflection (rad).
    pub elevator: R,
    /// Rudder deflection (rad).
    pub rudder: R,
    /// Engine thrust along the longitudinal body axis (N).
    pub thrust: R,
}

impl<R: Real> ControlInputs<R> {
    pub fn new(aileron: R, elevator: R, rudder: R, thrust: R) -> Self {
        Self {
            aileron,
            elevator,
            rudder,
            thrust,
        }
    }

    pub fn zero() -> Self {
        Self::new(R::zero(), R::zero(), R::zero(), R::zero())
    }
}

/// Wind-axes force coefficients with the stall-warning flag raised when the
/// angle of attack exceeds the linear-model threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindAxesCoefficients<R> {
    /// Lift coefficient (-).
    pub lift: R,
    /// Drag coefficient (-).
    pub drag: R,
    /// Side-force coefficient (-).
    pub side: R,
    /// True when alpha exceeded the stall-warning threshold. The linear lift
    /// model is still evaluated; this only flags that it is being stretched.
    pub stall_warning: bool,
}

/// All nine aerodynamic coefficients of one flight condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientSet<R> {
    pub lift: R,
    pub drag: R,
    pub side: R,
    /// Body-axes force coefficients.
    pub x: R,
    pub y: R,
    pub z: R,
    /// Body-axes moment coefficients.
    pub roll: R,
    pub pitch: R,
    pub yaw: R,
}

/// Dynamic pressure and the dimensional body-axes forces and moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForcesMoments<R> {
    /// Dynamic pressure (Pa).
    pub qbar: R,
    /// Aerodynamic forces along the body axes (N).
    pub fx: R,
    pub fy: R,
    pub fz: R,
    /// Aerodynamic moments about the body axes (N m).
    pub mx: R,
    pub my: R,
    pub mz: R,
}

/// Dynamic pressure 0.5 rho V^2 (Pa).
pub fn dynamic_pressure<R: Real>(rho: R, airspeed: R) -> R {
    R::of(0.5) * rho * airspeed * airspeed
}

/// Lift, drag, and side-force coefficients:
/// C_L = C_L0 + C_L_alpha alpha, C_D = C_D0 + K_CD C_L^2,
/// C_C = C_C_beta beta.
pub fn lift_drag_side<R: Real>(
    alpha: R,
    beta: R,
    fc: &AeroForceConstants<R>,
    alpha_warn: R,
) -> WindAxesCoefficients<R> {
    let lift = fc.c_l0 + fc.c_l_alpha * alpha;
    WindAxesCoefficients {
        lift,
        drag: fc.c_d0 + fc.k_cd * lift * lift,
        side: fc.c_c_beta * beta,
        stall_warning: alpha > alpha_warn,
    }
}

/// Body-axes force coefficients from the wind-axes ones:
///
/// ```text
/// C_x = -C_D cos(a) cos(b) - C_C cos(a) sin(b) + C_L sin(a)
/// C_y = -C_D sin(b) + C_C cos(b)
/// C_z = -C_D sin(a) cos(b) - C_C sin(a) sin(b) - C_L cos(a)
/// ```
pub fn body_force_coefficients<R: Real>(lift: R, drag: R, side: R, alpha: R, beta: R) -> (R, R, R) {
    let (sin_a, cos_a) = alpha.sin_cos();
    let (sin_b, cos_b) = beta.sin_cos();
    (
        -drag * cos_a * cos_b - side * cos_a * sin_b + lift * sin_a,
        -drag * sin_b + side * cos_b,
        -drag * sin_a * cos_b - side * sin_a * sin_b - lift * cos_a,
    )
}

fn hover_guard<R: Real>(airspeed: R, v_min: R) -> Result<()> {
    if airspeed < v_min {
        return Err(Error::HoverSingularity {
            airspeed: airspeed.as_f64(),
            v_min: v_min.as_f64(),
        });
    }
    Ok(())
}

/// Moment coefficients about the body axes:
///
/// ```text
/// C_l = C_l_beta b + C_l_p p(b_ref/V) + C_l_r r(b_ref/V) + C_l_dl dl + C_l_dn dn
/// C_m = C_m0 + C_m_alpha a + C_m_q q(c_ref/V) + C_m_dm dm
/// C_n = C_n_beta b + C_n_p p(b_ref/V) + C_n_r r(b_ref/V) + C_n_dl dl + C_n_dn dn
/// ```
///
/// The rates are nondimensionalized by span/V and chord/V, hence the hover
/// guard on V.
#[allow(clippy::too_many_arguments)]
pub fn moment_coefficients<R: Real>(
    alpha: R,
    beta: R,
    rates: &BodyRates<R>,
    airspeed: R,
    controls: &ControlInputs<R>,
    sd: &StabilityDerivatives<R>,
    span: R,
    chord: R,
    v_min: R,
) -> Result<(R, R, R)> {
    hover_guard(airspeed, v_min)?;
    let p_hat = rates.p * span / airspeed;
    let q_hat = rates.q * chord / airspeed;
    let r_hat = rates.r * span / airspeed;
    let roll = sd.c_l_beta * beta
        + sd.c_l_p * p_hat
        + sd.c_l_r * r_hat
        + sd.c_l_delta_l * controls.aileron
        + sd.c_l_delta_n * controls.rudder;
    let pitch =
        sd.c_m0 + sd.c_m_alpha * alpha + sd.c_m_q * q_hat + sd.c_m_delta_m * controls.elevator;
    let yaw = sd.c_n_beta * beta
        + sd.c_n_p * p_hat
        + sd.c_n_r * r_hat
        + sd.c_n_delta_l * controls.aileron
        + sd.c_n_delta_n * controls.rudder;
    Ok((roll, pitch, yaw))
}

/// Elevator deflection that produces a required pitch-moment coefficient:
/// the pitch model solved for the deflection.
pub fn elevator_from_pitch_coefficient<R: Real>(
    pitch: R,
    alpha: R,
    q: R,
    airspeed: R,
    sd: &StabilityDerivatives<R>,
    chord: R,
    v_min: R,
) -> Result<R> {
    hover_guard(airspeed, v_min)?;
    if sd.c_m_delta_m == R::zero() {
        return Err(Error::SingularElevator);
    }
    Ok((pitch - sd.c_m0 - sd.c_m_alpha * alpha - sd.c_m_q * q * chord / airspeed) / sd.c_m_delta_m)
}

/// Aileron and rudder deflections that produce required roll and yaw moment
/// coefficients: the coupled 2x2 roll/yaw system solved in closed form.
#[allow(clippy::too_many_arguments)]
pub fn aileron_rudder_from_roll_yaw<R: Real>(
    roll: R,
    yaw: R,
    beta: R,
    p: R,
    r: R,
    airspeed: R,
    sd: &StabilityDerivatives<R>,
    span: R,
    v_min: R,
) -> Result<(R, R)> {
    hover_guard(airspeed, v_min)?;
    let det = sd.control_effectiveness_determinant();
    if det == R::zero() {
        return Err(Error::SingularControlEffectiveness);
    }
    let p_hat = p * span / airspeed;
    let r_hat = r * span / airspeed;
    let roll_rhs = roll - sd.c_l_beta * beta - sd.c_l_p * p_hat - sd.c_l_r * r_hat;
    let yaw_rhs = yaw - sd.c_n_beta * beta - sd.c_n_p * p_hat - sd.c_n_r * r_hat;
    let aileron = (sd.c_n_delta_n * roll_rhs - sd.c_l_delta_n * yaw_rhs) / det;
    let rudder = (sd.c_l_delta_l * yaw_rhs - sd.c_n_delta_l * roll_rhs) / det;
    Ok((aileron, rudder))
}

/// Dimensional forces and moments from the coefficients:
/// F = qbar S C, roll/yaw moments scale with the span, pitch with the chord.
pub fn forces_and_moments<R: Real>(
    qbar: R,
    coeffs: &CoefficientSet<R>,
    wing_area: R,
    span: R,
    chord: R,
) -> ForcesMoments<R> {
    let qs = qbar * wing_area;
    ForcesMoments {
        qbar,
        fx: qs * coeffs.x,
        fy: qs * coeffs.y,
        fz: qs * coeffs.z,
        mx: qs * span * coeffs.roll,
        my: qs * chord * coeffs.pitch,
        mz: qs * span * coeffs.yaw,
    }
}
