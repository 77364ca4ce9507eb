//! Angle systems and the conversions between them.
//!
//! Three frames: earth (ground) axes, body axes, and wind axes. Attitude is
//! yaw → pitch → roll Euler angles; the velocity direction relative to the
//! air is the angle-of-attack / sideslip pair; the velocity direction
//! relative to the ground is the flight-path elevation / azimuth pair.

use crate::error::{Error, Result};
use crate::linalg::{Mat3, Vec3};
use crate::real::Real;

/// Default hover guard on the airspeed (m/s).
pub const DEFAULT_V_MIN: f64 = 1.0;

/// Guard on |cos(theta)| below which the Euler-rate solve is singular.
pub const GIMBAL_GUARD: f64 = 1e-6;

/// Aircraft attitude: roll, pitch, yaw applied yaw -> pitch -> roll (rad).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles<R> {
    pub phi: R,
    pub theta: R,
    pub psi: R,
}

impl<R: Real> EulerAngles<R> {
    pub fn new(phi: R, theta: R, psi: R) -> Self {
        Self { phi, theta, psi }
    }

    pub fn zero() -> Self {
        Self::new(R::zero(), R::zero(), R::zero())
    }
}

/// Body-axes angular velocity components (rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyRates<R> {
    pub p: R,
    pub q: R,
    pub r: R,
}

impl<R: Real> BodyRates<R> {
    pub fn new(p: R, q: R, r: R) -> Self {
        Self { p, q, r }
    }

    pub fn zero() -> Self {
        Self::new(R::zero(), R::zero(), R::zero())
    }
}

/// Euler-angle time derivatives (rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerRates<R> {
    pub phi_dot: R,
    pub theta_dot: R,
    pub psi_dot: R,
}

impl<R: Real> EulerRates<R> {
    pub fn new(phi_dot: R, theta_dot: R, psi_dot: R) -> Self {
        Self {
            phi_dot,
            theta_dot,
            psi_dot,
        }
    }
}

/// Velocity relative to the air in spherical form: magnitude, angle of
/// attack, sideslip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindState<R> {
    /// Airspeed magnitude (m/s).
    pub airspeed: R,
    /// Angle of attack (rad).
    pub alpha: R,
    /// Sideslip angle (rad).
    pub beta: R,
}

impl<R: Real> WindState<R> {
    pub fn new(airspeed: R, alpha: R, beta: R) -> Self {
        Self {
            airspeed,
            alpha,
            beta,
        }
    }
}

/// Direction of the ground-relative velocity vector: elevation above the
/// horizon and azimuth from north.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlightPathAngles<R> {
    /// Elevation flight-path angle (rad), in [-pi/2, pi/2].
    pub elevation: R,
    /// Azimuth flight-path angle (rad), wrapped to [0, 2 pi).
    pub azimuth: R,
}

/// Earth-axes position from the take-off point (m): north, east, and toward
/// the earth's center. `down` grows negative as the aircraft climbs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundPosition<R> {
    pub north: R,
    pub east: R,
    pub down: R,
}

impl<R: Real> GroundPosition<R> {
    pub fn new(north: R, east: R, down: R) -> Self {
        Self { north, east, down }
    }

    pub fn origin() -> Self {
        Self::new(R::zero(), R::zero(), R::zero())
    }
}

/// Wraps an angle to (-pi, pi].
pub fn wrap_pi<R: Real>(angle: R) -> R {
    let two_pi = R::of(2.0) * R::PI();
    let mut x = angle % two_pi;
    if x > R::PI() {
        x -= two_pi;
    } else if x <= -R::PI() {
        x += two_pi;
    }
    x
}

/// Wraps an angle to [0, 2 pi).
pub fn wrap_two_pi<R: Real>(angle: R) -> R {
    let two_pi = R::of(2.0) * R::PI();
    let mut x = angle % two_pi;
    if x < R::zero() {
        x += two_pi;
    }
    if x >= two_pi {
        x = R::zero();
    }
    x
}

fn clamp_unit<R: Real>(x: R) -> R {
    x.max(-R::one()).min(R::one())
}

/// Body-axes angular velocity from the attitude and its rates:
///
/// ```text
/// p = phi_dot - sin(theta) psi_dot
/// q = cos(phi) theta_dot + cos(theta) sin(phi) psi_dot
/// r = cos(theta) cos(phi) psi_dot - sin(phi) theta_dot
/// ```
pub fn body_rates_from_euler_rates<R: Real>(
    euler: &EulerAngles<R>,
    rates: &EulerRates<R>,
) -> BodyRates<R> {
    let (sin_phi, cos_phi) = euler.phi.sin_cos();
    let (sin_theta, cos_theta) = euler.theta.sin_cos();
    BodyRates {
        p: rates.phi_dot - sin_theta * rates.psi_dot,
        q: cos_phi * rates.theta_dot + cos_theta * sin_phi * rates.psi_dot,
        r: cos_theta * cos_phi * rates.psi_dot - sin_phi * rates.theta_dot,
    }
}

/// Euler-angle rates from body rates: the unique solution of the 3x3 linear
/// kinematic system, whose determinant is cos(theta).
///
/// Errors with a gimbal singularity when |cos(theta)| < 1e-6.
pub fn euler_rates_from_body_rates<R: Real>(
    euler: &EulerAngles<R>,
    rates: &BodyRates<R>,
) -> Result<EulerRates<R>> {
    let (sin_phi, cos_phi) = euler.phi.sin_cos();
    let (sin_theta, cos_theta) = euler.theta.sin_cos();
    if cos_theta.abs() < R::of(GIMBAL_GUARD) {
        return Err(Error::GimbalSingularity(cos_theta.abs().as_f64()));
    }
    let theta_dot = rates.q * cos_phi - rates.r * sin_phi;
    let psi_dot = (rates.q * sin_phi + rates.r * cos_phi) / cos_theta;
    let phi_dot = rates.p + sin_theta * psi_dot;
    Ok(EulerRates::new(phi_dot, theta_dot, psi_dot))
}

/// Body-axes velocity components (u, v, w) from the wind state:
/// u = V cos(alpha) cos(beta), v = V sin(beta), w = V sin(alpha) cos(beta).
pub fn body_velocity_from_wind<R: Real>(wind: &WindState<R>) -> Vec3<R> {
    let (sin_alpha, cos_alpha) = wind.alpha.sin_cos();
    let (sin_beta, cos_beta) = wind.beta.sin_cos();
    Vec3::new(
        wind.airspeed * cos_alpha * cos_beta,
        wind.airspeed * sin_beta,
        wind.airspeed * sin_alpha * cos_beta,
    )
}

/// Wind state from body-axes velocity components:
/// V = |(u, v, w)|, beta = asin(v/V), alpha = atan2(w, u).
///
/// Errors below the hover guard `v_min`, and when u = w = 0 (pure sideslip,
/// angle of attack undefined).
pub fn wind_from_body_velocity<R: Real>(u: R, v: R, w: R, v_min: R) -> Result<WindState<R>> {
    let airspeed = (u * u + v * v + w * w).sqrt();
    if airspeed < v_min {
        return Err(Error::HoverSingularity {
            airspeed: airspeed.as_f64(),
            v_min: v_min.as_f64(),
        });
    }
    if u == R::zero() && w == R::zero() {
        return Err(Error::PureSideslip);
    }
    Ok(WindState {
        airspeed,
        alpha: w.atan2(u),
        beta: clamp_unit(v / airspeed).asin(),
    })
}

/// Flank angle of attack, atan2(v, u): the sideslip as seen in the x_b-y_b
/// plane. Reported as an extra output; not part of the governing system.
pub fn flank_angle<R: Real>(u: R, v: R) -> Result<R> {
    if u == R::zero() {
        return Err(Error::UndefinedFlank);
    }
    Ok(v.atan2(u))
}

/// Direction-cosine matrix mapping body-axes components to local-earth-axes
/// components, from the yaw -> pitch -> roll rotation sequence.
///
/// Orthonormal with determinant +1; its third row is the earth down unit
/// vector expressed in body axes: (-sin(theta), cos(theta) sin(phi),
/// cos(theta) cos(phi)).
pub fn body_to_earth_dcm<R: Real>(euler: &EulerAngles<R>) -> Mat3<R> {
    let (s_phi, c_phi) = euler.phi.sin_cos();
    let (s_theta, c_theta) = euler.theta.sin_cos();
    let (s_psi, c_psi) = euler.psi.sin_cos();
    Mat3::new([
        [
            c_theta * c_psi,
            s_phi * s_theta * c_psi - c_phi * s_psi,
            c_phi * s_theta * c_psi + s_phi * s_psi,
        ],
        [
            c_theta * s_psi,
            s_phi * s_theta * s_psi + c_phi * c_psi,
            c_phi * s_theta * s_psi - s_phi * c_psi,
        ],
        [-s_theta, s_phi * c_theta, c_phi * c_theta],
    ])
}

/// Ground-relative velocity components (north, east, down) (m/s): the body
/// velocity rotated through the attitude DCM. Magnitude equals the airspeed.
pub fn earth_velocity<R: Real>(wind: &WindState<R>, euler: &EulerAngles<R>) -> Vec3<R> {
    body_to_earth_dcm(euler).mul_vec(body_velocity_from_wind(wind))
}

/// Flight-path angles from the earth-axes velocity:
/// elevation = asin(-v_down / V), azimuth = atan2(v_east, v_north) in
/// [0, 2 pi).
pub fn flight_path_angles<R: Real>(
    earth_vel: &Vec3<R>,
    airspeed: R,
    v_min: R,
) -> Result<FlightPathAngles<R>> {
    if airspeed < v_min {
        return Err(Error::HoverSingularity {
            airspeed: airspeed.as_f64(),
            v_min: v_min.as_f64(),
        });
    }
    Ok(FlightPathAngles {
        elevation: clamp_unit(-earth_vel.z / airspeed).asin(),
        azimuth: wrap_two_pi(earth_vel.y.atan2(earth_vel.x)),
    })
}

/// Climb rate (m/s): V sin(elevation).
pub fn climb_rate<R: Real>(airspeed: R, fpa: &FlightPathAngles<R>) -> R {
    airspeed * fpa.elevation.sin()
}

/// Residuals of the two algebraic identities tying the flight-path angles to
/// the attitude and wind angles. Both vanish for consistent states:
///
/// ```text
/// r_az = cos(el) sin(az - psi) - (cos(phi) sin(beta) - sin(phi) sin(alpha) cos(beta))
/// r_el = sin(el) - (sin(theta) cos(alpha) cos(beta)
///                   - cos(theta) sin(phi) sin(beta)
///                   - cos(theta) cos(phi) sin(alpha) cos(beta))
/// ```
pub fn path_angle_residuals<R: Real>(
    wind: &WindState<R>,
    euler: &EulerAngles<R>,
    fpa: &FlightPathAngles<R>,
) -> (R, R) {
    let (sin_alpha, cos_alpha) = wind.alpha.sin_cos();
    let (sin_beta, cos_beta) = wind.beta.sin_cos();
    let (sin_phi, cos_phi) = euler.phi.sin_cos();
    let (sin_theta, cos_theta) = euler.theta.sin_cos();

    let r_az = fpa.elevation.cos() * (fpa.azimuth - euler.psi).sin()
        - (cos_phi * sin_beta - sin_phi * sin_alpha * cos_beta);
    let r_el = fpa.elevation.sin()
        - (sin_theta * cos_alpha * cos_beta
            - cos_theta * sin_phi * sin_beta
            - cos_theta * cos_phi * sin_alpha * cos_beta);
    (r_az, r_el)
}

/// Geometric altitude above sea level (m) from the down coordinate and the
/// take-off altitude: h = h_ini - z_down.
pub fn altitude_from_position<R: Real>(down: R, h_ini: R) -> R {
    h_ini - down
}
