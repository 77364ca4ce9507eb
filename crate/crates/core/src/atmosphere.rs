//! International Standard Atmosphere for 0-20 km.
//!
//! Two layers: the non-isothermal troposphere up to 11 km (power-law density
//! decay from the lapse rate) and the isothermal tropopause from 11 km to
//! 20 km (exponential decay). The troposphere branch is also valid at
//! negative altitudes (ground depressions below mean sea level). Anything
//! above 20 km is a hard error, not an extrapolation.
//!
//! All functions are pure; altitudes are geometric (true) altitudes in
//! metres. [`geopotential_altitude`] exists for diagnostics only.

use crate::error::{Error, Result};
use crate::real::Real;

/// Fixed ISA model constants. Not user-editable.
pub mod constants {
    /// Sea-level air density (kg/m^3).
    pub const RHO0: f64 = 1.225;
    /// Sea-level air temperature (K).
    pub const THETA0: f64 = 288.15;
    /// Troposphere lapse rate (K/m).
    pub const LAPSE_RATE: f64 = 0.0065;
    /// Specific gas constant of dry air [J/(kg K)].
    pub const R_GAS: f64 = 287.05;
    /// Sea-level gravitational acceleration (m/s^2).
    pub const G0: f64 = 9.80665;
    /// Troposphere density decay constant, lapse_rate / theta0 (1/m).
    pub const M0: f64 = 2.25577e-5;
    /// Troposphere density decay exponent, g0 / (R lapse_rate) - 1 (-).
    pub const N0: f64 = 4.25593;
    /// Base altitude of the tropopause layer (m).
    pub const H1: f64 = 11_000.0;
    /// Tropopause temperature (K).
    pub const THETA1: f64 = 216.65;
    /// Air density at the tropopause base (kg/m^3).
    pub const RHO1: f64 = 0.36391;
    /// Tropopause density decay constant, g0 / (R theta1) (1/m).
    pub const M1: f64 = 1.57690e-4;
    /// Ratio of specific heats of air (-).
    pub const GAMMA: f64 = 1.40;
    /// Mean earth radius (m).
    pub const R_EARTH: f64 = 6_371_000.0;
    /// Model ceiling (m).
    pub const H_MAX: f64 = 20_000.0;
}

use constants::*;

/// Atmospheric conditions at one altitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtmosphereSample<R> {
    /// Air density (kg/m^3).
    pub rho: R,
    /// Air temperature (K).
    pub theta: R,
    /// Absolute pressure (Pa).
    pub pressure: R,
    /// Speed of sound (m/s).
    pub speed_of_sound: R,
    /// Density ratio rho / rho0 (-).
    pub sigma: R,
}

fn check_ceiling<R: Real>(h: R) -> Result<()> {
    if h > R::of(H_MAX) {
        Err(Error::AltitudeOutOfRange(h.as_f64()))
    } else {
        Ok(())
    }
}

/// Air density (kg/m^3) at geometric altitude `h` (m).
///
/// Troposphere branch for h <= 11000 m (negative altitudes allowed),
/// tropopause branch for 11000 m < h <= 20000 m.
pub fn density<R: Real>(h: R) -> Result<R> {
    check_ceiling(h)?;
    if h <= R::of(H1) {
        Ok(R::of(RHO0) * (R::one() - R::of(M0) * h).powf(R::of(N0)))
    } else {
        Ok(R::of(RHO1) * (-R::of(M1) * (h - R::of(H1))).exp())
    }
}

/// Air temperature (K) at geometric altitude `h` (m).
pub fn temperature<R: Real>(h: R) -> Result<R> {
    check_ceiling(h)?;
    if h <= R::of(H1) {
        Ok(R::of(THETA0) - R::of(LAPSE_RATE) * h)
    } else {
        Ok(R::of(THETA1))
    }
}

/// Absolute air pressure (Pa) from the ideal gas law.
pub fn pressure<R: Real>(h: R) -> Result<R> {
    Ok(density(h)? * R::of(R_GAS) * temperature(h)?)
}

/// Speed of sound (m/s), sqrt(gamma R theta).
pub fn speed_of_sound<R: Real>(h: R) -> Result<R> {
    Ok((R::of(GAMMA) * R::of(R_GAS) * temperature(h)?).sqrt())
}

/// Density ratio rho(h) / rho0 (-).
pub fn density_ratio<R: Real>(h: R) -> Result<R> {
    Ok(density(h)? / R::of(RHO0))
}

/// Full atmospheric state at geometric altitude `h` (m).
pub fn sample<R: Real>(h: R) -> Result<AtmosphereSample<R>> {
    let rho = density(h)?;
    let theta = temperature(h)?;
    Ok(AtmosphereSample {
        rho,
        theta,
        pressure: rho * R::of(R_GAS) * theta,
        speed_of_sound: (R::of(GAMMA) * R::of(R_GAS) * theta).sqrt(),
        sigma: rho / R::of(RHO0),
    })
}

/// Geopotential altitude (m) corresponding to geometric altitude `h` (m).
///
/// Closed form of integrating the inverse-square gravity decay from 0 to h:
/// H = R_E h / (R_E + h). Diagnostic only; the dynamics use geometric
/// altitude throughout.
pub fn geopotential_altitude<R: Real>(h: R) -> R {
    let re = R::of(R_EARTH);
    re * h / (re + h)
}

/// Fractional reduction of gravitational acceleration at altitude `h` (m):
/// 1 - (R_E / (R_E + h))^2.
pub fn gravity_reduction_fraction<R: Real>(h: R) -> R {
    let ratio = R::of(R_EARTH) / (R::of(R_EARTH) + h);
    R::one() - ratio * ratio
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sea_level_matches_standard_values() {
        assert_abs_diff_eq!(density(0.0_f64).unwrap(), 1.225, epsilon = 1e-12);
        assert_abs_diff_eq!(temperature(0.0_f64).unwrap(), 288.15, epsilon = 1e-12);
        assert_abs_diff_eq!(density_ratio(0.0_f64).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn published_rows_reproduce() {
        // Spot rows; the acceptance suite covers the full 21-row table.
        assert_abs_diff_eq!(density(5000.0_f64).unwrap(), 0.73611, epsilon = 5e-5);
        assert_abs_diff_eq!(density(11_000.0_f64).unwrap(), 0.36391, epsilon = 5e-5);
        assert_abs_diff_eq!(density(20_000.0_f64).unwrap(), 0.08803, epsilon = 5e-5);
        assert_abs_diff_eq!(
            density_ratio(10_000.0_f64).unwrap(),
            0.33690,
            epsilon = 5e-5
        );
        assert_abs_diff_eq!(temperature(2000.0_f64).unwrap(), 275.15, epsilon = 1e-9);
        assert_abs_diff_eq!(temperature(15_000.0_f64).unwrap(), 216.65, epsilon = 1e-9);
    }

    #[test]
    fn branch_continuity_at_layer_boundary() {
        let tropo = 1.225_f64 * (1.0 - constants::M0 * 11_000.0).powf(constants::N0);
        assert!((tropo - constants::RHO1).abs() <= 1e-5);
    }

    #[test]
    fn boundary_altitude_uses_troposphere_branch() {
        let tropo = 1.225_f64 * (1.0 - constants::M0 * 11_000.0).powf(constants::N0);
        assert_eq!(density(11_000.0_f64).unwrap(), tropo);
    }

    #[test]
    fn negative_altitude_allowed() {
        let rho = density(-50.0_f64).unwrap();
        assert!(rho > 1.225);
    }

    #[test]
    fn ceiling_is_a_hard_error() {
        assert!(matches!(
            density(21_000.0_f64),
            Err(Error::AltitudeOutOfRange(_))
        ));
        assert!(pressure(20_000.0_f64).is_ok());
    }

    #[test]
    fn pressure_follows_ideal_gas_law() {
        // Hand evaluation from the sea-level row: 1.225 * 287.05 * 288.15.
        assert_abs_diff_eq!(pressure(0.0_f64).unwrap(), 101_323.9854375, epsilon = 1e-6);
        let expected_11k = density(11_000.0_f64).unwrap() * 287.05 * 216.65;
        assert_abs_diff_eq!(
            pressure(11_000.0_f64).unwrap(),
            expected_11k,
            epsilon = 1e-9
        );
    }

    #[test]
    fn speed_of_sound_sea_level_and_isothermal_layer() {
        assert_abs_diff_eq!(speed_of_sound(0.0_f64).unwrap(), 340.29, epsilon = 0.05);
        let a11 = (1.40_f64 * 287.05 * 216.65).sqrt();
        // 11 km itself sits on the troposphere branch, so its temperature
        // differs from the isothermal value by the branch-continuity gap.
        assert_abs_diff_eq!(speed_of_sound(11_000.0_f64).unwrap(), a11, epsilon = 1e-10);
        assert_eq!(
            speed_of_sound(15_000.0_f64).unwrap(),
            speed_of_sound(12_000.0_f64).unwrap()
        );
    }

    #[test]
    fn geopotential_altitude_matches_quadrature() {
        // Trapezoid-rule quadrature of the inverse-square gravity decay.
        let quad = |h: f64| {
            let n = 200_000;
            let dz = h / n as f64;
            let g = |z: f64| (R_EARTH / (R_EARTH + z)).powi(2);
            let mut acc = 0.5 * (g(0.0) + g(h));
            for i in 1..n {
                acc += g(i as f64 * dz);
            }
            acc * dz
        };
        for &h in &[1000.0_f64, 10_000.0, 20_000.0] {
            assert_abs_diff_eq!(geopotential_altitude(h), quad(h), epsilon = 0.01);
            assert!(geopotential_altitude(h) < h);
        }
        assert_eq!(geopotential_altitude(0.0_f64), 0.0);
        assert_abs_diff_eq!(geopotential_altitude(20_000.0_f64), 19_937.0, epsilon = 1.0);
    }

    #[test]
    fn gravity_reduction_reference_points() {
        assert_eq!(gravity_reduction_fraction(0.0_f64), 0.0);
        assert_abs_diff_eq!(
            gravity_reduction_fraction(20_000.0_f64),
            0.00625,
            epsilon = 1e-5
        );
        assert_abs_diff_eq!(gravity_reduction_fraction(R_EARTH), 0.75, epsilon = 1e-12);
    }

    #[test]
    fn density_strictly_decreasing_on_metre_grid() {
        let mut prev = density(0.0_f64).unwrap();
        for h in 1..=20_000 {
            let rho = density(h as f64).unwrap();
            assert!(rho < prev, "density not decreasing at h = {h}");
            prev = rho;
        }
    }

    #[test]
    fn works_in_f32() {
        let s = sample(5000.0_f32).unwrap();
        assert!((s.rho - 0.73611).abs() < 1e-4);
        assert!((s.sigma - 0.60091).abs() < 1e-4);
    }
}
