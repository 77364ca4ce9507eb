//! Aircraft design constants: geometry, mass, inertia, and the aerodynamic
//! constants that close the coefficient models.
//!
//! Thirty scalars describe one airframe: mass, wing area, two reference
//! lengths, six inertia entries, five force constants, fourteen stability
//! derivatives, and the take-off altitude. [`AirframeParams::validate`]
//! checks the structural invariants once; after that the set is immutable
//! and safe to share across concurrent runs.

use crate::error::{Error, Result};
use crate::linalg::Mat3;
use crate::real::Real;

/// Default stall-warning threshold on the angle of attack (rad) (about 15 deg).
pub const DEFAULT_ALPHA_WARN: f64 = 0.26;

/// Moments and products of inertia about the body axes (kg m^2).
///
/// Products follow the flight-dynamics sign convention in which the inertia
/// matrix is
///
/// ```text
/// [  Ixx  -Ixy  -Ixz ]
/// [ -Ixy   Iyy  -Iyz ]
/// [ -Ixz  -Iyz   Izz ]
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InertiaTensor<R> {
    /// Moment about x_b (roll) (kg m^2).
    pub ixx: R,
    /// Moment about y_b (pitch) (kg m^2).
    pub iyy: R,
    /// Moment about z_b (yaw) (kg m^2).
    pub izz: R,
    /// Product in the y_b-z_b plane (kg m^2).
    pub iyz: R,
    /// Product in the x_b-z_b plane (kg m^2).
    pub ixz: R,
    /// Product in the x_b-y_b plane (kg m^2).
    pub ixy: R,
}

impl<R: Real> InertiaTensor<R> {
    pub fn new(ixx: R, iyy: R, izz: R, iyz: R, ixz: R, ixy: R) -> Self {
        Self {
            ixx,
            iyy,
            izz,
            iyz,
            ixz,
            ixy,
        }
    }

    /// Diagonal tensor with zero products of inertia.
    pub fn diagonal(ixx: R, iyy: R, izz: R) -> Self {
        Self::new(ixx, iyy, izz, R::zero(), R::zero(), R::zero())
    }

    /// The full 3x3 inertia matrix.
    pub fn matrix(&self) -> Mat3<R> {
        let (a, b, c, d, e, f) = self.entries();
        Mat3::new([[a, -f, -e], [-f, b, -d], [-e, -d, c]])
    }

    /// Determinant of the inertia matrix, expanded in the six entries:
    /// A B C - A D^2 - B E^2 - C F^2 - 2 D E F.
    pub fn determinant(&self) -> R {
        let (a, b, c, d, e, f) = self.entries();
        let two = R::of(2.0);
        a * b * c - a * d * d - b * e * e - c * f * f - two * d * e * f
    }

    /// (A, B, C, D, E, F) = (Ixx, Iyy, Izz, Iyz, Ixz, Ixy).
    pub(crate) fn entries(&self) -> (R, R, R, R, R, R) {
        (self.ixx, self.iyy, self.izz, self.iyz, self.ixz, self.ixy)
    }

    fn validate(&self) -> Result<()> {
        // Positive definiteness via leading principal minors. The angular
        // momentum equations divide by the determinant, so this is required,
        // not merely physical good taste.
        let m1 = self.ixx;
        if m1 <= R::zero() {
            return Err(Error::InertiaNotPositiveDefinite {
                order: 1,
                value: m1.as_f64(),
            });
        }
        let m2 = self.ixx * self.iyy - self.ixy * self.ixy;
        if m2 <= R::zero() {
            return Err(Error::InertiaNotPositiveDefinite {
                order: 2,
                value: m2.as_f64(),
            });
        }
        let m3 = self.determinant();
        if m3 <= R::zero() {
            return Err(Error::InertiaNotPositiveDefinite {
                order: 3,
                value: m3.as_f64(),
            });
        }
        Ok(())
    }
}

/// The five constants of the force-coefficient models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AeroForceConstants<R> {
    /// Lift coefficient at zero angle of attack (-).
    pub c_l0: R,
    /// Lift-curve slope (1/rad).
    pub c_l_alpha: R,
    /// Zero-lift (parasitic) drag coefficient (-).
    pub c_d0: R,
    /// Lift-induced drag factor in the drag polar (-).
    pub k_cd: R,
    /// Side-force derivative with sideslip (1/rad).
    pub c_c_beta: R,
}

/// The fourteen stability derivatives of the moment-coefficient models.
///
/// Angle and deflection derivatives are per radian; rate derivatives are
/// dimensionless because the rates enter scaled by b/V or c/V.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityDerivatives<R> {
    pub c_l_beta: R,
    pub c_l_p: R,
    pub c_l_r: R,
    pub c_l_delta_l: R,
    pub c_l_delta_n: R,
    pub c_m0: R,
    pub c_m_alpha: R,
    pub c_m_q: R,
    pub c_m_delta_m: R,
    pub c_n_beta: R,
    pub c_n_p: R,
    pub c_n_r: R,
    pub c_n_delta_l: R,
    pub c_n_delta_n: R,
}

impl<R: Real> StabilityDerivatives<R> {
    /// Determinant of the 2x2 aileron/rudder effectiveness matrix.
    ///
    /// The roll/yaw deflection solves divide by this; it must not vanish.
    pub fn control_effectiveness_determinant(&self) -> R {
        self.c_l_delta_l * self.c_n_delta_n - self.c_l_delta_n * self.c_n_delta_l
    }
}

/// The complete constant-parameter set for one airframe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AirframeParams<R> {
    /// Aircraft mass (kg).
    pub mass: R,
    /// Wing planform area (m^2).
    pub wing_area: R,
    /// Longitudinal reference length (mean chord) (m).
    pub chord: R,
    /// Lateral reference length (wing span) (m).
    pub span: R,
    pub inertia: InertiaTensor<R>,
    pub force_constants: AeroForceConstants<R>,
    pub derivatives: StabilityDerivatives<R>,
    /// Geometric altitude of the take-off point (m).
    pub h_ini: R,
    /// Stall-warning threshold on the angle of attack (rad).
    pub alpha_warn: R,
}

impl<R: Real> AirframeParams<R> {
    /// Checks every structural invariant and returns the set unchanged.
    ///
    /// Idempotent: validating a validated set succeeds with the same value.
    pub fn validate(self) -> Result<Self> {
        if self.mass <= R::zero() {
            return Err(Error::NonPositiveMass(self.mass.as_f64()));
        }
        if self.wing_area <= R::zero() {
            return Err(Error::NonPositiveArea(self.wing_area.as_f64()));
        }
        if self.chord <= R::zero() {
            return Err(Error::NonPositiveLength {
                name: "chord",
                value: self.chord.as_f64(),
            });
        }
        if self.span <= R::zero() {
            return Err(Error::NonPositiveLength {
                name: "span",
                value: self.span.as_f64(),
            });
        }
        self.inertia.validate()?;
        if self.derivatives.control_effectiveness_determinant() == R::zero() {
            return Err(Error::SingularControlEffectiveness);
        }
        if self.derivatives.c_m_delta_m == R::zero() {
            return Err(Error::SingularElevator);
        }
        if self.h_ini < R::zero() || self.h_ini > R::of(20_000.0) {
            return Err(Error::TakeOffAltitudeOutOfRange(self.h_ini.as_f64()));
        }
        Ok(self)
    }

    /// Derived inertia-matrix determinant.
    pub fn inertia_determinant(&self) -> R {
        self.inertia.determinant()
    }

    /// A synthetic light-utility airframe for tests, examples, and docs.
    ///
    /// The numbers are plausible in sign and magnitude but are not measured
    /// data for any real aircraft.
    pub fn synthetic() -> Self {
        Self {
            mass: R::of(1100.0),
            wing_area: R::of(16.0),
            chord: R::of(1.5),
            span: R::of(10.0),
            inertia: InertiaTensor::new(
                R::of(1600.0),
                R::of(2700.0),
                R::of(4100.0),
                R::zero(),
                R::of(120.0),
                R::zero(),
            ),
            force_constants: AeroForceConstants {
                c_l0: R::of(0.30),
                c_l_alpha: R::of(5.0),
                c_d0: R::of(0.025),
                k_cd: R::of(0.05),
                c_c_beta: R::of(-0.35),
            },
            derivatives: StabilityDerivatives {
                c_l_beta: R::of(-0.08),
                c_l_p: R::of(-0.45),
                c_l_r: R::of(0.10),
                c_l_delta_l: R::of(0.12),
                c_l_delta_n: R::of(0.01),
                c_m0: R::of(0.04),
                c_m_alpha: R::of(-0.60),
                c_m_q: R::of(-8.0),
                c_m_delta_m: R::of(-1.10),
                c_n_beta: R::of(0.07),
                c_n_p: R::of(-0.03),
                c_n_r: R::of(-0.09),
                c_n_delta_l: R::of(-0.01),
                c_n_delta_n: R::of(-0.08),
            },
            h_ini: R::zero(),
            alpha_warn: R::of(DEFAULT_ALPHA_WARN),
        }
    }
}
