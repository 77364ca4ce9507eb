//! Error type shared by every module in the crate.
//!
//! Diagnostic payloads are widened to `f64` so the enum stays independent of
//! the scalar type the engine runs in.

use thiserror::Error;

/// Equation group that failed while assembling a state derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquationGroup {
    Altitude,
    AirDensity,
    DynamicPressure,
    ForceCoefficients,
    MomentCoefficients,
    ForcesAndMoments,
    AngularMomentum,
    LinearMomentum,
    AttitudeKinematics,
    TrajectoryKinematics,
}

impl core::fmt::Display for EquationGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let name = match self {
            Self::Altitude => "altitude",
            Self::AirDensity => "air density",
            Self::DynamicPressure => "dynamic pressure",
            Self::ForceCoefficients => "force coefficients",
            Self::MomentCoefficients => "moment coefficients",
            Self::ForcesAndMoments => "forces and moments",
            Self::AngularMomentum => "angular momentum",
            Self::LinearMomentum => "linear momentum",
            Self::AttitudeKinematics => "attitude kinematics",
            Self::TrajectoryKinematics => "trajectory kinematics",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // -- airframe validation --
    #[error("non-positive mass: {0} kg")]
    NonPositiveMass(f64),
    #[error("non-positive wing area: {0} m^2")]
    NonPositiveArea(f64),
    #[error("non-positive reference length {name}: {value} m")]
    NonPositiveLength { name: &'static str, value: f64 },
    #[error("inertia tensor not positive definite: leading principal minor {order} = {value}")]
    InertiaNotPositiveDefinite { order: u8, value: f64 },
    #[error(
        "singular control effectiveness: C_l_delta_l*C_n_delta_n - C_l_delta_n*C_n_delta_l = 0"
    )]
    SingularControlEffectiveness,
    #[error("zero elevator effectiveness: C_m_delta_m = 0")]
    SingularElevator,
    #[error("take-off altitude {0} m outside [0, 20000] m")]
    TakeOffAltitudeOutOfRange(f64),

    // -- atmosphere --
    #[error("altitude {0} m above the 20000 m model ceiling")]
    AltitudeOutOfRange(f64),
    #[error("altitude {0} m below the -500 m simulation floor")]
    AltitudeBelowFloor(f64),

    // -- axes / wind angles --
    #[error("hover singularity: airspeed {airspeed} m/s below guard {v_min} m/s")]
    HoverSingularity { airspeed: f64, v_min: f64 },
    #[error("pure sideslip: u = w = 0 leaves the angle of attack undefined")]
    PureSideslip,
    #[error("flank angle undefined at u = 0")]
    UndefinedFlank,
    #[error("gimbal singularity: |cos(theta)| = {0} too small to recover attitude rates")]
    GimbalSingularity(f64),
    #[error("sideslip singularity: |cos(beta)| = {0} too small")]
    SideslipSingularity(f64),

    // -- dynamics --
    #[error("singular inertia: determinant {0} <= 0")]
    SingularInertia(f64),
    #[error("symmetric form requires zero products of inertia I_yz and I_xy (got {iyz}, {ixy})")]
    NotSymmetric { iyz: f64, ixy: f64 },
    #[error("{group}: {source}")]
    Dynamics {
        group: EquationGroup,
        #[source]
        source: Box<Error>,
    },

    // -- simulation driver --
    #[error("invalid simulation setup: {0}")]
    InvalidConfig(String),
    #[error("control schedule: {0}")]
    InvalidSchedule(String),
    #[error("at t = {t} s: {source}")]
    AtTime {
        t: f64,
        #[source]
        source: Box<Error>,
    },
    #[error("steady-level trim unattainable: {0}")]
    UnattainableTrim(String),

    // -- inverse simulation --
    #[error("trajectory samples not uniformly spaced: dt[{index}] = {dt} vs dt[0] = {dt0}")]
    NonUniformSampling { index: usize, dt: f64, dt0: f64 },
    #[error("trajectory needs at least 5 samples, got {0}")]
    TooFewSamples(usize),
    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),
    #[error("no convergence at step {step}: residual {residual} after {iterations} iterations")]
    NoConvergence {
        step: usize,
        residual: f64,
        iterations: usize,
    },
    #[error("singular Jacobian in the step solve at step {step}")]
    SingularJacobian { step: usize },
    #[error("at step {index}: {source}")]
    AtStep {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps an error with the equation group that produced it.
    pub fn in_group(self, group: EquationGroup) -> Self {
        Error::Dynamics {
            group,
            source: Box::new(self),
        }
    }

    /// Wraps an error with the simulation time at which it occurred.
    pub fn at_time(self, t: f64) -> Self {
        Error::AtTime {
            t,
            source: Box::new(self),
        }
    }

    /// Wraps an error with the inverse-simulation step index.
    pub fn at_step(self, index: usize) -> Self {
        Error::AtStep {
            index,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
