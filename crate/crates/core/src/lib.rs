//! Six-degree-of-freedom flight dynamics for fixed-wing aircraft.
//!
//! The engine closes the rigid-body equations of motion for a generic (not
//! necessarily symmetric) fixed-wing airframe: wind-axes linear momentum,
//! body-axes angular momentum, Euler-angle attitude kinematics, flight-path
//! kinematics, linear aerodynamic coefficient models, and the two-layer
//! standard atmosphere up to 20 km. On top of the closure sit three
//! drivers:
//!
//! * direct simulation ([`sim::simulate`]): control histories in, trajectory
//!   out;
//! * inverse simulation ([`inverse::inverse_simulate`]): desired trajectory
//!   plus one constrained flight variable in, control histories out;
//! * steady-level trim ([`sim::trim_steady_level`]).
//!
//! Everything is generic over the scalar type through [`Real`] (`f32` or
//! `f64`); the `*64` aliases below pin the common types to `f64`. All
//! internal quantities are SI with angles in radians.

pub mod aero;
pub mod airframe;
pub mod atmosphere;
pub mod axes;
pub mod dynamics;
pub mod error;
pub mod inverse;
pub mod linalg;
pub mod real;
pub mod sim;

pub use error::{Error, Result};
pub use real::Real;

pub type AirframeParams64 = airframe::AirframeParams<f64>;
pub type ControlInputs64 = aero::ControlInputs<f64>;
pub type FlightState64 = dynamics::FlightState<f64>;
pub type StateDerivative64 = dynamics::StateDerivative<f64>;
pub type SimulationConfig64 = sim::SimulationConfig<f64>;
pub type ControlSchedule64 = sim::ControlSchedule<f64>;
pub type TrajectoryRecord64 = sim::TrajectoryRecord<f64>;
pub type TrajectorySpec64 = inverse::TrajectorySpec<f64>;
pub type InverseSolution64 = inverse::InverseSolution<f64>;
