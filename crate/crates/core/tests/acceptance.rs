//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured figure once its assertions hold (run with `--nocapture` to
//! see the lines).

use std::time::Instant;

use approx::assert_abs_diff_eq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sixdof::aero::{
    aileron_rudder_from_roll_yaw, elevator_from_pitch_coefficient, moment_coefficients,
    ControlInputs,
};
use sixdof::airframe::{AirframeParams, InertiaTensor};
use sixdof::atmosphere::{self, constants};
use sixdof::axes::{
    body_rates_from_euler_rates, body_velocity_from_wind, euler_rates_from_body_rates,
    wind_from_body_velocity, BodyRates, EulerAngles, GroundPosition, WindState,
};
use sixdof::dynamics::{
    angular_accelerations, angular_accelerations_symmetric, auxiliary_moments,
    linear_accelerations, AuxiliaryMoments, DynamicsOptions, FlightState, LateralThrustSign,
};
use sixdof::inverse::{inverse_simulate, ConstraintSeries, InverseOptions, TrajectorySpec};
use sixdof::sim::{
    simulate, trim_steady_level, ControlSchedule, Interpolation, SimulationConfig, TrajectoryRecord,
};

const G0: f64 = constants::G0;

/// Published 21-row table: altitude, density, density ratio, temperature.
const ATMOSPHERE_TABLE: [(f64, f64, f64, f64); 21] = [
    (0.0, 1.22500, 1.00000, 288.15),
    (1000.0, 1.11164, 0.90746, 281.65),
    (2000.0, 1.00649, 0.82162, 275.15),
    (3000.0, 0.90912, 0.74214, 268.65),
    (4000.0, 0.81913, 0.66867, 262.15),
    (5000.0, 0.73611, 0.60091, 255.65),
    (6000.0, 0.65969, 0.53852, 249.15),
    (7000.0, 0.58950, 0.48122, 242.65),
    (8000.0, 0.52516, 0.42870, 236.15),
    (9000.0, 0.46634, 0.38069, 229.65),
    (10000.0, 0.41270, 0.33690, 223.15),
    (11000.0, 0.36391, 0.29707, 216.65),
    (12000.0, 0.31082, 0.25373, 216.65),
    (13000.0, 0.26548, 0.21672, 216.65),
    (14000.0, 0.22675, 0.18510, 216.65),
    (15000.0, 0.19367, 0.15810, 216.65),
    (16000.0, 0.16542, 0.13503, 216.65),
    (17000.0, 0.14128, 0.11533, 216.65),
    (18000.0, 0.12067, 0.09851, 216.65),
    (19000.0, 0.10307, 0.08414, 216.65),
    (20000.0, 0.08803, 0.07186, 216.65),
];

fn params() -> AirframeParams<f64> {
    AirframeParams::synthetic().validate().unwrap()
}

fn random_pd_inertia(rng: &mut ChaCha8Rng) -> InertiaTensor<f64> {
    loop {
        let t = InertiaTensor::new(
            rng.gen_range(400.0..6000.0),
            rng.gen_range(400.0..6000.0),
            rng.gen_range(400.0..6000.0),
            rng.gen_range(-300.0..300.0),
            rng.gen_range(-300.0..300.0),
            rng.gen_range(-300.0..300.0),
        );
        if t.ixx > 0.0 && t.ixx * t.iyy - t.ixy * t.ixy > 0.0 && t.determinant() > 0.0 {
            return t;
        }
    }
}

/// The shared 60 s maneuver exercising all three deflections from trim.
fn maneuver_record(dt: f64) -> TrajectoryRecord<f64> {
    let p = params();
    let (v, h) = (50.0, 1000.0);
    let trim = trim_steady_level(v, h, &p).unwrap();
    let base = trim.controls();
    // Schedule breakpoints sit on the 0.01 s grid for every dt level, so the
    // piecewise-linear kinks always align with step boundaries.
    let schedule = ControlSchedule::from_fn(60.0, 0.01, Interpolation::Linear, |t: f64| {
        let tau = 2.0 * std::f64::consts::PI * t;
        let mut c = base;
        c.elevator += 0.02 * (0.10 * tau).sin();
        c.aileron += 0.01 * (0.07 * tau).sin();
        c.rudder += 0.01 * (0.05 * tau).sin();
        c
    })
    .unwrap();
    let config = SimulationConfig::new(dt, 60.0, trim.state(v, h, &p));
    simulate(&config, &schedule, &p).unwrap()
}

#[test]
fn criterion_01_atmosphere_table_reproduction() {
    let start = Instant::now();
    let mut max_rho = 0.0_f64;
    let mut max_sigma = 0.0_f64;
    let mut max_theta = 0.0_f64;
    for &(h, rho, sigma, theta) in &ATMOSPHERE_TABLE {
        let s = atmosphere::sample(h).unwrap();
        max_rho = max_rho.max((s.rho - rho).abs());
        max_sigma = max_sigma.max((s.sigma - sigma).abs());
        max_theta = max_theta.max((s.theta - theta).abs());
    }
    let elapsed = start.elapsed();
    assert!(max_rho <= 5e-5, "density error {max_rho}");
    assert!(max_sigma <= 5e-5, "density-ratio error {max_sigma}");
    assert!(max_theta <= 0.01, "temperature error {max_theta}");
    assert!(elapsed.as_secs_f64() < 1.0);
    println!(
        "criterion 01 PASS: 21-row atmosphere table, max errors rho {max_rho:.2e}, sigma {max_sigma:.2e}, theta {max_theta:.2e} K in {elapsed:?}"
    );
}

#[test]
fn criterion_02_branch_continuity_at_11km() {
    let tropo = constants::RHO0 * (1.0 - constants::M0 * 11_000.0).powf(constants::N0);
    let gap = (tropo - 0.36391).abs();
    assert!(gap <= 1e-5, "branch gap {gap}");
    println!("criterion 02 PASS: troposphere/tropopause density gap {gap:.2e} kg/m^3");
}

#[test]
fn criterion_03_geopotential_gravity_speed_of_sound() {
    let h_geo = atmosphere::geopotential_altitude(20_000.0_f64);
    assert_abs_diff_eq!(h_geo, 19_937.0, epsilon = 1.0);
    let red = atmosphere::gravity_reduction_fraction(20_000.0_f64);
    assert_abs_diff_eq!(red, 0.00625, epsilon = 1e-5);
    let a0 = atmosphere::speed_of_sound(0.0_f64).unwrap();
    assert_abs_diff_eq!(a0, 340.29, epsilon = 0.05);
    println!(
        "criterion 03 PASS: H(20 km) = {h_geo:.1} m, gravity reduction {red:.5}, a(0) = {a0:.2} m/s"
    );
}

#[test]
fn criterion_04_adjugate_matches_linear_solve() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let inertia = random_pd_inertia(&mut rng);
        let aux = AuxiliaryMoments {
            t1: rng.gen_range(-2000.0..2000.0),
            t2: rng.gen_range(-2000.0..2000.0),
            t3: rng.gen_range(-2000.0..2000.0),
        };
        let (p_dot, q_dot, r_dot) =
            angular_accelerations(inertia.determinant(), &inertia, &aux).unwrap();

        let m = inertia.matrix().rows;
        let a = nalgebra::Matrix3::new(
            m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2],
        );
        let b = nalgebra::Vector3::new(aux.t1, aux.t2, aux.t3);
        let x = a.lu().solve(&b).expect("positive definite");

        let scale = x.amax().max(1e-30);
        worst = worst
            .max((p_dot - x[0]).abs() / scale)
            .max((q_dot - x[1]).abs() / scale)
            .max((r_dot - x[2]).abs() / scale);
    }
    let elapsed = start.elapsed();
    assert!(worst <= 1e-10, "worst relative error {worst}");
    assert!(elapsed.as_secs_f64() < 1.0);
    println!(
        "criterion 04 PASS: adjugate vs LU solve over 1000 tensors, worst rel error {worst:.2e} in {elapsed:?}"
    );
}

#[test]
fn criterion_05_symmetric_reduction_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(1005);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let mut inertia = random_pd_inertia(&mut rng);
        inertia.iyz = 0.0;
        inertia.ixy = 0.0;
        let rates = BodyRates::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        let (mx, my, mz) = (
            rng.gen_range(-2000.0..2000.0),
            rng.gen_range(-2000.0..2000.0),
            rng.gen_range(-2000.0..2000.0),
        );
        let reduced = angular_accelerations_symmetric(&inertia, &rates, mx, my, mz).unwrap();
        let aux = auxiliary_moments(&rates, &inertia, mx, my, mz);
        let full = angular_accelerations(inertia.determinant(), &inertia, &aux).unwrap();
        let scale = full.0.abs().max(full.1.abs()).max(full.2.abs()).max(1e-30);
        worst = worst
            .max((reduced.0 - full.0).abs() / scale)
            .max((reduced.1 - full.1).abs() / scale)
            .max((reduced.2 - full.2).abs() / scale);
    }
    assert!(worst <= 1e-12, "worst relative error {worst}");
    println!(
        "criterion 05 PASS: symmetric reduction vs full form over 1000 cases, worst rel error {worst:.2e}"
    );
}

/// Body-axes oracle: accelerations from the body-frame momentum balance
/// projected back onto the wind-axes rates.
fn body_axes_oracle(
    state: &FlightState<f64>,
    qs: f64,
    cx: f64,
    cy: f64,
    cz: f64,
    thrust: f64,
    mass: f64,
) -> (f64, f64, f64) {
    let vel = body_velocity_from_wind(&state.wind);
    let (u, v, w) = (vel.x, vel.y, vel.z);
    let BodyRates { p, q, r } = state.rates;
    let (sin_phi, cos_phi) = state.euler.phi.sin_cos();
    let (sin_theta, cos_theta) = state.euler.theta.sin_cos();

    let u_dot = v * r - w * q + (qs * cx + thrust) / mass - G0 * sin_theta;
    let v_dot = w * p - u * r + qs * cy / mass + G0 * cos_theta * sin_phi;
    let w_dot = u * q - v * p + qs * cz / mass + G0 * cos_theta * cos_phi;

    let speed = state.wind.airspeed;
    let speed_dot = (u * u_dot + v * v_dot + w * w_dot) / speed;
    let beta_dot = (v_dot - speed_dot * state.wind.beta.sin()) / (speed * state.wind.beta.cos());
    let alpha_dot = (w_dot * u - u_dot * w) / (u * u + w * w);
    (speed_dot, beta_dot, alpha_dot)
}

fn random_admissible_state(rng: &mut ChaCha8Rng) -> FlightState<f64> {
    FlightState {
        wind: WindState::new(
            rng.gen_range(20.0..200.0),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.7..0.7),
        ),
        rates: BodyRates::new(
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
        ),
        euler: EulerAngles::new(
            rng.gen_range(-1.2..1.2),
            rng.gen_range(-1.2..1.2),
            rng.gen_range(-3.1..3.1),
        ),
        position: GroundPosition::new(0.0, 0.0, rng.gen_range(-8000.0..200.0)),
    }
}

#[test]
fn criterion_06_wind_body_equivalence_and_literal_witness() {
    let p = params();
    let mut rng = ChaCha8Rng::seed_from_u64(1006);
    let mut worst_default = 0.0_f64;
    let mut worst_literal_rest = 0.0_f64;
    let mut worst_witness = 0.0_f64;
    for _ in 0..1000 {
        let state = random_admissible_state(&mut rng);
        let qbar = rng.gen_range(50.0..4000.0);
        let (cx, cy, cz) = (
            rng.gen_range(-0.6..0.6),
            rng.gen_range(-0.6..0.6),
            rng.gen_range(-1.5..0.5),
        );
        let thrust = rng.gen_range(100.0..8000.0);
        let qs = qbar * p.wing_area;

        let (ov, ob, oa) = body_axes_oracle(&state, qs, cx, cy, cz, thrust, p.mass);
        let scale_v = ov.abs().max(1.0);
        let scale_b = ob.abs().max(1.0);
        let scale_a = oa.abs().max(1.0);

        let (dv, db, da) = linear_accelerations(
            &state,
            &p,
            qbar,
            cx,
            cy,
            cz,
            thrust,
            &DynamicsOptions::default(),
        )
        .unwrap();
        worst_default = worst_default
            .max((dv - ov).abs() / scale_v)
            .max((db - ob).abs() / scale_b)
            .max((da - oa).abs() / scale_a);

        // Literal mode: identical except the sideslip-rate thrust term. The
        // printed form is transcribed independently below as a witness.
        let (lv, lb, la) = linear_accelerations(
            &state,
            &p,
            qbar,
            cx,
            cy,
            cz,
            thrust,
            &DynamicsOptions {
                lateral_thrust_sign: LateralThrustSign::Published,
                ..DynamicsOptions::default()
            },
        )
        .unwrap();
        worst_literal_rest = worst_literal_rest
            .max((lv - ov).abs() / scale_v)
            .max((la - oa).abs() / scale_a);

        let (sin_a, cos_a) = state.wind.alpha.sin_cos();
        let (sin_b, cos_b) = state.wind.beta.sin_cos();
        let (sin_phi, cos_phi) = state.euler.phi.sin_cos();
        let (sin_theta, cos_theta) = state.euler.theta.sin_cos();
        let m = p.mass;
        let v = state.wind.airspeed;
        let printed_beta_dot = (qs * (cy * cos_b - cx * cos_a * sin_b - cz * sin_a * sin_b)
            + m * G0
                * (cos_theta * sin_phi * cos_b + sin_theta * cos_a * sin_b
                    - cos_theta * cos_phi * sin_a * sin_b)
            + thrust * cos_a * sin_b)
            / (m * v)
            + (-state.rates.r * cos_a + state.rates.p * sin_a);
        worst_witness = worst_witness.max((lb - printed_beta_dot).abs() / scale_b);

        // The literal mode's only disagreement with the oracle is the
        // doubled thrust term.
        let expected_gap = 2.0 * thrust * cos_a * sin_b / (m * v);
        assert_abs_diff_eq!(lb - ob, expected_gap, epsilon = 1e-10 * scale_b);
    }
    assert!(worst_default <= 1e-10, "default-mode error {worst_default}");
    assert!(
        worst_literal_rest <= 1e-10,
        "literal mode polluted other axes: {worst_literal_rest}"
    );
    assert!(
        worst_witness <= 1e-12,
        "literal mode deviates from the printed form: {worst_witness}"
    );
    println!(
        "criterion 06 PASS: wind-axes vs body-axes oracle over 1000 states, worst rel error {worst_default:.2e}; literal mode reproduces the printed sideslip equation (witness {worst_witness:.2e})"
    );
}

#[test]
fn criterion_07_coefficient_inverse_roundtrip() {
    let p = params();
    let sd = p.derivatives;
    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let alpha = rng.gen_range(-0.4..0.4);
        let beta = rng.gen_range(-0.4..0.4);
        let rates = BodyRates::new(
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
        );
        let v = rng.gen_range(15.0..250.0);
        let controls = ControlInputs::new(
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
            0.0,
        );
        let (roll, pitch, yaw) =
            moment_coefficients(alpha, beta, &rates, v, &controls, &sd, p.span, p.chord, 1.0)
                .unwrap();
        let elevator =
            elevator_from_pitch_coefficient(pitch, alpha, rates.q, v, &sd, p.chord, 1.0).unwrap();
        let (aileron, rudder) =
            aileron_rudder_from_roll_yaw(roll, yaw, beta, rates.p, rates.r, v, &sd, p.span, 1.0)
                .unwrap();
        worst = worst
            .max((elevator - controls.elevator).abs())
            .max((aileron - controls.aileron).abs())
            .max((rudder - controls.rudder).abs());
    }
    assert!(worst <= 1e-12, "worst roundtrip error {worst}");
    println!(
        "criterion 07 PASS: deflection solves invert the moment models over 1000 cases, worst error {worst:.2e}"
    );
}

#[test]
fn criterion_08_path_angle_identities_along_maneuver() {
    let record = maneuver_record(0.01);
    let az = record.summary.max_residual_azimuth;
    let el = record.summary.max_residual_elevation;
    assert!(az <= 1e-9, "azimuth identity residual {az}");
    assert!(el <= 1e-9, "elevation identity residual {el}");
    println!(
        "criterion 08 PASS: path-angle identity residuals over 60 s maneuver, max azimuth {az:.2e}, max elevation {el:.2e}"
    );
}

#[test]
fn criterion_09_trim_hold() {
    let start = Instant::now();
    let p = params();
    let (v, h) = (50.0, 1000.0);
    let trim = trim_steady_level(v, h, &p).unwrap();
    let schedule = ControlSchedule::constant(trim.controls());
    let config = SimulationConfig::new(0.01, 60.0, trim.state(v, h, &p));
    let record = simulate(&config, &schedule, &p).unwrap();

    let mut max_dh = 0.0_f64;
    let mut max_dv = 0.0_f64;
    let mut max_beta = 0.0_f64;
    let mut max_phi = 0.0_f64;
    for row in &record.rows {
        max_dh = max_dh.max((row.outputs.altitude - h).abs());
        max_dv = max_dv.max((row.state.wind.airspeed - v).abs());
        max_beta = max_beta.max(row.state.wind.beta.abs());
        max_phi = max_phi.max(row.state.euler.phi.abs());
    }
    let elapsed = start.elapsed();
    assert!(max_dh <= 0.5, "altitude drift {max_dh} m");
    assert!(max_dv <= 0.1, "airspeed drift {max_dv} m/s");
    assert!(max_beta <= 1e-6, "sideslip leak {max_beta} rad");
    assert!(max_phi <= 1e-6, "bank leak {max_phi} rad");
    assert!(elapsed.as_secs_f64() < 5.0);
    println!(
        "criterion 09 PASS: 60 s trim hold, |dh| {max_dh:.2e} m, |dV| {max_dv:.2e} m/s, |beta| {max_beta:.2e}, |phi| {max_phi:.2e} in {elapsed:?}"
    );
}

#[test]
fn criterion_10_direct_inverse_roundtrip() {
    let start = Instant::now();
    let p = params();
    let (v, h) = (50.0, 1000.0);
    let trim = trim_steady_level(v, h, &p).unwrap();
    let base = trim.controls();
    let dt = 0.01;
    let schedule = ControlSchedule::from_fn(30.0, dt, Interpolation::Linear, |t: f64| {
        let tau = 2.0 * std::f64::consts::PI * t;
        let mut c = base;
        c.elevator += 0.03 * (0.10 * tau).sin();
        c.aileron += 0.02 * (0.06 * tau).sin();
        c
    })
    .unwrap();
    let config = SimulationConfig::new(dt, 30.0, trim.state(v, h, &p));
    let record = simulate(&config, &schedule, &p).unwrap();

    // Inverse run constrained by the sideslip samples of the direct run.
    let times: Vec<f64> = record.rows.iter().map(|r| r.t).collect();
    let positions: Vec<GroundPosition<f64>> =
        record.rows.iter().map(|r| r.state.position).collect();
    let betas: Vec<f64> = record.rows.iter().map(|r| r.state.wind.beta).collect();
    let spec = TrajectorySpec::new(times, positions, ConstraintSeries::Sideslip(betas)).unwrap();
    let solution = inverse_simulate(&spec, &p, InverseOptions::default()).unwrap();
    assert_eq!(solution.steps.len(), record.rows.len());

    // RMS of each recovered control against the applied history, scaled by
    // that control's commanded range; constant channels (rudder, thrust)
    // fall back to the largest deflection range / the trim thrust.
    let n = record.rows.len() as f64;
    let mut sq = [0.0_f64; 4];
    let mut lo = [f64::INFINITY; 4];
    let mut hi = [f64::NEG_INFINITY; 4];
    for (s, r) in solution.steps.iter().zip(record.rows.iter()) {
        let truth = [
            r.controls.aileron,
            r.controls.elevator,
            r.controls.rudder,
            r.controls.thrust,
        ];
        let got = [
            s.controls.aileron,
            s.controls.elevator,
            s.controls.rudder,
            s.controls.thrust,
        ];
        for k in 0..4 {
            sq[k] += (got[k] - truth[k]).powi(2);
            lo[k] = lo[k].min(truth[k]);
            hi[k] = hi[k].max(truth[k]);
        }
    }
    let ranges = [hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2], hi[3] - lo[3]];
    let deflection_scale = ranges[0].max(ranges[1]);
    let scales = [
        if ranges[0] > 0.0 {
            ranges[0]
        } else {
            deflection_scale
        },
        if ranges[1] > 0.0 {
            ranges[1]
        } else {
            deflection_scale
        },
        if ranges[2] > 0.0 {
            ranges[2]
        } else {
            deflection_scale
        },
        if ranges[3] > 0.0 {
            ranges[3]
        } else {
            trim.thrust
        },
    ];
    let names = ["aileron", "elevator", "rudder", "thrust"];
    let mut rms_report = String::new();
    for k in 0..4 {
        let rms = (sq[k] / n).sqrt();
        assert!(
            rms <= 0.02 * scales[k],
            "{} RMS {rms} exceeds 2% of range {}",
            names[k],
            scales[k]
        );
        rms_report.push_str(&format!("{} {:.2e} ", names[k], rms));
    }

    // Re-simulating the recovered controls must reproduce the positions.
    let recovered: Vec<(f64, ControlInputs<f64>)> =
        solution.steps.iter().map(|s| (s.t, s.controls)).collect();
    let schedule_back = ControlSchedule::new(recovered, Interpolation::Linear).unwrap();
    let replay = simulate(&config, &schedule_back, &p).unwrap();
    let mut pos_sq = 0.0_f64;
    for (a, b) in replay.rows.iter().zip(record.rows.iter()) {
        pos_sq += (a.state.position.north - b.state.position.north).powi(2)
            + (a.state.position.east - b.state.position.east).powi(2)
            + (a.state.position.down - b.state.position.down).powi(2);
    }
    let pos_rms = (pos_sq / n).sqrt();
    assert!(pos_rms <= 1.0, "replay position RMS {pos_rms} m");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0);
    println!(
        "criterion 10 PASS: direct-inverse roundtrip, control RMS {rms_report}, replay position RMS {pos_rms:.2e} m in {elapsed:?}"
    );
}

#[test]
fn criterion_11_rk4_observed_order() {
    // Richardson triple on the criterion-08 maneuver; errors measured as
    // max scaled state difference at the common final time.
    let coarse = maneuver_record(0.01);
    let medium = maneuver_record(0.005);
    let fine = maneuver_record(0.0025);

    let diff = |a: &TrajectoryRecord<f64>, b: &TrajectoryRecord<f64>| -> f64 {
        let sa = a.rows.last().unwrap().state.to_array();
        let sb = b.rows.last().unwrap().state.to_array();
        sa.iter()
            .zip(sb.iter())
            .map(|(x, y)| (x - y).abs() / x.abs().max(1.0))
            .fold(0.0_f64, f64::max)
    };
    let d1 = diff(&coarse, &medium);
    let d2 = diff(&medium, &fine);
    let order = (d1 / d2).log2();
    assert!(
        (order - 4.0).abs() <= 0.3,
        "observed order {order} (d1 = {d1:.3e}, d2 = {d2:.3e})"
    );
    println!("criterion 11 PASS: RK4 observed order {order:.2} (d1 = {d1:.2e}, d2 = {d2:.2e})");
}

#[test]
fn criterion_12_kinematics_roundtrips() {
    let mut rng = ChaCha8Rng::seed_from_u64(1012);
    let mut worst_euler = 0.0_f64;
    for _ in 0..10_000 {
        let euler = EulerAngles::<f64>::new(
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-1.5688..1.5688),
            rng.gen_range(-3.0..3.0),
        );
        let rates = BodyRates::new(
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
        );
        let er = euler_rates_from_body_rates(&euler, &rates).unwrap();
        let back = body_rates_from_euler_rates(&euler, &er);
        worst_euler = worst_euler
            .max((back.p - rates.p).abs())
            .max((back.q - rates.q).abs())
            .max((back.r - rates.r).abs());
    }
    assert!(worst_euler <= 1e-10, "euler roundtrip error {worst_euler}");

    let mut worst_wind = 0.0_f64;
    for _ in 0..10_000 {
        let wind = WindState::<f64>::new(
            rng.gen_range(1.0..300.0),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.4..1.4),
        );
        let vel = body_velocity_from_wind(&wind);
        let back = wind_from_body_velocity(vel.x, vel.y, vel.z, 0.5).unwrap();
        worst_wind = worst_wind
            .max((back.airspeed - wind.airspeed).abs() / wind.airspeed)
            .max((back.alpha - wind.alpha).abs())
            .max((back.beta - wind.beta).abs());
    }
    assert!(worst_wind <= 1e-10, "wind roundtrip error {worst_wind}");
    println!(
        "criterion 12 PASS: 10^4-sample roundtrips, euler worst {worst_euler:.2e}, wind worst {worst_wind:.2e}"
    );
}
