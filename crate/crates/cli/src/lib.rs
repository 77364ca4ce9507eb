//! Command-line frontend: file ingestion, subcommand dispatch, and result
//! serialization for the flight-dynamics engine.
//!
//! Everything crossing the CLI boundary uses the configured angle unit
//! (degrees by default); the engine itself is SI with radians.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use sixdof::aero::ControlInputs;
use sixdof::airframe::{
    AeroForceConstants, AirframeParams, InertiaTensor, StabilityDerivatives, DEFAULT_ALPHA_WARN,
};
use sixdof::atmosphere;
use sixdof::axes::GroundPosition;
use sixdof::dynamics::{DynamicsOptions, LateralThrustSign};
use sixdof::inverse::{
    inverse_simulate, ConstraintSeries, InverseOptions, InverseSolution, TrajectorySpec,
};
use sixdof::sim::{
    simulate, trim_steady_level, ControlSchedule, Interpolation, SimulationConfig, TrajectoryRecord,
};

/// Failure classes mapped to process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad invocation: exit 1.
    Usage(String),
    /// Bad input data or parameters: exit 2.
    Validation(String),
    /// The solve itself failed: exit 3.
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Validation(m) | CliError::Numerical(m) => m,
        }
    }
}

/// Errors raised while running a solve are numerical; everything caught
/// before the solve starts is validation.
fn numerical(err: sixdof::Error) -> CliError {
    CliError::Numerical(err.to_string())
}

fn validation(err: impl std::fmt::Display) -> CliError {
    CliError::Validation(err.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AngleUnit {
    Deg,
    Rad,
}

impl AngleUnit {
    fn angle_in(self, value: f64) -> f64 {
        match self {
            AngleUnit::Deg => value.to_radians(),
            AngleUnit::Rad => value,
        }
    }

    fn angle_out(self, value: f64) -> f64 {
        match self {
            AngleUnit::Deg => value.to_degrees(),
            AngleUnit::Rad => value,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            AngleUnit::Deg => "deg",
            AngleUnit::Rad => "rad",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstraintKind {
    Beta,
    Phi,
}

#[derive(Debug, Parser)]
#[command(
    name = "sixdof",
    about = "Six-degree-of-freedom flight dynamics: direct simulation, inverse simulation, steady-level trim, and the standard atmosphere",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate the equations of motion under a control schedule.
    Simulate {
        /// Airframe constants file (key = value lines).
        #[arg(long)]
        airframe: PathBuf,
        /// Control schedule CSV: t,delta_l,delta_m,delta_n,thrust.
        #[arg(long)]
        controls: PathBuf,
        /// Initial airspeed (m/s); the run starts from steady-level trim.
        #[arg(long = "V")]
        airspeed: f64,
        /// Initial altitude (m).
        #[arg(long)]
        h: f64,
        /// Integration step (s).
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        /// Final time (s).
        #[arg(long)]
        t_end: f64,
        /// Trajectory record output path.
        #[arg(long)]
        output: PathBuf,
        /// Record every n-th step.
        #[arg(long, default_value_t = 1)]
        decimation: usize,
        /// Hold each control sample instead of interpolating linearly.
        #[arg(long)]
        zero_order_hold: bool,
        /// Use the published sign of the sideslip-rate thrust term.
        #[arg(long = "paper-literal")]
        paper_literal: bool,
        /// Hover guard on the airspeed (m/s).
        #[arg(long = "v-min", default_value_t = 1.0)]
        v_min: f64,
        /// Angle unit at the file boundary.
        #[arg(long, value_enum, default_value_t = AngleUnit::Deg)]
        units: AngleUnit,
    },
    /// Recover control histories for a prescribed trajectory.
    Inverse {
        #[arg(long)]
        airframe: PathBuf,
        /// Trajectory CSV: t,x_g,y_g,z_g[,beta|phi].
        #[arg(long)]
        trajectory: PathBuf,
        /// Which flight variable the optional fifth column constrains.
        #[arg(long, value_enum, default_value_t = ConstraintKind::Beta)]
        constraint: ConstraintKind,
        /// Control history output path; the residual report lands next to it.
        #[arg(long)]
        output: PathBuf,
        /// Newton tolerance on the scaled residual norm.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Newton iteration cap per step.
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
        #[arg(long = "paper-literal")]
        paper_literal: bool,
        #[arg(long = "v-min", default_value_t = 1.0)]
        v_min: f64,
        /// Deflection magnitude beyond which a step is flagged (rad).
        #[arg(long, default_value_t = 0.5)]
        deflection_limit: f64,
        #[arg(long, value_enum, default_value_t = AngleUnit::Deg)]
        units: AngleUnit,
    },
    /// Solve the steady-level trim at an airspeed and altitude.
    Trim {
        #[arg(long)]
        airframe: PathBuf,
        /// Airspeed (m/s).
        #[arg(long = "V")]
        airspeed: f64,
        /// Altitude (m).
        #[arg(long)]
        h: f64,
        #[arg(long = "v-min", default_value_t = 1.0)]
        v_min: f64,
        #[arg(long, value_enum, default_value_t = AngleUnit::Deg)]
        units: AngleUnit,
    },
    /// Tabulate the standard atmosphere on an altitude grid.
    Atmosphere {
        #[arg(long, default_value_t = 0.0)]
        h_min: f64,
        #[arg(long, default_value_t = 20_000.0)]
        h_max: f64,
        /// Grid spacing (m).
        #[arg(long, default_value_t = 1000.0)]
        step: f64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// The canonical airframe keys, in documentation order.
const AIRFRAME_KEYS: [&str; 30] = [
    "mass",
    "S",
    "c",
    "b",
    "I_xx",
    "I_yy",
    "I_zz",
    "I_yz",
    "I_xz",
    "I_xy",
    "C_L0",
    "C_L_alpha",
    "C_D0",
    "K_CD",
    "C_C_beta",
    "C_l_beta",
    "C_l_p",
    "C_l_r",
    "C_l_delta_l",
    "C_l_delta_n",
    "C_m0",
    "C_m_alpha",
    "C_m_q",
    "C_m_delta_m",
    "C_n_beta",
    "C_n_p",
    "C_n_r",
    "C_n_delta_l",
    "C_n_delta_n",
    "h_ini",
];

/// Optional keys with defaults.
const OPTIONAL_KEYS: [&str; 1] = ["alpha_warn"];

/// Loads and validates the 30 airframe constants from a flat key = value
/// file. `#` starts a comment; every canonical key must appear exactly once;
/// unknown keys are rejected. All values are SI with angles in radians.
pub fn load_airframe(path: &Path) -> Result<AirframeParams<f64>, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| validation(format!("{}: {e}", path.display())))?;
    let mut values = std::collections::HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            validation(format!(
                "{}:{}: expected `key = value`, got `{raw}`",
                path.display(),
                lineno + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        if !AIRFRAME_KEYS.contains(&key) && !OPTIONAL_KEYS.contains(&key) {
            return Err(validation(format!(
                "{}:{}: unknown key: {key}",
                path.display(),
                lineno + 1
            )));
        }
        let parsed: f64 = value.parse().map_err(|_| {
            validation(format!(
                "{}:{}: invalid number `{value}` for key {key}",
                path.display(),
                lineno + 1
            ))
        })?;
        if values.insert(key.to_string(), parsed).is_some() {
            return Err(validation(format!(
                "{}:{}: duplicate key: {key}",
                path.display(),
                lineno + 1
            )));
        }
    }
    for key in AIRFRAME_KEYS {
        if !values.contains_key(key) {
            return Err(validation(format!("missing key: {key}")));
        }
    }
    let get = |key: &str| values[key];
    let params = AirframeParams {
        mass: get("mass"),
        wing_area: get("S"),
        chord: get("c"),
        span: get("b"),
        inertia: InertiaTensor::new(
            get("I_xx"),
            get("I_yy"),
            get("I_zz"),
            get("I_yz"),
            get("I_xz"),
            get("I_xy"),
        ),
        force_constants: AeroForceConstants {
            c_l0: get("C_L0"),
            c_l_alpha: get("C_L_alpha"),
            c_d0: get("C_D0"),
            k_cd: get("K_CD"),
            c_c_beta: get("C_C_beta"),
        },
        derivatives: StabilityDerivatives {
            c_l_beta: get("C_l_beta"),
            c_l_p: get("C_l_p"),
            c_l_r: get("C_l_r"),
            c_l_delta_l: get("C_l_delta_l"),
            c_l_delta_n: get("C_l_delta_n"),
            c_m0: get("C_m0"),
            c_m_alpha: get("C_m_alpha"),
            c_m_q: get("C_m_q"),
            c_m_delta_m: get("C_m_delta_m"),
            c_n_beta: get("C_n_beta"),
            c_n_p: get("C_n_p"),
            c_n_r: get("C_n_r"),
            c_n_delta_l: get("C_n_delta_l"),
            c_n_delta_n: get("C_n_delta_n"),
        },
        h_ini: get("h_ini"),
        alpha_warn: values
            .get("alpha_warn")
            .copied()
            .unwrap_or(DEFAULT_ALPHA_WARN),
    };
    params.validate().map_err(validation)
}

fn split_csv_line(line: &str) -> Vec<&str> {
    line.split(',').map(str::trim).collect()
}

fn parse_float(path: &Path, lineno: usize, column: &str, value: &str) -> Result<f64, CliError> {
    value.parse().map_err(|_| {
        validation(format!(
            "{}:{}: invalid number `{value}` in column {column}",
            path.display(),
            lineno
        ))
    })
}

/// Parses a control schedule CSV with header
/// `t,delta_l,delta_m,delta_n,thrust`; deflections in the boundary unit.
pub fn load_control_schedule(
    path: &Path,
    units: AngleUnit,
    interpolation: Interpolation,
) -> Result<ControlSchedule<f64>, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| validation(format!("{}: {e}", path.display())))?;
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, raw)) if raw.trim().is_empty() => continue,
            Some((_, raw)) => break raw,
            None => return Err(validation(format!("{}: empty file", path.display()))),
        }
    };
    let expected = ["t", "delta_l", "delta_m", "delta_n", "thrust"];
    let got = split_csv_line(header);
    if got != expected {
        return Err(validation(format!(
            "{}: expected header `{}`, got `{header}`",
            path.display(),
            expected.join(",")
        )));
    }
    let mut samples = Vec::new();
    for (lineno, raw) in lines {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields = split_csv_line(line);
        if fields.len() != 5 {
            return Err(validation(format!(
                "{}:{}: expected 5 columns, got {}",
                path.display(),
                lineno + 1,
                fields.len()
            )));
        }
        let t = parse_float(path, lineno + 1, "t", fields[0])?;
        let aileron = units.angle_in(parse_float(path, lineno + 1, "delta_l", fields[1])?);
        let elevator = units.angle_in(parse_float(path, lineno + 1, "delta_m", fields[2])?);
        let rudder = units.angle_in(parse_float(path, lineno + 1, "delta_n", fields[3])?);
        let thrust = parse_float(path, lineno + 1, "thrust", fields[4])?;
        samples.push((t, ControlInputs::new(aileron, elevator, rudder, thrust)));
    }
    ControlSchedule::new(samples, interpolation).map_err(validation)
}

/// Parses a trajectory CSV with header `t,x_g,y_g,z_g[,beta|phi]`. Without
/// the fifth column the selected constraint is identically zero.
pub fn load_trajectory(
    path: &Path,
    units: AngleUnit,
    kind: ConstraintKind,
) -> Result<TrajectorySpec<f64>, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| validation(format!("{}: {e}", path.display())))?;
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, raw)) if raw.trim().is_empty() => continue,
            Some((_, raw)) => break raw,
            None => return Err(validation(format!("{}: empty file", path.display()))),
        }
    };
    let fields = split_csv_line(header);
    let constraint_name = match kind {
        ConstraintKind::Beta => "beta",
        ConstraintKind::Phi => "phi",
    };
    let has_constraint_column = match fields.as_slice() {
        ["t", "x_g", "y_g", "z_g"] => false,
        ["t", "x_g", "y_g", "z_g", last] if *last == constraint_name => true,
        _ => {
            return Err(validation(format!(
                "{}: expected header `t,x_g,y_g,z_g[,{constraint_name}]`, got `{header}`",
                path.display()
            )))
        }
    };

    let mut times = Vec::new();
    let mut positions = Vec::new();
    let mut constraint = Vec::new();
    for (lineno, raw) in lines {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields = split_csv_line(line);
        let expected_cols = if has_constraint_column { 5 } else { 4 };
        if fields.len() != expected_cols {
            return Err(validation(format!(
                "{}:{}: expected {expected_cols} columns, got {}",
                path.display(),
                lineno + 1,
                fields.len()
            )));
        }
        times.push(parse_float(path, lineno + 1, "t", fields[0])?);
        positions.push(GroundPosition::new(
            parse_float(path, lineno + 1, "x_g", fields[1])?,
            parse_float(path, lineno + 1, "y_g", fields[2])?,
            parse_float(path, lineno + 1, "z_g", fields[3])?,
        ));
        constraint.push(if has_constraint_column {
            units.angle_in(parse_float(path, lineno + 1, constraint_name, fields[4])?)
        } else {
            0.0
        });
    }
    let series = match kind {
        ConstraintKind::Beta => ConstraintSeries::Sideslip(constraint),
        ConstraintKind::Phi => ConstraintSeries::Roll(constraint),
    };
    TrajectorySpec::new(times, positions, series).map_err(validation)
}

fn record_header(units: AngleUnit) -> String {
    let u = units.suffix();
    format!(
        "t_s,V_mps,beta_{u},alpha_{u},p_{u}ps,q_{u}ps,r_{u}ps,phi_{u},theta_{u},psi_{u},x_g_m,y_g_m,z_g_m,h_m,rho_kgpm3,qbar_Pa,C_L,C_D,C_C,C_x,C_y,C_z,C_l,C_m,C_n,F_x_N,F_y_N,F_z_N,M_x_Nm,M_y_Nm,M_z_Nm,T1_Nm,T2_Nm,T3_Nm,theta_w_{u},psi_w_{u},alpha_f_{u},h_dot_mps,stall_warn,delta_l_{u},delta_m_{u},delta_n_{u},thrust_N"
    )
}

/// Serializes a trajectory record: one header row, then one row per
/// recorded step in the documented column order.
pub fn write_trajectory_record(record: &TrajectoryRecord<f64>, units: AngleUnit) -> String {
    let mut out = String::new();
    out.push_str(&record_header(units));
    out.push('\n');
    let a = |v: f64| units.angle_out(v);
    for row in &record.rows {
        let s = &row.state;
        let o = &row.outputs;
        let c = &row.controls;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            row.t,
            s.wind.airspeed,
            a(s.wind.beta),
            a(s.wind.alpha),
            a(s.rates.p),
            a(s.rates.q),
            a(s.rates.r),
            a(s.euler.phi),
            a(s.euler.theta),
            a(s.euler.psi),
            s.position.north,
            s.position.east,
            s.position.down,
            o.altitude,
            o.rho,
            o.forces_moments.qbar,
            o.coefficients.lift,
            o.coefficients.drag,
            o.coefficients.side,
            o.coefficients.x,
            o.coefficients.y,
            o.coefficients.z,
            o.coefficients.roll,
            o.coefficients.pitch,
            o.coefficients.yaw,
            o.forces_moments.fx,
            o.forces_moments.fy,
            o.forces_moments.fz,
            o.forces_moments.mx,
            o.forces_moments.my,
            o.forces_moments.mz,
            o.aux_moments.t1,
            o.aux_moments.t2,
            o.aux_moments.t3,
            a(o.flight_path.elevation),
            a(o.flight_path.azimuth),
            a(o.flank_angle),
            o.climb_rate,
            u8::from(o.stall_warning),
            a(c.aileron),
            a(c.elevator),
            a(c.rudder),
            c.thrust,
        )
        .unwrap();
    }
    out
}

/// Extrema summary printed after a simulation.
pub fn format_run_summary(record: &TrajectoryRecord<f64>, units: AngleUnit) -> String {
    let s = &record.summary;
    let u = units.suffix();
    let a = |v: f64| units.angle_out(v);
    format!(
        "rows: {}\n\
         alpha_{u}: [{:.4}, {:.4}]\n\
         delta_l_{u}: [{:.4}, {:.4}]\n\
         delta_m_{u}: [{:.4}, {:.4}]\n\
         delta_n_{u}: [{:.4}, {:.4}]\n\
         thrust_N: [{:.2}, {:.2}]\n\
         load_factor_max: {:.4}\n\
         path_residual_max: azimuth {:.2e}, elevation {:.2e}\n\
         stall_rows: {}",
        record.rows.len(),
        a(s.alpha_min),
        a(s.alpha_max),
        a(s.aileron_min),
        a(s.aileron_max),
        a(s.elevator_min),
        a(s.elevator_max),
        a(s.rudder_min),
        a(s.rudder_max),
        s.thrust_min,
        s.thrust_max,
        s.load_factor_max,
        s.max_residual_azimuth,
        s.max_residual_elevation,
        s.stall_rows
    )
}

/// Serializes an inverse solution as a control-history CSV.
pub fn write_control_history(solution: &InverseSolution<f64>, units: AngleUnit) -> String {
    let u = units.suffix();
    let mut out = format!("t,delta_l_{u},delta_m_{u},delta_n_{u},thrust\n");
    let a = |v: f64| units.angle_out(v);
    for step in &solution.steps {
        writeln!(
            out,
            "{},{},{},{},{}",
            step.t,
            a(step.controls.aileron),
            a(step.controls.elevator),
            a(step.controls.rudder),
            step.controls.thrust
        )
        .unwrap();
    }
    out
}

/// Serializes the per-step residual report of an inverse solution.
pub fn write_inverse_report(solution: &InverseSolution<f64>) -> String {
    let mut out = String::from("t,residual_norm,iterations,sat_delta_l,sat_delta_m,sat_delta_n\n");
    for step in &solution.steps {
        writeln!(
            out,
            "{},{:e},{},{},{},{}",
            step.t,
            step.residual_norm,
            step.iterations,
            u8::from(step.saturated[0]),
            u8::from(step.saturated[1]),
            u8::from(step.saturated[2])
        )
        .unwrap();
    }
    out
}

/// Tabulates the atmosphere on a grid, in the published table layout.
pub fn write_atmosphere_table(h_min: f64, h_max: f64, step: f64) -> Result<String, CliError> {
    if step <= 0.0 {
        return Err(CliError::Usage("--step must be positive".into()));
    }
    if h_max < h_min {
        return Err(CliError::Usage("--h-max must be at least --h-min".into()));
    }
    let mut out = String::from("h_m,rho_kgpm3,sigma,theta_K,P_Pa,a_mps\n");
    let n = ((h_max - h_min) / step).round() as usize;
    for i in 0..=n {
        let h = h_min + i as f64 * step;
        let s = atmosphere::sample(h).map_err(validation)?;
        writeln!(
            out,
            "{h},{:.5},{:.5},{:.2},{:.1},{:.2}",
            s.rho, s.sigma, s.theta, s.pressure, s.speed_of_sound
        )
        .unwrap();
    }
    Ok(out)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| validation(format!("{}: {e}", path.display())))
}

fn report_path(output: &Path) -> PathBuf {
    let stem = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "inverse".into());
    output.with_file_name(format!("{stem}.report.csv"))
}

/// Runs one parsed command; output paths are written, summaries printed.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate {
            airframe,
            controls,
            airspeed,
            h,
            dt,
            t_end,
            output,
            decimation,
            zero_order_hold,
            paper_literal,
            v_min,
            units,
        } => {
            if t_end <= 0.0 {
                return Err(CliError::Usage("--t-end must be positive".into()));
            }
            if dt <= 0.0 {
                return Err(CliError::Usage("--dt must be positive".into()));
            }
            let params = load_airframe(&airframe)?;
            let interpolation = if zero_order_hold {
                Interpolation::ZeroOrderHold
            } else {
                Interpolation::Linear
            };
            let schedule = load_control_schedule(&controls, units, interpolation)?;
            if airspeed < v_min {
                return Err(validation(format!(
                    "initial airspeed {airspeed} m/s is below the hover guard {v_min} m/s"
                )));
            }
            let trim = trim_steady_level(airspeed, h, &params).map_err(validation)?;
            if trim.stall_warning {
                eprintln!(
                    "warning: trim angle of attack {:.4} rad exceeds the stall threshold",
                    trim.alpha
                );
            }
            let mut config = SimulationConfig::new(dt, t_end, trim.state(airspeed, h, &params));
            config.decimation = decimation;
            config.options = DynamicsOptions {
                v_min,
                lateral_thrust_sign: if paper_literal {
                    LateralThrustSign::Published
                } else {
                    LateralThrustSign::Derived
                },
            };
            let record = simulate(&config, &schedule, &params).map_err(numerical)?;
            write_file(&output, &write_trajectory_record(&record, units))?;
            println!("{}", format_run_summary(&record, units));
            Ok(())
        }
        Command::Inverse {
            airframe,
            trajectory,
            constraint,
            output,
            tol,
            max_iter,
            paper_literal,
            v_min,
            deflection_limit,
            units,
        } => {
            let params = load_airframe(&airframe)?;
            let spec = load_trajectory(&trajectory, units, constraint)?;
            let opts = InverseOptions {
                tol,
                max_iter,
                v_min,
                lateral_thrust_sign: if paper_literal {
                    LateralThrustSign::Published
                } else {
                    LateralThrustSign::Derived
                },
                deflection_limit,
            };
            let solution = inverse_simulate(&spec, &params, opts).map_err(numerical)?;
            write_file(&output, &write_control_history(&solution, units))?;
            let report = report_path(&output);
            write_file(&report, &write_inverse_report(&solution))?;
            let worst = solution
                .steps
                .iter()
                .map(|s| s.residual_norm)
                .fold(0.0_f64, f64::max);
            let saturated = solution
                .steps
                .iter()
                .filter(|s| s.saturated.iter().any(|&f| f))
                .count();
            println!(
                "steps: {}\nworst_residual: {worst:e}\nsaturated_steps: {saturated}\nreport: {}",
                solution.steps.len(),
                report.display()
            );
            Ok(())
        }
        Command::Trim {
            airframe,
            airspeed,
            h,
            v_min,
            units,
        } => {
            let params = load_airframe(&airframe)?;
            if airspeed < v_min {
                return Err(validation(format!(
                    "airspeed {airspeed} m/s is below the hover guard {v_min} m/s"
                )));
            }
            let trim = trim_steady_level(airspeed, h, &params).map_err(numerical)?;
            let u = units.suffix();
            let a = |v: f64| units.angle_out(v);
            println!(
                "alpha_{u}={:.6} delta_m_{u}={:.6} thrust_N={:.3} theta_{u}={:.6}{}",
                a(trim.alpha),
                a(trim.elevator),
                trim.thrust,
                a(trim.theta),
                if trim.stall_warning {
                    " stall_warning=1"
                } else {
                    ""
                }
            );
            Ok(())
        }
        Command::Atmosphere {
            h_min,
            h_max,
            step,
            output,
        } => {
            let table = write_atmosphere_table(h_min, h_max, step)?;
            match output {
                Some(path) => write_file(&path, &table)?,
                None => print!("{table}"),
            }
            Ok(())
        }
    }
}
