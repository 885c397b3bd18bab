//! Command-line front end for the `roundcone` library.
//!
//! [`run`] does all the work and returns the exit status together with what
//! should go to stdout and stderr, so it can be driven from tests.
//!
//! Exit status: 0 success, 1 bad input, 2 request outside the regime of the
//! construction, 3 verification found violations.

pub mod args;
pub mod instance;
pub mod output;

use std::ffi::OsString;

use clap::Parser;
use roundcone::oracle::{
    empirical_projection_check_with, l2_counterexample, l2_discretized_experiment, SampleMode,
    SamplerConfig, VerifyOptions,
};
use roundcone::projection::{
    classify_affine, inverse_aperture, orthant_max_aperture, projected_aperture,
};
use roundcone::reverse_cbs::{
    check_projection_implication, check_sign_lemma, enhanced_cbs_margins,
};
use roundcone::witness::{antipodal_witness, border_witness, equality_witness};
use roundcone::{ClassifierPolicy, Flavor, Radians, RealVector};
use serde::Serialize;
use serde_json::{json, Value};

use args::{
    angle, parse_list, CbsArgs, CbsKind, Cli, Command, FlavorArg, InstanceArgs, L2Args, ModeArg,
    OutputArgs, VerifyArgs, WitnessArgs, WitnessKind,
};
use instance::{ConeDescriptor, Instance, InstanceDescriptor, SubspaceDescriptor};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_REGIME: i32 = 2;
pub const EXIT_VIOLATIONS: i32 = 3;

const DEFAULT_VERIFY_SAMPLES: usize = 10_000;
const DEFAULT_L2_SAMPLES: usize = 1_000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Regime(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Regime(_) => EXIT_REGIME,
            CliError::Input(_) | CliError::Io(_) => EXIT_INPUT,
        }
    }
}

impl From<roundcone::Error> for CliError {
    fn from(e: roundcone::Error) -> Self {
        use roundcone::Error as E;
        match e {
            E::Regime(_) | E::RootNotFound(_) | E::Lift(_) => CliError::Regime(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((value, code, out)) => match emit(&value, &out) {
            Ok(stdout) => Outcome {
                code,
                stdout,
                stderr: String::new(),
            },
            Err(e) => failure(e),
        },
        Err(e) => failure(e),
    }
}

fn failure(e: CliError) -> Outcome {
    Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

fn emit(value: &Value, out: &OutputArgs) -> Result<String, CliError> {
    let text = output::render(value, out.format)?;
    match &out.out {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

type Dispatched = (Value, i32, OutputArgs);

fn dispatch(command: Command) -> Result<Dispatched, CliError> {
    match command {
        Command::Classify(a) => classify_cmd(&a, false),
        Command::ProjectOpen(a) => classify_cmd(&a, true),
        Command::Aperture(a) => {
            let phi = radians(angle(a.phi, a.degrees))?;
            let psi = radians(angle(a.psi, a.degrees))?;
            let phi1 = projected_aperture(phi, psi)?;
            Ok((
                json!({ "phi": phi, "psi": psi, "phi1": phi1 }),
                EXIT_OK,
                a.output,
            ))
        }
        Command::InverseAperture(a) => {
            let phi1 = radians(angle(a.phi1, a.degrees))?;
            let psi = radians(angle(a.psi, a.degrees))?;
            let phi = inverse_aperture(phi1, psi)?;
            Ok((
                json!({ "phi1": phi1, "psi": psi, "phi": phi }),
                EXIT_OK,
                a.output,
            ))
        }
        Command::Witness(a) => witness_cmd(&a),
        Command::Verify(a) => verify_cmd(&a),
        Command::Orthant(a) => {
            if a.n < 2 {
                return Err(CliError::input("--n must be at least 2"));
            }
            let rows = (2..=a.n)
                .map(|n| Ok(json!({ "n": n, "aperture": orthant_max_aperture(n)? })))
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok((Value::Array(rows), EXIT_OK, a.output))
        }
        Command::L2Demo(a) => l2_cmd(&a),
        Command::CbsCheck(a) => cbs_cmd(&a),
    }
}

fn radians(x: f64) -> Result<Radians, CliError> {
    Ok(Radians::new(x)?)
}

fn vector(text: &str) -> Result<RealVector, CliError> {
    Ok(RealVector::new(parse_list(text)?)?)
}

/// Builds the instance from `--input` or the inline flags. `phi` defaults to
/// `0` when `need_phi` is false.
fn load_instance(a: &InstanceArgs, need_phi: bool) -> Result<Instance, CliError> {
    let descriptor = match &a.input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            InstanceDescriptor::from_json(&text)?
        }
        None => {
            let axis = parse_list(
                a.axis
                    .as_deref()
                    .ok_or_else(|| CliError::input("--axis or --input is required"))?,
            )?;
            let phi = match a.phi {
                Some(p) => angle(p, a.degrees),
                None if need_phi => return Err(CliError::input("--phi or --input is required")),
                None => 0.0,
            };
            let subspace = a
                .subspace
                .as_deref()
                .ok_or_else(|| CliError::input("--subspace or --input is required"))?;
            InstanceDescriptor {
                dimension: a.dim.unwrap_or(axis.len()),
                cone: ConeDescriptor {
                    apex: a.apex.as_deref().map(parse_list).transpose()?,
                    axis,
                    half_aperture: phi,
                    flavor: a.flavor.map(|f| match f {
                        FlavorArg::Closed => Flavor::Closed,
                        FlavorArg::ApexOpen => Flavor::ApexOpen,
                    }),
                },
                subspace: SubspaceDescriptor::parse(subspace)?,
                offset: a.offset.as_deref().map(parse_list).transpose()?,
            }
        }
    };
    descriptor.resolve()
}

fn policy(a: &InstanceArgs) -> Result<ClassifierPolicy, CliError> {
    match a.angle_tol {
        Some(tol) => Ok(ClassifierPolicy::new(angle(tol, a.degrees))?),
        None => Ok(ClassifierPolicy::default()),
    }
}

fn classify_cmd(a: &InstanceArgs, open: bool) -> Result<Dispatched, CliError> {
    let inst = load_instance(a, true)?;
    let cone = if open {
        inst.cone.with_flavor(Flavor::ApexOpen)
    } else {
        inst.cone
    };
    let offset = inst.offset.unwrap_or_else(|| RealVector::zeros(cone.dim()));
    let class = classify_affine(&cone, &inst.space, &offset, policy(a)?)?;
    Ok((to_value(&class), EXIT_OK, a.output.clone()))
}

fn witness_cmd(a: &WitnessArgs) -> Result<Dispatched, CliError> {
    let need_phi = a.kind != WitnessKind::Border;
    let inst = load_instance(&a.instance, need_phi)?;
    let (axis, space, phi) = (inst.cone.axis(), &inst.space, inst.cone.half_aperture());
    let witness = match a.kind {
        WitnessKind::Equality => equality_witness(axis, space, phi)?,
        WitnessKind::Antipodal => antipodal_witness(axis, space, phi)?,
        WitnessKind::Border => {
            let eps = a
                .epsilon
                .ok_or_else(|| CliError::input("--epsilon is required for --kind border"))?;
            border_witness(axis, space, eps)?
        }
    };
    Ok((to_value(&witness), EXIT_OK, a.instance.output.clone()))
}

fn verify_cmd(a: &VerifyArgs) -> Result<Dispatched, CliError> {
    let inst = load_instance(&a.instance, true)?;
    if inst.offset.is_some() {
        return Err(CliError::input(
            "verify works on linear subspaces; drop the offset",
        ));
    }
    let mode = match a.mode {
        Some(ModeArg::Boundary) => SampleMode::BoundaryOnly,
        Some(ModeArg::Filled) => SampleMode::FilledCone,
        None if inst.cone.half_aperture() <= Radians::RIGHT => SampleMode::BoundaryOnly,
        None => SampleMode::FilledCone,
    };
    let count = a.sampling.samples.unwrap_or(DEFAULT_VERIFY_SAMPLES);
    let cfg = SamplerConfig::new(a.sampling.seed, count, mode)?;
    let opts = VerifyOptions {
        policy: policy(&a.instance)?,
        tol: a.tol,
    };
    let report = empirical_projection_check_with(&inst.cone, &inst.space, cfg, opts)?;
    let code = if report.is_clean() {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    };
    Ok((to_value(&report), code, a.instance.output.clone()))
}

fn l2_cmd(a: &L2Args) -> Result<Dispatched, CliError> {
    let count = a.sampling.samples.unwrap_or(DEFAULT_L2_SAMPLES);
    let cfg = SamplerConfig::new(a.sampling.seed, count, SampleMode::FilledCone)?;
    let experiment = l2_discretized_experiment(a.alpha, a.grid, cfg)?;
    let t = match a.t {
        Some(t) => t,
        None => experiment.threshold - 1.0 / a.grid as f64,
    };
    let counter = l2_counterexample(a.alpha, a.grid, t)?;
    let value = json!({
        "experiment": experiment,
        "counterexample": {
            "t": counter.t,
            "cutoff": counter.cutoff,
            "partial_sum": counter.partial_sum,
            "premise_margin": counter.premise_margin,
        },
    });
    Ok((value, EXIT_OK, a.output.clone()))
}

fn cbs_cmd(a: &CbsArgs) -> Result<Dispatched, CliError> {
    let u = vector(&a.u)?;
    let need_phi = match a.check {
        CbsKind::Implication => true,
        CbsKind::Sign => false,
        CbsKind::Enhanced => a.alpha.is_none(),
    };
    let inst = load_instance(&a.instance, need_phi)?;
    let (v, space, phi) = (inst.cone.axis(), &inst.space, inst.cone.half_aperture());
    let value = match a.check {
        CbsKind::Implication => to_value(&check_projection_implication(&u, v, space, phi)?),
        CbsKind::Sign => to_value(&check_sign_lemma(&u, v, space)?),
        CbsKind::Enhanced => {
            let alpha = a.alpha.unwrap_or_else(|| phi.cos());
            let (first, second) = enhanced_cbs_margins(&u, v, space, alpha)?;
            let holds = first > roundcone::reverse_cbs::STRICT_MARGIN
                && second.is_some_and(|m| m > roundcone::reverse_cbs::STRICT_MARGIN);
            json!({ "alpha": alpha, "holds": holds, "first_margin": first, "second_margin": second })
        }
    };
    Ok((value, EXIT_OK, a.instance.output.clone()))
}
