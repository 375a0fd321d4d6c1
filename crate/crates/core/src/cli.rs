//! Batch commands over the JSON/CSV file formats.
//!
//! Exit status is a stable contract: [`EXIT_OK`], [`EXIT_FAILURE`] for a
//! failed verification or a non-Markovian verdict, [`EXIT_INPUT`] for
//! unreadable or invalid input.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolution::{euler_trajectory, Trajectory};
use crate::formats::{
    cmat3_rows, from_json, load_input_document, read_file, to_json, trajectory_to_csv, vec3_array, AffineDoc,
    ComplexPair, GeneratorDoc, GksDoc, InputDocument, ProcessorSpec, Representation, TrajectoryDoc, SCHEMA_VERSION,
};
use crate::generator::{is_unital, GksClassification, GksForm, GksMatrix, HamiltonianVec};
use crate::linalg::{BlochVector, DensityMatrix};
use crate::processor::{
    damping_axis, generator_from_unitary, is_identity_channel, processor_step_closed, scheme_gks,
    scheme_hamiltonian, su2_from_euler, DampingAxis, EulerAngles, ProgramState,
};
use crate::teleport::{teleport_channel_closed, teleport_generator, teleport_gks, BellProgram};
use crate::tolerance::Tolerances;
use crate::verify::{run_verification, VerifyConfig, VerifyInput, DEFAULT_CASES, DEFAULT_SEED};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

pub const DEFAULT_STEPS: usize = 100;
pub const DEFAULT_GENERATOR_DT: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Normalize a generator file to both forms and judge it.
    ExtractGks,
    /// Euler trajectory of a generator, or processor-stepped trajectory of a processor spec.
    Simulate,
    /// Describe the generator a processor spec induces.
    Classify,
    /// Run the seeded cross-check suite.
    Verify,
    /// Repeated teleportation through a Bell-superposition program.
    TeleportSim,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Parsed command line.
#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "qubit-markov", version, about = "Single-qubit Markovian generators on programmable processors")]
pub struct CommandConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Input document (generator, processor spec, teleport program, or verify fixture).
    #[arg(long, value_parser = nonempty_path)]
    pub input: Option<PathBuf>,

    /// Write the report here instead of stdout.
    #[arg(long, value_parser = nonempty_path)]
    pub output: Option<PathBuf>,

    /// Time step; for processor and teleport inputs this is the program weight ε.
    #[arg(long, value_parser = parse_dt)]
    pub dt: Option<f64>,

    #[arg(long, default_value_t = DEFAULT_STEPS, value_parser = parse_steps)]
    pub steps: usize,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Random cases per verification check.
    #[arg(long, default_value_t = DEFAULT_CASES)]
    pub cases: usize,

    /// Verify: threshold for every check. Extract/classify: rank, PSD and zero-Hamiltonian tolerance.
    #[arg(long, value_parser = parse_tolerance)]
    pub tolerance: Option<f64>,

    /// Initial Bloch vector as `x,y,z`.
    #[arg(long, value_parser = parse_r0, default_value = "1,0,0", allow_hyphen_values = true)]
    pub r0: BlochVector,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

fn nonempty_path(s: &str) -> std::result::Result<PathBuf, String> {
    if s.is_empty() {
        Err("path must not be empty".into())
    } else {
        Ok(PathBuf::from(s))
    }
}

fn parse_dt(s: &str) -> std::result::Result<f64, String> {
    let dt: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if dt > 0.0 && dt <= 1.0 {
        Ok(dt)
    } else {
        Err(format!("dt must lie in (0, 1], got {dt}"))
    }
}

fn parse_steps(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("steps must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_tolerance(s: &str) -> std::result::Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(format!("tolerance must be positive, got {t}"))
    }
}

pub fn parse_r0(s: &str) -> std::result::Result<BlochVector, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| format!("expected x,y,z: {e}"))?;
    match parts[..] {
        [x, y, z] => BlochVector::new(x, y, z).map_err(|e| e.to_string()),
        _ => Err(format!("expected 3 components, got {}", parts.len())),
    }
}

/// A rendered document and the exit status it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub document: String,
    pub status: u8,
    /// Human-readable line for stderr, if any.
    pub message: Option<String>,
}

impl CommandOutput {
    fn ok(document: String) -> Self {
        CommandOutput { document, status: EXIT_OK, message: None }
    }
}

fn tolerances(cfg: &CommandConfig) -> Tolerances {
    let mut tol = Tolerances::DEFAULT;
    if let Some(t) = cfg.tolerance {
        tol.rank = t;
        tol.psd_floor = t;
    }
    tol
}

fn require_input(cfg: &CommandConfig) -> Result<(&Path, String)> {
    let path = cfg.input.as_deref().ok_or_else(|| Error::usage("--input is required for this command"))?;
    Ok((path, read_file(path)?))
}

fn source_name(path: &Path) -> String {
    path.display().to_string()
}

/// Report written by `extract-gks`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtractReport {
    pub schema_version: u32,
    pub source: Representation,
    pub gks: GksDoc,
    pub affine: AffineDoc,
    pub unital: bool,
    #[serde(flatten)]
    pub classification: GksClassification,
    pub summary: &'static str,
    pub eigenvalues: [f64; 3],
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase_damping_axis: Option<DampingAxis>,
}

pub fn extract_report(doc: &GeneratorDoc, tol: &Tolerances) -> Result<ExtractReport> {
    let loaded = doc.load(tol)?;
    let classification = loaded.gks.c.classify(tol);
    let markovian = classification == GksClassification::ValidMarkovian;
    Ok(ExtractReport {
        schema_version: SCHEMA_VERSION,
        source: loaded.source,
        gks: (&loaded.gks).into(),
        affine: (&loaded.affine).into(),
        unital: is_unital(&loaded.affine),
        classification,
        summary: if markovian { "Markovian generator" } else { "not a Markovian generator" },
        eigenvalues: loaded.gks.c.eigenvalues(),
        rank: loaded.gks.c.rank(tol.rank),
        phase_damping_axis: damping_axis(&loaded.gks.c, tol),
    })
}

pub fn cmd_extract_gks(cfg: &CommandConfig) -> Result<CommandOutput> {
    let (path, text) = require_input(cfg)?;
    let doc: GeneratorDoc = from_json(&text, &source_name(path))?;
    let report = extract_report(&doc, &tolerances(cfg))?;
    let mut out = CommandOutput::ok(to_json(&report));
    if let GksClassification::NotPsd { min_eigenvalue } = report.classification {
        out.status = EXIT_FAILURE;
        out.message = Some(format!("not a Markovian generator: C has eigenvalue {min_eigenvalue:e}"));
    }
    Ok(out)
}

fn render_trajectory(cfg: &CommandConfig, tr: &Trajectory, generator: GeneratorDoc) -> String {
    match cfg.format {
        OutputFormat::Json => to_json(&TrajectoryDoc::new(tr, Some(generator))),
        OutputFormat::Csv => trajectory_to_csv(tr),
    }
}

/// Generator `(h, C)` and affine form induced by a processor spec.
pub fn induced_generator(euler: &EulerAngles) -> Result<GeneratorDoc> {
    let gks = GksForm::new(scheme_hamiltonian(euler), scheme_gks(euler));
    Ok(GeneratorDoc::from_pair(&gks, &generator_from_unitary(&su2_from_euler(euler))?))
}

pub fn processor_trajectory(spec: &ProcessorSpec, dt: Option<f64>, r0: BlochVector, steps: usize) -> Result<Trajectory> {
    let chi = spec.program.map_or(0.0, |p| p.chi());
    let eps = dt
        .or(spec.program.map(|p| p.epsilon()))
        .ok_or_else(|| Error::usage("processor spec has no program; pass --dt"))?;
    let program = ProgramState::new(eps, chi)?;
    let u2 = su2_from_euler(&spec.euler);
    Trajectory::iterate(eps, r0, steps, |_, r| {
        Ok(processor_step_closed(&program, &u2, &DensityMatrix::from_bloch(r))?.bloch())
    })
}

pub fn cmd_simulate(cfg: &CommandConfig) -> Result<CommandOutput> {
    let (path, text) = require_input(cfg)?;
    let (tr, generator) = match load_input_document(&text, &source_name(path))? {
        InputDocument::Processor(spec) => {
            (processor_trajectory(&spec, cfg.dt, cfg.r0, cfg.steps)?, induced_generator(&spec.euler)?)
        }
        InputDocument::Generator(doc) => {
            let loaded = doc.load(&tolerances(cfg))?;
            let dt = cfg.dt.unwrap_or(DEFAULT_GENERATOR_DT);
            let tr = euler_trajectory(&loaded.affine, cfg.r0, dt, cfg.steps)?;
            (tr, GeneratorDoc::from_pair(&loaded.gks, &loaded.affine))
        }
    };
    Ok(CommandOutput::ok(render_trajectory(cfg, &tr, generator)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelKind {
    /// `U₂ = ±1`: the program does nothing.
    IdentityChannel,
    PurePhaseDamping,
    PhaseDampingWithHamiltonian,
}

/// Report written by `classify`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifyReport {
    pub schema_version: u32,
    pub euler: EulerAngles,
    pub trace_u2: ComplexPair,
    pub hamiltonian_vanishes: bool,
    pub h: [f64; 3],
    pub gks: [[ComplexPair; 3]; 3],
    pub eigenvalues: [f64; 3],
    pub rank: usize,
    pub kind: ChannelKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<DampingAxis>,
    pub summary: String,
}

fn axis_label(n: &[f64; 3]) -> String {
    const NAMES: [&str; 3] = ["x", "y", "z"];
    match (0..3).find(|&i| (n[i].abs() - 1.0).abs() < 1e-9) {
        Some(i) => NAMES[i].to_string(),
        None => format!("({:.6}, {:.6}, {:.6})", n[0], n[1], n[2]),
    }
}

pub fn classify_report(euler: &EulerAngles, tol: &Tolerances) -> ClassifyReport {
    let u2 = su2_from_euler(euler);
    let tr = u2.trace();
    let h: HamiltonianVec = scheme_hamiltonian(euler);
    let cm: GksMatrix = scheme_gks(euler);
    let zero_tol = tol.rank;
    let hamiltonian_vanishes = h.vector().norm() <= zero_tol;
    let axis = damping_axis(&cm, tol);
    let h_arr = vec3_array(h.vector());
    let (kind, summary) = if is_identity_channel(euler, zero_tol) {
        (ChannelKind::IdentityChannel, "identity channel".to_string())
    } else {
        let where_ = axis.map_or_else(|| "undetermined axis".to_string(), |a| format!("axis {}", axis_label(&a.axis)));
        if hamiltonian_vanishes {
            (ChannelKind::PurePhaseDamping, format!("pure phase damping, {where_}, no Hamiltonian"))
        } else {
            let hs = h_arr.map(|x| format!("{x:.6}")).join(", ");
            (ChannelKind::PhaseDampingWithHamiltonian, format!("phase damping, {where_}, with Hamiltonian h=({hs})"))
        }
    };
    ClassifyReport {
        schema_version: SCHEMA_VERSION,
        euler: *euler,
        trace_u2: [tr.re, tr.im],
        hamiltonian_vanishes,
        h: h_arr,
        gks: cmat3_rows(cm.matrix()),
        eigenvalues: cm.eigenvalues(),
        rank: cm.rank(tol.rank),
        kind,
        axis,
        summary,
    }
}

pub fn cmd_classify(cfg: &CommandConfig) -> Result<CommandOutput> {
    let (path, text) = require_input(cfg)?;
    let spec: ProcessorSpec = from_json(&text, &source_name(path))?;
    let report = classify_report(&spec.euler, &tolerances(cfg));
    let mut out = CommandOutput::ok(to_json(&report));
    out.message = Some(report.summary);
    Ok(out)
}

pub fn cmd_verify(cfg: &CommandConfig) -> Result<CommandOutput> {
    let input = match &cfg.input {
        Some(path) => from_json::<VerifyInput>(&read_file(path)?, &source_name(path))?,
        None => VerifyInput::default(),
    };
    let vc = VerifyConfig { seed: cfg.seed, cases: cfg.cases, tolerance: cfg.tolerance, perturbation: input.perturbation };
    let report = run_verification(&vc);
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    Ok(CommandOutput {
        document: to_json(&report),
        status: if report.passed { EXIT_OK } else { EXIT_FAILURE },
        message: (!failed.is_empty()).then(|| format!("verification failed: {}", failed.join(", "))),
    })
}

pub fn teleport_trajectory(program: &BellProgram, dt: Option<f64>, r0: BlochVector, steps: usize) -> Result<Trajectory> {
    let program = match dt {
        Some(eps) => BellProgram::new(eps, *program.alpha())?,
        None => *program,
    };
    Trajectory::iterate(program.epsilon(), r0, steps, |_, r| {
        Ok(teleport_channel_closed(&program, &DensityMatrix::from_bloch(r))?.bloch())
    })
}

pub fn cmd_teleport_sim(cfg: &CommandConfig) -> Result<CommandOutput> {
    let (path, text) = require_input(cfg)?;
    let program: BellProgram = from_json(&text, &source_name(path))?;
    let tr = teleport_trajectory(&program, cfg.dt, cfg.r0, cfg.steps)?;
    let gks = GksForm::new(HamiltonianVec::zero(), teleport_gks(program.alpha())?);
    let generator = GeneratorDoc::from_pair(&gks, &teleport_generator(program.alpha())?);
    Ok(CommandOutput::ok(render_trajectory(cfg, &tr, generator)))
}

pub fn execute(cfg: &CommandConfig) -> Result<CommandOutput> {
    match cfg.command {
        Command::ExtractGks => cmd_extract_gks(cfg),
        Command::Simulate => cmd_simulate(cfg),
        Command::Classify => cmd_classify(cfg),
        Command::Verify => cmd_verify(cfg),
        Command::TeleportSim => cmd_teleport_sim(cfg),
    }
}

/// Executes `cfg`, writes the document to `--output` or stdout, diagnostics
/// to stderr, and returns the exit status.
pub fn run(cfg: &CommandConfig) -> u8 {
    let out = match execute(cfg) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    match &cfg.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.document) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        None => print!("{}", out.document),
    }
    if let Some(msg) = &out.message {
        eprintln!("{msg}");
    }
    out.status
}

/// Parses `args` (including the program name) and runs the command.
/// Usage errors exit with [`EXIT_INPUT`]; `--help` and `--version` with [`EXIT_OK`].
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match CommandConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_OK
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn angles(t: f64, p: f64, s: f64) -> EulerAngles {
        EulerAngles::new(t, p, s).unwrap()
    }

    #[test]
    fn classify_summaries() {
        let tol = Tolerances::DEFAULT;
        assert_eq!(classify_report(&angles(PI, 0.0, PI), &tol).summary, "pure phase damping, axis x, no Hamiltonian");
        let id = classify_report(&angles(0.0, 0.0, 0.0), &tol);
        assert_eq!((id.kind, id.summary.as_str()), (ChannelKind::IdentityChannel, "identity channel"));
        let b = 0.4_f64;
        let r = classify_report(&angles(0.0, b, b), &tol);
        assert_eq!(r.kind, ChannelKind::PhaseDampingWithHamiltonian);
        assert!((r.h[2] - (2.0 * b).sin()).abs() < 1e-14);
        assert!(r.summary.contains("axis z"), "{}", r.summary);
    }

    #[test]
    fn extract_decay_like_damping() {
        let doc: GeneratorDoc = from_json(r#"{"affine": {"m": [[-2,0,0],[0,-2,0],[0,0,0]], "b": [0,0,0]}}"#, "t").unwrap();
        let r = extract_report(&doc, &Tolerances::DEFAULT).unwrap();
        assert!(r.unital);
        assert_eq!(r.rank, 1);
        assert_eq!(r.phase_damping_axis.unwrap().axis, [0.0, 0.0, 1.0]);
        assert_eq!(r.gks.h, [0.0; 3]);
    }

    #[test]
    fn r0_parsing() {
        assert_eq!(parse_r0("0,-1,0").unwrap().to_array(), [0.0, -1.0, 0.0]);
        assert!(parse_r0("1,1,0").is_err());
        assert!(parse_r0("1,0").is_err());
    }

    #[test]
    fn flags_parse() {
        let cfg = CommandConfig::try_parse_from(["q", "simulate", "--input", "a.json", "--dt", "0.1", "--r0", "-0.5,0,0"]).unwrap();
        assert_eq!(cfg.command, Command::Simulate);
        assert_eq!(cfg.r0.to_array(), [-0.5, 0.0, 0.0]);
        assert!(CommandConfig::try_parse_from(["q", "simulate", "--dt", "0"]).is_err());
        assert!(CommandConfig::try_parse_from(["q", "simulate", "--steps", "0"]).is_err());
    }
}
