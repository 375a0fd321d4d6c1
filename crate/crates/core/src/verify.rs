//! Seeded cross-checks between independent implementations.
//!
//! Each check runs `cases` random instances, records the largest observed
//! discrepancy and compares it with its threshold. Case `i` of check `k`
//! draws from [`sampling::case_rng`]`(seed, k, i)`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::evolution::{compose_channels, exact_channel, AffineChannel};
use crate::generator::{affine_from_gks, apply_generator, conjugate_gks, gks_from_affine, GksMatrix};
use crate::linalg::{bloch_components, c, max_abs_diff, DensityMatrix, Vec3};
use crate::processor::{
    generator_from_unitary, hamiltonian_matrix_as_printed, is_identity_channel,
    processor_step_closed, processor_step_oracle, rotated_z_damping, scheme_gks, scheme_gks_traceless,
    scheme_hamiltonian, su2_from_euler, EulerAngles, ProgramState,
};
use crate::sampling::{self, CaseRng};
use crate::teleport::{teleport_channel_closed, teleport_channel_oracle, teleport_generator, teleport_gks};
use crate::formats::SCHEMA_VERSION;

pub const DEFAULT_SEED: u64 = 20_240_917;
pub const DEFAULT_CASES: usize = 256;

/// Deliberate corruption of a closed form, used to show that the harness can fail.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Perturbation {
    /// Added to the (1,1) entry of the scheme GKS matrix.
    #[serde(default)]
    pub scheme_gks_c11: f64,
}

impl Perturbation {
    pub fn is_zero(&self) -> bool {
        self.scheme_gks_c11 == 0.0
    }
}

/// `{"perturbation": {...}}`
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct VerifyInput {
    #[serde(default)]
    pub perturbation: Perturbation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub cases: usize,
    /// Replaces every check's own threshold when set.
    pub tolerance: Option<f64>,
    pub perturbation: Perturbation,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: DEFAULT_SEED, cases: DEFAULT_CASES, tolerance: None, perturbation: Perturbation::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub skipped: usize,
    pub max_error: f64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub seed: u64,
    pub cases: usize,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Perturbation::is_zero")]
    pub perturbation: Perturbation,
    pub checks: Vec<CheckReport>,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Outcome of a single random case: an error, or `None` when the case is
/// outside the check's domain.
type CaseResult = Result<Option<f64>>;

struct Check {
    name: &'static str,
    tolerance: f64,
    note: Option<&'static str>,
    case: Box<dyn Fn(&mut CaseRng) -> CaseResult>,
}

fn run_check(id: u32, check: &Check, cfg: &VerifyConfig) -> CheckReport {
    let tolerance = cfg.tolerance.unwrap_or(check.tolerance);
    let mut max_error = 0.0_f64;
    let mut skipped = 0;
    let mut failure = None;
    for i in 0..cfg.cases {
        let mut rng = sampling::case_rng(cfg.seed, id, i as u64);
        match (check.case)(&mut rng) {
            Ok(Some(e)) => max_error = if e.is_nan() { f64::NAN } else { max_error.max(e) },
            Ok(None) => skipped += 1,
            Err(e) => {
                failure = Some(format!("case {i}: {e}"));
                break;
            }
        }
    }
    let passed = failure.is_none() && max_error <= tolerance;
    CheckReport {
        name: check.name.to_string(),
        passed,
        cases: cfg.cases,
        skipped,
        max_error,
        tolerance,
        note: failure.or(check.note.map(str::to_string)),
    }
}

/// Scheme GKS matrix with the configured perturbation applied.
fn closed_scheme_gks(a: &EulerAngles, p: Perturbation) -> GksMatrix {
    let mut m = *scheme_gks(a).matrix();
    m[(0, 0)] += c(p.scheme_gks_c11, 0.0);
    GksMatrix::new(m).expect("diagonal shift keeps Hermiticity")
}

fn channel_of(rho: &DensityMatrix) -> Vec3 {
    bloch_components(rho.matrix())
}

fn checks(p: Perturbation) -> Vec<Check> {
    vec![
        Check {
            name: "representation",
            tolerance: 1e-10,
            note: None,
            case: Box::new(|rng| {
                let g = sampling::gks_form(rng);
                let rho = sampling::state(rng);
                let direct = bloch_components(&apply_generator(&g, &rho));
                let affine = affine_from_gks(&g).apply(rho.bloch().vector());
                Ok(Some((direct - affine).amax()))
            }),
        },
        Check {
            name: "gks-round-trip",
            tolerance: 1e-12,
            note: None,
            case: Box::new(|rng| {
                let g = sampling::gks_form(rng);
                let back = gks_from_affine(&affine_from_gks(&g));
                Ok(Some((back.h.vector() - g.h.vector()).amax().max(back.c.max_abs_diff(&g.c))))
            }),
        },
        Check {
            name: "processor-oracle",
            tolerance: 1e-11,
            note: None,
            case: Box::new(|rng| {
                let prog = sampling::program(rng);
                let u2 = su2_from_euler(&sampling::euler_angles(rng));
                let rho = sampling::state(rng);
                let oracle = processor_step_oracle(&prog, &u2, &rho)?;
                let closed = processor_step_closed(&prog, &u2, &rho)?;
                let other_phase = ProgramState::new(prog.epsilon(), prog.chi() + 1.0)?;
                let shifted = processor_step_closed(&other_phase, &u2, &rho)?;
                let err = max_abs_diff(oracle.matrix(), closed.matrix()).max(max_abs_diff(closed.matrix(), shifted.matrix()));
                Ok(Some(err))
            }),
        },
        Check {
            name: "scheme-characterization",
            tolerance: 1e-10,
            note: None,
            case: Box::new(move |rng| {
                let a = sampling::euler_angles(rng);
                let brute = gks_from_affine(&generator_from_unitary(&su2_from_euler(&a))?);
                let h_err = (brute.h.vector() - scheme_hamiltonian(&a).vector()).amax();
                Ok(Some(h_err.max(brute.c.max_abs_diff(&closed_scheme_gks(&a, p)))))
            }),
        },
        Check {
            name: "rank-one",
            tolerance: 1e-10,
            note: None,
            case: Box::new(move |rng| {
                let a = sampling::euler_angles(rng);
                if is_identity_channel(&a, 1e-9) {
                    return Ok(None);
                }
                let e = closed_scheme_gks(&a, p).eigenvalues();
                Ok(Some(e[0].abs().max(e[1].abs())))
            }),
        },
        Check {
            name: "phase-damping-axis",
            tolerance: 1e-10,
            note: None,
            case: Box::new(|rng| {
                let a = sampling::euler_angles(rng);
                let (theta, phi) = (a.theta(), a.phi());
                let (s, co) = (0.5 * theta).sin_cos();
                let n = Vec3::new(s * phi.cos(), s * phi.sin(), co);
                let target = GksMatrix::from_real(n * n.transpose())?;
                let traceless = scheme_gks_traceless(theta, phi);
                let mut err = traceless.max_abs_diff(&target);
                for k in 0..5 {
                    let psi = k as f64 * 1.3 + 0.2;
                    err = err.max(rotated_z_damping(theta, phi, psi)?.max_abs_diff(&traceless));
                }
                Ok(Some(err))
            }),
        },
        Check {
            name: "teleport-oracle",
            tolerance: 1e-11,
            note: None,
            case: Box::new(|rng| {
                let prog = sampling::bell_program(rng);
                let rho = sampling::state(rng);
                let oracle = teleport_channel_oracle(&prog, &rho)?;
                let closed = teleport_channel_closed(&prog, &rho)?;
                Ok(Some((channel_of(&oracle) - channel_of(&closed)).amax().max(max_abs_diff(oracle.matrix(), closed.matrix()))))
            }),
        },
        Check {
            name: "teleport-gks",
            tolerance: 1e-10,
            note: None,
            case: Box::new(|rng| {
                let alpha = sampling::pauli_amplitudes(rng);
                let g = gks_from_affine(&teleport_generator(&alpha)?);
                Ok(Some(g.c.max_abs_diff(&teleport_gks(&alpha)?).max(g.h.vector().amax())))
            }),
        },
        Check {
            name: "semigroup",
            tolerance: 1e-9,
            note: None,
            case: Box::new(|rng| {
                use rand::Rng;
                let g = affine_from_gks(&sampling::gks_form(rng));
                let (t1, t2) = (rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0));
                let whole = exact_channel(&g, t1 + t2)?;
                let split = compose_channels(&exact_channel(&g, t1)?, &exact_channel(&g, t2)?);
                let at_zero = exact_channel(&g, 0.0)?.max_abs_diff(&AffineChannel::identity());
                Ok(Some(whole.max_abs_diff(&split).max(at_zero)))
            }),
        },
        Check {
            name: "unitary-conjugation",
            tolerance: 1e-10,
            note: None,
            case: Box::new(|rng| {
                let r = sampling::rotation(rng);
                let g = sampling::gks_form(rng);
                let (before, after) = (g.c.eigenvalues(), conjugate_gks(&g.c, &r)?.eigenvalues());
                let eig_err = (0..3).map(|i| (before[i] - after[i]).abs()).fold(0.0, f64::max);
                let z = r.column(2).into_owned();
                let damped = conjugate_gks(&GksMatrix::diagonal([0.0, 0.0, 1.0]), &r)?;
                Ok(Some(eig_err.max(damped.max_abs_diff(&GksMatrix::from_real(z * z.transpose())?))))
            }),
        },
        Check {
            name: "hamiltonian-scale",
            tolerance: 1e-12,
            note: Some("the displayed processor Hamiltonian matrix equals sum_i h_i sigma_i, twice H = (1/2) sum_i h_i sigma_i; reported h uses the latter"),
            case: Box::new(|rng| {
                let a = sampling::euler_angles(rng);
                let twice_h = scheme_hamiltonian(&a).matrix() * c(2.0, 0.0);
                Ok(Some(max_abs_diff(&hamiltonian_matrix_as_printed(&a), &twice_h)))
            }),
        },
    ]
}

/// Runs every check. The report is a pure function of the configuration.
pub fn run_verification(cfg: &VerifyConfig) -> VerificationReport {
    let checks: Vec<CheckReport> = checks(cfg.perturbation)
        .iter()
        .enumerate()
        .map(|(id, check)| run_check(id as u32, check, cfg))
        .collect();
    VerificationReport {
        schema_version: SCHEMA_VERSION,
        seed: cfg.seed,
        cases: cfg.cases,
        passed: checks.iter().all(|c| c.passed),
        perturbation: cfg.perturbation,
        checks,
    }
}
