//! Command-line front end: JSON in, JSON out, deterministic seeding.
//!
//! Exit codes: 0 success, 1 mathematical-precondition failure (a JSON error
//! object is written to the output stream), 2 usage error, 3 I/O failure.

use antilin::{
    json, polar, sample, spectral_measure, takagi, wvn_decompose, Conjugation, Error as MathError,
    RealLinearOp, SampleKind, Sampled, SchattenParams, TauSymmetricOp, ToleranceConfig,
};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "antilin", version, about = "Antilinear self-adjoint operator toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| "not a number".to_string())?;
    if t > 0.0 && t <= 1e-2 {
        Ok(t)
    } else {
        Err("tolerance must lie in (0, 1e-2]".to_string())
    }
}

fn parse_epsilon(s: &str) -> Result<f64, String> {
    let e: f64 = s.parse().map_err(|_| "not a number".to_string())?;
    if e > 0.0 {
        Ok(e)
    } else {
        Err("epsilon must be positive".to_string())
    }
}

fn parse_p(s: &str) -> Result<f64, String> {
    let p: f64 = s.parse().map_err(|_| "not a number".to_string())?;
    if p > 1.0 && p.is_finite() {
        Ok(p)
    } else {
        Err("p must satisfy 1 < p < inf".to_string())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Ginibre,
    Symmetric,
    Unitary,
    Conjugation,
    SelfadjointAntilinear,
}

impl From<KindArg> for SampleKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Ginibre => SampleKind::Ginibre,
            KindArg::Symmetric => SampleKind::Symmetric,
            KindArg::Unitary => SampleKind::Unitary,
            KindArg::Conjugation => SampleKind::Conjugation,
            KindArg::SelfadjointAntilinear => SampleKind::SelfadjointAntilinear,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Takagi factorization M = U diag(d) U^T of a complex symmetric matrix
    Takagi {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, env = "ANTILIN_TOL", default_value_t = 1e-8, value_parser = parse_tol)]
        tol: f64,
    },
    /// Polar form A = |A| tau of a self-adjoint antilinear operator
    Polar {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, env = "ANTILIN_TOL", default_value_t = 1e-8, value_parser = parse_tol)]
        tol: f64,
    },
    /// Atomic antilinear spectral measure of a self-adjoint antilinear operator
    Spectrum {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, env = "ANTILIN_TOL", default_value_t = 1e-8, value_parser = parse_tol)]
        tol: f64,
    },
    /// Weyl-von Neumann decomposition A = D + K with |K|_p < epsilon
    Wvn {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 0.05, value_parser = parse_epsilon)]
        epsilon: f64,
        #[arg(long, default_value_t = 2.0, value_parser = parse_p)]
        p: f64,
        #[arg(long, env = "ANTILIN_TOL", default_value_t = 1e-8, value_parser = parse_tol)]
        tol: f64,
    },
    /// Orthonormal basis fixed by a conjugation
    ConjBasis {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, env = "ANTILIN_TOL", default_value_t = 1e-8, value_parser = parse_tol)]
        tol: f64,
    },
    /// Approximate condiagonalization and factorization of a tau-symmetric operator
    CsymApprox {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 0.05, value_parser = parse_epsilon)]
        epsilon: f64,
        #[arg(long, default_value_t = 2.0, value_parser = parse_p)]
        p: f64,
        #[arg(long, env = "ANTILIN_TOL", default_value_t = 1e-8, value_parser = parse_tol)]
        tol: f64,
    },
    /// Seeded random matrices and operators (deterministic per seed)
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = KindArg::SelfadjointAntilinear)]
        kind: KindArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the invariant suites on a supplied operator, report pass/fail each
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, env = "ANTILIN_TOL", default_value_t = 1e-8, value_parser = parse_tol)]
        tol: f64,
    },
}

enum Failure {
    Math(MathError),
    Io(String),
}

impl From<MathError> for Failure {
    fn from(e: MathError) -> Self {
        Failure::Math(e)
    }
}

fn error_code(e: &MathError) -> (&'static str, Option<f64>) {
    match e {
        MathError::DimensionMismatch { .. } => ("dimension_mismatch", None),
        MathError::Empty(_) => ("empty_input", None),
        MathError::NonFinite => ("non_finite", None),
        MathError::NotSquare { .. } => ("not_square", None),
        MathError::NotSymmetric { residual } => ("not_symmetric", Some(*residual)),
        MathError::NotHermitian { residual } => ("not_hermitian", Some(*residual)),
        MathError::NotUnitary { residual } => ("not_unitary", Some(*residual)),
        MathError::NotInvolution { residual } => ("not_involution", Some(*residual)),
        MathError::NotPositiveSemidefinite { min_eigenvalue } => ("not_psd", Some(*min_eigenvalue)),
        MathError::NotOrthonormal { residual } => ("not_orthonormal", Some(*residual)),
        MathError::NotAntilinear { norm } => ("not_antilinear", Some(*norm)),
        MathError::MissingProbe { .. } => ("missing_probe", None),
        MathError::InvalidTolerance(t) => ("invalid_tolerance", Some(*t)),
        MathError::InvalidSchattenExponent(p) => ("invalid_p", Some(*p)),
        MathError::NoConvergence { residual } => ("no_convergence", Some(*residual)),
        MathError::HypothesisViolated { residual } => ("hypothesis_violated", Some(*residual)),
        MathError::ZeroVector => ("zero_vector", None),
        MathError::NotFixedVector { residual } => ("not_fixed_vector", Some(*residual)),
        MathError::AtomIndexOutOfRange { .. } => ("atom_index_out_of_range", None),
        MathError::PartitionBudgetUnreachable { achieved, .. } => {
            ("partition_budget_unreachable", Some(*achieved))
        }
    }
}

fn read_json(path: &Path) -> Result<serde_json::Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Io(format!("cannot parse {}: {e}", path.display())))
}

/// Loads the antilinear matrix of an operator from any accepted input shape;
/// shape problems are I/O-level failures, math violations are not.
fn load_antilinear(path: &Path, tol: f64) -> Result<antilin::CMat, Failure> {
    let v = read_json(path)?;
    match json::antilinear_matrix_from_json(&v, tol) {
        Ok(m) => Ok(m),
        Err(MathError::Empty(what)) => Err(Failure::Io(format!("{}: {what}", path.display()))),
        Err(e) => Err(Failure::Math(e)),
    }
}

fn load_conjugation(path: &Path, tol: f64) -> Result<Conjugation, Failure> {
    let v = read_json(path)?;
    match json::conjugation_from_json(&v, tol) {
        Ok(k) => Ok(k),
        Err(MathError::Empty(what)) => Err(Failure::Io(format!("{}: {what}", path.display()))),
        Err(e) => Err(Failure::Math(e)),
    }
}

fn run(cmd: &Cmd) -> Result<serde_json::Value, Failure> {
    match cmd {
        Cmd::Takagi { input, tol, .. } => {
            let m = load_antilinear(input, *tol)?;
            let fact = takagi(&m, *tol)?;
            Ok(serde_json::json!({
                "d": fact.values(),
                "u": json::matrix_to_json(fact.u()),
            }))
        }
        Cmd::Polar { input, tol, .. } => {
            let m = load_antilinear(input, *tol)?;
            let a = RealLinearOp::from_antilinear(m)?;
            let pf = polar(&a, *tol)?;
            Ok(serde_json::json!({
                "modulus": json::matrix_to_json(pf.modulus()),
                "tau": json::matrix_to_json(pf.tau().matrix()),
            }))
        }
        Cmd::Spectrum { input, tol, .. } => {
            let m = load_antilinear(input, *tol)?;
            let a = RealLinearOp::from_antilinear(m)?;
            let cfg = ToleranceConfig::new(*tol, antilin::DEFAULT_CLUSTER_TOL)?;
            let sm = spectral_measure(&a, &cfg)?;
            let atoms: Vec<serde_json::Value> = sm
                .atoms()
                .iter()
                .map(|at| {
                    serde_json::json!({
                        "lambda": at.lambda,
                        "projection": json::matrix_to_json(&at.projection),
                    })
                })
                .collect();
            Ok(serde_json::json!({
                "atoms": atoms,
                "tau": json::matrix_to_json(sm.tau().matrix()),
            }))
        }
        Cmd::Wvn { input, epsilon, p, tol, .. } => {
            let m = load_antilinear(input, *tol)?;
            let a = RealLinearOp::from_antilinear(m)?;
            let params = SchattenParams::new(*p)?;
            let dec = wvn_decompose(&a, *epsilon, &params, *tol)?;
            let blocks: Vec<serde_json::Value> = dec
                .blocks()
                .iter()
                .map(|b| {
                    serde_json::json!({
                        "basis": json::matrix_to_json(&b.basis),
                        "projection": json::matrix_to_json(&b.projection),
                        "values": b.values,
                    })
                })
                .collect();
            let steps: Vec<serde_json::Value> = dec
                .steps()
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "budget": s.budget,
                        "interval_width": s.interval_width,
                        "k_norm": s.k_norm,
                        "m": s.m,
                        "p_perp_a_p_norm": s.p_perp_a_p_norm,
                        "rank": s.rank,
                    })
                })
                .collect();
            Ok(serde_json::json!({
                "D": json::op_to_json(dec.d_op()),
                "K": json::op_to_json(dec.k_op()),
                "achieved_norm": dec.achieved_norm(),
                "blocks": blocks,
                "epsilon": dec.epsilon(),
                "p": dec.p(),
                "steps": steps,
                "tau_convention": "restricted-per-step",
            }))
        }
        Cmd::ConjBasis { input, tol, .. } => {
            let k = load_conjugation(input, *tol)?;
            let basis = antilin::conjugation_eigenbasis(&k)?;
            Ok(serde_json::json!({ "basis": json::matrix_to_json(&basis) }))
        }
        Cmd::CsymApprox { input, epsilon, p, tol, .. } => {
            let v = read_json(input)?;
            let obj = v
                .as_object()
                .ok_or_else(|| Failure::Io("csym-approx input must be an object".into()))?;
            let s_mat = json::matrix_from_json(
                obj.get("s").ok_or_else(|| Failure::Io("missing \"s\" field".into()))?,
            )
            .map_err(|e| Failure::Io(format!("bad \"s\" field: {e}")))?;
            let tau_mat = json::matrix_from_json(
                obj.get("tau").ok_or_else(|| Failure::Io("missing \"tau\" field".into()))?,
            )
            .map_err(|e| Failure::Io(format!("bad \"tau\" field: {e}")))?;
            let tau = Conjugation::with_tol(tau_mat, *tol)?;
            let s = TauSymmetricOp::new(s_mat, tau, *tol)?;
            let params = SchattenParams::new(*p)?;
            let cd = antilin::approx_condiag(&s, *epsilon, &params, *tol)?;
            let fa = antilin::approx_factor(&s, *epsilon, &params, *tol)?;
            Ok(serde_json::json!({
                "condiag": {
                    "d_matrix": json::matrix_to_json(&cd.d_matrix),
                    "d_values": cd.d_values,
                    "op_norm_error": cd.op_norm_error,
                    "schatten_error": cd.schatten_error,
                    "u": json::matrix_to_json(&cd.u),
                },
                "factor": {
                    "basis": json::matrix_to_json(&fa.basis),
                    "d_matrix": json::matrix_to_json(&fa.d_matrix),
                    "d_values": fa.d_values,
                    "kappa": json::conjugation_to_json(&fa.kappa),
                    "op_norm_error": fa.op_norm_error,
                    "schatten_error": fa.schatten_error,
                },
            }))
        }
        Cmd::Random { n, seed, kind, .. } => {
            let out = sample(SampleKind::from(*kind), *n, *seed)?;
            Ok(match out {
                Sampled::Op(op) => json::op_to_json(&op),
                Sampled::Conjugation(k) => json::conjugation_to_json(&k),
            })
        }
        Cmd::Check { input, tol, .. } => {
            let v = read_json(input)?;
            let m = match json::antilinear_matrix_from_json(&v, *tol) {
                Ok(m) => m,
                Err(MathError::Empty(what)) => {
                    return Err(Failure::Io(format!("{}: {what}", input.display())))
                }
                Err(e) => return Err(Failure::Math(e)),
            };
            let claims_conjugation =
                v.as_object().map(|o| o.contains_key("matrix")).unwrap_or(false);
            Ok(run_checks(&m, claims_conjugation, *tol)?)
        }
    }
}

/// The invariant suites behind the `check` subcommand.
fn run_checks(
    m: &antilin::CMat,
    claims_conjugation: bool,
    tol: f64,
) -> Result<serde_json::Value, MathError> {
    let mut checks: Vec<serde_json::Value> = Vec::new();
    let mut all_pass = true;
    let mut push = |name: &str, residual: f64, threshold: f64, all: &mut bool| -> bool {
        let pass = residual.is_finite() && residual <= threshold;
        *all &= pass;
        checks.push(serde_json::json!({
            "name": name,
            "pass": pass,
            "residual": residual,
            "threshold": threshold,
        }));
        pass
    };

    let finite = antilin::cmat::is_finite(m);
    let sym = antilin::cmat::symmetry_residual(m);
    push("finite_entries", if finite { 0.0 } else { f64::NAN }, 0.5, &mut all_pass);
    let symmetric_ok = push("antilinear_self_adjoint", sym, tol, &mut all_pass);

    if claims_conjugation {
        let residuals = antilin::conjugation::residuals_of(m);
        push("conjugation_symmetry", residuals.symmetry, tol, &mut all_pass);
        push("conjugation_unitarity", residuals.unitarity, tol, &mut all_pass);
        push("conjugation_involution", residuals.involution, tol, &mut all_pass);
    }

    if finite && symmetric_ok {
        let a = RealLinearOp::from_antilinear(m.clone())?;
        let scale = 1.0 + a.operator_norm();
        if let Ok(fact) = takagi(m, tol) {
            let rec = (m - fact.reconstruct()).norm() / antilin::cmat::fro(m).max(1.0);
            push("takagi_reconstruction", rec, 1e-10, &mut all_pass);
            let s = antilin::singular_values(&a)?;
            let dev = s
                .iter()
                .zip(fact.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            push("takagi_values_match_svd", dev, 1e-10 * scale, &mut all_pass);
        }
        if let Ok(pf) = polar(&a, tol) {
            let r1 = (m - pf.modulus() * pf.tau().matrix()).norm();
            let r2 =
                (m - pf.tau().matrix() * antilin::cmat::conj_mat(pf.modulus())).norm();
            push("polar_factorization", r1.max(r2), 1e-9 * scale, &mut all_pass);
            let tr = pf.tau().residuals();
            push(
                "polar_tau_invariants",
                tr.symmetry.max(tr.unitarity).max(tr.involution),
                1e-9,
                &mut all_pass,
            );
        }
        let cfg = ToleranceConfig::new(tol, antilin::DEFAULT_CLUSTER_TOL)?;
        if let Ok(sm) = spectral_measure(&a, &cfg) {
            let n = sm.dim();
            let mut sum = antilin::CMat::zeros(n, n);
            let mut comm: f64 = 0.0;
            for at in sm.atoms() {
                sum += &at.projection;
                comm = comm.max(antilin::polar::commutation_residual(&at.projection, sm.tau()));
            }
            let completeness = (sum - antilin::CMat::identity(n, n)).norm();
            push("spectral_completeness", completeness, 1e-9, &mut all_pass);
            push("spectral_commutation", comm, 1e-9, &mut all_pass);
            let rec = sm.reconstruct();
            let defect = a.sub(&rec)?.operator_norm();
            push("spectral_round_trip", defect, 1e-8 * scale, &mut all_pass);
        }
    }

    Ok(serde_json::json!({ "checks": checks, "pass": all_pass }))
}

fn write_output(dest: Option<&Path>, value: &serde_json::Value) -> Result<(), Failure> {
    let mut text = serde_json::to_string(value).expect("serializable value");
    text.push('\n');
    match dest {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io(format!("cannot write stdout: {e}")))
        }
    }
}

fn output_path(cmd: &Cmd) -> Option<&Path> {
    match cmd {
        Cmd::Takagi { output, .. }
        | Cmd::Polar { output, .. }
        | Cmd::Spectrum { output, .. }
        | Cmd::Wvn { output, .. }
        | Cmd::ConjBasis { output, .. }
        | Cmd::CsymApprox { output, .. }
        | Cmd::Random { output, .. }
        | Cmd::Check { output, .. } => output.as_deref(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(), // usage errors exit 2, --help/--version exit 0
    };
    let dest = output_path(&cli.cmd);
    match run(&cli.cmd) {
        Ok(value) => {
            if let Err(Failure::Io(msg)) = write_output(dest, &value) {
                eprintln!("antilin: {msg}");
                return ExitCode::from(3);
            }
            // `check` reports failures through the exit code as well
            if let Some(false) = value.get("pass").and_then(|p| p.as_bool()) {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Math(e)) => {
            let (code, residual) = error_code(&e);
            let obj = serde_json::json!({ "error": code, "residual": residual });
            if let Err(Failure::Io(msg)) = write_output(dest, &obj) {
                eprintln!("antilin: {msg}");
                return ExitCode::from(3);
            }
            eprintln!("antilin: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("antilin: {msg}");
            ExitCode::from(3)
        }
    }
}
