//! `fft` — command-line surface for the finite free probability library.
//!
//! Results go to stdout as JSON (tables and root dumps to `--out` as CSV);
//! exit code 0 on success, 1 on a failed check or computation, 2 on usage
//! errors.  Identical argv and seed give byte-identical output; the seed
//! comes from `--seed` or the `FFT_SEED` environment variable.

pub mod json;
pub mod registry;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ffp::compound::{additive_compound, majorization_flow, majorizes, sorted_roots_desc};
use ffp::conv::{additive_convolve, additive_inverse, multiplicative_convolve, operator_of};
use ffp::dist::{
    finite_compound_poisson_from_roots, finite_gaussian, finite_poisson,
    finite_poisson_atom_form,
};
use ffp::freepos::{
    check_free_position, check_mult_identity, search_free_rotation, zero_diagonal_normalize,
};
use ffp::limits::{clt_run, lln_run, mp_support_check, poisson_limit_exact};
use ffp::matrix::{mc_worker, ConvKind, Mat, McSketch, SymMatrix};
use ffp::mixed::{
    binomial_identity_check, md_pattern, mixed_discriminant, projection_identity_check,
    trace_distributivity_check,
};
use ffp::poly::Poly;
use ffp::ri::{demo_frame_r3, restricted_invertibility_demo};
use ffp::scalar::Scalar;
use ffp::transforms::{
    finite_k_transform, identity_s_reference, quadrature_k_check,
    quadrature_n_check, r_additivity_check, r_convergence_study, s_moment_values,
    s_multiplicativity_check,
};
use ffp::utransform::{u_inverse, u_moments, u_transform};
use ffp::voiculescu::voiculescu_s_values;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Rational,
    Float,
}

#[derive(Parser)]
#[command(
    name = "fft",
    about = "Finite free probability: polynomial convolutions, U transform, finite R/S transforms, matrix experiments",
    version
)]
pub struct Cli {
    /// Scalar mode; identity-style commands default to rational, Monte
    /// Carlo and root work to float.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    /// RNG seed (falls back to the FFT_SEED environment variable, then 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Monte Carlo worker count (deterministic for a fixed seed and count).
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Write tabular/root output as CSV to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Symmetric additive/multiplicative convolutions and the ⊞-inverse.
    Conv {
        #[command(subcommand)]
        op: ConvOp,
    },
    /// U transform of a multiset: forward, inverse, or moments only.
    Utransform {
        #[command(subcommand)]
        op: UTransformOp,
    },
    /// m-finite K/R transform of a real-rooted polynomial.
    Rtransform {
        /// polynomial, leading-first coefficient list
        #[arg(long)]
        p: String,
    },
    /// S-transform data grid, identity reference, or Voiculescu oracle.
    Stransform(StransformArgs),
    /// Identity and quadrature checks (exit 1 when a check fails).
    Check {
        #[command(subcommand)]
        op: CheckOp,
    },
    /// Convergence studies.
    Study {
        #[command(subcommand)]
        op: StudyOp,
    },
    /// Monte Carlo validation of the convolutions over Haar rotations.
    Mc {
        #[command(subcommand)]
        op: McOp,
    },
    /// Finite free position: check, rotation search, zero-diagonal form.
    Freepos {
        #[command(subcommand)]
        op: FreeposOp,
    },
    /// Mixed discriminant evaluation.
    Md {
        #[command(subcommand)]
        op: MdOp,
    },
    /// k-th additive compound matrix.
    Compound {
        #[arg(long)]
        a: String,
        #[arg(long)]
        k: usize,
    },
    /// Majorization checks and the convolution flow.
    Majorize {
        #[command(subcommand)]
        op: MajorizeOp,
    },
    /// Finite distributions (Hermite/Gaussian, Poisson/Laguerre, compound).
    Dist {
        #[command(subcommand)]
        op: DistOp,
    },
    /// Limit theorems (LLN, CLT, exact Poisson limit).
    Limit {
        #[command(subcommand)]
        op: LimitOp,
    },
    /// Restricted invertibility demo.
    Ri {
        #[command(subcommand)]
        op: RiOp,
    },
}

#[derive(Subcommand)]
pub enum ConvOp {
    Add {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        m: usize,
    },
    Mult {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        m: usize,
    },
    Inverse {
        #[arg(long)]
        p: String,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand)]
pub enum UTransformOp {
    Forward {
        /// multiset as a JSON array (numbers or {re, im} objects)
        #[arg(long)]
        set: String,
    },
    Inverse {
        #[arg(long)]
        set: String,
    },
    Moments {
        #[arg(long)]
        set: String,
        #[arg(long)]
        kmax: usize,
    },
}

#[derive(Args)]
pub struct StransformArgs {
    /// positive-rooted polynomial for the S data grid
    #[arg(long)]
    pub p: Option<String>,
    /// return ln N_I = ψ(ms + m + 1) - ψ(ms) instead
    #[arg(long, default_value_t = false)]
    pub identity_ref: bool,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub s: Option<f64>,
    /// Voiculescu modified S-transform oracle of a positive multiset
    #[arg(long, default_value_t = false)]
    pub voiculescu: bool,
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub order: usize,
}

#[derive(Subcommand)]
pub enum CheckOp {
    /// Integral definition of the K-transform vs its closed form.
    QuadratureK {
        #[arg(long)]
        p: String,
        #[arg(long)]
        s: f64,
    },
    /// Integral definition of the N-transform vs its closed form.
    QuadratureN {
        #[arg(long)]
        p: String,
        #[arg(long)]
        s: f64,
    },
    /// R-transform additivity under ⊞.
    RAdd {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// S-moment multiplicativity under ⊠.
    SMult {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Alternating binomial identity, all n <= nmax.
    Binomial {
        #[arg(long)]
        nmax: usize,
    },
    /// Trace distributivity of the mixed discriminant.
    TraceDist {
        #[arg(long)]
        a: String,
        /// JSON list of matrices
        #[arg(long)]
        xs: String,
    },
    /// Projection identity f(i,j,k) for A^2 = A in free position with B.
    Projection {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Subcommand)]
pub enum StudyOp {
    /// Finite R-transform coefficients of replicated realizations vs the
    /// Voiculescu reference.
    RConvergence {
        #[arg(long)]
        base: String,
        /// replication factors, JSON array
        #[arg(long)]
        replications: String,
    },
}

#[derive(Subcommand)]
pub enum McOp {
    Verify {
        #[arg(long, value_parser = ["add", "mult"])]
        kind: String,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// optional explicit matrices (JSON); random symmetric by default
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long, default_value_t = 4.0)]
        zmax: f64,
    },
}

#[derive(Subcommand)]
pub enum FreeposOp {
    Check {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    Search {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    Normalize {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Subcommand)]
pub enum MdOp {
    Eval {
        /// JSON list of matrices (full mixed discriminant), or use --a/--b
        /// with --i/--j for the pattern `D(A[i], B[j], I[m-i-j])`
        #[arg(long)]
        xs: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
    },
}

#[derive(Subcommand)]
pub enum MajorizeOp {
    Check {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    Flow {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        ts: String,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

#[derive(Subcommand)]
pub enum DistOp {
    /// Finite Gaussian (rescaled Hermite).
    Hermite {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "0")]
        mu: String,
        #[arg(long, default_value = "1")]
        sigma2: String,
    },
    /// Finite Poisson (rescaled associated Laguerre).
    Poisson {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        lambda: String,
        /// use the explicit-atom form (λ <= 1)
        #[arg(long, default_value_t = false)]
        atom_form: bool,
        /// report roots against the Marchenko-Pastur interval
        #[arg(long, default_value_t = false)]
        mp_report: bool,
    },
    /// Finite compound Poisson from the jump roots.
    Compound {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        lambda: String,
        /// jump roots, JSON array of length m
        #[arg(long)]
        roots: String,
    },
}

#[derive(Subcommand)]
pub enum LimitOp {
    Lln {
        /// input polynomials (repeat the flag to mix); cycled to n factors
        #[arg(long, required = true)]
        p: Vec<String>,
        #[arg(long)]
        n: usize,
    },
    Clt {
        #[arg(long)]
        p: String,
        #[arg(long)]
        n: usize,
    },
    Poisson {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        lambda: String,
        /// kept for interface compatibility; the identity is always exact
        #[arg(long, default_value_t = true)]
        exact: bool,
    },
}

#[derive(Subcommand)]
pub enum RiOp {
    Demo {
        /// JSON list of frame vectors; defaults to the 6-vector frame in R^3
        #[arg(long)]
        vectors: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: usize,
    },
}

enum Outcome {
    Ok(Value),
    CheckFailed(Value),
}

enum CliError {
    Usage(String),
    Run(String),
}

impl From<ffp::Error> for CliError {
    fn from(e: ffp::Error) -> Self {
        CliError::Run(e.to_string())
    }
}

impl From<String> for CliError {
    fn from(e: String) -> Self {
        CliError::Usage(e)
    }
}

type CliResult = Result<Outcome, CliError>;

fn mode_or(cli_mode: Option<Mode>, default: Mode) -> Mode {
    cli_mode.unwrap_or(default)
}

fn require_float(cli_mode: Option<Mode>, what: &str) -> Result<(), CliError> {
    if cli_mode == Some(Mode::Rational) {
        return Err(CliError::Usage(format!("--mode rational: {what} is float-only")));
    }
    Ok(())
}

fn seed_of(cli: &Cli) -> u64 {
    cli.seed
        .or_else(|| {
            std::env::var("FFT_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0)
}

fn write_csv(path: &Option<PathBuf>, header: &str, rows: &[String]) -> Result<(), CliError> {
    let Some(path) = path else { return Ok(()) };
    let mut f = std::fs::File::create(path)
        .map_err(|e| CliError::Run(format!("cannot write {}: {e}", path.display())))?;
    writeln!(f, "{header}").and_then(|_| {
        rows.iter().try_for_each(|r| writeln!(f, "{r}"))
    })
    .map_err(|e| CliError::Run(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}

fn roots_csv(path: &Option<PathBuf>, p: &Poly<f64>) -> Result<(), CliError> {
    if path.is_some() {
        let roots = sorted_roots_desc(p, 1e-7).map_err(CliError::from)?;
        let rows: Vec<String> = roots.iter().map(|r| format!("{r}")).collect();
        write_csv(path, "root", &rows)?;
    }
    Ok(())
}

fn sym_from_f64(m: Mat<f64>) -> Result<SymMatrix<f64>, CliError> {
    SymMatrix::from_mat(m).map_err(CliError::from)
}

fn dispatch(cli: &Cli) -> CliResult {
    match &cli.cmd {
        Cmd::Conv { op } => run_conv(cli, op),
        Cmd::Utransform { op } => run_utransform(cli, op),
        Cmd::Rtransform { p } => run_rtransform(cli, p),
        Cmd::Stransform(args) => run_stransform(cli, args),
        Cmd::Check { op } => run_check(cli, op),
        Cmd::Study { op } => run_study(cli, op),
        Cmd::Mc { op } => run_mc(cli, op),
        Cmd::Freepos { op } => run_freepos(cli, op),
        Cmd::Md { op } => run_md(cli, op),
        Cmd::Compound { a, k } => run_compound(cli, a, *k),
        Cmd::Majorize { op } => run_majorize(cli, op),
        Cmd::Dist { op } => run_dist(cli, op),
        Cmd::Limit { op } => run_limit(cli, op),
        Cmd::Ri { op } => run_ri(cli, op),
    }
}

fn run_conv(cli: &Cli, op: &ConvOp) -> CliResult {
    let mode = mode_or(cli.mode, Mode::Rational);
    let out = match (op, mode) {
        (ConvOp::Add { p, q, m }, Mode::Rational) => {
            let r = additive_convolve(&json::poly_rat_from_str(p)?, &json::poly_rat_from_str(q)?, *m)?;
            json::poly_rat_to_value(&r)
        }
        (ConvOp::Add { p, q, m }, Mode::Float) => {
            let r = additive_convolve(&json::poly_f64_from_str(p)?, &json::poly_f64_from_str(q)?, *m)?;
            json::poly_f64_to_value(&r)
        }
        (ConvOp::Mult { p, q, m }, Mode::Rational) => {
            let r = multiplicative_convolve(
                &json::poly_rat_from_str(p)?,
                &json::poly_rat_from_str(q)?,
                *m,
            )?;
            json::poly_rat_to_value(&r)
        }
        (ConvOp::Mult { p, q, m }, Mode::Float) => {
            let r = multiplicative_convolve(
                &json::poly_f64_from_str(p)?,
                &json::poly_f64_from_str(q)?,
                *m,
            )?;
            json::poly_f64_to_value(&r)
        }
        (ConvOp::Inverse { p, m }, Mode::Rational) => {
            let pr = json::poly_rat_from_str(p)?;
            let inv = additive_inverse(&pr, *m)?;
            let op = operator_of(&pr, *m)?;
            json!({
                "inverse": json::poly_rat_to_value(&inv),
                "operator": op.coeffs().iter().map(json::rat_to_value).collect::<Vec<Value>>(),
            })
        }
        (ConvOp::Inverse { p, m }, Mode::Float) => {
            let pf = json::poly_f64_from_str(p)?;
            let inv = additive_inverse(&pf, *m)?;
            let op = operator_of(&pf, *m)?;
            json!({
                "inverse": json::poly_f64_to_value(&inv),
                "operator": op.coeffs(),
            })
        }
    };
    Ok(Outcome::Ok(out))
}

fn run_utransform(cli: &Cli, op: &UTransformOp) -> CliResult {
    match op {
        UTransformOp::Forward { set } => {
            require_float(cli.mode, "utransform forward materializes float roots")?;
            let s = json::multiset_f64_from_str(set)?;
            let t = u_transform(&s)?;
            Ok(Outcome::Ok(json!({ "transform": json::multiset_to_value(&t) })))
        }
        UTransformOp::Inverse { set } => {
            require_float(cli.mode, "utransform inverse materializes float roots")?;
            let t = json::multiset_f64_from_str(set)?;
            let s = u_inverse(&t)?;
            Ok(Outcome::Ok(json!({ "multiset": json::multiset_to_value(&s) })))
        }
        UTransformOp::Moments { set, kmax } => {
            let mode = mode_or(cli.mode, Mode::Rational);
            let out = match mode {
                Mode::Rational => {
                    let s = json::multiset_rat_from_str(set)?;
                    let m = u_moments(&s, *kmax)?;
                    json!(m
                        .iter()
                        .map(|z| json!({
                            "re": json::rat_to_value(&z.re),
                            "im": json::rat_to_value(&z.im)
                        }))
                        .collect::<Vec<Value>>())
                }
                Mode::Float => {
                    let s = json::multiset_f64_from_str(set)?;
                    let m = u_moments(&s, *kmax)?;
                    json!(m
                        .iter()
                        .map(|z| json!({ "re": z.re, "im": z.im }))
                        .collect::<Vec<Value>>())
                }
            };
            Ok(Outcome::Ok(json!({ "moments": out })))
        }
    }
}

fn run_rtransform(cli: &Cli, p: &str) -> CliResult {
    let out = match mode_or(cli.mode, Mode::Rational) {
        Mode::Rational => {
            let k = finite_k_transform(&json::poly_rat_from_str(p)?)?;
            json!({
                "pole": json::rat_to_value(&k.pole),
                "r": json::series_rat_to_value(&k.tail),
            })
        }
        Mode::Float => {
            let k = finite_k_transform(&json::poly_f64_from_str(p)?)?;
            json!({ "pole": k.pole, "r": json::series_f64_to_value(&k.tail) })
        }
    };
    Ok(Outcome::Ok(out))
}

fn run_stransform(cli: &Cli, args: &StransformArgs) -> CliResult {
    if args.identity_ref {
        let (Some(m), Some(s)) = (args.m, args.s) else {
            return Err(CliError::Usage("--identity-ref needs --m and --s".into()));
        };
        return Ok(Outcome::Ok(json!({ "ln_n_identity": identity_s_reference(m, s) })));
    }
    if args.voiculescu {
        let Some(set) = &args.set else {
            return Err(CliError::Usage("--voiculescu needs --set".into()));
        };
        let out = match mode_or(cli.mode, Mode::Rational) {
            Mode::Rational => {
                let s = voiculescu_s_values(&json::multiset_rat_from_str(set)?, args.order)?;
                json::series_rat_to_value(&s)
            }
            Mode::Float => {
                let s = voiculescu_s_values(&json::multiset_f64_from_str(set)?, args.order)?;
                json::series_f64_to_value(&s)
            }
        };
        return Ok(Outcome::Ok(json!({ "voiculescu_s": out })));
    }
    let Some(p) = &args.p else {
        return Err(CliError::Usage("stransform needs --p (or --identity-ref / --voiculescu)".into()));
    };
    require_float(cli.mode, "the S data grid extracts float roots")?;
    let values = s_moment_values(&json::poly_f64_from_str(p)?)?;
    Ok(Outcome::Ok(json!({ "values": values })))
}

fn run_check(cli: &Cli, op: &CheckOp) -> CliResult {
    match op {
        CheckOp::QuadratureK { p, s } => {
            require_float(cli.mode, "quadrature checks")?;
            let dev = quadrature_k_check(&json::poly_f64_from_str(p)?, *s)?;
            let ok = dev <= 1e-6;
            let v = json!({ "ok": ok, "deviation": dev, "tolerance": 1e-6 });
            Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
        }
        CheckOp::QuadratureN { p, s } => {
            require_float(cli.mode, "quadrature checks")?;
            let dev = quadrature_n_check(&json::poly_f64_from_str(p)?, *s)?;
            let ok = dev <= 1e-6;
            let v = json!({ "ok": ok, "deviation": dev, "tolerance": 1e-6 });
            Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
        }
        CheckOp::RAdd { p, q } => {
            let (ok, res) = match mode_or(cli.mode, Mode::Rational) {
                Mode::Rational => r_additivity_check(
                    &json::poly_rat_from_str(p)?,
                    &json::poly_rat_from_str(q)?,
                )?,
                Mode::Float => r_additivity_check(
                    &json::poly_f64_from_str(p)?,
                    &json::poly_f64_from_str(q)?,
                )?,
            };
            let v = json!({ "ok": ok, "residual": res });
            Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
        }
        CheckOp::SMult { p, q } => {
            let (ok, res) = match mode_or(cli.mode, Mode::Rational) {
                Mode::Rational => s_multiplicativity_check(
                    &json::poly_rat_from_str(p)?,
                    &json::poly_rat_from_str(q)?,
                )?,
                Mode::Float => s_multiplicativity_check(
                    &json::poly_f64_from_str(p)?,
                    &json::poly_f64_from_str(q)?,
                )?,
            };
            let v = json!({ "ok": ok, "residual": res });
            Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
        }
        CheckOp::Binomial { nmax } => {
            let ok = binomial_identity_check(*nmax);
            let v = json!({ "ok": ok, "nmax": nmax });
            Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
        }
        CheckOp::TraceDist { a, xs } => {
            let (ok, res) = match mode_or(cli.mode, Mode::Rational) {
                Mode::Rational => {
                    let res = trace_distributivity_check(
                        &json::mat_rat_from_str(a)?,
                        &json::mats_rat_from_str(xs)?,
                    )?;
                    (res == 0.0, res)
                }
                Mode::Float => {
                    let res = trace_distributivity_check(
                        &json::mat_f64_from_str(a)?,
                        &json::mats_f64_from_str(xs)?,
                    )?;
                    (res <= 1e-8, res)
                }
            };
            let v = json!({ "ok": ok, "residual": res });
            Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
        }
        CheckOp::Projection { a, b, tol } => {
            require_float(cli.mode, "the projection identity check")?;
            let res = projection_identity_check(
                &json::mat_f64_from_str(a)?,
                &json::mat_f64_from_str(b)?,
                *tol,
            )?;
            let worst = res.iter().cloned().fold(0.0f64, f64::max);
            let ok = worst <= *tol;
            let v = json!({ "ok": ok, "worst_residual": worst, "identities": res.len() });
            Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
        }
    }
}

fn run_study(cli: &Cli, op: &StudyOp) -> CliResult {
    match op {
        StudyOp::RConvergence { base, replications } => {
            require_float(cli.mode, "the convergence study")?;
            let base = json::floats_from_str(base, "base multiset")?;
            let reps = json::usizes_from_str(replications, "replications")?;
            let study = r_convergence_study(&base, &reps)?;
            let mut rows = Vec::new();
            for row in &study.rows {
                let coeffs = row
                    .coeffs
                    .iter()
                    .map(|c| format!("{c}"))
                    .collect::<Vec<String>>()
                    .join(",");
                rows.push(format!("{},{},{}", row.replication, row.degree, coeffs));
            }
            rows.push(format!(
                "reference,,{}",
                study
                    .reference
                    .iter()
                    .map(|c| format!("{c}"))
                    .collect::<Vec<String>>()
                    .join(",")
            ));
            let header = format!(
                "replication,degree,{}",
                (1..=study.columns)
                    .map(|i| format!("kappa{i}"))
                    .collect::<Vec<String>>()
                    .join(",")
            );
            write_csv(&cli.out, &header, &rows)?;
            let v = json!({
                "columns": study.columns,
                "reference": study.reference,
                "rows": study.rows.iter().map(|r| json!({
                    "replication": r.replication,
                    "degree": r.degree,
                    "coeffs": r.coeffs,
                })).collect::<Vec<Value>>(),
            });
            Ok(Outcome::Ok(v))
        }
    }
}

fn run_mc(cli: &Cli, op: &McOp) -> CliResult {
    let McOp::Verify {
        kind,
        m,
        samples,
        a,
        b,
        zmax,
    } = op;
    require_float(cli.mode, "Monte Carlo verification")?;
    let seed = seed_of(cli);
    let kind_e = if kind == "add" { ConvKind::Add } else { ConvKind::Mult };
    let (am, bm) = match (a, b) {
        (Some(a), Some(b)) => (
            sym_from_f64(json::mat_f64_from_str(a)?)?,
            sym_from_f64(json::mat_f64_from_str(b)?)?,
        ),
        (None, None) => {
            // random symmetric (positive definite for mult) pair from the seed
            let mut rng = ffp::rng::Rng::stream(seed, 0xA);
            let make = |rng: &mut ffp::rng::Rng| {
                let g = Mat::from_fn(*m, |_, _| rng.uniform(-1.0, 1.0));
                let mut s = g
                    .add(&g.transpose())
                    .expect("square")
                    .scale(&0.5);
                if kind_e == ConvKind::Mult {
                    s = g.transpose().matmul(&g).expect("square");
                    let id: Mat<f64> = Mat::identity(*m);
                    s = s.add(&id.scale(&0.25)).expect("square");
                }
                SymMatrix::from_mat(s).expect("symmetric")
            };
            (make(&mut rng), make(&mut rng))
        }
        _ => {
            return Err(CliError::Usage(
                "--a and --b must be given together".into(),
            ))
        }
    };
    if am.dim() != *m || bm.dim() != *m {
        return Err(CliError::Usage("--m must match the matrix dimension".into()));
    }
    let target = match kind_e {
        ConvKind::Add => additive_convolve(&am.char_poly(), &bm.char_poly(), *m)?,
        ConvKind::Mult => multiplicative_convolve(&am.char_poly(), &bm.char_poly(), *m)?,
    };
    let workers = cli.threads.max(1);
    let mut sketch = McSketch::empty(*m);
    if workers == 1 {
        let part = mc_worker(&am, &bm, kind_e, *samples, seed, 0)?;
        sketch.merge(&part);
    } else {
        let shares: Vec<usize> = (0..workers)
            .map(|w| samples / workers + usize::from(w < samples % workers))
            .collect();
        let parts = std::thread::scope(|scope| {
            let handles: Vec<_> = shares
                .iter()
                .enumerate()
                .map(|(w, share)| {
                    let (am, bm) = (&am, &bm);
                    let share = *share;
                    scope.spawn(move || mc_worker(am, bm, kind_e, share, seed, w as u64))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect::<Vec<_>>()
        });
        for part in parts {
            sketch.merge(&part?);
        }
    }
    let result = sketch.finish();
    let mut zs = Vec::with_capacity(*m + 1);
    let mut ok = true;
    for k in 0..=*m {
        let diff = (result.mean.coeff(k) - target.coeff(k)).abs();
        let se = result.std_err[k];
        let z = if se > 1e-13 { diff / se } else { 0.0 };
        if diff > zmax * se + 1e-12 {
            ok = false;
        }
        zs.push(z);
    }
    let v = json!({
        "ok": ok,
        "kind": kind,
        "samples": result.samples,
        "mean": json::poly_f64_to_value(&result.mean),
        "target": json::poly_f64_to_value(&target),
        "std_err": result.std_err,
        "z_scores": zs,
        "zmax": zmax,
    });
    Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
}

fn run_freepos(cli: &Cli, op: &FreeposOp) -> CliResult {
    match op {
        FreeposOp::Check { a, b, tol } => {
            let (free, worst, mult) = match mode_or(cli.mode, Mode::Rational) {
                Mode::Rational => {
                    let am = SymMatrix::from_mat(json::mat_rat_from_str(a)?)?;
                    let bm = SymMatrix::from_mat(json::mat_rat_from_str(b)?)?;
                    let (free, worst) = check_free_position(&am, &bm, *tol)?;
                    let mult = check_mult_identity(&am, &bm, *tol)?;
                    (free, worst, mult.holds)
                }
                Mode::Float => {
                    let am = sym_from_f64(json::mat_f64_from_str(a)?)?;
                    let bm = sym_from_f64(json::mat_f64_from_str(b)?)?;
                    let (free, worst) = check_free_position(&am, &bm, *tol)?;
                    let mult = check_mult_identity(&am, &bm, *tol)?;
                    (free, worst, mult.holds)
                }
            };
            let v = json!({
                "ok": free,
                "free_position": free,
                "worst_residual": worst,
                "mult_identity": mult,
            });
            Ok(if free { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
        }
        FreeposOp::Search { a, b, budget, tol } => {
            require_float(cli.mode, "the rotation search")?;
            let am = sym_from_f64(json::mat_f64_from_str(a)?)?;
            let bm = sym_from_f64(json::mat_f64_from_str(b)?)?;
            let out = search_free_rotation(&am, &bm, *budget, *tol, seed_of(cli))?;
            let v = json!({
                "ok": out.converged,
                "residual": out.residual,
                "evaluations": out.evaluations,
                "rotation": json::mat_f64_to_value(&out.rotation),
            });
            Ok(if out.converged { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
        }
        FreeposOp::Normalize { a, b, budget, tol } => {
            require_float(cli.mode, "the zero-diagonal search")?;
            let am = sym_from_f64(json::mat_f64_from_str(a)?)?;
            let bm = sym_from_f64(json::mat_f64_from_str(b)?)?;
            let out = zero_diagonal_normalize(&am, &bm, *budget, *tol, seed_of(cli))?;
            let v = json!({
                "ok": out.converged,
                "ff_residual": out.ff_residual,
                "diag_residual": out.diag_residual,
                "evaluations": out.evaluations,
                "rotation": json::mat_f64_to_value(&out.rotation),
            });
            Ok(if out.converged { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
        }
    }
}

fn run_md(cli: &Cli, op: &MdOp) -> CliResult {
    let MdOp::Eval { xs, a, b, i, j } = op;
    let mode = mode_or(cli.mode, Mode::Rational);
    if let Some(xs) = xs {
        let out = match mode {
            Mode::Rational => json::rat_to_value(&mixed_discriminant(&json::mats_rat_from_str(xs)?)?),
            Mode::Float => json!(mixed_discriminant(&json::mats_f64_from_str(xs)?)?),
        };
        return Ok(Outcome::Ok(json!({ "value": out })));
    }
    let (Some(a), Some(b), Some(i), Some(j)) = (a, b, i, j) else {
        return Err(CliError::Usage(
            "md eval needs --xs, or all of --a --b --i --j".into(),
        ));
    };
    let out = match mode {
        Mode::Rational => json::rat_to_value(&md_pattern(
            &json::mat_rat_from_str(a)?,
            &json::mat_rat_from_str(b)?,
            *i,
            *j,
        )?),
        Mode::Float => json!(md_pattern(
            &json::mat_f64_from_str(a)?,
            &json::mat_f64_from_str(b)?,
            *i,
            *j
        )?),
    };
    Ok(Outcome::Ok(json!({ "value": out })))
}

fn run_compound(cli: &Cli, a: &str, k: usize) -> CliResult {
    let out = match mode_or(cli.mode, Mode::Rational) {
        Mode::Rational => {
            let c = additive_compound(&json::mat_rat_from_str(a)?, k)?;
            json!(c
                .rows()
                .iter()
                .map(|row| row.iter().map(json::rat_to_value).collect::<Vec<Value>>())
                .collect::<Vec<Vec<Value>>>())
        }
        Mode::Float => {
            let c = additive_compound(&json::mat_f64_from_str(a)?, k)?;
            json::mat_f64_to_value(&c)
        }
    };
    Ok(Outcome::Ok(json!({ "compound": out })))
}

fn run_majorize(cli: &Cli, op: &MajorizeOp) -> CliResult {
    require_float(cli.mode, "majorization checks")?;
    match op {
        MajorizeOp::Check { x, y, tol } => {
            let xs = json::floats_from_str(x, "x")?;
            let ys = json::floats_from_str(y, "y")?;
            let ok = majorizes(&xs, &ys, *tol)?;
            let v = json!({ "ok": ok, "majorizes": ok });
            Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
        }
        MajorizeOp::Flow { p, q, ts, tol } => {
            let pf = json::poly_f64_from_str(p)?;
            let qf = json::poly_f64_from_str(q)?;
            let times = json::floats_from_str(ts, "ts")?;
            let verdicts = majorization_flow(&pf, &qf, &times, *tol)?;
            let ok = verdicts.iter().all(|v| v.majorizes);
            let rows: Vec<String> = verdicts
                .iter()
                .map(|v| format!("{},{},{}", v.t, v.s, v.majorizes))
                .collect();
            write_csv(&cli.out, "t,s,majorizes", &rows)?;
            let v = json!({
                "ok": ok,
                "verdicts": verdicts.iter().map(|v| json!({
                    "t": v.t, "s": v.s, "majorizes": v.majorizes
                })).collect::<Vec<Value>>(),
            });
            Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
        }
    }
}

fn run_dist(cli: &Cli, op: &DistOp) -> CliResult {
    let mode = mode_or(cli.mode, Mode::Rational);
    match op {
        DistOp::Hermite { m, mu, sigma2 } => {
            let out = match mode {
                Mode::Rational => {
                    let p = finite_gaussian(
                        *m,
                        &json::rat_from_str(mu)?,
                        &json::rat_from_str(sigma2)?,
                    )?;
                    roots_csv(&cli.out, &p.to_f64())?;
                    json::poly_rat_to_value(&p)
                }
                Mode::Float => {
                    let p = finite_gaussian(
                        *m,
                        &json::rat_from_str(mu)?.to_f64_lossy(),
                        &json::rat_from_str(sigma2)?.to_f64_lossy(),
                    )?;
                    roots_csv(&cli.out, &p)?;
                    json::poly_f64_to_value(&p)
                }
            };
            Ok(Outcome::Ok(out))
        }
        DistOp::Poisson {
            m,
            lambda,
            atom_form,
            mp_report,
        } => {
            let lam = json::rat_from_str(lambda)?;
            if *mp_report {
                let rep = mp_support_check(*m, &lam)?;
                return Ok(Outcome::Ok(json!({
                    "m": rep.m,
                    "zero_multiplicity": rep.zero_multiplicity,
                    "min_nonzero": rep.min_nonzero,
                    "max_nonzero": rep.max_nonzero,
                    "mp_interval": [rep.mp_lo, rep.mp_hi],
                    "margin": [rep.margin_lo, rep.margin_hi],
                })));
            }
            let out = match mode {
                Mode::Rational => {
                    let p = if *atom_form {
                        finite_poisson_atom_form(*m, &lam)?
                    } else {
                        finite_poisson(*m, &lam)?
                    };
                    roots_csv(&cli.out, &p.to_f64())?;
                    json::poly_rat_to_value(&p)
                }
                Mode::Float => {
                    let lamf = lam.to_f64_lossy();
                    let p = if *atom_form {
                        finite_poisson_atom_form(*m, &lamf)?
                    } else {
                        finite_poisson(*m, &lamf)?
                    };
                    roots_csv(&cli.out, &p)?;
                    json::poly_f64_to_value(&p)
                }
            };
            Ok(Outcome::Ok(out))
        }
        DistOp::Compound { m, lambda, roots } => {
            let out = match mode {
                Mode::Rational => {
                    let p = finite_compound_poisson_from_roots(
                        *m,
                        &json::rat_from_str(lambda)?,
                        &json::rats_from_str(roots, "roots")?,
                    )?;
                    roots_csv(&cli.out, &p.to_f64())?;
                    json::poly_rat_to_value(&p)
                }
                Mode::Float => {
                    let p = finite_compound_poisson_from_roots(
                        *m,
                        &json::rat_from_str(lambda)?.to_f64_lossy(),
                        &json::floats_from_str(roots, "roots")?,
                    )?;
                    roots_csv(&cli.out, &p)?;
                    json::poly_f64_to_value(&p)
                }
            };
            Ok(Outcome::Ok(out))
        }
    }
}

fn run_limit(cli: &Cli, op: &LimitOp) -> CliResult {
    let mode = mode_or(cli.mode, Mode::Rational);
    match op {
        LimitOp::Lln { p, n } => {
            let (value, dist) = match mode {
                Mode::Rational => {
                    let ps = p
                        .iter()
                        .map(|s| json::poly_rat_from_str(s))
                        .collect::<Result<Vec<_>, _>>()?;
                    let (out, dist) = lln_run(&ps, *n)?;
                    roots_csv(&cli.out, &out.to_f64())?;
                    (json::poly_rat_to_value(&out), dist)
                }
                Mode::Float => {
                    let ps = p
                        .iter()
                        .map(|s| json::poly_f64_from_str(s))
                        .collect::<Result<Vec<_>, _>>()?;
                    let (out, dist) = lln_run(&ps, *n)?;
                    roots_csv(&cli.out, &out)?;
                    (json::poly_f64_to_value(&out), dist)
                }
            };
            Ok(Outcome::Ok(json!({ "result": value, "max_root_distance": dist })))
        }
        LimitOp::Clt { p, n } => {
            let (value, dist) = match mode {
                Mode::Rational => {
                    let (out, dist) = clt_run(&json::poly_rat_from_str(p)?, *n)?;
                    roots_csv(&cli.out, &out.to_f64())?;
                    (json::poly_rat_to_value(&out), dist)
                }
                Mode::Float => {
                    let (out, dist) = clt_run(&json::poly_f64_from_str(p)?, *n)?;
                    roots_csv(&cli.out, &out)?;
                    (json::poly_f64_to_value(&out), dist)
                }
            };
            Ok(Outcome::Ok(json!({ "result": value, "gaussian_distance": dist })))
        }
        LimitOp::Poisson { m, lambda, exact } => {
            if mode == Mode::Float {
                return Err(CliError::Usage(
                    "the Poisson limit identity is checked in rational mode".into(),
                ));
            }
            let _ = exact;
            let ok = poisson_limit_exact(*m, &json::rat_from_str(lambda)?)?;
            let v = json!({ "ok": ok });
            Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
        }
    }
}

fn run_ri(cli: &Cli, op: &RiOp) -> CliResult {
    let RiOp::Demo { vectors, k, budget } = op;
    require_float(cli.mode, "the restricted invertibility demo")?;
    let frame = match vectors {
        Some(v) => json::vectors_from_str(v)?,
        None => demo_frame_r3(),
    };
    let rep = restricted_invertibility_demo(&frame, *k, *budget)?;
    let ok = rep.max_coeff_dev <= 1e-10 && rep.kth_largest_root >= rep.mp_bound;
    roots_csv(&cli.out, &rep.reference)?;
    let v = json!({
        "ok": ok,
        "draws": rep.draws,
        "expected": json::poly_f64_to_value(&rep.expected),
        "reference": json::poly_f64_to_value(&rep.reference),
        "max_coeff_dev": rep.max_coeff_dev,
        "kth_largest_root": rep.kth_largest_root,
        "mp_bound": rep.mp_bound,
    });
    Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
}

/// Parses `argv` and runs the command; returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own message; --help/--version are successes
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(Outcome::Ok(v)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            0
        }
        Ok(Outcome::CheckFailed(v)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            1
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_tree_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn registry_lists_every_operation() {
        // The canonical operation list from the module surface; the registry
        // must cover each one.
        let ops = [
            "poly_from_roots",
            "roots",
            "signed_coeff",
            "power_sums_from_coeffs",
            "char_poly",
            "series_arithmetic",
            "series_revert",
            "voiculescu_r_series",
            "voiculescu_s_values",
            "u_transform",
            "u_inverse",
            "u_moments",
            "additive_convolve",
            "multiplicative_convolve",
            "operator_of_apply",
            "additive_inverse",
            "finite_r_transform",
            "finite_k_transform",
            "quadrature_k_check",
            "r_additivity_check",
            "s_moment_values",
            "s_multiplicativity_check",
            "quadrature_n_check",
            "identity_s_reference",
            "r_convergence_study",
            "haar_orthogonal",
            "mc_expected_charpoly",
            "mixed_discriminant",
            "md_pattern",
            "check_free_position",
            "check_mult_identity",
            "search_free_rotation",
            "zero_diagonal_normalize",
            "additive_compound",
            "majorizes",
            "majorization_flow",
            "trace_distributivity_check",
            "binomial_identity_check",
            "projection_identity_check",
            "finite_gaussian",
            "laguerre_finite_poisson",
            "finite_compound_poisson",
            "lln_run",
            "clt_run",
            "poisson_limit_exact",
            "mp_support_check",
            "restricted_invertibility_demo",
        ];
        for op in ops {
            assert!(
                registry::OPERATIONS.iter().any(|(name, _)| *name == op),
                "operation {op} has no subcommand mapping"
            );
        }
        // every mapped subcommand must start with a real top-level command
        let tree = Cli::command();
        let tops: Vec<String> = tree
            .get_subcommands()
            .map(|c| c.get_name().to_string())
            .collect();
        for (op, path) in registry::OPERATIONS {
            let first = path.split_whitespace().next().unwrap();
            assert!(
                tops.iter().any(|t| t == first),
                "registry entry {op} -> {path} names unknown command {first}"
            );
        }
    }
}
