//! Command-line front end. Every subcommand writes one JSON or CSV document
//! with numbers rounded to twelve significant digits.
//!
//! Exit codes: `0` success, `1` numerical non-convergence or a divergent
//! integral, `2` invalid arguments.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::config::{NumericConfig, SeriesConfig, DEFAULT_SEED};
use crate::counterexample::{blowup_demo, fm_eval, projected_fm};
use crate::domains::HartogsDomainSpec;
use crate::error::Error;
use crate::estimates::{
    asymptotic_ratio_check, i_alpha_beta_mc, j_alpha_mc, linear_grid, sphere_moment,
    sphere_moment_mc, Envelope, KernelIntegral,
};
use crate::kernels::{bergman_projection_mc, kernel_truncated, KernelModel};
use crate::multi_index::MultiIndex;
use crate::output::to_json;
use crate::schur::{
    admissible_p_range, feasible_params, schur_verify, search_p_range, SchurWitness, VerifyConfig,
};
use crate::transfer::{jacobian_bounds, pullback_isometry_check, transfer_norm_bound};

/// Environment variable holding the default seed.
pub const SEED_ENV: &str = "HARTOGS_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "hartogs",
    version,
    about = "Bergman-kernel experiments on generalized Hartogs triangles"
)]
struct Cli {
    /// RNG seed for every Monte-Carlo step [default: $HARTOGS_SEED or 1592598547]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for internal parallelism (results do not depend on it)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the result here instead of standard output
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a Bergman kernel: disk, ball, product model or Hartogs domain
    /// (closed form through the change of variables F/G and Φ)
    Kernel(KernelArgs),
    /// Sphere moment ∫|ξ^ν|² dσ: closed form against Monte-Carlo
    Moments(MomentsArgs),
    /// Weighted kernel integrals J_α or I_(α,β): exact series over a radius
    /// grid divided by the boundary envelope
    Estimates(EstimatesArgs),
    /// Sharp range 2n/(n+1) < p < 2n/(n−1) of L^p boundedness
    SchurRange(SchurRangeArgs),
    /// Sampled check of both Schur-test inequalities for a weight witness
    SchurVerify(SchurVerifyArgs),
    /// Endpoint counterexample: ‖f_m‖_p against the projection lower bound
    Blowup(BlowupArgs),
    /// Jacobian bounds of Φ, the transferred norm bound and pullback
    /// isometry checks
    Transfer(TransferArgs),
    /// Monte-Carlo Bergman projection on the standard model against a closed form
    Project(ProjectArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    Disk,
    Ball,
    Product,
    Hartogs,
}

#[derive(Debug, Args)]
struct DomainArgs {
    /// Domain JSON file: {"n": .., "blocks": [{"k": .., "map": {"type": ..}}]}
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Total dimension of a standard model (ignored with --spec)
    #[arg(long)]
    n: Option<usize>,
    /// Block sizes of a standard model, e.g. 1,1 (ignored with --spec)
    #[arg(long, value_delimiter = ',')]
    blocks: Option<Vec<usize>>,
    /// Single block size k of ℍⁿ_k (ignored with --spec or --blocks)
    #[arg(long)]
    k: Option<usize>,
}

impl DomainArgs {
    fn resolve(&self) -> Result<HartogsDomainSpec, Error> {
        if let Some(path) = &self.spec {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            return serde_json::from_str(&text)
                .map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())));
        }
        let n = self
            .n
            .ok_or_else(|| Error::InvalidArgument("need --spec or --n".into()))?;
        match (&self.blocks, self.k) {
            (Some(b), _) => HartogsDomainSpec::standard(n, b),
            (None, k) => HartogsDomainSpec::triangle(n, k.unwrap_or(1)),
        }
    }
}

#[derive(Debug, Args)]
struct KernelArgs {
    #[arg(long, value_enum, default_value = "hartogs")]
    model: ModelKind,
    #[command(flatten)]
    domain: DomainArgs,
    /// First point, comma-separated complex coordinates such as 0.3,0.5+0.1i
    #[arg(long, allow_hyphen_values = true)]
    w: String,
    /// Second point
    #[arg(long, allow_hyphen_values = true)]
    eta: String,
    /// Also report the orthonormal-basis partial sum up to this total degree
    #[arg(long)]
    truncate: Option<u32>,
}

#[derive(Debug, Args)]
struct MomentsArgs {
    #[arg(long)]
    k: usize,
    /// Multi-index, e.g. 1,1
    #[arg(long)]
    nu: String,
    #[arg(long, default_value_t = 1_000_000)]
    mc_samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IntegralKind {
    J,
    I,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnvelopeKind {
    Boundary,
    Refined,
}

#[derive(Debug, Args)]
struct EstimatesArgs {
    #[arg(long, value_enum, default_value = "j")]
    integral: IntegralKind,
    /// Ball dimension for J_α
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = -0.5)]
    alpha: f64,
    /// Radial exponent for I_(α,β)
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    beta: f64,
    #[arg(long, value_enum, default_value = "boundary")]
    envelope: EnvelopeKind,
    #[arg(long, default_value_t = 0.0)]
    r_min: f64,
    #[arg(long, default_value_t = 0.999)]
    r_max: f64,
    #[arg(long, default_value_t = 100)]
    points: usize,
    /// Radii at which to add a Monte-Carlo cross-check (JSON output only)
    #[arg(long, value_delimiter = ',')]
    check_radii: Vec<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    mc_samples: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct SchurRangeArgs {
    #[arg(long)]
    n: usize,
    /// Also locate the endpoints by bisection for this block size
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Debug, Args)]
struct SchurVerifyArgs {
    #[command(flatten)]
    domain: DomainArgs,
    #[arg(long)]
    p: f64,
    /// Override the witness exponent s
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    /// Override t_{k+1}, …, t_n
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    t: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 1e-3)]
    min_modulus: f64,
    #[arg(long, default_value_t = 0.99)]
    max_modulus: f64,
}

#[derive(Debug, Args)]
struct BlowupArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Exponent, 1 ≤ p ≤ 2n/(n+1) [default: 2n/(n+1)]
    #[arg(long)]
    p: Option<f64>,
    /// Rows m = 1, …, m_max
    #[arg(long, default_value_t = 100)]
    m_max: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Example {
    Affine,
    Rational,
}

#[derive(Debug, Args)]
struct TransferArgs {
    #[command(flatten)]
    domain: DomainArgs,
    /// Built-in example domain (overrides the domain flags)
    #[arg(long, value_enum)]
    example: Option<Example>,
    /// Norm bound C on the standard model
    #[arg(long, default_value_t = 1.0)]
    constant: f64,
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Test monomial exponents (repeatable), e.g. 0,0,0,1
    #[arg(long)]
    monomial: Vec<String>,
    #[arg(long, default_value_t = 1_000_000)]
    mc_samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProjectFunction {
    Fm,
    Monomial,
}

#[derive(Debug, Args)]
struct ProjectArgs {
    #[command(flatten)]
    domain: DomainArgs,
    #[arg(long, value_enum, default_value = "fm")]
    function: ProjectFunction,
    /// Cutoff index of f_m
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Monomial exponents for --function monomial
    #[arg(long)]
    nu: Option<String>,
    /// Evaluation point
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, default_value_t = 1_000_000)]
    mc_samples: usize,
}

/// Outcome of a subcommand: the document plus whether a non-convergence flag was raised.
struct Rendered {
    text: String,
    flagged: bool,
}

impl Rendered {
    fn json<T: Serialize>(value: &T, flagged: bool) -> Result<Self, Error> {
        let text = to_json(value).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(Self { text, flagged })
    }

    fn csv(write: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>, flagged: bool) -> Result<Self, Error> {
        let mut buf = Vec::new();
        write(&mut buf).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(Self {
            text: String::from_utf8(buf).expect("ASCII output"),
            flagged,
        })
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NonConvergence { .. } | Error::NonIntegrable(_) => 1,
        _ => 2,
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_seed = std::env::var(SEED_ENV).ok();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let seed = match (cli.seed, env_seed) {
        (Some(s), _) => s,
        (None, Some(v)) => match v.trim().parse() {
            Ok(s) => s,
            Err(_) => {
                eprintln!("error: {SEED_ENV} must be an unsigned integer, got {v:?}");
                return 2;
            }
        },
        (None, None) => DEFAULT_SEED,
    };
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, seed)),
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        },
        None => dispatch(&cli.command, seed),
    };
    match result {
        Ok(r) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, r.text.as_bytes()),
                None => std::io::stdout().lock().write_all(r.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 2;
            }
            if r.flagged {
                eprintln!("warning: a series hit its term cap before converging");
                1
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: &Command, seed: u64) -> Result<Rendered, Error> {
    match cmd {
        Command::Kernel(a) => kernel(a),
        Command::Moments(a) => moments(a, seed),
        Command::Estimates(a) => estimates(a, seed),
        Command::SchurRange(a) => schur_range(a),
        Command::SchurVerify(a) => schur_verify_cmd(a, seed),
        Command::Blowup(a) => blowup(a),
        Command::Transfer(a) => transfer(a, seed),
        Command::Project(a) => project(a, seed),
    }
}

/// Comma-separated complex numbers: `0.3`, `0.5+0.1i`, `-0.2i`.
pub fn parse_point(text: &str) -> Result<Vec<Complex64>, Error> {
    text.split(',')
        .map(|t| {
            Complex64::from_str(t.trim())
                .map_err(|_| Error::InvalidArgument(format!("not a complex number: {t:?}")))
        })
        .collect()
}

fn parse_multi_index(text: &str) -> Result<MultiIndex, Error> {
    MultiIndex::from_str(text).map_err(|e| Error::InvalidArgument(format!("{text:?}: {e}")))
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn kernel(a: &KernelArgs) -> Result<Rendered, Error> {
    let w = parse_point(&a.w)?;
    let eta = parse_point(&a.eta)?;
    let model = match a.model {
        ModelKind::Disk => KernelModel::Disk,
        ModelKind::Ball => KernelModel::Ball(w.len()),
        ModelKind::Product => KernelModel::Product(a.domain.resolve()?),
        ModelKind::Hartogs => KernelModel::Hartogs(a.domain.resolve()?),
    };
    let value = model.evaluate(&w, &eta)?;
    let truncated = match a.truncate {
        Some(deg) => Some(json!({
            "degree": deg,
            "value": pair(kernel_truncated(&model, deg, &w, &eta)?),
        })),
        None => None,
    };
    Rendered::json(
        &json!({
            "model": format!("{:?}", a.model).to_lowercase(),
            "w": w.iter().copied().map(pair).collect::<Vec<_>>(),
            "eta": eta.iter().copied().map(pair).collect::<Vec<_>>(),
            "value": pair(value),
            "truncated": truncated,
        }),
        false,
    )
}

fn moments(a: &MomentsArgs, seed: u64) -> Result<Rendered, Error> {
    let nu = parse_multi_index(&a.nu)?;
    let formula = sphere_moment(a.k, &nu)?;
    let mc = sphere_moment_mc(a.k, &nu, a.mc_samples, seed)?;
    Rendered::json(
        &json!({
            "k": a.k,
            "nu": nu.components(),
            "formula": formula,
            "mc": mc,
            "z_score": mc.z_score(formula),
        }),
        false,
    )
}

fn estimates(a: &EstimatesArgs, seed: u64) -> Result<Rendered, Error> {
    let integral = match a.integral {
        IntegralKind::J => KernelIntegral::J { k: a.k, alpha: a.alpha },
        IntegralKind::I => KernelIntegral::I {
            alpha: a.alpha,
            beta: a.beta,
        },
    };
    let envelope = match a.envelope {
        EnvelopeKind::Boundary => Envelope::Boundary,
        EnvelopeKind::Refined => Envelope::Refined,
    };
    let cfg = SeriesConfig::default();
    let grid = linear_grid(a.r_min, a.r_max, a.points);
    let report = asymptotic_ratio_check(integral, envelope, &grid, &cfg)?;
    let flagged = !report.converged;
    match a.format {
        Format::Csv => Rendered::csv(|buf| report.write_csv(buf), flagged),
        Format::Json => {
            let ncfg = NumericConfig::default().with_seed(seed).with_samples(a.mc_samples);
            let checks = a
                .check_radii
                .iter()
                .map(|&r| {
                    let series = integral.series(r, &cfg)?;
                    let mc = match integral {
                        KernelIntegral::J { k, alpha } => {
                            let mut w = vec![Complex64::new(0.0, 0.0); k];
                            w[0] = Complex64::new(r, 0.0);
                            j_alpha_mc(k, alpha, &w, &ncfg)?
                        }
                        KernelIntegral::I { alpha, beta } => {
                            i_alpha_beta_mc(alpha, beta, Complex64::new(r, 0.0), &ncfg)?
                        }
                    };
                    Ok(json!({
                        "r": r,
                        "series": series.value,
                        "mc": mc,
                        "z_score": mc.z_score(series.value),
                    }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Rendered::json(&json!({ "report": report, "checks": checks }), flagged)
        }
    }
}

fn schur_range(a: &SchurRangeArgs) -> Result<Rendered, Error> {
    let (low, high) = admissible_p_range(a.n)?;
    match a.k {
        None => Rendered::json(&json!({ "low": low, "high": high }), false),
        Some(k) => {
            let (slow, shigh) = search_p_range(a.n, k)?;
            Rendered::json(
                &json!({
                    "low": low,
                    "high": high,
                    "k": k,
                    "search_low": slow,
                    "search_high": shigh,
                }),
                false,
            )
        }
    }
}

fn schur_verify_cmd(a: &SchurVerifyArgs, seed: u64) -> Result<Rendered, Error> {
    let spec = a.domain.resolve()?;
    let (n, k) = (spec.n(), spec.k());
    let default = feasible_params(n, k, a.p)?;
    let witness = match (a.s, &a.t, default) {
        (Some(s), Some(t), _) => SchurWitness::new(k, s, t),
        (s, t, Some(d)) => SchurWitness {
            s: s.unwrap_or(d.s),
            t: match t {
                Some(t) => SchurWitness::new(k, 0.0, t).t,
                None => d.t,
            },
        },
        (_, _, None) => {
            return Err(Error::InvalidArgument(format!(
                "no feasible weight at p = {}; pass --s and --t explicitly",
                a.p
            )))
        }
    };
    let cfg = VerifyConfig {
        samples: a.samples,
        seed,
        min_modulus: a.min_modulus,
        max_modulus: a.max_modulus,
        series: SeriesConfig::default(),
    };
    let report = schur_verify(&spec, a.p, &witness, &cfg)?;
    Rendered::json(&report, false)
}

fn blowup(a: &BlowupArgs) -> Result<Rendered, Error> {
    let p = a.p.unwrap_or(2.0 * a.n as f64 / (a.n as f64 + 1.0));
    let ms: Vec<usize> = (1..=a.m_max).collect();
    let table = blowup_demo(a.n, a.k, p, &ms)?;
    match a.format {
        Format::Csv => Rendered::csv(|buf| table.write_csv(buf), false),
        Format::Json => Rendered::json(&table, false),
    }
}

fn transfer(a: &TransferArgs, seed: u64) -> Result<Rendered, Error> {
    let spec = match a.example {
        Some(Example::Affine) => HartogsDomainSpec::affine_example(),
        Some(Example::Rational) => HartogsDomainSpec::rational_example(),
        None => a.domain.resolve()?,
    };
    let cfg = NumericConfig::default().with_seed(seed).with_samples(a.mc_samples);
    let bounds = jacobian_bounds(&spec, &cfg)?;
    let norm_bound = transfer_norm_bound(a.constant, &bounds, a.p)?;
    let monomials = if a.monomial.is_empty() {
        vec![MultiIndex::zeros(spec.n())]
    } else {
        a.monomial
            .iter()
            .map(|m| parse_multi_index(m))
            .collect::<Result<_, _>>()?
    };
    let checks = monomials
        .iter()
        .map(|nu| {
            if nu.dim() != spec.n() {
                return Err(Error::DimensionMismatch {
                    expected: spec.n(),
                    actual: nu.dim(),
                });
            }
            let rep = pullback_isometry_check(&spec, |u| nu.monomial(u), &cfg)?;
            Ok(json!({ "monomial": nu.components(), "check": rep }))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Rendered::json(
        &json!({
            "bounds": bounds,
            "constant": a.constant,
            "p": a.p,
            "norm_bound": norm_bound,
            "isometry": checks,
        }),
        false,
    )
}

fn project(a: &ProjectArgs, seed: u64) -> Result<Rendered, Error> {
    let spec = a.domain.resolve()?;
    let z = parse_point(&a.z)?;
    let n = spec.n();
    let (closed, mc) = match a.function {
        ProjectFunction::Fm => {
            let closed = projected_fm(n, a.m, &z)?;
            let m = a.m;
            let mc = bergman_projection_mc(
                &spec,
                |zeta| fm_eval(n, m, zeta).unwrap_or(Complex64::new(0.0, 0.0)),
                &z,
                a.mc_samples,
                seed,
            )?;
            (closed, mc)
        }
        ProjectFunction::Monomial => {
            let nu = parse_multi_index(
                a.nu
                    .as_deref()
                    .ok_or_else(|| Error::InvalidArgument("--function monomial needs --nu".into()))?,
            )?;
            if nu.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: nu.dim(),
                });
            }
            let mc = bergman_projection_mc(&spec, |zeta| nu.monomial(zeta), &z, a.mc_samples, seed)?;
            (nu.monomial(&z), mc)
        }
    };
    let z_re = mc.re.z_score(closed.re);
    let z_im = mc.im.z_score(closed.im);
    Rendered::json(
        &json!({
            "z": z.iter().copied().map(pair).collect::<Vec<_>>(),
            "closed_form": pair(closed),
            "mc": mc,
            "z_score": [z_re, z_im],
        }),
        false,
    )
}
