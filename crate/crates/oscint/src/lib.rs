//! IO companion to `oscint-core`: JSON descriptors for functions and
//! kernels, CSV/JSON table output, and the command implementations behind
//! the `oscint` binary.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use oscint_core::corpus;
use oscint_core::fourier::{self, Direction, FourierError};
use oscint_core::invert::{self, InvertSource, Kernel, KernelValidation, NonTangentialPath};
use oscint_core::quad::QuadStatus;
use oscint_core::realfn::{CoeffSeq, ExtInterval, FunctionSpec, LinearPiece};
use oscint_core::verify;
use oscint_core::Complex64;

/// Exit codes: 0 success, 1 usage/config error, 2 numerical
/// inconclusiveness.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub exit: i32,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

fn config_err(message: impl Into<String>) -> CliError {
    CliError { message: message.into(), exit: EXIT_CONFIG }
}

/// Machine-readable error document written to stderr on failures.
#[derive(Serialize)]
pub struct ErrorDoc<'a> {
    pub error: &'a str,
    pub exit: i32,
}

// ---------------------------------------------------------------------------
// JSON schema for function descriptors
// ---------------------------------------------------------------------------

/// On-disk function descriptor; `kind` selects the variant, the optional
/// `support` clips the domain ([null, 3.0] means (−∞, 3]) and `scale`
/// multiplies the values.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionDoc {
    PowerSigned { exponent: f64 },
    Chirp { alpha: f64, nu: f64, #[serde(default)] one_sided: bool },
    SinOverAbs { a: f64 },
    RationalOdd,
    GaussEnvelope { alpha: f64, coeffs: Vec<f64> },
    ExpAbs { #[serde(default = "one")] rate: f64 },
    TriangleHat,
    Lorentz { amp: f64 },
    Sinusoid { freq: f64, #[serde(default)] cosine: bool },
    SincSquared { a: f64 },
    Lacunary {
        a: Vec<f64>,
        b: Vec<f64>,
        #[serde(default)]
        tail_a: f64,
        #[serde(default)]
        tail_ab: f64,
    },
    Piecewise { pieces: Vec<PieceDoc> },
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PieceDoc {
    pub lo: f64,
    pub hi: f64,
    #[serde(default)]
    pub c0: f64,
    #[serde(default)]
    pub c1: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionFile {
    #[serde(flatten)]
    pub kind: FunctionDoc,
    #[serde(default)]
    pub support: Option<[Option<f64>; 2]>,
    #[serde(default)]
    pub scale: Option<f64>,
}

impl FunctionFile {
    pub fn build(&self) -> Result<FunctionSpec, CliError> {
        let mut spec = match &self.kind {
            FunctionDoc::PowerSigned { exponent } => FunctionSpec::power_signed(*exponent),
            FunctionDoc::Chirp { alpha, nu, one_sided } => {
                if *one_sided {
                    FunctionSpec::chirp_one_sided(*alpha, *nu)
                } else {
                    FunctionSpec::chirp(*alpha, *nu)
                }
            }
            FunctionDoc::SinOverAbs { a } => FunctionSpec::sin_over_abs(*a),
            FunctionDoc::RationalOdd => FunctionSpec::rational_odd(),
            FunctionDoc::GaussEnvelope { alpha, coeffs } => {
                FunctionSpec::poly_gauss(*alpha, coeffs.clone())
            }
            FunctionDoc::ExpAbs { rate } => FunctionSpec::exp_abs_rate(*rate),
            FunctionDoc::TriangleHat => FunctionSpec::triangle_hat(),
            FunctionDoc::Lorentz { amp } => FunctionSpec::lorentz(*amp),
            FunctionDoc::Sinusoid { freq, cosine } => {
                if *cosine {
                    FunctionSpec::cosine(*freq)
                } else {
                    FunctionSpec::sinusoid(*freq)
                }
            }
            FunctionDoc::SincSquared { a } => FunctionSpec::sinc_squared(*a),
            FunctionDoc::Lacunary { a, b, tail_a, tail_ab } => {
                let seq = CoeffSeq::new(a.clone(), b.clone(), *tail_a, *tail_ab)
                    .map_err(|e| config_err(format!("bad lacunary coefficients: {e}")))?;
                FunctionSpec::lacunary(seq)
            }
            FunctionDoc::Piecewise { pieces } => {
                let ps: Vec<LinearPiece> = pieces
                    .iter()
                    .map(|p| LinearPiece { lo: p.lo, hi: p.hi, c0: p.c0, c1: p.c1 })
                    .collect();
                FunctionSpec::piecewise(ps).map_err(|e| config_err(format!("bad pieces: {e}")))?
            }
        };
        if let Some([lo, hi]) = self.support {
            let lo = lo.unwrap_or(f64::NEG_INFINITY);
            let hi = hi.unwrap_or(f64::INFINITY);
            let iv = ExtInterval::new(lo, hi)
                .map_err(|e| config_err(format!("bad support: {e}")))?;
            spec = spec.with_support(iv);
        }
        if let Some(c) = self.scale {
            spec = spec.scaled_real(c);
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct KernelFile {
    pub name: String,
    pub theta: FunctionFile,
    pub theta_hat: FunctionFile,
    /// Optional closed-form derivative of Θ̂; a central difference of Θ̂
    /// stands in when absent.
    #[serde(default)]
    pub theta_hat_deriv: Option<FunctionFile>,
}

impl KernelFile {
    pub fn build(&self) -> Result<Kernel, CliError> {
        let theta = self.theta.build()?;
        let theta_hat = self.theta_hat.build()?;
        let theta_hat_deriv = match &self.theta_hat_deriv {
            Some(doc) => doc.build()?,
            None => {
                let hat = theta_hat.clone();
                let eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> = Arc::new(move |s: f64| {
                    let h = 1e-5;
                    (hat.eval_or_zero(s + h) - hat.eval_or_zero(s - h)) / (2.0 * h)
                });
                FunctionSpec::user_callable(
                    eval,
                    Vec::new(),
                    theta_hat.support(),
                    oscint_core::realfn::Parity::None,
                )
                .map_err(|e| config_err(format!("derivative stand-in failed: {e}")))?
            }
        };
        Ok(Kernel {
            name: Box::leak(self.name.clone().into_boxed_str()),
            theta,
            theta_hat,
            theta_hat_deriv,
        })
    }
}

// ---------------------------------------------------------------------------
// function / kernel resolution
// ---------------------------------------------------------------------------

pub struct ResolvedFunction {
    pub spec: FunctionSpec,
    pub corpus_name: Option<String>,
}

pub fn resolve_function(
    corpus_name: Option<&str>,
    file: Option<&Path>,
) -> Result<ResolvedFunction, CliError> {
    match (corpus_name, file) {
        (Some(name), None) => {
            let entry = corpus::corpus_lookup(name)
                .map_err(|e| config_err(format!("{e} (known: {:?})", corpus::corpus_names())))?;
            Ok(ResolvedFunction { spec: entry.f, corpus_name: Some(name.to_string()) })
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
            let doc: FunctionFile = serde_json::from_str(&text)
                .map_err(|e| config_err(format!("bad function document: {e}")))?;
            Ok(ResolvedFunction { spec: doc.build()?, corpus_name: None })
        }
        _ => Err(config_err("exactly one of --corpus or --function is required")),
    }
}

pub fn resolve_kernel(name_or_path: &str) -> Result<Kernel, CliError> {
    if let Some(k) = Kernel::by_name(name_or_path) {
        return Ok(k);
    }
    let path = Path::new(name_or_path);
    if path.exists() {
        let text = fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
        let doc: KernelFile = serde_json::from_str(&text)
            .map_err(|e| config_err(format!("bad kernel document: {e}")))?;
        return doc.build();
    }
    Err(config_err(format!(
        "unknown kernel {name_or_path:?} (builtin: gauss, abel, cesaro, or a JSON file)"
    )))
}

/// Grid specification: `start:stop:count` or a comma-separated list.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let grid: Vec<f64> = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(config_err("grid must be start:stop:count or a comma list"));
        }
        let start: f64 = parts[0].parse().map_err(|_| config_err("bad grid start"))?;
        let stop: f64 = parts[1].parse().map_err(|_| config_err("bad grid stop"))?;
        let count: usize = parts[2].parse().map_err(|_| config_err("bad grid count"))?;
        if count < 1 {
            return Err(config_err("grid count must be at least 1"));
        }
        if count == 1 {
            vec![start]
        } else {
            (0..count)
                .map(|i| start + (stop - start) * (i as f64) / ((count - 1) as f64))
                .collect()
        }
    } else {
        let vals: Result<Vec<f64>, _> = text.split(',').map(|t| t.trim().parse::<f64>()).collect();
        vals.map_err(|_| config_err("bad grid list"))?
    };
    if grid.is_empty() {
        return Err(config_err("grid must contain at least one point"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(config_err("grid must be strictly increasing"));
    }
    Ok(grid)
}

// ---------------------------------------------------------------------------
// transform command
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

pub struct TransformConfig {
    pub function: ResolvedFunction,
    pub grid: Vec<f64>,
    pub tol: f64,
    pub inverse: bool,
    pub out: Option<std::path::PathBuf>,
    pub format: OutputFormat,
    pub jobs: usize,
}

#[derive(Serialize)]
struct TransformRow {
    s: f64,
    re: f64,
    im: f64,
    status: &'static str,
    err_est: f64,
    evals: u64,
}

fn transform_one(f: &FunctionSpec, s: f64, direction: Direction, tol: f64) -> TransformRow {
    let req = fourier::TransformRequest {
        f: f.clone(),
        s,
        direction,
        strategy: fourier::StrategyChoice::Auto,
        tol,
    };
    match fourier::transform(&req) {
        Ok(r) => TransformRow {
            s,
            re: r.value_unchecked().re,
            im: r.value_unchecked().im,
            status: r.status.as_str(),
            err_est: r.abs_error_estimate,
            evals: r.evaluations,
        },
        Err(FourierError::ExistenceRefuted(_)) => TransformRow {
            s,
            re: 0.0,
            im: 0.0,
            status: QuadStatus::Diverged.as_str(),
            err_est: f64::INFINITY,
            evals: 0,
        },
        Err(_) => TransformRow {
            s,
            re: 0.0,
            im: 0.0,
            status: QuadStatus::Inconclusive.as_str(),
            err_est: f64::INFINITY,
            evals: 0,
        },
    }
}

pub fn cmd_transform(config: &TransformConfig) -> Result<i32, CliError> {
    if !(config.tol > 0.0) {
        return Err(config_err("tolerance must be positive"));
    }
    let direction = if config.inverse { Direction::Inverse } else { Direction::Forward };
    let f = &config.function.spec;

    let jobs = config.jobs.max(1);
    let rows: Vec<TransformRow> = if jobs == 1 || config.grid.len() == 1 {
        config.grid.iter().map(|&s| transform_one(f, s, direction, config.tol)).collect()
    } else {
        // grid points are independent; dispatch in chunks and reassemble in
        // grid order
        let mut rows: Vec<Option<TransformRow>> = Vec::new();
        rows.resize_with(config.grid.len(), || None);
        let chunk = config.grid.len().div_ceil(jobs);
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for (ci, points) in config.grid.chunks(chunk).enumerate() {
                let f = f.clone();
                let tol = config.tol;
                handles.push((
                    ci,
                    scope.spawn(move || {
                        points
                            .iter()
                            .map(|&s| transform_one(&f, s, direction, tol))
                            .collect::<Vec<_>>()
                    }),
                ));
            }
            for (ci, h) in handles {
                for (j, row) in h.join().expect("worker panicked").into_iter().enumerate() {
                    rows[ci * chunk + j] = Some(row);
                }
            }
        });
        rows.into_iter().map(|r| r.expect("all points computed")).collect()
    };

    let body = match config.format {
        OutputFormat::Csv => {
            let mut text = String::from("s,re,im,status,err_est,evals\n");
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.s, r.re, r.im, r.status, r.err_est, r.evals
                ));
            }
            text
        }
        OutputFormat::Json => serde_json::to_string_pretty(&rows).expect("serializable") + "\n",
    };
    match &config.out {
        Some(path) => {
            let mut file = fs::File::create(path)
                .map_err(|e| config_err(format!("cannot write {}: {e}", path.display())))?;
            file.write_all(body.as_bytes())
                .map_err(|e| config_err(format!("write failed: {e}")))?;
        }
        None => print!("{body}"),
    }

    let inconclusive = rows.iter().any(|r| r.status == QuadStatus::Inconclusive.as_str());
    Ok(if inconclusive { EXIT_INCONCLUSIVE } else { EXIT_OK })
}

// ---------------------------------------------------------------------------
// invert command
// ---------------------------------------------------------------------------

pub struct InvertConfig {
    pub function: ResolvedFunction,
    pub kernel: Kernel,
    pub x0: Vec<f64>,
    pub aperture: f64,
    pub tol: f64,
    pub out: Option<std::path::PathBuf>,
}

#[derive(Serialize)]
struct InvertRow {
    x0: f64,
    re: f64,
    im: f64,
    status: &'static str,
    aperture: f64,
    trace: Vec<(f64, f64, f64)>,
}

#[derive(Serialize)]
struct InvertReport {
    kernel: String,
    rows: Vec<InvertRow>,
}

pub fn cmd_invert(config: &InvertConfig) -> Result<i32, CliError> {
    let validation: KernelValidation = invert::validate_kernel(&config.kernel, 1e-6);
    if !validation.all_pass() {
        let names = KernelValidation::clause_names();
        let failing: Vec<&str> = validation
            .as_array()
            .iter()
            .zip(names.iter())
            .filter(|(c, _)| **c == invert::ClauseOutcome::Fail)
            .map(|(_, n)| *n)
            .collect();
        return Err(config_err(format!(
            "kernel {} fails the summability definition (clauses: {})",
            config.kernel.name,
            failing.join(", ")
        )));
    }
    let mut rows = Vec::new();
    for &x0 in &config.x0 {
        let path = NonTangentialPath::saturated(x0, config.aperture);
        let out = invert::invert_at(
            &InvertSource::TimeDomain(config.function.spec.clone()),
            &config.kernel,
            &path,
            config.tol,
        )
        .map_err(|e| config_err(format!("inversion failed at x0={x0}: {e}")))?;
        rows.push(InvertRow {
            x0,
            re: out.limit.re,
            im: out.limit.im,
            status: out.status.as_str(),
            aperture: config.aperture,
            trace: out.trace.iter().map(|&(y, v)| (y, v.re, v.im)).collect(),
        });
    }
    let inconclusive = rows.iter().any(|r| r.status == QuadStatus::Inconclusive.as_str());
    let report = InvertReport { kernel: config.kernel.name.to_string(), rows };
    let body = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    match &config.out {
        Some(path) => fs::write(path, body)
            .map_err(|e| config_err(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{body}"),
    }
    Ok(if inconclusive { EXIT_INCONCLUSIVE } else { EXIT_OK })
}

// ---------------------------------------------------------------------------
// verify command
// ---------------------------------------------------------------------------

pub struct VerifyConfig {
    pub suite: Option<String>,
    pub seed: u64,
    pub n: Option<usize>,
    pub out: Option<std::path::PathBuf>,
}

#[derive(Serialize)]
struct SuiteSummary {
    name: String,
    passed: usize,
    failed: usize,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct VerifySummary {
    seed: u64,
    ok: bool,
    suites: Vec<SuiteSummary>,
}

fn default_count(name: &str, requested: Option<usize>) -> usize {
    requested.unwrap_or(match name {
        "lemma2" => 500,
        "conv-norm" => 200,
        "parseval" => 100,
        _ => 0,
    })
}

pub fn cmd_verify(config: &VerifyConfig) -> Result<i32, CliError> {
    let names: Vec<&str> = match &config.suite {
        Some(name) => {
            if !verify::SUITE_NAMES.contains(&name.as_str()) {
                return Err(config_err(format!(
                    "unknown suite {name:?} (known: {:?})",
                    verify::SUITE_NAMES
                )));
            }
            vec![name.as_str()]
        }
        None => verify::SUITE_NAMES.to_vec(),
    };
    let mut suites = Vec::new();
    let mut ok = true;
    for name in names {
        let n = default_count(name, config.n);
        let rep = verify::run_suite(name, config.seed, n).expect("validated above");
        println!("suite {name}: {} passed, {} failed", rep.passed, rep.failed);
        ok &= rep.failed == 0;
        suites.push(SuiteSummary {
            name: rep.name.to_string(),
            passed: rep.passed,
            failed: rep.failed,
            failures: rep.failures,
        });
    }
    let summary = VerifySummary { seed: config.seed, ok, suites };
    let body = serde_json::to_string_pretty(&summary).expect("serializable") + "\n";
    match &config.out {
        Some(path) => fs::write(path, body)
            .map_err(|e| config_err(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{body}"),
    }
    Ok(if ok { EXIT_OK } else { EXIT_CONFIG })
}
