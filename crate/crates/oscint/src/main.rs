use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use oscint::{
    cmd_invert, cmd_transform, cmd_verify, parse_grid, resolve_function, resolve_kernel,
    ErrorDoc, InvertConfig, OutputFormat, TransformConfig, VerifyConfig, EXIT_CONFIG,
};

#[derive(Parser)]
#[command(
    name = "oscint",
    about = "Transforms, sweeps, convolution, kernel inversion and verification \
             for conditionally convergent integrals",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FunctionArgs {
    /// Name of a registered corpus entry (e.g. ex1b, ex1d, gauss).
    #[arg(long)]
    corpus: Option<String>,
    /// Path to a JSON function descriptor.
    #[arg(long)]
    function: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the transform over a frequency grid and write a table.
    Transform {
        #[command(flatten)]
        function: FunctionArgs,
        /// Grid as start:stop:count or a comma-separated list.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// Absolute tolerance per point.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Compute the inverse transform (1/2π convention) instead.
        #[arg(long)]
        inverse: bool,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Worker threads for independent grid points
        /// (default: OSCINT_JOBS or 1).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Recover pointwise values through a summability kernel.
    Invert {
        #[command(flatten)]
        function: FunctionArgs,
        /// Kernel name (gauss, abel, cesaro) or JSON file.
        #[arg(long, default_value = "gauss")]
        kernel: String,
        /// Recovery points, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        /// Non-tangential aperture constant C.
        #[arg(long, default_value_t = 1.0)]
        aperture: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suites and summarize per-suite pass counts.
    Verify {
        /// Run a single suite by name; all suites when omitted.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Instance count for the randomized suites.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run() -> Result<i32, oscint::CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Transform { function, grid, tol, inverse, out, format, jobs } => {
            let format = match format.as_str() {
                "csv" => OutputFormat::Csv,
                "json" => OutputFormat::Json,
                other => {
                    return Err(oscint::CliError {
                        message: format!("unknown format {other:?} (csv or json)"),
                        exit: EXIT_CONFIG,
                    })
                }
            };
            let jobs = jobs
                .or_else(|| {
                    std::env::var("OSCINT_JOBS").ok().and_then(|v| v.parse().ok())
                })
                .unwrap_or(1);
            let config = TransformConfig {
                function: resolve_function(function.corpus.as_deref(), function.function.as_deref())?,
                grid: parse_grid(&grid)?,
                tol,
                inverse,
                out,
                format,
                jobs,
            };
            cmd_transform(&config)
        }
        Command::Invert { function, kernel, x0, aperture, tol, out } => {
            let config = InvertConfig {
                function: resolve_function(function.corpus.as_deref(), function.function.as_deref())?,
                kernel: resolve_kernel(&kernel)?,
                x0: x0
                    .split(',')
                    .map(|t| t.trim().parse::<f64>())
                    .collect::<Result<Vec<f64>, _>>()
                    .map_err(|_| oscint::CliError {
                        message: "bad x0 list".into(),
                        exit: EXIT_CONFIG,
                    })?,
                aperture,
                tol,
                out,
            };
            cmd_invert(&config)
        }
        Command::Verify { suite, seed, n, out } => {
            cmd_verify(&VerifyConfig { suite, seed, n, out })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            let doc = ErrorDoc { error: &e.message, exit: e.exit };
            eprintln!("{}", serde_json::to_string(&doc).expect("serializable"));
            ExitCode::from(e.exit as u8)
        }
    }
}
