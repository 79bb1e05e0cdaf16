//! Command-line front end: compute POPUC zeros, run the theorem suites,
//! generate common-zero boundary sequences, and emit plot-ready samples of
//! the Carathéodory and Schur functions.
//!
//! Exit codes: 0 = pass, 1 = property violation, 2 = usage or input error.
//! Complex numbers on the command line and in files are `[re, im]` pairs.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use popuc::circle::CirclePoint;
use popuc::harness::{self, TheoremId, TrialConfig};
use popuc::linalg::CVector;
use popuc::rankone::{
    caratheodory, schur_function, spectral_measure, spiral_grid, SchurConvention,
};
use popuc::szego::{popuc_first, BoundaryCoefficient, VerblunskyWord};
use popuc::{cmv, TAU_CIRCLE};

#[derive(Parser)]
#[command(
    name = "popuc",
    version,
    about = "Zeros of paraorthogonal polynomials on the unit circle, via CMV matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Cyclically ordered zeros of the degree-n paraorthogonal polynomial
    Zeros {
        /// JSON file with the coefficient word as an array of [re, im] pairs
        #[arg(long, conflicts_with = "alpha_const")]
        alphas: Option<PathBuf>,
        /// Constant coefficient "[re, im]" repeated as needed (requires --n)
        #[arg(long)]
        alpha_const: Option<String>,
        /// Polynomial degree (defaults to word length + 1 with --alphas)
        #[arg(long)]
        n: Option<usize>,
        /// Unimodular boundary coefficient "[re, im]"
        #[arg(long)]
        beta: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one checker suite over deterministic randomized trials
    Verify {
        /// Checker id: 1.1, 1.2, 1.3, 1.4, 3.4, or 2.x
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// RNG seed (default: POPUC_SEED env var, then 0)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 0.95)]
        alpha_radius_max: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Boundary coefficients pinning a common zero at every degree
    CommonZero {
        /// The common zero "[re, im]" (must be unimodular)
        #[arg(long)]
        lambda: String,
        #[arg(long, conflicts_with = "alpha_const")]
        alphas: Option<PathBuf>,
        #[arg(long)]
        alpha_const: Option<String>,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the Carathéodory and Schur functions on an interior spiral grid
    Schur {
        #[arg(long)]
        alphas: PathBuf,
        #[arg(long)]
        beta: String,
        /// Number of grid points (spiral of radius up to 0.9)
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// An input problem: the message prints as a one-line diagnostic, exit 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn parse_complex(arg: &str) -> Result<Complex64, InputError> {
    let pair: [f64; 2] = serde_json::from_str(arg).map_err(|_| {
        InputError(format!(
            "expected a complex number as \"[re, im]\", got {arg:?}"
        ))
    })?;
    Ok(Complex64::new(pair[0], pair[1]))
}

fn parse_beta(arg: &str) -> Result<BoundaryCoefficient, InputError> {
    let value = parse_complex(arg)?;
    BoundaryCoefficient::from_complex(value)
        .map_err(|e| InputError(format!("boundary coefficient {arg}: {e}")))
}

fn read_word(path: &Path) -> Result<VerblunskyWord, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    let word: VerblunskyWord = serde_json::from_str(&text)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok(word)
}

fn resolve_word(
    alphas: &Option<PathBuf>,
    alpha_const: &Option<String>,
    needed_len: Option<usize>,
) -> Result<VerblunskyWord, InputError> {
    match (alphas, alpha_const) {
        (Some(path), None) => read_word(path),
        (None, Some(c)) => {
            let len = needed_len.ok_or_else(|| {
                InputError("--alpha-const requires an explicit degree (--n or --n-max)".into())
            })?;
            let alpha = parse_complex(c)?;
            Ok(VerblunskyWord::constant(alpha, len)?)
        }
        (None, None) => Err(InputError(
            "one of --alphas or --alpha-const is required".into(),
        )),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), InputError> {
    match out {
        None => {
            std::io::stdout()
                .write_all(content.as_bytes())
                .map_err(|e| InputError(e.to_string()))?;
        }
        Some(path) => {
            std::fs::write(path, content)
                .map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))?;
        }
    }
    Ok(())
}

fn cmd_zeros(
    alphas: Option<PathBuf>,
    alpha_const: Option<String>,
    n: Option<usize>,
    beta: String,
    format: Format,
    out: Option<PathBuf>,
) -> Result<i32, InputError> {
    let beta = parse_beta(&beta)?;
    let word = resolve_word(&alphas, &alpha_const, n.map(|d| d.saturating_sub(1)))?;
    let n = match n {
        Some(0) => return Err(InputError("degree must be at least 1".into())),
        Some(d) => d,
        None => word.len() + 1,
    };
    if n - 1 > word.len() {
        return Err(InputError(format!(
            "degree {n} needs {} coefficients, file has {}",
            n - 1,
            word.len()
        )));
    }
    let (zeros, _) = harness::popuc_zeros(&word, &beta, n)?;
    let content = match format {
        Format::Json => {
            let pairs: Vec<[f64; 2]> = zeros
                .iter()
                .map(|p| [p.value().re, p.value().im])
                .collect();
            format!("{}\n", serde_json::to_string(&pairs)?)
        }
        Format::Csv => {
            let mut s = String::from("index,re,im,arg\n");
            for (k, p) in zeros.iter().enumerate() {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    k,
                    p.value().re,
                    p.value().im,
                    p.arg()
                ));
            }
            s
        }
    };
    emit(&out, &content)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    theorem: String,
    trials: usize,
    seed: Option<u64>,
    n_max: usize,
    n_min: usize,
    alpha_radius_max: f64,
    out: Option<PathBuf>,
) -> Result<i32, InputError> {
    let id = TheoremId::parse(&theorem).ok_or_else(|| {
        InputError(format!(
            "unknown checker {theorem:?}; expected 1.1, 1.2, 1.3, 1.4, 3.4, or 2.x"
        ))
    })?;
    let seed = match seed {
        Some(s) => s,
        None => match std::env::var("POPUC_SEED") {
            Ok(text) => text
                .parse::<u64>()
                .map_err(|_| InputError(format!("POPUC_SEED={text:?} is not a u64")))?,
            Err(_) => 0,
        },
    };
    let cfg = TrialConfig {
        seed,
        trials,
        n_min,
        n_max,
        alpha_radius_max,
    };
    let report = harness::verify_theorem(id, &cfg)?;
    eprintln!("{}", report.summary());
    emit(&out, &format!("{}\n", serde_json::to_string(&report)?))?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_common_zero(
    lambda: String,
    alphas: Option<PathBuf>,
    alpha_const: Option<String>,
    n_max: usize,
    out: Option<PathBuf>,
) -> Result<i32, InputError> {
    let lambda_raw = parse_complex(&lambda)?;
    if (lambda_raw.norm() - 1.0).abs() > TAU_CIRCLE {
        return Err(InputError(format!(
            "lambda has modulus {}, not on the unit circle",
            lambda_raw.norm()
        )));
    }
    let lambda = CirclePoint::new(lambda_raw).map_err(|e| InputError(e.to_string()))?;
    let word = resolve_word(&alphas, &alpha_const, Some(n_max.saturating_sub(1)))?;
    if word.len() + 1 < n_max {
        return Err(InputError(format!(
            "need {} coefficients for degrees up to {n_max}, file has {}",
            n_max - 1,
            word.len()
        )));
    }
    let betas = harness::corollary_beta_sequence(&lambda, &word, n_max)?;
    let mut residuals = Vec::with_capacity(betas.len());
    for (idx, beta) in betas.iter().enumerate() {
        let p = popuc_first(&word, beta, idx + 1)?;
        residuals.push(p.eval(lambda.value()).norm());
    }
    let max_residual = residuals.iter().copied().fold(0.0f64, f64::max);

    #[derive(serde::Serialize)]
    struct CommonZeroOutput {
        lambda: [f64; 2],
        betas: Vec<[f64; 2]>,
        residuals: Vec<f64>,
        max_residual: f64,
    }
    let payload = CommonZeroOutput {
        lambda: [lambda.value().re, lambda.value().im],
        betas: betas
            .iter()
            .map(|b| [b.complex().re, b.complex().im])
            .collect(),
        residuals,
        max_residual,
    };
    emit(&out, &format!("{}\n", serde_json::to_string(&payload)?))?;
    Ok(if max_residual > 1e-9 { 1 } else { 0 })
}

fn cmd_schur(
    alphas: PathBuf,
    beta: String,
    grid: usize,
    out: Option<PathBuf>,
) -> Result<i32, InputError> {
    let beta = parse_beta(&beta)?;
    let word = read_word(&alphas)?;
    let c = cmv::build(&word, &beta)?;
    let dim = c.size();
    let mut delta0 = CVector::zeros(dim);
    delta0[0] = Complex64::new(1.0, 0.0);
    let measure = spectral_measure(&c.unitary()?, &delta0)?;

    let mut s = String::from("re_z,im_z,re_F,im_F,re_f,im_f\n");
    for z in spiral_grid(grid.max(1), 0.9) {
        let cf = caratheodory(&measure, z)?;
        let f = schur_function(&measure, z, SchurConvention::Standard)?;
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            z.re, z.im, cf.re, cf.im, f.re, f.im
        ));
    }
    emit(&out, &s)?;
    Ok(0)
}

fn run(cli: Cli) -> Result<i32, InputError> {
    match cli.command {
        Command::Zeros {
            alphas,
            alpha_const,
            n,
            beta,
            format,
            out,
        } => cmd_zeros(alphas, alpha_const, n, beta, format, out),
        Command::Verify {
            theorem,
            trials,
            seed,
            n_max,
            n_min,
            alpha_radius_max,
            out,
        } => cmd_verify(theorem, trials, seed, n_max, n_min, alpha_radius_max, out),
        Command::CommonZero {
            lambda,
            alphas,
            alpha_const,
            n_max,
            out,
        } => cmd_common_zero(lambda, alphas, alpha_const, n_max, out),
        Command::Schur {
            alphas,
            beta,
            grid,
            out,
        } => cmd_schur(alphas, beta, grid, out),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    }
}
