//! Command-line front end for the certification library.
//!
//! Subcommands mirror the library surface: `pwpca`, `certify`, `check`,
//! `cov`, `gen`, and `bench`.  Polynomial files are UTF-8 text in the
//! crate's grammar, one polynomial per file, with the variable count
//! inferred from the largest index unless `--nvars` overrides it.
//!
//! Exit codes: 0 success (or an inconclusive spectra match from `check`),
//! 2 a not-equivalent verdict, 3 a degenerate spectrum, 4 an I/O, parse,
//! or input-contract problem, 5 an internal numerical failure.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use ortho_cert_core::certify::{certify, check_equivalence_partial_with_tol};
use ortho_cert_core::genbench::{
    bench_run, gen_instance, records_to_csv, report_to_json, summarize,
};
use ortho_cert_core::polyalg::{format_polynomial, infer_nvars, parse_polynomial, Polynomial, SquareMatrix};
use ortho_cert_core::pwcov::{cov_oracle, pw_covariance};
use ortho_cert_core::spectra::{distinctness_check, pw_pca};
use ortho_cert_core::{Error as CoreError, DEFAULT_DISTINCTNESS_TOL, DEFAULT_TOL_REL};

#[derive(Parser)]
#[command(
    name = "ortho-cert",
    version,
    about = "Certify orthogonal equivalence of real polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Principal variances and axes of a polynomial
    Pwpca {
        /// Input polynomial file
        #[arg(long)]
        input: PathBuf,
        /// Number of variables (default: inferred from the input)
        #[arg(long)]
        nvars: Option<usize>,
        /// Emit JSON instead of human-readable text
        #[arg(long)]
        json: bool,
    },
    /// Compute a certificate R with f(Rx) = g(x)
    Certify {
        /// File holding f
        #[arg(long)]
        f: PathBuf,
        /// File holding g
        #[arg(long)]
        g: PathBuf,
        /// Number of variables (default: inferred per file)
        #[arg(long)]
        nvars: Option<usize>,
        /// Relative tolerance for coefficient matching and the residual
        #[arg(long, default_value_t = DEFAULT_TOL_REL)]
        tol: f64,
        /// Emit JSON instead of human-readable text
        #[arg(long)]
        json: bool,
    },
    /// Compare covariance spectra only (fast necessary condition)
    Check {
        /// File holding f
        #[arg(long)]
        f: PathBuf,
        /// File holding g
        #[arg(long)]
        g: PathBuf,
        /// Number of variables (default: inferred per file)
        #[arg(long)]
        nvars: Option<usize>,
        /// Relative tolerance for spectra comparison
        #[arg(long, default_value_t = DEFAULT_TOL_REL)]
        tol: f64,
        /// Emit JSON instead of human-readable text
        #[arg(long)]
        json: bool,
    },
    /// Covariance matrix of a homogeneous polynomial
    Cov {
        /// Input polynomial file
        #[arg(long)]
        input: PathBuf,
        /// Number of variables (default: inferred from the input)
        #[arg(long)]
        nvars: Option<usize>,
        /// Integrate the defining spherical moments instead of the closed form
        #[arg(long)]
        oracle: bool,
        /// Emit JSON instead of human-readable text
        #[arg(long)]
        json: bool,
    },
    /// Generate a seeded equivalent pair into a directory
    Gen {
        /// Number of variables
        #[arg(long)]
        n: usize,
        /// Degree of the dense homogeneous draw
        #[arg(long)]
        d: u32,
        /// Master seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory (created if missing)
        #[arg(long)]
        out: PathBuf,
    },
    /// Time the certification pipeline on seeded instances
    Bench {
        /// Variable counts: a value, a:b range, or comma list (e.g. 3:5)
        #[arg(long)]
        n: String,
        /// Degrees: a value, a:b range, or comma list (e.g. 7:10)
        #[arg(long)]
        d: String,
        /// Trials per (n, d) cell
        #[arg(long, default_value_t = 5)]
        trials: u64,
        /// Master seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the per-trial CSV to this file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit the JSON report (records plus medians) on stdout
        #[arg(long)]
        json: bool,
    },
}

enum CliError {
    Core(CoreError),
    Io { path: PathBuf, source: std::io::Error },
    BadFlag(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{}", e),
            CliError::Io { path, source } => write!(f, "{}: {}", path.display(), source),
            CliError::BadFlag(msg) => write!(f, "{}", msg),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => core_exit_code(e),
            CliError::Io { .. } | CliError::BadFlag(_) => 4,
        }
    }
}

/// Maps library errors onto the documented exit codes.
fn core_exit_code(e: &CoreError) -> u8 {
    match e {
        CoreError::SpectraMismatch { .. }
        | CoreError::NoSignflipFound { .. }
        | CoreError::ResidualTooLarge { .. }
        | CoreError::DegreeMismatch { .. } => 2,
        CoreError::DegenerateSpectrum { .. } => 3,
        CoreError::Parse { .. }
        | CoreError::VarOutOfRange { .. }
        | CoreError::EmptyInput
        | CoreError::NvarsMismatch { .. }
        | CoreError::DimensionMismatch { .. }
        | CoreError::ZeroPolynomial
        | CoreError::NonHomogeneous
        | CoreError::InvalidInput(_) => 4,
        CoreError::NotSymmetric { .. }
        | CoreError::JacobiNoConvergence { .. }
        | CoreError::RetriesExhausted { .. }
        | CoreError::Numerical(_) => 5,
    }
}

/// Short machine-readable status for verdict errors.
fn status_name(e: &CoreError) -> &'static str {
    match e {
        CoreError::SpectraMismatch { .. } => "spectra-mismatch",
        CoreError::NoSignflipFound { .. } => "no-signflip-found",
        CoreError::ResidualTooLarge { .. } => "residual-too-large",
        CoreError::DegreeMismatch { .. } => "degree-mismatch",
        CoreError::DegenerateSpectrum { .. } => "degenerate-spectrum",
        _ => "error",
    }
}

fn main() -> ExitCode {
    if let Err(msg) = init_thread_pool() {
        eprintln!("error: {}", msg);
        return ExitCode::from(4);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests print to stdout and succeed; real
            // usage errors land in the input-error exit class.
            let is_help = !e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if is_help { 0 } else { 4 });
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code())
        }
    }
}

/// Applies `ORTHO_CERT_THREADS` (0 or unset = automatic) to the global
/// thread pool before any parallel work runs.
fn init_thread_pool() -> Result<(), String> {
    match std::env::var("ORTHO_CERT_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => {
            let k: usize = raw
                .trim()
                .parse()
                .map_err(|_| format!("ORTHO_CERT_THREADS must be an integer, got {:?}", raw))?;
            if k == 0 {
                return Ok(());
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build_global()
                .map_err(|e| format!("could not size the thread pool: {}", e))
        }
    }
}

fn dispatch(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Pwpca { input, nvars, json } => cmd_pwpca(&input, nvars, json),
        Command::Certify {
            f,
            g,
            nvars,
            tol,
            json,
        } => cmd_certify(&f, &g, nvars, tol, json),
        Command::Check {
            f,
            g,
            nvars,
            tol,
            json,
        } => cmd_check(&f, &g, nvars, tol, json),
        Command::Cov {
            input,
            nvars,
            oracle,
            json,
        } => cmd_cov(&input, nvars, oracle, json),
        Command::Gen { n, d, seed, out } => cmd_gen(n, d, seed, &out),
        Command::Bench {
            n,
            d,
            trials,
            seed,
            out,
            json,
        } => cmd_bench(&n, &d, trials, seed, out.as_deref(), json),
    }
}

fn read_poly(path: &std::path::Path, nvars: Option<usize>) -> Result<Polynomial, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let n = nvars.unwrap_or_else(|| infer_nvars(&text));
    Ok(parse_polynomial(&text, n)?)
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(CliError::BadFlag(format!(
            "--tol must be a positive number, got {}",
            tol
        )))
    }
}

/// Writes to stdout, exiting quietly if the consumer closed the pipe
/// (e.g. `ortho-cert bench --json | head`).
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

fn emit_line(text: &str) {
    emit(text);
    emit("\n");
}

fn matrix_block(label: &str, m: &SquareMatrix) -> String {
    format!("{}:\n{}", label, m)
}

fn fmt_vec(values: &[f64]) -> String {
    let inner: Vec<String> = values.iter().map(|v| format!("{:.6}", v)).collect();
    format!("[{}]", inner.join(", "))
}

fn cmd_pwpca(input: &std::path::Path, nvars: Option<usize>, json: bool) -> Result<u8, CliError> {
    let p = read_poly(input, nvars)?;
    let pca = pw_pca(&p)?;
    let distinct = distinctness_check(pca.lambda(), DEFAULT_DISTINCTNESS_TOL);
    if json {
        #[derive(Serialize)]
        struct PwpcaJson<'a> {
            lambda: &'a [f64],
            #[serde(rename = "V")]
            v: Vec<Vec<f64>>,
            distinct: bool,
        }
        let doc = PwpcaJson {
            lambda: pca.lambda(),
            v: pca.axes().to_rows(),
            distinct,
        };
        emit_line(&serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        emit_line(&format!("lambda: {}", fmt_vec(pca.lambda())));
        emit_line(&format!("distinct: {}", if distinct { "yes" } else { "no" }));
        emit(&matrix_block("V (axes as columns)", pca.axes()));
    }
    Ok(0)
}

#[derive(Serialize)]
struct CertifyJson {
    status: String,
    #[serde(rename = "R")]
    r: Option<Vec<Vec<f64>>>,
    sigma: Option<Vec<i8>>,
    residual: Option<f64>,
    lambda_f: Option<Vec<f64>>,
    lambda_g: Option<Vec<f64>>,
}

fn cmd_certify(
    f_path: &std::path::Path,
    g_path: &std::path::Path,
    nvars: Option<usize>,
    tol: f64,
    json: bool,
) -> Result<u8, CliError> {
    check_tol(tol)?;
    let f = read_poly(f_path, nvars)?;
    let g = read_poly(g_path, nvars)?;
    match certify(&f, &g, tol) {
        Ok(cert) => {
            if json {
                let doc = CertifyJson {
                    status: "ok".into(),
                    r: Some(cert.r().to_rows()),
                    sigma: Some(cert.sigma().to_vec()),
                    residual: Some(cert.residual_rel()),
                    lambda_f: Some(cert.lambda_f().to_vec()),
                    lambda_g: Some(cert.lambda_g().to_vec()),
                };
                emit_line(&serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                let mut out = String::new();
                out.push_str("status: ok\n");
                out.push_str(&format!("residual: {:.3e}\n", cert.residual_rel()));
                out.push_str(&format!("sigma: {:?}\n", cert.sigma()));
                out.push_str(&format!("lambda_f: {}\n", fmt_vec(cert.lambda_f())));
                out.push_str(&format!("lambda_g: {}\n", fmt_vec(cert.lambda_g())));
                out.push_str(&matrix_block("R", cert.r()));
                emit(&out);
            }
            Ok(0)
        }
        Err(e) if matches!(core_exit_code(&e), 2 | 3) => {
            // A verdict, not a malfunction: report it on stdout in the
            // requested format and keep the diagnostic on stderr.
            if json {
                let doc = CertifyJson {
                    status: status_name(&e).into(),
                    r: None,
                    sigma: None,
                    residual: None,
                    lambda_f: pw_pca(&f).ok().map(|p| p.lambda().to_vec()),
                    lambda_g: pw_pca(&g).ok().map(|p| p.lambda().to_vec()),
                };
                emit_line(&serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                emit_line(&format!("status: {}", status_name(&e)));
            }
            eprintln!("error: {}", e);
            Ok(core_exit_code(&e))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_check(
    f_path: &std::path::Path,
    g_path: &std::path::Path,
    nvars: Option<usize>,
    tol: f64,
    json: bool,
) -> Result<u8, CliError> {
    check_tol(tol)?;
    let f = read_poly(f_path, nvars)?;
    let g = read_poly(g_path, nvars)?;

    #[derive(Serialize)]
    struct CheckJson {
        status: String,
        equal: bool,
        max_deviation: Option<f64>,
        lambda_f: Option<Vec<f64>>,
        lambda_g: Option<Vec<f64>>,
    }

    match check_equivalence_partial_with_tol(&f, &g, tol) {
        Ok(report) => {
            let status = if report.equal {
                "spectra-match"
            } else {
                "spectra-differ"
            };
            if json {
                let doc = CheckJson {
                    status: status.into(),
                    equal: report.equal,
                    max_deviation: Some(report.max_deviation),
                    lambda_f: Some(report.lambda_f.clone()),
                    lambda_g: Some(report.lambda_g.clone()),
                };
                emit_line(&serde_json::to_string_pretty(&doc).expect("serializable"));
            } else if report.equal {
                emit_line(&format!(
                    "spectra match within tolerance (necessary, not sufficient, for equivalence); \
                     max deviation {:.3e}",
                    report.max_deviation
                ));
            } else {
                emit_line(&format!(
                    "spectra differ: max deviation {:.3e}",
                    report.max_deviation
                ));
            }
            Ok(if report.equal { 0 } else { 2 })
        }
        Err(e) if matches!(core_exit_code(&e), 2 | 3) => {
            if json {
                let doc = CheckJson {
                    status: status_name(&e).into(),
                    equal: false,
                    max_deviation: None,
                    lambda_f: None,
                    lambda_g: None,
                };
                emit_line(&serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                emit_line(&format!("status: {}", status_name(&e)));
            }
            eprintln!("error: {}", e);
            Ok(core_exit_code(&e))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_cov(
    input: &std::path::Path,
    nvars: Option<usize>,
    oracle: bool,
    json: bool,
) -> Result<u8, CliError> {
    let p = read_poly(input, nvars)?;
    let cov = if oracle { cov_oracle(&p)? } else { pw_covariance(&p)? };
    if json {
        #[derive(Serialize)]
        struct CovJson {
            n: usize,
            degree: u32,
            oracle: bool,
            matrix: Vec<Vec<f64>>,
        }
        let doc = CovJson {
            n: cov.nvars(),
            degree: cov.degree(),
            oracle,
            matrix: cov.matrix().to_rows(),
        };
        emit_line(&serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        emit_line(&format!("n: {}   degree: {}", cov.nvars(), cov.degree()));
        emit(&matrix_block("covariance", cov.matrix()));
    }
    Ok(0)
}

fn cmd_gen(n: usize, d: u32, seed: u64, out: &std::path::Path) -> Result<u8, CliError> {
    let inst = gen_instance(n, d, seed)?;
    fs::create_dir_all(out).map_err(|source| CliError::Io {
        path: out.to_path_buf(),
        source,
    })?;
    let write = |name: &str, content: String| -> Result<(), CliError> {
        let path = out.join(name);
        fs::write(&path, content).map_err(|source| CliError::Io { path, source })
    };
    write("f.poly", format!("{}\n", format_polynomial(&inst.f)))?;
    write("g.poly", format!("{}\n", format_polynomial(&inst.g)))?;

    #[derive(Serialize)]
    struct InstanceJson {
        n: usize,
        d: u32,
        seed: u64,
        terms: usize,
        r0: Vec<Vec<f64>>,
    }
    let meta = InstanceJson {
        n,
        d,
        seed,
        terms: inst.f.num_terms(),
        r0: inst.r0.to_rows(),
    };
    write(
        "instance.json",
        format!(
            "{}\n",
            serde_json::to_string_pretty(&meta).expect("serializable")
        ),
    )?;
    emit_line(&format!(
        "wrote f.poly, g.poly, instance.json to {} ({} terms)",
        out.display(),
        inst.f.num_terms()
    ));
    Ok(0)
}

fn cmd_bench(
    n_spec: &str,
    d_spec: &str,
    trials: u64,
    seed: u64,
    out: Option<&std::path::Path>,
    json: bool,
) -> Result<u8, CliError> {
    let n_values: Vec<usize> = parse_values(n_spec, "--n")?;
    let d_values: Vec<u32> = parse_values(d_spec, "--d")?;
    let records = bench_run(&n_values, &d_values, trials, seed)?;
    if let Some(path) = out {
        fs::write(path, records_to_csv(&records)).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        eprintln!("wrote {} rows to {}", records.len(), path.display());
    }
    if json {
        emit_line(&report_to_json(&records));
    } else {
        let mut table = format!(
            "{:>3} {:>3} {:>6} {:>7} {:>11} {:>11} {:>11} {:>11} {:>11} {:>13}\n",
            "n", "d", "terms", "trials", "t_pwpca", "t_canonical", "t_signflip", "t_assemble",
            "t_total", "max_residual"
        );
        for s in summarize(&records) {
            table.push_str(&format!(
                "{:>3} {:>3} {:>6} {:>7} {:>11.4e} {:>11.4e} {:>11.4e} {:>11.4e} {:>11.4e} {:>13.4e}\n",
                s.n,
                s.d,
                s.terms,
                s.trials,
                s.median_t_pwpca,
                s.median_t_canonical,
                s.median_t_signflip,
                s.median_t_assemble,
                s.median_t_total,
                s.max_residual
            ));
        }
        emit(&table);
    }
    Ok(0)
}

/// Parses a value list: `4`, `3:5` (inclusive), or `2,4,6`, or mixes like
/// `2,4:6`.
fn parse_values<T: TryFrom<u64>>(spec: &str, flag: &str) -> Result<Vec<T>, CliError> {
    let bad = || {
        CliError::BadFlag(format!(
            "{} expects a value, a:b range, or comma list; got {:?}",
            flag, spec
        ))
    };
    let mut raw: Vec<u64> = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once(':') {
            let lo: u64 = a.trim().parse().map_err(|_| bad())?;
            let hi: u64 = b.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            raw.extend(lo..=hi);
        } else {
            raw.push(part.parse().map_err(|_| bad())?);
        }
    }
    if raw.is_empty() {
        return Err(bad());
    }
    raw.into_iter()
        .map(|v| T::try_from(v).map_err(|_| bad()))
        .collect()
}
