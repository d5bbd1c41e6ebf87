//! Command-line front end. The binary is a thin wrapper around [`run_cli`].
//!
//! Exit codes: `0` success, `1` numerical failure (or a failing `check`),
//! `2` usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analytic::{analytic_samples, wavefunction_upper_limit, Normalization, WavefunctionSamples};
use crate::checks::run_invariant_suite;
use crate::error::{Error, Param};
use crate::grid::build_grid;
use crate::model::{validate_params, ManifoldKind, ModelParams, PseudoSign, QuantumNumbers};
use crate::oracle::numeric_spectrum;
use crate::report::{
    compare_report, format_g17, oracle_report, resolve_theta_max, serialize_report, spectrum_report, Format,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "curved-kepler",
    version,
    about = "Kepler-Coulomb spectra on the sphere and pseudosphere"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form levels k = 0..=kmax.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        kmax: u32,
    },
    /// Finite-difference levels.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Closed-form and finite-difference levels side by side.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        kmax: u32,
    },
    /// Samples of a radial function.
    Wavefunction {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Source::Analytic)]
        source: Source,
        /// Radial number k (analytic) or level index (numeric).
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// Runs the invariant and convergence self-checks.
    Check,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value_t = Manifold::Sphere)]
    manifold: Manifold,
    #[arg(long, value_enum, default_value_t = Sign::Plus)]
    sign: Sign,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    l: i64,
    /// Number of grid subintervals N.
    #[arg(long, default_value_t = 2000)]
    grid: usize,
    /// Truncation radius of the pseudosphere grid (default 20).
    #[arg(long = "theta-max", allow_negative_numbers = true)]
    theta_max: Option<f64>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    mass: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    inertia: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    radius: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    hbar: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Manifold {
    Sphere,
    Pseudosphere,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Source {
    Analytic,
    Numeric,
}

enum Failure {
    Usage(String),
    Numerical(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numerical(e)
    }
}

fn flag_for(param: Param) -> &'static str {
    match param {
        Param::Mass => "--mass",
        Param::Inertia => "--inertia",
        Param::Radius => "--radius",
        Param::Alpha => "--alpha",
        Param::Hbar => "--hbar",
    }
}

struct Resolved {
    kind: ManifoldKind,
    params: ModelParams,
    theta_max: Option<f64>,
    format: Format,
}

impl Common {
    fn resolve(&self) -> Result<Resolved, Failure> {
        let kind = match self.manifold {
            Manifold::Sphere => ManifoldKind::Sphere,
            Manifold::Pseudosphere => ManifoldKind::Pseudosphere(match self.sign {
                Sign::Plus => PseudoSign::Plus,
                Sign::Minus => PseudoSign::Minus,
            }),
        };
        if kind.is_sphere() && self.theta_max.is_some() {
            return Err(Failure::Usage(
                "--theta-max is only valid with --manifold pseudosphere".into(),
            ));
        }
        if let Some(t) = self.theta_max {
            if !(t.is_finite() && t > 0.0) {
                return Err(Failure::Usage("--theta-max must be a positive number".into()));
            }
        }
        if self.grid < crate::grid::MIN_INTERVALS {
            return Err(Failure::Usage(format!(
                "--grid must be at least {}",
                crate::grid::MIN_INTERVALS
            )));
        }
        let params = ModelParams {
            mass: self.mass,
            inertia: self.inertia,
            radius: self.radius,
            alpha: self.alpha,
            hbar: self.hbar,
        };
        let params = validate_params(params).map_err(|errs| {
            let flags: Vec<&str> = errs
                .iter()
                .map(|crate::error::ParamError::NonPositiveParameter(p)| flag_for(*p))
                .collect();
            Failure::Usage(format!("{} must be positive and finite", flags.join(", ")))
        })?;
        Ok(Resolved {
            kind,
            params,
            theta_max: resolve_theta_max(kind, self.theta_max),
            format: match self.format {
                OutputFormat::Csv => Format::Csv,
                OutputFormat::Json => Format::Json,
            },
        })
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory
/// followed by a rename.
pub fn write_atomically(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn emit(bytes: &[u8], output: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    let written = match output {
        Some(path) => write_atomically(path, bytes),
        None => out.write_all(bytes),
    };
    written.map_err(|e| Failure::Numerical(Error::Numerical(format!("write failed: {e}"))))
}

fn samples_bytes(samples: &WavefunctionSamples, format: Format) -> Vec<u8> {
    let nodes = samples.grid.nodes();
    match format {
        Format::Csv => {
            let mut s = String::from("theta,f\n");
            for (t, v) in nodes.iter().zip(&samples.values) {
                s.push_str(&format!("{},{}\n", format_g17(*t), format_g17(*v)));
            }
            s.into_bytes()
        }
        Format::Json => {
            let list = |xs: &[f64]| xs.iter().map(|x| format_g17(*x)).collect::<Vec<_>>().join(", ");
            format!(
                "{{\n  \"theta\": [{}],\n  \"f\": [{}]\n}}\n",
                list(nodes),
                list(&samples.values)
            )
            .into_bytes()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Spectrum { common, kmax } => {
            let r = common.resolve()?;
            let report = spectrum_report(r.kind, &r.params, common.n, common.l, kmax)?;
            emit(&serialize_report(&report, r.format)?, common.output.as_deref(), out)?;
        }
        Command::Oracle { common, count } => {
            let r = common.resolve()?;
            let report = oracle_report(r.kind, &r.params, common.n, common.l, count, common.grid, r.theta_max)?;
            emit(&serialize_report(&report, r.format)?, common.output.as_deref(), out)?;
        }
        Command::Compare { common, kmax } => {
            let r = common.resolve()?;
            let report = compare_report(r.kind, &r.params, common.n, common.l, kmax, common.grid, r.theta_max)?;
            emit(&serialize_report(&report, r.format)?, common.output.as_deref(), out)?;
        }
        Command::Wavefunction { common, source, k } => {
            let r = common.resolve()?;
            let samples = match source {
                Source::Analytic => {
                    let grid =
                        build_grid(r.kind, common.grid, r.theta_max)?.restrict_to(wavefunction_upper_limit(r.kind));
                    analytic_samples(
                        r.kind,
                        &r.params,
                        QuantumNumbers::new(common.n, common.l, k),
                        Arc::new(grid),
                        Normalization::UnitNorm,
                    )?
                }
                Source::Numeric => {
                    let mut levels = numeric_spectrum(
                        r.kind,
                        &r.params,
                        common.n,
                        common.l,
                        k as usize + 1,
                        common.grid,
                        r.theta_max,
                    )?;
                    levels.pop().expect("k + 1 levels").eigenvector
                }
            };
            emit(&samples_bytes(&samples, r.format), common.output.as_deref(), out)?;
        }
        Command::Check => {
            let outcomes = run_invariant_suite();
            let mut failed = 0;
            for o in &outcomes {
                let tag = if o.passed { "PASS" } else { "FAIL" };
                failed += usize::from(!o.passed);
                writeln!(out, "{tag} {}: {}", o.name, o.detail)
                    .map_err(|e| Failure::Numerical(Error::Numerical(e.to_string())))?;
            }
            return Ok(if failed == 0 { EXIT_OK } else { EXIT_NUMERICAL });
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first), runs the subcommand, and returns
/// the process exit code. Results go to `out` unless `--output` is given;
/// diagnostics go to `err`.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numerical(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_NUMERICAL
        }
    }
}
