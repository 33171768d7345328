//! Command-line front end for the betaedge toolkit.
//!
//! Subcommands cover density evaluation on grids, exact expansion
//! coefficients, moment tables, Laplace recursion residuals, Monte Carlo
//! sampling with edge histograms, and the numbered cross-validation suite.
//! Curves and tables are written as CSV, exact rational objects as JSON;
//! every artifact is deterministic given the flags (seeds included), so
//! reruns byte-reproduce outputs.

use betaedge::ensembles::{Convention, DensityCurve, EnsembleSpec, ScalingKind};
use betaedge::laplace::{recursion_residual, recursion_table_csv, RecursionCheck};
use betaedge::mc::{
    batch_sidecar_json, batch_to_csv, edge_histogram, sample_dense, sample_tridiagonal,
};
use betaedge::moments::{
    moment_closed_form, moment_quadrature, moments_to_csv, MomentNumber, MomentSource,
    MomentValue,
};
use betaedge::solver::ExpansionSeries;
use betaedge::verify::{run_suite, suite_passed, SuiteSelection};
use clap::{Parser, Subcommand, ValueEnum};
use num::BigRational;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Top-level invocation: a global output directory plus one subcommand.
#[derive(Parser)]
#[command(
    name = "betaedge",
    version,
    about = "Finite-size Gaussian beta-ensemble densities, edge expansions, moments, and samplers"
)]
struct RunConfig {
    /// Directory receiving output artifacts (created if missing).
    #[arg(long, global = true, env = "BETAEDGE_OUTPUT_DIR", default_value = ".")]
    output_dir: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the finite-size eigenvalue density on a grid (beta = 2).
    Density {
        #[arg(long, default_value_t = 2.0)]
        beta: f64,
        /// Matrix size.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ScalingArg::Raw)]
        scaling: ScalingArg,
        /// Inclusive grid as start:stop:count, e.g. -4:2:121.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, value_enum, default_value_t = ConventionArg::Hermite)]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value_t = CurveFormat::Csv)]
        format: CurveFormat,
        /// Output file name (relative names land in the output directory).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compute the exact soft-edge expansion coefficients through a given order.
    Expansion {
        /// Highest order to solve for.
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tabulate even spectral moments (closed form, optionally quadrature).
    Moments {
        /// Ensemble parameter as an exact rational, e.g. 1, 2, or 5/2.
        #[arg(long, default_value = "2")]
        beta: String,
        /// Matrix sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Tabulate m_2 through m_{2k} for k up to this bound.
        #[arg(long, default_value_t = 2)]
        kmax: usize,
        /// Also tabulate quadrature values (beta = 2 only).
        #[arg(long)]
        quadrature: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tabulate Laplace-transform recursion residuals of the expansion terms.
    Laplace {
        /// Transform abscissas, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = false, default_values_t = [0.5, 1.0, 2.0])]
        gamma: Vec<f64>,
        /// Highest expansion order to check.
        #[arg(long, default_value_t = 2)]
        jmax: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Draw eigenvalue samples; optionally histogram the soft edge.
    Sample {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        reps: usize,
        /// RNG seed (required: no implicit entropy).
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SamplerArg::Tridiagonal)]
        sampler: SamplerArg,
        #[arg(long, value_enum, default_value_t = ConventionArg::Canonical)]
        convention: ConventionArg,
        /// Histogram edge-scaled eigenvalues using the plain size (n) or the
        /// shifted effective size (nprime).
        #[arg(long, value_enum)]
        edge_histogram: Option<EdgeArg>,
        /// Histogram window as lo:hi in edge coordinates.
        #[arg(long, allow_hyphen_values = true, default_value = "-6:3")]
        window: String,
        #[arg(long, default_value_t = 60)]
        bins: usize,
        /// Also write the raw eigenvalue dump and its JSON sidecar.
        #[arg(long)]
        dump: bool,
        /// Output file name for the histogram CSV.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the numbered cross-validation suite and exit nonzero on failure.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Fast)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalingArg {
    Raw,
    Global,
    Soft,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    /// Weight e^{-x^2} (Hermite orthogonality convention).
    Hermite,
    /// Weight e^{-beta x^2 / 2} (canonical beta-ensemble convention).
    Canonical,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum CurveFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SamplerArg {
    /// Tridiagonal model (any beta > 0).
    Tridiagonal,
    /// Dense Gaussian matrices (beta = 1 or 2).
    Dense,
}

#[derive(Clone, Copy, ValueEnum)]
enum EdgeArg {
    N,
    Nprime,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Fast,
    Full,
}

impl From<ScalingArg> for ScalingKind {
    fn from(s: ScalingArg) -> ScalingKind {
        match s {
            ScalingArg::Raw => ScalingKind::Raw,
            ScalingArg::Global => ScalingKind::Global,
            ScalingArg::Soft => ScalingKind::SoftEdge,
        }
    }
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Convention {
        match c {
            ConventionArg::Hermite => Convention::HermiteWeight,
            ConventionArg::Canonical => Convention::BetaCanonical,
        }
    }
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match execute(config) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

/// Parses `start:stop:count` with inclusive endpoints.
fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid must be start:stop:count, got `{text}`"));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| format!("bad grid start `{}`", parts[0]))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| format!("bad grid stop `{}`", parts[1]))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| format!("bad grid count `{}`", parts[2]))?;
    // Negated comparison so NaN endpoints are rejected as unordered.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(start < stop) {
        return Err(format!("grid needs start < stop, got {start} and {stop}"));
    }
    if count < 2 {
        return Err(format!("grid needs at least 2 points, got {count}"));
    }
    Ok((0..count)
        .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
        .collect())
}

/// Parses `lo:hi` window bounds.
fn parse_window(text: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 2 {
        return Err(format!("window must be lo:hi, got `{text}`"));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| format!("bad window bound `{}`", parts[0]))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| format!("bad window bound `{}`", parts[1]))?;
    Ok((lo, hi))
}

/// Parses an exact rational like `2` or `5/2`.
fn parse_beta_rational(text: &str) -> Result<BigRational, String> {
    let parts: Vec<&str> = text.split('/').collect();
    let (num, den): (i64, i64) = match parts.as_slice() {
        [whole] => (
            whole
                .parse()
                .map_err(|_| format!("bad beta numerator `{whole}`"))?,
            1,
        ),
        [num, den] => (
            num.parse()
                .map_err(|_| format!("bad beta numerator `{num}`"))?,
            den.parse()
                .map_err(|_| format!("bad beta denominator `{den}`"))?,
        ),
        _ => return Err(format!("beta must be an integer or num/den, got `{text}`")),
    };
    if den == 0 {
        return Err("beta denominator must be nonzero".into());
    }
    Ok(BigRational::new(num.into(), den.into()))
}

fn rational_to_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Resolves an artifact path (relative names land in the output directory),
/// creates parent directories, and writes the content.
fn write_artifact(
    dir: &Path,
    name: Option<PathBuf>,
    default_name: &str,
    content: &str,
) -> Result<PathBuf, String> {
    let path = match name {
        Some(p) if p.is_absolute() => p,
        Some(p) => dir.join(p),
        None => dir.join(default_name),
    };
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| format!("cannot create {}: {e}", parent.display()))?;
        }
    }
    std::fs::write(&path, content).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(path)
}

fn execute(config: RunConfig) -> Result<ExitCode, String> {
    let dir = config.output_dir;
    match config.command {
        Command::Density {
            beta,
            n,
            scaling,
            grid,
            convention,
            format,
            output,
        } => {
            let points = parse_grid(&grid)?;
            let spec =
                EnsembleSpec::new(beta, n, convention.into()).map_err(|e| e.to_string())?;
            let curve = DensityCurve::evaluate(&spec, scaling.into(), &points)
                .map_err(|e| e.to_string())?;
            let (content, default_name) = match format {
                CurveFormat::Csv => {
                    let mut buf = Vec::new();
                    curve.write_csv(&mut buf).map_err(|e| e.to_string())?;
                    (String::from_utf8(buf).expect("csv is utf-8"), "density.csv")
                }
                CurveFormat::Json => (
                    serde_json::to_string_pretty(&curve.to_json()).expect("json renders") + "\n",
                    "density.json",
                ),
            };
            let path = write_artifact(&dir, output, default_name, &content)?;
            println!(
                "density: {} points, beta {beta}, size {n} -> {}",
                points.len(),
                path.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Expansion {
            order,
            format,
            output,
        } => {
            let mut series = ExpansionSeries::new();
            series.extend_to(order).map_err(|e| e.to_string())?;
            let (content, default_name) = match format {
                ReportFormat::Json => (
                    serde_json::to_string_pretty(&series.to_json()).expect("json renders") + "\n",
                    "expansion.json",
                ),
                ReportFormat::Text => (series.to_report(), "expansion.txt"),
            };
            let path = write_artifact(&dir, output, default_name, &content)?;
            println!(
                "expansion: exact coefficients through order {order} -> {}",
                path.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Moments {
            beta,
            n,
            kmax,
            quadrature,
            output,
        } => {
            if kmax == 0 {
                return Err("kmax must be at least 1".into());
            }
            let beta_rat = parse_beta_rational(&beta)?;
            let beta_f = rational_to_f64(&beta_rat);
            let mut rows = Vec::new();
            for &size in &n {
                for k in 1..=kmax {
                    let exact =
                        moment_closed_form(k, &beta_rat, size).map_err(|e| e.to_string())?;
                    rows.push(MomentValue {
                        k,
                        beta: beta_f,
                        n: size,
                        value: MomentNumber::Exact(exact),
                        source: MomentSource::ClosedForm,
                    });
                    if quadrature {
                        let approx = moment_quadrature(k, size).map_err(|e| e.to_string())?;
                        rows.push(MomentValue {
                            k,
                            beta: beta_f,
                            n: size,
                            value: MomentNumber::Approx(approx),
                            source: MomentSource::Quadrature,
                        });
                    }
                }
            }
            let path = write_artifact(&dir, output, "moments.csv", &moments_to_csv(&rows))?;
            println!("moments: {} rows -> {}", rows.len(), path.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Laplace {
            gamma,
            jmax,
            output,
        } => {
            let mut series = ExpansionSeries::new();
            series.extend_to(jmax).map_err(|e| e.to_string())?;
            let mut checks: Vec<RecursionCheck> = Vec::new();
            for &g in &gamma {
                for j in 0..=jmax {
                    checks.push(recursion_residual(j, g, &series).map_err(|e| e.to_string())?);
                }
            }
            let worst = checks
                .iter()
                .map(|c| c.residual.abs() / c.scale)
                .fold(0.0f64, f64::max);
            let path = write_artifact(&dir, output, "laplace.csv", &recursion_table_csv(&checks))?;
            println!(
                "laplace: {} residuals (worst {worst:.3e} of scale) -> {}",
                checks.len(),
                path.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Sample {
            beta,
            n,
            reps,
            seed,
            sampler,
            convention,
            edge_histogram: edge,
            window,
            bins,
            dump,
            output,
        } => {
            let batch = match sampler {
                SamplerArg::Tridiagonal => {
                    let spec = EnsembleSpec::new(beta, n, convention.into())
                        .map_err(|e| e.to_string())?;
                    sample_tridiagonal(&spec, reps, seed).map_err(|e| e.to_string())?
                }
                SamplerArg::Dense => {
                    if matches!(convention, ConventionArg::Hermite) {
                        return Err(
                            "the dense sampler reports canonical-convention eigenvalues; \
                             use --convention canonical"
                                .into(),
                        );
                    }
                    sample_dense(beta, n, reps, seed).map_err(|e| e.to_string())?
                }
            };
            println!(
                "sample: beta {beta}, size {n}, {reps} repetitions, seed {seed}, {} sampler",
                batch.sampler.label()
            );
            if dump {
                let eig_path =
                    write_artifact(&dir, None, "sample_eigenvalues.csv", &batch_to_csv(&batch))?;
                let sidecar = serde_json::to_string_pretty(&batch_sidecar_json(&batch))
                    .expect("json renders")
                    + "\n";
                let meta_path = write_artifact(&dir, None, "sample_meta.json", &sidecar)?;
                println!(
                    "sample: dump -> {} with sidecar {}",
                    eig_path.display(),
                    meta_path.display()
                );
            }
            if let Some(which) = edge {
                let bounds = parse_window(&window)?;
                let use_nprime = matches!(which, EdgeArg::Nprime);
                let hist =
                    edge_histogram(&batch, use_nprime, bounds, bins).map_err(|e| e.to_string())?;
                let path = write_artifact(&dir, output, "edge_histogram.csv", &hist.to_csv())?;
                println!(
                    "sample: edge histogram ({} scaling, {bins} bins, mass {:.4} in window) -> {}",
                    hist.scaling_used.label(),
                    hist.captured_mass(),
                    path.display()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite } => {
            let selection = match suite {
                SuiteArg::Fast => SuiteSelection::Fast,
                SuiteArg::Full => SuiteSelection::Full,
            };
            let reports = run_suite(selection);
            for report in &reports {
                println!("{}", report.line());
            }
            if suite_passed(&reports) {
                println!("all {} criteria passed", reports.len());
                Ok(ExitCode::SUCCESS)
            } else {
                let failing: Vec<String> = reports
                    .iter()
                    .filter(|r| !r.passed)
                    .map(|r| r.id.to_string())
                    .collect();
                eprintln!("failing criteria: {}", failing.join(", "));
                Ok(ExitCode::FAILURE)
            }
        }
    }
}
