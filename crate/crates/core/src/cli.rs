//! Command-line front end. The binary only forwards `std::env::args` to [`run`].
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0  | success |
//! | 1  | I/O, parse, or other failure |
//! | 2  | margin violation (`|b| > 1 - eta` somewhere, or target outside its margin) |
//! | 3  | solver degeneracy (Cholesky breakdown or a violated solver invariant) |
//! | 4  | dimension mismatch between target and phases |
//! | 5  | `validate --eps` criterion not met |
//! | 64 | usage error or invalid parameters |

use crate::error::Error;
use crate::format::{
    phases_to_csv, read_phases, read_target, to_json_string, PhaseFile, TargetFile, ValidationReport, WeissDump,
};
use crate::nlft::{plancherel_residual, reconstruct_f, roundtrip_error};
use crate::riemann_hilbert::{all_phases, solve_target, RunConfig};
use crate::target::{jacobi_anger_target, random_phase_target, ChebyshevTarget, RandomPhaseSpec};
use crate::weiss::weiss_coefficients;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_MARGIN: i32 = 2;
pub const EXIT_DEGENERACY: i32 = 3;
pub const EXIT_DIMENSION: i32 = 4;
pub const EXIT_CRITERION: i32 = 5;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "rhw-qsp", version, about = "Symmetric QSP phase factors by Riemann-Hilbert factorization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SolverFlags {
    /// Margin; defaults to the value stored in the target file.
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    pub eps: f64,
    /// Grid size override (power of two).
    #[arg(long)]
    pub grid_size: Option<usize>,
    /// Worker threads for the per-phase solves; defaults to available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
}

impl SolverFlags {
    fn config(&self) -> Result<RunConfig, Error> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::InvalidParameter(format!("--eps {} outside (0, 1)", self.eps)));
        }
        if let Some(eta) = self.eta {
            if !(eta > 0.0 && eta <= 0.5) {
                return Err(Error::InvalidParameter(format!("--eta {eta} outside (0, 1/2]")));
            }
        }
        Ok(RunConfig {
            eta: self.eta,
            eps: self.eps,
            grid_size: self.grid_size,
            workers: resolve_workers(self.workers)?,
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute phase factors for a target file.
    Solve {
        target: PathBuf,
        #[command(flatten)]
        solver: SolverFlags,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Phase file destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the Weiss coefficients here.
        #[arg(long)]
        weiss_out: Option<PathBuf>,
    },
    /// Compare a phase file against its target.
    Validate {
        target: PathBuf,
        phases: PathBuf,
        #[arg(long, default_value_t = 500)]
        nodes: usize,
        /// Ground-truth phases; adds the phase-level error to the report.
        #[arg(long)]
        truth: Option<PathBuf>,
        /// Fail with exit code 5 unless the error is at most this value. The
        /// phase error is checked when --truth is given, the roundtrip error otherwise.
        #[arg(long)]
        eps: Option<f64>,
        /// `json`: summary report. `csv`: per-node table `x,f,f_psi,abs_diff`.
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a target file.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Time the Weiss and solve stages on random targets of increasing degree.
    Bench {
        /// Comma-separated ascending half-degrees.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        degrees: Vec<usize>,
        #[arg(long, default_value_t = 1e-8)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        norm_cap: f64,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenerateKind {
    /// Truncated even expansion of `scale * cos(tau x)`.
    JacobiAnger {
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value_t = 0.9)]
        scale: f64,
        #[arg(long, default_value_t = 1e-12)]
        eps0: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Target built from random phases; the phases are the ground truth.
    Random {
        /// Number of phases, `d + 1`.
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// l1 norm of the phase sequence.
        #[arg(long, default_value_t = 0.5)]
        norm_cap: f64,
        /// Scale the first and last thirds of the phases by 1e-7.
        #[arg(long)]
        damp_outer_thirds: bool,
        /// Certify a smaller margin than the automatic one.
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Destination for the exact phases.
        #[arg(long)]
        phases_out: Option<PathBuf>,
    },
    /// Read a target file, check it, and write it back in canonical form.
    FileEcho {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Maps an error to its exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::MarginViolation { .. } | Error::SingularFactorization { .. } | Error::TargetMargin { .. } => {
            EXIT_MARGIN
        }
        Error::Degeneracy { .. } | Error::InvariantViolation { .. } => EXIT_DEGENERACY,
        Error::DimensionMismatch { .. } => EXIT_DIMENSION,
        Error::InvalidParameter(_)
        | Error::Sizing(_)
        | Error::SizingOverflow(_)
        | Error::Aliasing { .. }
        | Error::IndexOutOfRange { .. } => EXIT_USAGE,
        Error::Domain(_) | Error::SingularIntegrand { .. } | Error::Pole { .. } | Error::Io(_) | Error::Format(_) => {
            EXIT_FAILURE
        }
    }
}

fn resolve_workers(workers: Option<usize>) -> Result<usize, Error> {
    match workers {
        Some(0) => Err(Error::InvalidParameter("--workers must be >= 1".into())),
        Some(w) => Ok(w),
        None => Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)),
    }
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve {
            target,
            solver,
            format,
            out,
            weiss_out,
        } => cmd_solve(&target, &solver, format, out.as_deref(), weiss_out.as_deref(), stdout, stderr),
        Command::Validate {
            target,
            phases,
            nodes,
            truth,
            eps,
            format,
            out,
        } => cmd_validate(&target, &phases, nodes, truth.as_deref(), eps, format, out.as_deref(), stdout, stderr),
        Command::Generate { kind } => cmd_generate(&kind, stdout),
        Command::Bench {
            degrees,
            eps,
            seed,
            norm_cap,
            workers,
            repeats,
            out,
        } => {
            let spec = BenchSpec {
                degrees,
                eps,
                seed,
                norm_cap,
                repeats,
            };
            resolve_workers(workers).and_then(|w| cmd_bench(&spec, w, out.as_deref(), stdout, stderr))
        }
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            exit_code(&err)
        }
    }
}

pub fn cmd_solve(
    target_path: &Path,
    solver: &SolverFlags,
    format: OutputFormat,
    out: Option<&Path>,
    weiss_out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Error> {
    let config = solver.config()?;
    let target = read_target(target_path)?;
    let start = Instant::now();
    let solution = solve_target(&target, &config)?;
    let wall = start.elapsed().as_secs_f64();
    let text = match format {
        OutputFormat::Json => to_json_string(&PhaseFile::from_phases(&solution.phases))?,
        OutputFormat::Csv => phases_to_csv(&solution.phases),
    };
    emit(out, &text, stdout)?;
    if let Some(path) = weiss_out {
        std::fs::write(path, to_json_string(&WeissDump::from_result(&solution.weiss))?)?;
    }
    let max_psi = solution.phases.values().iter().map(|p| p.abs()).fold(0.0, f64::max);
    writeln!(
        stderr,
        "d={} N={} wall_s={wall:.6} max_abs_psi={max_psi:.16e}",
        target.half_degree(),
        solution.weiss.grid_size
    )?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_validate(
    target_path: &Path,
    phase_path: &Path,
    nodes: usize,
    truth: Option<&Path>,
    eps: Option<f64>,
    format: OutputFormat,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Error> {
    let target = read_target(target_path)?;
    let phases = read_phases(phase_path)?;
    let roundtrip = roundtrip_error(&target, &phases, nodes)?;
    let plancherel = plancherel_residual(&phases, &target)?;
    let phase_err = match truth {
        Some(path) => Some(read_phases(path)?.max_abs_diff(&phases)?),
        None => None,
    };
    let text = match format {
        OutputFormat::Json => to_json_string(&ValidationReport {
            roundtrip_max_err: roundtrip,
            plancherel_residual: plancherel,
            nodes,
            phase_max_err: phase_err,
        })?,
        OutputFormat::Csv => {
            let mut table = String::from("x,f,f_psi,abs_diff\n");
            for x in ChebyshevTarget::chebyshev_nodes(nodes) {
                let f = target.eval_f(x)?;
                let g = reconstruct_f(x, &phases);
                table.push_str(&format!("{x:.16e},{f:.16e},{g:.16e},{:.16e}\n", (f - g).abs()));
            }
            table
        }
    };
    emit(out, &text, stdout)?;
    writeln!(
        stderr,
        "roundtrip_max_err={roundtrip:.3e} plancherel_residual={plancherel:.3e}{}",
        phase_err.map(|e| format!(" phase_max_err={e:.3e}")).unwrap_or_default()
    )?;
    if let Some(eps) = eps {
        let (name, value) = match phase_err {
            Some(e) => ("phase_max_err", e),
            None => ("roundtrip_max_err", roundtrip),
        };
        if !(value <= eps) {
            writeln!(stderr, "criterion failed: {name} = {value:.3e} > {eps:.3e}")?;
            return Ok(EXIT_CRITERION);
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_generate(kind: &GenerateKind, stdout: &mut dyn Write) -> Result<i32, Error> {
    match kind {
        GenerateKind::JacobiAnger { tau, scale, eps0, out } => {
            let t = jacobi_anger_target(*tau, *scale, *eps0)?;
            emit(out.as_deref(), &to_json_string(&TargetFile::from_target(&t))?, stdout)?;
        }
        GenerateKind::Random {
            length,
            seed,
            norm_cap,
            damp_outer_thirds,
            eta,
            out,
            phases_out,
        } => {
            let mut spec = RandomPhaseSpec::new(*length, *seed, *norm_cap);
            if *damp_outer_thirds {
                spec = spec.with_outer_thirds_damped();
            }
            let (phases, mut target) = random_phase_target(&spec)?;
            if let Some(eta) = eta {
                if *eta > target.eta() {
                    return Err(Error::InvalidParameter(format!(
                        "--eta {eta} exceeds the certified margin {}",
                        target.eta()
                    )));
                }
                target = target.with_eta(*eta)?;
            }
            emit(out.as_deref(), &to_json_string(&TargetFile::from_target(&target))?, stdout)?;
            if let Some(path) = phases_out {
                std::fs::write(path, to_json_string(&PhaseFile::from_phases(&phases))?)?;
            }
        }
        GenerateKind::FileEcho { input, out } => {
            let t = read_target(input)?;
            emit(out.as_deref(), &to_json_string(&TargetFile::from_target(&t))?, stdout)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSpec {
    pub degrees: Vec<usize>,
    pub eps: f64,
    pub seed: u64,
    pub norm_cap: f64,
    pub repeats: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub d: usize,
    pub grid_size: usize,
    pub weiss_s: f64,
    pub solve_s: f64,
}

/// Least-squares slope of `log y` against `log x`; `None` with fewer than two points.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    Some(sxy / sxx)
}

/// Times each stage, keeping the fastest of `repeats` runs after one untimed
/// warm-up run.
pub fn bench_rows(spec: &BenchSpec, workers: usize) -> Result<Vec<BenchRow>, Error> {
    if spec.degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("degrees must be strictly ascending".into()));
    }
    if spec.repeats == 0 {
        return Err(Error::InvalidParameter("repeats must be >= 1".into()));
    }
    let mut rows = Vec::with_capacity(spec.degrees.len());
    for &d in &spec.degrees {
        let (_, target) = random_phase_target(&RandomPhaseSpec::new(d + 1, spec.seed, spec.norm_cap))?;
        let b = target.to_laurent_b();
        let (mut weiss_s, mut solve_s) = (f64::INFINITY, f64::INFINITY);
        let grid_size = weiss_coefficients(&b, target.eta(), spec.eps, None)
            .and_then(|w| all_phases(&w.imag(), workers).map(|_| w.grid_size))?;
        for _ in 0..spec.repeats {
            let start = Instant::now();
            let w = weiss_coefficients(&b, target.eta(), spec.eps, None)?;
            weiss_s = weiss_s.min(start.elapsed().as_secs_f64());
            let coeffs = w.imag();
            let start = Instant::now();
            all_phases(&coeffs, workers)?;
            solve_s = solve_s.min(start.elapsed().as_secs_f64());
        }
        rows.push(BenchRow {
            d,
            grid_size,
            weiss_s,
            solve_s,
        });
    }
    Ok(rows)
}

pub fn cmd_bench(
    spec: &BenchSpec,
    workers: usize,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Error> {
    let rows = bench_rows(spec, workers)?;
    let mut csv = String::from("d,N,weiss_s,solve_s\n");
    for r in &rows {
        csv.push_str(&format!("{},{},{:.6e},{:.6e}\n", r.d, r.grid_size, r.weiss_s, r.solve_s));
    }
    emit(out, &csv, stdout)?;
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.d as f64, r.solve_s)).collect();
    if let Some(slope) = log_log_slope(&points) {
        writeln!(stderr, "solve-stage log-log slope: {slope:.3}")?;
    }
    Ok(EXIT_OK)
}
