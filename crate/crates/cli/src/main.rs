//! Batch command-line surface: load matrices and wavelet specs, run the
//! decision engine and the verification suites, and emit JSON/CSV reports.
//!
//! Exit codes are a total function of the report content:
//! * `check` — 0 admissible, 1 not admissible, 2 unknown;
//! * `construct` — 0 spec written, 1/2 refusal mapping the verdict,
//!   3 refusal when a diagonalizing similarity is needed but missing;
//! * `delta`/`probe`/`reconstruct` — 0 within tolerance, 3 breach;
//! * 64 for unreadable or unparsable inputs, 70 for internal failures.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use onewave::admit::{criterion_symmetric_part, decide, Status, Verdict};
use onewave::emit;
use onewave::matkit::{norm2, Matrix};
use onewave::orbit::GroupDescriptor;
use onewave::verify::{
    delta_sweep, divergence_probe, lie_convergence_probe, reconstruction_check, DeltaReport,
    DeltaSample, GridSpec, GrowthTable, ProbeKind,
};
use onewave::wavelet::{Profile, WaveletSpec};

#[derive(Parser)]
#[command(
    name = "onewave",
    version,
    about = "Admissibility decisions and continuous-wavelet verification for one-parameter matrix dilation groups"
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

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProbeKindArg {
    /// Diagonal generator with zero trace (requires --matrix).
    TraceZero,
    /// The rotation group SO(2).
    Rotation,
    /// The 2x2 nilpotent shear group.
    Shear,
    /// Lie-product convergence table (optional --matrix/--matrix-b pair).
    Lie,
    /// Orbit decomposition dump (requires --matrix).
    Orbit,
}

#[derive(Subcommand)]
enum Command {
    /// Decide admissibility of the group generated by a matrix.
    Check {
        #[arg(long)]
        matrix: PathBuf,
        /// Relative decision tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct a wavelet spec for an admissible generator.
    Construct {
        #[arg(long)]
        matrix: PathBuf,
        /// Similarity W with W·X·W⁻¹ diagonal, enabling the transported
        /// construction for non-diagonal diagonalizable generators.
        #[arg(long)]
        similarity: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the Calderón integral over random frequency points.
    Delta {
        #[arg(long)]
        wavelet: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        /// Quadrature tolerance; also the pass gate on max |Δ − 1|.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Divergence, convergence, and orbit probes.
    Probe {
        #[arg(long, value_enum)]
        kind: ProbeKindArg,
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Second matrix for the Lie probe.
        #[arg(long)]
        matrix_b: Option<PathBuf>,
        /// Comma-separated truncation radii (growth probes).
        #[arg(long)]
        radii: Option<String>,
        /// Comma-separated subdivision counts (Lie probe).
        #[arg(long)]
        m_values: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Frequency-domain reconstruction check on a Gaussian bump.
    Reconstruct {
        #[arg(long)]
        wavelet: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 11)]
        grid_points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    /// Unreadable or unparsable input (exit 64).
    Parse(String),
    /// Anything the toolkit could not compute (exit 70).
    Internal(String),
}

impl From<onewave::Error> for Failure {
    fn from(e: onewave::Error) -> Failure {
        Failure::Internal(e.to_string())
    }
}

type RunResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(64)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(70)
        }
    }
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read {what} file {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Parse(format!("cannot parse {what} file {}: {e}", path.display())))
}

fn write_out(out: &Option<PathBuf>, contents: &str) -> Result<(), Failure> {
    if let Some(path) = out {
        fs::write(path, contents)
            .map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn emit_report<T: Serialize>(
    report: &T,
    out: &Option<PathBuf>,
    format: Format,
    csv: Option<String>,
) -> Result<(), Failure> {
    let json = emit::to_json(report)?;
    println!("{json}");
    match format {
        Format::Json => write_out(out, &json),
        Format::Csv => {
            let Some(csv) = csv else {
                return Err(Failure::Parse("csv output is not available for this command".into()));
            };
            if out.is_none() {
                return Err(Failure::Parse(
                    "--format csv writes a side file; pass --out <path>".into(),
                ));
            }
            write_out(out, &csv)
        }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<T>()
                .map_err(|e| Failure::Parse(format!("bad {what} entry '{p}': {e}")))
        })
        .collect()
}

fn run(command: Command) -> RunResult {
    match command {
        Command::Check { matrix, tol, out } => run_check(&matrix, tol, &out),
        Command::Construct {
            matrix,
            similarity,
            tol,
            out,
        } => run_construct(&matrix, &similarity, tol, &out),
        Command::Delta {
            wavelet,
            matrix,
            tol,
            samples,
            seed,
            out,
            format,
        } => run_delta(&wavelet, &matrix, tol, samples, seed, &out, format),
        Command::Probe {
            kind,
            matrix,
            matrix_b,
            radii,
            m_values,
            samples,
            seed,
            out,
            format,
        } => run_probe(
            kind, &matrix, &matrix_b, &radii, &m_values, samples, seed, &out, format,
        ),
        Command::Reconstruct {
            wavelet,
            matrix,
            tol,
            grid_points,
            out,
        } => run_reconstruct(&wavelet, &matrix, tol, grid_points, &out),
    }
}

fn run_check(matrix: &Path, tol: f64, out: &Option<PathBuf>) -> RunResult {
    if !(tol > 0.0) {
        return Err(Failure::Parse(format!("tol must be positive, got {tol}")));
    }
    let x: Matrix = load_json(matrix, "matrix")?;
    let verdict = decide(&x, tol);
    let json = emit::to_json(&verdict)?;
    println!("{json}");
    write_out(out, &json)?;
    Ok(match verdict.status {
        Status::Admissible => 0,
        Status::NotAdmissible => 1,
        Status::Unknown => 2,
    })
}

#[derive(Serialize, Deserialize)]
struct Refusal {
    refusal: String,
    verdict: Verdict,
}

fn run_construct(
    matrix: &Path,
    similarity: &Option<PathBuf>,
    tol: f64,
    out: &Option<PathBuf>,
) -> RunResult {
    if !(tol > 0.0) {
        return Err(Failure::Parse(format!("tol must be positive, got {tol}")));
    }
    let x: Matrix = load_json(matrix, "matrix")?;
    let verdict = decide(&x, tol);
    let refuse = |code: u8, why: &str, verdict: Verdict| -> RunResult {
        let refusal = Refusal {
            refusal: why.into(),
            verdict,
        };
        let json = emit::to_json(&refusal)?;
        println!("{json}");
        write_out(out, &json)?;
        Ok(code)
    };
    match verdict.status {
        Status::NotAdmissible => {
            return refuse(1, "the group is not admissible; no wavelet exists", verdict)
        }
        Status::Unknown => {
            return refuse(
                2,
                "no criterion decides this generator; refusing to construct",
                verdict,
            )
        }
        Status::Admissible => {}
    }
    let spec = if let Some(w_path) = similarity {
        let w: Matrix = load_json(w_path, "similarity")?;
        if w.n() != x.n() {
            return Err(Failure::Parse(format!(
                "similarity is {}x{} but the generator is {}x{}",
                w.n(),
                w.n(),
                x.n(),
                x.n()
            )));
        }
        let w_inv = w
            .inverse()
            .map_err(|_| Failure::Parse("similarity matrix is singular".into()))?;
        let y = w.matmul(&x).matmul(&w_inv);
        if !y.is_diagonal_within(1e-9) {
            return refuse(
                3,
                "W·X·W⁻¹ is not diagonal; supply a similarity that diagonalizes the generator",
                verdict,
            );
        }
        let d = Matrix::diag(&y.diagonal()).expect("diagonal of a valid matrix");
        let base = WaveletSpec::indicator(&d)?;
        WaveletSpec::transported(base, &w)?
    } else if x.is_diagonal_within(1e-12) {
        WaveletSpec::indicator(&x)?
    } else if criterion_symmetric_part(&x, tol).is_some() {
        WaveletSpec::profile(&x, Profile::raised_sine())?
    } else {
        return refuse(
            3,
            "admissible by trace only: constructing a wavelet needs an explicit \
             diagonalization; pass --similarity W with W·X·W⁻¹ diagonal",
            verdict,
        );
    };
    let json = emit::to_json(&spec)?;
    println!("{json}");
    write_out(out, &json)?;
    Ok(0)
}

#[derive(Serialize, Deserialize)]
struct DeltaRunReport {
    tolerance: f64,
    passed: bool,
    worst_sample: Option<DeltaSample>,
    report: DeltaReport,
}

fn run_delta(
    wavelet: &Path,
    matrix: &Path,
    tol: f64,
    samples: usize,
    seed: u64,
    out: &Option<PathBuf>,
    format: Format,
) -> RunResult {
    if !(tol > 0.0) || samples < 1 {
        return Err(Failure::Parse("delta requires tol > 0 and samples >= 1".into()));
    }
    let w: WaveletSpec = load_json(wavelet, "wavelet spec")?;
    let x: Matrix = load_json(matrix, "matrix")?;
    let report = delta_sweep(&w, &x, samples, seed, tol)?;
    let passed = report.max_abs_deviation <= tol;
    let worst_sample = report
        .samples
        .iter()
        .max_by(|a, b| {
            (a.delta - 1.0)
                .abs()
                .partial_cmp(&(b.delta - 1.0).abs())
                .unwrap()
        })
        .cloned();
    let csv = emit::delta_report_csv(&report);
    let run = DeltaRunReport {
        tolerance: tol,
        passed,
        worst_sample,
        report,
    };
    emit_report(&run, out, format, Some(csv))?;
    Ok(if passed { 0 } else { 3 })
}

#[derive(Serialize, Deserialize)]
struct GrowthRunReport {
    kind: String,
    nominal_exponent: f64,
    passed: bool,
    table: GrowthTable,
}

#[derive(Serialize, Deserialize)]
struct LieRunReport {
    passed: bool,
    ratios: Vec<f64>,
    table: Vec<(u32, f64)>,
}

#[derive(Serialize, Deserialize)]
struct OrbitProbeSample {
    t: f64,
    v: Vec<f64>,
    xi_norm: f64,
    residual: f64,
}

#[derive(Serialize, Deserialize)]
struct OrbitRunReport {
    seed: u64,
    passed: bool,
    max_residual: f64,
    samples: Vec<OrbitProbeSample>,
}

#[allow(clippy::too_many_arguments)]
fn run_probe(
    kind: ProbeKindArg,
    matrix: &Option<PathBuf>,
    matrix_b: &Option<PathBuf>,
    radii: &Option<String>,
    m_values: &Option<String>,
    samples: usize,
    seed: u64,
    out: &Option<PathBuf>,
    format: Format,
) -> RunResult {
    match kind {
        ProbeKindArg::TraceZero | ProbeKindArg::Rotation | ProbeKindArg::Shear => {
            let radii: Vec<f64> = match radii {
                Some(s) => parse_list(s, "radius")?,
                None => (0..7).map(|k| 2f64.powi(k)).collect(),
            };
            let (probe, name, nominal) = match kind {
                ProbeKindArg::TraceZero => {
                    let Some(path) = matrix else {
                        return Err(Failure::Parse(
                            "--kind trace-zero requires --matrix with the diagonal generator"
                                .into(),
                        ));
                    };
                    let d: Matrix = load_json(path, "matrix")?;
                    let nominal = (d.n() - 1) as f64;
                    (ProbeKind::TraceZeroDiagonal(d), "trace-zero", nominal)
                }
                ProbeKindArg::Rotation => (ProbeKind::Rotation2D, "rotation", 2.0),
                _ => (ProbeKind::NilpotentShear2D, "shear", 1.0),
            };
            let table = divergence_probe(&probe, &radii)?;
            let passed =
                (table.fitted_exponent - nominal).abs() <= 0.05 && table.fit_quality >= 0.999;
            let csv = emit::growth_table_csv(&table);
            let run = GrowthRunReport {
                kind: name.into(),
                nominal_exponent: nominal,
                passed,
                table,
            };
            emit_report(&run, out, format, Some(csv))?;
            Ok(if passed { 0 } else { 3 })
        }
        ProbeKindArg::Lie => {
            let x: Matrix = match matrix {
                Some(p) => load_json(p, "matrix")?,
                None => Matrix::of([[0.0, 1.0], [0.0, 0.0]]),
            };
            let y: Matrix = match matrix_b {
                Some(p) => load_json(p, "matrix")?,
                None => x.transpose(),
            };
            let ms: Vec<u32> = match m_values {
                Some(s) => parse_list(s, "m value")?,
                None => (3..=10).map(|k| 1u32 << k).collect(),
            };
            let table = lie_convergence_probe(&x, &y, &ms)?;
            let ratios: Vec<f64> = table.windows(2).map(|w| w[0].1 / w[1].1).collect();
            let passed = ratios.iter().all(|r| (1.6..=2.4).contains(r));
            let csv = emit::lie_table_csv(&table);
            let run = LieRunReport {
                passed,
                ratios,
                table,
            };
            emit_report(&run, out, format, Some(csv))?;
            Ok(if passed { 0 } else { 3 })
        }
        ProbeKindArg::Orbit => {
            let Some(path) = matrix else {
                return Err(Failure::Parse("--kind orbit requires --matrix".into()));
            };
            if samples < 1 {
                return Err(Failure::Parse("orbit probe requires samples >= 1".into()));
            }
            let x: Matrix = load_json(path, "matrix")?;
            let g = GroupDescriptor::from_generator(&x)?;
            let n = g.dim();
            let mut rows = Vec::with_capacity(samples);
            let mut max_residual = 0.0f64;
            for i in 0..samples {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64 + 1);
                let e = -3.0 + 6.0 * ((i as f64) + rng.gen::<f64>()) / samples as f64;
                let r = 10f64.powf(e);
                let xi: Vec<f64> = {
                    let mut v: Vec<f64>;
                    loop {
                        v = (0..n)
                            .map(|_| {
                                let u1: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
                                let u2: f64 = rng.gen();
                                (-2.0 * u1.ln()).sqrt()
                                    * (2.0 * std::f64::consts::PI * u2).cos()
                            })
                            .collect();
                        let nv = norm2(&v);
                        if nv > 1e-6 {
                            v.iter_mut().for_each(|a| *a *= r / nv);
                            break;
                        }
                    }
                    v
                };
                let oc = g.orbit_decompose(&xi)?;
                let back = g.orbit_point(oc.t, &oc.v);
                let diff: Vec<f64> = back.iter().zip(&xi).map(|(a, b)| a - b).collect();
                let residual = norm2(&diff) / norm2(&xi);
                max_residual = max_residual.max(residual);
                rows.push(OrbitProbeSample {
                    t: oc.t,
                    v: oc.v,
                    xi_norm: norm2(&xi),
                    residual,
                });
            }
            let passed = max_residual <= 1e-9;
            let mut csv = String::from("t,");
            for i in 0..n {
                csv.push_str(&format!("v_{i},"));
            }
            csv.push_str("xi_norm\n");
            for s in &rows {
                csv.push_str(&format!("{:.16e},", s.t));
                for v in &s.v {
                    csv.push_str(&format!("{v:.16e},"));
                }
                csv.push_str(&format!("{:.16e}\n", s.xi_norm));
            }
            let run = OrbitRunReport {
                seed,
                passed,
                max_residual,
                samples: rows,
            };
            emit_report(&run, out, format, Some(csv))?;
            Ok(if passed { 0 } else { 3 })
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ReconstructReport {
    relative_error: f64,
    threshold: f64,
    passed: bool,
    center: Vec<f64>,
    width: f64,
    grid: GridSpec,
}

fn run_reconstruct(
    wavelet: &Path,
    matrix: &Path,
    tol: f64,
    grid_points: usize,
    out: &Option<PathBuf>,
) -> RunResult {
    if !(tol > 0.0) || grid_points < 2 {
        return Err(Failure::Parse(
            "reconstruct requires tol > 0 and grid-points >= 2".into(),
        ));
    }
    let w: WaveletSpec = load_json(wavelet, "wavelet spec")?;
    let x: Matrix = load_json(matrix, "matrix")?;
    let n = w.dim();
    // Gaussian bump away from the origin; Δ ≡ 1 a.e. for admissible specs
    // makes the exact placement immaterial.
    let center: Vec<f64> = (0..n).map(|_| 0.7 / (n as f64).sqrt()).collect();
    let width = 0.25;
    let grid = GridSpec {
        lo: center.iter().map(|c| c - 2.0 * width).collect(),
        hi: center.iter().map(|c| c + 2.0 * width).collect(),
        per_axis: grid_points,
    };
    let c = center.clone();
    let f_hat = move |xi: &[f64]| {
        let d2: f64 = xi.iter().zip(&c).map(|(a, b)| (a - b) * (a - b)).sum();
        (-d2 / (2.0 * width * width)).exp()
    };
    let relative_error = reconstruction_check(&w, &x, f_hat, &grid, tol)?;
    let threshold = 100.0 * tol;
    let passed = relative_error <= threshold;
    let report = ReconstructReport {
        relative_error,
        threshold,
        passed,
        center,
        width,
        grid,
    };
    let json = emit::to_json(&report)?;
    println!("{json}");
    write_out(out, &json)?;
    Ok(if passed { 0 } else { 3 })
}
