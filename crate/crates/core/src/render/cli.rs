//! Command-line surface.
//!
//! Every subcommand reads a job file (`--config`) and prints a JSON summary
//! on stdout, except `build`, which prints the coefficient table as CSV.
//! Failures print one JSON line `{"error": kind, "exit_code": n, "message": ..}`
//! on stderr and exit with 1 (validation), 2 (non-convergence) or 3 (I/O).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::config::{emit_config, parse_config, JobSpec};
use super::export::{
    atomic_write, rasterize, triples_csv, write_point_cloud_csv, write_raster, write_vector_polyline,
    ArtifactKind, FigureArtifact,
};
use crate::engine::{
    chaos_game, classical_fif_oracle, deterministic_attractor, evaluate_rpfif, rb_fixed_point,
    slice_at_level, AttractorOptions, ClassicalFifSpec, IterationTrace, PointCloud,
};
use crate::error::{Error, Result};
use crate::geometry::SampledGraph;
use crate::projective::AxisPoint10;
use crate::rpifs::{build_ifs, lipschitz_residuals, BuildOptions, Rpifs};

#[derive(Debug, Parser)]
#[command(name = "rpfif", version, about = "Real projective fractal interpolation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Common {
    /// Job file (TOML).
    #[arg(long)]
    pub config: PathBuf,
    /// Override the vertical scale factors, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub scales: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AttractMode {
    Chaos,
    Deterministic,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the coefficient table a, b, c, d, f per map.
    Build {
        #[command(flatten)]
        common: Common,
    },
    /// Contraction certificate for the d_theta metric.
    Certificate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        theta: Option<f64>,
    },
    /// Fixed point of the Read-Bajraktarevic operator as a CSV graph.
    FixedPoint {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        grid_m: Option<usize>,
    },
    /// Attractor point cloud as CSV.
    Attract {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "chaos")]
        mode: AttractMode,
        /// Hutchinson steps in deterministic mode, starting from the data points.
        #[arg(long, default_value_t = 6)]
        steps: usize,
        /// Snap resolution for deterministic mode.
        #[arg(long)]
        snap: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        n_points: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Value of the interpolation function at one abscissa.
    Evaluate {
        #[command(flatten)]
        common: Common,
        /// Canonical abscissa, or the x coordinate when --z is given.
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        z: f64,
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
    /// Join-up, Lipschitz-identity and oracle-equivalence checks.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Raster and vector figures and slice exports.
    Render {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        raster: Option<PathBuf>,
        #[arg(long)]
        vector: Option<PathBuf>,
        /// Slice level z0; may be repeated.
        #[arg(long = "slice", allow_hyphen_values = true)]
        slices: Vec<f64>,
        /// Path prefix for slice files `<prefix>_z<z0>.csv`.
        #[arg(long)]
        slice_prefix: Option<PathBuf>,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Build { common }
            | Command::Certificate { common, .. }
            | Command::FixedPoint { common, .. }
            | Command::Attract { common, .. }
            | Command::Evaluate { common, .. }
            | Command::Verify { common, .. }
            | Command::Render { common, .. } => common,
        }
    }
}

pub fn load_job(common: &Common) -> Result<JobSpec> {
    let text = std::fs::read_to_string(&common.config).map_err(|e| Error::io(&common.config, e))?;
    let spec = parse_config(&text)?;
    match &common.scales {
        Some(s) => spec.with_scales(s.clone()),
        None => Ok(spec),
    }
}

fn build(spec: &JobSpec) -> Result<Rpifs> {
    build_ifs(
        &spec.data()?,
        &spec.scales,
        BuildOptions {
            allow_degenerate: spec.allow_degenerate,
        },
    )
}

fn output_path(flag: &Option<PathBuf>, configured: &Option<PathBuf>, what: &str) -> Result<PathBuf> {
    flag.clone()
        .or_else(|| configured.clone())
        .ok_or_else(|| Error::InvalidArgument(format!("no output path: pass --out or set output.{what}")))
}

fn graph_cloud(graph: &SampledGraph) -> Result<PointCloud> {
    PointCloud::new(graph.points())
}

fn fixed_point(ifs: &Rpifs, spec: &JobSpec) -> Result<(SampledGraph, IterationTrace)> {
    rb_fixed_point(ifs, spec.grid_m, spec.tolerance, spec.max_iter)
}

fn job_metadata(spec: &JobSpec) -> Value {
    emit_config(spec).map(Value::String).unwrap_or(Value::Null)
}

fn print_json(out: &mut dyn Write, value: &Value) -> Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("json values serialize")
    )
    .map_err(|e| Error::io("<stdout>", e))
}

/// Slice file name for level `z0`.
pub fn slice_path(prefix: &Path, z0: f64) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(format!("_z{z0}.csv"));
    PathBuf::from(name)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let spec = load_job(cli.command.common())?;
    let ifs = build(&spec)?;
    match cli.command {
        Command::Build { .. } => {
            let mut table = String::from("n,a,b,c,d,f\n");
            for (i, m) in ifs.maps().iter().enumerate() {
                table.push_str(&format!("{},{},{},{},{},{}\n", i + 1, m.a, m.b, m.c, m.d, m.f));
            }
            out.write_all(table.as_bytes())
                .map_err(|e| Error::io("<stdout>", e))
        }
        Command::Certificate { theta, .. } => {
            let cert = ifs.contraction_certificate(theta.or(spec.theta))?;
            let art = FigureArtifact::new(ArtifactKind::CertificateReport, "<stdout>")
                .with("certificate", &cert)
                .with("job", job_metadata(&spec));
            print_json(out, &serde_json::to_value(&art).expect("serializable"))
        }
        Command::FixedPoint {
            out: path, grid_m, ..
        } => {
            let path = output_path(&path, &spec.output.graph, "graph")?;
            let mut spec = spec;
            if let Some(m) = grid_m {
                spec.grid_m = m;
            }
            let (graph, trace) = fixed_point(&ifs, &spec)?;
            let art = write_point_cloud_csv(&graph_cloud(&graph)?, &path)?
                .with("grid_m", spec.grid_m)
                .with("trace", &trace)
                .with("job", job_metadata(&spec));
            print_json(out, &serde_json::to_value(&art).expect("serializable"))?;
            if !trace.converged {
                return Err(Error::NotConverged {
                    iterations: trace.iterations,
                    last_delta: trace.last_delta().unwrap_or(f64::NAN),
                });
            }
            Ok(())
        }
        Command::Attract {
            mode,
            steps,
            snap,
            seed,
            n_points,
            out: path,
            ..
        } => {
            let path = output_path(&path, &spec.output.cloud, "cloud")?;
            let mut spec = spec;
            if let Some(s) = seed {
                spec.chaos.seed = s;
            }
            if let Some(n) = n_points {
                spec.chaos.n_points = n;
            }
            let (cloud, art_meta) = match mode {
                AttractMode::Chaos => {
                    let c = spec.chaos;
                    (
                        chaos_game(&ifs, c.n_points, c.burn_in, c.seed)?,
                        json!({"mode": "chaos", "seed": c.seed, "n_points": c.n_points, "burn_in": c.burn_in}),
                    )
                }
                AttractMode::Deterministic => {
                    let initial = PointCloud::new(ifs.data().points().to_vec())?;
                    let opts = AttractorOptions {
                        snap,
                        ..AttractorOptions::default()
                    };
                    (
                        deterministic_attractor(&ifs, &initial, steps, opts)?,
                        json!({"mode": "deterministic", "steps": steps, "snap": snap}),
                    )
                }
            };
            let art = write_point_cloud_csv(&cloud, &path)?
                .with("attractor", art_meta)
                .with("job", job_metadata(&spec));
            print_json(out, &serde_json::to_value(&art).expect("serializable"))
        }
        Command::Evaluate { x, z, depth, .. } => {
            let p = AxisPoint10::new(x, z)?;
            let v = evaluate_rpfif(&ifs, &p, depth)?;
            print_json(
                out,
                &json!({"x": x, "z": z, "u": p.u(), "v": v.v(), "depth": depth}),
            )
        }
        Command::Verify { samples, .. } => {
            let report = verify(&ifs, &spec, samples)?;
            let passed = report["passed"].as_bool().unwrap_or(false);
            let art = FigureArtifact::new(ArtifactKind::VerifyReport, "<stdout>")
                .with("checks", &report)
                .with("job", job_metadata(&spec));
            print_json(out, &serde_json::to_value(&art).expect("serializable"))?;
            if !passed {
                return Err(Error::VerificationFailed("one or more checks failed".into()));
            }
            Ok(())
        }
        Command::Render {
            raster,
            vector,
            slices,
            slice_prefix,
            ..
        } => {
            let raster_path = raster.or_else(|| spec.output.raster.clone());
            let vector_path = vector.or_else(|| spec.output.vector.clone());
            let levels = if slices.is_empty() {
                spec.slices.clone()
            } else {
                slices
            };
            let prefix = slice_prefix.or_else(|| spec.output.slices.clone());
            if raster_path.is_none() && vector_path.is_none() && levels.is_empty() {
                return Err(Error::InvalidArgument(
                    "nothing to render: give --raster, --vector or --slice (or set them in [output])".into(),
                ));
            }
            if !levels.is_empty() && prefix.is_none() {
                return Err(Error::InvalidArgument(
                    "slice exports need --slice-prefix or output.slices".into(),
                ));
            }
            let (graph, trace) = fixed_point(&ifs, &spec)?;
            if !trace.converged {
                return Err(Error::NotConverged {
                    iterations: trace.iterations,
                    last_delta: trace.last_delta().unwrap_or(f64::NAN),
                });
            }
            let mut artifacts = Vec::new();
            let graph_points = graph_cloud(&graph)?;
            if let Some(path) = raster_path {
                let mut cloud = graph_points.clone();
                if spec.chaos.n_points > 0 {
                    let c = spec.chaos;
                    cloud = cloud.merge(chaos_game(&ifs, c.n_points, c.burn_in, c.seed)?);
                }
                let r = rasterize(&cloud, &spec.viewport, spec.width, spec.height)?;
                artifacts.push(
                    write_raster(&r, &path)?
                        .with("seed", spec.chaos.seed)
                        .with("iterations", trace.iterations),
                );
            }
            if let Some(path) = vector_path {
                artifacts.push(
                    write_vector_polyline(&graph, &spec.viewport, &path)?
                        .with("iterations", trace.iterations),
                );
            }
            if let Some(prefix) = prefix {
                for z0 in levels {
                    let pts = slice_at_level(&graph_points, z0)?;
                    let path = slice_path(&prefix, z0);
                    atomic_write(&path, triples_csv(&pts).as_bytes())?;
                    artifacts.push(
                        FigureArtifact::new(ArtifactKind::CloudCsv, path)
                            .with("slice", z0)
                            .with("points", pts.len()),
                    );
                }
            }
            print_json(
                out,
                &json!({
                    "artifacts": artifacts,
                    "trace": trace,
                    "job": job_metadata(&spec),
                }),
            )
        }
    }
}

/// Runs the three verification checks and returns a JSON report with a
/// top-level `passed` flag.
pub fn verify(ifs: &Rpifs, spec: &JobSpec, samples: usize) -> Result<Value> {
    let data = ifs.data();
    let scale = 1.0
        + data
            .canonical_nodes()
            .iter()
            .map(|&(u, v)| u.abs().max(v.abs()))
            .fold(0.0, f64::max);

    let joinup = ifs.verify_joinup(1e-12 * scale);

    let lip = lipschitz_residuals(ifs, samples, spec.chaos.seed);
    let lip_tol = 1e-10 * scale;
    let lip_ok = lip.max_residual() <= lip_tol;

    let (graph, trace) = fixed_point(ifs, spec)?;
    let classical = ClassicalFifSpec::from_nodes(&data.canonical_nodes(), &spec.scales)?;
    let oracle = classical_fif_oracle(&classical, spec.grid_m, spec.tolerance, spec.max_iter)?;
    let oracle_gap = graph
        .vs()
        .iter()
        .zip(&oracle.ys)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let bound = 1.0 - ifs.d_bound();
    let oracle_tol = 1e-9 * scale + 2.0 * spec.tolerance / bound;
    let oracle_ok = trace.converged && oracle.converged && oracle_gap <= oracle_tol;

    let pinned = data.canonical_nodes().iter().all(|&(x, y)| {
        graph
            .node_index(x)
            .is_some_and(|i| (graph.v(i) - y).abs() <= 1e-9 * scale)
    });

    let passed = joinup.passed() && lip_ok && oracle_ok && pinned;
    Ok(json!({
        "passed": passed,
        "joinup": {"passed": joinup.passed(), "tol": joinup.tol, "max_residual": joinup.max_residual},
        "lipschitz": {"passed": lip_ok, "tol": lip_tol, "report": lip},
        "oracle": {
            "passed": oracle_ok,
            "tol": oracle_tol,
            "max_gap": oracle_gap,
            "iterations": trace.iterations,
            "oracle_iterations": oracle.iterations,
        },
        "interpolation": {"passed": pinned},
    }))
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn cli_main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{e}");
            let _ = writeln!(
                err,
                "{}",
                json!({"error": "validation", "exit_code": 1, "message": e.kind().to_string()})
            );
            return 1;
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let kind = e.kind();
            let _ = writeln!(
                err,
                "{}",
                json!({"error": kind.as_str(), "exit_code": kind.exit_code(), "message": e.to_string()})
            );
            kind.exit_code()
        }
    }
}

pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    cli_main_with(args, &mut stdout.lock(), &mut stderr.lock())
}
