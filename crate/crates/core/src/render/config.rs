//! Job configuration files.
//!
//! A job is a TOML document. Only `points` and `scales` are required; every
//! other key has a documented default that is filled in by [`parse_config`]
//! and written back out by [`emit_config`]. Unknown keys are rejected.
//!
//! ```toml
//! points = [[-2.0, 1.0, 1.0], [-1.0, -1.0, 1.0], [0.0, 1.0, 1.0],
//!           [1.0, -1.0, 1.0], [2.0, 1.0, 1.0]]   # homogeneous (x, y, z)
//! scales = [0.3, 0.3, 0.3, 0.3]                  # one d_n per map
//! theta = 0.5                # optional; d_theta weight for the certificate
//! allow_degenerate = false   # permit d_n = 0
//! grid_m = 1025              # default 256 * N + 1
//! tolerance = 1e-10          # fixed-point stopping threshold
//! max_iter = 200
//! slices = [1.0, 2.0, -1.0]  # levels z0 exported by `render`
//!
//! [chaos]
//! n_points = 100000
//! burn_in = 50
//! seed = 0
//!
//! [viewport]                 # canonical coordinate window
//! u = [-2.2, 2.2]            # default: data abscissae padded by 5%
//! v = [-2.0, 2.0]            # default: data ordinates padded by 50%
//!
//! [raster]
//! width = 512
//! height = 384
//!
//! [output]                   # all optional; CLI flags override
//! graph = "graph.csv"
//! cloud = "cloud.csv"
//! raster = "figure.pbm"
//! vector = "figure.svg"
//! slices = "slice"           # files slice_z<z0>.csv
//! ```

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::engine::{CHAOS_BURN_IN, DEFAULT_MAX_ITER, DEFAULT_PER_SEGMENT, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::projective::check_theta;
use crate::rpifs::InterpolationData;

pub const DEFAULT_CHAOS_POINTS: usize = 100_000;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_WIDTH: usize = 512;
pub const DEFAULT_HEIGHT: usize = 384;
pub const MIN_RASTER_DIM: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChaosParams {
    pub n_points: usize,
    pub burn_in: usize,
    pub seed: u64,
}

/// Canonical-coordinate window `[u_min, u_max] × [v_min, v_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl Viewport {
    pub fn new(u_min: f64, u_max: f64, v_min: f64, v_max: f64) -> Result<Self> {
        let all_finite = [u_min, u_max, v_min, v_max].iter().all(|c| c.is_finite());
        if !all_finite || !(u_min < u_max) || !(v_min < v_max) {
            return Err(Error::DegenerateViewport(format!(
                "[{u_min}, {u_max}] x [{v_min}, {v_max}]"
            )));
        }
        Ok(Self {
            u_min,
            u_max,
            v_min,
            v_max,
        })
    }

    /// Data abscissae padded by 5% of their span; ordinates by 50% (at least 0.5).
    pub fn around(data: &InterpolationData) -> Self {
        let nodes = data.canonical_nodes();
        let (u0, u1) = (nodes[0].0, nodes[nodes.len() - 1].0);
        let v0 = nodes.iter().map(|n| n.1).fold(f64::INFINITY, f64::min);
        let v1 = nodes.iter().map(|n| n.1).fold(f64::NEG_INFINITY, f64::max);
        let pu = 0.05 * (u1 - u0);
        let pv = (0.5 * (v1 - v0)).max(0.5);
        Self {
            u_min: u0 - pu,
            u_max: u1 + pu,
            v_min: v0 - pv,
            v_max: v1 + pv,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cloud: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raster: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slices: Option<PathBuf>,
}

/// A fully resolved job: validated, with every default filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub points: Vec<[f64; 3]>,
    pub scales: Vec<f64>,
    pub theta: Option<f64>,
    pub allow_degenerate: bool,
    pub grid_m: usize,
    pub tolerance: f64,
    pub max_iter: usize,
    pub chaos: ChaosParams,
    pub viewport: Viewport,
    pub width: usize,
    pub height: usize,
    pub output: OutputPaths,
    pub slices: Vec<f64>,
}

impl JobSpec {
    pub fn data(&self) -> Result<InterpolationData> {
        InterpolationData::from_triples(&self.points)
    }

    /// Replaces the scales and re-validates.
    pub fn with_scales(mut self, scales: Vec<f64>) -> Result<Self> {
        self.scales = scales;
        check_scales(&self.scales, self.points.len())?;
        Ok(self)
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    points: Option<Vec<Vec<f64>>>,
    scales: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
    allow_degenerate: Option<bool>,
    grid_m: Option<usize>,
    tolerance: Option<f64>,
    max_iter: Option<usize>,
    slices: Option<Vec<f64>>,
    chaos: Option<RawChaos>,
    viewport: Option<RawViewport>,
    raster: Option<RawRaster>,
    output: Option<OutputPaths>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawChaos {
    n_points: Option<usize>,
    burn_in: Option<usize>,
    seed: Option<u64>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawViewport {
    u: Option<[f64; 2]>,
    v: Option<[f64; 2]>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawRaster {
    width: Option<usize>,
    height: Option<usize>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.chars().rev().take_while(|&c| c != '\n').count() + 1;
    (line, column)
}

fn check_scales(scales: &[f64], points: usize) -> Result<()> {
    if scales.len() + 1 != points {
        return Err(Error::field(
            "scales",
            format!(
                "{points} points need {} scale factors, got {}",
                points.saturating_sub(1),
                scales.len()
            ),
        ));
    }
    if let Some(i) = scales.iter().position(|d| !(d.abs() < 1.0)) {
        return Err(Error::field(
            format!("scales[{i}]"),
            format!("|d| must be below 1, got {}", scales[i]),
        ));
    }
    Ok(())
}

pub fn parse_config(text: &str) -> Result<JobSpec> {
    let raw: RawJob = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map(|s| line_col(text, s.start)).unwrap_or((1, 1));
        Error::ConfigParse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    resolve(raw)
}

fn resolve(raw: RawJob) -> Result<JobSpec> {
    let points_raw = raw
        .points
        .ok_or_else(|| Error::field("points", "missing required field"))?;
    let mut points = Vec::with_capacity(points_raw.len());
    for (i, p) in points_raw.iter().enumerate() {
        let t: [f64; 3] = p.as_slice().try_into().map_err(|_| {
            Error::field(
                format!("points[{i}]"),
                format!("expected 3 coordinates, got {}", p.len()),
            )
        })?;
        points.push(t);
    }
    let data = InterpolationData::from_triples(&points).map_err(|e| Error::field("points", e.to_string()))?;

    let scales = raw
        .scales
        .ok_or_else(|| Error::field("scales", "missing required field"))?;
    check_scales(&scales, points.len())?;

    if let Some(t) = raw.theta {
        check_theta(t).map_err(|e| Error::field("theta", e.to_string()))?;
    }

    let n = data.map_count();
    let grid_m = raw.grid_m.unwrap_or(DEFAULT_PER_SEGMENT * n + 1);
    if grid_m < n + 1 || (grid_m - 1) % n != 0 {
        return Err(Error::field(
            "grid_m",
            format!("must be k*{n} + 1 so that every data abscissa is a grid node"),
        ));
    }
    let tolerance = raw.tolerance.unwrap_or(DEFAULT_TOL);
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::field("tolerance", "must be positive"));
    }
    let max_iter = raw.max_iter.unwrap_or(DEFAULT_MAX_ITER);
    if max_iter == 0 {
        return Err(Error::field("max_iter", "must be at least 1"));
    }

    let chaos = raw.chaos.unwrap_or(RawChaos {
        n_points: None,
        burn_in: None,
        seed: None,
    });
    let chaos = ChaosParams {
        n_points: chaos.n_points.unwrap_or(DEFAULT_CHAOS_POINTS),
        burn_in: chaos.burn_in.unwrap_or(CHAOS_BURN_IN),
        seed: chaos.seed.unwrap_or(DEFAULT_SEED),
    };

    let auto = Viewport::around(&data);
    let (u, v) = raw.viewport.map(|vp| (vp.u, vp.v)).unwrap_or((None, None));
    let [u_min, u_max] = u.unwrap_or([auto.u_min, auto.u_max]);
    let [v_min, v_max] = v.unwrap_or([auto.v_min, auto.v_max]);
    let viewport =
        Viewport::new(u_min, u_max, v_min, v_max).map_err(|e| Error::field("viewport", e.to_string()))?;
    let (x0, xn) = (data.cx(0), data.cx(n));
    if viewport.u_min > x0 || viewport.u_max < xn {
        return Err(Error::field(
            "viewport.u",
            format!("must cover the data interval [{x0}, {xn}]"),
        ));
    }

    let (width, height) = raw.raster.map(|r| (r.width, r.height)).unwrap_or((None, None));
    let width = width.unwrap_or(DEFAULT_WIDTH);
    let height = height.unwrap_or(DEFAULT_HEIGHT);
    for (name, dim) in [("raster.width", width), ("raster.height", height)] {
        if dim < MIN_RASTER_DIM {
            return Err(Error::field(name, format!("must be at least {MIN_RASTER_DIM}")));
        }
    }

    let slices = raw.slices.unwrap_or_default();
    if let Some(i) = slices.iter().position(|z| !(z.is_finite() && *z != 0.0)) {
        return Err(Error::field(
            format!("slices[{i}]"),
            "slice level must be nonzero",
        ));
    }

    Ok(JobSpec {
        points,
        scales,
        theta: raw.theta,
        allow_degenerate: raw.allow_degenerate.unwrap_or(false),
        grid_m,
        tolerance,
        max_iter,
        chaos,
        viewport,
        width,
        height,
        output: raw.output.unwrap_or_default(),
        slices,
    })
}

/// Writes `spec` with every field explicit; `parse_config` reads it back unchanged.
/// TOML integers are signed, so seeds above `i64::MAX` cannot be written.
pub fn emit_config(spec: &JobSpec) -> Result<String> {
    if i64::try_from(spec.chaos.seed).is_err() {
        return Err(Error::field("chaos.seed", "must not exceed 2^63 - 1"));
    }
    let raw = RawJob {
        points: Some(spec.points.iter().map(|p| p.to_vec()).collect()),
        scales: Some(spec.scales.clone()),
        theta: spec.theta,
        allow_degenerate: Some(spec.allow_degenerate),
        grid_m: Some(spec.grid_m),
        tolerance: Some(spec.tolerance),
        max_iter: Some(spec.max_iter),
        slices: Some(spec.slices.clone()),
        chaos: Some(RawChaos {
            n_points: Some(spec.chaos.n_points),
            burn_in: Some(spec.chaos.burn_in),
            seed: Some(spec.chaos.seed),
        }),
        viewport: Some(RawViewport {
            u: Some([spec.viewport.u_min, spec.viewport.u_max]),
            v: Some([spec.viewport.v_min, spec.viewport.v_max]),
        }),
        raster: Some(RawRaster {
            width: Some(spec.width),
            height: Some(spec.height),
        }),
        output: Some(spec.output.clone()),
    };
    toml::to_string(&raw).map_err(|e| Error::field("", e.to_string()))
}
