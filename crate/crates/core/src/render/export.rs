//! File outputs: point-cloud CSV, P1 bitmaps and SVG polylines.
//!
//! Every writer goes through [`atomic_write`], which writes a sibling
//! temporary file and renames it over the target.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use super::config::Viewport;
use crate::engine::PointCloud;
use crate::error::{Error, Result};
use crate::geometry::SampledGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArtifactKind {
    CloudCsv,
    Raster,
    VectorPolyline,
    CertificateReport,
    VerifyReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureArtifact {
    pub kind: ArtifactKind,
    pub path: PathBuf,
    pub metadata: BTreeMap<String, Value>,
}

impl FigureArtifact {
    pub fn new(kind: ArtifactKind, path: impl Into<PathBuf>) -> Self {
        Self {
            kind,
            path: path.into(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.metadata.insert(
            key.to_string(),
            serde_json::to_value(value).expect("metadata values serialize"),
        );
        self
    }
}

pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidArgument(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut file = std::fs::File::create(&tmp)?;
        file.write_all(bytes)?;
        file.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    result.map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        Error::io(path, e)
    })
}

/// CSV text for `cloud`: header `u,v,x,y,z`, rows sorted by `u` then `v`.
pub fn point_cloud_csv(cloud: &PointCloud) -> String {
    let mut rows: Vec<_> = cloud.points().iter().collect();
    rows.sort_by(|p, q| p.u().total_cmp(&q.u()).then(p.v().total_cmp(&q.v())));
    let mut out = String::from("u,v,x,y,z\n");
    for p in rows {
        let _ = writeln!(out, "{},{},{},{},{}", p.u(), p.v(), p.x(), p.y(), p.z());
    }
    out
}

pub fn write_point_cloud_csv(cloud: &PointCloud, path: &Path) -> Result<FigureArtifact> {
    atomic_write(path, point_cloud_csv(cloud).as_bytes())?;
    Ok(FigureArtifact::new(ArtifactKind::CloudCsv, path).with("points", cloud.len()))
}

/// CSV text for homogeneous triples (slice exports): header `x,y,z`, input order.
pub fn triples_csv(points: &[[f64; 3]]) -> String {
    let mut out = String::from("x,y,z\n");
    for [x, y, z] in points {
        let _ = writeln!(out, "{x},{y},{z}");
    }
    out
}

/// Binary occupancy image, row-major with the origin at the top left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl Raster {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            bits: vec![false; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, col: usize, row: usize) -> bool {
        self.bits[row * self.width + col]
    }

    pub fn set(&mut self, col: usize, row: usize) {
        self.bits[row * self.width + col] = true;
    }

    pub fn lit_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn lit_pixels(&self) -> Vec<(usize, usize)> {
        (0..self.height)
            .flat_map(|r| (0..self.width).map(move |c| (c, r)))
            .filter(|&(c, r)| self.get(c, r))
            .collect()
    }

    pub fn column_lit(&self, col: usize) -> bool {
        (0..self.height).any(|r| self.get(col, r))
    }

    /// Plain PBM text: `P1`, dimensions, then one line of digits per row.
    pub fn to_pbm(&self) -> String {
        let mut out = format!("P1\n{} {}\n", self.width, self.height);
        for row in self.bits.chunks(self.width) {
            let line: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Pixel holding canonical `(u, v)`, or `None` outside the viewport.
/// The right and bottom edges belong to the last column and row.
pub fn pixel_of(viewport: &Viewport, w: usize, h: usize, u: f64, v: f64) -> Option<(usize, usize)> {
    let Viewport {
        u_min,
        u_max,
        v_min,
        v_max,
    } = *viewport;
    if !(u >= u_min && u <= u_max && v >= v_min && v <= v_max) {
        return None;
    }
    let col = ((u - u_min) / (u_max - u_min) * w as f64).floor() as usize;
    let row = ((v_max - v) / (v_max - v_min) * h as f64).floor() as usize;
    Some((col.min(w - 1), row.min(h - 1)))
}

pub fn rasterize(cloud: &PointCloud, viewport: &Viewport, w: usize, h: usize) -> Result<Raster> {
    let vp = Viewport::new(viewport.u_min, viewport.u_max, viewport.v_min, viewport.v_max)?;
    if w == 0 || h == 0 {
        return Err(Error::DegenerateViewport(format!("{w} x {h} pixels")));
    }
    let mut raster = Raster::new(w, h);
    for p in cloud.points() {
        if let Some((c, r)) = pixel_of(&vp, w, h, p.u(), p.v()) {
            raster.set(c, r);
        }
    }
    Ok(raster)
}

pub fn write_raster(raster: &Raster, path: &Path) -> Result<FigureArtifact> {
    atomic_write(path, raster.to_pbm().as_bytes())?;
    Ok(FigureArtifact::new(ArtifactKind::Raster, path)
        .with("width", raster.width)
        .with("height", raster.height)
        .with("lit", raster.lit_count()))
}

/// SVG document with one polyline through the canonical nodes of `graph`.
/// The y axis is flipped so that larger `v` is drawn higher.
pub fn vector_polyline(graph: &SampledGraph, viewport: &Viewport) -> String {
    let Viewport {
        u_min,
        u_max,
        v_min,
        v_max,
    } = *viewport;
    let mut pts = String::new();
    for i in 0..graph.len() {
        if i > 0 {
            pts.push(' ');
        }
        let _ = write!(pts, "{},{}", graph.u(i), -graph.v(i));
    }
    let stroke = (u_max - u_min).max(v_max - v_min) / 1000.0;
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n\
         <polyline fill=\"none\" stroke=\"black\" stroke-width=\"{stroke}\" points=\"{pts}\"/>\n\
         </svg>\n",
        u_min,
        -v_max,
        u_max - u_min,
        v_max - v_min
    )
}

pub fn write_vector_polyline(
    graph: &SampledGraph,
    viewport: &Viewport,
    path: &Path,
) -> Result<FigureArtifact> {
    let vp = Viewport::new(viewport.u_min, viewport.u_max, viewport.v_min, viewport.v_max)?;
    atomic_write(path, vector_polyline(graph, &vp).as_bytes())?;
    Ok(FigureArtifact::new(ArtifactKind::VectorPolyline, path).with("nodes", graph.len()))
}

/// Parses the `points` attribute of an SVG written by [`write_vector_polyline`]
/// back into canonical `(u, v)` pairs.
pub fn parse_polyline(svg: &str) -> Option<Vec<(f64, f64)>> {
    let start = svg.find("points=\"")? + "points=\"".len();
    let end = start + svg[start..].find('"')?;
    svg[start..end]
        .split_whitespace()
        .map(|pair| {
            let (u, v) = pair.split_once(',')?;
            Some((u.parse().ok()?, -v.parse::<f64>().ok()?))
        })
        .collect()
}
