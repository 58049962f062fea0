//! Projective intervals and rectangles, uniform sampling, and functions from
//! a projective interval into `H01` represented on a grid.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::projective::{AxisPoint01, AxisPoint10, ProjectivePoint};

/// Relative tolerance used when deciding whether two abscissae are the same node.
pub const NODE_TOL: f64 = 1e-12;

pub(crate) fn same_node(a: f64, b: f64) -> bool {
    (a - b).abs() <= NODE_TOL * (1.0 + a.abs().max(b.abs()))
}

/// The set `{p in H10 : lo ⪯ p ⪯ hi}` with `lo ≺ hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveInterval {
    lo: AxisPoint10,
    hi: AxisPoint10,
}

impl ProjectiveInterval {
    pub fn new(lo: AxisPoint10, hi: AxisPoint10) -> Result<Self> {
        if lo.compare(&hi) != Ordering::Less {
            return Err(Error::DegenerateInterval {
                lo: lo.u(),
                hi: hi.u(),
            });
        }
        Ok(Self { lo, hi })
    }

    pub fn from_canonical(lo: f64, hi: f64) -> Result<Self> {
        Self::new(AxisPoint10::new(lo, 1.0)?, AxisPoint10::new(hi, 1.0)?)
    }

    pub fn lo(&self) -> AxisPoint10 {
        self.lo
    }

    pub fn hi(&self) -> AxisPoint10 {
        self.hi
    }

    /// Width of the interval in canonical coordinates.
    pub fn width(&self) -> f64 {
        self.hi.u() - self.lo.u()
    }

    pub fn contains(&self, p: &AxisPoint10) -> bool {
        self.lo.compare(p) != Ordering::Greater && p.compare(&self.hi) != Ordering::Greater
    }

    /// `m` canonical points equally spaced in `x/z`, both endpoints included.
    pub fn sample(&self, m: usize) -> Result<Vec<AxisPoint10>> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!(
                "sample count must be at least 2, got {m}"
            )));
        }
        Ok(sample_breakpoints(&[self.lo.u(), self.hi.u()], m - 1))
    }
}

pub fn make_interval(lo: AxisPoint10, hi: AxisPoint10) -> Result<ProjectiveInterval> {
    ProjectiveInterval::new(lo, hi)
}

pub fn interval_contains(interval: &ProjectiveInterval, p: &AxisPoint10) -> bool {
    interval.contains(p)
}

pub fn sample_interval(interval: &ProjectiveInterval, m: usize) -> Result<Vec<AxisPoint10>> {
    interval.sample(m)
}

/// Uniform subdivision of each `[breaks[i], breaks[i+1]]` into `per_segment`
/// steps. Every breakpoint is reproduced exactly as a node.
pub fn sample_breakpoints(breaks: &[f64], per_segment: usize) -> Vec<AxisPoint10> {
    assert!(breaks.len() >= 2 && per_segment >= 1);
    let mut out = Vec::with_capacity((breaks.len() - 1) * per_segment + 1);
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        for k in 0..per_segment {
            let t = k as f64 / per_segment as f64;
            out.push(AxisPoint10::from_canonical(a + (b - a) * t));
        }
    }
    out.push(AxisPoint10::from_canonical(breaks[breaks.len() - 1]));
    out
}

/// `x_interval × [y_lo, y_hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveRectangle {
    x_interval: ProjectiveInterval,
    y_lo: AxisPoint01,
    y_hi: AxisPoint01,
}

impl ProjectiveRectangle {
    pub fn new(x_interval: ProjectiveInterval, y_lo: AxisPoint01, y_hi: AxisPoint01) -> Result<Self> {
        if y_lo.compare(&y_hi) != Ordering::Less {
            return Err(Error::DegenerateInterval {
                lo: y_lo.v(),
                hi: y_hi.v(),
            });
        }
        Ok(Self {
            x_interval,
            y_lo,
            y_hi,
        })
    }

    pub fn x_interval(&self) -> &ProjectiveInterval {
        &self.x_interval
    }

    pub fn y_bounds(&self) -> (AxisPoint01, AxisPoint01) {
        (self.y_lo, self.y_hi)
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        let (h, v) = p.decompose();
        self.x_interval.contains(&h)
            && self.y_lo.compare(&v) != Ordering::Greater
            && v.compare(&self.y_hi) != Ordering::Greater
    }
}

pub fn rectangle_contains(rect: &ProjectiveRectangle, p: &ProjectivePoint) -> bool {
    rect.contains(p)
}

/// A function from a projective interval into `H01`, known at a strictly
/// increasing grid of canonical abscissae and linear in between.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGraph {
    abscissae: Vec<AxisPoint10>,
    values: Vec<AxisPoint01>,
}

impl SampledGraph {
    pub fn new(abscissae: Vec<AxisPoint10>, values: Vec<AxisPoint01>) -> Result<Self> {
        if abscissae.len() < 2 || abscissae.len() != values.len() {
            return Err(Error::InvalidGraph);
        }
        let abscissae: Vec<_> = abscissae.iter().map(AxisPoint10::canonicalize).collect();
        if abscissae.windows(2).any(|w| w[0].u() >= w[1].u()) {
            return Err(Error::InvalidGraph);
        }
        let values = values.iter().map(AxisPoint01::canonicalize).collect();
        Ok(Self { abscissae, values })
    }

    pub fn from_canonical(us: &[f64], vs: &[f64]) -> Result<Self> {
        if us.iter().chain(vs).any(|c| !c.is_finite()) {
            return Err(Error::InvalidGraph);
        }
        Self::new(
            us.iter().copied().map(AxisPoint10::from_canonical).collect(),
            vs.iter().copied().map(AxisPoint01::from_canonical).collect(),
        )
    }

    /// Samples the piecewise-linear interpolant of canonical `nodes` on `grid`.
    pub fn piecewise_linear(nodes: &[(f64, f64)], grid: &[AxisPoint10]) -> Result<Self> {
        let us: Vec<f64> = nodes.iter().map(|n| n.0).collect();
        let vs: Vec<f64> = nodes.iter().map(|n| n.1).collect();
        let vals: Vec<f64> = grid.iter().map(|g| lerp_table(&us, &vs, g.u())).collect();
        let grid_us: Vec<f64> = grid.iter().map(AxisPoint10::u).collect();
        Self::from_canonical(&grid_us, &vals)
    }

    pub fn len(&self) -> usize {
        self.abscissae.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissae.is_empty()
    }

    pub fn abscissae(&self) -> &[AxisPoint10] {
        &self.abscissae
    }

    pub fn values(&self) -> &[AxisPoint01] {
        &self.values
    }

    pub fn u(&self, i: usize) -> f64 {
        self.abscissae[i].x()
    }

    pub fn v(&self, i: usize) -> f64 {
        self.values[i].y()
    }

    pub fn us(&self) -> Vec<f64> {
        self.abscissae.iter().map(AxisPoint10::x).collect()
    }

    pub fn vs(&self) -> Vec<f64> {
        self.values.iter().map(AxisPoint01::y).collect()
    }

    pub fn interval(&self) -> ProjectiveInterval {
        ProjectiveInterval {
            lo: self.abscissae[0],
            hi: self.abscissae[self.len() - 1],
        }
    }

    /// Graph points `(u:0:1) ⊕ (0:v:1)`.
    pub fn points(&self) -> Vec<ProjectivePoint> {
        self.abscissae
            .iter()
            .zip(&self.values)
            .map(|(h, v)| ProjectivePoint::compose(h, v))
            .collect()
    }

    /// Linear interpolation in canonical coordinates, clamped to the end values.
    pub fn interp(&self, u: f64) -> f64 {
        let n = self.len();
        let i = self.abscissae.partition_point(|a| a.x() <= u);
        if i == 0 {
            return self.v(0);
        }
        if i >= n {
            return self.v(n - 1);
        }
        let (u0, u1) = (self.u(i - 1), self.u(i));
        let (v0, v1) = (self.v(i - 1), self.v(i));
        v0 + (v1 - v0) * ((u - u0) / (u1 - u0))
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .abscissae
                .iter()
                .zip(&other.abscissae)
                .all(|(a, b)| same_node(a.u(), b.u()))
    }

    /// Index of the node coinciding with canonical abscissa `u`, if any.
    pub fn node_index(&self, u: f64) -> Option<usize> {
        let i = self.abscissae.partition_point(|a| a.x() < u);
        [i.checked_sub(1), Some(i)]
            .into_iter()
            .flatten()
            .filter(|&j| j < self.len())
            .find(|&j| same_node(self.u(j), u))
    }
}

/// `sup_x ||f(x) ⊖ g(x)||_P` over the shared grid.
pub fn graph_sup_dist(f: &SampledGraph, g: &SampledGraph) -> Result<f64> {
    if !f.same_grid(g) {
        return Err(Error::GridMismatch);
    }
    Ok(f.values
        .iter()
        .zip(&g.values)
        .map(|(a, b)| a.to_point().ominus(&b.to_point()).norm_p())
        .fold(0.0, f64::max))
}

/// Piecewise-linear lookup in a sorted table, clamped at both ends.
pub(crate) fn lerp_table(us: &[f64], vs: &[f64], u: f64) -> f64 {
    let n = us.len();
    let i = us.partition_point(|&a| a <= u);
    if i == 0 {
        return vs[0];
    }
    if i >= n {
        return vs[n - 1];
    }
    let (u0, u1) = (us[i - 1], us[i]);
    vs[i - 1] + (vs[i] - vs[i - 1]) * ((u - u0) / (u1 - u0))
}
