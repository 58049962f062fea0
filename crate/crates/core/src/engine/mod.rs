//! Fixed points and attractors of a projective IFS.
//!
//! The interpolation function is computed as the fixed point of the
//! Read-Bajraktarevic operator on grid-sampled functions ([`rb`]); its graph
//! is also reachable as the attractor of the maps, either deterministically
//! or by random iteration ([`attractor`]). [`classical`] is a self-contained
//! real-coordinate solver used as an oracle and shares no code with the rest
//! of this module.

pub mod attractor;
pub mod classical;
pub mod hausdorff;
pub mod rb;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::projective::ProjectivePoint;

pub use attractor::{
    chaos_game, deterministic_attractor, hutchinson_step, slice_at_level, AttractorOptions, CHAOS_BURN_IN,
};
pub use classical::{classical_fif_oracle, ClassicalFifSpec, ClassicalSolution};
pub use hausdorff::{directed_hausdorff, hausdorff_distance, hausdorff_distance_brute, Metric};
pub use rb::{
    evaluate_rpfif, ifs_grid, rb_apply, rb_fixed_point, DEFAULT_MAX_ITER, DEFAULT_PER_SEGMENT, DEFAULT_TOL,
};

/// A nonempty finite set of points.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<ProjectivePoint>,
}

impl PointCloud {
    pub fn new(points: Vec<ProjectivePoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyCloud);
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn into_points(self) -> Vec<ProjectivePoint> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Canonical `(u, v)` for every point.
    pub fn canonical(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|p| (p.u(), p.v())).collect()
    }

    /// Set union (concatenation; duplicates are kept).
    pub fn merge(mut self, other: PointCloud) -> Self {
        self.points.extend(other.points);
        self
    }
}

/// Record of a fixed-point iteration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationTrace {
    /// Sup-distance between successive iterates, one per iteration.
    pub deltas: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl IterationTrace {
    /// `deltas[k] / deltas[k - 1]` for `k >= 1`.
    pub fn ratios(&self) -> Vec<f64> {
        self.deltas.windows(2).map(|w| w[1] / w[0]).collect()
    }

    pub fn last_delta(&self) -> Option<f64> {
        self.deltas.last().copied()
    }
}
