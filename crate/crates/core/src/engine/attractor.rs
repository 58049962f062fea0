use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::PointCloud;
use crate::error::{Error, Result};
use crate::projective::{ProjectivePoint, Z_FLOOR};
use crate::rpifs::Rpifs;

/// Iterates discarded before the chaos game starts recording.
pub const CHAOS_BURN_IN: usize = 50;

/// `W(B) = W_1(B) ∪ ... ∪ W_N(B)`, map-major order, duplicates kept.
pub fn hutchinson_step(ifs: &Rpifs, cloud: &PointCloud) -> PointCloud {
    let points: Vec<ProjectivePoint> = ifs
        .maps()
        .par_iter()
        .flat_map_iter(|m| cloud.points().iter().map(move |p| m.apply_w(p)))
        .collect();
    PointCloud { points }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttractorOptions {
    /// Snap canonical coordinates to this resolution and drop duplicates
    /// after each step. Approximates the attractor; off by default.
    pub snap: Option<f64>,
    /// Refuse to produce more points than this.
    pub max_points: usize,
}

impl Default for AttractorOptions {
    fn default() -> Self {
        Self {
            snap: None,
            max_points: 20_000_000,
        }
    }
}

/// `W^k(initial)`.
pub fn deterministic_attractor(
    ifs: &Rpifs,
    initial: &PointCloud,
    k: usize,
    options: AttractorOptions,
) -> Result<PointCloud> {
    if let Some(eps) = options.snap {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "snap resolution must be positive, got {eps}"
            )));
        }
    }
    let mut cloud = initial.clone();
    for _ in 0..k {
        let size = cloud.len().saturating_mul(ifs.maps().len());
        if size > options.max_points {
            return Err(Error::SizeCap {
                size,
                cap: options.max_points,
            });
        }
        cloud = hutchinson_step(ifs, &cloud);
        if let Some(eps) = options.snap {
            cloud = snap(&cloud, eps);
        }
    }
    Ok(cloud)
}

fn snap(cloud: &PointCloud, eps: f64) -> PointCloud {
    let mut keys: Vec<(i64, i64)> = cloud
        .points()
        .iter()
        .map(|p| ((p.u() / eps).round() as i64, (p.v() / eps).round() as i64))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    PointCloud {
        points: keys
            .into_iter()
            .map(|(i, j)| ProjectivePoint::from_canonical(i as f64 * eps, j as f64 * eps))
            .collect(),
    }
}

/// Random iteration from the first data point with uniformly chosen maps.
/// The first `burn_in` iterates are discarded; the result is a function of
/// `seed` alone.
pub fn chaos_game(ifs: &Rpifs, n_points: usize, burn_in: usize, seed: u64) -> Result<PointCloud> {
    if n_points == 0 {
        return Err(Error::InvalidArgument("n_points must be at least 1".into()));
    }
    let maps = ifs.maps();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = ifs.data().points()[0].canonicalize();
    let mut points = Vec::with_capacity(n_points);
    for i in 0..burn_in + n_points {
        p = maps[rng.random_range(0..maps.len())].apply_w(&p);
        if i >= burn_in {
            points.push(p);
        }
    }
    Ok(PointCloud { points })
}

/// Points of the homogeneous rays through `cloud` at height `z = z0`.
pub fn slice_at_level(cloud: &PointCloud, z0: f64) -> Result<Vec<[f64; 3]>> {
    if !(z0.is_finite() && z0.abs() >= Z_FLOOR) {
        return Err(Error::ZeroLevel);
    }
    Ok(cloud
        .points()
        .iter()
        .map(|p| [p.u() * z0, p.v() * z0, z0])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rpifs::{build_ifs, BuildOptions, InterpolationData};

    fn ifs() -> Rpifs {
        let data = InterpolationData::from_triples(&[
            [-2.0, 1.0, 1.0],
            [-1.0, -1.0, 1.0],
            [0.0, 1.0, 1.0],
            [1.0, -1.0, 1.0],
            [2.0, 1.0, 1.0],
        ])
        .unwrap();
        build_ifs(&data, &[0.3; 4], BuildOptions::default()).unwrap()
    }

    #[test]
    fn hutchinson_examples() {
        let s = ifs();
        let pts = s.data().points();
        let ends = PointCloud::new(vec![pts[0], pts[4]]).unwrap();
        let out = hutchinson_step(&s, &ends);
        assert_eq!(out.len(), 8);
        for p in pts {
            assert!(out.points().iter().any(|q| q.equiv(p, 1e-14)));
        }
        let single = PointCloud::new(vec![ProjectivePoint::ZERO]).unwrap();
        assert_eq!(hutchinson_step(&s, &single).len(), 4);
    }

    #[test]
    fn deterministic_examples() {
        let s = ifs();
        let pts = s.data().points();
        let ends = PointCloud::new(vec![pts[0], pts[4]]).unwrap();
        let same = deterministic_attractor(&s, &ends, 0, AttractorOptions::default()).unwrap();
        assert_eq!(same, ends);
        let three = deterministic_attractor(&s, &ends, 3, AttractorOptions::default()).unwrap();
        assert_eq!(three.len(), 2 * 64);
        let capped = deterministic_attractor(
            &s,
            &ends,
            5,
            AttractorOptions {
                snap: None,
                max_points: 100,
            },
        );
        assert!(matches!(capped, Err(Error::SizeCap { .. })));
        let snapped = deterministic_attractor(
            &s,
            &ends,
            3,
            AttractorOptions {
                snap: Some(1e-6),
                ..Default::default()
            },
        )
        .unwrap();
        // Shared endpoints of neighbouring pieces collapse.
        assert_eq!(snapped.len(), 65);
    }

    #[test]
    fn chaos_game_examples() {
        let s = ifs();
        let a = chaos_game(&s, 1000, CHAOS_BURN_IN, 9).unwrap();
        let b = chaos_game(&s, 1000, CHAOS_BURN_IN, 9).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, chaos_game(&s, 1000, CHAOS_BURN_IN, 10).unwrap());

        let one = chaos_game(&s, 1, 0, 3).unwrap();
        assert_eq!(one.len(), 1);
        let start = s.data().points()[0];
        assert!(s.maps().iter().any(|m| m.apply_w(&start) == one.points()[0]));
        assert!(chaos_game(&s, 0, 0, 3).is_err());
    }

    #[test]
    fn slice_examples() {
        let cloud = PointCloud::new(vec![
            ProjectivePoint::new(2.0, 4.0, 2.0).unwrap(),
            ProjectivePoint::new(-1.5, 0.5, 1.0).unwrap(),
        ])
        .unwrap();
        let one = slice_at_level(&cloud, 1.0).unwrap();
        assert_eq!(one, vec![[1.0, 2.0, 1.0], [-1.5, 0.5, 1.0]]);
        let two = slice_at_level(&cloud, 2.0).unwrap();
        assert_eq!(two, vec![[2.0, 4.0, 2.0], [-3.0, 1.0, 2.0]]);
        let neg = slice_at_level(&cloud, -1.0).unwrap();
        assert_eq!(neg, vec![[-1.0, -2.0, -1.0], [1.5, -0.5, -1.0]]);
        assert!(matches!(slice_at_level(&cloud, 0.0), Err(Error::ZeroLevel)));
    }
}
