//! Hausdorff distance between finite point sets under `d_P` or `d_θ`.
//!
//! `H(A, B) = max(h(A, B), h(B, A))` with `h(A, B) = max_a min_b d(a, b)`.
//! Both metrics dominate the horizontal gap `|u_a - u_b|`, so the nearest
//! neighbour search sorts `B` by `u` and stops scanning once the gap alone
//! exceeds the best distance found. The result is identical to the
//! all-pairs minimum computed by [`hausdorff_distance_brute`].

use rayon::prelude::*;

use super::PointCloud;
use crate::error::Result;
use crate::projective::{check_theta, euclid};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric {
    /// Euclidean distance of canonical coordinates.
    P,
    /// `|Δu| + θ |Δv|`.
    Theta(f64),
}

impl Metric {
    fn check(self) -> Result<()> {
        match self {
            Metric::P => Ok(()),
            Metric::Theta(t) => check_theta(t),
        }
    }

    #[inline]
    fn eval(self, a: (f64, f64), b: (f64, f64)) -> f64 {
        let (du, dv) = (a.0 - b.0, a.1 - b.1);
        match self {
            Metric::P => euclid(du, dv),
            Metric::Theta(t) => du.abs() + t * dv.abs(),
        }
    }
}

fn directed(from: &[(f64, f64)], sorted_to: &[(f64, f64)], metric: Metric) -> f64 {
    from.par_iter()
        .map(|&a| {
            let start = sorted_to.partition_point(|b| b.0 < a.0);
            let mut best = f64::INFINITY;
            for b in &sorted_to[start..] {
                if b.0 - a.0 >= best {
                    break;
                }
                best = best.min(metric.eval(a, *b));
            }
            for b in sorted_to[..start].iter().rev() {
                if a.0 - b.0 >= best {
                    break;
                }
                best = best.min(metric.eval(a, *b));
            }
            best
        })
        .reduce(|| 0.0, f64::max)
}

fn sorted(cloud: &PointCloud) -> Vec<(f64, f64)> {
    let mut pts = cloud.canonical();
    pts.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
    pts
}

pub fn hausdorff_distance(a: &PointCloud, b: &PointCloud, metric: Metric) -> Result<f64> {
    metric.check()?;
    let (sa, sb) = (sorted(a), sorted(b));
    Ok(directed(&sa, &sb, metric).max(directed(&sb, &sa, metric)))
}

/// Directed distance `h(A, B)`.
pub fn directed_hausdorff(a: &PointCloud, b: &PointCloud, metric: Metric) -> Result<f64> {
    metric.check()?;
    Ok(directed(&a.canonical(), &sorted(b), metric))
}

/// All-pairs `O(|A| |B|)` evaluation.
pub fn hausdorff_distance_brute(a: &PointCloud, b: &PointCloud, metric: Metric) -> Result<f64> {
    metric.check()?;
    let (ca, cb) = (a.canonical(), b.canonical());
    let h = |x: &[(f64, f64)], y: &[(f64, f64)]| {
        x.iter()
            .map(|&p| y.iter().map(|&q| metric.eval(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    Ok(h(&ca, &cb).max(h(&cb, &ca)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::ProjectivePoint;
    use crate::Error;

    fn cloud(pts: &[(f64, f64)]) -> PointCloud {
        PointCloud::new(
            pts.iter()
                .map(|&(u, v)| ProjectivePoint::from_canonical(u, v))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn hausdorff_examples() {
        let a = cloud(&[(0.0, 0.0), (1.0, 2.0), (-3.0, 0.5)]);
        assert_eq!(hausdorff_distance(&a, &a, Metric::P).unwrap(), 0.0);

        let o = cloud(&[(0.0, 0.0)]);
        let x = cloud(&[(1.0, 0.0)]);
        assert_eq!(hausdorff_distance(&o, &x, Metric::P).unwrap(), 1.0);

        // B = A plus a point at distance 0.75 from its nearest point in A.
        let b = cloud(&[(0.0, 0.0), (1.0, 2.0), (-3.0, 0.5), (1.0, 2.75)]);
        assert_eq!(directed_hausdorff(&a, &b, Metric::P).unwrap(), 0.0);
        assert_eq!(directed_hausdorff(&b, &a, Metric::P).unwrap(), 0.75);
        assert_eq!(hausdorff_distance(&a, &b, Metric::P).unwrap(), 0.75);
        assert_eq!(hausdorff_distance(&b, &a, Metric::P).unwrap(), 0.75);

        assert_eq!(
            hausdorff_distance(&o, &cloud(&[(1.0, 1.0)]), Metric::Theta(0.5)).unwrap(),
            1.5
        );
        assert!(matches!(
            hausdorff_distance(&o, &x, Metric::Theta(-1.0)),
            Err(Error::NonPositiveTheta(_))
        ));
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        let mut seed = 0x2545F4914F6CDD1Du64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 * 4.0 - 2.0
        };
        for _ in 0..20 {
            let a: Vec<(f64, f64)> = (0..150).map(|_| (next(), next())).collect();
            let b: Vec<(f64, f64)> = (0..90).map(|_| (next(), next())).collect();
            let (a, b) = (cloud(&a), cloud(&b));
            for m in [Metric::P, Metric::Theta(0.3), Metric::Theta(2.0)] {
                assert_eq!(
                    hausdorff_distance(&a, &b, m).unwrap(),
                    hausdorff_distance_brute(&a, &b, m).unwrap()
                );
            }
        }
    }
}
