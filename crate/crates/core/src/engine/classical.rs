//! Classical affine fractal interpolation in plain real coordinates.
//!
//! `w_n(x, y) = (a_n x + b_n, c_n x + d_n y + f_n)` with
//! `w_n(x_0, y_0) = (x_{n-1}, y_{n-1})` and `w_n(x_N, y_N) = (x_n, y_n)`.
//! The fixed point of `g ↦ c_n l_n^{-1}(x) + d_n g(l_n^{-1}(x)) + f_n` is the
//! interpolation function.
//!
//! This module deliberately shares nothing with the projective code paths:
//! it solves the join-up equations as 2x2 systems, builds its own grid and
//! does its own interpolation, so it can serve as an independent check.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalFifSpec {
    nodes: Vec<(f64, f64)>,
    coefficients: Vec<AffineCoefficients>,
}

const JOIN_TOL: f64 = 1e-9;

/// Solves `[[p, 1], [q, 1]] [s, t]^T = [r0, r1]^T` by Cramer's rule.
fn solve_endpoint_system(p: f64, q: f64, r0: f64, r1: f64) -> (f64, f64) {
    let det = p - q;
    ((r0 - r1) / det, (p * r1 - q * r0) / det)
}

impl ClassicalFifSpec {
    /// Checks the classical join-up conditions for explicit coefficients.
    pub fn new(nodes: Vec<(f64, f64)>, coefficients: Vec<AffineCoefficients>) -> Result<Self> {
        if nodes.len() < 3 {
            return Err(Error::TooFewPoints(nodes.len()));
        }
        if nodes.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            let index = nodes.windows(2).position(|w| !(w[0].0 < w[1].0)).unwrap();
            return Err(Error::Ordering { index });
        }
        if coefficients.len() + 1 != nodes.len() {
            return Err(Error::ScaleArity {
                expected: nodes.len() - 1,
                got: coefficients.len(),
                points: nodes.len(),
            });
        }
        let (first, last) = (nodes[0], nodes[nodes.len() - 1]);
        for (i, w) in coefficients.iter().enumerate() {
            let apply = |(x, y): (f64, f64)| (w.a * x + w.b, w.c * x + w.d * y + w.f);
            for (src, dst) in [(first, nodes[i]), (last, nodes[i + 1])] {
                let (x, y) = apply(src);
                let scale = 1.0 + dst.0.abs().max(dst.1.abs());
                if (x - dst.0).abs() > JOIN_TOL * scale || (y - dst.1).abs() > JOIN_TOL * scale {
                    return Err(Error::VerificationFailed(format!(
                        "classical map {} violates join-up",
                        i + 1
                    )));
                }
            }
        }
        Ok(Self { nodes, coefficients })
    }

    /// Derives coefficients from nodes and vertical scales.
    pub fn from_nodes(nodes: &[(f64, f64)], scales: &[f64]) -> Result<Self> {
        if nodes.len() < 3 {
            return Err(Error::TooFewPoints(nodes.len()));
        }
        if scales.len() + 1 != nodes.len() {
            return Err(Error::ScaleArity {
                expected: nodes.len() - 1,
                got: scales.len(),
                points: nodes.len(),
            });
        }
        let (x0, y0) = nodes[0];
        let (xn, yn) = nodes[nodes.len() - 1];
        let coefficients = scales
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let (xp, yp) = nodes[i];
                let (xc, yc) = nodes[i + 1];
                let (a, b) = solve_endpoint_system(x0, xn, xp, xc);
                let (c, f) = solve_endpoint_system(x0, xn, yp - d * y0, yc - d * yn);
                AffineCoefficients { a, b, c, d, f }
            })
            .collect();
        Self::new(nodes.to_vec(), coefficients)
    }

    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    pub fn coefficients(&self) -> &[AffineCoefficients] {
        &self.coefficients
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalSolution {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    if x <= xs[0] {
        return ys[0];
    }
    let last = xs.len() - 1;
    if x >= xs[last] {
        return ys[last];
    }
    let (mut lo, mut hi) = (0, last);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if xs[mid] <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    ys[lo] * (1.0 - t) + ys[hi] * t
}

/// Iterates the classical RB operator on a grid of `grid_m` points that
/// contains every node, starting from the piecewise-linear interpolant.
pub fn classical_fif_oracle(
    spec: &ClassicalFifSpec,
    grid_m: usize,
    tol: f64,
    max_iter: usize,
) -> Result<ClassicalSolution> {
    let nodes = &spec.nodes;
    let pieces = nodes.len() - 1;
    if grid_m < nodes.len() || (grid_m - 1) % pieces != 0 {
        return Err(Error::GridAlignment(format!(
            "grid_m = {grid_m} is not of the form k*{pieces} + 1"
        )));
    }
    let per = (grid_m - 1) / pieces;
    let mut xs = Vec::with_capacity(grid_m);
    // Owner map of each grid point: pieces are (x_{n-1}, x_n], the first closed.
    let mut owner = Vec::with_capacity(grid_m);
    xs.push(nodes[0].0);
    owner.push(0);
    for (n, w) in nodes.windows(2).enumerate() {
        let h = (w[1].0 - w[0].0) / per as f64;
        for k in 1..per {
            xs.push(w[0].0 + h * k as f64);
            owner.push(n);
        }
        xs.push(w[1].0);
        owner.push(n);
    }

    let node_x: Vec<f64> = nodes.iter().map(|p| p.0).collect();
    let node_y: Vec<f64> = nodes.iter().map(|p| p.1).collect();
    let mut ys: Vec<f64> = xs.iter().map(|&x| interpolate(&node_x, &node_y, x)).collect();

    let (lo, hi) = (xs[0], xs[grid_m - 1]);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        let next: Vec<f64> = xs
            .iter()
            .zip(&owner)
            .map(|(&x, &n)| {
                let w = &spec.coefficients[n];
                let pre = ((x - w.b) / w.a).clamp(lo, hi);
                w.c * pre + w.d * interpolate(&xs, &ys, pre) + w.f
            })
            .collect();
        let delta = next
            .iter()
            .zip(&ys)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max);
        ys = next;
        iterations += 1;
        if delta < tol {
            converged = true;
            break;
        }
    }
    Ok(ClassicalSolution {
        xs,
        ys,
        iterations,
        converged,
    })
}
