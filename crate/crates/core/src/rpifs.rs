//! Construction of the real projective IFS `{W_n = L_n ⊕ F_n}` from
//! interpolation data, with join-up and contraction checks.
//!
//! For data `(x_k : y_k : z_k)`, `k = 0..=N`, write `X_k = x_k / z_k` and
//! `Y_k = y_k / z_k`. Map `n` acts as
//!
//! ```text
//! L_n(x:0:z)   = (a_n x + b_n z : 0 : z)
//! F_n(x:y:z)   = (0 : c_n x + d_n y + f_n z : z)
//! W_n(x:y:z)   = [[a_n, 0, b_n], [c_n, d_n, f_n], [0, 0, 1]] · (x, y, z)
//! ```
//!
//! where `a_n, b_n` make `L_n` send the data interval onto
//! `[X_{n-1}, X_n]` and `c_n, f_n` make `W_n` send the first and last data
//! points onto points `n-1` and `n`. The vertical scales `d_n` are free.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::ProjectiveInterval;
use crate::projective::{AxisPoint01, AxisPoint10, ProjectivePoint};

/// Validated data points `P_0, ..., P_N` with `N >= 2`, stored with positive `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationData {
    points: Vec<ProjectivePoint>,
}

impl InterpolationData {
    pub fn new(points: Vec<ProjectivePoint>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::TooFewPoints(points.len()));
        }
        let points: Vec<ProjectivePoint> = points
            .into_iter()
            .map(|p| if p.z() < 0.0 { p.rescale(-1.0) } else { Ok(p) })
            .collect::<Result<_>>()?;
        for (index, w) in points.windows(2).enumerate() {
            // x_n z_{n+1} < x_{n+1} z_n with both z positive.
            if w[0].x() * w[1].z() >= w[1].x() * w[0].z() {
                return Err(Error::Ordering { index });
            }
        }
        Ok(Self { points })
    }

    /// Validates raw homogeneous triples.
    pub fn from_triples(triples: &[[f64; 3]]) -> Result<Self> {
        let pts = triples
            .iter()
            .map(|t| ProjectivePoint::new(t[0], t[1], t[2]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pts)
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    /// Number of maps `N`.
    pub fn map_count(&self) -> usize {
        self.points.len() - 1
    }

    /// Canonical abscissa `X_k`.
    pub fn cx(&self, k: usize) -> f64 {
        self.points[k].u()
    }

    /// Canonical ordinate `Y_k`.
    pub fn cy(&self, k: usize) -> f64 {
        self.points[k].v()
    }

    /// `(X_k, Y_k)` for every data point.
    pub fn canonical_nodes(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|p| (p.u(), p.v())).collect()
    }

    pub fn abscissae(&self) -> Vec<f64> {
        self.points.iter().map(ProjectivePoint::u).collect()
    }

    pub fn interval(&self) -> ProjectiveInterval {
        let first = &self.points[0];
        let last = &self.points[self.map_count()];
        ProjectiveInterval::new(
            AxisPoint10::new(first.x(), first.z()).expect("validated point"),
            AxisPoint10::new(last.x(), last.z()).expect("validated point"),
        )
        .expect("abscissae strictly increase")
    }

    fn check_index(&self, n: usize) -> Result<()> {
        let count = self.map_count();
        if n == 0 || n > count {
            return Err(Error::MapIndex { n, count });
        }
        Ok(())
    }
}

pub fn validate_data(points: Vec<ProjectivePoint>) -> Result<InterpolationData> {
    InterpolationData::new(points)
}

/// `(a_n, b_n)` for `1 <= n <= N`.
pub fn compute_l_coeffs(data: &InterpolationData, n: usize) -> Result<(f64, f64)> {
    data.check_index(n)?;
    let last = data.map_count();
    let (x0, xn) = (data.cx(0), data.cx(last));
    let (prev, cur) = (data.cx(n - 1), data.cx(n));
    let span = xn - x0;
    Ok(((cur - prev) / span, (xn * prev - x0 * cur) / span))
}

/// `(c_n, f_n)` for `1 <= n <= N` and free scale `d_n`.
pub fn compute_f_coeffs(data: &InterpolationData, n: usize, d: f64) -> Result<(f64, f64)> {
    data.check_index(n)?;
    let last = data.map_count();
    let (x0, xn) = (data.cx(0), data.cx(last));
    let (y0, yn) = (data.cy(0), data.cy(last));
    let (prev, cur) = (data.cy(n - 1), data.cy(n));
    let span = xn - x0;
    let c = (cur - prev) / span - d * (yn - y0) / span;
    let f = (xn * prev - x0 * cur) / span - d * (xn * y0 - x0 * yn) / span;
    Ok((c, f))
}

/// One map `W_n`, stored by its coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProjectiveMap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub f: f64,
}

impl ProjectiveMap {
    pub fn new(a: f64, b: f64, c: f64, d: f64, f: f64) -> Self {
        Self { a, b, c, d, f }
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        [[self.a, 0.0, self.b], [self.c, self.d, self.f], [0.0, 0.0, 1.0]]
    }

    pub fn apply_l(&self, p: &AxisPoint10) -> AxisPoint10 {
        let (x, z) = (p.x(), p.z());
        AxisPoint10::from_canonical((self.a * x + self.b * z) / z)
    }

    /// `L_n^{-1}(x:0:z) = (x - b_n z : 0 : a_n z)`.
    pub fn apply_l_inv(&self, p: &AxisPoint10) -> AxisPoint10 {
        let (x, z) = (p.x(), p.z());
        AxisPoint10::from_canonical((x - self.b * z) / (self.a * z))
    }

    /// `F_n(x:y:z) = (0 : c_n x + d_n y + f_n z : z)`.
    pub fn apply_f(&self, p: &ProjectivePoint) -> AxisPoint01 {
        let (x, y, z) = (p.x(), p.y(), p.z());
        AxisPoint01::from_canonical((self.c * x + self.d * y + self.f * z) / z)
    }

    /// `W_n(p) = L_n(x:0:z) ⊕ F_n(x:y:z)`.
    pub fn apply_w(&self, p: &ProjectivePoint) -> ProjectivePoint {
        let h = AxisPoint10::new(p.x(), p.z()).expect("z checked at construction");
        let out = self.apply_l(&h).to_point().oplus(&self.apply_f(p).to_point());
        debug_assert_eq!(out, self.apply_w_matrix(p));
        out
    }

    /// `W_n` as the matrix product, canonicalized.
    pub fn apply_w_matrix(&self, p: &ProjectivePoint) -> ProjectivePoint {
        let m = self.matrix();
        let t = p.triple();
        let row = |r: [f64; 3]| r[0] * t[0] + r[1] * t[1] + r[2] * t[2];
        let (x, y, z) = (row(m[0]), row(m[1]), row(m[2]));
        ProjectivePoint::from_canonical(x / z, y / z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BuildOptions {
    /// Permit `d_n = 0` (singular maps). The RB fixed point is then the
    /// piecewise-linear interpolant.
    pub allow_degenerate: bool,
}

/// A real projective IFS `{W_1, ..., W_N}` over validated data.
#[derive(Debug, Clone, PartialEq)]
pub struct Rpifs {
    data: InterpolationData,
    maps: Vec<ProjectiveMap>,
    interval: ProjectiveInterval,
    warnings: Vec<String>,
}

pub fn build_ifs(data: &InterpolationData, scales: &[f64], options: BuildOptions) -> Result<Rpifs> {
    let count = data.map_count();
    if scales.len() != count {
        return Err(Error::ScaleArity {
            expected: count,
            got: scales.len(),
            points: count + 1,
        });
    }
    let mut warnings = Vec::new();
    let mut maps = Vec::with_capacity(count);
    for (i, &d) in scales.iter().enumerate() {
        let n = i + 1;
        if !(d.abs() < 1.0) {
            return Err(Error::ScaleOutOfRange { n, value: d });
        }
        if d == 0.0 {
            if !options.allow_degenerate {
                return Err(Error::ZeroScale { n });
            }
            let msg = format!("d_{n} = 0: map {n} is singular");
            log::warn!("{msg}");
            warnings.push(msg);
        }
        let (a, b) = compute_l_coeffs(data, n)?;
        let (c, f) = compute_f_coeffs(data, n, d)?;
        maps.push(ProjectiveMap::new(a, b, c, d, f));
    }
    let ifs = Rpifs {
        interval: data.interval(),
        data: data.clone(),
        maps,
        warnings,
    };
    let report = ifs.verify_joinup(JOINUP_TOL);
    if !report.passed() {
        return Err(Error::VerificationFailed(format!(
            "join-up residual {:e} exceeds {JOINUP_TOL:e}",
            report.max_residual
        )));
    }
    Ok(ifs)
}

/// Join-up tolerance (in `d_P`) enforced at construction.
const JOINUP_TOL: f64 = 1e-9;

impl Rpifs {
    /// Assembles an IFS from explicit maps without checking join-up.
    pub fn from_maps(data: InterpolationData, maps: Vec<ProjectiveMap>) -> Result<Self> {
        if maps.len() != data.map_count() {
            return Err(Error::ScaleArity {
                expected: data.map_count(),
                got: maps.len(),
                points: data.points().len(),
            });
        }
        Ok(Self {
            interval: data.interval(),
            data,
            maps,
            warnings: Vec::new(),
        })
    }

    pub fn data(&self) -> &InterpolationData {
        &self.data
    }

    /// Maps in order; `maps()[n - 1]` is `W_n`.
    pub fn maps(&self) -> &[ProjectiveMap] {
        &self.maps
    }

    pub fn interval(&self) -> &ProjectiveInterval {
        &self.interval
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn scales(&self) -> Vec<f64> {
        self.maps.iter().map(|m| m.d).collect()
    }

    /// `max |d_n|`.
    pub fn d_bound(&self) -> f64 {
        self.maps.iter().map(|m| m.d.abs()).fold(0.0, f64::max)
    }

    /// `max |a_n|`.
    pub fn a_max(&self) -> f64 {
        self.maps.iter().map(|m| m.a.abs()).fold(0.0, f64::max)
    }

    /// 0-based index of the map whose subinterval holds canonical `u`.
    ///
    /// Buckets are `[X_{n-1}, X_n)`, the last one closed. Returns `None`
    /// outside `[X_0, X_N]`.
    pub fn locate(&self, u: f64) -> Option<usize> {
        let last = self.maps.len();
        if !(u >= self.data.cx(0) && u <= self.data.cx(last)) {
            return None;
        }
        let k = (1..last).take_while(|&k| self.data.cx(k) <= u).count();
        Some(k)
    }

    pub fn locate_point(&self, p: &AxisPoint10) -> Option<usize> {
        if !self.interval.contains(p) {
            return None;
        }
        let last = self.maps.len();
        let k = (1..last)
            .take_while(|&k| {
                let node = self.data.points()[k];
                AxisPoint10::new(node.x(), node.z())
                    .expect("validated point")
                    .compare(p)
                    != Ordering::Greater
            })
            .count();
        Some(k)
    }

    pub fn verify_joinup(&self, tol: f64) -> JoinupReport {
        verify_joinup(self, tol)
    }

    pub fn contraction_certificate(&self, theta: Option<f64>) -> Result<ContractionCertificate> {
        contraction_certificate(self, theta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Endpoint {
    First,
    Last,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JoinupFailure {
    pub n: usize,
    pub endpoint: Endpoint,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JoinupReport {
    pub tol: f64,
    pub max_residual: f64,
    pub failures: Vec<JoinupFailure>,
}

impl JoinupReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `W_n(P_0) = P_{n-1}` and `W_n(P_N) = P_n` in `d_P`.
pub fn verify_joinup(ifs: &Rpifs, tol: f64) -> JoinupReport {
    let pts = ifs.data.points();
    let (first, last) = (pts[0], pts[pts.len() - 1]);
    let mut max_residual: f64 = 0.0;
    let mut failures = Vec::new();
    for (i, map) in ifs.maps.iter().enumerate() {
        let n = i + 1;
        for (endpoint, src, dst) in [
            (Endpoint::First, first, pts[n - 1]),
            (Endpoint::Last, last, pts[n]),
        ] {
            let residual = map.apply_w(&src).dist_p(&dst);
            max_residual = max_residual.max(residual);
            if !(residual < tol) {
                failures.push(JoinupFailure {
                    n,
                    endpoint,
                    residual,
                });
            }
        }
    }
    JoinupReport {
        tol,
        max_residual,
        failures,
    }
}

/// Sufficient condition for every `W_n` to contract in `d_θ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractionCertificate {
    /// `min(1 - 2|c_n|) / max(2|a_n|)`; may be nonpositive.
    pub theta_max: f64,
    /// The `θ` the bounds below were evaluated at; `None` when no admissible
    /// `θ` exists and none was supplied.
    pub theta_used: Option<f64>,
    /// `max(|a_n| + θ|c_n|)`.
    pub a_bound: f64,
    /// `max |d_n|`.
    pub d_bound: f64,
    /// `max(a_bound, d_bound)`, the contraction factor when `sufficient`.
    pub c_bound: f64,
    pub sufficient: bool,
}

pub fn contraction_certificate(ifs: &Rpifs, theta: Option<f64>) -> Result<ContractionCertificate> {
    if let Some(t) = theta {
        crate::projective::check_theta(t)?;
    }
    let maps = &ifs.maps;
    let num = maps
        .iter()
        .map(|m| 1.0 - 2.0 * m.c.abs())
        .fold(f64::INFINITY, f64::min);
    let den = maps.iter().map(|m| 2.0 * m.a.abs()).fold(0.0, f64::max);
    let theta_max = num / den;
    let theta_used = theta.or((theta_max > 0.0).then_some(theta_max / 2.0));
    let t = theta_used.unwrap_or(0.0);
    let a_bound = maps.iter().map(|m| m.a.abs() + t * m.c.abs()).fold(0.0, f64::max);
    let d_bound = ifs.d_bound();
    let c_bound = a_bound.max(d_bound);
    let sufficient = theta_max > 0.0 && d_bound < 1.0 && t > 0.0 && t <= theta_max;
    Ok(ContractionCertificate {
        theta_max,
        theta_used,
        a_bound,
        d_bound,
        c_bound,
        sufficient,
    })
}

/// Largest observed deviations from the exact Lipschitz identities of
/// `L_n` and `F_n` over random inputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LipschitzReport {
    pub samples: usize,
    /// `|d_P(L p, L q) - |a| d_P(p, q)|`.
    pub l_residual: f64,
    /// `|d_P(F(h ⊕ w), F(h' ⊕ w)) - |c| d_P(h, h')|`.
    pub f_first_residual: f64,
    /// `|d_P(F(h ⊕ w), F(h ⊕ w')) - |d| d_P(w, w')|`.
    pub f_second_residual: f64,
}

impl LipschitzReport {
    pub fn max_residual(&self) -> f64 {
        self.l_residual
            .max(self.f_first_residual)
            .max(self.f_second_residual)
    }
}

/// Evaluates the three Lipschitz identities on `samples` random inputs per
/// map, drawn over the data rectangle with random representatives.
pub fn lipschitz_residuals(ifs: &Rpifs, samples: usize, seed: u64) -> LipschitzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (u_lo, u_hi) = (ifs.interval.lo().u(), ifs.interval.hi().u());
    let ys: Vec<f64> = (0..=ifs.maps.len()).map(|k| ifs.data.cy(k)).collect();
    let v_lo = ys.iter().copied().fold(f64::INFINITY, f64::min) - 1.0;
    let v_hi = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 1.0;
    let mut report = LipschitzReport {
        samples,
        l_residual: 0.0,
        f_first_residual: 0.0,
        f_second_residual: 0.0,
    };
    let scale = |rng: &mut ChaCha8Rng| {
        let s: f64 = rng.random_range(0.5..2.0);
        if rng.random_bool(0.5) {
            -s
        } else {
            s
        }
    };
    for map in &ifs.maps {
        for _ in 0..samples {
            let mut h = || {
                let u: f64 = rng.random_range(u_lo..=u_hi);
                let z = scale(&mut rng);
                AxisPoint10::new(u * z, z).expect("nonzero z")
            };
            let (h1, h2) = (h(), h());
            let mut w = || {
                let v: f64 = rng.random_range(v_lo..=v_hi);
                let z = scale(&mut rng);
                AxisPoint01::new(v * z, z).expect("nonzero z")
            };
            let (w1, w2) = (w(), w());
            let dh = h1.to_point().dist_p(&h2.to_point());
            let dw = w1.to_point().dist_p(&w2.to_point());

            let l = map.apply_l(&h1).to_point().dist_p(&map.apply_l(&h2).to_point());
            report.l_residual = report.l_residual.max((l - map.a.abs() * dh).abs());

            let p11 = ProjectivePoint::compose(&h1, &w1);
            let p21 = ProjectivePoint::compose(&h2, &w1);
            let p12 = ProjectivePoint::compose(&h1, &w2);
            let f11 = map.apply_f(&p11).to_point();
            let first = f11.dist_p(&map.apply_f(&p21).to_point());
            report.f_first_residual = report.f_first_residual.max((first - map.c.abs() * dh).abs());
            let second = f11.dist_p(&map.apply_f(&p12).to_point());
            report.f_second_residual = report.f_second_residual.max((second - map.d.abs() * dw).abs());
        }
    }
    report
}
