//! C ABI over `rpfif`.
//!
//! Objects are exposed as opaque handles created by `*_new`/producer calls
//! and released with the matching `*_free`. Every function returns an
//! [`RpfifStatus`]; on failure a description is available from
//! [`rpfif_last_error_message`] on the same thread. Panics never cross the
//! boundary: they are reported as `RPFIF_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rpfif::engine::{chaos_game, evaluate_rpfif, rb_fixed_point};
use rpfif::rpifs::build_ifs;
use rpfif::{AxisPoint10, BuildOptions, Error, ErrorKind, InterpolationData, ProjectivePoint, SampledGraph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RpfifStatus {
    Ok = 0,
    Validation = 1,
    NonConvergence = 2,
    Io = 3,
    NullPointer = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// A projective IFS built from interpolation data and scale factors.
pub struct RpfifIfs(rpfif::Rpifs);

/// A function sampled on a grid, in canonical coordinates.
pub struct RpfifGraph(SampledGraph);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RpfifCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub f: f64,
}

/// `theta_used` is NaN when no admissible theta exists.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RpfifCertificate {
    pub theta_max: f64,
    pub theta_used: f64,
    pub a_bound: f64,
    pub d_bound: f64,
    pub c_bound: f64,
    pub sufficient: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Buffer { needed: usize, capacity: usize },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RpfifStatus {
    let (status, message) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => (RpfifStatus::Ok, String::new()),
        Ok(Err(Failure::Lib(e))) => {
            let status = match e.kind() {
                ErrorKind::Validation => RpfifStatus::Validation,
                ErrorKind::NonConvergence => RpfifStatus::NonConvergence,
                ErrorKind::Io => RpfifStatus::Io,
            };
            (status, e.to_string())
        }
        Ok(Err(Failure::Null(name))) => (RpfifStatus::NullPointer, format!("null pointer: {name}")),
        Ok(Err(Failure::Buffer { needed, capacity })) => (
            RpfifStatus::BufferTooSmall,
            format!("buffer holds {capacity} entries, {needed} needed"),
        ),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            (RpfifStatus::Panic, format!("panic: {msg}"))
        }
    };
    set_last_error(message);
    status
}

unsafe fn nonnull<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

unsafe fn nonnull_mut<'a, T>(p: *mut T, name: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(name))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, name: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_mut<'a, T>(p: *mut T, len: usize, name: &'static str) -> Result<&'a mut [T], Failure> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

fn map_index(ifs: &RpfifIfs, n: usize) -> Result<&rpfif::ProjectiveMap, Failure> {
    let count = ifs.0.maps().len();
    ifs.0
        .maps()
        .get(n)
        .ok_or(Failure::Lib(Error::MapIndex { n: n + 1, count }))
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn rpfif_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds an IFS from `n_points` homogeneous triples (`3 * n_points`
/// doubles, row-major) and `n_points - 1` scale factors.
///
/// # Safety
/// `triples` and `scales` must point to the stated number of doubles and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rpfif_ifs_new(
    triples: *const f64,
    n_points: usize,
    scales: *const f64,
    n_scales: usize,
    allow_degenerate: bool,
    out: *mut *mut RpfifIfs,
) -> RpfifStatus {
    guard(|| {
        let out = nonnull_mut(out, "out")?;
        *out = ptr::null_mut();
        let flat = slice(triples, n_points.saturating_mul(3), "triples")?;
        let scales = slice(scales, n_scales, "scales")?;
        let triples: Vec<[f64; 3]> = flat.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
        let data = InterpolationData::from_triples(&triples)?;
        let ifs = build_ifs(&data, scales, BuildOptions { allow_degenerate })?;
        *out = Box::into_raw(Box::new(RpfifIfs(ifs)));
        Ok(())
    })
}

/// # Safety
/// `ifs` must come from [`rpfif_ifs_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rpfif_ifs_free(ifs: *mut RpfifIfs) {
    if !ifs.is_null() {
        drop(Box::from_raw(ifs));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rpfif_ifs_map_count(ifs: *const RpfifIfs, out: *mut usize) -> RpfifStatus {
    guard(|| {
        *nonnull_mut(out, "out")? = nonnull(ifs, "ifs")?.0.maps().len();
        Ok(())
    })
}

/// Coefficients of map `n` (0-based).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rpfif_ifs_coefficients(
    ifs: *const RpfifIfs,
    n: usize,
    out: *mut RpfifCoefficients,
) -> RpfifStatus {
    guard(|| {
        let m = map_index(nonnull(ifs, "ifs")?, n)?;
        *nonnull_mut(out, "out")? = RpfifCoefficients {
            a: m.a,
            b: m.b,
            c: m.c,
            d: m.d,
            f: m.f,
        };
        Ok(())
    })
}

/// Applies map `n` (0-based) to the homogeneous point `input[0..3]`;
/// writes the canonical image to `output[0..3]`.
///
/// # Safety
/// `input` and `output` must each hold 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn rpfif_ifs_apply_w(
    ifs: *const RpfifIfs,
    n: usize,
    input: *const f64,
    output: *mut f64,
) -> RpfifStatus {
    guard(|| {
        let m = map_index(nonnull(ifs, "ifs")?, n)?;
        let p = slice(input, 3, "input")?;
        let q = m.apply_w(&ProjectivePoint::new(p[0], p[1], p[2])?);
        slice_mut(output, 3, "output")?.copy_from_slice(&q.triple());
        Ok(())
    })
}

/// Contraction certificate; pass a non-positive or NaN `theta` to let the
/// library choose one.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rpfif_ifs_certificate(
    ifs: *const RpfifIfs,
    theta: f64,
    out: *mut RpfifCertificate,
) -> RpfifStatus {
    guard(|| {
        let ifs = nonnull(ifs, "ifs")?;
        let theta = (theta > 0.0).then_some(theta);
        let c = ifs.0.contraction_certificate(theta)?;
        *nonnull_mut(out, "out")? = RpfifCertificate {
            theta_max: c.theta_max,
            theta_used: c.theta_used.unwrap_or(f64::NAN),
            a_bound: c.a_bound,
            d_bound: c.d_bound,
            c_bound: c.c_bound,
            sufficient: c.sufficient,
        };
        Ok(())
    })
}

/// Fixed point on a `grid_m`-node grid. On non-convergence the last iterate
/// is still returned in `out` together with `RPFIF_STATUS_NON_CONVERGENCE`.
///
/// # Safety
/// `out` must be writable; `iterations` may be null.
#[no_mangle]
pub unsafe extern "C" fn rpfif_fixed_point(
    ifs: *const RpfifIfs,
    grid_m: usize,
    tol: f64,
    max_iter: usize,
    out: *mut *mut RpfifGraph,
    iterations: *mut usize,
) -> RpfifStatus {
    guard(|| {
        let out = nonnull_mut(out, "out")?;
        *out = ptr::null_mut();
        let ifs = nonnull(ifs, "ifs")?;
        let (graph, trace) = rb_fixed_point(&ifs.0, grid_m, tol, max_iter)?;
        if let Some(it) = iterations.as_mut() {
            *it = trace.iterations;
        }
        *out = Box::into_raw(Box::new(RpfifGraph(graph)));
        if !trace.converged {
            return Err(Error::NotConverged {
                iterations: trace.iterations,
                last_delta: trace.last_delta().unwrap_or(f64::NAN),
            }
            .into());
        }
        Ok(())
    })
}

/// # Safety
/// `graph` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rpfif_graph_free(graph: *mut RpfifGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rpfif_graph_len(graph: *const RpfifGraph, out: *mut usize) -> RpfifStatus {
    guard(|| {
        *nonnull_mut(out, "out")? = nonnull(graph, "graph")?.0.len();
        Ok(())
    })
}

/// Copies the canonical nodes into `us` and `vs`, each of `capacity` doubles.
///
/// # Safety
/// `us` and `vs` must hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn rpfif_graph_nodes(
    graph: *const RpfifGraph,
    us: *mut f64,
    vs: *mut f64,
    capacity: usize,
) -> RpfifStatus {
    guard(|| {
        let g = &nonnull(graph, "graph")?.0;
        if capacity < g.len() {
            return Err(Failure::Buffer {
                needed: g.len(),
                capacity,
            });
        }
        let us = slice_mut(us, g.len(), "us")?;
        let vs = slice_mut(vs, g.len(), "vs")?;
        for i in 0..g.len() {
            us[i] = g.u(i);
            vs[i] = g.v(i);
        }
        Ok(())
    })
}

/// Value of the interpolation function at the point `(x : z)`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rpfif_evaluate(
    ifs: *const RpfifIfs,
    x: f64,
    z: f64,
    depth: usize,
    out_v: *mut f64,
) -> RpfifStatus {
    guard(|| {
        let ifs = nonnull(ifs, "ifs")?;
        let v = evaluate_rpfif(&ifs.0, &AxisPoint10::new(x, z)?, depth)?;
        *nonnull_mut(out_v, "out_v")? = v.v();
        Ok(())
    })
}

/// Random-iteration attractor: writes `n_points` canonical `(u, v)` pairs
/// to `out_uv`, which must hold `capacity >= 2 * n_points` doubles.
///
/// # Safety
/// `out_uv` must hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn rpfif_chaos_game(
    ifs: *const RpfifIfs,
    n_points: usize,
    burn_in: usize,
    seed: u64,
    out_uv: *mut f64,
    capacity: usize,
) -> RpfifStatus {
    guard(|| {
        let ifs = nonnull(ifs, "ifs")?;
        let needed = n_points.saturating_mul(2);
        if capacity < needed {
            return Err(Failure::Buffer { needed, capacity });
        }
        let out = slice_mut(out_uv, needed, "out_uv")?;
        let cloud = chaos_game(&ifs.0, n_points, burn_in, seed)?;
        for (pair, p) in out.chunks_exact_mut(2).zip(cloud.points()) {
            pair[0] = p.u();
            pair[1] = p.v();
        }
        Ok(())
    })
}
