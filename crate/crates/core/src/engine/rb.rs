//! The Read-Bajraktarevic operator
//!
//! ```text
//! (T f)(p) = F_n( L_n^{-1}(p) ⊕ f(L_n^{-1}(p)) )   for p in [X_{n-1}, X_n]
//! ```
//!
//! acting on functions pinned to the first and last data ordinates. `T`
//! contracts the sup-distance by `max |d_n|`, so iteration from any pinned
//! seed converges to the interpolation function.

use rayon::prelude::*;

use super::IterationTrace;
use crate::error::{Error, Result};
use crate::geometry::{graph_sup_dist, lerp_table, same_node, sample_breakpoints, SampledGraph};
use crate::projective::{AxisPoint01, AxisPoint10, ProjectivePoint};
use crate::rpifs::{ProjectiveMap, Rpifs};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 200;
/// Grid nodes per subinterval when none is configured; `grid_m = 256 N + 1`.
pub const DEFAULT_PER_SEGMENT: usize = 256;

/// Grid of `grid_m` nodes with every data abscissa a node: each
/// subinterval is split uniformly into `(grid_m - 1) / N` steps.
pub fn ifs_grid(ifs: &Rpifs, grid_m: usize) -> Result<Vec<AxisPoint10>> {
    let n = ifs.maps().len();
    if grid_m < n + 1 || (grid_m - 1) % n != 0 {
        return Err(Error::GridAlignment(format!(
            "grid_m = {grid_m} is not of the form k*{n} + 1"
        )));
    }
    Ok(sample_breakpoints(&ifs.data().abscissae(), (grid_m - 1) / n))
}

fn check_alignment(ifs: &Rpifs, f: &SampledGraph) -> Result<()> {
    let xs = ifs.data().abscissae();
    let (first, last) = (f.u(0), f.u(f.len() - 1));
    if !same_node(first, xs[0]) || !same_node(last, xs[xs.len() - 1]) {
        return Err(Error::GridAlignment(format!(
            "grid spans [{first}, {last}], data spans [{}, {}]",
            xs[0],
            xs[xs.len() - 1]
        )));
    }
    if let Some(x) = xs.iter().find(|&&x| f.node_index(x).is_none()) {
        return Err(Error::GridAlignment(format!(
            "data abscissa {x} is not a grid node"
        )));
    }
    Ok(())
}

fn rb_value(map: &ProjectiveMap, f: &SampledGraph, node: &AxisPoint10) -> f64 {
    let mut pre = map.apply_l_inv(node);
    // Preimages of data nodes are the interval endpoints up to rounding.
    for end in [f.u(0), f.u(f.len() - 1)] {
        if same_node(pre.u(), end) {
            pre = AxisPoint10::from_canonical(end);
        }
    }
    let fv = AxisPoint01::from_canonical(f.interp(pre.u()));
    map.apply_f(&ProjectivePoint::compose(&pre, &fv)).v()
}

/// One application of `T` on the grid of `f`.
pub fn rb_apply(ifs: &Rpifs, f: &SampledGraph) -> Result<SampledGraph> {
    check_alignment(ifs, f)?;
    let maps = ifs.maps();
    let values: Vec<AxisPoint01> = f
        .abscissae()
        .par_iter()
        .map(|node| {
            let n = ifs.locate(node.u()).expect("grid lies inside the data interval");
            let v = rb_value(&maps[n], f, node);
            // Shared nodes go to the right-hand map; the left-hand map must agree.
            #[cfg(debug_assertions)]
            if n > 0 && same_node(node.u(), ifs.data().cx(n)) {
                let other = rb_value(&maps[n - 1], f, node);
                debug_assert!(
                    (other - v).abs() <= 1e-9 * (1.0 + v.abs()),
                    "maps {n} and {} disagree at shared node: {other} vs {v}",
                    n + 1
                );
            }
            AxisPoint01::from_canonical(v)
        })
        .collect();
    SampledGraph::new(f.abscissae().to_vec(), values)
}

/// Iterates `T` from the piecewise-linear interpolant until successive
/// iterates differ by less than `tol` in sup-distance, or `max_iter` runs out.
pub fn rb_fixed_point(
    ifs: &Rpifs,
    grid_m: usize,
    tol: f64,
    max_iter: usize,
) -> Result<(SampledGraph, IterationTrace)> {
    if !(tol > 0.0) || max_iter == 0 {
        return Err(Error::InvalidArgument(
            "tolerance must be positive and max_iter at least 1".into(),
        ));
    }
    let grid = ifs_grid(ifs, grid_m)?;
    let mut f = SampledGraph::piecewise_linear(&ifs.data().canonical_nodes(), &grid)?;
    let mut trace = IterationTrace {
        deltas: Vec::new(),
        iterations: 0,
        converged: false,
    };
    for _ in 0..max_iter {
        let next = rb_apply(ifs, &f)?;
        let delta = graph_sup_dist(&next, &f)?;
        f = next;
        trace.deltas.push(delta);
        trace.iterations += 1;
        if delta < tol {
            trace.converged = true;
            break;
        }
    }
    Ok((f, trace))
}

/// Grid-free evaluation of the interpolation function at `p`.
///
/// Pulls `p` back through `depth` inverse maps, seeds with the linear
/// interpolant there, and pushes forward through the `F_n`. The error is at
/// most `max|d_n|^depth` times the sup-distance between the interpolation
/// function and the linear interpolant.
pub fn evaluate_rpfif(ifs: &Rpifs, p: &AxisPoint10, depth: usize) -> Result<AxisPoint01> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    if ifs.locate_point(p).is_none() {
        return Err(Error::OutsideInterval(p.u()));
    }
    let data = ifs.data();
    let (lo, hi) = (data.cx(0), data.cx(data.map_count()));
    let maps = ifs.maps();

    let mut address = Vec::with_capacity(depth);
    let mut here = p.canonicalize();
    for _ in 0..depth {
        let n = ifs.locate(here.u()).expect("clamped into the interval");
        let pre = maps[n].apply_l_inv(&here);
        let pre = AxisPoint10::from_canonical(pre.u().clamp(lo, hi));
        address.push((n, pre));
        here = pre;
    }

    let nodes = data.canonical_nodes();
    let (us, vs): (Vec<f64>, Vec<f64>) = nodes.into_iter().unzip();
    let mut value = AxisPoint01::from_canonical(lerp_table(&us, &vs, here.u()));
    for (n, pre) in address.into_iter().rev() {
        value = maps[n].apply_f(&ProjectivePoint::compose(&pre, &value));
    }
    Ok(value)
}
