//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rpfif::engine::{
    chaos_game, classical_fif_oracle, deterministic_attractor, hausdorff_distance, ifs_grid, rb_apply,
    rb_fixed_point, slice_at_level, AttractorOptions, ClassicalFifSpec, Metric, PointCloud,
};
use rpfif::geometry::graph_sup_dist;
use rpfif::render::{cli_main_with, parse_config, pixel_of};
use rpfif::rpifs::{build_ifs, compute_f_coeffs, compute_l_coeffs, lipschitz_residuals};
use rpfif::{BuildOptions, InterpolationData, ProjectivePoint, Rpifs, SampledGraph};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const NODES: [(f64, f64); 5] = [(-2.0, 1.0), (-1.0, -1.0), (0.0, 1.0), (1.0, -1.0), (2.0, 1.0)];
const SCALES: [f64; 3] = [0.1, 0.3, -0.3];

fn example_data() -> InterpolationData {
    let t: Vec<[f64; 3]> = NODES.iter().map(|&(x, y)| [x, y, 1.0]).collect();
    InterpolationData::from_triples(&t).unwrap()
}

fn example(scales: &[f64]) -> Rpifs {
    build_ifs(
        &example_data(),
        scales,
        BuildOptions {
            allow_degenerate: true,
        },
    )
    .unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> ProjectivePoint {
    let (u, v): (f64, f64) = (rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
    let z: f64 = rng.random_range(0.1..10.0) * if rng.random_bool(0.5) { -1.0 } else { 1.0 };
    ProjectivePoint::new(u * z, v * z, z).unwrap()
}

fn random_lambda(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let l: f64 = rng.random_range(-1e3..1e3);
        if l.abs() >= 1e-6 {
            return l;
        }
    }
}

fn gap(p: &ProjectivePoint, q: &ProjectivePoint) -> f64 {
    (p.u() - q.u()).abs().max((p.v() - q.v()).abs())
}

fn vector_space_axioms() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let (p, q, r) = (
            random_point(&mut rng),
            random_point(&mut rng),
            random_point(&mut rng),
        );
        let (a, b): (f64, f64) = (rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        let errs = [
            gap(&p.oplus(&q), &q.oplus(&p)),
            gap(&p.oplus(&q).oplus(&r), &p.oplus(&q.oplus(&r))),
            gap(&p.oplus(&ProjectivePoint::ZERO), &p),
            gap(&p.oplus(&p.neg()), &ProjectivePoint::ZERO),
            gap(&p.odot(b).odot(a), &p.odot(a * b)),
            gap(&p.oplus(&q).odot(a), &p.odot(a).oplus(&q.odot(a))),
            gap(&p.odot(a + b), &p.odot(a).oplus(&p.odot(b))),
            gap(&p.odot(1.0), &p),
        ];
        worst = errs.iter().copied().fold(worst, f64::max);
    }
    let t = start.elapsed();
    check(
        worst < 1e-12 && t < Duration::from_secs(1),
        format!("10000 triples, max error {worst:.2e}, {t:.2?}"),
    )
}

fn representative_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let (p, q) = (random_point(&mut rng), random_point(&mut rng));
        let l = random_lambda(&mut rng);
        let a: f64 = rng.random_range(-10.0..10.0);
        let ps = p.rescale(l).unwrap();
        let (h, v) = p.decompose();
        let (hs, vs) = ps.decompose();
        let errs = [
            gap(&ps, &p),
            gap(&ps.oplus(&q), &p.oplus(&q)),
            gap(&q.ominus(&ps), &q.ominus(&p)),
            gap(&ps.odot(a), &p.odot(a)),
            gap(&ps.neg(), &p.neg()),
            gap(&ps.hadamard(&q), &p.hadamard(&q)),
            (hs.u() - h.u()).abs(),
            (vs.v() - v.v()).abs(),
            (ps.dist_p(&q) - p.dist_p(&q)).abs(),
            (ps.norm_p() - p.norm_p()).abs(),
            (ps.dist_theta(&q, 0.5).unwrap() - p.dist_theta(&q, 0.5).unwrap()).abs(),
        ];
        worst = errs.iter().copied().fold(worst, f64::max);
    }
    let base = example_data();
    let mut coeff_worst = 0.0f64;
    for _ in 0..10_000 {
        let t: Vec<[f64; 3]> = NODES
            .iter()
            .map(|&(x, y)| {
                let l = random_lambda(&mut rng);
                [x * l, y * l, l]
            })
            .collect();
        let data = InterpolationData::from_triples(&t).unwrap();
        let n = rng.random_range(1..=4);
        let d = SCALES[rng.random_range(0..3)];
        let (a, b) = compute_l_coeffs(&data, n).unwrap();
        let (a0, b0) = compute_l_coeffs(&base, n).unwrap();
        let (c, f) = compute_f_coeffs(&data, n, d).unwrap();
        let (c0, f0) = compute_f_coeffs(&base, n, d).unwrap();
        for e in [a - a0, b - b0, c - c0, f - f0] {
            coeff_worst = coeff_worst.max(e.abs());
        }
    }
    check(
        worst < 1e-12 && coeff_worst < 1e-12,
        format!("10000 pairs, ops max error {worst:.2e}; coefficients max error {coeff_worst:.2e}"),
    )
}

fn metric_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let tol = 1e-12;
    let mut violations = 0;
    let mut checks = 0;
    for theta in [0.1, 0.5, 1.0, 2.0] {
        for _ in 0..10_000 {
            let (p, q, r) = (
                random_point(&mut rng),
                random_point(&mut rng),
                random_point(&mut rng),
            );
            let dpq = p.dist_p(&q);
            let slack = tol * (1.0 + dpq);
            let dt = p.dist_theta(&q, theta).unwrap();
            let lower = if theta >= 1.0 { dpq } else { theta * dpq };
            let conds = [
                dpq >= 0.0,
                p.dist_p(&p) == 0.0,
                (dpq - q.dist_p(&p)).abs() <= tol,
                p.dist_p(&r) <= dpq + q.dist_p(&r) + tol * (1.0 + p.dist_p(&r)),
                lower <= dt + slack,
                dt <= (1.0 + theta) * dpq + slack,
            ];
            checks += conds.len();
            violations += conds.iter().filter(|&&c| !c).count();
        }
    }
    check(
        violations == 0,
        format!("{checks} checks over 4 thetas, {violations} violations"),
    )
}

fn lipschitz_identities() -> Outcome {
    let mut worst = 0.0f64;
    for (i, d) in SCALES.iter().enumerate() {
        let rep = lipschitz_residuals(&example(&[*d; 4]), 10_000, 40 + i as u64);
        worst = worst.max(rep.max_residual());
    }
    check(
        worst < 1e-12,
        format!("10000 inputs per map, 3 scale settings, max residual {worst:.2e}"),
    )
}

fn joinup() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for code in 0..81 {
        let scales: Vec<f64> = (0..4).map(|k| SCALES[(code / 3usize.pow(k)) % 3]).collect();
        let rep = example(&scales).verify_joinup(1e-12);
        worst = worst.max(rep.max_residual);
        count += 1;
    }
    check(
        worst < 1e-12,
        format!("{count} scale vectors, max residual {worst:.2e}"),
    )
}

fn certificate_values() -> Outcome {
    let ifs = example(&[0.1; 4]);
    let cert = ifs.contraction_certificate(None).unwrap();
    let mut err = 0.0f64;
    for (n, m) in ifs.maps().iter().enumerate() {
        let c_expected = if n % 2 == 0 { -0.5 } else { 0.5 };
        err = err.max((m.a - 0.25).abs()).max((m.c - c_expected).abs());
    }
    err = err.max(cert.theta_max.abs()).max((cert.d_bound - 0.1).abs());
    check(
        err < 1e-12 && !cert.sufficient,
        format!(
            "theta_max {}, d_bound {}, sufficient {}, max error {err:.2e}",
            cert.theta_max, cert.d_bound, cert.sufficient
        ),
    )
}

fn rb_contraction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_excess = f64::NEG_INFINITY;
    for trial in 0..100 {
        let ifs = example(&[SCALES[trial % 3]; 4]);
        let grid = ifs_grid(&ifs, 257).unwrap();
        let lin = SampledGraph::piecewise_linear(&ifs.data().canonical_nodes(), &grid).unwrap();
        let us = lin.us();
        let mut random = || {
            let mut vs = lin.vs();
            for v in &mut vs[1..256] {
                *v += rng.random_range(-3.0..3.0);
            }
            SampledGraph::from_canonical(&us, &vs).unwrap()
        };
        let (f, g) = (random(), random());
        let before = graph_sup_dist(&f, &g).unwrap();
        let after = graph_sup_dist(&rb_apply(&ifs, &f).unwrap(), &rb_apply(&ifs, &g).unwrap()).unwrap();
        worst_excess = worst_excess.max(after / before - ifs.d_bound());
    }
    check(
        worst_excess <= 1e-9,
        format!("100 pairs on 257 nodes, max(ratio - d_bound) = {worst_excess:.2e}"),
    )
}

fn fixed_point_convergence() -> Outcome {
    let start = Instant::now();
    let (f, trace) = rb_fixed_point(&example(&[0.3; 4]), 1025, 1e-10, 200).unwrap();
    let t = start.elapsed();
    let ratios = trace.ratios();
    let late = ratios.iter().skip(2).copied().fold(0.0, f64::max);
    let residual = NODES
        .iter()
        .map(|&(x, y)| (f.v(f.node_index(x).unwrap()) - y).abs())
        .fold(0.0, f64::max);
    check(
        trace.converged && late <= 0.35 && residual < 1e-10 && t < Duration::from_secs(5),
        format!(
            "{} iterations, deltas [{}], max ratio after iteration 3 {late:.3}, node residual {residual:.2e}, {t:.2?}",
            trace.iterations,
            trace.deltas.iter().map(|d| format!("{d:.2e}")).collect::<Vec<_>>().join(" ")
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for d in SCALES {
        let (f, trace) = rb_fixed_point(&example(&[d; 4]), 1025, 1e-13, 500).unwrap();
        let spec = ClassicalFifSpec::from_nodes(&NODES, &[d; 4]).unwrap();
        let o = classical_fif_oracle(&spec, 1025, 1e-13, 500).unwrap();
        if !trace.converged || !o.converged {
            return Err(format!("d = {d}: did not converge"));
        }
        let diff = f
            .vs()
            .iter()
            .zip(&o.ys)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        worst = worst.max(diff);
    }
    check(
        worst < 1e-9,
        format!("3 scale settings on 1025 nodes, max difference {worst:.2e}"),
    )
}

fn attractor_is_graph() -> Outcome {
    let start = Instant::now();
    let threshold = 3.0 * 4.0 / 1024.0;
    let mut parts = Vec::new();
    let mut ok = true;
    for d in SCALES {
        let ifs = example(&[d; 4]);
        let (f, _) = rb_fixed_point(&ifs, 1025, 1e-12, 500).unwrap();
        let graph = PointCloud::new(f.points()).unwrap();
        let cloud = chaos_game(&ifs, 200_000, 50, 2024).unwrap();
        let h = hausdorff_distance(&cloud, &graph, Metric::P).unwrap();
        ok &= h < threshold;
        parts.push(format!("d={d}: {h:.2e}"));
    }
    let t = start.elapsed();
    let mut detail = format!(
        "Hausdorff to graph [{}] vs {threshold:.2e}, {t:.2?}",
        parts.join(", ")
    );
    if !ok {
        // Separate sampling error of the 1025-node graph from error in the cloud.
        let mut notes = Vec::new();
        for d in SCALES {
            let ifs = example(&[d; 4]);
            let (coarse, _) = rb_fixed_point(&ifs, 1025, 1e-12, 500).unwrap();
            let (fine, _) = rb_fixed_point(&ifs, 4 * 4usize.pow(7) + 1, 1e-13, 500).unwrap();
            let coarse = PointCloud::new(coarse.points()).unwrap();
            let fine = PointCloud::new(fine.points()).unwrap();
            let cloud = chaos_game(&ifs, 200_000, 50, 2024).unwrap();
            notes.push(format!(
                "d={d}: cloud to 65537-node graph {:.2e}, 1025-node graph to 65537-node graph {:.2e}",
                hausdorff_distance(&cloud, &fine, Metric::P).unwrap(),
                hausdorff_distance(&coarse, &fine, Metric::P).unwrap()
            ));
        }
        detail = format!("{detail}; diagnostic: {}", notes.join(", "));
    }
    check(ok && t < Duration::from_secs(30), detail)
}

/// Largest Euclidean operator norm over all length-k products of the maps' linear parts.
fn word_norms(ifs: &Rpifs, k_max: usize) -> Vec<f64> {
    let parts: Vec<[[f64; 2]; 2]> = ifs
        .maps()
        .iter()
        .map(|m| {
            let w = m.matrix();
            [[w[0][0], w[0][1]], [w[1][0], w[1][1]]]
        })
        .collect();
    let norm = |m: &[[f64; 2]; 2]| {
        let (p, q, r) = (
            m[0][0] * m[0][0] + m[1][0] * m[1][0],
            m[0][0] * m[0][1] + m[1][0] * m[1][1],
            m[0][1] * m[0][1] + m[1][1] * m[1][1],
        );
        (0.5 * (p + r + ((p - r).powi(2) + 4.0 * q * q).sqrt())).sqrt()
    };
    let mul = |x: &[[f64; 2]; 2], y: &[[f64; 2]; 2]| {
        let mut z = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
            }
        }
        z
    };
    let mut level = vec![[[1.0, 0.0], [0.0, 1.0]]];
    let mut out = vec![1.0];
    for _ in 0..k_max {
        level = level
            .iter()
            .flat_map(|w| parts.iter().map(|m| mul(w, m)))
            .collect();
        out.push(level.iter().map(norm).fold(0.0, f64::max));
    }
    out
}

fn hutchinson_convergence() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for d in SCALES {
        let ifs = example(&[d; 4]);
        let rate = ifs.a_max().max(ifs.d_bound());
        let (f, _) = rb_fixed_point(&ifs, 4 * 4usize.pow(7) + 1, 1e-13, 500).unwrap();
        let reference = PointCloud::new(f.points()).unwrap();
        let lip = word_norms(&ifs, 6);
        if lip[1] >= 1.0 {
            return Err(format!(
                "d={d}: maps are not Euclidean contractions (L={:.3})",
                lip[1]
            ));
        }
        // Collage bound on the distance between the sampled reference and the attractor.
        let image = rpfif::engine::hutchinson_step(&ifs, &reference);
        let eps = hausdorff_distance(&reference, &image, Metric::P).unwrap() / (1.0 - lip[1]);
        let (y0, yn) = (NODES[0].1, NODES[4].1);
        let segment: Vec<ProjectivePoint> = NODES
            .iter()
            .map(|&(x, _)| ProjectivePoint::from_canonical(x, y0 + (yn - y0) * (x + 2.0) / 4.0))
            .collect();
        let initial = PointCloud::new(segment).unwrap();
        let h0 = hausdorff_distance(&initial, &reference, Metric::P).unwrap();
        let mut h = Vec::new();
        let mut bound = Vec::new();
        for (k, l) in lip.iter().enumerate().skip(1) {
            let cloud = deterministic_attractor(&ifs, &initial, k, AttractorOptions::default()).unwrap();
            h.push(hausdorff_distance(&cloud, &reference, Metric::P).unwrap());
            bound.push(l * (h0 + eps) + eps);
        }
        let c = (1..=6)
            .map(|k| bound[k - 1] / rate.powi(k as i32))
            .fold(0.0, f64::max);
        let c_seen = (1..=6)
            .map(|k| h[k - 1] / rate.powi(k as i32))
            .fold(0.0, f64::max);
        let bounded = h.iter().zip(&bound).all(|(hk, bk)| hk <= bk);
        let monotone = h.windows(2).all(|w| w[1] <= w[0] + 1e-9);
        ok &= bounded && monotone;
        parts.push(format!(
            "d={d}: r={rate}, C={c:.2} (observed {c_seen:.2}), ref err {eps:.1e}, H=[{}]{}",
            h.iter().map(|x| format!("{x:.2e}")).collect::<Vec<_>>().join(" "),
            if bounded && monotone { "" } else { " VIOLATION" }
        ));
    }
    check(ok, parts.join("; "))
}

fn degenerate_baseline() -> Outcome {
    let ifs = example(&[0.0; 4]);
    let (f, trace) = rb_fixed_point(&ifs, 1025, 1e-10, 200).unwrap();
    let grid = ifs_grid(&ifs, 1025).unwrap();
    let lin = SampledGraph::piecewise_linear(&NODES, &grid).unwrap();
    let residual = graph_sup_dist(&f, &lin).unwrap();
    check(
        trace.iterations == 1 && residual < 1e-14,
        format!("{} iteration(s), residual {residual:.2e}", trace.iterations),
    )
}

fn slice_similarity() -> Outcome {
    let ifs = example(&[0.3; 4]);
    let (f, _) = rb_fixed_point(&ifs, 1025, 1e-10, 200).unwrap();
    let cloud = PointCloud::new(f.points())
        .unwrap()
        .merge(chaos_game(&ifs, 10_000, 50, 5).unwrap());
    let s1 = slice_at_level(&cloud, 1.0).unwrap();
    let s2 = slice_at_level(&cloud, 2.0).unwrap();
    let sm = slice_at_level(&cloud, -1.0).unwrap();
    let mut worst = 0.0f64;
    for ((a, b), c) in s1.iter().zip(&s2).zip(&sm) {
        for k in 0..3 {
            worst = worst.max((b[k] - 2.0 * a[k]).abs()).max((c[k] + a[k]).abs());
        }
    }
    check(
        worst < 1e-12,
        format!("{} points, max error {worst:.2e}", s1.len()),
    )
}

fn configs_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs"))
}

const CONFIGS: [&str; 3] = ["example_d01.toml", "example_d03.toml", "example_dm03.toml"];

fn run_cli(args: &[&str]) -> Result<(), String> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["rpfif"];
    argv.extend_from_slice(args);
    match cli_main_with(argv, &mut out, &mut err) {
        0 => Ok(()),
        code => Err(format!("exit {code}: {}", String::from_utf8_lossy(&err))),
    }
}

fn render(config: &str, dir: &Path, tag: &str) -> Result<std::path::PathBuf, String> {
    let cfg = configs_dir().join(config);
    let raster = dir.join(format!("{tag}.pbm"));
    let vector = dir.join(format!("{tag}.svg"));
    let prefix = dir.join(format!("{tag}_slice"));
    run_cli(&[
        "render",
        "--config",
        cfg.to_str().unwrap(),
        "--raster",
        raster.to_str().unwrap(),
        "--vector",
        vector.to_str().unwrap(),
        "--slice-prefix",
        prefix.to_str().unwrap(),
    ])?;
    Ok(raster)
}

fn figure_reproduction() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut rasters = Vec::new();
    let mut lit_nodes = true;
    for config in CONFIGS {
        let path = render(config, dir.path(), config)?;
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let spec = parse_config(&std::fs::read_to_string(configs_dir().join(config)).unwrap()).unwrap();
        let rows: Vec<Vec<u8>> = text
            .lines()
            .skip(2)
            .map(|l| l.split(' ').map(|c| (c == "1") as u8).collect())
            .collect();
        for &(x, y) in &NODES {
            let (c, r) = pixel_of(&spec.viewport, spec.width, spec.height, x, y).unwrap();
            lit_nodes &= rows[r][c] == 1;
        }
        rasters.push(rows);
    }
    let differ = |a: usize, b: usize| {
        rasters[a]
            .iter()
            .flatten()
            .zip(rasters[b].iter().flatten())
            .filter(|(p, q)| p != q)
            .count()
    };
    let diffs = [differ(0, 1), differ(0, 2), differ(1, 2)];
    check(
        lit_nodes && diffs.iter().all(|&d| d > 0),
        format!("3 rasters, data-node pixels lit: {lit_nodes}, pairwise differing pixels {diffs:?}"),
    )
}

fn reproducibility() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut compared = 0;
    for config in CONFIGS {
        let cfg = configs_dir().join(config);
        let cfg = cfg.to_str().unwrap();
        let produce = |tag: &str| -> Result<Vec<Vec<u8>>, String> {
            let base = dir.path().join(tag);
            std::fs::create_dir_all(&base).unwrap();
            render(config, &base, "fig")?;
            let graph = base.join("graph.csv");
            run_cli(&["fixed-point", "--config", cfg, "--out", graph.to_str().unwrap()])?;
            let chaos = base.join("chaos.csv");
            run_cli(&["attract", "--config", cfg, "--out", chaos.to_str().unwrap()])?;
            let det = base.join("det.csv");
            run_cli(&[
                "attract",
                "--config",
                cfg,
                "--mode",
                "deterministic",
                "--steps",
                "4",
                "--out",
                det.to_str().unwrap(),
            ])?;
            let mut names: Vec<_> = std::fs::read_dir(&base)
                .unwrap()
                .map(|e| e.unwrap().path())
                .collect();
            names.sort();
            Ok(names.iter().map(|p| std::fs::read(p).unwrap()).collect())
        };
        let first = produce(&format!("{config}-a"))?;
        let second = produce(&format!("{config}-b"))?;
        if first != second {
            return Err(format!("{config}: artifacts differ between runs"));
        }
        compared += first.len();
    }
    check(
        true,
        format!("{compared} artifacts byte-identical across repeated runs"),
    )
}

fn main() {
    let criteria: [Criterion; 15] = [
        ("vector-space axioms", vector_space_axioms),
        ("representative invariance", representative_invariance),
        ("metric axioms and d_theta equivalence", metric_suites),
        ("exact Lipschitz identities", lipschitz_identities),
        ("join-up residuals", joinup),
        ("certificate values", certificate_values),
        ("RB operator contraction", rb_contraction),
        ("fixed-point convergence", fixed_point_convergence),
        ("classical oracle equivalence", oracle_equivalence),
        ("chaos-game attractor equals graph", attractor_is_graph),
        ("Hutchinson convergence", hutchinson_convergence),
        ("zero-scale baseline", degenerate_baseline),
        ("slice similarity", slice_similarity),
        ("figure reproduction", figure_reproduction),
        ("artifact reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
