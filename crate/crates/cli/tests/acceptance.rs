//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use eiko_core::burgers::{
    balance_residual, kruzhkov_levels, oleinik_check, shock_weighted_length, BurgersGenerator,
};
use eiko_core::characteristics::{classify, grid_pairs, ordering_check, winding_number, Loop};
use eiko_core::entropy::entropy_production;
use eiko_core::fields::{divergence_weak, generate, negate_half_plane, Generator};
use eiko_core::geometry::outer;
use eiko_core::kinetic::{kinetic_residual, reconstruction_error};
use eiko_core::regularity::cet_bound;
use eiko_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

struct Check {
    pass: bool,
    detail: String,
}

impl Check {
    fn new(parts: Vec<(bool, String)>) -> Self {
        Check {
            pass: parts.iter().all(|p| p.0),
            detail: parts
                .into_iter()
                .map(|p| p.1)
                .collect::<Vec<_>>()
                .join("; "),
        }
    }
}

fn part(pass: bool, msg: String) -> (bool, String) {
    (pass, format!("{}{msg}", if pass { "" } else { "[x] " }))
}

fn timed(limit: Option<Duration>, start: Instant) -> (bool, String) {
    let t = start.elapsed();
    match limit {
        Some(l) => part(
            t <= l,
            format!("runtime {:.2}s <= {:.0}s", t.as_secs_f64(), l.as_secs_f64()),
        ),
        None => (true, format!("runtime {:.2}s", t.as_secs_f64())),
    }
}

/// Node-centred `n × n` grid on `[-1, 1]²`, half-shifted off the origin.
fn shifted_grid(n: usize) -> GridSpec {
    GridSpec::centered(n, n, 2.0 / (n - 1) as f64, Vec2::ZERO)
        .unwrap()
        .half_shifted()
}

/// `n × n` grid on `[-1, 1]²` whose nodes avoid both axes.
fn cell_grid(n: usize) -> GridSpec {
    GridSpec::centered(n, n, 2.0 / n as f64, Vec2::ZERO).unwrap()
}

fn vortex(n: usize, alpha: f64) -> GridField2 {
    generate(&Generator::vortex(Vec2::ZERO, alpha), shifted_grid(n)).unwrap()
}

fn random_fourier(rng: &mut ChaCha8Rng) -> Entropy {
    let m = rng.gen_range(1..=8);
    let c: Vec<f64> = (0..=m).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let s: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    Entropy::from_fourier(c, s)
}

fn entropy_family() -> Vec<Entropy> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut out: Vec<Entropy> = (0..10).map(|_| random_fourier(&mut rng)).collect();
    for j in 0..16 {
        out.push(Entropy::approximate_elementary(
            Vec2::from_angle(2.0 * PI * j as f64 / 16.0 + 0.1),
            4,
        ));
    }
    out
}

/// A ratio within ±30% of one half.
fn halves(r: f64) -> bool {
    (0.35..=0.65).contains(&r)
}

fn c1_entropy_production() -> Check {
    let start = Instant::now();
    let tol = Tolerances::default();
    let zeta = TestBump::new(Vec2::new(0.5, 0.3), 0.25);
    let (coarse, fine) = (vortex(257, 1.0), vortex(513, 1.0));
    let (mut worst, mut ratios) = (0.0f64, Vec::new());
    for e in entropy_family() {
        let a = entropy_production(&e, &coarse, &zeta, &tol).unwrap();
        let b = entropy_production(&e, &fine, &zeta, &tol).unwrap();
        worst = worst.max(a.abs());
        ratios.push(b.abs() / a.abs());
    }
    let (lo, hi) = ratios
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(l, h), &r| (l.min(r), h.max(r)));
    let halved = ratios.iter().filter(|&&r| halves(r)).count();
    Check::new(vec![
        part(worst <= 0.02, format!("max |production| at h=1/128 {worst:.3e} <= 0.02")),
        part(
            halved == ratios.len(),
            format!("h -> h/2 ratio in [0.35, 0.65] for {halved}/{} entropies (observed {lo:.4}..{hi:.4})", ratios.len()),
        ),
        timed(Some(Duration::from_secs(30)), start),
    ])
}

fn c2_kinetic() -> Check {
    let start = Instant::now();
    let tol = Tolerances::default();
    let zeta = TestBump::new(Vec2::new(0.5, 0.3), 0.25);
    let fan = DirectionFan::new(64).unwrap();
    let max_residual = |u: &GridField2| {
        fan.directions()
            .into_iter()
            .map(|xi| kinetic_residual(u, xi, &zeta, &tol).unwrap().abs())
            .fold(0.0, f64::max)
    };
    let (a, b) = (
        max_residual(&vortex(257, 1.0)),
        max_residual(&vortex(513, 1.0)),
    );
    let jump = generate(&Generator::horizontal_jump(), cell_grid(512)).unwrap();
    let zj = TestBump::new(Vec2::new(0.1, 0.0), 0.4);
    let mut worst_rel: f64 = 0.0;
    for alpha in [0.3f64, 0.9, -0.5, 1.2] {
        let r = kinetic_residual(&jump, Vec2::from_angle(alpha), &zj, &tol).unwrap();
        let exact = alpha.sin() * zj.line_integral(Vec2::ZERO, Vec2::E1);
        worst_rel = worst_rel.max((r - exact).abs() / exact.abs());
    }
    Check::new(vec![
        part(
            a <= 0.02,
            format!("max over 64 directions at h=1/128 {a:.3e} <= 0.02"),
        ),
        part(
            halves(b / a),
            format!("h -> h/2 ratio {:.4} in [0.35, 0.65]", b / a),
        ),
        part(
            worst_rel <= 0.05,
            format!("jump line integral relative error at h=1/256 {worst_rel:.2e} <= 0.05"),
        ),
        timed(None, start),
    ])
}

fn c3_commutator() -> Check {
    let start = Instant::now();
    let u = vortex(257, 1.0);
    let h = u.spec.h;
    let w = Window::annulus(Vec2::ZERO, 0.25, 0.5);
    let ladder = [8.0, 4.0, 2.0];
    let v: Vec<f64> = ladder
        .iter()
        .map(|m| cet_bound(&u, m * h, &w).unwrap().value)
        .collect();
    let jump = generate(&Generator::horizontal_jump(), cell_grid(256)).unwrap();
    let wj = Window::rect(-0.5, -0.5, 0.5, 0.5);
    let j: Vec<f64> = ladder
        .iter()
        .map(|m| cet_bound(&jump, m * jump.spec.h, &wj).unwrap().value)
        .collect();
    let drop = (j[0] - j[2]) / j[0];
    Check::new(vec![
        part(
            v[0] > v[1] && v[1] > v[2],
            format!("vortex {:.3e} > {:.3e} > {:.3e}", v[0], v[1], v[2]),
        ),
        part(
            v[2] <= v[0] / 3.0,
            format!("final/initial {:.3} <= 1/3", v[2] / v[0]),
        ),
        part(
            drop < 0.2,
            format!(
                "jump {:.3e} -> {:.3e}, decrease {:.1}% < 20%",
                j[0],
                j[2],
                100.0 * drop
            ),
        ),
        timed(None, start),
    ])
}

fn c4_decomposition() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let x = ExtendedEntropy::new(random_fourier(&mut rng));
        for _ in 0..1000 {
            let z = Vec2::from_angle(rng.gen_range(0.0..2.0 * PI)) * rng.gen_range(0.6..=1.4);
            let d = x.jacobian(z);
            let p = outer(x.psi(z), z);
            let g = x.gamma(z);
            for i in 0..2 {
                for k in 0..2 {
                    let id = if i == k { g } else { 0.0 };
                    worst = worst.max((d[i][k] + 2.0 * p[i][k] - id).abs());
                }
            }
        }
    }
    Check::new(vec![
        part(
            worst <= 1e-8,
            format!("max residual over 10 x 1000 samples {worst:.2e} <= 1e-8"),
        ),
        timed(Some(Duration::from_secs(1)), start),
    ])
}

fn c5_averaging() -> Check {
    let start = Instant::now();
    let u = vortex(257, 1.0);
    let ns = [32usize, 64, 128, 256];
    let errs: Vec<f64> = ns
        .iter()
        .map(|&n| reconstruction_error(&u, &DirectionFan::new(n).unwrap()).max_error)
        .collect();
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 4.0, ys.iter().sum::<f64>() / 4.0);
    let slope = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    Check::new(vec![
        part(
            errs[3] <= 0.05,
            format!("max error at N=256 {:.3e} <= 0.05", errs[3]),
        ),
        part(
            (-slope - 1.0).abs() <= 0.1,
            format!("observed order {:.3} = 1 +- 0.1", -slope),
        ),
        timed(None, start),
    ])
}

fn c6_classification() -> Check {
    let start = Instant::now();
    let tol = Tolerances::default();
    let mut parts = Vec::new();
    for alpha in [1.0, -1.0] {
        let u = vortex(257, alpha);
        let h = u.spec.h;
        let r = classify(&u, &Window::annulus(Vec2::ZERO, 0.3, 0.6), 0.3, &tol).unwrap();
        let err = r.vortex_center.map_or(f64::INFINITY, |p| p.norm());
        let res = r.residual.unwrap_or(f64::INFINITY);
        parts.push(part(
            r.verdict == Verdict::Vortex
                && err <= 2.0 * h
                && r.orientation == Some(alpha as i32)
                && res <= 5.0 * h,
            format!(
                "vortex alpha={alpha}: {:?}, |P-P*| {:.2}h <= 2h, orientation {:?}, residual {:.2e}h <= 5h",
                r.verdict,
                err / h,
                r.orientation,
                res / h
            ),
        ));
        let w = winding_number(
            &u,
            &Loop::Circle {
                center: Vec2::ZERO,
                radius: 0.5,
                samples: 512,
            },
            &tol,
        )
        .unwrap();
        parts.push(part(
            w.degree == 1,
            format!("winding {} (expected 1 for either orientation)", w.degree),
        ));
    }
    let spec = shifted_grid(257);
    let c = generate(&Generator::constant(Vec2::from_angle(0.7)), spec).unwrap();
    let d = 0.3;
    let r = classify(&c, &Window::rect(-0.4, -0.4, 0.4, 0.4), d, &tol).unwrap();
    parts.push(part(
        r.verdict == Verdict::Lipschitz && r.lipschitz_constant_estimate <= 1.1 / d,
        format!(
            "constant: {:?}, L {:.2e} <= {:.3}",
            r.verdict,
            r.lipschitz_constant_estimate,
            1.1 / d
        ),
    ));
    let k = Vec2::new(-0.6, -0.5);
    let du = generate(&Generator::distance_to_point(k), spec).unwrap();
    let window = Window::rect(0.1, 0.0, 0.5, 0.4);
    let d = window.distance_to(k);
    let r = classify(&du, &window, d, &tol).unwrap();
    parts.push(part(
        r.verdict == Verdict::Lipschitz && r.lipschitz_constant_estimate <= 1.1 / d,
        format!(
            "distance field: {:?}, L {:.4} <= 1.1/d = {:.4}",
            r.verdict,
            r.lipschitz_constant_estimate,
            1.1 / d
        ),
    ));
    for (name, f, center) in [
        ("constant", &c, Vec2::new(0.1, -0.2)),
        ("distance", &du, Vec2::new(0.3, 0.2)),
    ] {
        let w = winding_number(
            f,
            &Loop::Circle {
                center,
                radius: 0.2,
                samples: 512,
            },
            &tol,
        )
        .unwrap();
        parts.push(part(w.degree == 0, format!("{name} winding {}", w.degree)));
    }
    parts.push(timed(None, start));
    Check::new(parts)
}

fn plateau() -> SpaceTimeBump {
    SpaceTimeBump::Plateau {
        t_lo: 0.6,
        t_hi: 1.4,
        s_lo: 0.0,
        s_hi: 1.0,
        ramp: 0.1,
    }
}

fn c7_burgers_energy() -> Check {
    let start = Instant::now();
    let w = plateau();
    let rare = BurgersGenerator::Rarefaction {
        vl: 0.0,
        vr: 1.0,
        s_star: 0.0,
    }
    .sample_default(512)
    .unwrap();
    let er = balance_residual(&rare, &EntropyPair::Energy, &w).unwrap();
    let g = BurgersGenerator::Shock {
        vl: 1.0,
        vr: 0.0,
        s_star: 0.0,
    };
    let es = balance_residual(&g.sample_default(512).unwrap(), &EntropyPair::Energy, &w).unwrap();
    let len = shock_weighted_length(&g, &w).unwrap();
    let oracle = -len / 12.0;
    let bad = BurgersGenerator::NonentropicShock {
        vl: 0.0,
        vr: 1.0,
        s_star: 0.0,
    }
    .sample_default(512)
    .unwrap();
    let positive = kruzhkov_levels(&bad)
        .into_iter()
        .filter(|&k| balance_residual(&bad, &EntropyPair::Kruzhkov { k }, &w).unwrap() > 0.0)
        .count();
    Check::new(vec![
        part(
            er.abs() <= 0.01,
            format!("rarefaction energy {er:.2e} <= 0.01"),
        ),
        part(
            (es - oracle).abs() <= 0.05 * oracle.abs(),
            format!(
                "shock energy {es:.5} vs -L/12 = {oracle:.5} (L = {len:.4}), rel {:.1e}",
                (es - oracle).abs() / oracle.abs()
            ),
        ),
        part(
            positive >= 3,
            format!("nonentropic wrong-sign Kruzhkov levels {positive}/9 >= 3"),
        ),
        timed(Some(Duration::from_secs(60)), start),
    ])
}

fn c8_oleinik() -> Check {
    let start = Instant::now();
    let rare = BurgersGenerator::Rarefaction {
        vl: 0.0,
        vr: 1.0,
        s_star: 0.0,
    }
    .sample_default(257)
    .unwrap();
    let mut parts = Vec::new();
    for t in [0.7, 1.0, 1.3] {
        let o = oleinik_check(&rare, rare.nearest_t(t)).unwrap();
        let rel = (o.quotient - o.bound).abs() / o.bound;
        parts.push(part(
            rel <= 0.05,
            format!(
                "rarefaction t={:.3}: quotient {:.4} vs 1/t {:.4}",
                o.t, o.quotient, o.bound
            ),
        ));
    }
    let g = BurgersGenerator::NonentropicShock {
        vl: 0.0,
        vr: 1.0,
        s_star: 0.0,
    };
    let q = |n: usize| {
        let v = g.sample_default(n).unwrap();
        oleinik_check(&v, v.nearest_t(1.0)).unwrap().quotient
    };
    let (a, b) = (q(257), q(513));
    parts.push(part(
        b >= 2.0 * a,
        format!(
            "nonentropic quotient {a:.1} -> {b:.1} under ds -> ds/2, growth {:.3} >= 2",
            b / a
        ),
    ));
    parts.push(timed(None, start));
    Check::new(parts)
}

fn c9_negative_controls() -> Check {
    let start = Instant::now();
    let tol = Tolerances::default();
    let zeta = TestBump::new(Vec2::new(0.1, 0.0), 0.3);
    let ds: Vec<f64> = [64usize, 128, 256]
        .iter()
        .map(|&n| {
            divergence_weak(
                &generate(&Generator::Loglog, cell_grid(n)).unwrap(),
                &zeta,
                &tol,
            )
            .unwrap()
        })
        .collect();
    let floor = ds.iter().map(|d| d.abs()).fold(f64::INFINITY, f64::min);
    let spec = shifted_grid(33);
    let u = generate(&Generator::distance_to_point(Vec2::new(-2.0, -1.5)), spec).unwrap();
    let bad = negate_half_plane(&u, Vec2::ZERO, Vec2::from_angle(0.4));
    let pairs = grid_pairs(&Window::rect(-0.5, -0.5, 0.5, 0.5).node_indices(&spec));
    let clean = ordering_check(&u, &pairs, 2.0 * spec.h);
    let corrupt = ordering_check(&bad, &pairs, 2.0 * spec.h);
    Check::new(vec![
        part(
            floor >= 0.05,
            format!(
                "loglog weak divergence {:.4}, {:.4}, {:.4} stays >= 0.05 in magnitude",
                ds[0], ds[1], ds[2]
            ),
        ),
        part(
            corrupt.violations > 0,
            format!(
                "negated half-plane: {} ordering violations > 0",
                corrupt.violations
            ),
        ),
        part(
            clean.violations == 0,
            format!("uncorrupted control: {} violations", clean.violations),
        ),
        timed(None, start),
    ])
}

fn eiko(dir: &Path, threads: &str, args: &[&str]) -> bool {
    Command::new(env!("CARGO_BIN_EXE_eiko"))
        .args(args)
        .current_dir(dir)
        .env("EIKO_THREADS", threads)
        .status()
        .map(|s| s.success())
        .unwrap_or(false)
}

const SUITE: &[&[&str]] = &[
    &[
        "generate",
        "--kind",
        "vortex",
        "--nx",
        "129",
        "--ny",
        "129",
        "--h",
        "0.015625",
        "-o",
        "vortex.fld",
        "--report",
        "generate.jsonl",
    ],
    &[
        "generate",
        "--kind",
        "jump",
        "--nx",
        "128",
        "--ny",
        "128",
        "--h",
        "0.015625",
        "-o",
        "jump.fld",
        "--report",
        "jump.jsonl",
    ],
    &[
        "seminorm",
        "--field",
        "vortex.fld",
        "--annulus",
        "0,0,0.25,0.5",
        "--subsample",
        "16",
        "--report",
        "seminorm.jsonl",
    ],
    &[
        "production",
        "--field",
        "vortex.fld",
        "--zeta",
        "0.5,0.3,0.25",
        "--eps-ladder",
        "8,4",
        "--report",
        "production.jsonl",
    ],
    &[
        "kinetic",
        "--field",
        "vortex.fld",
        "--fan",
        "64",
        "--reconstruct",
        "32,64",
        "--report",
        "kinetic.jsonl",
    ],
    &[
        "classify",
        "--field",
        "vortex.fld",
        "--winding",
        "0,0,0.5",
        "--ordering-pairs",
        "2000",
        "--trace",
        "0.5,0.1",
        "--csv-dir",
        "traces",
        "--report",
        "classify.jsonl",
    ],
    &[
        "burgers",
        "--kind",
        "shock",
        "--vl",
        "1",
        "--vr",
        "0",
        "--n",
        "257",
        "--write-field",
        "shock.burg",
        "--report",
        "burgers.jsonl",
    ],
];

fn c10_determinism() -> Check {
    let start = Instant::now();
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut ok = true;
    for (d, threads) in dirs.iter().zip(["1", "4"]) {
        for args in SUITE {
            ok &= eiko(d.path(), threads, args);
        }
    }
    let mut files: Vec<_> = walkdir::WalkDir::new(dirs[0].path())
        .into_iter()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_type().is_file())
        .map(|e| e.path().strip_prefix(dirs[0].path()).unwrap().to_path_buf())
        .collect();
    files.sort();
    let differing: Vec<String> = files
        .iter()
        .filter(|f| {
            std::fs::read(dirs[0].path().join(f)).ok() != std::fs::read(dirs[1].path().join(f)).ok()
        })
        .map(|f| f.display().to_string())
        .collect();
    Check::new(vec![
        part(
            ok,
            format!("{} commands exited 0 in both runs", SUITE.len()),
        ),
        part(
            differing.is_empty() && files.len() >= SUITE.len(),
            format!(
                "{} files byte-identical across runs with 1 and 4 threads; differing {differing:?}",
                files.len()
            ),
        ),
        timed(None, start),
    ])
}

fn main() {
    type Criterion = (&'static str, fn() -> Check);
    let criteria: [Criterion; 10] = [
        (
            "C1 entropy production vanishes on the vortex",
            c1_entropy_production,
        ),
        ("C2 kinetic formulation", c2_kinetic),
        ("C3 commutator decay", c3_commutator),
        ("C4 decomposition identity", c4_decomposition),
        ("C5 averaging formula", c5_averaging),
        ("C6 classification", c6_classification),
        ("C7 Burgers energy law", c7_burgers_energy),
        ("C8 Oleinik quotient", c8_oleinik),
        ("C9 negative controls", c9_negative_controls),
        ("C10 determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let check = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Check {
            pass: false,
            detail: "panicked".into(),
        });
        if !check.pass {
            failed += 1;
        }
        println!(
            "{} {name}: {}",
            if check.pass { "PASS" } else { "FAIL" },
            check.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
