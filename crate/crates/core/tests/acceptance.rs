//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_RED` are expected to fail (see README); they are
//! still run and printed, but only unexpected failures make the target fail.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use alphasec::analysis::body_contains_body;
use alphasec::*;

const KNOWN_RED: &[&str] = &["AC7a", "AC8c"];

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

struct Runner {
    unexpected: Vec<String>,
}

impl Runner {
    fn run(&mut self, id: &str, budget: Option<Duration>, f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let res = f();
        let elapsed = start.elapsed();
        let (mut ok, mut detail) = match res {
            Ok(o) => (o.ok, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if let Some(b) = budget {
            if elapsed > b {
                ok = false;
                detail.push_str(&format!("; over budget {:.1}s", b.as_secs_f64()));
            }
        }
        let tag = if ok { "PASS" } else { "FAIL" };
        let known = if !ok && KNOWN_RED.contains(&id) {
            " (known red)"
        } else {
            ""
        };
        println!("{tag} {id}{known}: {detail} [{:.2}s]", elapsed.as_secs_f64());
        if !ok && known.is_empty() {
            self.unexpected.push(id.to_string());
        }
    }
}

fn square() -> ConvexBody {
    make_polygon(&[
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, 1.0),
        Point::new(0.0, 1.0),
    ])
    .unwrap()
}

fn oijc(c: f64) -> ConvexBody {
    make_polygon(&[
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(c, c),
        Point::new(0.0, 1.0),
    ])
    .unwrap()
}

fn right_triangle() -> ConvexBody {
    make_polygon(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)]).unwrap()
}

fn equilateral() -> ConvexBody {
    make_polygon(&[
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(0.5, 3f64.sqrt() / 2.0),
    ])
    .unwrap()
}

fn unit_disc() -> ConvexBody {
    make_disc(Point::new(0.0, 0.0), 1.0).unwrap()
}

/// Hausdorff distance of two convex sets through their support functions.
fn support_hausdorff(a: &[Point], h_b: impl Fn(Point) -> f64, dirs: usize) -> f64 {
    (0..dirs)
        .map(|k| {
            let u = Angle::new(TAU * k as f64 / dirs as f64).dir();
            let h_a = a.iter().map(|p| p.dot(u)).fold(f64::NEG_INFINITY, f64::max);
            (h_a - h_b(u)).abs()
        })
        .fold(0.0, f64::max)
}

/// Random strictly convex polygon with 5 to 12 vertices.
fn random_polygon(rng: &mut SplitMix64) -> ConvexBody {
    loop {
        let k = 5 + (rng.next_u64() % 8) as usize;
        let mut angles: Vec<f64> = (0..k).map(|_| rng.range(0.0, TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let gaps_ok = angles.windows(2).all(|w| w[1] - w[0] > 0.05) && angles[0] + TAU - angles[k - 1] > 0.05;
        if !gaps_ok {
            continue;
        }
        let (a, b, c, d) = (
            rng.range(0.5, 2.0),
            rng.range(-0.5, 0.5),
            rng.range(-0.5, 0.5),
            rng.range(0.5, 2.0),
        );
        let shift = Point::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
        let pts: Vec<Point> = angles
            .iter()
            .map(|&t| {
                let (x, y) = (t.cos(), t.sin());
                Point::new(a * x + b * y, c * x + d * y) + shift
            })
            .collect();
        if let Ok(p) = make_polygon(&pts) {
            if p.vertices().map_or(0, |v| v.len()) == k {
                return p;
            }
        }
    }
}

fn random_inner(rng: &mut SplitMix64, outer: &ConvexBody) -> ConvexBody {
    let (lo, hi) = outer.bbox();
    loop {
        let k = 5 + (rng.next_u64() % 8) as usize;
        let mut pts = Vec::new();
        while pts.len() < k {
            let p = Point::new(rng.range(lo.x, hi.x), rng.range(lo.y, hi.y));
            if outer.contains(p, -1e-6 * outer.diameter()) {
                pts.push(p);
            }
        }
        if let Ok(l) = make_polygon(&pts) {
            if l.area() > 1e-3 * outer.area() {
                return l;
            }
        }
    }
}

fn ac1() -> Result<Outcome> {
    let t = equilateral();
    let (ak, tp) = critical_alpha_K(&t, 1e-8)?;
    let g = t.mass_center();
    let d = tp.map_or(f64::INFINITY, |p| (p - g).norm());
    Ok(outcome(
        (ak - 4.0 / 9.0).abs() <= 1e-6 && d <= 1e-5,
        format!("alpha_K = {ak:.10}, |T - G| = {d:.2e}"),
    ))
}

fn ac2() -> Result<Outcome> {
    let cv = critical_values(&square(), 1e-8)?;
    let ok = (cv.alpha_B - 0.5).abs() <= 1e-6 && (cv.alpha_K - 0.5).abs() <= 1e-6 && cv.alpha_Z.abs() <= 1e-6;
    Ok(outcome(
        ok,
        format!(
            "alpha_B = {:.9}, alpha_K = {:.9}, alpha_Z = {:.9}",
            cv.alpha_B, cv.alpha_K, cv.alpha_Z
        ),
    ))
}

fn bisected_alphas(body: &ConvexBody, p: Point) -> Result<Vec<f64>> {
    let mut a = match chords_bisected_by(body, p)? {
        BisectedChords::Finite(v) => v.into_iter().map(|c| c.alpha).collect(),
        BisectedChords::Continuum => vec![],
    };
    a.sort_by(f64::total_cmp);
    Ok(a)
}

fn ac3() -> Result<Outcome> {
    let k = oijc(2.0);
    let g = k.mass_center();
    let g_err = (g.x - 5.0 / 6.0).abs().max((g.y - 5.0 / 6.0).abs());
    let a = bisected_alphas(&k, g)?;
    let want = [49.0 / 108.0, 17.0 / 36.0, 17.0 / 36.0];
    let set_ok = a.len() == 3 && a.iter().zip(want).all(|(x, y)| (x - y).abs() <= 1e-9);
    let q = asymmetry_quotient(&k)?;
    Ok(outcome(
        g_err <= 1e-12 && set_ok && (q - 49.0 / 51.0).abs() <= 1e-9,
        format!("|G - (5/6,5/6)| = {g_err:.1e}, alphas = {a:.12?}, quotient = {q:.12}"),
    ))
}

fn ac4() -> Result<Outcome> {
    let q = asymmetry_quotient(&oijc(1.75))?;
    Ok(outcome((q - 24.0 / 25.0).abs() <= 1e-9, format!("quotient = {q:.12}")))
}

fn ac5() -> Result<Outcome> {
    let t = PI / 3.0;
    let alpha = (t - t.sin() * t.cos()) / PI;
    let core = alpha_core(&unit_disc(), alpha, 4096)?;
    let region = matches!(core.kind, CoreKind::Region(_));
    let h = support_hausdorff(&core.vertices(), |_| 0.5, 20_000);
    Ok(outcome(
        region && h <= 1e-4,
        format!("kind = {}, Hausdorff = {h:.2e}", core.kind_name()),
    ))
}

fn incircle_triangle() -> (ConvexBody, ConvexBody) {
    let s = 3f64.sqrt();
    let tri = make_polygon(&[Point::new(-s, -1.0), Point::new(s, -1.0), Point::new(0.0, 2.0)]).unwrap();
    (unit_disc(), tri)
}

fn ac6() -> Result<Outcome> {
    let a1 = solve_alpha1();
    let (disc, tri) = incircle_triangle();
    let below = core_containment(&disc, &tri, a1 - 1e-3, 4096)?;
    let above = core_containment(&disc, &tri, a1 + 1e-3, 4096)?;
    Ok(outcome(
        (a1 - 0.40716).abs() <= 5e-5 && !below && above,
        format!("alpha1 = {a1:.9}, contained below = {below}, above = {above}"),
    ))
}

fn ac7a() -> Result<Outcome> {
    let k = oijc(2.0);
    let b = critical_alpha_B(&k, 1e-6)?;
    let z = critical_alpha_Z(&k, 1e-6)?;
    Ok(outcome(
        (b - 0.25).abs() <= 1e-4 && (z - 0.25).abs() <= 1e-4,
        format!("alpha_B = {b:.9}, alpha_Z = {z:.9} (expected 0.25 each)"),
    ))
}

fn ac7b() -> Result<Outcome> {
    let cv = critical_values(&oijc(2.0), 1e-6)?;
    Ok(outcome(
        cv.alpha_B < cv.alpha_K && cv.alpha_K > 4.0 / 9.0 && cv.alpha_K < 0.5,
        format!(
            "alpha_B = {:.6} < alpha_K = {:.9} in (4/9, 1/2)",
            cv.alpha_B, cv.alpha_K
        ),
    ))
}

fn polygons(seed: u64, n: usize) -> Vec<ConvexBody> {
    let mut rng = SplitMix64::new(Seed(seed));
    (0..n).map(|_| random_polygon(&mut rng)).collect()
}

fn ac8a() -> Result<Outcome> {
    let mut rng = SplitMix64::new(Seed(1));
    let mut worst: f64 = 0.0;
    for k in polygons(100, 50) {
        for _ in 0..20 {
            let (alpha, theta) = (rng.range(0.01, 0.99), rng.range(0.0, TAU));
            let line = alpha_section(&k, alpha, theta)?;
            worst = worst.max((k.area_right(&line) - alpha * k.area()).abs() / k.area());
        }
    }
    Ok(outcome(worst <= 1e-12, format!("max relative residual {worst:.2e}")))
}

fn ac8b() -> Result<Outcome> {
    let mut rng = SplitMix64::new(Seed(2));
    let (mut d_err, mut w_err): (f64, f64) = (0.0, 0.0);
    for k in polygons(101, 50) {
        for _ in 0..20 {
            let (alpha, theta) = (rng.range(0.01, 0.99), rng.range(0.0, TAU));
            let a = alpha_section(&k, alpha, theta)?;
            let b = alpha_section(&k, 1.0 - alpha, theta + PI)?;
            d_err = d_err.max((a.offset + b.offset).abs());
            let v = velocity(&k, alpha, theta + PI)?;
            let w = velocity(&k, 1.0 - alpha, theta)?;
            let scale = 1f64.max(v.v_l.abs()).max(v.v_r.abs());
            w_err = w_err.max(((v.v_l + w.v_l).abs()).max((v.v_r + w.v_r).abs()) / scale);
        }
    }
    Ok(outcome(
        d_err <= 1e-8 && w_err <= 1e-8,
        format!("section symmetry {d_err:.2e}, velocity symmetry {w_err:.2e}"),
    ))
}

/// Literal form: max V(a', theta) <= min V(a, theta) for a < a'.
fn ac8c() -> Result<Outcome> {
    let mut rng = SplitMix64::new(Seed(3));
    let mut worst = f64::NEG_INFINITY;
    for k in polygons(102, 50) {
        for _ in 0..20 {
            let (a1, a2) = (rng.range(0.01, 0.99), rng.range(0.01, 0.99));
            let (lo, hi) = if a1 < a2 { (a1, a2) } else { (a2, a1) };
            let theta = rng.range(0.0, TAU);
            let v_hi = velocity(&k, hi, theta)?;
            let v_lo = velocity(&k, lo, theta)?;
            worst = worst.max((v_hi.max() - v_lo.min()) / k.diameter());
        }
    }
    Ok(outcome(
        worst <= 1e-9,
        format!("max of max V(a') - min V(a) = {worst:.2e}"),
    ))
}

/// The same ordering for V / h, which carries the sign of the velocity.
fn ac8c_normalized() -> Result<Outcome> {
    let mut rng = SplitMix64::new(Seed(3));
    let mut worst = f64::NEG_INFINITY;
    for k in polygons(102, 50) {
        for _ in 0..20 {
            let (a1, a2) = (rng.range(0.01, 0.99), rng.range(0.01, 0.99));
            let (lo, hi) = if a1 < a2 { (a1, a2) } else { (a2, a1) };
            let theta = rng.range(0.0, TAU);
            let c_hi = section_chord(&k, hi, theta)?;
            let c_lo = section_chord(&k, lo, theta)?;
            let (v_hi, v_lo) = (c_hi.velocity(), c_lo.velocity());
            worst = worst.max(v_hi.max() / c_hi.h - v_lo.min() / c_lo.h);
        }
    }
    Ok(outcome(
        worst <= 1e-9,
        format!("max of max V/h(a') - min V/h(a) = {worst:.2e}"),
    ))
}

fn ac8d() -> Result<Outcome> {
    let mut rng = SplitMix64::new(Seed(4));
    let (mut worst, mut checked): (f64, usize) = (0.0, 0);
    for k in polygons(103, 50) {
        let mut done = 0;
        while done < 10 {
            let (alpha, theta) = (rng.range(0.02, 0.98), rng.range(0.0, TAU));
            let fd = match fd_velocity(&k, alpha, theta, 1e-5) {
                Err(Error::SingularTheta(_)) => continue,
                r => r?,
            };
            let v = velocity(&k, alpha, theta)?;
            if !v.is_regular() {
                continue;
            }
            worst = worst.max((fd - v.v_l).abs() / (v.v_l.abs() + 1e-9));
            done += 1;
            checked += 1;
        }
    }
    Ok(outcome(
        worst <= 1e-4,
        format!("{checked} directions, max relative error {worst:.2e}"),
    ))
}

fn strictly_convex(v: &[Point]) -> bool {
    let n = v.len();
    n >= 3 && (0..n).all(|i| (v[(i + 1) % n] - v[i]).cross(v[(i + 2) % n] - v[(i + 1) % n]) > 0.0)
}

fn ac8e() -> Result<Outcome> {
    let mut rng = SplitMix64::new(Seed(5));
    let mut failures = Vec::new();
    for (i, k) in polygons(104, 50).into_iter().enumerate() {
        let (a1, a2) = (rng.range(0.02, 0.4), rng.range(0.02, 0.4));
        let (lo, hi) = if a1 < a2 { (a1, a2) } else { (a2, a1) };
        let outer = alpha_core(&k, lo, 1024)?;
        let inner = alpha_core(&k, hi, 1024)?;
        let (CoreKind::Region(o), CoreKind::Region(n)) = (&outer.kind, &inner.kind) else {
            failures.push(format!("#{i} not a region"));
            continue;
        };
        if !body_contains_body(o, n, 1e-9 * k.diameter()) {
            failures.push(format!("#{i} not nested"));
        }
        if !strictly_convex(o.vertices().unwrap()) || !strictly_convex(n.vertices().unwrap()) {
            failures.push(format!("#{i} not strictly convex"));
        }
    }
    Ok(outcome(failures.is_empty(), format!("50 pairs, failures {failures:?}")))
}

fn ac8f() -> Result<Outcome> {
    let mut rng = SplitMix64::new(Seed(6));
    let mut worst: f64 = 0.0;
    for k in polygons(105, 50) {
        let alpha = rng.range(0.02, 0.4);
        let core = alpha_core(&k, alpha, 4096)?;
        let curve = sample_envelope(&k, alpha, 16384)?;
        for p in core.vertices() {
            worst = worst.max(curve.distance_to(p) / k.diameter());
        }
    }
    Ok(outcome(worst <= 1e-5, format!("max distance / diameter = {worst:.2e}")))
}

/// Hausdorff distance between the envelope and the core boundary.
fn envelope_core_gap(body: &ConvexBody, alpha: f64) -> Result<f64> {
    let curve = sample_envelope(body, alpha, 2048)?;
    let core = alpha_core(body, alpha, 4096)?;
    let CoreKind::Region(c) = &core.kind else {
        return Ok(f64::INFINITY);
    };
    let a = curve
        .points()
        .iter()
        .map(|&p| c.boundary_distance(p))
        .fold(0.0, f64::max);
    let b = c
        .vertices()
        .unwrap()
        .iter()
        .map(|&p| curve.distance_to(p))
        .fold(0.0, f64::max);
    Ok(a.max(b) / body.diameter())
}

fn ac8g() -> Result<Outcome> {
    let mut lines = Vec::new();
    let mut ok = true;
    let bodies = [
        ("triangle", right_triangle(), true),
        ("oijc", oijc(2.0), true),
        ("square", square(), false),
        ("disc", unit_disc(), false),
    ];
    for (name, body, has_b) in &bodies {
        for alpha in [0.1, 0.25, 0.4] {
            let gap = envelope_core_gap(body, alpha)?;
            let b = sample_envelope(body, alpha, 1024)?.has_label(Label::B);
            let good = b == *has_b && if b { gap > 1e-3 } else { gap <= 1e-5 };
            ok &= good;
            lines.push(format!("{name}@{alpha}:{}{gap:.1e}", if b { "B," } else { "" }));
        }
    }
    Ok(outcome(ok, lines.join(" ")))
}

fn ac8h() -> Result<Outcome> {
    let k = square();
    let mut worst: f64 = 0.0;
    let mut all_hyperbolas = true;
    for alpha in [0.05, 0.1, 0.125, 0.15] {
        for corner in 0..4 {
            let c = PI / 4.0 + corner as f64 * PI / 2.0;
            let fit = hyperbola_arc_check(&k, alpha, (Angle::new(c - 0.1), Angle::new(c + 0.1)))?;
            worst = worst.max(fit.residual);
            all_hyperbolas &= fit.is_hyperbola();
        }
    }
    Ok(outcome(
        worst <= 1e-8 && all_hyperbolas,
        format!("16 arcs, max residual {worst:.2e}, all hyperbolas {all_hyperbolas}"),
    ))
}

fn ac8i() -> Result<Outcome> {
    let k = square();
    let core = alpha_core(&k, 0.25, 4096)?;
    let table = BilliardTable::from_core(&core)?;
    let mut worst: f64 = 0.0;
    for i in 0..360 {
        let theta = TAU * (i as f64 + 0.37) / 360.0;
        let ch = section_chord(&k, 0.25, theta)?;
        let image = outer_billiard_step(&table, ch.b)?;
        worst = worst.max((image - ch.c).norm());
    }
    Ok(outcome(
        worst <= 1e-6,
        format!("360 chords, max |T(b) - c| = {worst:.2e}"),
    ))
}

fn ac8j() -> Result<Outcome> {
    let mut rng = SplitMix64::new(Seed(7));
    let mut found = 0;
    let mut violations = Vec::new();
    for i in 0..100 {
        let outer = random_polygon(&mut rng);
        let inner = random_inner(&mut rng, &outer);
        let alpha = rng.range(0.02, 0.48);
        match conjecture_check(&inner, &outer, alpha, 256)? {
            Witness::Violation { theta, .. } => violations.push(format!("#{i} at {:.4}", theta.radians())),
            _ => found += 1,
        }
    }
    Ok(outcome(
        found == 100,
        format!("{found}/100 witnesses, violations {violations:?}"),
    ))
}

fn main() {
    let mut r = Runner { unexpected: Vec::new() };
    let secs = |s| Some(Duration::from_secs(s));
    r.run("AC1", secs(10), ac1);
    r.run("AC2", secs(10), ac2);
    r.run("AC3", secs(5), ac3);
    r.run("AC4", None, ac4);
    r.run("AC5", None, ac5);
    r.run("AC6", None, ac6);
    r.run("AC7a", None, ac7a);
    r.run("AC7b", None, ac7b);
    r.run("AC8a", None, ac8a);
    r.run("AC8b", None, ac8b);
    r.run("AC8c", None, ac8c);
    r.run("AC8c-normalized", None, ac8c_normalized);
    r.run("AC8d", None, ac8d);
    r.run("AC8e", None, ac8e);
    r.run("AC8f", None, ac8f);
    r.run("AC8g", None, ac8g);
    r.run("AC8h", None, ac8h);
    r.run("AC8i", None, ac8i);
    r.run("AC8j", None, ac8j);
    if !r.unexpected.is_empty() {
        println!("unexpected failures: {:?}", r.unexpected);
        std::process::exit(1);
    }
}
