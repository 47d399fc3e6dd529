//! Brute-force reference computations.
//!
//! Nothing here calls the area, section, chord or clipping code of the other
//! modules: each oracle carries its own routines so that agreement between
//! the two paths means something.
//!
//! Random numbers come from SplitMix64: the state advances by
//! `0x9E3779B97F4A7C15` and each output is mixed with the multipliers
//! `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB` (shifts 30, 27, 31).
//! Doubles take the top 53 bits, so they are uniform on [0, 1).

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::bodies::{make_polygon, ConvexBody, Shape};
use crate::cores::{CoreKind, CoreResult, EPS_CORE_REL};
use crate::error::{Error, Result};
use crate::geom::{normal, unit, Angle, OrientedLine, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed(pub u64);

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: Seed) -> Self {
        SplitMix64 { state: seed.0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub sigma: f64,
}

fn inside(body: &ConvexBody, p: Point) -> bool {
    match body.shape() {
        Shape::Polygon(v) => {
            let n = v.len();
            (0..n).all(|i| {
                let a = v[i];
                let b = v[(i + 1) % n];
                (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) >= 0.0
            })
        }
        Shape::Disc { center, radius } => {
            let (dx, dy) = (p.x - center.x, p.y - center.y);
            dx * dx + dy * dy <= radius * radius
        }
    }
}

/// Rejection-sampling estimate of the area of the body on the right of
/// `line`, with its standard error.
pub fn mc_area(body: &ConvexBody, line: &OrientedLine, samples: usize, seed: Seed) -> Result<McEstimate> {
    if samples < 10_000 {
        return Err(Error::InvalidArgument(format!(
            "need at least 10000 samples, got {samples}"
        )));
    }
    let (lo, hi) = body.bbox();
    let box_area = (hi.x - lo.x) * (hi.y - lo.y);
    let nrm = normal(line.theta.radians());
    let mut rng = SplitMix64::new(seed);
    let mut hits = 0u64;
    for _ in 0..samples {
        let p = Point::new(rng.range(lo.x, hi.x), rng.range(lo.y, hi.y));
        if p.x * nrm.x + p.y * nrm.y <= line.offset && inside(body, p) {
            hits += 1;
        }
    }
    let n = samples as f64;
    let p = hits as f64 / n;
    Ok(McEstimate {
        estimate: box_area * p,
        sigma: box_area * (p * (1.0 - p) / n).sqrt(),
    })
}

/// Area of triangle `abc` below level `t` of the linear function `f`.
fn clipped_triangle(a: Point, b: Point, c: Point, fa: f64, fb: f64, fc: f64, t: f64) -> f64 {
    let tri = |p: Point, q: Point, r: Point| 0.5 * ((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)).abs();
    let mut pts = [(a, fa), (b, fb), (c, fc)];
    pts.sort_by(|x, y| x.1.total_cmp(&y.1));
    let [(p0, f0), (p1, f1), (p2, f2)] = pts;
    let cut = |p: Point, fp: f64, q: Point, fq: f64| {
        let s = (t - fp) / (fq - fp);
        Point::new(p.x + s * (q.x - p.x), p.y + s * (q.y - p.y))
    };
    if t <= f0 {
        0.0
    } else if t >= f2 {
        tri(p0, p1, p2)
    } else if t <= f1 {
        tri(p0, cut(p0, f0, p1, f1), cut(p0, f0, p2, f2))
    } else {
        tri(p0, p1, p2) - tri(p2, cut(p2, f2, p1, f1), cut(p2, f2, p0, f0))
    }
}

/// Fan triangulation with each triangle clipped on its own; circular caps
/// for discs.
fn oracle_area_right(body: &ConvexBody, theta: f64, t: f64) -> f64 {
    let nrm = normal(theta);
    match body.shape() {
        Shape::Polygon(v) => {
            let f: Vec<f64> = v.iter().map(|p| p.x * nrm.x + p.y * nrm.y).collect();
            (1..v.len() - 1)
                .map(|i| clipped_triangle(v[0], v[i], v[i + 1], f[0], f[i], f[i + 1], t))
                .sum()
        }
        Shape::Disc { center, radius } => {
            let d = t - (center.x * nrm.x + center.y * nrm.y);
            let cap = |h: f64| {
                if h >= *radius {
                    0.0
                } else {
                    let phi = 2.0 * (h / radius).acos();
                    0.5 * radius * radius * (phi - phi.sin())
                }
            };
            if d <= 0.0 {
                cap(-d)
            } else {
                PI * radius * radius - cap(d)
            }
        }
    }
}

fn oracle_offset(body: &ConvexBody, alpha: f64, theta: f64) -> f64 {
    let nrm = normal(theta);
    let (mut lo, mut hi) = match body.shape() {
        Shape::Polygon(v) => v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), p| {
            let s = p.x * nrm.x + p.y * nrm.y;
            (l.min(s), h.max(s))
        }),
        Shape::Disc { center, radius } => {
            let s = center.x * nrm.x + center.y * nrm.y;
            (s - radius, s + radius)
        }
    };
    let target = alpha * body.area();
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if oracle_area_right(body, theta, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Chord midpoint and the edge indices holding its endpoints (none for a
/// disc).
fn oracle_midpoint(body: &ConvexBody, theta: f64, t: f64) -> (Point, Option<(usize, usize)>) {
    let u = unit(theta);
    let nrm = normal(theta);
    match body.shape() {
        Shape::Polygon(v) => {
            let n = v.len();
            let s: Vec<f64> = v.iter().map(|p| p.x * nrm.x + p.y * nrm.y - t).collect();
            let mut hits: Vec<(f64, Point, usize)> = Vec::new();
            for i in 0..n {
                let j = (i + 1) % n;
                if (s[i] < 0.0) != (s[j] < 0.0) {
                    let w = s[i] / (s[i] - s[j]);
                    let p = Point::new(v[i].x + w * (v[j].x - v[i].x), v[i].y + w * (v[j].y - v[i].y));
                    hits.push((p.x * u.x + p.y * u.y, p, i));
                }
            }
            hits.sort_by(|a, b| a.0.total_cmp(&b.0));
            let (first, last) = (hits[0], hits[hits.len() - 1]);
            (
                Point::new(0.5 * (first.1.x + last.1.x), 0.5 * (first.1.y + last.1.y)),
                Some((first.2, last.2)),
            )
        }
        Shape::Disc { center, .. } => {
            let d = t - (center.x * nrm.x + center.y * nrm.y);
            (Point::new(center.x + d * nrm.x, center.y + d * nrm.y), None)
        }
    }
}

/// Central finite difference of the envelope along `u(theta)`.
pub fn fd_velocity(body: &ConvexBody, alpha: f64, theta: impl Into<Angle>, eps: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let theta = theta.into().radians();
    let at = |t: f64| oracle_midpoint(body, t, oracle_offset(body, alpha, t));
    let (m_minus, e_minus) = at(theta - eps);
    let (_, e_mid) = at(theta);
    let (m_plus, e_plus) = at(theta + eps);
    if e_minus != e_mid || e_plus != e_mid {
        return Err(Error::SingularTheta(theta));
    }
    let u = unit(theta);
    Ok(((m_plus.x - m_minus.x) * u.x + (m_plus.y - m_minus.y) * u.y) / (2.0 * eps))
}

/// Keep the part of a convex ring on the left of the line through `p` with
/// direction `u`, grown by `slack`.
fn keep_left(ring: &[Point], p: Point, u: Point, slack: f64) -> Vec<Point> {
    let side = |q: Point| u.x * (q.y - p.y) - u.y * (q.x - p.x) + slack;
    let mut out = Vec::with_capacity(ring.len() + 1);
    for (i, &a) in ring.iter().enumerate() {
        let b = ring[(i + 1) % ring.len()];
        let (sa, sb) = (side(a), side(b));
        if sa >= 0.0 {
            out.push(a);
        }
        if (sa >= 0.0) != (sb >= 0.0) {
            let w = sa / (sa - sb);
            out.push(Point::new(a.x + w * (b.x - a.x), a.y + w * (b.y - a.y)));
        }
    }
    out
}

fn ring_extent(ring: &[Point]) -> f64 {
    let mut best: f64 = 0.0;
    for a in ring {
        for b in ring {
            best = best.max((a.x - b.x).hypot(a.y - b.y));
        }
    }
    best
}

/// Plain intersection of the left half-planes of `n` uniformly spaced
/// alpha-sections.
pub fn bruteforce_core(body: &ConvexBody, alpha: f64, n: usize) -> Result<CoreResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if n < 10_000 {
        return Err(Error::InvalidArgument(format!(
            "need at least 10000 directions, got {n}"
        )));
    }
    if alpha > 0.5 {
        return Ok(CoreResult::empty());
    }
    let lines: Vec<(Point, Point)> = (0..n)
        .map(|k| {
            let theta = TAU * k as f64 / n as f64;
            let t = oracle_offset(body, alpha, theta);
            (normal(theta) * t, unit(theta))
        })
        .collect();
    let (lo, hi) = body.bbox();
    let start = vec![lo, Point::new(hi.x, lo.y), hi, Point::new(lo.x, hi.y)];
    let eps_core = EPS_CORE_REL * body.diameter();
    let cut = |slack: f64| {
        let mut ring = start.clone();
        for &(p, u) in &lines {
            ring = keep_left(&ring, p, u, slack);
            if ring.is_empty() {
                break;
            }
        }
        ring
    };
    let exact = cut(0.0);
    let mean = |r: &[Point]| r.iter().fold(Point::ORIGIN, |s, p| s + *p) / r.len() as f64;
    if !exact.is_empty() && ring_extent(&exact) > eps_core {
        if let Ok(poly) = make_polygon(&exact) {
            let perimeter: f64 = (0..exact.len())
                .map(|i| {
                    let (a, b) = (exact[i], exact[(i + 1) % exact.len()]);
                    (b.x - a.x).hypot(b.y - a.y)
                })
                .sum();
            let inradius = 2.0 * poly.area() / perimeter;
            return Ok(CoreResult {
                kind: CoreKind::Region(poly),
                inradius_estimate: inradius,
                tour: None,
            });
        }
    }
    if !exact.is_empty() {
        return Ok(CoreResult {
            kind: CoreKind::Point(mean(&exact)),
            inradius_estimate: 0.0,
            tour: None,
        });
    }
    let relaxed = cut(eps_core);
    if relaxed.is_empty() {
        Ok(CoreResult::empty())
    } else {
        Ok(CoreResult {
            kind: CoreKind::Point(mean(&relaxed)),
            inradius_estimate: 0.0,
            tour: None,
        })
    }
}
