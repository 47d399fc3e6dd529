//! Chords bisected by a point, the asymmetry quotient, conic fits of
//! polygon envelopes, core containment and the nested-section search.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::{Matrix5, SMatrix};
use rayon::prelude::*;

use crate::bodies::{BoundaryFeature, ConvexBody, Shape};
use crate::cores::{alpha_core, CoreKind, CoreResult};
use crate::envelope::{bisect, vertex_passages};
use crate::error::{Error, Result};
use crate::geom::{Angle, OrientedLine, Point};
use crate::sections::{alpha_section, chord, section_chord, Chord};

const BISECTED_SCAN: usize = 2048;
const ROOT_MERGE: f64 = 1e-8;
const CONTINUUM_REL: f64 = 1e-10;
const WITNESS_SLACK: f64 = 1e-9;
const WINDOW_SAMPLES: usize = 25;

/// A chord whose midpoint is the query point; `alpha <= 1/2` is the smaller
/// area fraction and `theta` the direction that leaves it on the right.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BisectedChord {
    pub theta: Angle,
    pub alpha: f64,
    pub chord: Chord,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BisectedChords {
    Finite(Vec<BisectedChord>),
    /// Every chord through the point is bisected by it.
    Continuum,
}

/// Offset of the midpoint of the chord through `p` along the chord.
fn midpoint_offset(body: &ConvexBody, p: Point, theta: f64) -> Result<f64> {
    let ch = chord(body, &OrientedLine::through(p, theta))?;
    Ok((ch.m - p).dot(ch.line.dir()))
}

pub fn chords_bisected_by(body: &ConvexBody, p: Point) -> Result<BisectedChords> {
    if !body.contains(p, 0.0) || body.boundary_distance(p) <= body.eps_boundary() {
        return Err(Error::NotInterior);
    }
    let thetas: Vec<f64> = (0..BISECTED_SCAN)
        .map(|k| PI * k as f64 / BISECTED_SCAN as f64)
        .collect();
    let mut f: Vec<f64> = thetas
        .par_iter()
        .map(|&t| midpoint_offset(body, p, t))
        .collect::<Result<_>>()?;
    if f.iter().all(|v| v.abs() < CONTINUUM_REL * body.diameter()) {
        return Ok(BisectedChords::Continuum);
    }
    // The chord of direction pi is the chord of direction 0 reversed.
    f.push(-f[0]);
    let mut roots: Vec<f64> = Vec::new();
    for k in 0..BISECTED_SCAN {
        let (t0, t1) = (
            PI * k as f64 / BISECTED_SCAN as f64,
            PI * (k + 1) as f64 / BISECTED_SCAN as f64,
        );
        let (f0, f1) = (f[k], f[k + 1]);
        if f0 == 0.0 {
            roots.push(t0);
        } else if (f0 < 0.0) != (f1 < 0.0) && f1 != 0.0 {
            let g = |t: f64| midpoint_offset(body, p, t).unwrap_or(f64::NAN);
            roots.push(bisect(g, t0, t1));
        }
    }
    let mut merged: Vec<f64> = Vec::new();
    for r in roots {
        let r = if PI - r < ROOT_MERGE { 0.0 } else { r };
        if merged.iter().all(|q| (q - r).abs() >= ROOT_MERGE) {
            merged.push(r);
        }
    }
    let mut out = Vec::with_capacity(merged.len());
    for t in merged {
        let line = OrientedLine::through(p, t);
        let a = body.area_right(&line) / body.area();
        let (line, a) = if a > 0.5 { (line.reversed(), 1.0 - a) } else { (line, a) };
        out.push(BisectedChord {
            theta: line.theta,
            alpha: a,
            chord: chord(body, &line)?,
        });
    }
    Ok(BisectedChords::Finite(out))
}

/// `min alpha / max alpha` over the chords bisected by the mass center.
pub fn asymmetry_quotient(body: &ConvexBody) -> Result<f64> {
    match chords_bisected_by(body, body.mass_center())? {
        BisectedChords::Continuum => Ok(1.0),
        BisectedChords::Finite(v) if v.is_empty() => {
            Err(Error::NoConvergence("no chord is bisected by the mass center".into()))
        }
        BisectedChords::Finite(v) => {
            let lo = v.iter().map(|c| c.alpha).fold(f64::INFINITY, f64::min);
            let hi = v.iter().map(|c| c.alpha).fold(0.0, f64::max);
            Ok(lo / hi)
        }
    }
}

/// Conic `A x^2 + B xy + C y^2 + D x + E y + F = 0` with unit-norm
/// coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConicFit {
    pub coefficients: [f64; 6],
    /// Largest |Q(p)| over the held-out envelope samples.
    pub residual: f64,
    /// `B^2 - 4AC`; positive for a hyperbola.
    pub discriminant: f64,
}

impl ConicFit {
    pub fn eval(&self, p: Point) -> f64 {
        let [a, b, c, d, e, f] = self.coefficients;
        a * p.x * p.x + b * p.x * p.y + c * p.y * p.y + d * p.x + e * p.y + f
    }

    pub fn is_hyperbola(&self) -> bool {
        self.discriminant > 0.0
    }
}

/// The conic through five points, via signed 5x5 minors of the design
/// matrix in centered, scaled coordinates.
fn conic_through(pts: &[Point; 5]) -> [f64; 6] {
    let c = pts.iter().fold(Point::ORIGIN, |s, p| s + *p) / 5.0;
    let s = pts
        .iter()
        .map(|p| (p.x - c.x).abs().max((p.y - c.y).abs()))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let rows = SMatrix::<f64, 5, 6>::from_fn(|i, j| {
        let q = (pts[i] - c) / s;
        [q.x * q.x, q.x * q.y, q.y * q.y, q.x, q.y, 1.0][j]
    });
    let mut k = [0.0; 6];
    for (j, kj) in k.iter_mut().enumerate() {
        let minor = Matrix5::from_fn(|r, col| rows[(r, if col < j { col } else { col + 1 })]);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        *kj = sign * minor.determinant();
    }
    let [a, b, cc, d, e, f] = k;
    let (cx, cy) = (c.x, c.y);
    let out = [
        a,
        b,
        cc,
        -2.0 * a * cx - b * cy + d * s,
        -b * cx - 2.0 * cc * cy + e * s,
        a * cx * cx + b * cx * cy + cc * cy * cy - d * s * cx - e * s * cy + f * s * s,
    ];
    let norm = out.iter().map(|v| v * v).sum::<f64>().sqrt();
    let lead = out
        .iter()
        .copied()
        .fold(0.0, |m: f64, v| if v.abs() > m.abs() { v } else { m });
    let sign = if lead < 0.0 { -1.0 } else { 1.0 };
    out.map(|v| sign * v / norm)
}

/// Fit the envelope over a direction window where both chord endpoints stay
/// on one pair of polygon edges; such arcs are conics.
pub fn hyperbola_arc_check(body: &ConvexBody, alpha: f64, window: (Angle, Angle)) -> Result<ConicFit> {
    let Some(v) = body.vertices() else {
        return Err(Error::NotAPolygon);
    };
    let span = window.0.ccw_to(window.1);
    if span <= 0.0 {
        return Err(Error::InvalidArgument("empty direction window".into()));
    }
    let chords: Vec<Chord> = (0..WINDOW_SAMPLES)
        .into_par_iter()
        .map(|i| {
            section_chord(
                body,
                alpha,
                window.0.radians() + span * i as f64 / (WINDOW_SAMPLES - 1) as f64,
            )
        })
        .collect::<Result<_>>()?;
    let edge = |f: BoundaryFeature| match f {
        BoundaryFeature::Edge(i) => Some(i),
        _ => None,
    };
    let (Some(eb), Some(ec)) = (edge(chords[0].b_feature), edge(chords[0].c_feature)) else {
        return Err(Error::RegimeChange);
    };
    if chords
        .iter()
        .any(|ch| edge(ch.b_feature) != Some(eb) || edge(ch.c_feature) != Some(ec))
    {
        return Err(Error::RegimeChange);
    }
    let n = v.len();
    let (db, dc) = (v[(eb + 1) % n] - v[eb], v[(ec + 1) % n] - v[ec]);
    if db.cross(dc).abs() <= 1e-12 * db.norm() * dc.norm() {
        return Err(Error::ParallelEdges);
    }
    let fit_idx = [0, 6, 12, 18, 24];
    let fit: [Point; 5] = fit_idx.map(|i| chords[i].m);
    let coefficients = conic_through(&fit);
    let mut conic = ConicFit {
        coefficients,
        residual: 0.0,
        discriminant: coefficients[1] * coefficients[1] - 4.0 * coefficients[0] * coefficients[2],
    };
    conic.residual = chords
        .iter()
        .enumerate()
        .filter(|(i, _)| !fit_idx.contains(i))
        .map(|(_, ch)| conic.eval(ch.m).abs())
        .fold(0.0, f64::max);
    Ok(conic)
}

/// Whether `inner` lies inside `outer` up to the absolute tolerance `tol`.
pub fn body_contains_body(outer: &ConvexBody, inner: &ConvexBody, tol: f64) -> bool {
    match (inner.shape(), outer.shape()) {
        (Shape::Polygon(v), _) => v.iter().all(|p| outer.contains(*p, tol)),
        (Shape::Disc { center, radius }, Shape::Disc { center: c2, radius: r2 }) => {
            center.dist(*c2) + radius <= r2 + tol
        }
        (Shape::Disc { center, radius }, Shape::Polygon(w)) => {
            let n = w.len();
            (0..n).all(|i| {
                let e = w[(i + 1) % n] - w[i];
                e.cross(*center - w[i]) / e.norm() >= radius - tol
            })
        }
    }
}

fn check_nested(inner: &ConvexBody, outer: &ConvexBody) -> Result<()> {
    if body_contains_body(outer, inner, outer.eps_boundary()) {
        Ok(())
    } else {
        Err(Error::NotNested)
    }
}

/// Whether the alpha-core of `outer` lies inside the alpha-core of `inner`.
pub fn core_containment(inner: &ConvexBody, outer: &ConvexBody, alpha: f64, n: usize) -> Result<bool> {
    if !(alpha > 0.0 && alpha <= 0.5) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    check_nested(inner, outer)?;
    let tol = 1e-6 * outer.diameter();
    let co = alpha_core(outer, alpha, n)?;
    if co.is_empty() {
        return Ok(true);
    }
    let ci = alpha_core(inner, alpha, n)?;
    Ok(core_inside(&co, &ci, tol))
}

fn core_inside(small: &CoreResult, big: &CoreResult, tol: f64) -> bool {
    match &small.kind {
        CoreKind::Empty => true,
        _ => small.vertices().iter().all(|p| big.contains(*p, tol)),
    }
}

/// The threshold above which the core of an equilateral triangle lies in
/// the core of its incircle.
///
/// With `alpha(t) = (t - cos t sin t) / pi`, solves
/// `1 - 3/2 (1 - sqrt(1 - 2 alpha(t))) = cos t` for `t` and returns
/// `alpha(t)`. The bracket starts at 0.1 to skip the trivial root at 0.
pub fn solve_alpha1() -> f64 {
    let alpha = |t: f64| (t - t.cos() * t.sin()) / PI;
    let g = |t: f64| 1.0 - 1.5 * (1.0 - (1.0 - 2.0 * alpha(t)).max(0.0).sqrt()) - t.cos();
    alpha(bisect(g, 0.1, FRAC_PI_2))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Witness {
    /// The section misses the inner body, which lies on its left.
    Disjoint { theta: Angle },
    /// The section is a `beta`-section of the inner body with `beta <= alpha`.
    Section { theta: Angle, beta: f64 },
    /// No witness found; the smallest `beta` seen.
    Violation { theta: Angle, min_beta: f64 },
}

impl Witness {
    pub fn is_violation(&self) -> bool {
        matches!(self, Witness::Violation { .. })
    }
}

enum Probe {
    Disjoint,
    Beta(f64),
}

fn probe(inner: &ConvexBody, outer: &ConvexBody, alpha: f64, theta: f64) -> Result<Probe> {
    let line = alpha_section(outer, alpha, theta)?;
    let (lo, _) = inner.support_interval(line.theta);
    if line.offset <= lo {
        return Ok(Probe::Disjoint);
    }
    Ok(Probe::Beta(inner.area_right(&line) / inner.area()))
}

/// Search the alpha-sections of `outer` for one that cuts at most a fraction
/// `alpha` (up to `1e-9`) from `inner` on its right.
pub fn conjecture_check(inner: &ConvexBody, outer: &ConvexBody, alpha: f64, n: usize) -> Result<Witness> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if n < 16 {
        return Err(Error::InvalidArgument(format!("need at least 16 directions, got {n}")));
    }
    check_nested(inner, outer)?;
    let mut thetas: Vec<f64> = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
    thetas.extend(vertex_passages(outer, alpha)?);
    thetas.sort_by(f64::total_cmp);
    thetas.dedup();
    let probes: Vec<Probe> = thetas
        .par_iter()
        .map(|&t| probe(inner, outer, alpha, t))
        .collect::<Result<_>>()?;
    let mut best = (f64::INFINITY, 0usize);
    for (i, p) in probes.iter().enumerate() {
        match p {
            Probe::Disjoint => {
                return Ok(Witness::Disjoint {
                    theta: Angle::new(thetas[i]),
                })
            }
            Probe::Beta(b) if *b <= alpha + WITNESS_SLACK => {
                return Ok(Witness::Section {
                    theta: Angle::new(thetas[i]),
                    beta: *b,
                })
            }
            Probe::Beta(b) if *b < best.0 => best = (*b, i),
            Probe::Beta(_) => {}
        }
    }
    // Golden-section refinement around the smallest sample.
    let m = thetas.len();
    let (mut a, mut b) = (
        thetas[(best.1 + m - 1) % m] - if best.1 == 0 { TAU } else { 0.0 },
        thetas[(best.1 + 1) % m] + if best.1 + 1 == m { TAU } else { 0.0 },
    );
    let beta = |t: f64| -> Result<f64> {
        Ok(match probe(inner, outer, alpha, t)? {
            Probe::Disjoint => 0.0,
            Probe::Beta(b) => b,
        })
    };
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut x1, mut x2) = (b - r * (b - a), a + r * (b - a));
    let (mut f1, mut f2) = (beta(x1)?, beta(x2)?);
    for _ in 0..80 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = beta(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = beta(x2)?;
        }
    }
    let (t, fb) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
    let (t, fb) = if fb < best.0 { (t, fb) } else { (thetas[best.1], best.0) };
    if fb <= alpha + WITNESS_SLACK {
        Ok(Witness::Section {
            theta: Angle::new(t),
            beta: fb,
        })
    } else {
        Ok(Witness::Violation {
            theta: Angle::new(t),
            min_beta: fb,
        })
    }
}
