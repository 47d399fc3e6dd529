//! Alpha-cores as intersections of left half-planes, and the critical
//! values of a body.

use std::f64::consts::TAU;

use rayon::prelude::*;

use crate::bodies::{make_polygon, polygon_area, ConvexBody};
use crate::envelope::{sample_envelope, vertex_passages, Label};
use crate::error::{Error, Result};
use crate::geom::{Angle, OrientedLine, Point};
use crate::sections::{section_chord, VelocityInterval};

/// Relative size below which a half-plane intersection is a point, scaled
/// by the diameter.
pub const EPS_CORE_REL: f64 = 1e-7;

pub const MIN_CORE_SAMPLES: usize = 64;

/// Seed grid for the B- and Z-nonempty scans.
pub const CRITICAL_SCAN_SAMPLES: usize = 1024;

/// Grid for the core-nonempty predicate behind `alpha_K`.
pub const CRITICAL_CORE_SAMPLES: usize = 4096;

pub const MIN_CRITICAL_TOL: f64 = 1e-8;

const MAX_CORNER_PASSES: usize = 40;
const MIN_CORNER_GAP: f64 = 1e-12;
/// Largest allowed offset, relative to the diameter, between a core vertex
/// and the envelope arc it cuts across.
const SAGITTA_REL: f64 = 2.5e-7;
const BOX_LABEL: usize = usize::MAX;

/// A line `point + R u(theta)` of a tangent-line family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyEntry {
    pub theta: Angle,
    pub point: Point,
    pub velocity: Option<VelocityInterval>,
}

impl FamilyEntry {
    pub fn line(&self) -> OrientedLine {
        OrientedLine::through(self.point, self.theta)
    }
}

/// Lines sorted by strictly increasing direction in [0, 2pi).
#[derive(Clone, Debug, PartialEq)]
pub struct TangentLineFamily {
    entries: Vec<FamilyEntry>,
}

impl TangentLineFamily {
    pub fn new(entries: Vec<FamilyEntry>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0].theta.radians() >= w[1].theta.radians()) {
            return Err(Error::UnsortedFamily);
        }
        Ok(TangentLineFamily { entries })
    }

    /// Sort by direction and drop repeated directions (first one wins).
    pub fn from_unsorted(mut entries: Vec<FamilyEntry>) -> Self {
        entries.sort_by(|a, b| a.theta.radians().total_cmp(&b.theta.radians()));
        entries.dedup_by(|a, b| a.theta == b.theta);
        TangentLineFamily { entries }
    }

    pub fn entries(&self) -> &[FamilyEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest angular gap between cyclically consecutive directions.
    pub fn max_gap(&self) -> f64 {
        let n = self.entries.len();
        if n == 0 {
            return TAU;
        }
        (0..n)
            .map(|i| {
                let a = self.entries[i].theta;
                let b = self.entries[(i + 1) % n].theta;
                if n == 1 {
                    TAU
                } else {
                    a.ccw_to(b)
                }
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CoreKind {
    Region(ConvexBody),
    Point(Point),
    Empty,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoreResult {
    pub kind: CoreKind,
    pub inradius_estimate: f64,
    /// The family the core was cut from, when it carries velocities.
    pub tour: Option<TangentLineFamily>,
}

impl CoreResult {
    pub fn empty() -> Self {
        CoreResult {
            kind: CoreKind::Empty,
            inradius_estimate: 0.0,
            tour: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.kind, CoreKind::Empty)
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            CoreKind::Region(_) => "region",
            CoreKind::Point(_) => "point",
            CoreKind::Empty => "empty",
        }
    }

    /// Region centroid, or the point itself.
    pub fn centroid(&self) -> Option<Point> {
        match &self.kind {
            CoreKind::Region(b) => Some(b.mass_center()),
            CoreKind::Point(p) => Some(*p),
            CoreKind::Empty => None,
        }
    }

    /// Boundary vertices (a single point for a point core).
    pub fn vertices(&self) -> Vec<Point> {
        match &self.kind {
            CoreKind::Region(b) => b.vertices().map(<[Point]>::to_vec).unwrap_or_default(),
            CoreKind::Point(p) => vec![*p],
            CoreKind::Empty => Vec::new(),
        }
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        match &self.kind {
            CoreKind::Region(b) => b.contains(p, tol),
            CoreKind::Point(q) => q.dist(p) <= tol,
            CoreKind::Empty => false,
        }
    }

    pub fn diameter(&self) -> f64 {
        match &self.kind {
            CoreKind::Region(b) => b.diameter(),
            _ => 0.0,
        }
    }
}

/// Convex polygon whose edge `i` (from vertex `i` to `i + 1`) lies on the
/// line with id `labels[i]`.
#[derive(Clone, Debug)]
struct LabeledPolygon {
    pts: Vec<Point>,
    labels: Vec<usize>,
}

impl LabeledPolygon {
    fn square(center: Point, half: f64) -> Self {
        let pts = vec![
            center + Point::new(-half, -half),
            center + Point::new(half, -half),
            center + Point::new(half, half),
            center + Point::new(-half, half),
        ];
        LabeledPolygon {
            pts,
            labels: vec![BOX_LABEL; 4],
        }
    }

    fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    /// Keep `{signed_dist(line) + slack >= 0}`; edges cut by the line get `id`.
    fn clip(&mut self, line: &OrientedLine, slack: f64, id: usize, merge_tol: f64) {
        let n = self.pts.len();
        if n == 0 {
            return;
        }
        let d: Vec<f64> = self.pts.iter().map(|p| line.signed_dist(*p) + slack).collect();
        if d.iter().all(|&x| x >= 0.0) {
            return;
        }
        if d.iter().all(|&x| x < 0.0) {
            self.pts.clear();
            self.labels.clear();
            return;
        }
        let mut pts = Vec::with_capacity(n + 1);
        let mut labels = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (a, b) = (self.pts[i], self.pts[j]);
            let (da, db) = (d[i], d[j]);
            if da >= 0.0 {
                pts.push(a);
                labels.push(self.labels[i]);
                if db < 0.0 {
                    pts.push(a.lerp(b, da / (da - db)));
                    labels.push(id);
                }
            } else if db >= 0.0 {
                pts.push(a.lerp(b, da / (da - db)));
                labels.push(self.labels[i]);
            }
        }
        // Drop zero-length edges so labels of real edges stay adjacent.
        let mut k = 0;
        while pts.len() > 1 && k < pts.len() {
            let next = (k + 1) % pts.len();
            if pts[k].dist(pts[next]) <= merge_tol {
                pts.remove(k);
                labels.remove(k);
            } else {
                k += 1;
            }
        }
        self.pts = pts;
        self.labels = labels;
    }

    fn diameter(&self) -> f64 {
        let mut best: f64 = 0.0;
        for (i, a) in self.pts.iter().enumerate() {
            for b in &self.pts[i + 1..] {
                best = best.max(a.dist(*b));
            }
        }
        best
    }

    fn centroid(&self) -> Point {
        if self.pts.len() >= 3 {
            let area = polygon_area(&self.pts);
            if area > 0.0 {
                let o = self.pts[0];
                let mut acc = Point::ORIGIN;
                for w in self.pts[1..].windows(2) {
                    let (a, b) = (w[0] - o, w[1] - o);
                    acc += (a + b) * (a.cross(b) / 6.0);
                }
                return o + acc / area;
            }
        }
        let n = self.pts.len() as f64;
        self.pts.iter().fold(Point::ORIGIN, |s, p| s + *p) / n
    }
}

fn initial_box(points: impl Iterator<Item = Point>, scale: f64) -> LabeledPolygon {
    let pts: Vec<Point> = points.collect();
    let c = pts.iter().fold(Point::ORIGIN, |s, p| s + *p) / pts.len() as f64;
    let spread = pts.iter().map(|p| p.dist(c)).fold(0.0, f64::max);
    LabeledPolygon::square(c, 10.0 * (spread + scale))
}

/// Classify the clipped intersection, re-clipping with relaxed lines when
/// the exact one is empty or tiny.
fn classify(exact: &LabeledPolygon, lines: &[OrientedLine], scale: f64, tour: Option<TangentLineFamily>) -> CoreResult {
    let eps_core = EPS_CORE_REL * scale;
    let merge = 1e-14 * scale;
    if !exact.is_empty() && exact.diameter() > eps_core {
        if let Ok(body) = make_polygon(&exact.pts) {
            let perimeter: f64 = {
                let v = body.vertices().expect("polygon");
                (0..v.len()).map(|i| v[i].dist(v[(i + 1) % v.len()])).sum()
            };
            return CoreResult {
                inradius_estimate: 2.0 * body.area() / perimeter,
                kind: CoreKind::Region(body),
                tour,
            };
        }
    }
    if !exact.is_empty() {
        return CoreResult {
            kind: CoreKind::Point(exact.centroid()),
            inradius_estimate: 0.0,
            tour: None,
        };
    }
    let mut relaxed = initial_box(lines.iter().map(|l| l.base_point()), scale);
    for (id, l) in lines.iter().enumerate() {
        relaxed.clip(l, eps_core, id, merge);
        if relaxed.is_empty() {
            return CoreResult::empty();
        }
    }
    CoreResult {
        kind: CoreKind::Point(relaxed.centroid()),
        inradius_estimate: 0.0,
        tour: None,
    }
}

fn check_span(family: &TangentLineFamily) -> Result<()> {
    if family.len() < 3 || family.max_gap() >= std::f64::consts::PI {
        Err(Error::InsufficientFamily)
    } else {
        Ok(())
    }
}

/// Intersection of the left half-planes of a tangent-line family.
pub fn core_of_family(family: &TangentLineFamily) -> Result<CoreResult> {
    check_span(family)?;
    let pts: Vec<Point> = family.entries().iter().map(|e| e.point).collect();
    let c = pts.iter().fold(Point::ORIGIN, |s, p| s + *p) / pts.len() as f64;
    let spread = pts.iter().map(|p| p.dist(c)).fold(0.0, f64::max);
    let scale = if spread > 0.0 { 2.0 * spread } else { 1.0 };
    let lines: Vec<OrientedLine> = family.entries().iter().map(FamilyEntry::line).collect();
    let mut poly = initial_box(pts.into_iter(), scale);
    for (id, l) in lines.iter().enumerate() {
        poly.clip(l, 0.0, id, 1e-14 * scale);
    }
    let tour = family
        .entries()
        .iter()
        .all(|e| e.velocity.is_some())
        .then(|| family.clone());
    Ok(classify(&poly, &lines, scale, tour))
}

fn speed(e: &FamilyEntry) -> f64 {
    e.velocity.map_or(0.0, |v| v.v_l.abs().max(v.v_r.abs()))
}

fn section_entry(body: &ConvexBody, alpha: f64, theta: f64) -> Result<FamilyEntry> {
    let ch = section_chord(body, alpha, theta)?;
    Ok(FamilyEntry {
        theta: ch.line.theta,
        point: ch.m,
        velocity: Some(ch.velocity()),
    })
}

/// The alpha-core, cut from `n` uniformly spaced alpha-sections plus the
/// vertex passages.
///
/// Where two consecutive core edges come from lines that are not neighbours
/// in the family, the core has a corner; extra sections are inserted next to
/// both lines until the angular gap is below `1e-12` or 40 passes have run.
/// Between neighbouring lines, a section is also inserted where the envelope
/// is fast enough that `|v| gap^2 / 8` exceeds `2.5e-7` of the diameter.
pub fn alpha_core(body: &ConvexBody, alpha: f64, n: usize) -> Result<CoreResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if n < MIN_CORE_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_CORE_SAMPLES} directions, got {n}"
        )));
    }
    if alpha > 0.5 {
        return Ok(CoreResult::empty());
    }
    let scale = body.diameter();
    let merge = 1e-14 * scale;
    let mut thetas: Vec<f64> = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
    thetas.extend(vertex_passages(body, alpha)?);
    let mut entries: Vec<FamilyEntry> = thetas
        .par_iter()
        .map(|&t| section_entry(body, alpha, t))
        .collect::<Result<_>>()?;
    entries = TangentLineFamily::from_unsorted(entries).entries;

    let mut poly = LabeledPolygon::square(body.mass_center(), 10.0 * scale);
    for (id, e) in entries.iter().enumerate() {
        poly.clip(&e.line(), 0.0, id, merge);
    }

    for _ in 0..MAX_CORNER_PASSES {
        if poly.pts.len() < 3 {
            break;
        }
        let mut order: Vec<usize> = (0..entries.len()).collect();
        order.sort_by(|&a, &b| entries[a].theta.radians().total_cmp(&entries[b].theta.radians()));
        let mut rank = vec![0; entries.len()];
        for (r, &id) in order.iter().enumerate() {
            rank[id] = r;
        }
        let total = order.len();
        let mid_after = |id: usize| {
            let next = order[(rank[id] + 1) % total];
            let gap = entries[id].theta.ccw_to(entries[next].theta);
            (gap > MIN_CORNER_GAP).then(|| entries[id].theta.radians() + 0.5 * gap)
        };
        let mid_before = |id: usize| {
            let prev = order[(rank[id] + total - 1) % total];
            let gap = entries[prev].theta.ccw_to(entries[id].theta);
            (gap > MIN_CORNER_GAP).then(|| entries[prev].theta.radians() + 0.5 * gap)
        };
        let m = poly.pts.len();
        let mut fresh: Vec<f64> = Vec::new();
        for i in 0..m {
            let l1 = poly.labels[(i + m - 1) % m];
            let l2 = poly.labels[i];
            if l1 == BOX_LABEL || l2 == BOX_LABEL {
                continue;
            }
            let step = (rank[l2] + total - rank[l1]) % total;
            if step >= 2 {
                fresh.extend(mid_after(l1));
                fresh.extend(mid_before(l2));
            } else if step == 1 {
                let gap = entries[l1].theta.ccw_to(entries[l2].theta);
                if speed(&entries[l1]).max(speed(&entries[l2])) * gap * gap / 8.0 > SAGITTA_REL * scale {
                    fresh.extend(mid_after(l1));
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        fresh.iter_mut().for_each(|t| *t = Angle::new(*t).radians());
        fresh.sort_by(f64::total_cmp);
        fresh.dedup();
        let extra: Vec<FamilyEntry> = fresh
            .par_iter()
            .map(|&t| section_entry(body, alpha, t))
            .collect::<Result<_>>()?;
        for e in extra {
            let id = entries.len();
            entries.push(e);
            poly.clip(&e.line(), 0.0, id, merge);
        }
    }

    let family = TangentLineFamily::from_unsorted(entries.clone());
    let lines: Vec<OrientedLine> = entries.iter().map(FamilyEntry::line).collect();
    Ok(classify(&poly, &lines, scale, Some(family)))
}

/// Critical values of a body, with one-sided membership flags of the zero
/// interval at its endpoint.
#[derive(Clone, Debug, PartialEq)]
#[allow(non_snake_case)]
pub struct CriticalValues {
    pub alpha_B: f64,
    pub alpha_Z: f64,
    pub alpha_K: f64,
    pub T: Option<Point>,
    pub tol: f64,
    /// Whether Z(alpha_Z - tol) is nonempty.
    pub z_nonempty_below: bool,
    /// Whether Z(alpha_Z + tol) is nonempty.
    pub z_nonempty_above: bool,
}

fn check_tol(tol: f64) -> Result<()> {
    if (MIN_CRITICAL_TOL..0.5).contains(&tol) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "tol must be in [{MIN_CRITICAL_TOL:e}, 0.5), got {tol}"
        )))
    }
}

/// Smallest alpha in [0, 1/2] where a predicate that is monotone
/// (false then true) switches on; 1/2 if it is false at 1/2.
fn threshold_up<F: FnMut(f64) -> Result<bool>>(mut pred: F, tol: f64) -> Result<f64> {
    if !pred(0.5)? {
        return Ok(0.5);
    }
    let (mut lo, mut hi) = (0.0, 0.5);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn scan_has(body: &ConvexBody, alpha: f64, label: Label) -> Result<bool> {
    Ok(sample_envelope(body, alpha, CRITICAL_SCAN_SAMPLES)?.has_label(label))
}

#[allow(non_snake_case)]
pub fn critical_alpha_B(body: &ConvexBody, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    threshold_up(|a| scan_has(body, a, Label::B), tol)
}

#[allow(non_snake_case)]
pub fn critical_alpha_Z(body: &ConvexBody, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    threshold_up(|a| scan_has(body, a, Label::Z), tol)
}

/// `alpha_K` and the point `T`, the centroid of the core on the nonempty
/// side of the final bracket.
#[allow(non_snake_case)]
pub fn critical_alpha_K(body: &ConvexBody, tol: f64) -> Result<(f64, Option<Point>)> {
    check_tol(tol)?;
    let core = |a: f64| alpha_core(body, a, CRITICAL_CORE_SAMPLES);
    let top = core(0.5)?;
    if !top.is_empty() {
        return Ok((0.5, top.centroid()));
    }
    let (mut lo, mut hi) = (0.0, 0.5);
    let mut last: Option<CoreResult> = None;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let c = core(mid)?;
        if c.is_empty() {
            hi = mid;
        } else {
            lo = mid;
            last = Some(c);
        }
    }
    let t = match last {
        Some(c) => c.centroid(),
        None => core(lo.max(tol))?.centroid(),
    };
    Ok((0.5 * (lo + hi), t))
}

pub fn critical_values(body: &ConvexBody, tol: f64) -> Result<CriticalValues> {
    #[allow(non_snake_case)]
    let alpha_B = critical_alpha_B(body, tol)?;
    #[allow(non_snake_case)]
    let alpha_Z = critical_alpha_Z(body, tol)?;
    #[allow(non_snake_case)]
    let (alpha_K, T) = critical_alpha_K(body, tol)?;
    let z_at = |a: f64| -> Result<bool> {
        if a > 0.0 && a < 1.0 {
            scan_has(body, a, Label::Z)
        } else {
            Ok(false)
        }
    };
    Ok(CriticalValues {
        alpha_B,
        alpha_Z,
        alpha_K,
        T,
        tol,
        z_nonempty_below: z_at(alpha_Z - tol)?,
        z_nonempty_above: z_at(alpha_Z + tol)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{make_disc, make_polygon};
    use std::f64::consts::PI;

    fn square() -> ConvexBody {
        make_polygon(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap()
    }

    fn equilateral() -> ConvexBody {
        let s = 3f64.sqrt();
        make_polygon(&[Point::new(0.0, 2.0), Point::new(-s, -1.0), Point::new(s, -1.0)]).unwrap()
    }

    #[test]
    fn family_validation() {
        let e = |t: f64| FamilyEntry {
            theta: Angle::new(t),
            point: Point::ORIGIN,
            velocity: None,
        };
        assert_eq!(
            TangentLineFamily::new(vec![e(1.0), e(0.5), e(2.0)]).unwrap_err(),
            Error::UnsortedFamily
        );
        let narrow = TangentLineFamily::new(vec![e(0.0), e(0.5), e(1.0)]).unwrap();
        assert_eq!(core_of_family(&narrow).unwrap_err(), Error::InsufficientFamily);
    }

    #[test]
    fn infeasible_triangle_of_constraints() {
        // Left sides of the lines pointing away from each other.
        let entries = [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0]
            .iter()
            .map(|&t| FamilyEntry {
                theta: Angle::new(t),
                point: crate::geom::normal(t) * -1.0,
                velocity: None,
            })
            .map(|mut e| {
                e.theta = e.theta.opposite();
                e
            })
            .collect();
        let fam = TangentLineFamily::from_unsorted(entries);
        assert!(core_of_family(&fam).unwrap().is_empty());
    }

    #[test]
    fn unit_triangle_family() {
        // Left sides of the three lines contain the unit incircle.
        let entries = [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0]
            .iter()
            .map(|&t| FamilyEntry {
                theta: Angle::new(t),
                point: crate::geom::normal(t) * -1.0,
                velocity: None,
            })
            .collect();
        let fam = TangentLineFamily::from_unsorted(entries);
        let core = core_of_family(&fam).unwrap();
        let CoreKind::Region(tri) = &core.kind else {
            panic!("{core:?}")
        };
        assert!((tri.area() - 3.0 * 3f64.sqrt()).abs() < 1e-9);
        assert!((core.inradius_estimate - 1.0).abs() < 1e-9);
    }

    #[test]
    fn square_core_contains_center() {
        let core = alpha_core(&square(), 0.25, 256).unwrap();
        assert!(matches!(core.kind, CoreKind::Region(_)));
        assert!(core.contains(Point::new(0.5, 0.5), 0.0));
        for corner in [Point::new(0.5, 0.25), Point::new(0.75, 0.5)] {
            assert!(core.contains(corner, 1e-9));
        }
    }

    #[test]
    fn square_half_core_is_center() {
        let core = alpha_core(&square(), 0.5, 256).unwrap();
        let CoreKind::Point(p) = core.kind else {
            panic!("{core:?}")
        };
        assert!(p.dist(Point::new(0.5, 0.5)) < 1e-7);
    }

    #[test]
    fn above_half_is_empty() {
        assert!(alpha_core(&square(), 0.7, 64).unwrap().is_empty());
        assert!(matches!(alpha_core(&square(), 1.0, 64), Err(Error::AlphaOutOfRange(_))));
        assert!(matches!(alpha_core(&square(), 0.2, 16), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn disc_core_radius() {
        let t = PI / 3.0;
        let alpha = (t - t.cos() * t.sin()) / PI;
        let core = alpha_core(&make_disc(Point::ORIGIN, 1.0).unwrap(), alpha, 1024).unwrap();
        let CoreKind::Region(b) = &core.kind else { panic!() };
        for v in b.vertices().unwrap() {
            assert!((v.norm() - 0.5).abs() < 1e-5);
        }
    }

    #[test]
    fn triangle_core_shrinks_to_centroid() {
        let k = equilateral();
        let c = alpha_core(&k, 4.0 / 9.0 - 1e-4, 512).unwrap();
        assert!(!c.is_empty());
        assert!(c.centroid().unwrap().norm() < 1e-3);
        assert!(alpha_core(&k, 4.0 / 9.0 + 1e-4, 512).unwrap().is_empty());
    }

    #[test]
    fn tol_is_checked() {
        assert!(matches!(
            critical_alpha_B(&square(), 1e-12),
            Err(Error::InvalidArgument(_))
        ));
    }
}
