//! Planar convex bodies: canonical convex polygons and analytic discs.
//!
//! A body is immutable after construction. Polygons are stored
//! counterclockwise and strictly convex; near-collinear and duplicate
//! vertices are collapsed by [`make_polygon`], which takes the convex hull of
//! its input (so the input order is not preserved).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Angle, OrientedLine, Point};

/// Relative collapse threshold for cross products during canonicalization,
/// scaled by the bounding-box area of the input.
pub const EPS_AREA_REL: f64 = 1e-12;

/// Relative boundary-membership tolerance, scaled by the body diameter.
pub const EPS_BOUNDARY_REL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    Polygon(Vec<Point>),
    Disc { center: Point, radius: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexBody {
    shape: Shape,
    area: f64,
    diameter: f64,
    bbox: (Point, Point),
}

/// Left/right tangent directions at a boundary point, for a counterclockwise
/// traversal of the boundary: `dir_left` is the incoming direction,
/// `dir_right` the outgoing one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentCone {
    pub at: Point,
    pub dir_left: Angle,
    pub dir_right: Angle,
}

impl TangentCone {
    pub fn is_corner(&self) -> bool {
        self.dir_left != self.dir_right
    }
}

/// Where on the boundary a point sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryFeature {
    /// Interior of polygon edge `i` (from vertex `i` to vertex `i + 1`).
    Edge(usize),
    /// Polygon vertex `i`.
    Vertex(usize),
    /// A point of a smooth boundary.
    Smooth,
}

/// Build a canonical polygon from an arbitrary point cloud.
pub fn make_polygon(points: &[Point]) -> Result<ConvexBody> {
    make_polygon_with(points, EPS_AREA_REL)
}

/// [`make_polygon`] with an explicit relative collapse threshold.
pub fn make_polygon_with(points: &[Point], eps_area_rel: f64) -> Result<ConvexBody> {
    if points.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(p) = points.iter().find(|p| !p.is_finite()) {
        return Err(Error::DegenerateInput(format!("non-finite coordinate {p}")));
    }
    let (lo, hi) = bounding_box(points);
    let eps = eps_area_rel * (hi.x - lo.x) * (hi.y - lo.y);
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::DegenerateInput("zero-area bounding box".into()));
    }
    let hull = convex_hull(points, eps);
    if hull.len() < 3 {
        return Err(Error::DegenerateInput("hull has fewer than 3 vertices".into()));
    }
    let area = polygon_area(&hull);
    if area <= eps {
        return Err(Error::DegenerateInput(format!("hull area {area:e} is too small")));
    }
    Ok(ConvexBody {
        diameter: polygon_diameter(&hull),
        bbox: bounding_box(&hull),
        area,
        shape: Shape::Polygon(hull),
    })
}

pub fn make_disc(center: Point, radius: f64) -> Result<ConvexBody> {
    if radius <= 0.0 || !radius.is_finite() || !center.is_finite() {
        return Err(Error::DegenerateInput(format!("invalid disc radius {radius}")));
    }
    Ok(ConvexBody {
        shape: Shape::Disc { center, radius },
        area: PI * radius * radius,
        diameter: 2.0 * radius,
        bbox: (
            Point::new(center.x - radius, center.y - radius),
            Point::new(center.x + radius, center.y + radius),
        ),
    })
}

/// Andrew's monotone chain; drops points whose turn is below `eps`.
fn convex_hull(points: &[Point], eps: f64) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: Point, a: Point, b: Point| (a - o).cross(b - o);
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= eps {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= eps {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();

    // The chain can still leave a near-collinear vertex at the seam.
    loop {
        let n = hull.len();
        if n < 3 {
            break;
        }
        let flat = (0..n).find(|&i| turn(hull[(i + n - 1) % n], hull[i], hull[(i + 1) % n]) <= eps);
        match flat {
            Some(i) => {
                hull.remove(i);
            }
            None => break,
        }
    }
    hull
}

pub(crate) fn bounding_box(points: &[Point]) -> (Point, Point) {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

/// Shoelace area of a counterclockwise ring.
pub(crate) fn polygon_area(v: &[Point]) -> f64 {
    let mut acc = Shoelace::new(v[0]);
    for &p in v {
        acc.push(p);
    }
    acc.finish()
}

/// Rotating calipers over a strictly convex CCW polygon.
fn polygon_diameter(v: &[Point]) -> f64 {
    let n = v.len();
    let mut best: f64 = 0.0;
    let mut j = 1;
    for i in 0..n {
        let ni = (i + 1) % n;
        let e = v[ni] - v[i];
        let mut guard = 0;
        while e.cross(v[(j + 1) % n] - v[j]) > 0.0 && guard < n {
            j = (j + 1) % n;
            guard += 1;
        }
        best = best.max(v[i].dist(v[j])).max(v[ni].dist(v[j]));
    }
    best
}

/// Streaming shoelace accumulator, relative to a fixed origin.
pub(crate) struct Shoelace {
    origin: Point,
    first: Option<Point>,
    prev: Point,
    sum: f64,
}

impl Shoelace {
    pub(crate) fn new(origin: Point) -> Self {
        Shoelace {
            origin,
            first: None,
            prev: Point::ORIGIN,
            sum: 0.0,
        }
    }

    #[inline]
    pub(crate) fn push(&mut self, p: Point) {
        let rel = p - self.origin;
        match self.first {
            None => self.first = Some(rel),
            Some(_) => self.sum += self.prev.cross(rel),
        }
        self.prev = rel;
    }

    pub(crate) fn finish(self) -> f64 {
        match self.first {
            None => 0.0,
            Some(f) => 0.5 * (self.sum + self.prev.cross(f)),
        }
    }
}

impl ConvexBody {
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn bbox(&self) -> (Point, Point) {
        self.bbox
    }

    /// Vertices of a polygon body, counterclockwise.
    pub fn vertices(&self) -> Option<&[Point]> {
        match &self.shape {
            Shape::Polygon(v) => Some(v),
            Shape::Disc { .. } => None,
        }
    }

    pub fn is_polygon(&self) -> bool {
        matches!(self.shape, Shape::Polygon(_))
    }

    pub fn eps_boundary(&self) -> f64 {
        EPS_BOUNDARY_REL * self.diameter
    }

    /// Range of `<x, u'(theta)>` over the body.
    pub fn support_interval(&self, theta: Angle) -> (f64, f64) {
        let n = theta.normal();
        match &self.shape {
            Shape::Polygon(v) => v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                let s = p.dot(n);
                (lo.min(s), hi.max(s))
            }),
            Shape::Disc { center, radius } => {
                let c = center.dot(n);
                (c - radius, c + radius)
            }
        }
    }

    /// Area of the part of the body on the right (minus) side of `line`.
    pub fn area_right(&self, line: &OrientedLine) -> f64 {
        Slicer::new(self, line.theta).area_right(line.offset)
    }

    /// Membership test with an absolute tolerance (positive grows the body).
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        match &self.shape {
            Shape::Polygon(v) => {
                let n = v.len();
                (0..n).all(|i| {
                    let a = v[i];
                    let e = v[(i + 1) % n] - a;
                    e.cross(p - a) / e.norm() >= -tol
                })
            }
            Shape::Disc { center, radius } => p.dist(*center) <= radius + tol,
        }
    }

    /// Unsigned distance from `p` to the boundary curve.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        match &self.shape {
            Shape::Polygon(v) => {
                let n = v.len();
                (0..n)
                    .map(|i| segment_distance(p, v[i], v[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
            Shape::Disc { center, radius } => (p.dist(*center) - radius).abs(),
        }
    }

    /// Classify a boundary point: vertex (within `eps_boundary`), edge, or
    /// smooth point.
    pub fn locate_boundary(&self, p: Point) -> Result<BoundaryFeature> {
        let eps = self.eps_boundary();
        match &self.shape {
            Shape::Polygon(v) => {
                let n = v.len();
                let (vi, vd) = (0..n)
                    .map(|i| (i, p.dist(v[i])))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("polygon has vertices");
                if vd <= eps {
                    return Ok(BoundaryFeature::Vertex(vi));
                }
                let (ei, ed) = (0..n)
                    .map(|i| (i, segment_distance(p, v[i], v[(i + 1) % n])))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("polygon has edges");
                if ed <= eps {
                    Ok(BoundaryFeature::Edge(ei))
                } else {
                    Err(Error::NotOnBoundary {
                        x: p.x,
                        y: p.y,
                        distance: ed,
                    })
                }
            }
            Shape::Disc { center, radius } => {
                let d = (p.dist(*center) - radius).abs();
                if d <= eps {
                    Ok(BoundaryFeature::Smooth)
                } else {
                    Err(Error::NotOnBoundary {
                        x: p.x,
                        y: p.y,
                        distance: d,
                    })
                }
            }
        }
    }

    pub fn tangent_cone(&self, p: Point) -> Result<TangentCone> {
        let feature = self.locate_boundary(p)?;
        Ok(self.cone_at(p, feature))
    }

    pub(crate) fn cone_at(&self, p: Point, feature: BoundaryFeature) -> TangentCone {
        match (&self.shape, feature) {
            (Shape::Polygon(v), BoundaryFeature::Vertex(i)) => {
                let n = v.len();
                TangentCone {
                    at: p,
                    dir_left: (v[i] - v[(i + n - 1) % n]).angle(),
                    dir_right: (v[(i + 1) % n] - v[i]).angle(),
                }
            }
            (Shape::Polygon(v), BoundaryFeature::Edge(i)) => {
                let d = (v[(i + 1) % v.len()] - v[i]).angle();
                TangentCone {
                    at: p,
                    dir_left: d,
                    dir_right: d,
                }
            }
            (Shape::Disc { center, .. }, _) => {
                let d = (p - *center).angle().offset(PI / 2.0);
                TangentCone {
                    at: p,
                    dir_left: d,
                    dir_right: d,
                }
            }
            (Shape::Polygon(_), BoundaryFeature::Smooth) => {
                unreachable!("smooth boundary feature on a polygon")
            }
        }
    }

    /// Centroid of the body.
    pub fn mass_center(&self) -> Point {
        match &self.shape {
            Shape::Polygon(v) => {
                let o = v[0];
                let mut acc = Point::ORIGIN;
                let mut total = 0.0;
                for w in v[1..].windows(2) {
                    let a = w[0] - o;
                    let b = w[1] - o;
                    let tri = 0.5 * a.cross(b);
                    acc += (a + b) * (tri / 3.0);
                    total += tri;
                }
                o + acc / total
            }
            Shape::Disc { center, .. } => *center,
        }
    }

    /// Center of central symmetry, if any, within the absolute tolerance `tol`.
    pub fn symmetry_center(&self, tol: f64) -> Option<Point> {
        match &self.shape {
            Shape::Polygon(v) => {
                let n = v.len();
                if n % 2 != 0 {
                    return None;
                }
                let half = n / 2;
                let c = v[0].midpoint(v[half]);
                (0..half)
                    .all(|i| v[i].midpoint(v[i + half]).dist(c) <= tol)
                    .then_some(c)
            }
            Shape::Disc { center, .. } => Some(*center),
        }
    }

    /// Whether two edges of a polygon are antiparallel within `angle_tol`.
    pub fn has_antiparallel_edges(&self, angle_tol: f64) -> bool {
        let Some(v) = self.vertices() else {
            return false;
        };
        let n = v.len();
        let dirs: Vec<Angle> = (0..n).map(|i| (v[(i + 1) % n] - v[i]).angle()).collect();
        dirs.iter().enumerate().any(|(i, a)| {
            dirs[i + 1..].iter().any(|b| {
                let d = a.ccw_to(*b);
                (d - PI).abs() <= angle_tol
            })
        })
    }

    /// Boundary polyline for plotting; discs are sampled with `n` points.
    pub fn outline(&self, n: usize) -> Vec<Point> {
        match &self.shape {
            Shape::Polygon(v) => v.clone(),
            Shape::Disc { center, radius } => (0..n)
                .map(|k| *center + crate::geom::unit(2.0 * PI * k as f64 / n as f64) * *radius)
                .collect(),
        }
    }
}

pub(crate) fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let e = b - a;
    let len2 = e.dot(e);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let s = ((p - a).dot(e) / len2).clamp(0.0, 1.0);
    p.dist(a + e * s)
}

/// Area queries for a fixed direction; polygon projections are computed once.
pub(crate) struct Slicer<'a> {
    body: &'a ConvexBody,
    theta: Angle,
    proj: Vec<f64>,
}

impl<'a> Slicer<'a> {
    pub(crate) fn new(body: &'a ConvexBody, theta: Angle) -> Self {
        let n = theta.normal();
        let proj = match &body.shape {
            Shape::Polygon(v) => v.iter().map(|p| p.dot(n)).collect(),
            Shape::Disc { .. } => Vec::new(),
        };
        Slicer { body, theta, proj }
    }

    pub(crate) fn support(&self) -> (f64, f64) {
        match &self.body.shape {
            Shape::Polygon(_) => self
                .proj
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &s| {
                    (lo.min(s), hi.max(s))
                }),
            Shape::Disc { .. } => self.body.support_interval(self.theta),
        }
    }

    /// Area of `{<x, u'> <= t}` intersected with the body.
    pub(crate) fn area_right(&self, t: f64) -> f64 {
        match &self.body.shape {
            Shape::Polygon(v) => {
                let n = v.len();
                let mut inside = 0;
                for &s in &self.proj {
                    if s <= t {
                        inside += 1;
                    }
                }
                if inside == n {
                    return self.body.area;
                }
                if inside == 0 {
                    return 0.0;
                }
                let mut acc = Shoelace::new(v[0]);
                for i in 0..n {
                    let j = (i + 1) % n;
                    let da = t - self.proj[i];
                    let db = t - self.proj[j];
                    if da >= 0.0 {
                        acc.push(v[i]);
                    }
                    if (da >= 0.0) != (db >= 0.0) {
                        acc.push(v[i].lerp(v[j], da / (da - db)));
                    }
                }
                acc.finish().clamp(0.0, self.body.area)
            }
            Shape::Disc { center, radius } => {
                let d = t - center.dot(self.theta.normal());
                disc_segment_area(*radius, d)
            }
        }
    }
}

/// Area of the part of a disc of radius `r` lying on the side
/// `{signed offset <= d}` of a line at signed distance `d` from the center.
pub(crate) fn disc_segment_area(r: f64, d: f64) -> f64 {
    if d <= -r {
        0.0
    } else if d >= r {
        PI * r * r
    } else {
        r * r * (-d / r).acos() + d * (r * r - d * d).sqrt()
    }
}

/// JSON body description, as read by the command-line tool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BodySpec {
    Polygon { vertices: Vec<[f64; 2]> },
    Disc { center: [f64; 2], radius: f64 },
}

impl BodySpec {
    pub fn build(&self) -> Result<ConvexBody> {
        match self {
            BodySpec::Polygon { vertices } => {
                let pts: Vec<Point> = vertices.iter().map(|&a| Point::from(a)).collect();
                make_polygon(&pts)
            }
            BodySpec::Disc { center, radius } => make_disc(Point::from(*center), *radius),
        }
    }
}

impl From<&ConvexBody> for BodySpec {
    fn from(body: &ConvexBody) -> Self {
        match &body.shape {
            Shape::Polygon(v) => BodySpec::Polygon {
                vertices: v.iter().map(|p| p.to_array()).collect(),
            },
            Shape::Disc { center, radius } => BodySpec::Disc {
                center: center.to_array(),
                radius: *radius,
            },
        }
    }
}
