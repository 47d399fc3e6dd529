//! Alpha-sections, their chords and the velocity interval of the envelope.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bodies::{BoundaryFeature, ConvexBody, Shape, Slicer, TangentCone};
use crate::error::{Error, Result};
use crate::geom::{wrap_tau, Angle, OrientedLine, Point};

/// Relative area residual accepted for an alpha-section.
pub const EPS_SEC: f64 = 1e-12;

const MAX_SECTION_ITERS: usize = 200;
const MIN_SIN: f64 = 1e-15;

/// One chord `[b, c]` of the body cut by an oriented line.
///
/// `c - b` points along `u(theta)`. The four angles are the left and right
/// limits of the angle between the boundary and the chord at `b` (`beta`)
/// and at `c` (`gamma`); they coincide at regular boundary points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Chord {
    pub line: OrientedLine,
    pub b: Point,
    pub c: Point,
    pub m: Point,
    pub h: f64,
    pub beta_l: f64,
    pub beta_r: f64,
    pub gamma_l: f64,
    pub gamma_r: f64,
    pub b_feature: BoundaryFeature,
    pub c_feature: BoundaryFeature,
}

/// Left and right velocities of the envelope at one direction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VelocityInterval {
    pub v_l: f64,
    pub v_r: f64,
}

impl VelocityInterval {
    pub fn new(v_l: f64, v_r: f64) -> Self {
        VelocityInterval { v_l, v_r }
    }

    pub fn min(&self) -> f64 {
        self.v_l.min(self.v_r)
    }

    pub fn max(&self) -> f64 {
        self.v_l.max(self.v_r)
    }

    /// Whether `w` lies in the segment V grown by `tol` on both sides.
    pub fn contains(&self, w: f64, tol: f64) -> bool {
        self.min() - tol <= w && w <= self.max() + tol
    }

    pub fn is_regular(&self) -> bool {
        self.v_l == self.v_r
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

/// The unique line of direction `theta` leaving area `alpha * |K|` on its
/// right.
///
/// Bisection on the offset over the support interval. The loop runs until
/// the bracket stops shrinking (or the residual vanishes), so the result is
/// usually far tighter than the `EPS_SEC` acceptance bound.
pub fn alpha_section(body: &ConvexBody, alpha: f64, theta: impl Into<Angle>) -> Result<OrientedLine> {
    check_alpha(alpha)?;
    let theta = theta.into();
    let slicer = Slicer::new(body, theta);
    let (mut lo, mut hi) = slicer.support();
    let target = alpha * body.area();
    let mut best = (f64::INFINITY, 0.5 * (lo + hi));
    for _ in 0..MAX_SECTION_ITERS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let r = slicer.area_right(mid) - target;
        if r.abs() < best.0 {
            best = (r.abs(), mid);
        }
        if r == 0.0 {
            break;
        } else if r < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if best.0 > EPS_SEC * body.area() {
        return Err(Error::NoConvergence(format!(
            "alpha-section at theta = {theta}: residual {:e}",
            best.0
        )));
    }
    Ok(OrientedLine::new(theta, best.1))
}

/// The chord cut from the body by `line`, with corner-aware angles.
pub fn chord(body: &ConvexBody, line: &OrientedLine) -> Result<Chord> {
    let eps = body.eps_boundary();
    let u = line.dir();
    let base = line.base_point();
    let (b, c, fb, fc) = match body.shape() {
        Shape::Polygon(v) => {
            let n = v.len();
            let mut lo = f64::NEG_INFINITY;
            let mut hi = f64::INFINITY;
            let (mut e_lo, mut e_hi) = (usize::MAX, usize::MAX);
            for i in 0..n {
                let a = v[i];
                let e = v[(i + 1) % n] - a;
                let num = e.cross(base - a);
                let den = e.cross(u);
                if den > 0.0 {
                    let s = -num / den;
                    if s > lo {
                        lo = s;
                        e_lo = i;
                    }
                } else if den < 0.0 {
                    let s = -num / den;
                    if s < hi {
                        hi = s;
                        e_hi = i;
                    }
                } else if num < 0.0 {
                    return Err(Error::NoIntersection);
                }
            }
            if e_lo == usize::MAX || e_hi == usize::MAX || hi - lo < 2.0 * eps {
                return Err(Error::NoIntersection);
            }
            let b = base + u * lo;
            let c = base + u * hi;
            (b, c, snap(v, b, e_lo, eps), snap(v, c, e_hi, eps))
        }
        Shape::Disc { center, radius } => {
            let d = line.offset - center.dot(line.normal());
            let half = (radius * radius - d * d).max(0.0).sqrt();
            if d.abs() >= *radius || half < eps {
                return Err(Error::NoIntersection);
            }
            let foot = *center + line.normal() * d;
            (
                foot - u * half,
                foot + u * half,
                BoundaryFeature::Smooth,
                BoundaryFeature::Smooth,
            )
        }
    };
    let theta = line.theta.radians();
    let cone_b = body.cone_at(b, fb);
    let cone_c = body.cone_at(c, fc);
    let (beta_l, beta_r) = beta_angles(theta, &cone_b)?;
    let (gamma_l, gamma_r) = gamma_angles(theta, &cone_c)?;
    Ok(Chord {
        line: *line,
        b,
        c,
        m: b.midpoint(c),
        h: 0.5 * b.dist(c),
        beta_l,
        beta_r,
        gamma_l,
        gamma_r,
        b_feature: fb,
        c_feature: fc,
    })
}

/// Treat a point on edge `edge` as a vertex when it is within `eps` of one
/// of the edge's endpoints.
fn snap(v: &[Point], p: Point, edge: usize, eps: f64) -> BoundaryFeature {
    let next = (edge + 1) % v.len();
    let d0 = p.dist(v[edge]);
    let d1 = p.dist(v[next]);
    if d0 <= eps && d0 <= d1 {
        BoundaryFeature::Vertex(edge)
    } else if d1 <= eps {
        BoundaryFeature::Vertex(next)
    } else {
        BoundaryFeature::Edge(edge)
    }
}

fn open_angle(a: f64) -> Result<f64> {
    let a = wrap_tau(a);
    if a > 0.0 && a < PI {
        Ok(a)
    } else {
        Err(Error::TangentChord)
    }
}

fn beta_angles(theta: f64, cone: &TangentCone) -> Result<(f64, f64)> {
    Ok((
        open_angle(theta - cone.dir_left.radians())?,
        open_angle(theta - cone.dir_right.radians())?,
    ))
}

fn gamma_angles(theta: f64, cone: &TangentCone) -> Result<(f64, f64)> {
    Ok((
        open_angle(cone.dir_left.radians() - theta)?,
        open_angle(cone.dir_right.radians() - theta)?,
    ))
}

fn cot(a: f64) -> f64 {
    let (s, c) = a.sin_cos();
    c / s.max(MIN_SIN)
}

impl Chord {
    pub fn theta(&self) -> Angle {
        self.line.theta
    }

    pub fn velocity(&self) -> VelocityInterval {
        let k = 0.5 * self.h;
        VelocityInterval {
            v_l: k * (cot(self.beta_l) + cot(self.gamma_l)),
            v_r: k * (cot(self.beta_r) + cot(self.gamma_r)),
        }
    }

    /// Whether either endpoint sits at a polygon vertex.
    pub fn is_singular(&self) -> bool {
        matches!(self.b_feature, BoundaryFeature::Vertex(_)) || matches!(self.c_feature, BoundaryFeature::Vertex(_))
    }
}

/// The chord of the alpha-section of direction `theta`.
pub fn section_chord(body: &ConvexBody, alpha: f64, theta: impl Into<Angle>) -> Result<Chord> {
    let line = alpha_section(body, alpha, theta)?;
    chord(body, &line)
}

pub fn velocity(body: &ConvexBody, alpha: f64, theta: impl Into<Angle>) -> Result<VelocityInterval> {
    Ok(section_chord(body, alpha, theta)?.velocity())
}
