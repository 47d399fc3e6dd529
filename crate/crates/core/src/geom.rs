//! Plane primitives: points, angles on the circle, oriented lines.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3d cross product; positive when `o` is
    /// counterclockwise from `self`.
    #[inline]
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    #[inline]
    pub fn midpoint(self, o: Point) -> Point {
        Point::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }

    #[inline]
    pub fn lerp(self, o: Point, s: f64) -> Point {
        Point::new(self.x + s * (o.x - self.x), self.y + s * (o.y - self.y))
    }

    /// Direction angle of the vector, in [0, 2pi).
    pub fn angle(self) -> Angle {
        Angle::new(self.y.atan2(self.x))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.x, self.y]
    }
}

impl From<[f64; 2]> for Point {
    fn from(a: [f64; 2]) -> Self {
        Point::new(a[0], a[1])
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point {
    #[inline]
    fn add_assign(&mut self, o: Point) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    #[inline]
    fn mul(self, p: Point) -> Point {
        p * self
    }
}

impl Div<f64> for Point {
    type Output = Point;
    #[inline]
    fn div(self, s: f64) -> Point {
        Point::new(self.x / s, self.y / s)
    }
}

/// Unit vector u(theta) = (cos theta, sin theta).
#[inline]
pub fn unit(theta: f64) -> Point {
    let (s, c) = theta.sin_cos();
    Point::new(c, s)
}

/// u'(theta) = (-sin theta, cos theta), the left normal of u(theta).
#[inline]
pub fn normal(theta: f64) -> Point {
    let (s, c) = theta.sin_cos();
    Point::new(-s, c)
}

/// An angle reduced to its canonical representative in [0, 2pi).
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub fn new(theta: f64) -> Self {
        Angle(wrap_tau(theta))
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn dir(self) -> Point {
        unit(self.0)
    }

    #[inline]
    pub fn normal(self) -> Point {
        normal(self.0)
    }

    pub fn opposite(self) -> Angle {
        Angle::new(self.0 + PI)
    }

    pub fn offset(self, delta: f64) -> Angle {
        Angle::new(self.0 + delta)
    }

    /// Counterclockwise sweep from `self` to `to`, in [0, 2pi).
    pub fn ccw_to(self, to: Angle) -> f64 {
        wrap_tau(to.0 - self.0)
    }
}

impl From<f64> for Angle {
    fn from(theta: f64) -> Self {
        Angle::new(theta)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Reduce to [0, 2pi).
pub fn wrap_tau(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Oriented line of direction u(theta): the set {x : <x, u'(theta)> = offset}.
///
/// The left closed half-plane {<x, u'> >= offset} is the "plus" side, the
/// right closed half-plane {<x, u'> <= offset} the "minus" side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrientedLine {
    pub theta: Angle,
    pub offset: f64,
}

impl OrientedLine {
    pub fn new(theta: impl Into<Angle>, offset: f64) -> Self {
        OrientedLine {
            theta: theta.into(),
            offset,
        }
    }

    /// Line of direction `theta` through `p`.
    pub fn through(p: Point, theta: impl Into<Angle>) -> Self {
        let theta = theta.into();
        OrientedLine {
            theta,
            offset: p.dot(theta.normal()),
        }
    }

    /// Line through `from` and `to`, oriented from `from` towards `to`.
    pub fn from_points(from: Point, to: Point) -> Self {
        Self::through(from, (to - from).angle())
    }

    #[inline]
    pub fn dir(&self) -> Point {
        self.theta.dir()
    }

    #[inline]
    pub fn normal(&self) -> Point {
        self.theta.normal()
    }

    /// Signed distance, positive on the left (plus) side.
    #[inline]
    pub fn signed_dist(&self, p: Point) -> f64 {
        p.dot(self.normal()) - self.offset
    }

    /// Foot of the perpendicular from the origin.
    pub fn base_point(&self) -> Point {
        self.normal() * self.offset
    }

    /// Same geometric line with the opposite orientation.
    pub fn reversed(&self) -> Self {
        OrientedLine {
            theta: self.theta.opposite(),
            offset: -self.offset,
        }
    }
}
