//! One step of the outer (dual) billiard map around a convex table.
//!
//! The step reflects `x` through the point where the right tangent line
//! from `x` touches the table: the line through `x` that has the table on
//! its left and the tangency point ahead of `x`.

use std::f64::consts::TAU;

use crate::bodies::{ConvexBody, Shape};
use crate::cores::{CoreKind, CoreResult, TangentLineFamily};
use crate::envelope::bisect;
use crate::error::{Error, Result};
use crate::geom::{normal, unit, Point};

#[derive(Clone, Debug, PartialEq)]
pub enum BilliardTable {
    Point(Point),
    Disc {
        center: Point,
        radius: f64,
    },
    Polygon(Vec<Point>),
    /// A smooth table given by its tangent lines and their velocities.
    Tour(TangentLineFamily),
}

impl BilliardTable {
    pub fn from_body(body: &ConvexBody) -> Self {
        match body.shape() {
            Shape::Polygon(v) => BilliardTable::Polygon(v.clone()),
            Shape::Disc { center, radius } => BilliardTable::Disc {
                center: *center,
                radius: *radius,
            },
        }
    }

    /// The tour of a core when it has one, else its polygon or point.
    pub fn from_core(core: &CoreResult) -> Result<Self> {
        match (&core.kind, &core.tour) {
            (CoreKind::Region(_), Some(t)) if t.entries().iter().all(|e| e.velocity.is_some()) => {
                Ok(BilliardTable::Tour(t.clone()))
            }
            (CoreKind::Region(b), _) => Ok(BilliardTable::from_body(b)),
            (CoreKind::Point(p), _) => Ok(BilliardTable::Point(*p)),
            (CoreKind::Empty, _) => Err(Error::InvalidArgument("empty billiard table".into())),
        }
    }
}

pub fn outer_billiard_step(table: &BilliardTable, x: Point) -> Result<Point> {
    match table {
        BilliardTable::Point(t) => {
            if x == *t {
                Err(Error::InsideTable)
            } else {
                Ok(*t * 2.0 - x)
            }
        }
        BilliardTable::Disc { center, radius } => {
            let w = x - *center;
            let d = w.norm();
            if d <= *radius {
                return Err(Error::InsideTable);
            }
            // The two tangency points; keep the one with the center on the left.
            let phi = (radius / d).acos();
            let psi = w.angle().radians();
            let p = [psi + phi, psi - phi]
                .into_iter()
                .map(|a| *center + unit(a) * *radius)
                .find(|p| (*p - x).cross(*center - x) > 0.0)
                .expect("one tangency point has the center on its left");
            Ok(p * 2.0 - x)
        }
        BilliardTable::Polygon(v) => {
            let n = v.len();
            let inside = (0..n).all(|i| (v[(i + 1) % n] - v[i]).cross(x - v[i]) >= 0.0);
            if inside {
                return Err(Error::InsideTable);
            }
            let mut best = 0;
            for j in 1..n {
                if (v[best] - x).cross(v[j] - x) < 0.0 {
                    best = j;
                }
            }
            Ok(v[best] * 2.0 - x)
        }
        BilliardTable::Tour(family) => tour_step(family, x),
    }
}

/// Position on the tour between two entries, integrating a velocity that
/// varies linearly from `v_r` at the first entry to `v_l` at the second and
/// blended so that both entry points are hit exactly.
fn tour_point(theta0: f64, m0: Point, a: f64, theta1: f64, m1: Point, b: f64, theta: f64) -> Point {
    let dt = theta1 - theta0;
    let s = (b - a) / dt;
    let raw = |t: f64| m0 + (normal(theta0) - normal(t)) * a + (unit(t) - unit(theta0) - normal(t) * (t - theta0)) * s;
    let miss = m1 - raw(theta1);
    raw(theta) + miss * ((theta - theta0) / dt)
}

fn tour_step(family: &TangentLineFamily, x: Point) -> Result<Point> {
    let e = family.entries();
    let n = e.len();
    if n < 3 {
        return Err(Error::InsufficientFamily);
    }
    let g = |p: Point, t: f64| (x - p).dot(normal(t));
    let mut found: Option<(usize, f64)> = None;
    for k in 0..n {
        let j = (k + 1) % n;
        let t0 = e[k].theta.radians();
        let mut t1 = e[j].theta.radians();
        if j == 0 {
            t1 += TAU;
        }
        let g0 = g(e[k].point, t0);
        let g1 = g(e[j].point, t1);
        let ahead = (x - e[k].point).dot(unit(t0)) < 0.0;
        if g0 <= 0.0 && g1 > 0.0 && ahead {
            let score = g0.abs().min(g1.abs());
            if found.is_none_or(|(_, s)| score < s) {
                found = Some((k, score));
            }
        }
    }
    let Some((k, _)) = found else {
        return Err(Error::InsideTable);
    };
    let j = (k + 1) % n;
    let t0 = e[k].theta.radians();
    let t1 = if j == 0 {
        e[j].theta.radians() + TAU
    } else {
        e[j].theta.radians()
    };
    let a = e[k].velocity.map_or(0.0, |v| v.v_r);
    let b = e[j].velocity.map_or(0.0, |v| v.v_l);
    let at = |t: f64| tour_point(t0, e[k].point, a, t1, e[j].point, b, t);
    let t = bisect(|t| g(at(t), t), t0, t1);
    Ok(at(t) * 2.0 - x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::make_polygon;
    use crate::cores::alpha_core;
    use crate::sections::section_chord;

    #[test]
    fn point_table_reflects() {
        let t = BilliardTable::Point(Point::new(1.0, 2.0));
        let y = outer_billiard_step(&t, Point::new(3.0, 3.0)).unwrap();
        assert_eq!(y, Point::new(-1.0, 1.0));
        assert_eq!(outer_billiard_step(&t, y).unwrap(), Point::new(3.0, 3.0));
    }

    #[test]
    fn disc_table_period_three() {
        let t = BilliardTable::Disc {
            center: Point::ORIGIN,
            radius: 0.5,
        };
        let x0 = Point::new(1.0, 0.0);
        let x1 = outer_billiard_step(&t, x0).unwrap();
        assert!((x1.norm() - 1.0).abs() < 1e-14);
        assert!(
            (x0.angle().ccw_to(x1.angle()) - 2.0 * TAU / 3.0).abs() < 1e-12
                || (x0.angle().ccw_to(x1.angle()) - TAU / 3.0).abs() < 1e-12
        );
        let x3 = outer_billiard_step(&t, outer_billiard_step(&t, x1).unwrap()).unwrap();
        assert!(x3.dist(x0) < 1e-12);
        assert_eq!(outer_billiard_step(&t, Point::new(0.1, 0.1)), Err(Error::InsideTable));
    }

    #[test]
    fn polygon_table_supporting_vertex() {
        let sq = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let t = BilliardTable::Polygon(sq);
        // From below, the right tangent passes through (1, 0).
        let y = outer_billiard_step(&t, Point::new(0.5, -1.0)).unwrap();
        assert_eq!(y, Point::new(1.5, 1.0));
        assert_eq!(outer_billiard_step(&t, Point::new(0.5, 0.5)), Err(Error::InsideTable));
    }

    #[test]
    fn square_core_maps_b_to_c() {
        let k = make_polygon(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        let core = alpha_core(&k, 0.25, 1024).unwrap();
        let table = BilliardTable::from_core(&core).unwrap();
        for i in 0..40 {
            let ch = section_chord(&k, 0.25, 0.05 + i as f64 * 0.157).unwrap();
            let y = outer_billiard_step(&table, ch.b).unwrap();
            assert!(y.dist(ch.c) < 1e-6, "theta {}: {} vs {}", ch.line.theta, y, ch.c);
        }
    }
}
