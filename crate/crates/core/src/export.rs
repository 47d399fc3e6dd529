//! JSON reports and SVG plots.
//!
//! Every number in a JSON report is rounded to 12 significant digits, and
//! nothing time- or environment-dependent is written, so identical inputs
//! give byte-identical output.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::analysis::{BisectedChords, Witness};
use crate::bodies::{BodySpec, ConvexBody};
use crate::cores::{CoreKind, CoreResult, CriticalValues};
use crate::envelope::{EnvelopeCurve, FbzReport};
use crate::geom::Point;
use crate::oracle::McEstimate;

pub fn round12(x: f64) -> f64 {
    if x.is_finite() && x != 0.0 {
        format!("{x:.11e}").parse().unwrap_or(x)
    } else {
        x
    }
}

pub fn num(x: f64) -> Value {
    let r = round12(x);
    if r == 0.0 {
        // Drop the sign of negative zero.
        json!(0.0)
    } else {
        json!(r)
    }
}

pub fn point(p: Point) -> Value {
    json!([num(p.x), num(p.y)])
}

fn points(ps: &[Point]) -> Value {
    Value::Array(ps.iter().map(|p| point(*p)).collect())
}

pub fn body_json(body: &ConvexBody) -> Value {
    match BodySpec::from(body) {
        BodySpec::Polygon { vertices } => json!({
            "type": "polygon",
            "vertices": vertices.iter().map(|v| point(Point::from(*v))).collect::<Vec<_>>(),
        }),
        BodySpec::Disc { center, radius } => json!({
            "type": "disc",
            "center": point(Point::from(center)),
            "radius": num(radius),
        }),
    }
}

pub fn envelope_json(curve: &EnvelopeCurve, report: &FbzReport) -> Value {
    let samples: Vec<Value> = curve
        .samples
        .iter()
        .map(|s| {
            json!({
                "theta": num(s.theta.radians()),
                "m": point(s.m),
                "v_l": num(s.v.v_l),
                "v_r": num(s.v.v_r),
                "labels": s.labels,
            })
        })
        .collect();
    let intervals: Vec<Value> = report
        .intervals
        .iter()
        .map(|i| json!({"start": num(i.start), "end": num(i.end), "labels": i.labels}))
        .collect();
    json!({
        "alpha": num(curve.alpha),
        "samples": samples,
        "intervals": intervals,
        "cusps": points(&report.cusps),
    })
}

pub fn core_json(alpha: f64, core: &CoreResult) -> Value {
    let mut m = Map::new();
    m.insert("alpha".into(), num(alpha));
    m.insert("kind".into(), json!(core.kind_name()));
    match &core.kind {
        CoreKind::Region(b) => {
            m.insert("vertices".into(), points(b.vertices().unwrap_or_default()));
            m.insert("inradius_estimate".into(), num(core.inradius_estimate));
        }
        CoreKind::Point(p) => {
            m.insert("point".into(), point(*p));
        }
        CoreKind::Empty => {}
    }
    Value::Object(m)
}

/// A region core re-read as a polygon body description.
pub fn core_as_body(core: &CoreResult) -> Option<Value> {
    match &core.kind {
        CoreKind::Region(b) => Some(body_json(b)),
        _ => None,
    }
}

pub fn critical_json(cv: &CriticalValues) -> Value {
    json!({
        "alpha_B": num(cv.alpha_B),
        "alpha_Z": num(cv.alpha_Z),
        "alpha_K": num(cv.alpha_K),
        "T": cv.T.map(point).unwrap_or(Value::Null),
        "tol": num(cv.tol),
        "Z_nonempty_below": cv.z_nonempty_below,
        "Z_nonempty_above": cv.z_nonempty_above,
    })
}

pub fn bisected_json(g: Point, chords: &BisectedChords, quotient: f64) -> Value {
    let list = match chords {
        BisectedChords::Continuum => Value::String("continuum".into()),
        BisectedChords::Finite(v) => Value::Array(
            v.iter()
                .map(|c| json!({"theta": num(c.theta.radians()), "alpha": num(c.alpha)}))
                .collect(),
        ),
    };
    json!({"G": point(g), "bisected": list, "quotient": num(quotient)})
}

pub fn containment_json(alpha: f64, contained: bool, alpha1: f64) -> Value {
    json!({"alpha": num(alpha), "contained": contained, "alpha1": num(alpha1)})
}

pub fn witness_json(alpha: f64, w: &Witness) -> Value {
    match w {
        Witness::Disjoint { theta } => {
            json!({"alpha": num(alpha), "witness": "disjoint", "theta": num(theta.radians())})
        }
        Witness::Section { theta, beta } => json!({
            "alpha": num(alpha),
            "witness": "section",
            "theta": num(theta.radians()),
            "beta": num(*beta),
        }),
        Witness::Violation { theta, min_beta } => json!({
            "alpha": num(alpha),
            "witness": "violation",
            "theta": num(theta.radians()),
            "min_beta": num(*min_beta),
        }),
    }
}

pub fn oracle_json(e: &McEstimate) -> Value {
    json!({"estimate": num(e.estimate), "sigma": num(e.sigma)})
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

const VIEW: f64 = 1000.0;
const MARGIN: f64 = 0.05;

/// Fits the body's bounding box into the fixed viewBox, y pointing up.
struct Frame {
    lo: Point,
    scale: f64,
    offset: Point,
}

impl Frame {
    fn new(body: &ConvexBody) -> Self {
        let (lo, hi) = body.bbox();
        let (w, h) = (hi.x - lo.x, hi.y - lo.y);
        let inner = VIEW * (1.0 - 2.0 * MARGIN);
        let scale = inner / w.max(h);
        let offset = Point::new(
            VIEW * MARGIN + 0.5 * (inner - w * scale),
            VIEW * MARGIN + 0.5 * (inner - h * scale),
        );
        Frame { lo, scale, offset }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        let x = self.offset.x + (p.x - self.lo.x) * self.scale;
        let y = VIEW - (self.offset.y + (p.y - self.lo.y) * self.scale);
        (x, y)
    }

    fn path(&self, ps: &[Point]) -> String {
        let mut s = String::new();
        for (i, p) in ps.iter().enumerate() {
            let (x, y) = self.map(*p);
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{x:.3},{y:.3}");
        }
        s
    }
}

/// SVG with the body outline, optionally an envelope polyline, a core
/// polygon and cusp markers.
pub fn svg(body: &ConvexBody, curve: Option<&EnvelopeCurve>, core: Option<&CoreResult>, cusps: &[Point]) -> String {
    let f = Frame::new(body);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">"
    );
    s.push_str(
        "<style>.body{fill:none;stroke:#222;stroke-width:2}.envelope{fill:none;stroke:#1f77b4;stroke-width:1}\
.core{fill:#ff7f0e;fill-opacity:0.3;stroke:#ff7f0e;stroke-width:1}.cusp{fill:#d62728}</style>\n",
    );
    let _ = writeln!(s, "<polygon class=\"body\" points=\"{}\"/>", f.path(&body.outline(720)));
    if let Some(c) = core {
        match &c.kind {
            CoreKind::Region(b) => {
                let _ = writeln!(
                    s,
                    "<polygon class=\"core\" points=\"{}\"/>",
                    f.path(b.vertices().unwrap_or_default())
                );
            }
            CoreKind::Point(p) => {
                let (x, y) = f.map(*p);
                let _ = writeln!(s, "<circle class=\"core\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\"/>");
            }
            CoreKind::Empty => {}
        }
    }
    if let Some(c) = curve {
        let mut pts = c.points();
        if c.closed {
            if let Some(first) = pts.first().copied() {
                pts.push(first);
            }
        }
        let _ = writeln!(s, "<polyline class=\"envelope\" points=\"{}\"/>", f.path(&pts));
    }
    for p in cusps {
        let (x, y) = f.map(*p);
        let _ = writeln!(s, "<circle class=\"cusp\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\"/>");
    }
    s.push_str("</svg>\n");
    s
}
