//! The envelope of the alpha-sections and the F/B/Z classification of
//! directions.

use std::f64::consts::{PI, TAU};
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bodies::{ConvexBody, Slicer};
use crate::error::{Error, Result};
use crate::geom::{Angle, Point};
use crate::sections::{section_chord, Chord, VelocityInterval};

/// Relative velocity tolerance for sign classification, scaled by the
/// diameter.
pub const EPS_V_REL: f64 = 1e-9;

/// Maximum number of halvings of the base grid step.
pub const MAX_REFINE_DEPTH: u32 = 20;

/// Angular resolution for cusp localization.
pub const CUSP_THETA_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    F,
    B,
    Z,
}

impl Label {
    fn bit(self) -> u8 {
        match self {
            Label::F => 1,
            Label::B => 2,
            Label::Z => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::F => "F",
            Label::B => "B",
            Label::Z => "Z",
        }
    }
}

/// A subset of `{F, B, Z}`; singular directions can carry several labels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LabelSet(u8);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    pub fn only(l: Label) -> Self {
        LabelSet(l.bit())
    }

    /// Labels of a velocity interval with tolerance `eps_v`.
    pub fn from_velocity(v: &VelocityInterval, eps_v: f64) -> Self {
        let (lo, hi) = (v.min(), v.max());
        let mut s = LabelSet::EMPTY;
        if hi > eps_v {
            s.insert(Label::F);
        }
        if lo < -eps_v {
            s.insert(Label::B);
        }
        if lo <= eps_v && hi >= -eps_v {
            s.insert(Label::Z);
        }
        s
    }

    pub fn insert(&mut self, l: Label) {
        self.0 |= l.bit();
    }

    pub fn contains(&self, l: Label) -> bool {
        self.0 & l.bit() != 0
    }

    pub fn is_only(&self, l: Label) -> bool {
        self.0 == l.bit()
    }

    pub fn labels(&self) -> Vec<Label> {
        [Label::F, Label::B, Label::Z]
            .into_iter()
            .filter(|l| self.contains(*l))
            .collect()
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.labels().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(l.as_str())?;
        }
        f.write_str("}")
    }
}

impl Serialize for LabelSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.labels().into_iter().map(Label::as_str))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopeSample {
    pub theta: Angle,
    pub m: Point,
    pub v: VelocityInterval,
    pub labels: LabelSet,
    pub chord: Chord,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeCurve {
    pub alpha: f64,
    /// Ordered by increasing theta over [0, 2pi).
    pub samples: Vec<EnvelopeSample>,
    pub closed: bool,
}

impl EnvelopeCurve {
    pub fn points(&self) -> Vec<Point> {
        self.samples.iter().map(|s| s.m).collect()
    }

    /// Distance from `p` to the closed polyline through the samples.
    pub fn distance_to(&self, p: Point) -> f64 {
        let n = self.samples.len();
        (0..n)
            .map(|i| crate::bodies::segment_distance(p, self.samples[i].m, self.samples[(i + 1) % n].m))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn has_label(&self, l: Label) -> bool {
        self.samples.iter().any(|s| s.labels.contains(l))
    }

    pub fn max_speed(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.v.v_l.abs().max(s.v.v_r.abs()))
            .fold(0.0, f64::max)
    }
}

/// An arc `[start, end)` of directions with a constant label set. `start` is
/// in [0, 2pi) and `end > start`, possibly beyond 2pi for the arc that wraps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FbzInterval {
    pub start: f64,
    pub end: f64,
    pub labels: LabelSet,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FbzReport {
    pub alpha: f64,
    pub intervals: Vec<FbzInterval>,
    pub cusps: Vec<Point>,
}

impl FbzReport {
    /// Total angular measure of the directions whose label set contains `l`.
    pub fn measure(&self, l: Label) -> f64 {
        self.intervals
            .iter()
            .filter(|i| i.labels.contains(l))
            .map(|i| i.end - i.start)
            .sum()
    }
}

pub fn eps_v(body: &ConvexBody) -> f64 {
    EPS_V_REL * body.diameter()
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

fn sample_at(body: &ConvexBody, alpha: f64, theta: f64, eps: f64) -> Result<EnvelopeSample> {
    let chord = section_chord(body, alpha, theta)?;
    let v = chord.velocity();
    Ok(EnvelopeSample {
        theta: chord.line.theta,
        m: chord.m,
        v,
        labels: LabelSet::from_velocity(&v, eps),
        chord,
    })
}

pub fn classify_direction(body: &ConvexBody, alpha: f64, theta: impl Into<Angle>) -> Result<LabelSet> {
    check_alpha(alpha)?;
    Ok(sample_at(body, alpha, theta.into().radians(), eps_v(body))?.labels)
}

/// Bisection for a root of a monotone function on `[lo, hi]`, run until the
/// bracket stops shrinking. `f(lo)` and `f(hi)` must have opposite signs.
pub(crate) fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    let lo_neg = f_lo < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let r = f(mid);
        if r == 0.0 {
            return mid;
        }
        if (r < 0.0) == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Directions in [0, 2pi) at which the alpha-section passes through a
/// polygon vertex, either as its first endpoint `b` or as its last
/// endpoint `c`. Empty for discs.
pub fn vertex_passages(body: &ConvexBody, alpha: f64) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    let Some(v) = body.vertices() else {
        return Ok(Vec::new());
    };
    let n = v.len();
    let target = alpha * body.area();
    let right_area = |p: Point, phi: f64| {
        let theta = Angle::new(phi);
        Slicer::new(body, theta).area_right(p.dot(theta.normal())) - target
    };
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let p = v[i];
        let dir_in = (p - v[(i + n - 1) % n]).angle();
        let dir_out = (v[(i + 1) % n] - p).angle();
        let turn = dir_in.ccw_to(dir_out);
        let a = dir_out.radians();
        // p = b: the area on the right grows from 0 to |K| on this range.
        out.push(Angle::new(bisect(|phi| right_area(p, phi), a, a + PI - turn)).radians());
        // p = c: the area shrinks from |K| to 0.
        out.push(Angle::new(bisect(|phi| right_area(p, phi), a - PI, a - turn)).radians());
    }
    Ok(out)
}

/// Sample the envelope on `n` uniform directions plus every vertex passage,
/// then refine adaptively: an adjacent pair is bisected when the label sets
/// differ or when the midpoint moved more than twice the displacement the
/// velocities predict, down to `MAX_REFINE_DEPTH` halvings of the base step.
pub fn sample_envelope(body: &ConvexBody, alpha: f64, n: usize) -> Result<EnvelopeCurve> {
    check_alpha(alpha)?;
    if n < 16 {
        return Err(Error::InvalidArgument(format!("need at least 16 samples, got {n}")));
    }
    let eps = eps_v(body);
    let eps_m = 1e-12 * body.diameter();
    let mut thetas: Vec<f64> = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
    thetas.extend(vertex_passages(body, alpha)?);
    thetas.sort_by(f64::total_cmp);
    thetas.dedup_by(|a, b| (*a - *b).abs() < 1e-15);

    let mut samples: Vec<EnvelopeSample> = thetas
        .par_iter()
        .map(|&t| sample_at(body, alpha, t, eps))
        .collect::<Result<_>>()?;

    let min_step = TAU / n as f64 / f64::from(1u32 << MAX_REFINE_DEPTH);
    loop {
        let len = samples.len();
        let mut fresh = Vec::new();
        for i in 0..len {
            let a = &samples[i];
            let b = &samples[(i + 1) % len];
            let tb = if i + 1 == len {
                b.theta.radians() + TAU
            } else {
                b.theta.radians()
            };
            let dt = tb - a.theta.radians();
            if dt < 2.0 * min_step {
                continue;
            }
            let speed = a.v.v_l.abs().max(a.v.v_r.abs()).max(b.v.v_l.abs()).max(b.v.v_r.abs());
            if a.labels != b.labels || a.m.dist(b.m) > 2.0 * speed * dt + eps_m {
                fresh.push(a.theta.radians() + 0.5 * dt);
            }
        }
        if fresh.is_empty() {
            break;
        }
        let extra: Vec<EnvelopeSample> = fresh
            .par_iter()
            .map(|&t| sample_at(body, alpha, t, eps))
            .collect::<Result<_>>()?;
        samples.extend(extra);
        samples.sort_by(|a, b| a.theta.radians().total_cmp(&b.theta.radians()));
        samples.dedup_by(|a, b| a.theta == b.theta);
    }
    Ok(EnvelopeCurve {
        alpha,
        samples,
        closed: true,
    })
}

pub fn fbz_partition(body: &ConvexBody, alpha: f64, n: usize) -> Result<FbzReport> {
    let curve = sample_envelope(body, alpha, n)?;
    fbz_from_curve(body, &curve)
}

struct Run {
    labels: LabelSet,
    first: usize,
    last: usize,
}

/// Maximal runs of equal label sets, cyclically; a run never straddles the
/// start of the list unless all samples share one label set.
fn label_runs(samples: &[EnvelopeSample]) -> Vec<Run> {
    let n = samples.len();
    let starts: Vec<usize> = (0..n)
        .filter(|&i| samples[i].labels != samples[(i + n - 1) % n].labels)
        .collect();
    if starts.is_empty() {
        return vec![Run {
            labels: samples[0].labels,
            first: 0,
            last: n - 1,
        }];
    }
    let k = starts.len();
    (0..k)
        .map(|j| {
            let first = starts[j];
            let last = (starts[(j + 1) % k] + n - 1) % n;
            Run {
                labels: samples[first].labels,
                first,
                last,
            }
        })
        .collect()
}

/// Partition of the circle of directions and the cusps of the envelope.
pub fn fbz_from_curve(body: &ConvexBody, curve: &EnvelopeCurve) -> Result<FbzReport> {
    let s = &curve.samples;
    let n = s.len();
    let theta = |i: usize| s[i % n].theta.radians();
    let runs = label_runs(s);

    let intervals = if runs.len() == 1 {
        vec![FbzInterval {
            start: 0.0,
            end: TAU,
            labels: runs[0].labels,
        }]
    } else {
        let boundary = |first: usize| {
            let prev = (first + n - 1) % n;
            let mut t0 = theta(prev);
            if prev > first {
                t0 -= TAU;
            }
            0.5 * (t0 + theta(first))
        };
        let mut out: Vec<FbzInterval> = runs
            .iter()
            .enumerate()
            .map(|(j, r)| {
                let start = boundary(r.first);
                let mut end = boundary(runs[(j + 1) % runs.len()].first);
                while end <= start {
                    end += TAU;
                }
                let shift = start.div_euclid(TAU) * TAU;
                FbzInterval {
                    start: start - shift,
                    end: end - shift,
                    labels: r.labels,
                }
            })
            .collect();
        out.sort_by(|a, b| a.start.total_cmp(&b.start));
        out
    };

    let mut cusps: Vec<Point> = Vec::new();
    let k = runs.len();
    let pure = |r: &Run| r.labels.is_only(Label::F) || r.labels.is_only(Label::B);
    if k > 1 {
        for j in 0..k {
            if !pure(&runs[j]) {
                continue;
            }
            let mut step = 1;
            while step < k && !pure(&runs[(j + step) % k]) {
                step += 1;
            }
            let next = &runs[(j + step) % k];
            if step >= k || next.labels == runs[j].labels {
                continue;
            }
            let p = if step == 1 {
                let ta = theta(runs[j].last);
                let mut tb = theta(next.first);
                if tb <= ta {
                    tb += TAU;
                }
                locate_sign_change(body, curve.alpha, ta, tb)?
            } else {
                let mut best: Option<(bool, f64, Point)> = None;
                for r in 1..step {
                    let run = &runs[(j + r) % k];
                    let mut i = run.first;
                    loop {
                        let smp = &s[i];
                        let key = (!smp.labels.contains(Label::Z), (smp.v.v_l + smp.v.v_r).abs());
                        if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                            best = Some((key.0, key.1, smp.m));
                        }
                        if i == run.last {
                            break;
                        }
                        i = (i + 1) % n;
                    }
                }
                best.expect("cluster is non-empty").2
            };
            cusps.push(p);
        }
    }
    let tol = 1e-8 * body.diameter();
    let mut unique: Vec<Point> = Vec::new();
    for p in cusps {
        if unique.iter().all(|q| q.dist(p) > tol) {
            unique.push(p);
        }
    }
    Ok(FbzReport {
        alpha: curve.alpha,
        intervals,
        cusps: unique,
    })
}

/// Envelope point where the (regular) velocity changes sign between `ta`
/// and `tb`, located to `CUSP_THETA_TOL`.
fn locate_sign_change(body: &ConvexBody, alpha: f64, mut ta: f64, mut tb: f64) -> Result<Point> {
    let mid_v = |t: f64| -> Result<f64> {
        let v = section_chord(body, alpha, t)?.velocity();
        Ok(v.v_l + v.v_r)
    };
    let sa = mid_v(ta)? > 0.0;
    while tb - ta > CUSP_THETA_TOL {
        let mid = 0.5 * (ta + tb);
        if (mid_v(mid)? > 0.0) == sa {
            ta = mid;
        } else {
            tb = mid;
        }
    }
    Ok(section_chord(body, alpha, 0.5 * (ta + tb))?.m)
}
