//! Integral lines of three-dimensional vector fields at fixed time.
//!
//! Lines are integrated with the Dormand–Prince 5(4) pair. By default the
//! field is normalised to unit length so that the line parameter is arc
//! length. Closure is detected by minimising the distance to the seed over
//! each step that passes near it, using sub-steps of the same integrator.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

pub type Vec3 = [f64; 3];

/// A vector field at fixed time. Errors and non-finite values stop the trace.
pub type VectorField<'a> = dyn Fn(Vec3) -> Result<Vec3> + Sync + 'a;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceOptions {
    pub rtol: f64,
    pub atol: f64,
    pub initial_step: f64,
    pub max_step: f64,
    /// Upper bound on the line parameter (arc length when `arc_length` is set).
    pub max_length: f64,
    pub max_steps: usize,
    pub arc_length: bool,
    /// Distance to the seed below which the line counts as closed; `0` disables closure detection.
    pub closure_eps: f64,
    /// Arc length to travel before closure is tested; defaults to ten initial steps.
    pub min_closure_length: Option<f64>,
    /// Half edge of an origin-centred bounding cube.
    pub bounds: Option<f64>,
    /// Field magnitude below which the line is declared stagnant.
    pub stagnation_floor: f64,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-9,
            atol: 1e-12,
            initial_step: 1e-3,
            max_step: 0.05,
            max_length: 100.0,
            max_steps: 200_000,
            arc_length: true,
            closure_eps: 1e-4,
            min_closure_length: None,
            bounds: None,
            stagnation_floor: 1e-14,
        }
    }
}

impl TraceOptions {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("rtol", self.rtol),
            ("initial_step", self.initial_step),
            ("max_step", self.max_step),
            ("max_length", self.max_length),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.atol >= 0.0) || !(self.closure_eps >= 0.0) || !(self.stagnation_floor >= 0.0) {
            return Err(Error::InvalidParameter("tolerances must be non-negative".into()));
        }
        if let Some(b) = self.bounds {
            if !(b > 0.0) {
                return Err(Error::InvalidParameter(format!("bounds must be positive, got {b}")));
            }
        }
        Ok(())
    }

    fn closure_length(&self) -> f64 {
        self.min_closure_length.unwrap_or(10.0 * self.initial_step)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    MaxLength,
    MaxSteps,
    Closed,
    Stagnation,
    LeftBounds,
    NonFinite,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::MaxLength => "max-length",
            StopReason::MaxSteps => "max-steps",
            StopReason::Closed => "closed",
            StopReason::Stagnation => "stagnation",
            StopReason::LeftBounds => "left-bounds",
            StopReason::NonFinite => "non-finite",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Closure {
    pub closed: bool,
    /// Line parameter at the closest return to the seed.
    pub period_length: f64,
    /// Distance to the seed at that point.
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldLine {
    pub seed: Vec3,
    pub lambda: Vec<f64>,
    pub points: Vec<Vec3>,
    pub stop: StopReason,
    pub closure: Option<Closure>,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub evaluations: usize,
}

impl FieldLine {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Final value of the line parameter.
    pub fn length(&self) -> f64 {
        self.lambda.last().copied().unwrap_or(0.0)
    }

    pub fn is_closed(&self) -> bool {
        self.closure.is_some_and(|c| c.closed)
    }

    /// Largest absolute coordinate along the line.
    pub fn max_extent(&self) -> f64 {
        self.points.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn add(a: Vec3, b: Vec3, k: f64) -> Vec3 {
    [a[0] + k * b[0], a[1] + k * b[1], a[2] + k * b[2]]
}

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn dist(a: Vec3, b: Vec3) -> f64 {
    norm(sub(a, b))
}

enum Eval {
    Ok(Vec3),
    Stagnant,
    Bad,
}

struct Rhs<'a, 'f> {
    field: &'a VectorField<'f>,
    arc_length: bool,
    floor: f64,
    count: std::cell::Cell<usize>,
}

impl Rhs<'_, '_> {
    fn eval(&self, r: Vec3) -> Eval {
        self.count.set(self.count.get() + 1);
        let v = match (self.field)(r) {
            Ok(v) if v.iter().all(|c| c.is_finite()) => v,
            _ => return Eval::Bad,
        };
        let n = norm(v);
        if n <= self.floor {
            return Eval::Stagnant;
        }
        Eval::Ok(if self.arc_length { v.map(|c| c / n) } else { v })
    }
}

// Dormand–Prince 5(4) tableau.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

struct Step {
    y: Vec3,
    k_end: Vec3,
    err: f64,
}

/// One Dormand–Prince step from `y` with slope `k0`; a stage that hits a bad value is returned as `Err`.
fn dp_step(rhs: &Rhs<'_, '_>, y: Vec3, k0: Vec3, h: f64, opts: &TraceOptions) -> std::result::Result<Step, Eval> {
    let mut k = [[0.0; 3]; 7];
    k[0] = k0;
    for s in 1..7 {
        let mut ys = y;
        for (j, kj) in k.iter().enumerate().take(s) {
            ys = add(ys, *kj, h * A[s][j]);
        }
        match rhs.eval(ys) {
            Eval::Ok(v) => k[s] = v,
            other => return Err(other),
        }
    }
    // Row 7 of A is the fifth-order solution, so k[6] is the slope at the new point.
    let mut ynew = y;
    for (j, kj) in k.iter().enumerate().take(6) {
        ynew = add(ynew, *kj, h * A[6][j]);
    }
    let mut err: f64 = 0.0;
    for i in 0..3 {
        let e: f64 = (0..7).map(|s| E[s] * k[s][i]).sum::<f64>() * h;
        let sc = opts.atol + opts.rtol * y[i].abs().max(ynew[i].abs()).max(1.0);
        err = err.max((e / sc).abs());
    }
    Ok(Step { y: ynew, k_end: k[6], err })
}

fn distance_to_segment(p: Vec3, a: Vec3, b: Vec3) -> f64 {
    let ab = sub(b, a);
    let l2 = dot(ab, ab);
    if l2 == 0.0 {
        return dist(p, a);
    }
    let s = (dot(sub(p, a), ab) / l2).clamp(0.0, 1.0);
    dist(p, add(a, ab, s))
}

/// Closest approach to `target` over a step of size `h` from `y`, by golden
/// section on sub-step length. Returns `(sub-step, point, distance)`.
fn closest_approach(rhs: &Rhs<'_, '_>, y: Vec3, k0: Vec3, h: f64, target: Vec3, opts: &TraceOptions) -> Option<(f64, Vec3, f64)> {
    let point = |s: f64| -> Option<Vec3> {
        if s == 0.0 {
            return Some(y);
        }
        dp_step(rhs, y, k0, s, opts).ok().map(|st| st.y)
    };
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (0.0, h);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = dist(point(x1)?, target);
    let mut f2 = dist(point(x2)?, target);
    for _ in 0..80 {
        if (hi - lo).abs() <= 1e-14 * h.abs().max(1.0) {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = dist(point(x1)?, target);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = dist(point(x2)?, target);
        }
    }
    let s = 0.5 * (lo + hi);
    let p = point(s)?;
    Some((s, p, dist(p, target)))
}

/// Integral line of `field` through `seed`.
pub fn trace(field: &VectorField<'_>, seed: Vec3, opts: &TraceOptions) -> Result<FieldLine> {
    opts.validate()?;
    if !seed.iter().all(|c| c.is_finite()) {
        return Err(Error::Domain("seed must be finite".into()));
    }
    let rhs = Rhs { field, arc_length: opts.arc_length, floor: opts.stagnation_floor, count: 0.into() };
    let mut line = FieldLine {
        seed,
        lambda: vec![0.0],
        points: vec![seed],
        stop: StopReason::MaxSteps,
        closure: None,
        accepted_steps: 0,
        rejected_steps: 0,
        evaluations: 0,
    };
    let finish = |mut line: FieldLine, stop: StopReason, rhs: &Rhs<'_, '_>| {
        line.stop = stop;
        line.evaluations = rhs.count.get();
        line
    };
    let outside = |p: Vec3| opts.bounds.is_some_and(|b| p.iter().any(|c| c.abs() > b));
    if outside(seed) {
        return Ok(finish(line, StopReason::LeftBounds, &rhs));
    }
    let mut k = match rhs.eval(seed) {
        Eval::Ok(v) => v,
        Eval::Stagnant => return Ok(finish(line, StopReason::Stagnation, &rhs)),
        Eval::Bad => return Ok(finish(line, StopReason::NonFinite, &rhs)),
    };
    let mut y = seed;
    let mut lam = 0.0;
    let mut h = opts.initial_step.min(opts.max_step);
    let mut best_gap = f64::INFINITY;
    let mut best_lambda = 0.0;
    let closure_after = opts.closure_length();
    // returns only count once the line has been further than `closure_after` from the seed
    let mut departed = false;
    while line.accepted_steps < opts.max_steps {
        let remaining = opts.max_length - lam;
        if remaining <= 1e-14 * opts.max_length {
            return Ok(finish(line, StopReason::MaxLength, &rhs));
        }
        h = h.min(remaining).min(opts.max_step);
        let step = match dp_step(&rhs, y, k, h, opts) {
            Ok(st) => st,
            Err(_) if h > 1e-12 => {
                // a stage hit a bad point; shrink before giving up
                h *= 0.25;
                line.rejected_steps += 1;
                continue;
            }
            Err(Eval::Stagnant) => return Ok(finish(line, StopReason::Stagnation, &rhs)),
            _ => return Ok(finish(line, StopReason::NonFinite, &rhs)),
        };
        if step.err > 1.0 {
            line.rejected_steps += 1;
            h *= (0.9 * step.err.powf(-0.2)).max(0.2);
            continue;
        }
        let y_new = step.y;
        // closure test on the step just taken
        if opts.closure_eps > 0.0 && departed {
            let chord = distance_to_segment(seed, y, y_new);
            let approaching = (0..3).map(|i| (y[i] - seed[i]) * k[i]).sum::<f64>() < 0.0;
            if approaching && chord <= dist(y, y_new) + opts.closure_eps {
                if let Some((s, p, gap)) = closest_approach(&rhs, y, k, h, seed, opts) {
                    if lam + s >= closure_after && gap < best_gap {
                        best_gap = gap;
                        best_lambda = lam + s;
                    }
                    if gap <= opts.closure_eps && lam + s >= closure_after {
                        line.accepted_steps += 1;
                        line.lambda.push(lam + s);
                        line.points.push(p);
                        line.closure = Some(Closure { closed: true, period_length: lam + s, gap });
                        return Ok(finish(line, StopReason::Closed, &rhs));
                    }
                }
            }
        }
        line.accepted_steps += 1;
        lam += h;
        y = y_new;
        k = step.k_end;
        line.lambda.push(lam);
        line.points.push(y);
        departed = departed || dist(y, seed) > closure_after;
        if outside(y) {
            return Ok(finish(line, StopReason::LeftBounds, &rhs));
        }
        if !opts.arc_length && norm(k) <= opts.stagnation_floor {
            return Ok(finish(line, StopReason::Stagnation, &rhs));
        }
        let grow = if step.err > 0.0 { (0.9 * step.err.powf(-0.2)).min(5.0) } else { 5.0 };
        h *= grow.max(0.2);
        if best_gap.is_finite() {
            line.closure = Some(Closure { closed: false, period_length: best_lambda, gap: best_gap });
        }
    }
    Ok(finish(line, StopReason::MaxSteps, &rhs))
}

/// First return of a traced polyline to within `eps` of its seed after
/// travelling at least `min_length`, using the polyline vertices and chords.
pub fn closure_detect(line: &FieldLine, eps: f64, min_length: f64) -> Closure {
    if line.is_closed() {
        if let Some(c) = line.closure {
            if c.gap <= eps {
                return c;
            }
        }
    }
    let seed = line.seed;
    let mut best = Closure { closed: false, period_length: 0.0, gap: f64::INFINITY };
    for i in 1..line.points.len() {
        if line.lambda[i] < min_length {
            continue;
        }
        let (a, b) = (line.points[i - 1], line.points[i]);
        let ab = sub(b, a);
        let l2 = dot(ab, ab);
        let s = if l2 > 0.0 { (dot(sub(seed, a), ab) / l2).clamp(0.0, 1.0) } else { 0.0 };
        let gap = dist(seed, add(a, ab, s));
        let lam = line.lambda[i - 1] + s * (line.lambda[i] - line.lambda[i - 1]);
        if gap <= eps {
            return Closure { closed: true, period_length: lam, gap };
        }
        if gap < best.gap {
            best = Closure { closed: false, period_length: lam, gap };
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Linking {
    /// Gauss integral before rounding.
    pub value: f64,
    pub rounded: i64,
    /// Smallest vertex distance between the curves.
    pub min_distance: f64,
    /// Set when the curves come closer than the longest segment.
    pub close_approach: bool,
}

/// Signed solid-angle contribution of a segment pair to the Gauss integral.
fn segment_pair(p1: Vec3, p2: Vec3, p3: Vec3, p4: Vec3) -> f64 {
    let r13 = sub(p3, p1);
    let r14 = sub(p4, p1);
    let r23 = sub(p3, p2);
    let r24 = sub(p4, p2);
    let unit = |v: Vec3| {
        let n = norm(v);
        if n > 0.0 {
            Some(v.map(|c| c / n))
        } else {
            None
        }
    };
    let (Some(n1), Some(n2), Some(n3), Some(n4)) =
        (unit(cross(r13, r14)), unit(cross(r14, r24)), unit(cross(r24, r23)), unit(cross(r23, r13)))
    else {
        return 0.0;
    };
    let as_ = |a: Vec3, b: Vec3| dot(a, b).clamp(-1.0, 1.0).asin();
    let omega = as_(n1, n2) + as_(n2, n3) + as_(n3, n4) + as_(n4, n1);
    let orient = dot(cross(sub(p4, p3), sub(p2, p1)), r13);
    if orient > 0.0 {
        omega
    } else if orient < 0.0 {
        -omega
    } else {
        0.0
    }
}

fn closed_loop(points: &[Vec3]) -> Vec<Vec3> {
    let mut v = points.to_vec();
    if let (Some(f), Some(l)) = (points.first(), points.last()) {
        if f != l {
            v.push(*f);
        }
    }
    v
}

/// Gauss linking number of two closed polylines, by the exact solid angle of
/// each segment pair. Open input is closed by joining its ends.
pub fn linking_number(a: &[Vec3], b: &[Vec3]) -> Result<Linking> {
    if a.len() < 3 || b.len() < 3 {
        return Err(Error::InvalidParameter("each curve needs at least three points".into()));
    }
    let la = closed_loop(a);
    let lb = closed_loop(b);
    let total: f64 = la
        .par_windows(2)
        .map(|s| lb.windows(2).map(|t| segment_pair(s[0], s[1], t[0], t[1])).sum::<f64>())
        .sum();
    let value = total / (4.0 * PI);
    let min_distance = la
        .par_iter()
        .map(|p| lb.iter().map(|q| dist(*p, *q)).fold(f64::INFINITY, f64::min))
        .reduce(|| f64::INFINITY, f64::min);
    let longest = la.windows(2).chain(lb.windows(2)).map(|w| dist(w[0], w[1])).fold(0.0, f64::max);
    Ok(Linking { value, rounded: value.round() as i64, min_distance, close_approach: min_distance < longest })
}

/// Symmetric Hausdorff distance between two vertex sets.
pub fn hausdorff_distance(a: &[Vec3], b: &[Vec3]) -> f64 {
    let directed = |x: &[Vec3], y: &[Vec3]| {
        x.par_iter()
            .map(|p| y.iter().map(|q| dist(*p, *q)).fold(f64::INFINITY, f64::min))
            .reduce(|| 0.0, f64::max)
    };
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    directed(a, b).max(directed(b, a))
}

/// Traces several seeds in parallel; output order follows `seeds`.
pub fn trace_many(field: &VectorField<'_>, seeds: &[Vec3], opts: &TraceOptions) -> Result<Vec<FieldLine>> {
    seeds.par_iter().map(|s| trace(field, *s, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(r: Vec3) -> Result<Vec3> {
        Ok([-r[1], r[0], 0.0])
    }

    #[test]
    fn circle_closes_after_two_pi() {
        let line = trace(&circle, [1.0, 0.0, 0.0], &TraceOptions::default()).unwrap();
        assert_eq!(line.stop, StopReason::Closed);
        let c = line.closure.unwrap();
        assert!((c.period_length - 2.0 * PI).abs() < 1e-6, "{c:?}");
        assert!(c.gap < 1e-8);
        assert!(line.points.iter().all(|p| (norm(*p) - 1.0).abs() < 1e-8));
    }

    #[test]
    fn raw_parameter_circle() {
        let opts = TraceOptions { arc_length: false, ..TraceOptions::default() };
        let line = trace(&|r: Vec3| Ok([-2.0 * r[1], 2.0 * r[0], 0.0]), [0.5, 0.0, 0.0], &opts).unwrap();
        assert!(line.is_closed());
        assert!((line.length() - PI).abs() < 1e-6);
    }

    #[test]
    fn uniform_field_is_straight_and_open() {
        let opts = TraceOptions { max_length: 5.0, ..TraceOptions::default() };
        let line = trace(&|_| Ok([0.0, 0.0, 2.0]), [0.3, -0.1, 0.0], &opts).unwrap();
        assert_eq!(line.stop, StopReason::MaxLength);
        assert!(line.points.iter().all(|p| p[0] == 0.3 && p[1] == -0.1));
        assert!((line.points.last().unwrap()[2] - 5.0).abs() < 1e-12);
        assert!(!closure_detect(&line, 1e-4, 1e-2).closed);
    }

    #[test]
    fn stops_on_stagnation_bounds_and_bad_values() {
        let zero = trace(&|_| Ok([0.0; 3]), [1.0, 0.0, 0.0], &TraceOptions::default()).unwrap();
        assert_eq!(zero.stop, StopReason::Stagnation);
        assert_eq!(zero.len(), 1);
        let opts = TraceOptions { bounds: Some(1.0), ..TraceOptions::default() };
        let out = trace(&|_| Ok([1.0, 0.0, 0.0]), [0.0; 3], &opts).unwrap();
        assert_eq!(out.stop, StopReason::LeftBounds);
        let nan = trace(&|r: Vec3| Ok([1.0, 0.0, if r[0] > 0.5 { f64::NAN } else { 0.0 }]), [0.0; 3], &TraceOptions::default())
            .unwrap();
        assert_eq!(nan.stop, StopReason::NonFinite);
        assert!(nan.points.last().unwrap()[0] <= 0.5);
        let err = trace(&|_| Err(Error::Domain("x".into())), [0.0; 3], &TraceOptions::default()).unwrap();
        assert_eq!(err.stop, StopReason::NonFinite);
    }

    #[test]
    fn reversed_field_retraces() {
        let f = |r: Vec3| Ok([1.0 + r[1] * r[1], (r[0]).sin(), 0.3]);
        let opts = TraceOptions { max_length: 3.0, closure_eps: 0.0, ..TraceOptions::default() };
        let fwd = trace(&f, [0.1, 0.2, 0.0], &opts).unwrap();
        let end = *fwd.points.last().unwrap();
        let back = trace(&|r| f(r).map(|v| v.map(|c| -c)), end, &opts).unwrap();
        assert!(dist(*back.points.last().unwrap(), [0.1, 0.2, 0.0]) < 1e-7);
        assert!(hausdorff_distance(&fwd.points, &back.points) < 0.05);
    }

    fn ring(center: Vec3, r: f64, plane: usize, n: usize) -> Vec<Vec3> {
        (0..n)
            .map(|i| {
                let a = 2.0 * PI * i as f64 / n as f64;
                let (s, c) = a.sin_cos();
                let mut p = center;
                match plane {
                    0 => {
                        p[0] += r * c;
                        p[1] += r * s;
                    }
                    _ => {
                        p[0] += r * c;
                        p[2] += r * s;
                    }
                }
                p
            })
            .collect()
    }

    #[test]
    fn linking_of_standard_configurations() {
        let a = ring([0.0; 3], 1.0, 0, 200);
        let b = ring([1.0, 0.0, 0.0], 1.0, 1, 200);
        let lk = linking_number(&a, &b).unwrap();
        assert_eq!(lk.rounded.abs(), 1);
        assert!((lk.value.abs() - 1.0).abs() < 1e-9, "{lk:?}");
        let c = ring([3.0, 0.0, 0.0], 1.0, 0, 200);
        let lk = linking_number(&a, &c).unwrap();
        assert_eq!(lk.rounded, 0);
        assert!(lk.value.abs() < 1e-9);
        let reversed: Vec<Vec3> = b.iter().rev().copied().collect();
        let flipped = linking_number(&a, &reversed).unwrap();
        assert!((flipped.value + linking_number(&a, &b).unwrap().value).abs() < 1e-9);
        assert!(linking_number(&a[..2], &b).is_err());
    }

    #[test]
    fn hausdorff_of_shifted_rings() {
        let a = ring([0.0; 3], 1.0, 0, 100);
        let b = ring([0.0, 0.0, 0.25], 1.0, 0, 100);
        assert!((hausdorff_distance(&a, &b) - 0.25).abs() < 1e-12);
        assert_eq!(hausdorff_distance(&a, &a), 0.0);
    }

    #[test]
    fn rejects_bad_options() {
        let opts = TraceOptions { rtol: 0.0, ..TraceOptions::default() };
        assert!(trace(&circle, [1.0, 0.0, 0.0], &opts).is_err());
        assert!(trace(&circle, [f64::NAN, 0.0, 0.0], &TraceOptions::default()).is_err());
    }
}
