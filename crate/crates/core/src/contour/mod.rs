//! Oriented piecewise-smooth contours in the complex plane.
//!
//! A [`Contour`] is an ordered list of smooth [`Segment`]s: finite line
//! segments, infinite rays, circular arcs, or sampled polylines. The module
//! provides the geometric queries consumed by the remainder-bound layer (the
//! tangent-angle bound `b`, the minimum modulus `ρ`, inner arc length `L(r)`,
//! radius splits) together with adaptive quadrature over the contour.

mod quad;

pub use quad::{integrate, KahanSum, QuadratureResult, TailDecay};

use crate::error::{MeroError, Result};
use crate::{cis, C64};
use std::sync::Arc;

/// Geometry of one smooth piece of a contour.
#[derive(Debug, Clone)]
pub enum SegmentKind {
    /// Straight segment from `start` to `end`, parameter `t ∈ [0, 1]`.
    Line { start: C64, end: C64 },
    /// Infinite ray `anchor + t e^{iθ}`, `t ∈ [0, ∞)`.
    Ray { anchor: C64, angle: f64 },
    /// Circular arc `center + radius e^{iφ}` with `φ` sweeping linearly from
    /// `angle_start` to `angle_end` (decreasing sweep = clockwise).
    Arc {
        center: C64,
        radius: f64,
        angle_start: f64,
        angle_end: f64,
    },
    /// Piecewise-linear interpolation through sample points.
    Sampled { points: Vec<C64> },
}

/// One smooth arc segment. `backward` flips the traversal direction without
/// re-parameterizing, so a ray can be walked in from infinity.
#[derive(Debug, Clone)]
pub struct Segment {
    pub kind: SegmentKind,
    pub backward: bool,
}

impl Segment {
    pub fn line(start: C64, end: C64) -> Self {
        Segment { kind: SegmentKind::Line { start, end }, backward: false }
    }

    pub fn ray(anchor: C64, angle: f64) -> Self {
        Segment { kind: SegmentKind::Ray { anchor, angle }, backward: false }
    }

    pub fn ray_inward(anchor: C64, angle: f64) -> Self {
        Segment { kind: SegmentKind::Ray { anchor, angle }, backward: true }
    }

    pub fn arc(center: C64, radius: f64, angle_start: f64, angle_end: f64) -> Self {
        Segment {
            kind: SegmentKind::Arc { center, radius, angle_start, angle_end },
            backward: false,
        }
    }

    /// Parameter range; the upper end is `f64::INFINITY` for rays.
    pub fn t_range(&self) -> (f64, f64) {
        match &self.kind {
            SegmentKind::Line { .. } => (0.0, 1.0),
            SegmentKind::Ray { .. } => (0.0, f64::INFINITY),
            SegmentKind::Arc { .. } => (0.0, 1.0),
            SegmentKind::Sampled { points } => (0.0, (points.len().max(2) - 1) as f64),
        }
    }

    /// Point at parameter `t`.
    pub fn point(&self, t: f64) -> C64 {
        match &self.kind {
            SegmentKind::Line { start, end } => start + (end - start) * t,
            SegmentKind::Ray { anchor, angle } => anchor + cis(*angle) * t,
            SegmentKind::Arc { center, radius, angle_start, angle_end } => {
                let phi = angle_start + (angle_end - angle_start) * t;
                center + cis(phi) * *radius
            }
            SegmentKind::Sampled { points } => {
                let i = (t.floor() as usize).min(points.len().saturating_sub(2));
                let frac = t - i as f64;
                points[i] + (points[i + 1] - points[i]) * frac
            }
        }
    }

    /// Velocity `dz/dt` at parameter `t` (orientation sign not applied).
    pub fn velocity(&self, t: f64) -> C64 {
        match &self.kind {
            SegmentKind::Line { start, end } => end - start,
            SegmentKind::Ray { angle, .. } => cis(*angle),
            SegmentKind::Arc { radius, angle_start, angle_end, .. } => {
                let sweep = angle_end - angle_start;
                let phi = angle_start + sweep * t;
                C64::new(0.0, 1.0) * cis(phi) * *radius * sweep
            }
            SegmentKind::Sampled { points } => {
                let i = (t.floor() as usize).min(points.len().saturating_sub(2));
                points[i + 1] - points[i]
            }
        }
    }

    /// Traversal sign applied to `dz`.
    pub fn sign(&self) -> f64 {
        if self.backward {
            -1.0
        } else {
            1.0
        }
    }

    /// Whether the segment extends to infinity.
    pub fn is_infinite(&self) -> bool {
        matches!(self.kind, SegmentKind::Ray { .. })
    }

    /// Euclidean length (infinite for rays).
    pub fn length(&self) -> f64 {
        match &self.kind {
            SegmentKind::Line { start, end } => (end - start).norm(),
            SegmentKind::Ray { .. } => f64::INFINITY,
            SegmentKind::Arc { radius, angle_start, angle_end, .. } => {
                radius * (angle_end - angle_start).abs()
            }
            SegmentKind::Sampled { points } => {
                points.windows(2).map(|p| (p[1] - p[0]).norm()).sum()
            }
        }
    }

    /// Infimum of `|z|` over the segment (exact for lines, rays and arcs).
    pub fn min_modulus(&self) -> f64 {
        match &self.kind {
            SegmentKind::Line { start, end } => {
                dist_to_segment(C64::new(0.0, 0.0), *start, *end)
            }
            SegmentKind::Ray { anchor, angle } => {
                let d = cis(*angle);
                let tf = -(anchor * d.conj()).re;
                if tf <= 0.0 {
                    anchor.norm()
                } else {
                    (anchor + d * tf).norm()
                }
            }
            SegmentKind::Arc { center, radius, angle_start, angle_end } => {
                if center.norm() < 1e-300 {
                    return *radius;
                }
                // Closest approach towards the origin is at φ = arg(-center)
                // if that angle lies in the sweep, else at an endpoint.
                let target = (-center).arg();
                let lo = angle_start.min(*angle_end);
                let hi = angle_start.max(*angle_end);
                let mut best = f64::INFINITY;
                for k in -2..=2 {
                    let phi = target + 2.0 * std::f64::consts::PI * k as f64;
                    if phi >= lo && phi <= hi {
                        best = best.min((center + cis(phi) * *radius).norm());
                    }
                }
                best.min((center + cis(*angle_start) * *radius).norm())
                    .min((center + cis(*angle_end) * *radius).norm())
            }
            SegmentKind::Sampled { points } => points
                .windows(2)
                .map(|p| dist_to_segment(C64::new(0.0, 0.0), p[0], p[1]))
                .fold(f64::INFINITY, f64::min),
        }
    }
}

fn dist_to_segment(p: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

/// Oriented contour: ordered smooth segments plus a clearance radius that
/// declared poles must keep away from every contour point.
#[derive(Debug, Clone)]
pub struct Contour {
    pub segments: Vec<Segment>,
    /// When set, `integrate` negates the result (same nodes, reverse order).
    pub reversed: bool,
    /// Minimum allowed distance from any contour point to a declared pole.
    pub clearance: f64,
}

impl Contour {
    /// Builds a contour, splitting at the origin any line or ray that passes
    /// through it, so the segment count `d` follows the split-at-zero
    /// convention used by the tangent-angle estimates.
    pub fn new(segments: Vec<Segment>) -> Self {
        let mut out = Vec::with_capacity(segments.len());
        for seg in segments {
            split_at_origin(seg, &mut out);
        }
        Contour { segments: out, reversed: false, clearance: 0.0 }
    }

    pub fn with_clearance(mut self, clearance: f64) -> Self {
        self.clearance = clearance;
        self
    }

    /// Number of smooth segments `d`.
    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    /// Same geometry, opposite orientation.
    pub fn reversed(&self) -> Self {
        let mut c = self.clone();
        c.reversed = !c.reversed;
        c
    }

    /// `ρ = inf |z|` over the contour.
    pub fn min_modulus(&self) -> f64 {
        self.segments
            .iter()
            .map(Segment::min_modulus)
            .fold(f64::INFINITY, f64::min)
    }

    /// Checks every declared pole against the clearance radius.
    pub fn validate_clearance(&self, poles: &[C64]) -> Result<()> {
        if self.clearance <= 0.0 {
            return Ok(());
        }
        for &pole in poles {
            for seg in &self.segments {
                let d = match &seg.kind {
                    SegmentKind::Line { start, end } => dist_to_segment(pole, *start, *end),
                    SegmentKind::Ray { anchor, angle } => {
                        let dir = cis(*angle);
                        let tf = ((pole - anchor) * dir.conj()).re;
                        if tf <= 0.0 {
                            (pole - anchor).norm()
                        } else {
                            (pole - (anchor + dir * tf)).norm()
                        }
                    }
                    SegmentKind::Arc { center, radius, angle_start, angle_end } => {
                        let rel = pole - center;
                        let target = rel.arg();
                        let lo = angle_start.min(*angle_end);
                        let hi = angle_start.max(*angle_end);
                        let mut best = f64::INFINITY;
                        for k in -2..=2 {
                            let phi = target + 2.0 * std::f64::consts::PI * k as f64;
                            if phi >= lo && phi <= hi {
                                best = best.min((rel.norm() - radius).abs());
                            }
                        }
                        best.min((pole - (center + cis(*angle_start) * *radius)).norm())
                            .min((pole - (center + cis(*angle_end) * *radius)).norm())
                    }
                    SegmentKind::Sampled { points } => points
                        .windows(2)
                        .map(|p| dist_to_segment(pole, p[0], p[1]))
                        .fold(f64::INFINITY, f64::min),
                };
                if d < self.clearance {
                    let t_probe = match seg.t_range() {
                        (a, b) if b.is_finite() => 0.5 * (a + b),
                        (a, _) => a,
                    };
                    return Err(MeroError::ClearanceViolated {
                        at: seg.point(t_probe),
                        pole,
                        clearance: self.clearance,
                    });
                }
            }
        }
        Ok(())
    }

    /// `inf |cos Θ(z)|` where `Θ(z)` is the angle at `z` between the line
    /// through the origin and `z` and the tangent line of the contour.
    ///
    /// With `outside_radius = Some(r)` the infimum runs only over
    /// `Γ ∩ (ℂ - D(0, r))`. Returns 0 for arcs centered at the origin; the
    /// caller must treat `b = 0` as a hypothesis failure.
    pub fn cos_theta_bound(&self, outside_radius: Option<f64>) -> f64 {
        let r = outside_radius.unwrap_or(0.0);
        self.segments
            .iter()
            .filter_map(|s| segment_cos_bound(s, r))
            .fold(1.0_f64, f64::min)
    }

    /// Splits into `(Γ ∩ closure D(0, r), Γ ∩ (ℂ - D(0, r)))`.
    pub fn split_at_radius(&self, r: f64) -> (Contour, Contour) {
        let mut inner = Vec::new();
        let mut outer = Vec::new();
        for seg in &self.segments {
            split_segment_at_radius(seg, r, &mut inner, &mut outer);
        }
        (
            Contour { segments: inner, reversed: self.reversed, clearance: self.clearance },
            Contour { segments: outer, reversed: self.reversed, clearance: self.clearance },
        )
    }

    /// Length `L(r)` of the part of the contour inside `D(0, r)`.
    pub fn arc_length_within(&self, r: f64) -> f64 {
        let (inner, _) = self.split_at_radius(r);
        inner.segments.iter().map(Segment::length).sum()
    }
}

fn split_at_origin(seg: Segment, out: &mut Vec<Segment>) {
    const TINY: f64 = 1e-13;
    match &seg.kind {
        SegmentKind::Line { start, end } => {
            let d = *end - *start;
            let len = d.norm();
            if len > 0.0 {
                let cross = (start.conj() * d).im.abs() / len;
                let t0 = -((*start) * d.conj()).re / d.norm_sqr();
                if cross < TINY * start.norm().max(len) && t0 > TINY && t0 < 1.0 - TINY {
                    let mid = *start + d * t0;
                    out.push(Segment { kind: SegmentKind::Line { start: *start, end: mid }, backward: seg.backward });
                    out.push(Segment { kind: SegmentKind::Line { start: mid, end: *end }, backward: seg.backward });
                    return;
                }
            }
            out.push(seg);
        }
        SegmentKind::Ray { anchor, angle } => {
            let d = cis(*angle);
            let cross = (anchor.conj() * d).im.abs();
            let t0 = -((*anchor) * d.conj()).re;
            if anchor.norm() > TINY && cross < TINY * anchor.norm() && t0 > TINY {
                let mid = anchor + d * t0;
                out.push(Segment { kind: SegmentKind::Line { start: *anchor, end: mid }, backward: seg.backward });
                out.push(Segment { kind: SegmentKind::Ray { anchor: mid, angle: *angle }, backward: seg.backward });
                return;
            }
            out.push(seg);
        }
        _ => out.push(seg),
    }
}

/// `inf |cosΘ|` over the part of `seg` outside `D(0, r)`; `None` when that
/// part is empty.
fn segment_cos_bound(seg: &Segment, r: f64) -> Option<f64> {
    match &seg.kind {
        SegmentKind::Line { start, end } => {
            let d = *end - *start;
            line_cos_bound(*start, d, 0.0, 1.0, r)
        }
        SegmentKind::Ray { anchor, angle } => {
            line_cos_bound(*anchor, cis(*angle), 0.0, f64::INFINITY, r)
        }
        SegmentKind::Arc { center, radius, angle_start, angle_end } => {
            if center.norm() < 1e-12 * radius {
                // tangent is perpendicular to the radius everywhere
                return if *radius >= r { Some(0.0) } else { None };
            }
            let n = 512;
            let mut best: Option<f64> = None;
            for i in 0..=n {
                let t = i as f64 / n as f64;
                let phi = angle_start + (angle_end - angle_start) * t;
                let z = center + cis(phi) * *radius;
                if z.norm() < r {
                    continue;
                }
                let v = C64::new(0.0, 1.0) * cis(phi);
                let c = (z.conj() * v).re.abs() / z.norm().max(1e-300);
                best = Some(best.map_or(c, |b: f64| b.min(c)));
            }
            best
        }
        SegmentKind::Sampled { points } => {
            let mut best: Option<f64> = None;
            for p in points.windows(2) {
                if let Some(c) = line_cos_bound(p[0], p[1] - p[0], 0.0, 1.0, r) {
                    best = Some(best.map_or(c, |b: f64| b.min(c)));
                }
            }
            best
        }
    }
}

/// Exact infimum of |cosΘ| along `z(t) = s + t d`, `t ∈ [a, b]`, restricted
/// to `|z| ≥ r`. Along a straight line |cosΘ| = |t - t_f| |d| / |z(t)| with
/// `t_f` the foot of the perpendicular from the origin; it decreases towards
/// the foot, so the infimum sits at the admissible point nearest the foot.
fn line_cos_bound(s: C64, d: C64, a: f64, b: f64, r: f64) -> Option<f64> {
    let dn = d.norm();
    if dn == 0.0 {
        return None;
    }
    let h = (s.conj() * d).im.abs() / dn; // distance from origin to the line
    let tf = -(s * d.conj()).re / (dn * dn); // foot parameter
    let cos_at = |t: f64| -> f64 {
        if !t.is_finite() {
            return 1.0;
        }
        let u = (t - tf).abs() * dn;
        let zn = (h * h + u * u).sqrt();
        if zn < 1e-300 {
            1.0 // passes through the origin: radial there
        } else {
            u / zn
        }
    };
    // |cosΘ| grows with the distance |t - t_f|, so the infimum over any set
    // of t sits at the admissible point closest to the foot.
    let mut candidates: Vec<f64> = Vec::new();
    if r <= h {
        // whole line stays outside D(0,r): [a,b] admissible in full
        candidates.push(tf.clamp(a, b));
    } else {
        // the inside-disc interval (lo, hi) is centered at the foot
        let half = (r * r - h * h).sqrt() / dn;
        let (lo, hi) = (tf - half, tf + half);
        if lo >= a {
            candidates.push(lo.min(b)); // closest point of the left piece
        }
        if hi <= b {
            candidates.push(hi.max(a)); // closest point of the right piece
        }
        if candidates.is_empty() {
            return None; // segment entirely inside D(0,r)
        }
    }
    let best = candidates
        .into_iter()
        .map(cos_at)
        .fold(f64::INFINITY, f64::min);
    best.is_finite().then_some(best)
}

fn split_segment_at_radius(seg: &Segment, r: f64, inner: &mut Vec<Segment>, outer: &mut Vec<Segment>) {
    match &seg.kind {
        SegmentKind::Line { start, end } => {
            let pieces = line_radius_pieces(*start, *end - *start, 0.0, 1.0, r);
            for (t0, t1, is_in) in pieces {
                let sub = Segment {
                    kind: SegmentKind::Line {
                        start: *start + (*end - *start) * t0,
                        end: *start + (*end - *start) * t1,
                    },
                    backward: seg.backward,
                };
                if is_in { inner.push(sub) } else { outer.push(sub) }
            }
        }
        SegmentKind::Ray { anchor, angle } => {
            let d = cis(*angle);
            let pieces = line_radius_pieces(*anchor, d, 0.0, f64::INFINITY, r);
            for (t0, t1, is_in) in pieces {
                let sub = if t1.is_finite() {
                    Segment {
                        kind: SegmentKind::Line { start: *anchor + d * t0, end: *anchor + d * t1 },
                        backward: seg.backward,
                    }
                } else {
                    Segment { kind: SegmentKind::Ray { anchor: *anchor + d * t0, angle: *angle }, backward: seg.backward }
                };
                if is_in { inner.push(sub) } else { outer.push(sub) }
            }
        }
        SegmentKind::Arc { center, radius, angle_start, angle_end } => {
            let cn = center.norm();
            if cn < 1e-300 {
                if *radius <= r { inner.push(seg.clone()) } else { outer.push(seg.clone()) }
                return;
            }
            // |z(φ)|² = |c|² + ρ² + 2ρ|c| cos(φ - arg c)
            let cosv = (r * r - cn * cn - radius * radius) / (2.0 * radius * cn);
            let n = 256;
            let mut boundaries = vec![0.0];
            let sweep = angle_end - angle_start;
            let inside_at = |t: f64| {
                let phi = angle_start + sweep * t;
                (phi - center.arg()).cos() <= cosv
            };
            let mut prev = inside_at(0.0);
            for i in 1..=n {
                let t = i as f64 / n as f64;
                let cur = inside_at(t);
                if cur != prev {
                    // bisect the crossing
                    let (mut lo, mut hi) = ((i - 1) as f64 / n as f64, t);
                    for _ in 0..60 {
                        let mid = 0.5 * (lo + hi);
                        if inside_at(mid) == prev { lo = mid } else { hi = mid }
                    }
                    boundaries.push(0.5 * (lo + hi));
                    prev = cur;
                }
            }
            boundaries.push(1.0);
            for win in boundaries.windows(2) {
                let (t0, t1) = (win[0], win[1]);
                if t1 - t0 < 1e-15 {
                    continue;
                }
                let sub = Segment {
                    kind: SegmentKind::Arc {
                        center: *center,
                        radius: *radius,
                        angle_start: angle_start + sweep * t0,
                        angle_end: angle_start + sweep * t1,
                    },
                    backward: seg.backward,
                };
                if inside_at(0.5 * (t0 + t1)) { inner.push(sub) } else { outer.push(sub) }
            }
        }
        SegmentKind::Sampled { points } => {
            let mut cur: Vec<C64> = vec![points[0]];
            let mut cur_in = points[0].norm() <= r;
            for p in points.windows(2) {
                let pieces = line_radius_pieces(p[0], p[1] - p[0], 0.0, 1.0, r);
                for (t0, t1, is_in) in pieces {
                    let z0 = p[0] + (p[1] - p[0]) * t0;
                    let z1 = p[0] + (p[1] - p[0]) * t1;
                    if is_in != cur_in {
                        if cur.len() > 1 {
                            let done = Segment { kind: SegmentKind::Sampled { points: cur.clone() }, backward: seg.backward };
                            if cur_in { inner.push(done) } else { outer.push(done) }
                        }
                        cur = vec![z0];
                        cur_in = is_in;
                    }
                    cur.push(z1);
                }
            }
            if cur.len() > 1 {
                let done = Segment { kind: SegmentKind::Sampled { points: cur }, backward: seg.backward };
                if cur_in { inner.push(done) } else { outer.push(done) }
            }
        }
    }
}

/// Decomposes `t ∈ [a, b]` into maximal pieces with `|s + t d| ≤ r` (tagged
/// `true`) and `> r` (tagged `false`).
fn line_radius_pieces(s: C64, d: C64, a: f64, b: f64, r: f64) -> Vec<(f64, f64, bool)> {
    // |z(t)|² - r² = |d|² t² + 2 Re(s̄ d) t + |s|² - r²
    let aa = d.norm_sqr();
    let bb = 2.0 * (s.conj() * d).re;
    let cc = s.norm_sqr() - r * r;
    let disc = bb * bb - 4.0 * aa * cc;
    let mut cuts = vec![a];
    if disc > 0.0 && aa > 0.0 {
        let sq = disc.sqrt();
        for t in [(-bb - sq) / (2.0 * aa), (-bb + sq) / (2.0 * aa)] {
            if t > a && t < b {
                cuts.push(t);
            }
        }
    }
    cuts.push(b);
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut out = Vec::new();
    for win in cuts.windows(2) {
        let (t0, t1) = (win[0], win[1]);
        if t1 - t0 <= 0.0 {
            continue;
        }
        let tm = if t1.is_finite() { 0.5 * (t0 + t1) } else { t0 + 1.0 };
        let is_in = aa * tm * tm + bb * tm + cc <= 0.0;
        out.push((t0, t1, is_in));
    }
    out
}

/// Two-segment contour `e^{iθ̃}(-∞, 0] ∪ e^{iθ̃}[0, ∞)` shifted by
/// `i·offset·e^{iθ̃}`, oriented left to right.
///
/// Rejects `|θ̃| ≥ π/2`: the decay estimates need `cos θ̃ > 0`.
pub fn make_rotated_line(theta_tilde: f64, offset: f64) -> Result<Contour> {
    if theta_tilde.abs() >= std::f64::consts::FRAC_PI_2 {
        return Err(MeroError::Config(format!(
            "rotated line requires |θ̃| < π/2, got {theta_tilde}"
        )));
    }
    let anchor = cis(theta_tilde) * C64::new(0.0, offset);
    let left = Segment::ray_inward(anchor, theta_tilde + std::f64::consts::PI);
    let right = Segment::ray(anchor, theta_tilde);
    Ok(Contour::new(vec![left, right]))
}

/// Deviation of the deformed Hankel rays from the negative real axis.
pub const HANKEL_DEFORMED_BETA: f64 = std::f64::consts::PI / 12.0;

/// Hankel contour around `ℝ₋`, oriented from `-∞ - iε` to `-∞ + iε`.
///
/// The plain variant keeps distance `ε` to the negative real axis: lower ray,
/// right semicircle of radius `ε`, upper ray. The deformed variant replaces it
/// by two straight rays through the origin at angles `±(π - β)` with
/// `β = `[`HANKEL_DEFORMED_BETA`], confined to `Re z < 0` except at the
/// origin; being radial they satisfy the tangent-angle bound with `b = 1 ≥ 1/2`.
pub fn make_hankel(epsilon: f64, deformed: bool) -> Result<Contour> {
    if epsilon <= 0.0 {
        return Err(MeroError::Config(format!("Hankel ε must be positive, got {epsilon}")));
    }
    if deformed {
        let beta = HANKEL_DEFORMED_BETA;
        let ang = std::f64::consts::PI - beta;
        return Ok(Contour::new(vec![
            Segment::ray_inward(C64::new(0.0, 0.0), -ang),
            Segment::ray(C64::new(0.0, 0.0), ang),
        ]));
    }
    let lower = Segment::ray_inward(C64::new(0.0, -epsilon), std::f64::consts::PI);
    let circle = Segment::arc(
        C64::new(0.0, 0.0),
        epsilon,
        -std::f64::consts::FRAC_PI_2,
        std::f64::consts::FRAC_PI_2,
    );
    let upper = Segment::ray(C64::new(0.0, epsilon), std::f64::consts::PI);
    Ok(Contour::new(vec![lower, circle, upper]))
}

/// Builders producing the contours attached to a transform problem, keyed by
/// deformation role: the evaluation contour `Γ_w`, the estimate contour
/// `Γ̃_w`, the Borel contour `Γ̄_w`, and optionally a better-conditioned
/// deformation for moment integrals.
#[derive(Clone)]
pub struct ContourFamily {
    pub base: Arc<dyn Fn(C64) -> Contour + Send + Sync>,
    pub hypothesis: Arc<dyn Fn(C64) -> Contour + Send + Sync>,
    pub borel: Option<Arc<dyn Fn(C64) -> Contour + Send + Sync>>,
    pub moment: Option<Arc<dyn Fn(C64) -> Contour + Send + Sync>>,
}

impl ContourFamily {
    /// Family in which every role uses the same builder.
    pub fn uniform(builder: Arc<dyn Fn(C64) -> Contour + Send + Sync>) -> Self {
        ContourFamily { base: builder.clone(), hypothesis: builder.clone(), borel: Some(builder.clone()), moment: Some(builder) }
    }

    pub fn moment_contour(&self, w: C64) -> Contour {
        match &self.moment {
            Some(b) => b(w),
            None => (self.base)(w),
        }
    }

    pub fn borel_contour(&self, w: C64) -> Contour {
        match &self.borel {
            Some(b) => b(w),
            None => (self.base)(w),
        }
    }
}
