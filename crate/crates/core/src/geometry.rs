//! Self-intersection test for the closed curve `θ ↦ f(e^{iθ})`.
//!
//! The curve is sampled into a closed polyline whose segments are swept in
//! order of their left `x` extent; only pairs with overlapping bounding boxes
//! are tested, using Shewchuk's exact orientation predicate. A suspected
//! crossing is confirmed by bisecting both arcs on the true curve and
//! retesting, so near-tangential chord artifacts are discarded.

use num_complex::Complex64;
use robust::{orient2d, Coord};

/// A confirmed crossing between two non-adjacent arcs of the sampled curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    /// Indices of the two coarse segments, `first < second`.
    pub segments: (usize, usize),
    /// Intersection point of the refined segments.
    pub witness: Complex64,
    /// How far each coarse segment reaches across the other's supporting line;
    /// small values mean a grazing crossing.
    pub penetration: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SimplicityScan {
    pub crossings: Vec<Crossing>,
    /// Smallest distance between non-adjacent, non-crossing segments that
    /// came within the geometric tolerance, if any did.
    pub near_miss: Option<f64>,
    /// Coarse candidates rejected after refinement.
    pub rejected: usize,
}

impl SimplicityScan {
    pub fn is_simple(&self) -> bool {
        self.crossings.is_empty()
    }
}

fn coord(z: Complex64) -> Coord<f64> {
    Coord { x: z.re, y: z.im }
}

fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    orient2d(coord(a), coord(b), coord(c))
}

fn within_box(a: Complex64, b: Complex64, p: Complex64) -> bool {
    p.re >= a.re.min(b.re) && p.re <= a.re.max(b.re) && p.im >= a.im.min(b.im) && p.im <= a.im.max(b.im)
}

/// Closed-segment intersection test with exact orientation signs.
pub fn segments_intersect(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && within_box(c, d, a))
        || (d2 == 0.0 && within_box(c, d, b))
        || (d3 == 0.0 && within_box(a, b, c))
        || (d4 == 0.0 && within_box(a, b, d))
}

fn cross(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}

/// Intersection point of two intersecting segments (midpoint of the overlap
/// for collinear ones).
pub fn intersection_point(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let r = b - a;
    let s = d - c;
    let denom = cross(r, s);
    if denom == 0.0 {
        return 0.25 * (a + b + c + d);
    }
    let t = (cross(c - a, s) / denom).clamp(0.0, 1.0);
    a + r * t
}

fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

fn segment_distance(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> f64 {
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

fn line_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len = ab.norm();
    if len == 0.0 {
        return (p - a).norm();
    }
    cross(ab, p - a).abs() / len
}

fn penetration(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> f64 {
    let across_ab = line_distance(c, a, b).max(line_distance(d, a, b));
    let across_cd = line_distance(a, c, d).max(line_distance(b, c, d));
    across_ab.min(across_cd)
}

fn unit_midpoint(u: Complex64, v: Complex64) -> Complex64 {
    let m = u + v;
    m / m.norm()
}

/// Bisects both arcs and keeps any sub-pair that still intersects, down to
/// `depth_left` levels. Returns the witness point of a persistent crossing.
fn refine<F>(f: &F, arc1: (Complex64, Complex64), arc2: (Complex64, Complex64), depth_left: usize) -> Option<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let (a, b) = (f(arc1.0), f(arc1.1));
    let (c, d) = (f(arc2.0), f(arc2.1));
    if !segments_intersect(a, b, c, d) {
        return None;
    }
    if depth_left == 0 {
        return Some(intersection_point(a, b, c, d));
    }
    let m1 = unit_midpoint(arc1.0, arc1.1);
    let m2 = unit_midpoint(arc2.0, arc2.1);
    for half1 in [(arc1.0, m1), (m1, arc1.1)] {
        for half2 in [(arc2.0, m2), (m2, arc2.1)] {
            if let Some(w) = refine(f, half1, half2, depth_left - 1) {
                return Some(w);
            }
        }
    }
    None
}

struct SegmentBox {
    index: usize,
    min_x: f64,
    max_x: f64,
    min_y: f64,
    max_y: f64,
}

/// Scans the closed polyline through `f(zeta[k])` for self-intersections.
///
/// `zeta` are the sample points on the unit circle in angular order;
/// segment `k` joins samples `k` and `k + 1 (mod n)`. Segments sharing an
/// endpoint are never tested against each other. `tolerance` is an absolute
/// distance used to report near misses; `refinements` bounds the bisection
/// depth used to confirm a crossing.
pub fn scan_closed_curve<F>(f: F, zeta: &[Complex64], tolerance: f64, refinements: usize) -> SimplicityScan
where
    F: Fn(Complex64) -> Complex64,
{
    let n = zeta.len();
    let mut report = SimplicityScan::default();
    if n < 4 {
        return report;
    }
    let pts: Vec<Complex64> = zeta.iter().map(|&z| f(z)).collect();
    let mut boxes: Vec<SegmentBox> = (0..n)
        .map(|k| {
            let (a, b) = (pts[k], pts[(k + 1) % n]);
            SegmentBox {
                index: k,
                min_x: a.re.min(b.re),
                max_x: a.re.max(b.re),
                min_y: a.im.min(b.im),
                max_y: a.im.max(b.im),
            }
        })
        .collect();
    boxes.sort_by(|l, r| l.min_x.total_cmp(&r.min_x).then(l.index.cmp(&r.index)));

    let adjacent = |i: usize, j: usize| {
        let d = i.abs_diff(j);
        d <= 1 || d == n - 1
    };

    for (pos, bi) in boxes.iter().enumerate() {
        for bj in &boxes[pos + 1..] {
            if bj.min_x > bi.max_x + tolerance {
                break;
            }
            if bj.min_y > bi.max_y + tolerance || bi.min_y > bj.max_y + tolerance {
                continue;
            }
            let (i, j) = (bi.index.min(bj.index), bi.index.max(bj.index));
            if adjacent(i, j) {
                continue;
            }
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            if segments_intersect(a, b, c, d) {
                let arc1 = (zeta[i], zeta[(i + 1) % n]);
                let arc2 = (zeta[j], zeta[(j + 1) % n]);
                match refine(&f, arc1, arc2, refinements) {
                    Some(witness) => report.crossings.push(Crossing {
                        segments: (i, j),
                        witness,
                        penetration: penetration(a, b, c, d),
                    }),
                    None => report.rejected += 1,
                }
            } else if tolerance > 0.0 {
                let dist = segment_distance(a, b, c, d);
                if dist <= tolerance {
                    report.near_miss = Some(report.near_miss.map_or(dist, |m: f64| m.min(dist)));
                }
            }
        }
    }
    report.crossings.sort_by_key(|c| c.segments);
    report
}

/// Signed area enclosed by a closed polyline (positive for counter-clockwise).
pub fn shoelace_area(points: &[Complex64]) -> f64 {
    let n = points.len();
    let mut twice = 0.0;
    for k in 0..n {
        let (a, b) = (points[k], points[(k + 1) % n]);
        twice += a.re * b.im - b.re * a.im;
    }
    0.5 * twice
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::unit_circle;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn crossing_and_disjoint_segments() {
        assert!(segments_intersect(c(0., 0.), c(1., 1.), c(0., 1.), c(1., 0.)));
        assert!(!segments_intersect(c(0., 0.), c(1., 0.), c(0., 1.), c(1., 1.)));
        // touching at an endpoint counts
        assert!(segments_intersect(c(0., 0.), c(1., 0.), c(0.5, 0.), c(0.5, 1.)));
        // collinear but disjoint
        assert!(!segments_intersect(c(0., 0.), c(1., 0.), c(2., 0.), c(3., 0.)));
        let p = intersection_point(c(0., 0.), c(1., 1.), c(0., 1.), c(1., 0.));
        assert!((p - c(0.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn circle_is_simple() {
        let z = unit_circle(1024);
        let scan = scan_closed_curve(|w| w, &z, 1e-9, 8);
        assert!(scan.is_simple());
        assert!(scan.near_miss.is_none());
    }

    #[test]
    fn limacon_with_inner_loop_crosses() {
        // ζ + 0.9ζ² traces a limaçon with an inner loop
        let z = unit_circle(1024);
        let scan = scan_closed_curve(|w| w + 0.9 * w * w, &z, 1e-9, 8);
        assert!(!scan.is_simple());
        let cr = scan.crossings[0];
        assert!(cr.penetration > 0.0);
    }

    #[test]
    fn figure_eight_witness_near_origin() {
        // Lemniscate of Gerono, self-crossing at the origin.
        let z = unit_circle(512);
        let f = |w: Complex64| {
            let t = w.arg();
            c(t.sin(), t.sin() * t.cos())
        };
        let scan = scan_closed_curve(f, &z, 1e-12, 8);
        assert!(!scan.is_simple());
        assert!(scan.crossings.iter().all(|c| c.witness.norm() < 1e-2));
    }

    #[test]
    fn shoelace_of_unit_square() {
        let sq = [c(0., 0.), c(1., 0.), c(1., 1.), c(0., 1.)];
        assert_eq!(shoelace_area(&sq), 1.0);
        let rev: Vec<_> = sq.iter().rev().copied().collect();
        assert_eq!(shoelace_area(&rev), -1.0);
    }
}
