//! Convex hull of the spectrum and the two containment witnesses: support
//! comparison on hull edge normals, and the directional margin inequality
//! evaluated on the normalized spectrum without building an ellipse.

use crate::ellipse::{AxisSums, Direction, NormalizedSpectrum, SpectralEllipse};
use crate::numerics::lex_cmp;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2};

const DEDUP_REL: f64 = 1e-14;
const COLLINEAR_REL: f64 = 1e-12;
const SEGMENT_REL: f64 = 1e-10;

/// Default containment slack `1e−8·(1 + max|λᵢ|)`.
pub fn default_slack(points: &[Complex64]) -> f64 {
    1e-8 * (1.0 + points.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Counterclockwise hull vertices. Two vertices describe a segment, one a
/// point.
#[derive(Debug, Clone, PartialEq)]
pub struct HullPolygon {
    pub vertices: Vec<Complex64>,
    pub diameter: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Contained,
    Violated,
    Degenerate,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Contained => "Contained",
            Verdict::Violated => "Violated",
            Verdict::Degenerate => "Degenerate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContainmentReport {
    pub verdict: Verdict,
    /// Smallest margin; negative means the ellipse pokes out.
    pub min_margin: f64,
    pub worst_direction: Direction,
    pub per_edge_margins: Vec<f64>,
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Andrew's monotone chain, with near-duplicates collapsed and nearly
/// collinear vertices dropped.
pub fn convex_hull(points: &[Complex64]) -> HullPolygon {
    assert!(!points.is_empty(), "convex hull of an empty set");
    let scale = 1.0 + points.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut pts = points.to_vec();
    pts.sort_by(lex_cmp);
    let dedup_tol = DEDUP_REL * scale;
    pts.dedup_by(|b, a| (*a - *b).norm() <= dedup_tol);

    let (i_far, j_far, diameter) = farthest_pair(&pts);
    if pts.len() == 1 || diameter <= dedup_tol {
        return HullPolygon {
            vertices: vec![pts[0]],
            diameter: 0.0,
        };
    }

    // Segment when every point hugs the line through the extreme pair.
    let (p, q) = (pts[i_far], pts[j_far]);
    let axis = (q - p) / diameter;
    let off_line = pts
        .iter()
        .map(|z| ((z - p) * axis.conj()).im.abs())
        .fold(0.0, f64::max);
    if off_line <= SEGMENT_REL * diameter {
        let (lo, hi) = if lex_cmp(&p, &q).is_le() {
            (p, q)
        } else {
            (q, p)
        };
        return HullPolygon {
            vertices: vec![lo, hi],
            diameter,
        };
    }

    let line_tol = COLLINEAR_REL * diameter;
    let not_left_turn = |hull: &[Complex64], z: Complex64| {
        let o = hull[hull.len() - 2];
        let a = hull[hull.len() - 1];
        // Drop `a` unless it is strictly left of o→z by more than the tolerance.
        cross(o, a, z) <= line_tol * (z - o).norm()
    };
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * pts.len());
    for &z in &pts {
        while hull.len() >= 2 && not_left_turn(&hull, z) {
            hull.pop();
        }
        hull.push(z);
    }
    let lower_len = hull.len() + 1;
    for &z in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && not_left_turn(&hull, z) {
            hull.pop();
        }
        hull.push(z);
    }
    hull.pop();
    HullPolygon {
        vertices: hull,
        diameter,
    }
}

fn farthest_pair(pts: &[Complex64]) -> (usize, usize, f64) {
    let mut best = (0, 0, 0.0);
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let d = (pts[i] - pts[j]).norm();
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    best
}

impl HullPolygon {
    /// Support function of the hull.
    pub fn support(&self, d: Direction) -> f64 {
        self.vertices
            .iter()
            .map(|&v| d.dot(v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Outward unit normals of the polygon edges, one per edge.
    pub fn edge_normals(&self) -> Vec<Direction> {
        let k = self.vertices.len();
        (0..k)
            .map(|i| {
                let e = self.vertices[(i + 1) % k] - self.vertices[i];
                Direction::new(e.im, -e.re)
                    .expect("hull vertices are distinct")
                    .normalized()
            })
            .collect()
    }
}

/// Checks that the ellipse lies in the hull by comparing support functions.
///
/// A polygon contains a convex set iff the set's support is dominated on
/// every outward edge normal. A segment hull is probed along its axis in both
/// senses, with the two across-axis probes acting as a thickness check: they
/// only enter `min_margin` when they exceed the slack. A point hull is probed
/// by the distance of the ellipse's farthest point.
pub fn contains_ellipse(h: &HullPolygon, e: &SpectralEllipse, slack: f64) -> ContainmentReport {
    let (directions, margins, primary) = if h.is_point() {
        let offset = e.center - h.vertices[0];
        let dir = if offset.norm() > 0.0 {
            Direction::new(offset.re, offset.im).unwrap().normalized()
        } else {
            Direction::new(e.major_dir.re, e.major_dir.im)
                .unwrap_or(Direction::from_angle(0.0))
                .normalized()
        };
        (vec![dir], vec![-(offset.norm() + e.semimajor)], 1)
    } else if h.is_segment() {
        let axis = h.vertices[1] - h.vertices[0];
        let along = Direction::new(axis.re, axis.im).unwrap().normalized();
        let across = Direction::new(-along.beta(), along.alpha()).unwrap();
        let flip = |d: Direction| Direction::new(-d.alpha(), -d.beta()).unwrap();
        let dirs = vec![along, flip(along), across, flip(across)];
        let margins = dirs.iter().map(|&d| h.support(d) - e.support(d)).collect();
        (dirs, margins, 2)
    } else {
        let dirs = h.edge_normals();
        let margins: Vec<f64> = dirs.iter().map(|&d| h.support(d) - e.support(d)).collect();
        let k = dirs.len();
        (dirs, margins, k)
    };

    let argmin = |idx: &mut dyn Iterator<Item = usize>| {
        idx.fold((0, f64::INFINITY), |best, i| {
            if margins[i] < best.1 {
                (i, margins[i])
            } else {
                best
            }
        })
    };
    let (mut worst, mut min_margin) = argmin(&mut (0..primary));
    let (thin_worst, thin_min) = argmin(&mut (primary..margins.len()));
    if thin_min < -slack && thin_min < min_margin {
        worst = thin_worst;
        min_margin = thin_min;
    }

    let verdict = if margins.iter().any(|m| !m.is_finite()) {
        Verdict::Degenerate
    } else if min_margin >= -slack && thin_min >= -slack {
        Verdict::Contained
    } else {
        Verdict::Violated
    };
    ContainmentReport {
        verdict,
        min_margin,
        worst_direction: directions[worst],
        per_edge_margins: margins,
    }
}

/// `maxᵢ(α·Re μᵢ + β·Im μᵢ) − √(α²R² + β²I²)/(√2(n−1))`, nonnegative for
/// every direction when the ellipse fits.
pub fn directional_margin(
    ns: &NormalizedSpectrum,
    ax: &AxisSums,
    n: usize,
    d: Direction,
) -> Result<f64> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let (alpha, beta) = (d.alpha(), d.beta());
    let lhs = ns
        .mu
        .iter()
        .map(|&z| d.dot(z))
        .fold(f64::NEG_INFINITY, f64::max);
    let rhs = (alpha * alpha * ax.r * ax.r + beta * beta * ax.i * ax.i).sqrt()
        / (SQRT_2 * (n - 1) as f64);
    Ok(lhs - rhs)
}

/// [`directional_margin`] at the `k` directions `θⱼ = 2πj/k`.
pub fn sweep_margins(
    ns: &NormalizedSpectrum,
    ax: &AxisSums,
    n: usize,
    k: usize,
) -> Result<Vec<f64>> {
    assert!(k >= 4, "sweep needs at least 4 directions, got {k}");
    (0..k)
        .map(|j| directional_margin(ns, ax, n, sweep_direction(j, k)))
        .collect()
}

pub fn sweep_direction(j: usize, k: usize) -> Direction {
    Direction::from_angle(2.0 * PI * j as f64 / k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellipse::{axis_sums, inscribed_ellipse, normalize_mu};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reals(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| c(x, 0.0)).collect()
    }

    #[test]
    fn hull_drops_interior_point() {
        let h = convex_hull(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(0.2, 0.2)]);
        assert_eq!(h.vertices, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]);
    }

    #[test]
    fn hull_segments_and_points() {
        let h = convex_hull(&reals(&[1.0, -1.0]));
        assert_eq!(h.vertices, reals(&[-1.0, 1.0]));
        let h = convex_hull(&reals(&[-1.0, -1.0, 2.0]));
        assert_eq!(h.vertices, reals(&[-1.0, 2.0]));
        assert_eq!(h.diameter, 3.0);
        let h = convex_hull(&reals(&[3.0, 3.0, 3.0]));
        assert_eq!(h.vertices, reals(&[3.0]));
    }

    #[test]
    fn hull_removes_collinear_boundary_points() {
        let pts = [
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(2.0, 0.0),
            c(2.0, 2.0),
            c(0.0, 2.0),
            c(1.0, 2.0),
        ];
        let h = convex_hull(&pts);
        assert_eq!(
            h.vertices,
            vec![c(0.0, 0.0), c(2.0, 0.0), c(2.0, 2.0), c(0.0, 2.0)]
        );
    }

    #[test]
    fn contains_remark_segment() {
        let l = reals(&[-1.0, -1.0, 2.0]);
        let e = inscribed_ellipse(&l, c(6.0, 0.0), 3).unwrap();
        let r = contains_ellipse(&convex_hull(&l), &e, 1e-11);
        assert_eq!(r.verdict, Verdict::Contained);
        assert!((r.min_margin - (1.0 - 3f64.sqrt() / 2.0)).abs() < 1e-14);
        assert!((r.worst_direction.alpha() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn contains_circle_in_square() {
        let l = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        let e = inscribed_ellipse(&l, c(0.0, 0.0), 4).unwrap();
        let r = contains_ellipse(&convex_hull(&l), &e, 1e-11);
        assert_eq!(r.verdict, Verdict::Contained);
        assert_eq!(r.per_edge_margins.len(), 4);
        assert!((r.min_margin - (1.0 / SQRT_2 - 1.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn contains_tight_segment() {
        let l = reals(&[-1.0, 1.0]);
        let e = inscribed_ellipse(&l, c(2.0, 0.0), 2).unwrap();
        let r = contains_ellipse(&convex_hull(&l), &e, 1e-11);
        assert_eq!(r.verdict, Verdict::Contained);
        assert!(r.min_margin.abs() < 1e-15);
    }

    #[test]
    fn oversized_ellipse_is_violated() {
        let l = reals(&[-1.0, 1.0]);
        let mut e = inscribed_ellipse(&l, c(2.0, 0.0), 2).unwrap();
        e.semiminor = 0.1;
        let r = contains_ellipse(&convex_hull(&l), &e, 1e-11);
        assert_eq!(r.verdict, Verdict::Violated);
        assert!((r.min_margin + 0.1).abs() < 1e-15);

        let square = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        let mut e = inscribed_ellipse(&square, c(0.0, 0.0), 4).unwrap();
        e.semimajor = 0.8;
        e.semiminor = 0.8;
        assert_eq!(
            contains_ellipse(&convex_hull(&square), &e, 1e-11).verdict,
            Verdict::Violated
        );
    }

    #[test]
    fn point_hull() {
        let l = reals(&[3.0, 3.0]);
        let h = convex_hull(&l);
        let e = crate::ellipse::subset_ellipse(&l).unwrap();
        let r = contains_ellipse(&h, &e, 1e-11);
        assert_eq!(r.verdict, Verdict::Contained);
        assert_eq!(r.min_margin, 0.0);
        let moved = e.translate(c(0.0, 1e-3));
        assert_eq!(
            contains_ellipse(&h, &moved, 1e-11).verdict,
            Verdict::Violated
        );
    }

    #[test]
    fn nan_ellipse_is_degenerate() {
        let l = reals(&[-1.0, 1.0]);
        let mut e = inscribed_ellipse(&l, c(2.0, 0.0), 2).unwrap();
        e.semimajor = f64::NAN;
        assert_eq!(
            contains_ellipse(&convex_hull(&l), &e, 1e-11).verdict,
            Verdict::Degenerate
        );
    }

    #[test]
    fn directional_margin_examples() {
        let ns = normalize_mu(&reals(&[1.0, -1.0]), c(2.0, 0.0)).unwrap();
        let ax = axis_sums(&ns);
        let m = directional_margin(&ns, &ax, 2, Direction::new(1.0, 0.0).unwrap()).unwrap();
        assert!(m.abs() < 1e-15);
        let m = directional_margin(&ns, &ax, 2, Direction::new(0.0, 1.0).unwrap()).unwrap();
        assert_eq!(m, 0.0);

        let ns = normalize_mu(&reals(&[-1.0, -1.0, 2.0]), c(6.0, 0.0)).unwrap();
        let ax = axis_sums(&ns);
        let m = directional_margin(&ns, &ax, 3, Direction::new(1.0, 0.0).unwrap()).unwrap();
        assert!((m - (2.0 - 3f64.sqrt() / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn sweep_examples() {
        let ns = normalize_mu(&reals(&[1.0, -1.0]), c(2.0, 0.0)).unwrap();
        let ax = axis_sums(&ns);
        let m = sweep_margins(&ns, &ax, 2, 4).unwrap();
        assert_eq!(m.len(), 4);
        assert!(m.iter().all(|&x| x >= -1e-12));
        assert!(m.iter().all(|&x| x.abs() <= 1e-12));

        let ns = normalize_mu(&reals(&[-1.0, -1.0, 2.0]), c(6.0, 0.0)).unwrap();
        let ax = axis_sums(&ns);
        let m = sweep_margins(&ns, &ax, 3, 360).unwrap();
        assert!(m.iter().all(|&x| x >= 0.0));
        // Along the real axis the pinch is toward the clustered −1; the flat
        // directions θ = π/2, 3π/2 have both sides vanishing.
        assert!((m[180] - (1.0 - 3f64.sqrt() / 2.0)).abs() < 1e-14);
        assert!(m[180] < m[0]);
        assert!(m[90] < 1e-15 && m[270] < 1e-15);
    }

    #[test]
    #[should_panic]
    fn sweep_needs_four_directions() {
        let ns = normalize_mu(&reals(&[1.0, -1.0]), c(2.0, 0.0)).unwrap();
        let ax = axis_sums(&ns);
        let _ = sweep_margins(&ns, &ax, 2, 3);
    }
}
