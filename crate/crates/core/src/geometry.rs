//! Planar primitives shared by every construction: points, directions in
//! degrees, wedges, hulls, and the largest-convex-subset search.
//!
//! All orientation tests go through [`orientation`], which applies a relative
//! tolerance so that near-collinear triples are reported as `Straight` instead
//! of flipping sign with rounding noise. Angular comparisons work in degrees
//! throughout; [`Direction`] keeps its value normalised to `[0, 360)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for the sign of a 2×2 cross product.
pub(crate) const ORIENT_EPS: f64 = 1e-9;

/// Angular slack (degrees) for closed wedge membership during construction.
pub(crate) const ANGLE_TOL_DEG: f64 = 1e-9;

/// A point in the plane. Also used for free vectors (differences of points).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product; positive when `other` is
    /// counterclockwise from `self`.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Rotate about the origin by `deg` degrees counterclockwise.
    pub fn rotate_deg(self, deg: f64) -> Point {
        let (s, c) = deg.to_radians().sin_cos();
        Point::new(self.x * c - self.y * s, self.x * s + self.y * c)
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl std::ops::Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Turn sense of an ordered point triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Counterclockwise.
    Left,
    /// Clockwise.
    Right,
    Straight,
}

/// Orientation of the triple `a -> b -> c` with a relative tolerance: the
/// cross product is compared against `ORIENT_EPS` scaled by the operand
/// magnitudes, so the verdict is stable under coordinate scaling.
pub fn orientation(a: Point, b: Point, c: Point) -> Orientation {
    let u = b - a;
    let v = c - a;
    let cross = u.cross(v);
    let scale = (u.x.abs() + u.y.abs()) * (v.x.abs() + v.y.abs());
    let tol = ORIENT_EPS * scale;
    if cross > tol {
        Orientation::Left
    } else if cross < -tol {
        Orientation::Right
    } else {
        Orientation::Straight
    }
}

/// Counterclockwise angular distance from `a` to `b`, in `[0, 360)` degrees.
pub fn ccw_delta(a: f64, b: f64) -> f64 {
    (b - a).rem_euclid(360.0)
}

/// A direction in the plane, stored in degrees normalised to `[0, 360)`.
///
/// 0° points along +x and angles grow counterclockwise, matching `atan2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Direction(f64);

impl Direction {
    pub fn of_degrees(deg: f64) -> Direction {
        Direction(deg.rem_euclid(360.0))
    }

    /// Direction of a nonzero vector.
    pub fn of_vector(v: Point) -> Direction {
        debug_assert!(v.x != 0.0 || v.y != 0.0, "direction of zero vector");
        Direction::of_degrees(v.y.atan2(v.x).to_degrees())
    }

    pub fn degrees(self) -> f64 {
        self.0
    }

    pub fn rotate(self, deg: f64) -> Direction {
        Direction::of_degrees(self.0 + deg)
    }

    pub fn opposite(self) -> Direction {
        self.rotate(180.0)
    }

    /// Unit vector pointing this way.
    pub fn unit(self) -> Point {
        let (s, c) = self.0.to_radians().sin_cos();
        Point::new(c, s)
    }

    /// Counterclockwise angle from `self` to `other`, in `[0, 360)`.
    pub fn ccw_to(self, other: Direction) -> f64 {
        ccw_delta(self.0, other.0)
    }

    /// Signed length of `v` projected onto this direction.
    pub fn proj(self, v: Point) -> f64 {
        self.unit().dot(v)
    }
}

/// Smallest angular extent (degrees) of a closed wedge covering all the given
/// directions. Zero for fewer than two directions; can exceed 180.
///
/// The optimum always starts at one of the input directions, so this is a
/// min-over-anchors of max-over-members scan. Quadratic, but direction sets
/// here are path edge sets, which stay small.
pub fn minimal_cover_width(dirs: &[Direction]) -> f64 {
    if dirs.len() < 2 {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for anchor in dirs {
        let mut worst: f64 = 0.0;
        for d in dirs {
            worst = worst.max(anchor.ccw_to(*d));
        }
        best = best.min(worst);
    }
    best
}

/// A closed wedge: apex plus the angular interval `[start, start + extent]`
/// swept counterclockwise.
#[derive(Debug, Clone, Copy)]
pub struct Wedge {
    pub apex: Point,
    pub start: Direction,
    /// Angular extent in degrees, in `(0, 360)`.
    pub extent: f64,
}

impl Wedge {
    pub fn new(apex: Point, start: Direction, extent: f64) -> Wedge {
        debug_assert!(extent > 0.0 && extent < 360.0, "wedge extent {extent}");
        Wedge {
            apex,
            start,
            extent,
        }
    }

    pub fn end(&self) -> Direction {
        self.start.rotate(self.extent)
    }

    /// Bisector direction of the wedge.
    pub fn bisector(&self) -> Direction {
        self.start.rotate(self.extent / 2.0)
    }

    /// Closed membership test for a direction, with `tol` degrees of slack on
    /// both boundary rays.
    pub fn contains_dir_tol(&self, d: Direction, tol: f64) -> bool {
        let delta = self.start.ccw_to(d);
        // A delta just below 360 is a tiny clockwise step from `start`.
        delta <= self.extent + tol || delta >= 360.0 - tol
    }

    pub fn contains_dir(&self, d: Direction) -> bool {
        self.contains_dir_tol(d, ANGLE_TOL_DEG)
    }

    /// Whether `p` lies in the closed wedge. The apex itself has no
    /// direction, so querying it is an error rather than an arbitrary answer.
    pub fn contains(&self, p: Point) -> Result<bool> {
        if p == self.apex {
            return Err(Error::ApexQuery);
        }
        Ok(self.contains_dir(Direction::of_vector(p - self.apex)))
    }

    pub fn contains_tol(&self, p: Point, tol: f64) -> Result<bool> {
        if p == self.apex {
            return Err(Error::ApexQuery);
        }
        Ok(self.contains_dir_tol(Direction::of_vector(p - self.apex), tol))
    }
}

/// An infinite line through `origin` with direction vector `dir`.
#[derive(Debug, Clone, Copy)]
pub struct Line {
    pub origin: Point,
    pub dir: Point,
}

impl Line {
    pub fn new(origin: Point, dir: Point) -> Line {
        debug_assert!(dir.x != 0.0 || dir.y != 0.0, "line with zero direction");
        Line { origin, dir }
    }

    pub fn through(origin: Point, towards: Direction) -> Line {
        Line::new(origin, towards.unit())
    }

    /// Intersection point, or `None` for (near-)parallel lines.
    pub fn intersect(&self, other: &Line) -> Option<Point> {
        let denom = self.dir.cross(other.dir);
        let scale = (self.dir.x.abs() + self.dir.y.abs()) * (other.dir.x.abs() + other.dir.y.abs());
        if denom.abs() <= ORIENT_EPS * scale {
            return None;
        }
        let t = (other.origin - self.origin).cross(other.dir) / denom;
        Some(self.origin + self.dir * t)
    }
}

/// A polygonal path with no zero-length edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pts: Vec<Point>,
}

impl Polyline {
    pub fn new(pts: Vec<Point>) -> Result<Polyline> {
        if pts.is_empty() {
            return Err(Error::EmptyInput {
                msg: "polyline needs at least one point".into(),
            });
        }
        for (i, p) in pts.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinitePoint { index: i });
            }
        }
        if let Some(i) = pts.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint {
                first: i,
                second: i + 1,
                x: pts[i].x,
                y: pts[i].y,
            });
        }
        Ok(Polyline { pts })
    }

    pub fn points(&self) -> &[Point] {
        &self.pts
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one point
    }

    pub fn reversed(&self) -> Polyline {
        let mut pts = self.pts.clone();
        pts.reverse();
        Polyline { pts }
    }

    /// Directions of the edges, in path order. Empty for a single point.
    pub fn edge_directions(&self) -> Vec<Direction> {
        self.pts
            .windows(2)
            .map(|w| Direction::of_vector(w[1] - w[0]))
            .collect()
    }

    /// Width of the path: the smallest closed wedge extent containing every
    /// edge direction. A single point or single edge has width 0.
    pub fn width_deg(&self) -> f64 {
        minimal_cover_width(&self.edge_directions())
    }
}

/// Strict convex hull in clockwise order, starting from the lexicographically
/// smallest point (by `(x, y)`). Returns indices into `points`. Collinear
/// points interior to hull edges are dropped, so every reported vertex is a
/// proper corner. Assumes distinct points.
pub fn convex_hull(points: &[Point]) -> Vec<usize> {
    let n = points.len();
    if n <= 2 {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| {
            (points[a].x, points[a].y)
                .partial_cmp(&(points[b].x, points[b].y))
                .unwrap()
        });
        return idx;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        (points[a].x, points[a].y)
            .partial_cmp(&(points[b].x, points[b].y))
            .unwrap()
    });

    // Upper chain left-to-right then lower chain right-to-left, each keeping
    // strictly clockwise turns, gives the hull in clockwise order.
    let chain = |iter: &mut dyn Iterator<Item = usize>| -> Vec<usize> {
        let mut h: Vec<usize> = Vec::new();
        for i in iter {
            while h.len() >= 2
                && orientation(points[h[h.len() - 2]], points[h[h.len() - 1]], points[i])
                    != Orientation::Right
            {
                h.pop();
            }
            h.push(i);
        }
        h
    };
    let upper = chain(&mut order.iter().copied());
    let lower = chain(&mut order.iter().rev().copied());

    let mut hull = upper;
    hull.pop();
    hull.extend_from_slice(&lower[..lower.len() - 1]);
    hull
}

/// Largest subset of `points` in strictly convex position, returned as
/// indices in clockwise polygon order starting at the subset's bottom vertex
/// (minimum `(y, x)`).
///
/// Classic cubic-per-anchor dynamic program: fix the bottom vertex `b`, sort
/// the points above it by angle around `b`, and extend counterclockwise
/// chains of strict left turns. Quartic overall, which is fine at the input
/// sizes used here. Ties are broken towards lower indices so repeated runs
/// are identical.
///
/// Degenerate inputs (all points collinear) yield the two lexicographically
/// smallest points; a single point yields itself.
pub fn largest_convex_subset(points: &[Point]) -> Vec<usize> {
    let n = points.len();
    if n <= 2 {
        return (0..n).collect();
    }

    let mut best: Vec<usize> = Vec::new();
    for b in 0..n {
        let chain = largest_convex_with_bottom(points, b);
        if chain.len() > best.len() {
            best = chain;
        }
    }

    if best.len() >= 3 {
        return best;
    }
    // No strictly convex triple exists; fall back to the two lexicographically
    // smallest points.
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| {
        (points[a].x, points[a].y)
            .partial_cmp(&(points[b].x, points[b].y))
            .unwrap()
    });
    idx.truncate(2);
    idx
}

/// Largest strictly convex polygon whose minimum-`(y, x)` vertex is
/// `points[b]`, clockwise order starting at `b`. Empty result when no such
/// polygon with at least 3 vertices exists.
fn largest_convex_with_bottom(points: &[Point], b: usize) -> Vec<usize> {
    let pb = points[b];
    // Candidates must sit strictly above `b` in (y, x) order, so their
    // directions from `b` lie in [0°, 180°).
    let mut cand: Vec<usize> = (0..points.len())
        .filter(|&i| i != b && (points[i].y, points[i].x) > (pb.y, pb.x))
        .collect();
    if cand.len() < 2 {
        return Vec::new();
    }
    cand.sort_by(|&i, &j| {
        let u = points[i] - pb;
        let v = points[j] - pb;
        let ai = u.y.atan2(u.x);
        let aj = v.y.atan2(v.x);
        ai.total_cmp(&aj)
            .then_with(|| u.dot(u).total_cmp(&v.dot(v)))
    });

    let m = cand.len();
    // dp[j][i]: most candidate vertices on a counterclockwise chain
    // b -> … -> cand[j] -> cand[i] with strict left turns throughout.
    let mut dp = vec![vec![0u32; m]; m];
    let mut parent = vec![vec![usize::MAX; m]; m];
    for j in 0..m {
        for i in (j + 1)..m {
            let (pj, pi) = (points[cand[j]], points[cand[i]]);
            if orientation(pb, pj, pi) == Orientation::Left {
                dp[j][i] = 2;
            }
            for h in 0..j {
                if dp[h][j] >= 2
                    && dp[h][j] + 1 > dp[j][i]
                    && orientation(points[cand[h]], pj, pi) == Orientation::Left
                {
                    dp[j][i] = dp[h][j] + 1;
                    parent[j][i] = h;
                }
            }
        }
    }

    // Close the polygon: the final turn cand[j] -> cand[i] -> b must also be
    // a strict left; the turn at b itself is then automatic because the chain
    // spans less than a half-turn of angles around b.
    let mut best_len = 0u32;
    let mut best_pair = None;
    for j in 0..m {
        for i in (j + 1)..m {
            if dp[j][i] > best_len
                && orientation(points[cand[j]], points[cand[i]], pb) == Orientation::Left
            {
                best_len = dp[j][i];
                best_pair = Some((j, i));
            }
        }
    }
    let Some((mut j, mut i)) = best_pair else {
        return Vec::new();
    };

    // Walk parents to recover the counterclockwise chain, then flip to the
    // clockwise convention used by the hull code.
    let mut ccw = vec![cand[i]];
    while j != usize::MAX {
        ccw.push(cand[j]);
        let h = parent[j][i];
        i = j;
        j = h;
    }
    ccw.push(b);
    // ccw is currently b-last in reverse chain order, so it already reads
    // clockwise once rotated to start at b.
    ccw.rotate_right(1);
    debug_assert_eq!(ccw[0], b);
    ccw
}
