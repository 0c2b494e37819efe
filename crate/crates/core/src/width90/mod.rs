//! Spanning constructions whose paths stay within a 90° direction window.
//!
//! The building blocks pair up monotone and convex chains
//! ([`build_monotone_pair`], [`build_convex_fan`], [`build_same_bend`],
//! [`build_opposite_bend`]) or span structured point sets directly
//! ([`build_one_sided`], [`build_convex_recursive`]). [`build_width90`]
//! assembles them for arbitrary point sets by partitioning into convex
//! subsets, decomposing each into at most four classified hull chains, and
//! reducing every chain pair to one of the blocks by axis reflections.
//! [`build_sqrt`] trades edges for guarantees the other way: a marked-clique
//! scheme whose paths stay within 90° + α and whose hop diameter is at
//! most 2.

mod convex;
mod pairs;

pub use convex::{build_convex_recursive, build_one_sided};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::{
    convex_hull, largest_convex_subset, orientation, Orientation, Point, Polyline,
};
use crate::graph::GeometricGraph;

/// Monotonicity-plus-curvature tag of a polygonal path.
///
/// `Xy` families rise (both coordinates strictly increase along the path),
/// `XNegY` families fall (x increases, y decreases). Convex paths keep a
/// uniform strict turn toward the curve's bulge: a rising path turning
/// counterclockwise or a falling path turning clockwise. Paths monotone in
/// one orientation but with mixed or degenerate turns keep the plain
/// monotone tag; everything else is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathClass {
    XyMonotone,
    XNegYMonotone,
    XyConvex,
    XNegYConvex,
    XyConcave,
    XNegYConcave,
    None,
}

impl PathClass {
    /// Both coordinates increase along the path.
    pub fn rising(self) -> bool {
        matches!(
            self,
            PathClass::XyMonotone | PathClass::XyConvex | PathClass::XyConcave
        )
    }

    /// X increases while y decreases along the path.
    pub fn falling(self) -> bool {
        matches!(
            self,
            PathClass::XNegYMonotone | PathClass::XNegYConvex | PathClass::XNegYConcave
        )
    }
}

/// Most specific [`PathClass`] tag of the vertex sequence, orientation
/// normalised so reversing a path never changes its tag.
pub fn classify_path(points: &[Point]) -> PathClass {
    if points.len() < 2 {
        return PathClass::None;
    }
    let inc = points.windows(2).all(|w| w[0].x < w[1].x);
    let dec = points.windows(2).all(|w| w[0].x > w[1].x);
    if !inc && !dec {
        return PathClass::None;
    }
    let p: Vec<Point> = if inc {
        points.to_vec()
    } else {
        points.iter().rev().copied().collect()
    };
    let rising = p.windows(2).all(|w| w[0].y < w[1].y);
    let falling = p.windows(2).all(|w| w[0].y > w[1].y);
    if !rising && !falling {
        return PathClass::None;
    }
    let mut right = p.len() >= 3;
    let mut left = p.len() >= 3;
    for w in p.windows(3) {
        match orientation(w[0], w[1], w[2]) {
            Orientation::Right => left = false,
            Orientation::Left => right = false,
            Orientation::Straight => {
                left = false;
                right = false;
            }
        }
    }
    match (rising, right, left) {
        (true, _, true) => PathClass::XyConvex,
        (true, true, _) => PathClass::XyConcave,
        (true, _, _) => PathClass::XyMonotone,
        (false, true, _) => PathClass::XNegYConvex,
        (false, _, true) => PathClass::XNegYConcave,
        (false, _, _) => PathClass::XNegYMonotone,
    }
}

/// A polyline together with its verified [`PathClass`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifiedPath {
    line: Polyline,
    class: PathClass,
}

impl ClassifiedPath {
    /// Wraps the vertex sequence, deriving the class tag from the points
    /// themselves so it can never disagree with re-classification.
    pub fn new(points: Vec<Point>) -> Result<ClassifiedPath> {
        let line = Polyline::new(points)?;
        let class = classify_path(line.points());
        Ok(ClassifiedPath { line, class })
    }

    pub fn from_polyline(line: Polyline) -> ClassifiedPath {
        let class = classify_path(line.points());
        ClassifiedPath { line, class }
    }

    pub fn points(&self) -> &[Point] {
        self.line.points()
    }

    pub fn polyline(&self) -> &Polyline {
        &self.line
    }

    pub fn class(&self) -> PathClass {
        self.class
    }
}

/// Disjoint cover of a point set by strictly convex subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexPartition {
    subsets: Vec<Vec<usize>>,
}

impl ConvexPartition {
    /// Subsets as index lists into the original point slice, each in
    /// clockwise polygon order.
    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn into_subsets(self) -> Vec<Vec<usize>> {
        self.subsets
    }
}

fn falling_role(p: &ClassifiedPath) -> bool {
    p.points().len() == 1 || p.class().falling()
}

fn rising_role(p: &ClassifiedPath) -> bool {
    p.points().len() == 1 || p.class().rising()
}

fn convex_falling_role(p: &ClassifiedPath) -> bool {
    p.points().len() == 1 || matches!(p.class(), PathClass::XNegYConvex | PathClass::XNegYMonotone)
}

fn concave_falling_role(p: &ClassifiedPath) -> bool {
    p.points().len() == 1
        || matches!(
            p.class(),
            PathClass::XNegYConcave | PathClass::XNegYMonotone
        )
}

/// Merges point groups into one array, collapsing exactly coincident points
/// (shared chain endpoints) onto a single vertex id.
fn merged_ids(groups: &[&[Point]]) -> (Vec<Point>, Vec<Vec<usize>>) {
    let mut pts: Vec<Point> = Vec::new();
    let mut ids = Vec::with_capacity(groups.len());
    for group in groups {
        let mut row = Vec::with_capacity(group.len());
        for &p in *group {
            let id = pts.iter().position(|&q| q == p).unwrap_or_else(|| {
                pts.push(p);
                pts.len() - 1
            });
            row.push(id);
        }
        ids.push(row);
    }
    (pts, ids)
}

fn graph_from(pts: Vec<Point>, edges: Vec<(usize, usize)>) -> Result<GeometricGraph> {
    let mut g = GeometricGraph::new(pts)?;
    for (u, v) in edges {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Spanning graph for a falling chain paired with a rising chain: both
/// chains' edges plus the four-quadrant sweep edges around their (possibly
/// virtual) crossing. Every cross pair gets a path of width at most 90°.
pub fn build_monotone_pair(
    falling: &ClassifiedPath,
    rising: &ClassifiedPath,
) -> Result<GeometricGraph> {
    if !falling_role(falling) || !rising_role(rising) {
        return Err(Error::ClassMismatch {
            msg: format!(
                "need a falling and a rising chain, got {:?} and {:?}",
                falling.class(),
                rising.class()
            ),
        });
    }
    let (pts, ids) = merged_ids(&[falling.points(), rising.points()]);
    let edges = pairs::monotone_pair_edges(&pts, &ids[0], &ids[1]);
    graph_from(pts, edges)
}

/// Spanning graph for a falling convex chain and satellite points inside the
/// region above it (bounded by the leftward ray at the chain head and the
/// downward ray at its tail). Each satellite is connected in two
/// perpendicular-spoke sweeps; total edges stay within `i + 2j`.
pub fn build_convex_fan(path: &ClassifiedPath, satellites: &[Point]) -> Result<GeometricGraph> {
    if !convex_falling_role(path) {
        return Err(Error::ClassMismatch {
            msg: format!(
                "fan chain must be falling and convex, got {:?}",
                path.class()
            ),
        });
    }
    let chain_ids: Vec<usize> = (0..path.points().len()).collect();
    for (index, w) in satellites.iter().enumerate() {
        if !pairs::fan_region_contains(path.points(), &chain_ids, *w) {
            return Err(Error::OutsideRegion {
                index,
                msg: format!(
                    "satellite {index} at ({}, {}) lies below the chain's region",
                    w.x, w.y
                ),
            });
        }
    }
    let (pts, ids) = merged_ids(&[path.points(), satellites]);
    let edges = pairs::fan_edges(&pts, &ids[0], &ids[1]);
    graph_from(pts, edges)
}

/// Spanning graph for two falling chains bending the same way (both convex
/// or both concave).
pub fn build_same_bend(first: &ClassifiedPath, second: &ClassifiedPath) -> Result<GeometricGraph> {
    let concave = if convex_falling_role(first) && convex_falling_role(second) {
        false
    } else if concave_falling_role(first) && concave_falling_role(second) {
        true
    } else {
        return Err(Error::ClassMismatch {
            msg: format!(
                "need two falling chains of equal curvature, got {:?} and {:?}",
                first.class(),
                second.class()
            ),
        });
    };
    let (pts, ids) = merged_ids(&[first.points(), second.points()]);
    let edges = pairs::same_bend_edges(&pts, &ids[0], &ids[1], concave);
    graph_from(pts, edges)
}

/// Spanning graph for a falling convex chain paired with a falling concave
/// chain. Vertices between the two crossings of the extended curves get the
/// recursive convex-position graph; the rest is fanned from each chain.
pub fn build_opposite_bend(
    convex: &ClassifiedPath,
    concave: &ClassifiedPath,
) -> Result<GeometricGraph> {
    if !convex_falling_role(convex) || !concave_falling_role(concave) {
        return Err(Error::ClassMismatch {
            msg: format!(
                "need a falling convex and a falling concave chain, got {:?} and {:?}",
                convex.class(),
                concave.class()
            ),
        });
    }
    let (pts, ids) = merged_ids(&[convex.points(), concave.points()]);
    let edges = pairs::opposite_bend_edges(&pts, &ids[0], &ids[1]);
    graph_from(pts, edges)
}

/// Greedy disjoint cover by repeatedly extracting the largest subset in
/// strictly convex position.
pub fn partition_convex_subsets(points: &[Point]) -> Result<ConvexPartition> {
    if points.is_empty() {
        return Err(Error::EmptyInput {
            msg: "cannot partition zero points".into(),
        });
    }
    GeometricGraph::new(points.to_vec())?; // distinctness + finiteness
    Ok(ConvexPartition {
        subsets: convex_partition_ids(points),
    })
}

fn convex_partition_ids(pts: &[Point]) -> Vec<Vec<usize>> {
    let mut remaining: Vec<usize> = (0..pts.len()).collect();
    let mut out = Vec::new();
    while !remaining.is_empty() {
        let sub_pts: Vec<Point> = remaining.iter().map(|&i| pts[i]).collect();
        let chosen: Vec<usize> = largest_convex_subset(&sub_pts)
            .into_iter()
            .map(|i| remaining[i])
            .collect();
        let taken: BTreeSet<usize> = chosen.iter().copied().collect();
        remaining.retain(|i| !taken.contains(i));
        out.push(chosen);
    }
    out
}

/// Splits a strictly convex point set into at most four hull chains, cut at
/// the extreme points (min-x, max-y, max-x, min-y; ties broken toward the
/// clockwise-earlier corner). Adjacent chains share their extreme vertex.
pub fn decompose_four_paths(points: &[Point]) -> Result<Vec<ClassifiedPath>> {
    if points.is_empty() {
        return Err(Error::EmptyInput {
            msg: "cannot decompose zero points".into(),
        });
    }
    GeometricGraph::new(points.to_vec())?;
    if points.len() >= 3 {
        let hull = convex_hull(points);
        if hull.len() != points.len() {
            return Err(Error::NotConvexPosition {
                msg: format!(
                    "{} of {} points are hull corners; decomposition needs strictly convex input",
                    hull.len(),
                    points.len()
                ),
            });
        }
    }
    let ids: Vec<usize> = (0..points.len()).collect();
    decompose_chain_ids(points, &ids)
        .into_iter()
        .filter(|c| !c.is_empty())
        .map(|c| ClassifiedPath::new(c.into_iter().map(|i| points[i]).collect()))
        .collect()
}

/// Hull chains between the four extreme points, as index lists. Order:
/// rising toward max-y, falling to max-x, rising from min-y (reversed
/// clockwise walk), falling back to min-x (ditto). Extremes are shared.
fn decompose_chain_ids(pts: &[Point], sub: &[usize]) -> [Vec<usize>; 4] {
    if sub.len() == 1 {
        return [vec![sub[0]], Vec::new(), Vec::new(), Vec::new()];
    }
    let sub_pts: Vec<Point> = sub.iter().map(|&i| pts[i]).collect();
    let hull: Vec<usize> = convex_hull(&sub_pts).into_iter().map(|i| sub[i]).collect();

    // (y, then smaller-x-wins) comparator shared by the top and bottom
    // extremes; lexicographic (x, y) for the left and right ones.
    let vertical = |&a: &usize, &b: &usize| {
        pts[a]
            .y
            .total_cmp(&pts[b].y)
            .then(pts[b].x.total_cmp(&pts[a].x))
    };
    let horizontal = |&a: &usize, &b: &usize| {
        pts[a]
            .x
            .total_cmp(&pts[b].x)
            .then(pts[a].y.total_cmp(&pts[b].y))
    };
    let minx = *hull
        .iter()
        .min_by(|a, b| horizontal(a, b))
        .expect("non-empty");
    let maxx = *hull
        .iter()
        .max_by(|a, b| horizontal(a, b))
        .expect("non-empty");
    let maxy = *hull
        .iter()
        .max_by(|a, b| vertical(a, b))
        .expect("non-empty");
    let miny = *hull
        .iter()
        .min_by(|a, b| vertical(a, b))
        .expect("non-empty");
    let pos = |v: usize| hull.iter().position(|&h| h == v).expect("hull member");

    let walk = |from: usize, to: usize| -> Vec<usize> {
        let k = hull.len();
        let mut out = vec![hull[from]];
        let mut i = from;
        while i != to {
            i = (i + 1) % k;
            out.push(hull[i]);
        }
        out
    };
    let c1 = walk(pos(minx), pos(maxy));
    let c2 = walk(pos(maxy), pos(maxx));
    let mut c3 = walk(pos(maxx), pos(miny));
    c3.reverse();
    let mut c4 = walk(pos(miny), pos(minx));
    c4.reverse();
    [c1, c2, c3, c4]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    RisingConcave,
    FallingConvex,
    RisingConvex,
    FallingConcave,
    Single,
}

impl Role {
    fn falling(self) -> bool {
        matches!(self, Role::FallingConvex | Role::FallingConcave)
    }

    fn convex(self) -> bool {
        matches!(self, Role::FallingConvex | Role::RisingConvex)
    }
}

/// Classified hull chains of one convex subset, with collapsed duplicates
/// dropped and single-vertex chains downgraded to the wildcard role.
fn subset_chains(pts: &[Point], sub: &[usize]) -> Vec<(Vec<usize>, Role)> {
    let roles = [
        Role::RisingConcave,
        Role::FallingConvex,
        Role::RisingConvex,
        Role::FallingConcave,
    ];
    let mut out: Vec<(Vec<usize>, Role)> = Vec::new();
    for (chain, role) in decompose_chain_ids(pts, sub).into_iter().zip(roles) {
        if chain.is_empty() || out.iter().any(|(c, _)| *c == chain) {
            continue;
        }
        let role = if chain.len() == 1 { Role::Single } else { role };
        out.push((chain, role));
    }
    out
}

/// Edges joining two classified chains, reduced to one of the pairwise
/// constructions. Rising/rising pairs run in y-reflected coordinates, where
/// curvature tags carry over unchanged; singles act as whichever monotone
/// role their partner needs.
fn chain_pair_edges(
    pts: &[Point],
    reflected: &[Point],
    a: &(Vec<usize>, Role),
    b: &(Vec<usize>, Role),
) -> Vec<(usize, usize)> {
    let (ai, ar) = (&a.0, a.1);
    let (bi, br) = (&b.0, b.1);
    match (ar, br) {
        (Role::Single, Role::Single) => pairs::monotone_pair_edges(pts, ai, bi),
        (Role::Single, r) if r.falling() => pairs::monotone_pair_edges(pts, bi, ai),
        (Role::Single, _) => pairs::monotone_pair_edges(pts, ai, bi),
        (r, Role::Single) if r.falling() => pairs::monotone_pair_edges(pts, ai, bi),
        (_, Role::Single) => pairs::monotone_pair_edges(pts, bi, ai),
        _ if ar.falling() != br.falling() => {
            if ar.falling() {
                pairs::monotone_pair_edges(pts, ai, bi)
            } else {
                pairs::monotone_pair_edges(pts, bi, ai)
            }
        }
        _ => {
            let space = if ar.falling() { pts } else { reflected };
            match (ar.convex(), br.convex()) {
                (true, true) => pairs::same_bend_edges(space, ai, bi, false),
                (false, false) => pairs::same_bend_edges(space, ai, bi, true),
                (true, false) => pairs::opposite_bend_edges(space, ai, bi),
                (false, true) => pairs::opposite_bend_edges(space, bi, ai),
            }
        }
    }
}

/// Rotates the input by multiples of 0.37° until no two points share an x or
/// y coordinate, so every sweep and strict-monotonicity argument applies.
fn general_position(pts: &[Point]) -> Result<Vec<Point>> {
    for k in 0..974u32 {
        let cand = if k == 0 {
            pts.to_vec()
        } else {
            let (s, c) = (0.37 * f64::from(k)).to_radians().sin_cos();
            pts.iter()
                .map(|p| Point::new(c * p.x - s * p.y, s * p.x + c * p.y))
                .collect()
        };
        if !coordinate_collision(&cand) {
            return Ok(cand);
        }
    }
    Err(Error::Degenerate {
        msg: "no axis rotation separates all point coordinates".into(),
    })
}

fn coordinate_collision(pts: &[Point]) -> bool {
    let mut xs: Vec<f64> = pts.iter().map(|p| p.x).collect();
    let mut ys: Vec<f64> = pts.iter().map(|p| p.y).collect();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let span = (xs[xs.len() - 1] - xs[0])
        .max(ys[ys.len() - 1] - ys[0])
        .max(1.0);
    let tol = 1e-12 * span;
    xs.windows(2).any(|w| w[1] - w[0] <= tol) || ys.windows(2).any(|w| w[1] - w[0] <= tol)
}

/// Width-90° spanning graph for an arbitrary distinct point set.
///
/// Pipeline: nudge the axes until coordinates are pairwise distinct,
/// partition into strictly convex subsets, decompose each subset into at
/// most four classified hull chains, then join every chain pair (within and
/// across subsets) through the pairwise constructions. Edges are emitted on
/// the original, unrotated points; widths are rotation-invariant.
pub fn build_width90(points: &[Point]) -> Result<GeometricGraph> {
    let g = GeometricGraph::new(points.to_vec())?;
    if points.is_empty() {
        return Err(Error::EmptyInput {
            msg: "width-90 construction needs at least one point".into(),
        });
    }
    if points.len() == 1 {
        return Ok(g);
    }
    let work = general_position(points)?;
    let mut chains: Vec<(Vec<usize>, Role)> = Vec::new();
    for sub in convex_partition_ids(&work) {
        chains.extend(subset_chains(&work, &sub));
    }
    let reflected: Vec<Point> = work.iter().map(|p| Point::new(p.x, -p.y)).collect();

    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (chain, _) in &chains {
        for w in chain.windows(2) {
            edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    for i in 0..chains.len() {
        for j in (i + 1)..chains.len() {
            for (u, v) in chain_pair_edges(&work, &reflected, &chains[i], &chains[j]) {
                if u != v {
                    edges.insert((u.min(v), u.max(v)));
                }
            }
        }
    }
    let mut g = g;
    for (u, v) in edges {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

fn unit_vec(deg: f64) -> Point {
    let (s, c) = deg.to_radians().sin_cos();
    Point::new(c, s)
}

/// Marked-clique construction with wedge half-angle `alpha_deg`: repeatedly
/// mark ⌈√m⌉ of the m remaining points, add a clique on the marked round,
/// and connect every remaining point to its projection-nearest marked
/// neighbour in each of its 360/(2α) wedges. Paths stay within 90° + α and
/// the hop diameter is at most 2.
pub fn build_sqrt(points: &[Point], alpha_deg: f64) -> Result<GeometricGraph> {
    if !alpha_deg.is_finite() || alpha_deg <= 0.0 || alpha_deg > 90.0 {
        return Err(Error::InvalidConfig {
            msg: format!("wedge half-angle must be in (0, 90], got {alpha_deg}"),
        });
    }
    let wedges_f = 180.0 / alpha_deg;
    let wedges = wedges_f.round();
    if (wedges_f - wedges).abs() > 1e-9 {
        return Err(Error::InvalidConfig {
            msg: format!("360/(2·{alpha_deg}) = {wedges_f} is not an integer wedge count"),
        });
    }
    let wedges = wedges as usize;
    let width = 2.0 * alpha_deg;

    let mut g = GeometricGraph::new(points.to_vec())?;
    let mut unmarked: Vec<usize> = (0..points.len()).collect();
    while !unmarked.is_empty() {
        let take = ((unmarked.len() as f64).sqrt().ceil() as usize).clamp(1, unmarked.len());
        let (round, rest) = unmarked.split_at(take);
        for (i, &u) in round.iter().enumerate() {
            for &v in &round[i + 1..] {
                g.add_edge(u, v)?;
            }
        }
        for &q in rest {
            let mut best: Vec<Option<(f64, usize)>> = vec![None; wedges];
            for &r in round {
                let d = points[r] - points[q];
                let angle = d.y.atan2(d.x).to_degrees().rem_euclid(360.0);
                let k = ((angle / width).floor() as usize).min(wedges - 1);
                let proj = d.dot(unit_vec((k as f64 + 0.5) * width));
                if best[k].is_none_or(|(p, _)| proj < p) {
                    best[k] = Some((proj, r));
                }
            }
            for (_, r) in best.into_iter().flatten() {
                g.add_edge(q, r)?;
            }
        }
        unmarked = rest.to_vec();
    }
    Ok(g)
}
