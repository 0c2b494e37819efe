//! Edge constructions that join two monotone or convex paths (or a convex
//! path and a set of satellite points) so every cross pair gets a path of
//! width at most 90°.
//!
//! Everything here is index-based: functions take one shared point array plus
//! index chains into it and return undirected edges as index pairs. The
//! public, class-checked wrappers live in the parent module.

use std::collections::BTreeSet;

use crate::geometry::{convex_hull, Line, Point};

/// Relative tolerance for the closed-region membership tests.
const REGION_TOL: f64 = 1e-9;

type EdgeSet = BTreeSet<(usize, usize)>;

fn push_edge(out: &mut EdgeSet, u: usize, v: usize) {
    if u != v {
        out.insert((u.min(v), u.max(v)));
    }
}

fn add_path_edges(out: &mut EdgeSet, chain: &[usize]) {
    for w in chain.windows(2) {
        push_edge(out, w[0], w[1]);
    }
}

/// Chain reordered so `pts[chain[i]].x` increases along it.
fn x_increasing(pts: &[Point], chain: &[usize]) -> Vec<usize> {
    let mut c = chain.to_vec();
    if c.len() >= 2 && pts[c[c.len() - 1]].x < pts[c[0]].x {
        c.reverse();
    }
    c
}

fn span_of(points: impl Iterator<Item = Point>) -> f64 {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (hi.x - lo.x).max(hi.y - lo.y).max(1.0)
}

/// Piecewise-linear height of an x-increasing vertex sequence at `x`, which
/// must lie within the sequence's x-range.
fn eval_seq(seq: &[Point], x: f64) -> f64 {
    if seq.len() == 1 || x <= seq[0].x {
        return seq[0].y;
    }
    for w in seq.windows(2) {
        if x <= w[1].x {
            let t = if w[1].x > w[0].x {
                (x - w[0].x) / (w[1].x - w[0].x)
            } else {
                0.0
            };
            return w[0].y + t * (w[1].y - w[0].y);
        }
    }
    seq[seq.len() - 1].y
}

fn seg_at(seq: &[Point], x: f64) -> (Point, Point) {
    for w in seq.windows(2) {
        if x <= w[1].x {
            return (w[0], w[1]);
        }
    }
    (seq[seq.len() - 2], seq[seq.len() - 1])
}

/// Vertex sequence of `chain` extended by two far-away virtual corners, so
/// the extended curve spans every x and keeps its monotonicity family.
fn extended_seq(pts: &[Point], chain: &[usize], falling: bool) -> Vec<Point> {
    let span = span_of(chain.iter().map(|&i| pts[i]));
    let big = 4.0 * span + 1.0;
    let first = pts[chain[0]];
    let last = pts[chain[chain.len() - 1]];
    let mut seq = Vec::with_capacity(chain.len() + 2);
    if falling {
        seq.push(Point::new(first.x - big, first.y + big));
    } else {
        seq.push(Point::new(first.x - big, first.y - big));
    }
    seq.extend(chain.iter().map(|&i| pts[i]));
    if falling {
        seq.push(Point::new(last.x + big, last.y - big));
    } else {
        seq.push(Point::new(last.x + big, last.y + big));
    }
    seq
}

/// Crossing point of a falling and a rising chain after virtual extension.
/// The height difference is strictly decreasing in x, so a unique sign change
/// exists; the crossing is taken inside the bracketing breakpoint interval.
fn crossing_point(pts: &[Point], falling: &[usize], rising: &[usize]) -> Point {
    let f = extended_seq(pts, falling, true);
    let r = extended_seq(pts, rising, false);
    let mut xs: Vec<f64> = f.iter().chain(r.iter()).map(|p| p.x).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let mut prev = xs[0];
    for &x in &xs[1..] {
        let d = eval_seq(&f, x) - eval_seq(&r, x);
        if d <= 0.0 {
            let mid = 0.5 * (prev + x);
            let (f0, f1) = seg_at(&f, mid);
            let (r0, r1) = seg_at(&r, mid);
            let lf = Line::new(f0, f1 - f0);
            let lr = Line::new(r0, r1 - r0);
            if let Some(o) = lf.intersect(&lr) {
                return o;
            }
            // Parallel bracketing segments: both flat, heights already equal.
            return Point::new(x, eval_seq(&f, x));
        }
        prev = x;
    }
    // Unreachable for genuinely monotone chains; the virtual corners force a
    // sign change. Fall back to the last breakpoint.
    let x = xs[xs.len() - 1];
    Point::new(x, eval_seq(&f, x))
}

/// One sweep over two x-increasing chains: an initial edge between the chain
/// heads, then every vertex connects to the other chain's most recently
/// passed vertex. Vertices are visited in x order, ties by lower index.
fn left_sweep(pts: &[Point], a: &[usize], b: &[usize]) -> Vec<(usize, usize)> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![(a[0], b[0])];
    let mut events: Vec<(f64, usize, bool)> = a
        .iter()
        .map(|&i| (pts[i].x, i, true))
        .chain(b.iter().map(|&i| (pts[i].x, i, false)))
        .collect();
    events.sort_by(|l, r| l.0.total_cmp(&r.0).then(l.1.cmp(&r.1)));
    let (mut last_a, mut last_b) = (None, None);
    for (_, i, from_a) in events {
        let partner = if from_a { last_b } else { last_a };
        if let Some(j) = partner {
            out.push((i, j));
        }
        if from_a {
            last_a = Some(i);
        } else {
            last_b = Some(i);
        }
    }
    out
}

/// Spanning edges for a falling chain paired with a rising chain.
///
/// The two extended chains cross once at `o`. Each of the four half-planes
/// around `o` (left/right of the vertical, above/below the horizontal) is
/// mapped onto the canonical left-sweep by a sign or coordinate swap, and the
/// sweep edges of all four subproblems are unioned with both chains' edges.
pub(super) fn monotone_pair_edges(
    pts: &[Point],
    falling: &[usize],
    rising: &[usize],
) -> Vec<(usize, usize)> {
    let f = x_increasing(pts, falling);
    let r = x_increasing(pts, rising);
    let mut out = EdgeSet::new();
    add_path_edges(&mut out, &f);
    add_path_edges(&mut out, &r);
    if f.is_empty() || r.is_empty() {
        return out.into_iter().collect();
    }

    let o = crossing_point(pts, &f, &r);
    let transforms: [fn(Point) -> Point; 4] = [
        |p| p,                      // strictly left of o
        |p| Point::new(-p.x, -p.y), // strictly right
        |p| Point::new(-p.y, -p.x), // strictly above
        |p| Point::new(p.y, p.x),   // strictly below
    ];
    for tf in transforms {
        let tp: Vec<Point> = pts.iter().map(|&p| tf(p)).collect();
        let cut = tf(o).x;
        let fs = side_chain(&tp, &f, cut);
        let rs = side_chain(&tp, &r, cut);
        for (u, v) in left_sweep(&tp, &fs, &rs) {
            push_edge(&mut out, u, v);
        }
    }
    out.into_iter().collect()
}

fn side_chain(tp: &[Point], chain: &[usize], cut: f64) -> Vec<usize> {
    let mut sub: Vec<usize> = chain.iter().copied().filter(|&i| tp[i].x < cut).collect();
    sub.sort_by(|&a, &b| tp[a].x.total_cmp(&tp[b].x).then(a.cmp(&b)));
    sub
}

/// Closed membership test for the region above a falling convex chain,
/// bounded by the leftward ray at its first vertex and the downward ray at
/// its last.
pub(super) fn fan_region_contains(pts: &[Point], path: &[usize], w: Point) -> bool {
    let p = x_increasing(pts, path);
    let tol = REGION_TOL * span_of(p.iter().map(|&i| pts[i]).chain([w]));
    let first = pts[p[0]];
    let last = pts[p[p.len() - 1]];
    if w.x >= last.x - tol {
        return true;
    }
    if w.x <= first.x {
        return w.y >= first.y - tol;
    }
    let seq: Vec<Point> = p.iter().map(|&i| pts[i]).collect();
    w.y >= eval_seq(&seq, w.x) - tol
}

/// Forward half of the fan: each satellite connects to the chain vertex whose
/// perpendicular spoke it has passed. Spoke `k` sits at vertex `k`,
/// perpendicular to the incoming chain edge (vertical-up at the head), and a
/// satellite is assigned to the largest `k` whose spoke it is on or clockwise
/// of.
fn fan_half(pts: &[Point], path: &[usize], cloud: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    'cloud: for &w in cloud {
        let wp = pts[w];
        for k in (0..path.len()).rev() {
            let vk = pts[path[k]];
            let spoke = if k == 0 {
                Point::new(0.0, 1.0)
            } else {
                let d = vk - pts[path[k - 1]];
                Point::new(-d.y, d.x)
            };
            if spoke.cross(wp - vk) <= 0.0 {
                out.push((path[k], w));
                continue 'cloud;
            }
        }
        // Left of every spoke: the mirrored sweep picks this satellite up.
    }
    out
}

/// Fan construction: a falling convex chain plus satellites in its upper
/// region. Runs the spoke assignment forward and once more in swapped
/// coordinates (mirroring across the main diagonal), so every satellite gets
/// an edge in at least one of the two sweeps. Chain edges are included.
pub(super) fn fan_edges(pts: &[Point], path: &[usize], cloud: &[usize]) -> Vec<(usize, usize)> {
    let p = x_increasing(pts, path);
    let mut out = EdgeSet::new();
    add_path_edges(&mut out, &p);
    for (u, v) in fan_half(pts, &p, cloud) {
        push_edge(&mut out, u, v);
    }
    let swapped: Vec<Point> = pts.iter().map(|&q| Point::new(q.y, q.x)).collect();
    let rev: Vec<usize> = p.iter().rev().copied().collect();
    for (u, v) in fan_half(&swapped, &rev, cloud) {
        push_edge(&mut out, u, v);
    }
    out.into_iter().collect()
}

fn seg_cross(a0: Point, a1: Point, b0: Point, b1: Point) -> Option<Point> {
    let la = Line::new(a0, a1 - a0);
    let lb = Line::new(b0, b1 - b0);
    let p = la.intersect(&lb)?;
    if within_box(p, a0, a1) && within_box(p, b0, b1) {
        Some(p)
    } else {
        None
    }
}

fn within_box(p: Point, s: Point, e: Point) -> bool {
    let tol = REGION_TOL * ((s.x - e.x).abs() + (s.y - e.y).abs()).max(1.0);
    p.x >= s.x.min(e.x) - tol
        && p.x <= s.x.max(e.x) + tol
        && p.y >= s.y.min(e.y) - tol
        && p.y <= s.y.max(e.y) + tol
}

/// X-coordinates where two vertex chains cross, ascending and deduplicated.
fn chain_crossing_xs(pts: &[Point], a: &[usize], b: &[usize]) -> Vec<f64> {
    let ap: Vec<Point> = a.iter().map(|&i| pts[i]).collect();
    let bp: Vec<Point> = b.iter().map(|&i| pts[i]).collect();
    let mut xs = Vec::new();
    for sa in ap.windows(2) {
        for sb in bp.windows(2) {
            if let Some(o) = seg_cross(sa[0], sa[1], sb[0], sb[1]) {
                xs.push(o.x);
            }
        }
    }
    xs.sort_by(f64::total_cmp);
    let tol = REGION_TOL * span_of(ap.iter().chain(bp.iter()).copied());
    xs.dedup_by(|x, first| (*x - *first).abs() <= tol);
    xs
}

fn strip_sub(pts: &[Point], chain: &[usize], lo: f64, hi: f64) -> Vec<usize> {
    chain
        .iter()
        .copied()
        .filter(|&i| pts[i].x > lo && pts[i].x < hi)
        .collect()
}

/// True when chain `a` runs below chain `b` inside the strip `(lo, hi)`.
/// Falls back to "leftmost sub-chain counts as lower" when the chains have no
/// common x-range inside the strip.
fn a_is_lower(
    pts: &[Point],
    a: &[usize],
    b: &[usize],
    lo: f64,
    hi: f64,
    a_sub: &[usize],
    b_sub: &[usize],
) -> bool {
    if a_sub.is_empty() {
        return false;
    }
    if b_sub.is_empty() {
        return true;
    }
    let joint_lo = pts[a[0]].x.max(pts[b[0]].x).max(lo);
    let joint_hi = pts[a[a.len() - 1]].x.min(pts[b[b.len() - 1]].x).min(hi);
    if joint_lo < joint_hi {
        let probe = 0.5 * (joint_lo + joint_hi);
        let sa: Vec<Point> = a.iter().map(|&i| pts[i]).collect();
        let sb: Vec<Point> = b.iter().map(|&i| pts[i]).collect();
        eval_seq(&sa, probe) <= eval_seq(&sb, probe)
    } else {
        pts[a_sub[0]].x <= pts[b_sub[0]].x
    }
}

/// Spanning edges for two falling chains of equal curvature.
///
/// The chains are cut at their crossings into x-strips. In each strip the
/// lower sub-chain fans out to every opposite-chain vertex admitted by its
/// region test; two whole-chain fans handle the pairs whose strips disagree
/// about which chain is lower. Concave inputs are rotated by 180° first,
/// which turns them into convex chains without renumbering.
pub(super) fn same_bend_edges(
    pts: &[Point],
    a: &[usize],
    b: &[usize],
    concave: bool,
) -> Vec<(usize, usize)> {
    if concave {
        let flipped: Vec<Point> = pts.iter().map(|&p| Point::new(-p.x, -p.y)).collect();
        return same_bend_edges(&flipped, a, b, false);
    }
    let a = x_increasing(pts, a);
    let b = x_increasing(pts, b);
    let mut out = EdgeSet::new();
    add_path_edges(&mut out, &a);
    add_path_edges(&mut out, &b);
    if a.is_empty() || b.is_empty() {
        return out.into_iter().collect();
    }

    let mut bounds = vec![f64::NEG_INFINITY];
    bounds.extend(chain_crossing_xs(pts, &a, &b));
    bounds.push(f64::INFINITY);
    for win in bounds.windows(2) {
        let (lo, hi) = (win[0], win[1]);
        let a_sub = strip_sub(pts, &a, lo, hi);
        let b_sub = strip_sub(pts, &b, lo, hi);
        if a_sub.is_empty() && b_sub.is_empty() {
            continue;
        }
        let (q, opposite) = if a_is_lower(pts, &a, &b, lo, hi, &a_sub, &b_sub) {
            (a_sub, &b)
        } else {
            (b_sub, &a)
        };
        if q.is_empty() {
            continue;
        }
        let admitted: Vec<usize> = opposite
            .iter()
            .copied()
            .filter(|&i| fan_region_contains(pts, &q, pts[i]))
            .collect();
        for (u, v) in fan_edges(pts, &q, &admitted) {
            push_edge(&mut out, u, v);
        }
    }

    for (path, other) in [(&a, &b), (&b, &a)] {
        let admitted: Vec<usize> = other
            .iter()
            .copied()
            .filter(|&i| fan_region_contains(pts, path, pts[i]))
            .collect();
        for (u, v) in fan_edges(pts, path, &admitted) {
            push_edge(&mut out, u, v);
        }
    }
    out.into_iter().collect()
}

/// Spanning edges for a falling convex chain paired with a falling concave
/// chain.
///
/// The two extended curves cross at most twice. Vertices strictly between the
/// crossings sit in strictly convex position and get the recursive
/// convex-position graph; everything else is covered by two whole-chain fans,
/// one per direction, each restricted to the satellites its region admits.
pub(super) fn opposite_bend_edges(
    pts: &[Point],
    convex: &[usize],
    concave: &[usize],
) -> Vec<(usize, usize)> {
    let cv = x_increasing(pts, convex);
    let cc = x_increasing(pts, concave);
    let mut out = EdgeSet::new();
    add_path_edges(&mut out, &cv);
    add_path_edges(&mut out, &cc);
    if cv.is_empty() || cc.is_empty() {
        return out.into_iter().collect();
    }

    // Extended curves: leftward + downward rays around the convex chain,
    // upward + rightward rays around the concave one.
    let span = span_of(cv.iter().chain(cc.iter()).map(|&i| pts[i]));
    let big = 4.0 * span + 1.0;
    let mut cv_seq = Vec::with_capacity(cv.len() + 2);
    cv_seq.push(pts[cv[0]] - Point::new(big, 0.0));
    cv_seq.extend(cv.iter().map(|&i| pts[i]));
    cv_seq.push(pts[cv[cv.len() - 1]] - Point::new(0.0, big));
    let mut cc_seq = Vec::with_capacity(cc.len() + 2);
    cc_seq.push(pts[cc[0]] + Point::new(0.0, big));
    cc_seq.extend(cc.iter().map(|&i| pts[i]));
    cc_seq.push(pts[cc[cc.len() - 1]] + Point::new(big, 0.0));

    let mut xs = Vec::new();
    for sa in cv_seq.windows(2) {
        for sb in cc_seq.windows(2) {
            if let Some(o) = seg_cross(sa[0], sa[1], sb[0], sb[1]) {
                xs.push(o.x);
            }
        }
    }
    xs.sort_by(f64::total_cmp);
    let tol = REGION_TOL * (span + big);
    xs.dedup_by(|x, first| (*x - *first).abs() <= tol);

    if xs.len() >= 2 {
        // Closed interval: a crossing can land on the vertical ray through a
        // chain endpoint, putting that vertex exactly on the lens boundary
        // (and just outside both fan regions).
        let (lo, hi) = (xs[0] - tol, xs[xs.len() - 1] + tol);
        let lens: Vec<usize> = cv
            .iter()
            .chain(cc.iter())
            .copied()
            .filter(|&i| pts[i].x >= lo && pts[i].x <= hi)
            .collect();
        if lens.len() >= 2 {
            let lens_pts: Vec<Point> = lens.iter().map(|&i| pts[i]).collect();
            if convex_hull(&lens_pts).len() == lens.len() {
                for (u, v) in super::convex::convex_edges(pts, &lens) {
                    push_edge(&mut out, u, v);
                }
            } else {
                // Near-tangent crossings can sweep stray vertices into the
                // lens; a complete graph on the handful keeps the guarantee.
                for (i, &u) in lens.iter().enumerate() {
                    for &v in &lens[i + 1..] {
                        push_edge(&mut out, u, v);
                    }
                }
            }
        }
    }

    let admitted: Vec<usize> = cc
        .iter()
        .copied()
        .filter(|&i| fan_region_contains(pts, &cv, pts[i]))
        .collect();
    for (u, v) in fan_edges(pts, &cv, &admitted) {
        push_edge(&mut out, u, v);
    }
    let flipped: Vec<Point> = pts.iter().map(|&p| Point::new(-p.x, -p.y)).collect();
    let admitted: Vec<usize> = cv
        .iter()
        .copied()
        .filter(|&i| fan_region_contains(&flipped, &cc, flipped[i]))
        .collect();
    for (u, v) in fan_edges(&flipped, &cc, &admitted) {
        push_edge(&mut out, u, v);
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GeometricGraph;
    use crate::oracle::min_path_width;
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn graph_of(pts: &[Point], edges: &[(usize, usize)]) -> GeometricGraph {
        let mut g = GeometricGraph::new(pts.to_vec()).unwrap();
        for &(u, v) in edges {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    fn assert_cross_pairs_narrow(
        pts: &[Point],
        edges: &[(usize, usize)],
        a: &[usize],
        b: &[usize],
    ) {
        let g = graph_of(pts, edges);
        for &u in a {
            for &v in b {
                if u == v {
                    continue;
                }
                let w = min_path_width(&g, u, v).unwrap();
                assert!(
                    w <= 90.0 + 1e-7,
                    "pair {u}-{v} needs width {w:.6}, edges {edges:?}"
                );
            }
        }
    }

    /// Distinct sorted coordinates for a strictly monotone chain.
    fn monotone_coords(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
        let mut v: Vec<f64> = Vec::with_capacity(n);
        while v.len() < n {
            let c: f64 = rng.gen_range(0.0..10.0);
            if v.iter().all(|&x| (x - c).abs() > 1e-3) {
                v.push(c);
            }
        }
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn crossing_monotone_pair_matches_hand_sweep() {
        let pts = [
            Point::new(-1.0, 1.0),
            Point::new(1.0, -1.0),
            Point::new(-1.0, -1.0),
            Point::new(1.0, 1.0),
        ];
        let edges = monotone_pair_edges(&pts, &[0, 1], &[2, 3]);
        let expect: EdgeSet = [(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]
            .into_iter()
            .collect();
        assert_eq!(edges.iter().copied().collect::<EdgeSet>(), expect);
        assert_cross_pairs_narrow(&pts, &edges, &[0, 1], &[2, 3]);
    }

    #[test]
    fn single_vertex_chains_get_one_edge() {
        let pts = [Point::new(0.0, 0.0), Point::new(1.0, 0.25)];
        let edges = monotone_pair_edges(&pts, &[0], &[1]);
        assert_eq!(edges, vec![(0, 1)]);
    }

    #[test]
    fn seeded_monotone_pairs_stay_linear_and_narrow() {
        for seed in 0..8 {
            let mut rng = ChaCha8Rng::seed_from_u64(90 + seed);
            let xs = monotone_coords(&mut rng, 8);
            let mut ys = monotone_coords(&mut rng, 8);
            ys.reverse();
            let mut pts: Vec<Point> = xs
                .iter()
                .zip(&ys)
                .map(|(&x, &y)| Point::new(x, y))
                .collect();
            let xs2 = monotone_coords(&mut rng, 8);
            let ys2 = monotone_coords(&mut rng, 8);
            pts.extend(xs2.iter().zip(&ys2).map(|(&x, &y)| Point::new(x + 0.5, y)));
            let falling: Vec<usize> = (0..8).collect();
            let rising: Vec<usize> = (8..16).collect();
            let edges = monotone_pair_edges(&pts, &falling, &rising);
            assert!(edges.len() <= 4 * 16, "edge bound broken: {}", edges.len());
            assert_cross_pairs_narrow(&pts, &edges, &falling, &rising);
        }
    }

    #[test]
    fn fan_assigns_satellite_in_both_sweeps() {
        let pts = [
            Point::new(0.0, 3.0),
            Point::new(2.0, 2.0),
            Point::new(3.0, 0.0),
            Point::new(3.0, 3.0),
        ];
        let edges = fan_edges(&pts, &[0, 1, 2], &[3]);
        assert!(edges.len() <= 3 + 2);
        assert!(edges.contains(&(1, 3)), "satellite joins the middle vertex");
        assert_cross_pairs_narrow(&pts, &edges, &[0, 1, 2], &[3]);
    }

    #[test]
    fn fan_without_satellites_is_the_chain() {
        let pts = [
            Point::new(0.0, 3.0),
            Point::new(2.0, 2.0),
            Point::new(3.0, 0.0),
        ];
        let edges = fan_edges(&pts, &[0, 1, 2], &[]);
        assert_eq!(edges, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn two_vertex_fan_stays_small() {
        let pts = [
            Point::new(0.0, 1.0),
            Point::new(2.0, 0.0),
            Point::new(1.0, 2.0),
        ];
        assert!(fan_region_contains(&pts, &[0, 1], pts[2]));
        let edges = fan_edges(&pts, &[0, 1], &[2]);
        assert!(edges.len() <= 4);
        assert_cross_pairs_narrow(&pts, &edges, &[0, 1], &[2]);
    }

    #[test]
    fn fan_region_rejects_points_under_the_chain() {
        let pts = [
            Point::new(0.0, 3.0),
            Point::new(2.0, 2.0),
            Point::new(3.0, 0.0),
        ];
        assert!(!fan_region_contains(&pts, &[0, 1, 2], Point::new(0.0, 0.0)));
        assert!(!fan_region_contains(
            &pts,
            &[0, 1, 2],
            Point::new(-1.0, 2.9)
        ));
        assert!(fan_region_contains(&pts, &[0, 1, 2], Point::new(-1.0, 3.1)));
        assert!(fan_region_contains(&pts, &[0, 1, 2], Point::new(3.0, -5.0)));
    }

    /// Falling convex chain bound stays within the sharp fan accounting:
    /// chain edges plus at most two per satellite.
    #[test]
    fn fan_edge_count_is_sharp() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let path: Vec<Point> = (0..6)
            .map(|k| {
                let t = 80.0 - 12.0 * k as f64;
                let r = 5.0;
                Point::new(r * t.to_radians().cos(), r * t.to_radians().sin())
            })
            .collect();
        let mut pts = path.clone();
        let path_ids: Vec<usize> = (0..6).collect();
        let mut cloud = Vec::new();
        while cloud.len() < 5 {
            let q = Point::new(rng.gen_range(-2.0..7.0), rng.gen_range(-2.0..7.0));
            if fan_region_contains(&pts, &path_ids, q)
                && pts.iter().all(|p| (p.x - q.x).abs() > 1e-6)
            {
                pts.push(q);
                cloud.push(pts.len() - 1);
            }
        }
        let edges = fan_edges(&pts, &path_ids, &cloud);
        assert!(
            edges.len() <= 6 + 2 * 5,
            "fan produced {} edges",
            edges.len()
        );
        assert_cross_pairs_narrow(&pts, &edges, &path_ids, &cloud);
    }

    fn arc_chain(center: Point, r: f64, degs: &[f64]) -> Vec<Point> {
        degs.iter()
            .map(|d| center + Point::new(r * d.to_radians().cos(), r * d.to_radians().sin()))
            .collect()
    }

    #[test]
    fn nested_convex_chains_reduce_to_one_fan() {
        // Outer chain strictly above the inner one; no crossings.
        let mut pts = arc_chain(Point::new(0.0, 0.0), 4.0, &[80.0, 55.0, 30.0, 5.0]);
        pts.extend(arc_chain(Point::new(0.3, -2.0), 3.0, &[75.0, 50.0, 20.0]));
        let a: Vec<usize> = (0..4).collect();
        let b: Vec<usize> = (4..7).collect();
        let edges = same_bend_edges(&pts, &a, &b, false);
        assert_cross_pairs_narrow(&pts, &edges, &a, &b);
    }

    #[test]
    fn crossing_convex_chains_cover_every_strip() {
        // Slope sequences -0.1,-3 vs -1,-1.1: the second chain starts above,
        // dips under near x = 0.4, and re-crosses near x = 5.7.
        let pts = [
            Point::new(0.0, 0.0),
            Point::new(4.0, -0.4),
            Point::new(6.4, -7.6),
            Point::new(-0.2, 0.56),
            Point::new(4.1, -3.74),
            Point::new(6.3, -6.16),
        ];
        let a: Vec<usize> = (0..3).collect();
        let b: Vec<usize> = (3..6).collect();
        assert!(chain_crossing_xs(&pts, &a, &b).len() >= 2);
        let edges = same_bend_edges(&pts, &a, &b, false);
        assert_cross_pairs_narrow(&pts, &edges, &a, &b);
    }

    #[test]
    fn historical_counterexample_pair_is_covered() {
        // A configuration where fanning only from per-strip sub-chains once
        // missed the pair (index 0, index 4); the whole-chain fans close it.
        let pts = [
            Point::new(0.0, -1.0),
            Point::new(2.0, -1.2),
            Point::new(4.0, -8.0),
            Point::new(0.5, 0.0),
            Point::new(1.5, -2.5),
            Point::new(3.5, -8.6),
        ];
        let a: Vec<usize> = (0..3).collect();
        let b: Vec<usize> = (3..6).collect();
        let edges = same_bend_edges(&pts, &a, &b, false);
        assert_cross_pairs_narrow(&pts, &edges, &a, &b);
    }

    #[test]
    fn concave_pairs_ride_the_rotated_construction() {
        let mut pts = arc_chain(Point::new(0.0, 0.0), 4.0, &[185.0, 210.0, 235.0, 260.0]);
        pts.extend(arc_chain(Point::new(1.0, 1.5), 3.5, &[190.0, 225.0, 255.0]));
        let a: Vec<usize> = (0..4).collect();
        let b: Vec<usize> = (4..7).collect();
        let edges = same_bend_edges(&pts, &a, &b, true);
        assert_cross_pairs_narrow(&pts, &edges, &a, &b);
    }

    #[test]
    fn seeded_same_bend_pairs_stay_narrow_and_linear() {
        for seed in 0..6 {
            let mut rng = ChaCha8Rng::seed_from_u64(300 + seed);
            let mut degs_a: Vec<f64> = (0..10).map(|_| rng.gen_range(5.0..85.0)).collect();
            degs_a.sort_by(|x, y| y.total_cmp(x));
            let mut degs_b: Vec<f64> = (0..10).map(|_| rng.gen_range(5.0..85.0)).collect();
            degs_b.sort_by(|x, y| y.total_cmp(x));
            let mut pts = arc_chain(Point::new(0.0, 0.0), 6.0, &degs_a);
            pts.extend(arc_chain(
                Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.5..0.5)),
                5.0,
                &degs_b,
            ));
            let a: Vec<usize> = (0..10).collect();
            let b: Vec<usize> = (10..20).collect();
            let edges = same_bend_edges(&pts, &a, &b, false);
            assert!(
                edges.len() <= 12 * 20,
                "same-bend edges blew up: {}",
                edges.len()
            );
            assert_cross_pairs_narrow(&pts, &edges, &a, &b);
        }
    }

    #[test]
    fn concave_chain_above_convex_chain_needs_no_lens() {
        let mut pts = arc_chain(Point::new(0.0, 0.0), 4.0, &[80.0, 50.0, 20.0]);
        pts.extend(arc_chain(Point::new(4.0, 6.0), 4.0, &[185.0, 215.0, 250.0]));
        let cv: Vec<usize> = (0..3).collect();
        let cc: Vec<usize> = (3..6).collect();
        let edges = opposite_bend_edges(&pts, &cv, &cc);
        assert_cross_pairs_narrow(&pts, &edges, &cv, &cc);
    }

    #[test]
    fn lens_vertices_get_the_recursive_graph() {
        // Convex over concave with two proper crossings and four vertices
        // strictly between them.
        let pts = [
            Point::new(-3.0, 0.5),
            Point::new(0.0, 0.4),
            Point::new(2.0, -1.0),
            Point::new(3.0, -4.0),
            Point::new(-2.0, 3.0),
            Point::new(-1.0, -0.4),
            Point::new(1.0, -2.2),
            Point::new(4.0, -3.2),
        ];
        let cv: Vec<usize> = (0..4).collect();
        let cc: Vec<usize> = (4..8).collect();
        let edges = opposite_bend_edges(&pts, &cv, &cc);
        assert_cross_pairs_narrow(&pts, &edges, &cv, &cc);
    }

    #[test]
    fn seeded_opposite_bend_pairs_stay_subquadratic() {
        for seed in 0..6 {
            let mut rng = ChaCha8Rng::seed_from_u64(500 + seed);
            let mut degs_cv: Vec<f64> = (0..12).map(|_| rng.gen_range(5.0..85.0)).collect();
            degs_cv.sort_by(|x, y| y.total_cmp(x));
            let mut degs_cc: Vec<f64> = (0..12).map(|_| rng.gen_range(185.0..265.0)).collect();
            degs_cc.sort_by(f64::total_cmp);
            let mut pts = arc_chain(Point::new(0.0, 0.0), 6.0, &degs_cv);
            pts.extend(arc_chain(
                Point::new(rng.gen_range(3.0..5.0), rng.gen_range(5.0..7.0)),
                6.0,
                &degs_cc,
            ));
            let cv: Vec<usize> = (0..12).collect();
            let cc: Vec<usize> = (12..24).collect();
            let edges = opposite_bend_edges(&pts, &cv, &cc);
            let bound = (8.0 * 12.0 * (12.0_f64).log2()).ceil() as usize;
            assert!(edges.len() <= bound, "{} edges > {}", edges.len(), bound);
            assert_cross_pairs_narrow(&pts, &edges, &cv, &cc);
        }
    }
}
