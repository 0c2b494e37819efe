//! Width verification: does a graph contain, for every pair of sites, a path
//! whose edge directions all fit in one closed wedge of a given extent?
//!
//! Every candidate wedge can be rotated clockwise until its start boundary
//! touches an edge direction used by the path, so it suffices to anchor
//! wedges at the directions of the graph's directed edges. For one anchor,
//! the admissible edges all advance strictly along the wedge bisector
//! (extents stay below 180° here), so reachability over them is a DAG
//! computation; the batch verifier exploits that with one reverse-topological
//! bitset sweep per anchor instead of a search per vertex pair.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{ccw_delta, Direction, Point, Polyline};
use crate::graph::GeometricGraph;

/// Angular slack (degrees) used where an exact width is being bracketed.
const EXACT_TOL_DEG: f64 = 1e-9;

/// Extra slack when pruning anchors by the source→target direction; protects
/// against the target direction computing fractionally outside a wedge whose
/// boundary it mathematically lies on.
const PRUNE_SLACK_DEG: f64 = 1e-6;

/// Width of an explicit path: smallest closed wedge extent containing all of
/// its edge directions.
pub fn path_width(points: &[Point]) -> Result<f64> {
    Ok(Polyline::new(points.to_vec())?.width_deg())
}

/// Outcome of a width check over all site pairs.
#[derive(Debug, Clone, Serialize)]
pub struct WidthReport {
    /// Extent that was checked (or, for exact mode, the extent found).
    pub gamma: f64,
    pub passed: bool,
    /// Site pairs with no admissible path at `gamma`.
    pub failing: Vec<(usize, usize)>,
    pub pairs_checked: usize,
    /// Exact width of the graph, when it was computed.
    pub graph_width: Option<f64>,
    /// A pair attaining the exact width.
    pub worst_pair: Option<(usize, usize)>,
    /// Exact per-pair widths `(s, t, width)`; only filled for small graphs.
    pub per_pair: Option<Vec<(usize, usize, f64)>>,
}

/// A directed copy of every edge, tagged with its direction in degrees.
#[derive(Debug, Clone, Copy)]
struct DirectedEdge {
    angle: f64,
    from: usize,
    to: usize,
}

fn directed_edges_sorted(g: &GeometricGraph) -> Vec<DirectedEdge> {
    let pts = g.points();
    let mut out = Vec::with_capacity(2 * g.edge_count());
    for (u, v) in g.edges() {
        let d = Direction::of_vector(pts[v] - pts[u]).degrees();
        out.push(DirectedEdge {
            angle: d,
            from: u,
            to: v,
        });
        out.push(DirectedEdge {
            angle: (d + 180.0).rem_euclid(360.0),
            from: v,
            to: u,
        });
    }
    out.sort_by(|a, b| a.angle.total_cmp(&b.angle));
    out
}

/// Indices of `edges` (sorted by angle) whose angle lies in the circular
/// interval starting at `lo` with the given `span`, appended to `buf`.
fn edges_in_interval(edges: &[DirectedEdge], lo: f64, span: f64, buf: &mut Vec<usize>) {
    if span >= 360.0 {
        buf.extend(0..edges.len());
        return;
    }
    let lo = lo.rem_euclid(360.0);
    let hi = lo + span;
    let start = edges.partition_point(|e| e.angle < lo);
    if hi <= 360.0 {
        for (i, e) in edges[start..].iter().enumerate() {
            if e.angle > hi {
                break;
            }
            buf.push(start + i);
        }
    } else {
        buf.extend(start..edges.len());
        let wrapped = hi - 360.0;
        for (i, e) in edges.iter().enumerate() {
            if e.angle > wrapped {
                break;
            }
            buf.push(i);
        }
    }
}

/// Check whether every pair of sites is joined by a path of width at most
/// `gamma` degrees, with `tol` degrees of slack on wedge boundaries.
///
/// Helper (Steiner) vertices participate as intermediate hops but are not
/// paired. A report with `passed == false` lists the offending pairs; errors
/// are reserved for invalid inputs.
pub fn verify_graph_width(g: &GeometricGraph, gamma: f64, tol: f64) -> Result<WidthReport> {
    if !(0.0..360.0).contains(&gamma) || !gamma.is_finite() {
        return Err(Error::InvalidConfig {
            msg: format!("width must be in [0, 360), got {gamma}"),
        });
    }
    let n = g.len();
    let sites = g.site_count();
    let pairs_checked = sites.saturating_sub(1) * sites / 2;
    let mut report = WidthReport {
        gamma,
        passed: true,
        failing: Vec::new(),
        pairs_checked,
        graph_width: None,
        worst_pair: None,
        per_pair: None,
    };
    if sites <= 1 {
        return Ok(report);
    }

    let edges = directed_edges_sorted(g);
    let words = n.div_ceil(64);
    // sat[s] collects, over all anchors, which vertices s reaches inside some
    // single wedge.
    let mut sat = vec![0u64; sites * words];
    let mut reach = vec![0u64; n * words];
    let mut in_range: Vec<usize> = Vec::new();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order: Vec<usize> = (0..n).collect();
    let pts = g.points();

    let mut anchor_prev = f64::NAN;
    'anchors: for k in 0..edges.len() {
        let alpha = edges[k].angle;
        if alpha == anchor_prev {
            continue;
        }
        anchor_prev = alpha;

        in_range.clear();
        edges_in_interval(&edges, alpha - tol, gamma + 2.0 * tol, &mut in_range);
        if in_range.is_empty() {
            continue;
        }

        for list in out.iter_mut() {
            list.clear();
        }
        for &ei in &in_range {
            out[edges[ei].from].push(edges[ei].to);
        }

        // Every admissible edge strictly advances along the bisector, so
        // processing vertices by decreasing bisector projection sees each
        // vertex after all of its out-neighbours.
        let bis = Direction::of_degrees(alpha + gamma / 2.0).unit();
        order.sort_by(|&a, &b| bis.dot(pts[b]).total_cmp(&bis.dot(pts[a])).then(a.cmp(&b)));
        reach.fill(0);
        for &u in &order {
            reach[u * words + u / 64] |= 1u64 << (u % 64);
            for &v in &out[u] {
                or_row(&mut reach, words, u, v);
            }
        }
        for s in 0..sites {
            for w in 0..words {
                sat[s * words + w] |= reach[s * words + w];
            }
        }

        // Early exit once every pair is witnessed in one direction or the
        // other (a width-γ path reversed has the same width).
        for s in 0..sites {
            for t in (s + 1)..sites {
                let fwd = sat[s * words + t / 64] >> (t % 64) & 1;
                let bwd = sat[t * words + s / 64] >> (s % 64) & 1;
                if fwd | bwd == 0 {
                    continue 'anchors;
                }
            }
        }
        return Ok(report);
    }

    for s in 0..sites {
        for t in (s + 1)..sites {
            let fwd = sat[s * words + t / 64] >> (t % 64) & 1;
            let bwd = sat[t * words + s / 64] >> (s % 64) & 1;
            if fwd | bwd == 0 {
                report.failing.push((s, t));
            }
        }
    }
    report.passed = report.failing.is_empty();
    Ok(report)
}

/// Whether some path from `s` to `t` has width at most `gamma` (+`tol` slack
/// on wedge boundaries).
pub fn has_width_path(
    g: &GeometricGraph,
    s: usize,
    t: usize,
    gamma: f64,
    tol: f64,
) -> Result<bool> {
    let n = g.len();
    for i in [s, t] {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
    }
    if s == t {
        return Ok(true);
    }
    let pts = g.points();
    let edges = directed_edges_sorted(g);
    if edges.is_empty() {
        return Ok(false);
    }
    let target_dir = Direction::of_vector(pts[t] - pts[s]).degrees();

    let mut anchors: Vec<f64> = edges.iter().map(|e| e.angle).collect();
    anchors.dedup();
    if gamma <= 180.0 - PRUNE_SLACK_DEG {
        // Edge directions of any admissible path positively span the
        // source→target direction, so the wedge must contain it.
        anchors.retain(|&a| {
            ccw_delta(a - tol - PRUNE_SLACK_DEG, target_dir)
                <= gamma + 2.0 * (tol + PRUNE_SLACK_DEG)
        });
    }
    // Try wedges whose bisector aligns best with the target direction first.
    anchors.sort_by(|&a, &b| {
        let da = angular_gap(a + gamma / 2.0, target_dir);
        let db = angular_gap(b + gamma / 2.0, target_dir);
        da.total_cmp(&db)
    });

    let mut in_range: Vec<usize> = Vec::new();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    for &alpha in &anchors {
        in_range.clear();
        edges_in_interval(&edges, alpha - tol, gamma + 2.0 * tol, &mut in_range);
        for list in out.iter_mut() {
            list.clear();
        }
        for &ei in &in_range {
            out[edges[ei].from].push(edges[ei].to);
        }
        seen.fill(false);
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            if u == t {
                return Ok(true);
            }
            for &v in &out[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    Ok(false)
}

/// `dst_row |= src_row` over the flat `rows` bitset matrix.
fn or_row(rows: &mut [u64], words: usize, dst: usize, src: usize) {
    debug_assert_ne!(dst, src);
    let (lo, hi) = (dst.min(src), dst.max(src));
    let (head, tail) = rows.split_at_mut(hi * words);
    let low_row = &mut head[lo * words..(lo + 1) * words];
    let high_row = &mut tail[..words];
    if dst < src {
        for (r, s) in low_row.iter_mut().zip(high_row.iter()) {
            *r |= *s;
        }
    } else {
        for (r, s) in high_row.iter_mut().zip(low_row.iter()) {
            *r |= *s;
        }
    }
}

fn angular_gap(a: f64, b: f64) -> f64 {
    let d = ccw_delta(a, b);
    d.min(360.0 - d)
}

/// All widths any path in `g` could possibly have: 0 plus every
/// counterclockwise gap between two directed edge angles.
fn candidate_widths(g: &GeometricGraph) -> Vec<f64> {
    let mut angles: Vec<f64> = directed_edges_sorted(g).iter().map(|e| e.angle).collect();
    angles.dedup();
    let mut cand = vec![0.0];
    for &a in &angles {
        for &b in &angles {
            if a != b {
                cand.push(ccw_delta(a, b));
            }
        }
    }
    cand.sort_by(f64::total_cmp);
    cand.dedup();
    cand
}

/// Reachability of `t` from `s` using only edges whose direction lies in the
/// closed wedge `[alpha, alpha + w]` for some edge direction `alpha`.
/// Membership is decided by the very `ccw_delta` values the candidate widths
/// are made of — no interval endpoint arithmetic — which is what lets
/// [`min_path_width`] agree with the path enumeration bit-for-bit.
fn reachable_at_width(
    edges: &[DirectedEdge],
    n: usize,
    s: usize,
    t: usize,
    w: f64,
    target_dir: f64,
) -> bool {
    let mut anchors: Vec<f64> = edges.iter().map(|e| e.angle).collect();
    anchors.dedup();
    if w <= 180.0 - PRUNE_SLACK_DEG {
        // Edge directions of any admissible path positively span the
        // source→target direction, so the wedge must contain it.
        anchors
            .retain(|&a| ccw_delta(a - PRUNE_SLACK_DEG, target_dir) <= w + 2.0 * PRUNE_SLACK_DEG);
    }
    // Try wedges whose bisector aligns best with the target direction first.
    anchors.sort_by(|&a, &b| {
        let da = angular_gap(a + w / 2.0, target_dir);
        let db = angular_gap(b + w / 2.0, target_dir);
        da.total_cmp(&db)
    });
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    for &alpha in &anchors {
        for list in out.iter_mut() {
            list.clear();
        }
        for e in edges {
            if ccw_delta(alpha, e.angle) <= w {
                out[e.from].push(e.to);
            }
        }
        seen.fill(false);
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            if u == t {
                return true;
            }
            for &v in &out[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    false
}

/// Minimum width over all `s`→`t` paths. Errors if no path exists.
///
/// The optimum for any fixed path is a gap between two edge directions, so a
/// binary search over all pairwise angle gaps finds it. Wedge membership and
/// the candidate gaps are computed from the same `ccw_delta` calls, making
/// the result identical — not merely close — to what enumerating every
/// simple path yields.
pub fn min_path_width(g: &GeometricGraph, s: usize, t: usize) -> Result<f64> {
    let n = g.len();
    for i in [s, t] {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
    }
    if s == t {
        return Ok(0.0);
    }
    let edges = directed_edges_sorted(g);
    if edges.is_empty() {
        return Err(Error::Disconnected { from: s, to: t });
    }
    let pts = g.points();
    let target_dir = Direction::of_vector(pts[t] - pts[s]).degrees();
    let cand = candidate_widths(g);
    if !reachable_at_width(&edges, n, s, t, *cand.last().unwrap(), target_dir) {
        return Err(Error::Disconnected { from: s, to: t });
    }
    let mut lo = 0usize; // invariant: answer index in [lo, hi]
    let mut hi = cand.len() - 1;
    while lo < hi {
        let mid = (lo + hi) / 2;
        if reachable_at_width(&edges, n, s, t, cand[mid], target_dir) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(cand[lo])
}

/// Exact width of the graph: the smallest extent at which every site pair is
/// joined. Also reports a pair attaining it, and for small graphs the full
/// per-pair table.
pub fn graph_width_exact(g: &GeometricGraph) -> Result<WidthReport> {
    let sites = g.site_count();
    if sites <= 1 {
        return verify_graph_width(g, 0.0, EXACT_TOL_DEG);
    }
    let cand = candidate_widths(g);
    let last = verify_graph_width(g, *cand.last().unwrap(), EXACT_TOL_DEG)?;
    if !last.passed {
        let (from, to) = last.failing[0];
        return Err(Error::Disconnected { from, to });
    }
    let mut lo = 0usize;
    let mut hi = cand.len() - 1;
    let mut worst = None;
    while lo < hi {
        let mid = (lo + hi) / 2;
        let probe = verify_graph_width(g, cand[mid], EXACT_TOL_DEG)?;
        if probe.passed {
            hi = mid;
        } else {
            worst = Some(probe.failing[0]);
            lo = mid + 1;
        }
    }
    let mut report = verify_graph_width(g, cand[lo], EXACT_TOL_DEG)?;
    report.graph_width = Some(cand[lo]);
    report.worst_pair = worst;
    if sites <= 16 && g.len() <= 24 {
        let mut table = Vec::new();
        for s in 0..sites {
            for t in (s + 1)..sites {
                table.push((s, t, min_path_width(g, s, t)?));
            }
        }
        report.per_pair = Some(table);
    }
    Ok(report)
}

/// Brute-force minimum path width by enumerating every simple path. Only for
/// cross-checking the search above; refuses graphs with more than 10
/// vertices.
///
/// Uses the same directed-edge angles as the search (reverse = forward +
/// 180°) and minimises each path's cover over every edge direction in the
/// graph, not just the path's own. Mathematically the extra anchors never
/// win; in floating point they keep the two implementations returning the
/// same bits rather than values an ulp apart.
pub fn min_path_width_exhaustive(g: &GeometricGraph, s: usize, t: usize) -> Result<f64> {
    let n = g.len();
    if n > 10 {
        return Err(Error::InvalidConfig {
            msg: format!("exhaustive path search limited to 10 vertices, got {n}"),
        });
    }
    for i in [s, t] {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
    }
    if s == t {
        return Ok(0.0);
    }
    let mut anchors: Vec<f64> = directed_edges_sorted(g).iter().map(|e| e.angle).collect();
    anchors.dedup();
    let pts = g.points();
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (u, v) in g.edges() {
        let d = Direction::of_vector(pts[v] - pts[u]).degrees();
        adj[u].push((v, d));
        adj[v].push((u, (d + 180.0).rem_euclid(360.0)));
    }
    let mut best = f64::INFINITY;
    let mut dirs: Vec<f64> = Vec::new();
    let mut visited = vec![false; n];
    visited[s] = true;

    fn cover_width(anchors: &[f64], dirs: &[f64]) -> f64 {
        let mut tightest = f64::INFINITY;
        for &a in anchors {
            let mut extent: f64 = 0.0;
            for &d in dirs {
                extent = extent.max(ccw_delta(a, d));
            }
            tightest = tightest.min(extent);
        }
        tightest
    }

    fn dfs(
        u: usize,
        t: usize,
        adj: &[Vec<(usize, f64)>],
        anchors: &[f64],
        visited: &mut [bool],
        dirs: &mut Vec<f64>,
        best: &mut f64,
    ) {
        if u == t {
            *best = best.min(cover_width(anchors, dirs));
            return;
        }
        for &(v, angle) in &adj[u] {
            if !visited[v] {
                visited[v] = true;
                dirs.push(angle);
                dfs(v, t, adj, anchors, visited, dirs, best);
                dirs.pop();
                visited[v] = false;
            }
        }
    }
    dfs(s, t, &adj, &anchors, &mut visited, &mut dirs, &mut best);
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::Disconnected { from: s, to: t })
    }
}
