//! Width-90° graphs on one-sided and convex-position point sets.
//!
//! A one-sided set sorts along +x into a single strictly convex chain; it is
//! spanned by splitting the chain at its y-extreme apex and running the
//! falling/rising pair construction on the two halves. Convex-position sets
//! are handled recursively: rotate an orthogonal axis pair until the four
//! extreme-point arcs are balanced, span adjacent arc unions as one-sided
//! sets, and recurse on the two opposite unions.

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, orientation, Orientation, Point};
use crate::graph::GeometricGraph;
use crate::width90::pairs::monotone_pair_edges;

/// Spanning graph for a one-sided point set: its x-sorted order must walk a
/// strictly convex chain. Every pair ends up joined by a path of width at
/// most 90°, with O(n) edges.
pub fn build_one_sided(points: &[Point]) -> Result<GeometricGraph> {
    let mut g = GeometricGraph::new(points.to_vec())?;
    if points.is_empty() {
        return Err(Error::EmptyInput {
            msg: "one-sided construction needs at least one point".into(),
        });
    }
    let order = one_sided_order(points)?;
    for (u, v) in chain_split_edges(points, &order) {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// X-sorted vertex order, validated: distinct x-coordinates and uniform
/// strict turns along the sorted polyline.
fn one_sided_order(pts: &[Point]) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| {
        pts[a]
            .x
            .total_cmp(&pts[b].x)
            .then(pts[a].y.total_cmp(&pts[b].y))
    });
    for w in order.windows(2) {
        if pts[w[0]].x == pts[w[1]].x {
            return Err(Error::NotOneSided {
                msg: format!(
                    "points {} and {} share x = {}; projections must be distinct",
                    w[0], w[1], pts[w[0]].x
                ),
            });
        }
    }
    let mut seen = None;
    for w in order.windows(3) {
        let turn = orientation(pts[w[0]], pts[w[1]], pts[w[2]]);
        if turn == Orientation::Straight {
            return Err(Error::NotOneSided {
                msg: format!("points {}, {}, {} are collinear", w[0], w[1], w[2]),
            });
        }
        match seen {
            None => seen = Some(turn),
            Some(t) if t != turn => {
                return Err(Error::NotOneSided {
                    msg: format!("turn direction flips at point {}", w[1]),
                });
            }
            _ => {}
        }
    }
    Ok(order)
}

/// Edges for a validated convex chain in x order: the chain itself, plus the
/// falling/rising pair construction on the two halves around the y-extreme
/// apex. A chain that is already y-monotone needs only its own edges.
fn chain_split_edges(pts: &[Point], order: &[usize]) -> Vec<(usize, usize)> {
    let chain_edges = || order.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>();
    if order.len() <= 2 {
        return chain_edges();
    }
    let non_decreasing = order.windows(2).all(|w| pts[w[0]].y <= pts[w[1]].y);
    let non_increasing = order.windows(2).all(|w| pts[w[0]].y >= pts[w[1]].y);
    if non_decreasing || non_increasing {
        return chain_edges();
    }

    // Cap-shaped chains (right turns) peak at the maximum y, cup-shaped ones
    // bottom out at the minimum; the apex joins a rising and a falling half.
    let cap = orientation(pts[order[0]], pts[order[1]], pts[order[2]]) == Orientation::Right;
    let apex = if cap {
        (0..order.len()).max_by(|&i, &j| pts[order[i]].y.total_cmp(&pts[order[j]].y))
    } else {
        (0..order.len()).min_by(|&i, &j| pts[order[i]].y.total_cmp(&pts[order[j]].y))
    }
    .expect("non-empty chain");
    let left = &order[..=apex];
    let right = &order[apex..];
    let mut edges = if cap {
        monotone_pair_edges(pts, right, left)
    } else {
        monotone_pair_edges(pts, left, right)
    };
    edges.extend(chain_edges());
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// Soft variant for internal use on arcs that are one-sided by construction:
/// falls back to the complete graph instead of erroring when floating-point
/// ties spoil the sorted order.
pub(super) fn one_sided_edges(pts: &[Point], ids: &[usize]) -> Vec<(usize, usize)> {
    let sub: Vec<Point> = ids.iter().map(|&i| pts[i]).collect();
    match one_sided_order(&sub) {
        Ok(order) => {
            let local = chain_split_edges(&sub, &order);
            local.into_iter().map(|(u, v)| (ids[u], ids[v])).collect()
        }
        Err(_) => complete(ids),
    }
}

fn complete(ids: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            if u != v {
                out.push((u.min(v), u.max(v)));
            }
        }
    }
    out
}

/// Recursive width-90° spanning graph for a set in strictly convex position,
/// with O(n log n) edges.
pub fn build_convex_recursive(points: &[Point]) -> Result<GeometricGraph> {
    let mut g = GeometricGraph::new(points.to_vec())?;
    if points.is_empty() {
        return Err(Error::EmptyInput {
            msg: "convex construction needs at least one point".into(),
        });
    }
    if points.len() > 3 {
        let hull = convex_hull(points);
        if hull.len() != points.len() {
            return Err(Error::NotConvexPosition {
                msg: format!(
                    "{} of {} points are hull corners; input must be strictly convex",
                    hull.len(),
                    points.len()
                ),
            });
        }
    }
    let ids: Vec<usize> = (0..points.len()).collect();
    for (u, v) in convex_edges(points, &ids) {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

fn rotated(pts: &[Point], deg: f64) -> Vec<Point> {
    let (s, c) = deg.to_radians().sin_cos();
    pts.iter()
        .map(|p| Point::new(c * p.x - s * p.y, s * p.x + c * p.y))
        .collect()
}

fn unit(deg: f64) -> Point {
    let (s, c) = deg.to_radians().sin_cos();
    Point::new(c, s)
}

/// Cyclic hull walk from `from` up to but excluding `to`.
fn arc(hull: &[usize], from: usize, to: usize) -> Vec<usize> {
    let k = hull.len();
    let mut out = Vec::new();
    let mut i = from;
    while i != to {
        out.push(hull[i]);
        i = (i + 1) % k;
    }
    out
}

/// Recursive construction on a strictly convex id set. Splits the hull at
/// the four extreme points of a rotated axis pair chosen so the two opposite
/// arc unions are balanced, spans the four adjacent unions as one-sided sets,
/// and recurses on the opposite unions.
pub(super) fn convex_edges(pts: &[Point], ids: &[usize]) -> Vec<(usize, usize)> {
    let k = ids.len();
    if k <= 3 {
        return complete(ids);
    }
    let sub: Vec<Point> = ids.iter().map(|&i| pts[i]).collect();
    let hull_local = convex_hull(&sub);
    if hull_local.len() != k {
        // Callers guarantee convex position; collinear leftovers only appear
        // through floating-point degeneracy. Keep the guarantee regardless.
        return complete(ids);
    }
    let hull: Vec<usize> = hull_local.into_iter().map(|i| ids[i]).collect();

    // Candidate axis rotations: midpoints between consecutive hull-edge
    // directions modulo 90°, where the extreme points are stable.
    let mut events: Vec<f64> = (0..k)
        .map(|i| {
            let d = pts[hull[(i + 1) % k]] - pts[hull[i]];
            d.y.atan2(d.x).to_degrees().rem_euclid(90.0)
        })
        .collect();
    events.sort_by(f64::total_cmp);
    events.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
    let mut candidates: Vec<f64> = events.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    candidates.push((0.5 * (events[events.len() - 1] + events[0] + 90.0)).rem_euclid(90.0));

    let split_at = |theta: f64| -> [Vec<usize>; 4] {
        let pos = |dir_deg: f64| -> usize {
            let d = unit(dir_deg);
            let best = hull
                .iter()
                .copied()
                .max_by(|&a, &b| pts[a].dot(d).total_cmp(&pts[b].dot(d)).then(b.cmp(&a)))
                .expect("non-empty hull");
            hull.iter().position(|&h| h == best).expect("hull member")
        };
        let (n, e, s, w) = (
            pos(theta + 90.0),
            pos(theta),
            pos(theta - 90.0),
            pos(theta + 180.0),
        );
        [
            arc(&hull, n, e),
            arc(&hull, e, s),
            arc(&hull, s, w),
            arc(&hull, w, n),
        ]
    };

    let balanced = |arcs: &[Vec<usize>; 4]| -> Option<usize> {
        let m13 = arcs[0].len() + arcs[2].len();
        let m24 = arcs[1].len() + arcs[3].len();
        if m13 == k || m24 == k {
            return None; // degenerate split; recursion would not shrink
        }
        Some(m13.max(m24))
    };

    let mut chosen: Option<(f64, [Vec<usize>; 4])> = None;
    let mut fallback: Option<(usize, f64, [Vec<usize>; 4])> = None;
    for &theta in &candidates {
        let arcs = split_at(theta);
        let Some(worst) = balanced(&arcs) else {
            continue;
        };
        if worst <= k / 2 + 1 {
            chosen = Some((theta, arcs));
            break;
        }
        if fallback.as_ref().is_none_or(|(w, _, _)| worst < *w) {
            fallback = Some((worst, theta, arcs));
        }
    }
    let (theta, arcs) = match (chosen, fallback) {
        (Some(c), _) => c,
        (None, Some((_, t, a))) => (t, a),
        (None, None) => return complete(ids),
    };

    let mut out = Vec::new();
    // Adjacent arc unions are one-sided along the axis that runs from their
    // shared side to the opposite one.
    let unions = [
        ([&arcs[0], &arcs[1]], theta - 90.0),
        ([&arcs[1], &arcs[2]], theta + 180.0),
        ([&arcs[2], &arcs[3]], theta + 90.0),
        ([&arcs[3], &arcs[0]], theta),
    ];
    for (pair, axis) in unions {
        let union: Vec<usize> = pair[0].iter().chain(pair[1].iter()).copied().collect();
        if union.len() < 2 {
            continue;
        }
        let frame = rotated(pts, -axis);
        out.extend(one_sided_edges(&frame, &union));
    }

    let p13: Vec<usize> = arcs[0].iter().chain(arcs[2].iter()).copied().collect();
    let p24: Vec<usize> = arcs[1].iter().chain(arcs[3].iter()).copied().collect();
    out.extend(convex_edges(pts, &p13));
    out.extend(convex_edges(pts, &p24));
    out.sort_unstable();
    out.dedup();
    out
}
