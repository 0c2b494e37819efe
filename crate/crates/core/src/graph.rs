//! The shared graph container: vertices are points in the plane, edges are
//! straight segments between them, stored as sorted index pairs.
//!
//! Vertices are addressed by index. Input sites always come first; points
//! appended by constructions that are allowed to add helper vertices live at
//! indices `>= steiner_from()`. Quality measures (dilation, width) are only
//! required between original sites, but helper vertices may appear as
//! intermediate hops.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};

use crate::error::{Error, Result};
use crate::geometry::{orientation, Orientation, Point};

/// Straight-line graph on an indexed point set.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricGraph {
    points: Vec<Point>,
    /// Undirected edges as `(min, max)` index pairs.
    edges: BTreeSet<(usize, usize)>,
    /// Indices `>= steiner_from` are construction-added helper points.
    steiner_from: usize,
}

impl GeometricGraph {
    /// Edge-less graph on the given sites. Rejects non-finite coordinates and
    /// duplicate points.
    pub fn new(points: Vec<Point>) -> Result<GeometricGraph> {
        let steiner_from = points.len();
        Self::with_steiner(points, steiner_from)
    }

    /// Like [`GeometricGraph::new`], but marks indices `>= steiner_from` as
    /// helper points added by a construction.
    pub fn with_steiner(points: Vec<Point>, steiner_from: usize) -> Result<GeometricGraph> {
        if steiner_from > points.len() {
            return Err(Error::InvalidConfig {
                msg: format!(
                    "steiner_from {} exceeds point count {}",
                    steiner_from,
                    points.len()
                ),
            });
        }
        for (i, p) in points.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinitePoint { index: i });
            }
        }
        // Sort index handles so duplicate detection is O(n log n).
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| {
            (points[a].x, points[a].y)
                .partial_cmp(&(points[b].x, points[b].y))
                .unwrap()
        });
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(Error::DuplicatePoint {
                    first,
                    second,
                    x: points[first].x,
                    y: points[first].y,
                });
            }
        }
        Ok(GeometricGraph {
            points,
            edges: BTreeSet::new(),
            steiner_from,
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Result<Point> {
        self.points.get(i).copied().ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.points.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of original (non-helper) sites; they occupy indices
    /// `0..site_count()`.
    pub fn site_count(&self) -> usize {
        self.steiner_from
    }

    pub fn steiner_from(&self) -> usize {
        self.steiner_from
    }

    pub fn is_steiner(&self, i: usize) -> bool {
        i >= self.steiner_from
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let len = self.points.len();
        for i in [u, v] {
            if i >= len {
                return Err(Error::IndexOutOfRange { index: i, len });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { index: u });
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    /// Sorted adjacency lists for all vertices.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.points.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        // BTreeSet iteration inserts v-sides in order already; u-sides need a
        // sort because they arrive keyed by the other endpoint.
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Edge-set union of two graphs over the identical point list.
    pub fn union(&self, other: &GeometricGraph) -> Result<GeometricGraph> {
        if self.points != other.points || self.steiner_from != other.steiner_from {
            return Err(Error::MismatchedPointLists {
                left: self.points.len(),
                right: other.points.len(),
            });
        }
        let mut out = self.clone();
        out.edges.extend(other.edges.iter().copied());
        Ok(out)
    }

    /// BFS hop counts from `from`; `None` for unreachable vertices.
    pub fn bfs_hops(&self, from: usize) -> Result<Vec<Option<u32>>> {
        if from >= self.points.len() {
            return Err(Error::IndexOutOfRange {
                index: from,
                len: self.points.len(),
            });
        }
        let adj = self.adjacency();
        let mut hops = vec![None; self.points.len()];
        hops[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            let d = hops[u].unwrap();
            for &v in &adj[u] {
                if hops[v].is_none() {
                    hops[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(hops)
    }

    /// The subgraph a routing agent at `center` is allowed to see: every
    /// vertex within `hops` edge hops, plus all edges among them.
    pub fn local_view(&self, center: usize, hops: u32) -> Result<LocalView> {
        if center >= self.points.len() {
            return Err(Error::IndexOutOfRange {
                index: center,
                len: self.points.len(),
            });
        }
        let adj = self.adjacency();
        let mut dist = vec![u32::MAX; self.points.len()];
        dist[center] = 0;
        let mut queue = VecDeque::from([center]);
        let mut vertices = vec![center];
        while let Some(u) = queue.pop_front() {
            if dist[u] == hops {
                continue;
            }
            for &v in &adj[u] {
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    vertices.push(v);
                    queue.push_back(v);
                }
            }
        }
        vertices.sort_unstable();
        let points = vertices.iter().map(|&v| self.points[v]).collect();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| dist[u] != u32::MAX && dist[v] != u32::MAX)
            .collect();
        Ok(LocalView {
            center,
            vertices,
            points,
            edges,
        })
    }

    /// Maximum over all site pairs of graph distance divided by straight-line
    /// distance, together with the pair attaining it. Helper vertices may
    /// serve as intermediate hops but are not measured as endpoints.
    ///
    /// Errors with the first unreachable pair if any site cannot reach
    /// another.
    pub fn spanning_ratio_witness(&self) -> Result<(f64, Option<(usize, usize)>)> {
        let sites = self.steiner_from;
        if sites <= 1 {
            return Ok((1.0, None));
        }
        let adj = self.adjacency();
        let mut worst = 1.0f64;
        let mut witness = None;
        for src in 0..sites {
            let dist = self.dijkstra(src, &adj);
            for (dst, &d) in dist.iter().enumerate().take(sites).skip(src + 1) {
                if !d.is_finite() {
                    return Err(Error::Disconnected { from: src, to: dst });
                }
                let ratio = d / self.points[src].dist(self.points[dst]);
                if ratio > worst {
                    worst = ratio;
                    witness = Some((src, dst));
                }
            }
        }
        Ok((worst, witness))
    }

    /// See [`GeometricGraph::spanning_ratio_witness`].
    pub fn spanning_ratio(&self) -> Result<f64> {
        self.spanning_ratio_witness().map(|(r, _)| r)
    }

    fn dijkstra(&self, src: usize, adj: &[Vec<usize>]) -> Vec<f64> {
        let mut dist = vec![f64::INFINITY; self.points.len()];
        dist[src] = 0.0;
        let mut heap = BinaryHeap::new();
        heap.push((Reverse(MinF64(0.0)), src));
        while let Some((Reverse(MinF64(d)), u)) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &v in &adj[u] {
                let nd = d + self.points[u].dist(self.points[v]);
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push((Reverse(MinF64(nd)), v));
                }
            }
        }
        dist
    }

    /// Check every pair of edges for planarity violations: proper crossings,
    /// endpoints interior to another edge, and collinear overlaps. Edges that
    /// only share an endpoint are fine. Quadratic in the edge count.
    pub fn planarity(&self) -> PlanarityReport {
        let all: Vec<(usize, usize)> = self.edges.iter().copied().collect();
        let mut crossings = Vec::new();
        for (k, &e1) in all.iter().enumerate() {
            for &e2 in &all[k + 1..] {
                if edges_conflict(&self.points, e1, e2) {
                    crossings.push((e1, e2));
                }
            }
        }
        PlanarityReport { crossings }
    }
}

/// Outcome of a planarity scan.
#[derive(Debug, Clone)]
pub struct PlanarityReport {
    /// Offending edge pairs, in edge-set order.
    pub crossings: Vec<((usize, usize), (usize, usize))>,
}

impl PlanarityReport {
    pub fn is_planar(&self) -> bool {
        self.crossings.is_empty()
    }
}

/// Whether two distinct edges violate planarity. Sharing one endpoint is
/// allowed unless the edges also overlap along a common ray.
fn edges_conflict(points: &[Point], e1: (usize, usize), e2: (usize, usize)) -> bool {
    let shared: Vec<usize> = [e1.0, e1.1]
        .into_iter()
        .filter(|&v| v == e2.0 || v == e2.1)
        .collect();
    match shared.len() {
        2 => false, // identical edge; the edge set cannot contain it twice
        1 => {
            let o = points[shared[0]];
            let a = points[if e1.0 == shared[0] { e1.1 } else { e1.0 }];
            let b = points[if e2.0 == shared[0] { e2.1 } else { e2.0 }];
            // Collinear and pointing the same way from the joint: overlap.
            orientation(o, a, b) == Orientation::Straight && (a - o).dot(b - o) > 0.0
        }
        _ => {
            let (p1, p2) = (points[e1.0], points[e1.1]);
            let (p3, p4) = (points[e2.0], points[e2.1]);
            let d1 = orientation(p3, p4, p1);
            let d2 = orientation(p3, p4, p2);
            let d3 = orientation(p1, p2, p3);
            let d4 = orientation(p1, p2, p4);
            if opposite_sides(d1, d2) && opposite_sides(d3, d4) {
                return true; // proper crossing
            }
            // Touching or collinear-overlap cases: some endpoint lies on the
            // other segment (it cannot be one of its endpoints here).
            (d1 == Orientation::Straight && on_segment(p1, p3, p4))
                || (d2 == Orientation::Straight && on_segment(p2, p3, p4))
                || (d3 == Orientation::Straight && on_segment(p3, p1, p2))
                || (d4 == Orientation::Straight && on_segment(p4, p1, p2))
        }
    }
}

fn opposite_sides(a: Orientation, b: Orientation) -> bool {
    matches!(
        (a, b),
        (Orientation::Left, Orientation::Right) | (Orientation::Right, Orientation::Left)
    )
}

/// `p` collinear with segment `ab` assumed; checks the projection falls
/// within the segment.
fn on_segment(p: Point, a: Point, b: Point) -> bool {
    let t = (p - a).dot(b - a);
    t >= 0.0 && t <= (b - a).dot(b - a)
}

/// What a routing step is allowed to inspect: the vertices within a fixed hop
/// radius of `center` and the edges among them, with global indices
/// preserved.
#[derive(Debug, Clone)]
pub struct LocalView {
    center: usize,
    /// Sorted global vertex ids, always including `center`.
    vertices: Vec<usize>,
    /// Coordinates parallel to `vertices`.
    points: Vec<Point>,
    /// Induced edges as global `(min, max)` id pairs.
    edges: BTreeSet<(usize, usize)>,
}

impl LocalView {
    /// Assemble a view directly; used by tests that hand-craft what an agent
    /// may see. Vertex ids need not be sorted on input.
    pub fn assemble(
        center: usize,
        mut members: Vec<(usize, Point)>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<LocalView> {
        members.sort_by_key(|&(id, _)| id);
        members.dedup_by_key(|&mut (id, _)| id);
        let vertices: Vec<usize> = members.iter().map(|&(id, _)| id).collect();
        let points: Vec<Point> = members.iter().map(|&(_, p)| p).collect();
        if vertices.binary_search(&center).is_err() {
            return Err(Error::InvalidConfig {
                msg: format!("view does not contain its center {center}"),
            });
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { index: u });
            }
            for i in [u, v] {
                if vertices.binary_search(&i).is_err() {
                    return Err(Error::IndexOutOfRange {
                        index: i,
                        len: vertices.len(),
                    });
                }
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(LocalView {
            center,
            vertices,
            points,
            edges: set,
        })
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn center_point(&self) -> Point {
        self.point_of(self.center).unwrap()
    }

    pub fn contains(&self, global: usize) -> bool {
        self.vertices.binary_search(&global).is_ok()
    }

    pub fn point_of(&self, global: usize) -> Option<Point> {
        self.vertices
            .binary_search(&global)
            .ok()
            .map(|slot| self.points[slot])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Neighbours of a view vertex, by global id, ascending.
    pub fn neighbors_of(&self, global: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(u, v)| {
                if u == global {
                    Some(v)
                } else if v == global {
                    Some(u)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Total-order wrapper so `f64` keys work in a binary heap.
#[derive(PartialEq)]
struct MinF64(f64);

impl Eq for MinF64 {}

impl PartialOrd for MinF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MinF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn graph(points: Vec<Point>, edges: &[(usize, usize)]) -> GeometricGraph {
        let mut g = GeometricGraph::new(points).unwrap();
        for &(u, v) in edges {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    #[test]
    fn construction_validates_points() {
        let dup = GeometricGraph::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 0.0)]);
        assert!(matches!(
            dup,
            Err(Error::DuplicatePoint {
                first: 0,
                second: 2,
                ..
            })
        ));
        let nan = GeometricGraph::new(vec![pt(0.0, f64::NAN)]);
        assert!(matches!(nan, Err(Error::NonFinitePoint { index: 0 })));
    }

    #[test]
    fn edges_normalise_and_reject_loops() {
        let mut g = GeometricGraph::new(vec![pt(0.0, 0.0), pt(1.0, 0.0)]).unwrap();
        g.add_edge(1, 0).unwrap();
        assert!(g.has_edge(0, 1));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert!(matches!(
            g.add_edge(0, 0),
            Err(Error::SelfLoop { index: 0 })
        ));
        assert!(matches!(
            g.add_edge(0, 5),
            Err(Error::IndexOutOfRange { index: 5, len: 2 })
        ));
    }

    #[test]
    fn union_requires_same_points() {
        let a = graph(vec![pt(0.0, 0.0), pt(1.0, 0.0)], &[(0, 1)]);
        let b = graph(vec![pt(0.0, 0.0), pt(2.0, 0.0)], &[(0, 1)]);
        assert!(matches!(
            a.union(&b),
            Err(Error::MismatchedPointLists { .. })
        ));
        let c = graph(vec![pt(0.0, 0.0), pt(1.0, 0.0)], &[]);
        assert_eq!(a.union(&c).unwrap().edge_count(), 1);
    }

    #[test]
    fn local_view_respects_hop_radius() {
        // Path 0-1-2-3-4.
        let g = graph(
            (0..5).map(|i| pt(i as f64, 0.0)).collect(),
            &[(0, 1), (1, 2), (2, 3), (3, 4)],
        );
        let view = g.local_view(0, 2).unwrap();
        assert_eq!(view.vertices(), &[0, 1, 2]);
        assert!(view.has_edge(0, 1) && view.has_edge(1, 2));
        assert!(!view.contains(3));
        assert_eq!(view.neighbors_of(1), vec![0, 2]);
        assert_eq!(view.point_of(2), Some(pt(2.0, 0.0)));
    }

    #[test]
    fn planarity_catches_proper_crossing() {
        // Square with both diagonals: the diagonals cross.
        let g = graph(
            vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)],
            &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)],
        );
        let report = g.planarity();
        assert_eq!(report.crossings, vec![((0, 2), (1, 3))]);

        let cycle = graph(
            vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)],
            &[(0, 1), (1, 2), (2, 3), (0, 3)],
        );
        assert!(cycle.planarity().is_planar());
    }

    #[test]
    fn planarity_catches_touching_and_overlap() {
        // Vertex 3 sits in the middle of edge (0, 1): a T-junction.
        let t = graph(
            vec![pt(0.0, 0.0), pt(2.0, 0.0), pt(1.0, 1.0), pt(1.0, 0.0)],
            &[(0, 1), (2, 3)],
        );
        assert!(!t.planarity().is_planar());

        // Edges (0,2) and (0,1) share vertex 0 and overlap along the x-axis.
        let overlap = graph(
            vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(2.0, 0.0)],
            &[(0, 2), (0, 1)],
        );
        assert!(!overlap.planarity().is_planar());

        // Shared endpoint pointing opposite ways is fine.
        let bend = graph(
            vec![pt(-1.0, 0.0), pt(0.0, 0.0), pt(1.0, 0.0)],
            &[(0, 1), (1, 2)],
        );
        assert!(bend.planarity().is_planar());
    }

    #[test]
    fn spanning_ratio_on_square_cycle() {
        let g = graph(
            vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)],
            &[(0, 1), (1, 2), (2, 3), (0, 3)],
        );
        // Worst pair is either diagonal: path length 2 vs distance √2.
        let (ratio, witness) = g.spanning_ratio_witness().unwrap();
        assert!((ratio - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(matches!(witness, Some((0, 2)) | Some((1, 3))));
    }

    #[test]
    fn spanning_ratio_reports_disconnection() {
        let g = graph(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(2.0, 0.0)], &[(0, 1)]);
        assert!(matches!(
            g.spanning_ratio(),
            Err(Error::Disconnected { from: 0, to: 2 })
        ));
    }

    #[test]
    fn steiner_vertices_are_intermediates_not_endpoints() {
        // Sites 0 and 1 far apart, helper 2 halfway; only site pairs are
        // measured, but the helper carries the path.
        let mut g = GeometricGraph::with_steiner(vec![pt(0.0, 0.0), pt(2.0, 0.0), pt(1.0, 1.0)], 2)
            .unwrap();
        g.add_edge(0, 2).unwrap();
        g.add_edge(2, 1).unwrap();
        let (ratio, witness) = g.spanning_ratio_witness().unwrap();
        assert_eq!(witness, Some((0, 1)));
        assert!((ratio - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(g.is_steiner(2) && !g.is_steiner(1));
    }

    #[test]
    fn bfs_hop_counts() {
        let g = graph(
            vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(2.0, 0.0), pt(5.0, 5.0)],
            &[(0, 1), (1, 2)],
        );
        let hops = g.bfs_hops(0).unwrap();
        assert_eq!(hops, vec![Some(0), Some(1), Some(2), None]);
    }
}
