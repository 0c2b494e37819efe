//! Sweep-based constructions: a triangle of angles is slid over every point,
//! and each point is joined to the first point found in each of its three
//! wedges. Rotated copies of the frame are unioned into graphs of width
//! `90° + α`.
//!
//! A frame with angles `θa + θb + θc = 180°` and a clockwise `rotation`
//! defines, at every point `q`, three closed wedges `W_{q,a}`, `W_{q,b}`,
//! `W_{q,c}` congruent to the triangle's corners. The `a` corner bisected by
//! the vertically-upward ray at rotation 0; `b` sits counterclockwise of `a`.
//! Each wedge is swept by a line parallel to the opposite triangle side, so
//! "nearest" means smallest projection onto that side's normal — not
//! Euclidean distance.

use crate::error::{Error, Result};
use crate::geometry::{Direction, Point, Wedge};
use crate::graph::GeometricGraph;
use serde::Serialize;

/// Which corner of the sweep triangle a wedge or edge belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WedgeKind {
    A,
    B,
    C,
}

impl WedgeKind {
    pub const ALL: [WedgeKind; 3] = [WedgeKind::A, WedgeKind::B, WedgeKind::C];
}

/// Angular tolerance below which two sweep distances count as tied.
const SWEEP_TIE_TOL: f64 = 1e-9;

/// A sweep triangle: three corner angles and a clockwise rotation of the
/// whole configuration.
///
/// Angles must be positive and sum to 180°. Corners may be obtuse — the
/// wide-corner frames used by the Steiner construction rely on that — but
/// every corner stays below 180°, which keeps all three sweep normals within
/// 90° of their wedge boundaries and hence sweep progress strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepFrame {
    theta_a: f64,
    theta_b: f64,
    theta_c: f64,
    /// Clockwise rotation in degrees.
    rotation: f64,
}

impl SweepFrame {
    pub fn new(theta_a: f64, theta_b: f64, theta_c: f64, rotation: f64) -> Result<SweepFrame> {
        for t in [theta_a, theta_b, theta_c] {
            if !(t > 0.0 && t < 180.0) || !t.is_finite() {
                return Err(Error::InvalidConfig {
                    msg: format!("frame angle {t} outside (0, 180)"),
                });
            }
        }
        if (theta_a + theta_b + theta_c - 180.0).abs() > 1e-9 {
            return Err(Error::InvalidConfig {
                msg: format!(
                    "frame angles sum to {}, need 180",
                    theta_a + theta_b + theta_c
                ),
            });
        }
        if !rotation.is_finite() {
            return Err(Error::InvalidConfig {
                msg: "non-finite rotation".into(),
            });
        }
        Ok(SweepFrame {
            theta_a,
            theta_b,
            theta_c,
            rotation,
        })
    }

    /// The isoceles frame of layer `i` (1-based) out of `k`: apex angle
    /// `2α`, base angles `90° − α`, rotated clockwise by `(i−1)·360°/k`.
    pub fn isoceles_layer(k: usize, i: usize) -> SweepFrame {
        let alpha = 180.0 / k as f64;
        let rotation = (i - 1) as f64 * (360.0 / k as f64);
        SweepFrame::new(2.0 * alpha, 90.0 - alpha, 90.0 - alpha, rotation)
            .expect("isoceles layer angles are always valid")
    }

    pub fn theta(&self, kind: WedgeKind) -> f64 {
        match kind {
            WedgeKind::A => self.theta_a,
            WedgeKind::B => self.theta_b,
            WedgeKind::C => self.theta_c,
        }
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn is_acute(&self) -> bool {
        self.theta_a < 90.0 && self.theta_b < 90.0 && self.theta_c < 90.0
    }

    // Raw (unnormalised) degree values for the three side directions; keeping
    // them raw lets derived angles come out bit-identical across frames that
    // are rotations of each other by exact multiples.
    fn raw_ab(&self) -> f64 {
        90.0 - self.rotation + self.theta_a / 2.0
    }

    fn raw_ac(&self) -> f64 {
        90.0 - self.rotation - self.theta_a / 2.0
    }

    fn raw_bc(&self) -> f64 {
        self.raw_ab() - 180.0 + self.theta_b
    }

    /// Direction from corner A to corner B.
    pub fn dir_ab(&self) -> Direction {
        Direction::of_degrees(self.raw_ab())
    }

    /// Direction from corner A to corner C.
    pub fn dir_ac(&self) -> Direction {
        Direction::of_degrees(self.raw_ac())
    }

    /// Direction from corner B to corner C.
    pub fn dir_bc(&self) -> Direction {
        Direction::of_degrees(self.raw_bc())
    }

    /// The wedge of the given corner, translated to `apex`. Its clockwise
    /// boundary is the wedge's `start`.
    pub fn wedge(&self, apex: Point, kind: WedgeKind) -> Wedge {
        let (start, extent) = match kind {
            WedgeKind::A => (self.raw_ac(), self.theta_a),
            WedgeKind::B => (self.raw_ab() - 180.0, self.theta_b),
            WedgeKind::C => (self.raw_bc() - 180.0, self.theta_c),
        };
        Wedge::new(apex, Direction::of_degrees(start), extent)
    }

    /// Direction of sweep progress for the given wedge: the normal of the
    /// opposite triangle side, pointing into the wedge.
    pub fn sweep_normal(&self, kind: WedgeKind) -> Direction {
        let raw = match kind {
            WedgeKind::A => self.raw_bc() + 90.0,
            WedgeKind::B => self.raw_ac() - 90.0,
            WedgeKind::C => self.raw_ab() + 90.0,
        };
        Direction::of_degrees(raw)
    }
}

/// The argmin shared by every sweep-style construction and by the routing
/// step rule: among `candidates` inside `wedge`, the one with the smallest
/// projection onto `normal`. Candidates within 1e-9 of the true minimum count
/// as tied; ties go to the direction closest to the wedge's clockwise `start`
/// boundary, then to the lowest index. Two passes keep the result independent
/// of candidate order.
pub(crate) fn wedge_sweep_argmin<I>(
    wedge: &Wedge,
    normal: Direction,
    candidates: I,
) -> Option<usize>
where
    I: IntoIterator<Item = (usize, Point)>,
{
    let n = normal.unit();
    let mut admitted: Vec<(f64, f64, usize)> = Vec::new();
    let mut min_dist = f64::INFINITY;
    for (i, p) in candidates {
        if p == wedge.apex {
            continue;
        }
        let dir = Direction::of_vector(p - wedge.apex);
        if !wedge.contains_dir(dir) {
            continue;
        }
        // Clockwise-ness from the start boundary; directions a hair below the
        // boundary (admitted by tolerance) rank as slightly negative rather
        // than as a full turn.
        let mut clock = wedge.start.ccw_to(dir);
        if clock > 180.0 {
            clock -= 360.0;
        }
        let dist = n.dot(p - wedge.apex);
        min_dist = min_dist.min(dist);
        admitted.push((dist, clock, i));
    }
    admitted
        .into_iter()
        .filter(|&(dist, _, _)| dist <= min_dist + SWEEP_TIE_TOL)
        .map(|(_, clock, i)| (clock, i))
        .min_by(|a, b| a.partial_cmp(b).expect("finite sort keys"))
        .map(|(_, i)| i)
}

/// Sweep-nearest neighbour of `points[q]` inside its `kind` wedge: the point
/// with the smallest projection onto the sweep normal. `None` when the wedge
/// contains no other point. Tie handling is described on
/// [`wedge_sweep_argmin`].
pub fn nearest_in_wedge(
    points: &[Point],
    q: usize,
    frame: &SweepFrame,
    kind: WedgeKind,
) -> Option<usize> {
    let wedge = frame.wedge(points[q], kind);
    let candidates = points.iter().copied().enumerate().filter(|&(i, _)| i != q);
    wedge_sweep_argmin(&wedge, frame.sweep_normal(kind), candidates)
}

/// Connect every point to its sweep-nearest neighbour in each of the three
/// wedges of `frame`.
pub fn build_3sweep(points: &[Point], frame: &SweepFrame) -> Result<GeometricGraph> {
    if points.is_empty() {
        return Err(Error::EmptyInput {
            msg: "sweep construction needs at least one point".into(),
        });
    }
    let mut g = GeometricGraph::new(points.to_vec())?;
    for q in 0..points.len() {
        for kind in WedgeKind::ALL {
            if let Some(p) = nearest_in_wedge(points, q, frame, kind) {
                g.add_edge(q, p)?;
            }
        }
    }
    Ok(g)
}

/// A maximal chain of same-kind sweep edges starting at some vertex.
#[derive(Debug, Clone)]
pub struct SweepPath {
    pub vertices: Vec<usize>,
    pub kind: WedgeKind,
    /// The final vertex's wedge is empty of points; the path cannot be
    /// extended further.
    pub extended: bool,
}

/// Follow `kind`-nearest pointers from `q` until a vertex with an empty
/// wedge. Terminates because every hop strictly increases the projection
/// onto the sweep normal.
pub fn sweep_path(
    g: &GeometricGraph,
    frame: &SweepFrame,
    q: usize,
    kind: WedgeKind,
) -> Result<SweepPath> {
    let points = g.points();
    if q >= points.len() {
        return Err(Error::IndexOutOfRange {
            index: q,
            len: points.len(),
        });
    }
    let mut vertices = vec![q];
    let mut cur = q;
    while let Some(next) = nearest_in_wedge(points, cur, frame, kind) {
        debug_assert!(
            g.has_edge(cur, next),
            "sweep path hop ({cur}, {next}) missing from graph"
        );
        vertices.push(next);
        cur = next;
        if vertices.len() > points.len() {
            return Err(Error::RoutingInvariant {
                msg: format!("sweep path from {q} revisits vertices"),
            });
        }
    }
    Ok(SweepPath {
        vertices,
        kind,
        extended: true,
    })
}

/// Parameters of the rotated-frame union.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayeredConfig {
    k: usize,
    even_only: bool,
}

impl LayeredConfig {
    /// `k` rotated layers with apex angle `2α = 360°/k`. Needs `k ≥ 5` so the
    /// apex angle stays below 90°; `even_only` keeps layers 2, 4, …, k and is
    /// only sound when `k ≡ 2 (mod 4)`, where dropped layers are mirror
    /// images of kept ones.
    pub fn new(k: usize, even_only: bool) -> Result<LayeredConfig> {
        if k < 5 {
            return Err(Error::InvalidConfig {
                msg: format!("need k >= 5 layers, got {k}"),
            });
        }
        if even_only && k % 4 != 2 {
            return Err(Error::InvalidConfig {
                msg: format!("even-layer sparsification needs k ≡ 2 (mod 4), got k = {k}"),
            });
        }
        Ok(LayeredConfig { k, even_only })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn even_only(&self) -> bool {
        self.even_only
    }

    /// Half the apex angle; the width guarantee is `90° + α`.
    pub fn alpha(&self) -> f64 {
        180.0 / self.k as f64
    }

    /// 1-based indices of the layers that are actually built.
    pub fn layer_ids(&self) -> Vec<usize> {
        if self.even_only {
            (1..=self.k).filter(|i| i % 2 == 0).collect()
        } else {
            (1..=self.k).collect()
        }
    }
}

/// Union of rotated sweep layers, with the per-layer graphs retained for
/// routing and diagnostics.
#[derive(Debug, Clone)]
pub struct LayeredGraph {
    cfg: LayeredConfig,
    /// Frames for layers 1..=k (all of them, even when only some are built).
    frames: Vec<SweepFrame>,
    /// Built layers, as (1-based layer id, graph).
    layers: Vec<(usize, GeometricGraph)>,
    union: GeometricGraph,
}

impl LayeredGraph {
    pub fn cfg(&self) -> &LayeredConfig {
        &self.cfg
    }

    /// Frame of a 1-based layer id, whether or not that layer was built.
    pub fn frame(&self, layer: usize) -> Option<&SweepFrame> {
        self.frames.get(layer.checked_sub(1)?)
    }

    pub fn layer(&self, layer: usize) -> Option<&GeometricGraph> {
        self.layers
            .iter()
            .find(|(id, _)| *id == layer)
            .map(|(_, g)| g)
    }

    pub fn layers(&self) -> impl Iterator<Item = (usize, &GeometricGraph)> {
        self.layers.iter().map(|(id, g)| (*id, g))
    }

    pub fn union(&self) -> &GeometricGraph {
        &self.union
    }

    pub fn into_union(self) -> GeometricGraph {
        self.union
    }
}

/// Build every layer of `cfg` over the given points and union them.
pub fn build_layered(points: &[Point], cfg: LayeredConfig) -> Result<LayeredGraph> {
    if points.is_empty() {
        return Err(Error::EmptyInput {
            msg: "layered construction needs at least one point".into(),
        });
    }
    let frames: Vec<SweepFrame> = (1..=cfg.k())
        .map(|i| SweepFrame::isoceles_layer(cfg.k(), i))
        .collect();
    let mut layers = Vec::new();
    let mut union = GeometricGraph::new(points.to_vec())?;
    for id in cfg.layer_ids() {
        let g = build_3sweep(points, &frames[id - 1])?;
        union = union.union(&g)?;
        layers.push((id, g));
    }
    Ok(LayeredGraph {
        cfg,
        frames,
        layers,
        union,
    })
}

/// Full-Θ₆ graph, built directly: six closed 60° cones per point, nearest by
/// projection onto the cone bisector, ties resolved most-clockwise then
/// lowest index. With `k = 6` the layered frames degenerate to equilateral
/// triangles whose sweep normals are exactly these bisectors, so this must
/// produce the identical edge set — it serves as an independent
/// cross-implementation.
pub fn build_theta6_direct(points: &[Point]) -> Result<GeometricGraph> {
    if points.is_empty() {
        return Err(Error::EmptyInput {
            msg: "theta-graph construction needs at least one point".into(),
        });
    }
    let mut g = GeometricGraph::new(points.to_vec())?;
    for q in 0..points.len() {
        let apex = points[q];
        for j in 0..6 {
            let wedge = Wedge::new(apex, Direction::of_degrees(60.0 * j as f64), 60.0);
            let candidates = points.iter().copied().enumerate().filter(|&(i, _)| i != q);
            if let Some(p) = wedge_sweep_argmin(&wedge, wedge.bisector(), candidates) {
                g.add_edge(q, p)?;
            }
        }
    }
    Ok(g)
}
