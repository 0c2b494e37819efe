//! Greedy local routing over layered sweep graphs.
//!
//! A message at vertex `u` bound for `t` first picks the rotated layer whose
//! forward wedge at `u` contains `t`, then repeatedly applies a step rule
//! that sees nothing but a small [`LocalView`] around `u` and the target's
//! coordinates. The walk has two phases: while `t` is strictly inside the
//! forward wedge the message climbs along forward edges; once it leaves, the
//! side of `t` that holds `u` is fixed for good and the message hugs that
//! side's wedge boundary, taking side edges when one exists (case 1) and
//! forward edges otherwise (case 2).
//!
//! Every step strictly decreases `d_a + d_b`, where `d_a` is the distance
//! from `u` to the line through `t` parallel to the layer's base direction
//! and `d_b` the distance from `t` to the forward-wedge boundary line at `u`
//! on the side the walk hugs, so the walk terminates. The traversed
//! directions stay inside one closed interval of `90° + α`, which also caps
//! the detour at `1 / cos(45° + α/2)` times the straight-line distance.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Direction, Point, Wedge, ANGLE_TOL_DEG};
use crate::graph::{GeometricGraph, LocalView};
use crate::oracle::path_width;
use crate::sweep::{wedge_sweep_argmin, LayeredConfig, LayeredGraph, SweepFrame, WedgeKind};

/// Phase of the walk. `Climb` lasts while the target is strictly interior to
/// the current vertex's forward wedge; afterwards the mode is `Left` or
/// `Right` depending on which trailing wedge of the target holds the current
/// vertex, and never changes again.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RouteMode {
    Climb,
    Left,
    Right,
}

/// Which rule produced a step: a climb along the forward edge, a side edge
/// toward the target (case 1), or the forward-edge fallback when no side
/// edge qualifies (case 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepCase {
    Climb,
    Case1,
    Case2,
}

/// One forwarding decision, with the progress measures evaluated at the
/// vertex the step leaves from.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RouteStep {
    pub mode: RouteMode,
    pub case: StepCase,
    /// Distance to the line through the target parallel to the layer's base.
    pub d_a: f64,
    /// Distance from the target to the forward-wedge boundary line at the
    /// current vertex, on the side the walk hugs: the clockwise boundary in
    /// left mode, the counterclockwise one in right mode. Climb and case-2
    /// steps leave it alone or shrink it; case-1 steps shrink it strictly.
    pub d_b: f64,
    /// Wedge kind of the traversed edge.
    pub kind: WedgeKind,
}

/// A completed walk: the vertex sequence, one [`RouteStep`] per hop, and the
/// width and stretch of the traced path.
#[derive(Debug, Clone, Serialize)]
pub struct RouteTrace {
    pub path: Vec<usize>,
    pub steps: Vec<RouteStep>,
    /// Smallest closed angular interval covering every traversed direction.
    pub width_deg: f64,
    /// Traversed length over straight-line distance; 1.0 for a trivial walk.
    pub stretch: f64,
    /// 1-based layer the walk ran in.
    #[serde(skip)]
    pub layer: usize,
}

/// Everything the step rule is allowed to know between hops.
#[derive(Debug, Clone, Copy)]
pub struct RouteState {
    pub current: usize,
    pub target: usize,
    /// 1-based layer id the walk is committed to.
    pub layer: usize,
    pub mode: RouteMode,
    pub frame: SweepFrame,
}

/// Supplies the per-vertex views a walk consumes. Routing never touches the
/// graph through any other door, which is what makes locality testable: a
/// provider may hand out doctored views and the decisions must not notice as
/// long as the nearby vertices are intact.
pub trait ViewProvider {
    fn local_view(&self, center: usize) -> Result<LocalView>;
}

/// Views of a fixed graph with a fixed hop radius.
pub struct GraphViews<'a> {
    graph: &'a GeometricGraph,
    hops: u32,
}

impl<'a> GraphViews<'a> {
    pub fn new(graph: &'a GeometricGraph, hops: u32) -> Self {
        GraphViews { graph, hops }
    }
}

impl ViewProvider for GraphViews<'_> {
    fn local_view(&self, center: usize) -> Result<LocalView> {
        self.graph.local_view(center, self.hops)
    }
}

/// The 1-based layer (out of `k`) whose forward wedge at `q` contains `t`.
/// The wedges tile the circle with shared boundaries; a boundary direction
/// resolves to the lowest layer id.
pub fn select_layer(q: Point, t: Point, k: usize) -> Result<usize> {
    LayeredConfig::new(k, false)?;
    if q == t {
        return Err(Error::InvalidConfig {
            msg: "cannot pick a layer for identical endpoints".into(),
        });
    }
    let dir = Direction::of_vector(t - q);
    for i in 1..=k {
        let frame = SweepFrame::isoceles_layer(k, i);
        if frame.wedge(q, WedgeKind::A).contains_dir(dir) {
            return Ok(i);
        }
    }
    Err(Error::RoutingInvariant {
        msg: format!("no forward wedge contains direction {}", dir.degrees()),
    })
}

/// Distance of `u` below the target's base line, and distance of the target
/// from the forward-wedge boundary line at `u` — the clockwise boundary
/// unless the walk hugs the right side. Their sum strictly decreases at
/// every step of a walk, whatever mix of climb and side steps it takes.
fn progress(frame: &SweepFrame, right: bool, u: Point, t: Point) -> (f64, f64) {
    let d_a = frame.sweep_normal(WedgeKind::A).unit().dot(t - u);
    let forward = frame.wedge(u, WedgeKind::A);
    let normal = if right {
        forward.end().rotate(-90.0)
    } else {
        forward.start.rotate(90.0)
    };
    let d_b = normal.unit().dot(t - u);
    (d_a, d_b)
}

fn neighbor_points(view: &LocalView, x: usize) -> Result<Vec<(usize, Point)>> {
    view.neighbors_of(x)
        .into_iter()
        .map(|w| match view.point_of(w) {
            Some(p) => Ok((w, p)),
            None => Err(Error::RoutingInvariant {
                msg: format!("view of {} lacks coordinates for vertex {w}", view.center()),
            }),
        })
        .collect()
}

/// Sweep-argmin over the center's view neighbours in its own `kind` wedge.
/// The true wedge-nearest vertex is always a graph neighbour, so restricting
/// the argmin to the view loses nothing.
fn neighbor_argmin(view: &LocalView, frame: &SweepFrame, kind: WedgeKind) -> Result<Option<usize>> {
    let wedge = frame.wedge(view.center_point(), kind);
    let cands = neighbor_points(view, view.center())?;
    Ok(wedge_sweep_argmin(&wedge, frame.sweep_normal(kind), cands))
}

fn stuck(u: usize, kind: WedgeKind) -> Error {
    Error::RoutingInvariant {
        msg: format!("vertex {u} has no {kind:?}-wedge edge to advance along"),
    }
}

/// Which trailing wedge of the target holds `u` once the climb is over. The
/// two wedges share no interior; if `u` sits on both boundaries at once the
/// left side wins.
fn side_of(frame: &SweepFrame, u: Point, t: Point) -> Result<RouteMode> {
    if frame.wedge(t, WedgeKind::B).contains(u)? {
        Ok(RouteMode::Left)
    } else if frame.wedge(t, WedgeKind::C).contains(u)? {
        Ok(RouteMode::Right)
    } else {
        Err(Error::RoutingInvariant {
            msg: format!(
                "({}, {}) is in neither trailing wedge of the target",
                u.x, u.y
            ),
        })
    }
}

/// Decides whether the walk is still climbing: the target must be strictly
/// interior to the forward wedge, so boundary directions end the climb.
fn still_climbing(frame: &SweepFrame, u: Point, t: Point) -> bool {
    let wedge = frame.wedge(u, WedgeKind::A);
    let delta = wedge.start.ccw_to(Direction::of_vector(t - u));
    delta > ANGLE_TOL_DEG && delta < wedge.extent - ANGLE_TOL_DEG
}

/// One side-mode step: scan the neighbours angularly starting from the base
/// direction pointing past the target (clockwise from it on the left side,
/// counterclockwise on the right) and take the first neighbour that keeps
/// both endpoints inside the side wedges involved; fall back on the forward
/// edge when none qualifies. `admit` filters candidates that the surrounding
/// walk cannot certify as in-layer — the identity filter when views already
/// come from one layer.
fn side_step(
    view: &LocalView,
    frame: &SweepFrame,
    target: usize,
    target_pos: Point,
    side: WedgeKind,
    admit: &dyn Fn(&LocalView, usize, WedgeKind) -> Result<bool>,
) -> Result<(usize, StepCase, WedgeKind)> {
    let u = view.center();
    let up = view.center_point();
    if !frame.wedge(target_pos, side).contains(up)? {
        return Err(Error::RoutingInvariant {
            msg: format!("vertex {u} escaped the target's {side:?}-side wedge"),
        });
    }
    // Qualifying candidates point into a closed interval of extent 90° − α
    // whose flat end is the base direction toward the target's side; the
    // scan leaves that end last toward the steep end. Wrap keys near 360°
    // back below zero so tolerance-admitted candidates a hair past the flat
    // end still sort first.
    let scan_origin = match side {
        WedgeKind::B => frame.dir_bc().opposite(),
        _ => frame.dir_bc(),
    };
    let mut cands: Vec<(f64, usize)> = neighbor_points(view, u)?
        .into_iter()
        .map(|(v, p)| {
            let d = Direction::of_vector(p - up);
            let mut angle = match side {
                WedgeKind::B => d.ccw_to(scan_origin),
                _ => scan_origin.ccw_to(d),
            };
            if angle > 180.0 {
                angle -= 360.0;
            }
            (angle, v)
        })
        .collect();
    cands.sort_by(|a, b| a.partial_cmp(b).expect("finite sort keys"));
    for (_, v) in cands {
        let vp = view.point_of(v).expect("neighbor in view");
        if v != target && !frame.wedge(target_pos, side).contains(vp)? {
            continue;
        }
        if !frame.wedge(vp, side).contains(up)? {
            continue;
        }
        if !admit(view, v, side)? {
            continue;
        }
        return Ok((v, StepCase::Case1, side));
    }
    let v = neighbor_argmin(view, frame, WedgeKind::A)?.ok_or_else(|| stuck(u, WedgeKind::A))?;
    Ok((v, StepCase::Case2, WedgeKind::A))
}

fn step_impl(
    view: &LocalView,
    state: &RouteState,
    target_pos: Point,
    admit: &dyn Fn(&LocalView, usize, WedgeKind) -> Result<bool>,
) -> Result<(RouteState, RouteStep)> {
    if view.center() != state.current {
        return Err(Error::InvalidConfig {
            msg: format!(
                "view is centred on {}, state on {}",
                view.center(),
                state.current
            ),
        });
    }
    let up = view.center_point();
    if state.current == state.target || up == target_pos {
        return Err(Error::InvalidConfig {
            msg: "stepping from the target itself".into(),
        });
    }
    let frame = state.frame;
    let mode = match state.mode {
        RouteMode::Climb if still_climbing(&frame, up, target_pos) => RouteMode::Climb,
        RouteMode::Climb => side_of(&frame, up, target_pos)?,
        m => m,
    };
    let (next, case, kind) = match mode {
        RouteMode::Climb => {
            let v = neighbor_argmin(view, &frame, WedgeKind::A)?
                .ok_or_else(|| stuck(state.current, WedgeKind::A))?;
            (v, StepCase::Climb, WedgeKind::A)
        }
        RouteMode::Left => side_step(view, &frame, state.target, target_pos, WedgeKind::B, admit)?,
        RouteMode::Right => side_step(view, &frame, state.target, target_pos, WedgeKind::C, admit)?,
    };
    let (d_a, d_b) = progress(&frame, mode == RouteMode::Right, up, target_pos);
    let step = RouteStep {
        mode,
        case,
        d_a,
        d_b,
        kind,
    };
    let next_state = RouteState {
        current: next,
        mode,
        ..*state
    };
    Ok((next_state, step))
}

/// One step of the walk over a view of the chosen layer's graph. Everything
/// the decision uses — neighbour coordinates and incident edges — lies
/// within two hops of the current vertex.
pub fn route_step(
    view: &LocalView,
    state: &RouteState,
    target_pos: Point,
) -> Result<(RouteState, RouteStep)> {
    step_impl(view, state, target_pos, &|_, _, _| Ok(true))
}

#[allow(clippy::too_many_arguments)]
fn run_route<V, F>(
    views: &V,
    frame: SweepFrame,
    layer: usize,
    q: usize,
    t: usize,
    target_pos: Point,
    max_steps: usize,
    step: F,
) -> Result<RouteTrace>
where
    V: ViewProvider + ?Sized,
    F: Fn(&LocalView, &RouteState, Point) -> Result<(RouteState, RouteStep)>,
{
    if q == t {
        return Ok(RouteTrace {
            path: vec![q],
            steps: Vec::new(),
            width_deg: 0.0,
            stretch: 1.0,
            layer,
        });
    }
    let mut state = RouteState {
        current: q,
        target: t,
        layer,
        mode: RouteMode::Climb,
        frame,
    };
    let mut path = vec![q];
    let mut steps: Vec<RouteStep> = Vec::new();
    let mut positions: Vec<Point> = Vec::new();
    while state.current != t {
        let view = views.local_view(state.current)?;
        if positions.is_empty() {
            positions.push(view.center_point());
        }
        let (next_state, record) = step(&view, &state, target_pos)?;
        let next = next_state.current;
        let np = view.point_of(next).ok_or_else(|| Error::RoutingInvariant {
            msg: format!(
                "step target {next} missing from the view of {}",
                state.current
            ),
        })?;
        path.push(next);
        positions.push(np);
        steps.push(record);
        if steps.len() > max_steps {
            return Err(Error::RoutingInvariant {
                msg: format!("no termination after {max_steps} steps from {q} to {t}"),
            });
        }
        state = next_state;
    }
    // Re-express the per-step measures against the boundary the walk turned
    // out to hug, so one sum is strictly decreasing over the whole trace even
    // across the climb-to-side transition.
    let right = steps.iter().any(|s| s.mode == RouteMode::Right);
    for (s, &p) in steps.iter_mut().zip(&positions) {
        let (d_a, d_b) = progress(&frame, right, p, target_pos);
        s.d_a = d_a;
        s.d_b = d_b;
    }
    let width_deg = path_width(&positions)?;
    let travelled: f64 = positions.windows(2).map(|w| w[0].dist(w[1])).sum();
    let stretch = travelled / positions[0].dist(target_pos);
    Ok(RouteTrace {
        path,
        steps,
        width_deg,
        stretch,
        layer,
    })
}

/// Walk from `q` to `t` over externally supplied views of one layer's graph,
/// in the given frame. [`route`] wraps this with the layer picked from the
/// endpoint geometry; tests substitute their own [`ViewProvider`] to prove
/// the decisions depend on nearby vertices only.
pub fn route_with_views<V: ViewProvider + ?Sized>(
    views: &V,
    frame: SweepFrame,
    layer: usize,
    q: usize,
    t: usize,
    target_pos: Point,
    max_steps: usize,
) -> Result<RouteTrace> {
    run_route(views, frame, layer, q, t, target_pos, max_steps, route_step)
}

/// Route a message from `q` to `t` through the layered graph, consuming only
/// 2-hop views of the layer the endpoints select.
pub fn route(h: &LayeredGraph, q: usize, t: usize) -> Result<RouteTrace> {
    if h.cfg().even_only() {
        return Err(Error::InvalidConfig {
            msg: "routing needs every layer; an even-layer union lacks the frames \
                  half the endpoint directions select"
                .into(),
        });
    }
    let g = h.union();
    let qp = g.point(q)?;
    let tp = g.point(t)?;
    if q == t {
        return Ok(RouteTrace {
            path: vec![q],
            steps: Vec::new(),
            width_deg: 0.0,
            stretch: 1.0,
            layer: 0,
        });
    }
    let layer = select_layer(qp, tp, h.cfg().k())?;
    let gi = h.layer(layer).ok_or_else(|| Error::InvalidConfig {
        msg: format!("layer {layer} was not built"),
    })?;
    let frame = *h.frame(layer).expect("frame exists for a built layer");
    let views = GraphViews::new(gi, 2);
    let max_steps = gi.len() + gi.edge_count() + 1;
    route_with_views(&views, frame, layer, q, t, tp, max_steps)
}

/// Decides whether an edge of the union graph belongs to the layer of
/// `frame`, from a 2-hop view centred on `u` alone. An edge is in the layer
/// exactly when one endpoint is the other's sweep-nearest in some wedge, and
/// both argmins are computable locally: each endpoint's true wedge-nearest
/// is one of its graph neighbours, and `v`'s neighbours all sit within two
/// hops of `u`.
pub fn edge_in_layer(view: &LocalView, u: usize, v: usize, frame: &SweepFrame) -> Result<bool> {
    if view.center() != u {
        return Err(Error::InvalidConfig {
            msg: format!("view is centred on {}, not on {u}", view.center()),
        });
    }
    if !view.has_edge(u, v) {
        return Err(Error::InvalidConfig {
            msg: format!("({u}, {v}) is not an edge of the viewed graph"),
        });
    }
    let up = view.center_point();
    let vp = view.point_of(v).ok_or_else(|| Error::RoutingInvariant {
        msg: format!("view of {u} lacks coordinates for vertex {v}"),
    })?;
    for (apex, other, x) in [(up, vp, u), (vp, up, v)] {
        let cands = neighbor_points(view, x)?;
        for kind in WedgeKind::ALL {
            let wedge = frame.wedge(apex, kind);
            if wedge.contains(other)?
                && wedge_sweep_argmin(&wedge, frame.sweep_normal(kind), cands.iter().copied())
                    == Some(if x == u { v } else { u })
            {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Decides from a 1-hop view whether the full six-cone graph's edge from the
/// view's center to `v` belongs to the half graph of `frame`, given that the
/// center lies in `W_{v, side}`.
///
/// The edge was created by a cone argmin at one endpoint or the other. If
/// `v` is not the center's argmin in the cone pointing at `v`, only `v`'s
/// side can explain the edge, which is the half graph asked about. Otherwise
/// the decision reduces to whether the center is `v`'s sweep-nearest in the
/// side wedge. Points of that wedge nearer to `v` than the center fall in
/// three zones around the center: the two flanking wedges, and between them
/// the reflection of the side cone — which the argmin equality already
/// proves empty. Each flank is downward closed under its own sweep order, so
/// it holds a competitor exactly when the center's flank-nearest lands
/// inside the side wedge at `v`. All of it reads only the center's own
/// incident edges. Exact cone-boundary collinearities can defeat the
/// creator analysis, so callers should expect agreement with the 2-hop rule
/// in general position.
fn theta6_half_edge(
    view: &LocalView,
    v: usize,
    frame: &SweepFrame,
    side: WedgeKind,
) -> Result<bool> {
    let up = view.center_point();
    let vp = view.point_of(v).ok_or_else(|| Error::RoutingInvariant {
        msg: format!("view of {} lacks coordinates for vertex {v}", view.center()),
    })?;
    let nbrs = neighbor_points(view, view.center())?;

    // Creation from the center's own side of this layer.
    for kind in WedgeKind::ALL {
        let wedge = frame.wedge(up, kind);
        if wedge.contains(vp)?
            && wedge_sweep_argmin(&wedge, frame.sweep_normal(kind), nbrs.iter().copied()) == Some(v)
        {
            return Ok(true);
        }
    }

    let side_at_u = frame.wedge(up, side);
    let opposite = Wedge::new(up, side_at_u.start.rotate(180.0), side_at_u.extent);
    if wedge_sweep_argmin(&opposite, opposite.bisector(), nbrs.iter().copied()) != Some(v) {
        return Ok(true);
    }

    let side_at_v = frame.wedge(vp, side);
    let flanks = match side {
        WedgeKind::B => [WedgeKind::A, WedgeKind::C],
        _ => [WedgeKind::A, WedgeKind::B],
    };
    for kind in flanks {
        let wedge = frame.wedge(up, kind);
        if let Some(n) = wedge_sweep_argmin(&wedge, frame.sweep_normal(kind), nbrs.iter().copied())
        {
            if n != v {
                let np = view.point_of(n).expect("neighbor in view");
                if side_at_v.contains(np)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// One step of the six-cone walk over a 1-hop view of the full graph.
/// Identical decisions to [`route_step`] on the selected half graph, but the
/// half-graph membership of side-edge candidates is inferred from the
/// center's own incident edges instead of being given by the view.
pub fn route_theta6_step(
    view: &LocalView,
    state: &RouteState,
    target_pos: Point,
) -> Result<(RouteState, RouteStep)> {
    step_impl(view, state, target_pos, &|view, v, side| {
        theta6_half_edge(view, v, &state.frame, side)
    })
}

/// Route on the full six-cone graph with 1-hop views only. Produces the same
/// vertex sequence as [`route`] does on the six-layer graph over the same
/// points.
pub fn route_theta6_1local(g: &GeometricGraph, q: usize, t: usize) -> Result<RouteTrace> {
    let qp = g.point(q)?;
    let tp = g.point(t)?;
    if q == t {
        return Ok(RouteTrace {
            path: vec![q],
            steps: Vec::new(),
            width_deg: 0.0,
            stretch: 1.0,
            layer: 0,
        });
    }
    let layer = select_layer(qp, tp, 6)?;
    let frame = SweepFrame::isoceles_layer(6, layer);
    let views = GraphViews::new(g, 1);
    let max_steps = g.len() + g.edge_count() + 1;
    run_route(&views, frame, layer, q, t, tp, max_steps, route_theta6_step)
}
