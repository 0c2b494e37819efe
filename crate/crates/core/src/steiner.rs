//! Width-γ spanning graphs for any γ ∈ (0°, 90°] with 360/γ integer, built
//! by adding helper points.
//!
//! Two sweep triangles sharing their apex wedge are swept over the sites;
//! wherever the two apex sweep paths from a point diverge, a geometrically
//! shrinking chain of helper points is planted along the right apex-wedge
//! boundary so that one path can always hand over to the other. Rotated
//! copies of the whole construction are unioned until every direction is
//! covered. The number of helper points scales with log(μ/λ), where μ is the
//! largest pairwise distance and λ the smallest "slab" separation
//! ([`distance_params`]).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::{Direction, Line, Point};
use crate::graph::GeometricGraph;
use crate::sweep::{build_3sweep, nearest_in_wedge, SweepFrame, WedgeKind};

/// Shrink factor of successive helper-chain segments never exceeds 3/4.
const DECAY_CEILING: f64 = 0.75;

/// Hard cap on helper-chain length; the geometric shrink rate of at most
/// [`DECAY_CEILING`] reaches machine epsilon long before this.
const MAX_CHAIN: usize = 512;

/// Relative λ/μ ratio below which the construction refuses to run.
const SEPARATION_FLOOR: f64 = 1e-9;

/// Parameters of the two-triangle construction for a target width γ.
///
/// The first triangle has corner angles (γ/2, 180°−γ, γ/2), the second
/// (γ/2, γ/2, 180°−γ); both share the apex corner, so their apex wedges
/// coincide while the sweep lines through those wedges tilt opposite ways.
/// For γ < 90° the middle corner is obtuse; the sweep definition is
/// unaffected (only planarity arguments need acute corners, and none are
/// claimed here).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteinerConfig {
    gamma: f64,
    t: usize,
}

impl SteinerConfig {
    pub fn new(gamma: f64) -> Result<SteinerConfig> {
        if !gamma.is_finite() || gamma <= 0.0 || gamma > 90.0 {
            return Err(Error::InvalidConfig {
                msg: format!("target width must be in (0, 90], got {gamma}"),
            });
        }
        let t_f = 360.0 / gamma;
        let t = t_f.round();
        if (t_f - t).abs() > 1e-9 {
            return Err(Error::InvalidConfig {
                msg: format!("360/{gamma} = {t_f} is not an integer orientation count"),
            });
        }
        Ok(SteinerConfig {
            gamma,
            t: t as usize,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Number of rotated copies in the final union.
    pub fn t(&self) -> usize {
        self.t
    }

    /// The two frames of orientation `i` (0-based). Consecutive orientations
    /// rotate by γ/2 — the apex wedge's own extent — so the `t` copies tile
    /// a closed half-circle of directions and every point pair falls inside
    /// some apex wedge, one way or the other.
    pub fn frames(&self, i: usize) -> (SweepFrame, SweepFrame) {
        let g = self.gamma;
        let rot = i as f64 * g / 2.0;
        let first =
            SweepFrame::new(g / 2.0, 180.0 - g, g / 2.0, rot).expect("validated angles sum to 180");
        let second =
            SweepFrame::new(g / 2.0, g / 2.0, 180.0 - g, rot).expect("validated angles sum to 180");
        (first, second)
    }
}

/// The two distance scales the helper-point count depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceParams {
    /// Smallest over all pairs of [`pair_separation`].
    pub lambda: f64,
    /// Largest pairwise Euclidean distance.
    pub mu: f64,
}

/// Smallest distance between non-coincident parallel lines through `u` and
/// `v` at an inclination of 90° + jγ/2 for some j in 1..=360/γ. This is the
/// tightest "slab" the pair spans in any of the construction's sweep
/// directions; coincident-line inclinations (the pair lying in the slab's
/// own direction) are skipped.
pub fn pair_separation(u: Point, v: Point, gamma: f64) -> Result<f64> {
    let cfg = SteinerConfig::new(gamma)?;
    if u == v {
        return Err(Error::InvalidConfig {
            msg: "pair separation needs two distinct points".into(),
        });
    }
    let d = v - u;
    let scale = d.x.abs() + d.y.abs();
    let mut best = f64::INFINITY;
    for j in 1..=cfg.t {
        let incl = 90.0 + gamma * j as f64 / 2.0;
        let normal = Direction::of_degrees(incl + 90.0).unit();
        let sep = normal.dot(d).abs();
        if sep <= 1e-9 * scale {
            continue; // the two lines coincide
        }
        best = best.min(sep);
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::Degenerate {
            msg: "every candidate inclination is coincident for this pair".into(),
        })
    }
}

/// λ and μ of a site set: the extreme separation scales that bound the
/// helper-chain lengths.
pub fn distance_params(points: &[Point], gamma: f64) -> Result<DistanceParams> {
    if points.len() < 2 {
        return Err(Error::EmptyInput {
            msg: format!(
                "distance parameters need at least 2 points, got {}",
                points.len()
            ),
        });
    }
    let mut lambda = f64::INFINITY;
    let mut mu: f64 = 0.0;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let d = points[j] - points[i];
            mu = mu.max(d.dot(d).sqrt());
            lambda = lambda.min(pair_separation(points[i], points[j], gamma)?);
        }
    }
    Ok(DistanceParams { lambda, mu })
}

/// Union of the two 3-sweep graphs of orientation 0.
///
/// For a point `t` in the apex wedge of `q`, a width-γ path already exists
/// here whenever `t` lies right of `q`'s first-frame apex sweep path or left
/// of its second-frame one; the helper points added by [`build_steiner`]
/// exist to close the remaining in-between case.
pub fn build_pair_graph(points: &[Point], cfg: &SteinerConfig) -> Result<GeometricGraph> {
    let (first, second) = cfg.frames(0);
    let g1 = build_3sweep(points, &first)?;
    let g2 = build_3sweep(points, &second)?;
    g1.union(&g2)
}

/// One helper chain's record: the measured distances from the wedge-boundary
/// corner to the chain anchor and to each placed point, for decay auditing.
#[derive(Debug, Clone)]
pub struct ChainRecord {
    /// Site the chain was grown for.
    pub origin: usize,
    /// Orientation index (0-based) it belongs to.
    pub orientation: usize,
    /// Distances |A_i − C| from the corner C, starting with the anchor
    /// distance |A_0 − C| = |origin − C|; strictly shrinking.
    pub corner_distances: Vec<f64>,
}

/// Count and decay data of one [`build_steiner`] run.
#[derive(Debug, Clone, Default)]
pub struct SteinerStats {
    pub chains: Vec<ChainRecord>,
}

impl SteinerStats {
    /// Largest observed ratio between successive corner distances; must stay
    /// at or below 3/4.
    pub fn worst_decay(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for c in &self.chains {
            for w in c.corner_distances.windows(2) {
                if w[0] > 0.0 {
                    worst = worst.max(w[1] / w[0]);
                }
            }
        }
        worst
    }
}

/// Width-γ spanning graph over `points`, with helper points marked from
/// index `points.len()` on. See [`build_steiner_with_stats`] for the
/// construction and for decay auditing.
pub fn build_steiner(points: &[Point], cfg: &SteinerConfig) -> Result<GeometricGraph> {
    build_steiner_with_stats(points, cfg).map(|(g, _)| g)
}

/// [`build_steiner`] plus per-chain decay records.
///
/// Per orientation: both 3-sweep graphs; then, for every site `q` whose
/// first- and second-frame apex neighbours differ, a chain of helper points
/// marching down the right apex-wedge boundary toward the corner `C` (the
/// boundary's intersection with the sweep line through `q`'s apex
/// neighbour `q'`). Each step shrinks the remaining distance to `C` by the
/// fixed factor 1 − 1/(4cos²(γ/2)) ≤ 3/4. The chain stops at the first
/// helper point that either no longer sees `q'` in its apex wedge or whose
/// second-frame apex neighbour is `q'` itself; that point is joined to `q'`.
/// Finally every site is joined to its second-frame b-wedge neighbour when
/// a helper point has become that neighbour. All orientations are unioned
/// on a shared vertex list.
pub fn build_steiner_with_stats(
    points: &[Point],
    cfg: &SteinerConfig,
) -> Result<(GeometricGraph, SteinerStats)> {
    let params = distance_params(points, cfg.gamma)?;
    if params.lambda <= SEPARATION_FLOOR * params.mu {
        return Err(Error::Degenerate {
            msg: format!(
                "pair separation {:.3e} is degenerate relative to diameter {:.3e}; \
                 perturb the input points",
                params.lambda, params.mu
            ),
        });
    }
    let n = points.len();
    let mut all_points: Vec<Point> = points.to_vec();
    let mut intern: HashMap<(u64, u64), usize> = all_points
        .iter()
        .enumerate()
        .map(|(i, p)| ((p.x.to_bits(), p.y.to_bits()), i))
        .collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut stats = SteinerStats::default();

    let rho = 1.0 - 1.0 / (4.0 * (cfg.gamma / 2.0).to_radians().cos().powi(2));
    debug_assert!(rho <= DECAY_CEILING + 1e-12);

    for orientation in 0..cfg.t {
        let (first, second) = cfg.frames(orientation);
        for frame in [&first, &second] {
            let g = build_3sweep(points, frame)?;
            edges.extend(g.edges());
        }

        let mut orientation_helpers: Vec<usize> = Vec::new();
        for q in 0..n {
            let Some(q_near) = nearest_in_wedge(points, q, &first, WedgeKind::A) else {
                continue;
            };
            if nearest_in_wedge(points, q, &second, WedgeKind::A) == Some(q_near) {
                continue; // both sweep paths leave q the same way
            }
            let boundary = Line::through(points[q], first.dir_ac());
            let sweep_line = Line::through(points[q_near], first.dir_bc());
            let Some(corner) = boundary.intersect(&sweep_line) else {
                // dir_ac and dir_bc differ by γ/2 > 0, so this is numeric
                // noise on a microscopic wedge; nothing useful to place.
                continue;
            };
            let toward_apex = points[q] - corner;
            let d0 = toward_apex.dot(toward_apex).sqrt();
            if d0 <= SEPARATION_FLOOR * params.mu {
                continue;
            }
            let unit_up = toward_apex * (1.0 / d0);

            let mut record = ChainRecord {
                origin: q,
                orientation,
                corner_distances: vec![d0],
            };
            let mut prev = q;
            let mut dist = d0;
            let mut closed = false;
            for _ in 0..MAX_CHAIN {
                dist *= rho;
                let placed = corner + unit_up * dist;
                let id = *intern
                    .entry((placed.x.to_bits(), placed.y.to_bits()))
                    .or_insert_with(|| {
                        all_points.push(placed);
                        all_points.len() - 1
                    });
                if id >= n {
                    orientation_helpers.push(id);
                }
                record
                    .corner_distances
                    .push((placed - corner).dot(placed - corner).sqrt());
                if prev != id {
                    edges.push((prev.min(id), prev.max(id)));
                }
                prev = id;

                let sees_neighbour = placed != points[q_near]
                    && first
                        .wedge(placed, WedgeKind::A)
                        .contains_dir(Direction::of_vector(points[q_near] - placed));
                let second_near = crate::sweep::wedge_sweep_argmin(
                    &second.wedge(placed, WedgeKind::A),
                    second.sweep_normal(WedgeKind::A),
                    points.iter().copied().enumerate(),
                );
                if !sees_neighbour || second_near == Some(q_near) {
                    if q_near != id {
                        edges.push((q_near.min(id), q_near.max(id)));
                    }
                    closed = true;
                    break;
                }
            }
            if !closed {
                return Err(Error::Degenerate {
                    msg: format!(
                        "helper chain for site {q} did not close within {MAX_CHAIN} steps"
                    ),
                });
            }
            stats.chains.push(record);
        }

        // Second-frame b-wedge handover edges: a site adopts a helper point
        // that has become its sweep-nearest neighbour in that wedge.
        for z in 0..n {
            let wedge = second.wedge(points[z], WedgeKind::B);
            let normal = second.sweep_normal(WedgeKind::B);
            let candidates = (0..n)
                .filter(|&i| i != z)
                .map(|i| (i, points[i]))
                .chain(orientation_helpers.iter().map(|&i| (i, all_points[i])));
            if let Some(best) = crate::sweep::wedge_sweep_argmin(&wedge, normal, candidates) {
                if best >= n {
                    edges.push((z.min(best), z.max(best)));
                }
            }
        }
    }

    let mut g = GeometricGraph::with_steiner(all_points, n)?;
    for (u, v) in edges {
        g.add_edge(u, v)?;
    }
    Ok((g, stats))
}
