//! End-to-end acceptance checks for the library's headline guarantees, one
//! criterion per line of output. Runs without the libtest harness so the
//! per-criterion results print unconditionally; the process exits nonzero if
//! any criterion fails.
//!
//! Tolerances are pinned here, next to the assertions that use them, so a
//! change to either is visible in one diff.

// ensure! negates float comparisons on purpose: a NaN anywhere must fail the
// criterion rather than slip past an inverted check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::type_complexity)]

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::io::Write as _;
use std::sync::OnceLock;
use std::time::Instant;

use amgraph::gen::uniform_square;
use amgraph::{
    build_convex_fan, build_layered, build_sqrt, build_steiner_with_stats, build_theta6_direct,
    build_width90, distance_params, min_path_width, min_path_width_exhaustive, path_width, route,
    route_theta6_1local, route_theta6_step, route_with_views, select_layer, sweep_path,
    verify_graph_width, ClassifiedPath, Error, GeometricGraph, LayeredConfig, LayeredGraph,
    LocalView, Point, RouteMode, RouteState, RouteTrace, SteinerConfig, SweepFrame, ViewProvider,
    WedgeKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type CriterionResult = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !($cond) {
            return Err(format!($($arg)+));
        }
    };
}

/// Stringify a library error for a FAIL line.
fn se(e: Error) -> String {
    e.to_string()
}

fn main() {
    let criteria: &[(&str, fn() -> CriterionResult)] = &[
        ("theta6-equivalence", c01_theta6_equivalence),
        ("layer-planarity", c02_layer_planarity),
        ("layered-width", c03_layered_width),
        ("routing-correctness", c04_routing_correctness),
        ("theta6-1local-routing", c05_theta6_1local),
        ("routing-locality", c06_routing_locality),
        ("width90-construction", c07_width90_construction),
        ("sweep-path-concatenation", c08_sweep_path_concatenation),
        ("sqrt-construction", c09_sqrt_construction),
        ("steiner-width", c10_steiner_width),
        ("width-oracle-soundness", c11_width_oracle_soundness),
        ("spanner-ratios", c12_spanner_ratios),
    ];
    let mut failures = 0usize;
    let total = Instant::now();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|payload| {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panicked".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {msg}", i + 1);
            }
        }
        let _ = std::io::stdout().flush();
    }
    let secs = total.elapsed().as_secs_f64();
    if failures > 0 {
        println!(
            "acceptance: {failures} of {} criteria failed ({secs:.1}s)",
            criteria.len()
        );
        std::process::exit(1);
    }
    println!(
        "acceptance: all {} criteria passed ({secs:.1}s)",
        criteria.len()
    );
}

// ---------------------------------------------------------------- suites --

/// Six-cone instances shared by the equivalence, planarity, and spanner
/// criteria: sizes sweep [3, 100].
struct Theta6Instance {
    n: usize,
    seed: u64,
    layered: LayeredGraph,
    direct: GeometricGraph,
}

fn theta6_suite() -> Result<&'static [Theta6Instance], String> {
    static SUITE: OnceLock<Result<Vec<Theta6Instance>, String>> = OnceLock::new();
    SUITE
        .get_or_init(|| {
            let mut out = Vec::with_capacity(100);
            for i in 0..100u64 {
                let n = 3 + (i as usize % 98);
                let seed = 1_000 + i;
                let pts = uniform_square(n, seed).map_err(se)?;
                let layered =
                    build_layered(&pts, LayeredConfig::new(6, false).map_err(se)?).map_err(se)?;
                let direct = build_theta6_direct(&pts).map_err(se)?;
                out.push(Theta6Instance {
                    n,
                    seed,
                    layered,
                    direct,
                });
            }
            Ok(out)
        })
        .as_deref()
        .map_err(Clone::clone)
}

/// Rotated-layer instances shared by the width, routing, and structure
/// criteria: k in {6, 8, 10, 12}, 20 seeds each, n <= 60.
struct LayeredInstance {
    k: usize,
    seed: u64,
    pts: Vec<Point>,
    h: LayeredGraph,
}

fn layered_suite() -> Result<&'static [LayeredInstance], String> {
    static SUITE: OnceLock<Result<Vec<LayeredInstance>, String>> = OnceLock::new();
    SUITE
        .get_or_init(|| {
            let mut out = Vec::with_capacity(80);
            for &k in &[6usize, 8, 10, 12] {
                for j in 0..20u64 {
                    let n = if j == 0 {
                        60
                    } else {
                        10 + (j as usize * 13) % 51
                    };
                    let seed = 2_000 + k as u64 * 100 + j;
                    let pts = uniform_square(n, seed).map_err(se)?;
                    let h = build_layered(&pts, LayeredConfig::new(k, false).map_err(se)?)
                        .map_err(se)?;
                    out.push(LayeredInstance { k, seed, pts, h });
                }
            }
            Ok(out)
        })
        .as_deref()
        .map_err(Clone::clone)
}

/// Width-90 instances shared by the construction and spanner criteria:
/// 20 seeds, 20 <= n <= 80.
struct Width90Instance {
    n: usize,
    seed: u64,
    g: GeometricGraph,
}

fn width90_suite() -> Result<&'static [Width90Instance], String> {
    static SUITE: OnceLock<Result<Vec<Width90Instance>, String>> = OnceLock::new();
    SUITE
        .get_or_init(|| {
            let mut out = Vec::with_capacity(20);
            for j in 0..20u64 {
                let n = if j == 0 {
                    80
                } else {
                    20 + (j as usize * 7) % 61
                };
                let seed = 7_000 + j;
                let pts = uniform_square(n, seed).map_err(se)?;
                let g = build_width90(&pts).map_err(se)?;
                out.push(Width90Instance { n, seed, g });
            }
            Ok(out)
        })
        .as_deref()
        .map_err(Clone::clone)
}

// ------------------------------------------------------------- criteria --

/// Criterion 1: The six-layer rotated union and the directly built six-cone graph are
/// the same graph, edge for edge, under the shared tie rule.
fn c01_theta6_equivalence() -> CriterionResult {
    let suite = theta6_suite()?;
    ensure!(
        suite.len() >= 100,
        "need at least 100 instances, built {}",
        suite.len()
    );
    for inst in suite {
        let a: BTreeSet<(usize, usize)> = inst.layered.union().edges().collect();
        let b: BTreeSet<(usize, usize)> = inst.direct.edges().collect();
        if a != b {
            let diff = a.symmetric_difference(&b).count();
            return Err(format!(
                "n={} seed={}: edge sets differ in {diff} edges",
                inst.n, inst.seed
            ));
        }
    }
    Ok(format!(
        "{} instances, n in [3,100]: layered union == direct six-cone graph exactly",
        suite.len()
    ))
}

/// Criterion 2: Every per-layer graph, across every suite that builds layers, is a
/// plane graph. The orientation predicate underpinning the check uses a
/// relative epsilon of 1e-9.
fn c02_layer_planarity() -> CriterionResult {
    let mut graphs = 0usize;
    for inst in theta6_suite()? {
        for (id, gi) in inst.layered.layers() {
            let rep = gi.planarity();
            ensure!(
                rep.is_planar(),
                "six-cone instance n={} seed={} layer {id}: {} crossing pairs, first {:?}",
                inst.n,
                inst.seed,
                rep.crossings.len(),
                rep.crossings.first()
            );
            graphs += 1;
        }
    }
    for inst in layered_suite()? {
        for (id, gi) in inst.h.layers() {
            let rep = gi.planarity();
            ensure!(
                rep.is_planar(),
                "k={} seed={} layer {id}: {} crossing pairs, first {:?}",
                inst.k,
                inst.seed,
                rep.crossings.len(),
                rep.crossings.first()
            );
            graphs += 1;
        }
    }
    Ok(format!(
        "{graphs} per-layer graphs are plane (segment-intersection check, eps 1e-9)"
    ))
}

/// Criterion 3: The k-layer union reaches width 90 + 180/k, and for k congruent to
/// 2 mod 4 the even layers alone already do.
fn c03_layered_width() -> CriterionResult {
    let mut checked = 0usize;
    let mut even_checked = 0usize;
    for inst in layered_suite()? {
        let gamma = 90.0 + 180.0 / inst.k as f64;
        let rep = verify_graph_width(inst.h.union(), gamma, 1e-7).map_err(se)?;
        ensure!(
            rep.passed,
            "k={} seed={}: width {gamma} failed for pairs {:?}",
            inst.k,
            inst.seed,
            rep.failing
        );
        checked += 1;
        if inst.k % 4 == 2 {
            let half = build_layered(&inst.pts, LayeredConfig::new(inst.k, true).map_err(se)?)
                .map_err(se)?;
            let rep = verify_graph_width(half.union(), gamma, 1e-7).map_err(se)?;
            ensure!(
                rep.passed,
                "k={} seed={}: even-layer union failed width {gamma} for pairs {:?}",
                inst.k,
                inst.seed,
                rep.failing
            );
            even_checked += 1;
        }
    }
    Ok(format!(
        "{checked} instances (k in {{6,8,10,12}} x 20 seeds, n <= 60) reach width 90 + 180/k; \
         even layers alone suffice on all {even_checked} k = 6, 10 instances"
    ))
}

/// Criterion 4: Every ordered pair routes to termination, with a strictly shrinking
/// progress sum per step, trace width within 90 + alpha, and stretch within
/// 1/cos(45 + alpha/2); the closed-form bound hits its known anchor values.
fn c04_routing_correctness() -> CriterionResult {
    let mut routes = 0usize;
    for inst in layered_suite()? {
        let alpha = 180.0 / inst.k as f64;
        let width_bound = 90.0 + alpha + 1e-7;
        let stretch_bound = 1.0 / (45.0 + alpha / 2.0).to_radians().cos() + 1e-9;
        let n = inst.pts.len();
        for q in 0..n {
            for t in 0..n {
                if q == t {
                    continue;
                }
                let tr = route(&inst.h, q, t)
                    .map_err(|e| format!("k={} seed={} pair ({q},{t}): {e}", inst.k, inst.seed))?;
                ensure!(
                    tr.path.last() == Some(&t),
                    "k={} seed={} pair ({q},{t}): walk ended at {:?}",
                    inst.k,
                    inst.seed,
                    tr.path.last()
                );
                for w in tr.steps.windows(2) {
                    let before = w[0].d_a + w[0].d_b;
                    let after = w[1].d_a + w[1].d_b;
                    ensure!(
                        after < before,
                        "k={} seed={} pair ({q},{t}): progress sum rose {before} -> {after}",
                        inst.k,
                        inst.seed
                    );
                }
                ensure!(
                    tr.width_deg <= width_bound,
                    "k={} seed={} pair ({q},{t}): trace width {} > {width_bound}",
                    inst.k,
                    inst.seed,
                    tr.width_deg
                );
                ensure!(
                    tr.stretch <= stretch_bound,
                    "k={} seed={} pair ({q},{t}): stretch {} > {stretch_bound}",
                    inst.k,
                    inst.seed,
                    tr.stretch
                );
                routes += 1;
            }
        }
    }
    // Closed-form anchors for the stretch bound itself.
    let at = |alpha: f64| 1.0 / (45.0 + alpha / 2.0).to_radians().cos();
    ensure!(
        (at(30.0) - 2.0).abs() < 1e-12,
        "bound at alpha=30 is {}, not 2",
        at(30.0)
    );
    ensure!(
        (at(0.0) - 1.414).abs() < 5e-4,
        "bound at alpha=0 is {:.4}, not 1.414",
        at(0.0)
    );
    ensure!(
        (at(45.0) - 2.613).abs() < 5e-4,
        "bound at alpha=45 is {:.4}, not 2.613",
        at(45.0)
    );
    Ok(format!(
        "{routes} ordered-pair walks terminated with strictly decreasing progress, width <= \
         90+alpha, stretch <= 1/cos(45+alpha/2); bound anchors 2.000 / 1.414 / 2.613 match"
    ))
}

/// Criterion 5: The 1-hop six-cone walk visits exactly the vertices the 2-hop layered
/// walk visits, for every ordered pair.
fn c05_theta6_1local() -> CriterionResult {
    let mut pairs = 0usize;
    for i in 0..50u64 {
        let n = 3 + (i as usize % 30);
        let seed = 5_000 + i;
        let pts = uniform_square(n, seed).map_err(se)?;
        let h = build_layered(&pts, LayeredConfig::new(6, false).map_err(se)?).map_err(se)?;
        let g = build_theta6_direct(&pts).map_err(se)?;
        for q in 0..n {
            for t in 0..n {
                if q == t {
                    continue;
                }
                let two = route(&h, q, t)
                    .map_err(|e| format!("seed={seed} pair ({q},{t}) layered walk: {e}"))?;
                let one = route_theta6_1local(&g, q, t)
                    .map_err(|e| format!("seed={seed} pair ({q},{t}) 1-hop walk: {e}"))?;
                ensure!(
                    one.path == two.path,
                    "seed={seed} pair ({q},{t}): 1-hop path {:?} != layered path {:?}",
                    one.path,
                    two.path
                );
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "50 instances, {pairs} ordered pairs: 1-hop and 2-hop walks agree vertexwise"
    ))
}

/// Views whose far vertices are garbage: everything beyond `keep` hops of
/// the center keeps its identity and edges but reports a junk coordinate.
/// Decisions that only read nearby geometry cannot tell the difference.
struct DoctoredViews<'a> {
    g: &'a GeometricGraph,
    keep: u32,
}

fn doctored_view(g: &GeometricGraph, center: usize, keep: u32) -> amgraph::Result<LocalView> {
    let full = g.local_view(center, u32::MAX)?;
    let verts: Vec<usize> = full.vertices().to_vec();
    let slot: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut dist = vec![u32::MAX; verts.len()];
    dist[slot[&center]] = 0;
    let mut queue = VecDeque::from([center]);
    while let Some(u) = queue.pop_front() {
        for w in full.neighbors_of(u) {
            if dist[slot[&w]] == u32::MAX {
                dist[slot[&w]] = dist[slot[&u]] + 1;
                queue.push_back(w);
            }
        }
    }
    let members: Vec<(usize, Point)> = verts
        .iter()
        .map(|&v| {
            let p = if dist[slot[&v]] <= keep {
                full.point_of(v).expect("vertex in its own view")
            } else {
                // Far off, distinct per vertex, nowhere near the [0,100)^2
                // instances.
                Point::new(1.0e6 + 13.0 * v as f64, -1.0e6 - 7.0 * v as f64)
            };
            (v, p)
        })
        .collect();
    let mut edges = Vec::new();
    for &v in &verts {
        for w in full.neighbors_of(v) {
            if v < w {
                edges.push((v, w));
            }
        }
    }
    LocalView::assemble(center, members, edges)
}

impl ViewProvider for DoctoredViews<'_> {
    fn local_view(&self, center: usize) -> amgraph::Result<LocalView> {
        doctored_view(self.g, center, self.keep)
    }
}

/// Criterion 6: Replacing every vertex beyond the advertised radius (2 hops for the
/// layered walk, 1 hop for the six-cone walk) with garbage coordinates
/// changes no routing decision.
fn c06_routing_locality() -> CriterionResult {
    let suite = layered_suite()?;
    let mut layered_pairs = 0usize;
    // One instance per k: the j == 0 entries are the largest (n = 60).
    for inst in suite.iter().step_by(20) {
        let n = inst.pts.len();
        for q in 0..n {
            for t in 0..n {
                if q == t {
                    continue;
                }
                let clean = route(&inst.h, q, t).map_err(se)?;
                let gi = inst.h.layer(clean.layer).expect("routed layer was built");
                let frame = *inst.h.frame(clean.layer).expect("frame for built layer");
                let views = DoctoredViews { g: gi, keep: 2 };
                let doctored = route_with_views(
                    &views,
                    frame,
                    clean.layer,
                    q,
                    t,
                    gi.point(t).map_err(se)?,
                    gi.len() + gi.edge_count() + 1,
                )
                .map_err(|e| {
                    format!(
                        "k={} seed={} pair ({q},{t}) doctored: {e}",
                        inst.k, inst.seed
                    )
                })?;
                ensure!(
                    same_decisions(&clean, &doctored),
                    "k={} seed={} pair ({q},{t}): decisions changed under 2-hop doctoring",
                    inst.k,
                    inst.seed
                );
                layered_pairs += 1;
            }
        }
    }
    let mut theta_pairs = 0usize;
    for i in 0..6u64 {
        let n = 6 + 5 * i as usize; // 6..=31
        let seed = 6_000 + i;
        let pts = uniform_square(n, seed).map_err(se)?;
        let g = build_theta6_direct(&pts).map_err(se)?;
        let cap = g.len() + g.edge_count() + 1;
        for q in 0..n {
            for t in 0..n {
                if q == t {
                    continue;
                }
                let clean = route_theta6_1local(&g, q, t).map_err(se)?;
                let (qp, tp) = (g.point(q).map_err(se)?, g.point(t).map_err(se)?);
                let layer = select_layer(qp, tp, 6).map_err(se)?;
                let mut state = RouteState {
                    current: q,
                    target: t,
                    layer,
                    mode: RouteMode::Climb,
                    frame: SweepFrame::isoceles_layer(6, layer),
                };
                let mut path = vec![q];
                while state.current != t {
                    let view = doctored_view(&g, state.current, 1).map_err(se)?;
                    let (next, _) = route_theta6_step(&view, &state, tp)
                        .map_err(|e| format!("seed={seed} pair ({q},{t}) doctored: {e}"))?;
                    path.push(next.current);
                    ensure!(
                        path.len() <= cap,
                        "seed={seed} pair ({q},{t}): doctored walk did not terminate"
                    );
                    state = next;
                }
                ensure!(
                    path == clean.path,
                    "seed={seed} pair ({q},{t}): doctored path {path:?} != clean {:?}",
                    clean.path
                );
                theta_pairs += 1;
            }
        }
    }
    Ok(format!(
        "{layered_pairs} layered walks (2-hop views) and {theta_pairs} six-cone walks (1-hop \
         views) are unchanged by garbage beyond the radius"
    ))
}

fn same_decisions(a: &RouteTrace, b: &RouteTrace) -> bool {
    a.path == b.path
        && a.steps.len() == b.steps.len()
        && a.steps
            .iter()
            .zip(&b.steps)
            .all(|(x, y)| x.mode == y.mode && x.case == y.case && x.kind == y.kind)
}

/// Criterion 7: The quadratic-free width-90 construction verifies at 90 degrees, stays
/// strictly below the complete graph, and its fan primitive respects the
/// i + 2j edge budget on seeded chains.
fn c07_width90_construction() -> CriterionResult {
    let suite = width90_suite()?;
    let mut worst_fill = 0.0f64;
    let mut total_edges = 0usize;
    for inst in suite {
        let rep = verify_graph_width(&inst.g, 90.0, 1e-7).map_err(se)?;
        ensure!(
            rep.passed,
            "n={} seed={}: width 90 failed for pairs {:?}",
            inst.n,
            inst.seed,
            rep.failing
        );
        let complete = inst.n * (inst.n - 1) / 2;
        let e = inst.g.edge_count();
        ensure!(
            e < complete,
            "n={} seed={}: {e} edges is not below the complete graph's {complete}",
            inst.n,
            inst.seed
        );
        worst_fill = worst_fill.max(e as f64 / complete as f64);
        total_edges += e;
    }

    // Fan primitive accounting on seeded chains: i chain vertices, j fan
    // points, at most i + 2j edges.
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut fans = 0usize;
    for round in 0..30usize {
        let i = 3 + round % 10;
        let j = 1 + round % 8;
        let mut chain = vec![Point::new(0.0, 0.0)];
        let mut slope = -0.2 - rng.gen_range(0.0..0.5);
        for _ in 1..i {
            let prev = *chain.last().expect("nonempty chain");
            let dx = rng.gen_range(0.6..1.4);
            chain.push(Point::new(prev.x + dx, prev.y + slope * dx));
            slope -= rng.gen_range(0.2..0.8);
        }
        let span_x = chain.last().expect("nonempty chain").x;
        let low_y = chain.last().expect("nonempty chain").y;
        let path = ClassifiedPath::new(chain).map_err(se)?;
        let mut satellites = Vec::new();
        let mut tries = 0;
        while satellites.len() < j {
            tries += 1;
            ensure!(
                tries < 4_000,
                "round {round}: could not sample {j} fan points"
            );
            let cand = Point::new(rng.gen_range(-2.0..span_x + 3.0), rng.gen_range(low_y..3.0));
            if build_convex_fan(&path, std::slice::from_ref(&cand)).is_ok() {
                satellites.push(cand);
            }
        }
        let g = build_convex_fan(&path, &satellites).map_err(|e| format!("round {round}: {e}"))?;
        ensure!(
            g.edge_count() <= i + 2 * j,
            "round {round}: fan on {i}+{j} points has {} edges, budget {}",
            g.edge_count(),
            i + 2 * j
        );
        fans += 1;
    }
    Ok(format!(
        "{} instances (n <= 80) verify at width 90 with at most {:.0}% of complete-graph edges \
         ({} edges total); {fans} seeded fans kept within the i+2j edge budget",
        suite.len(),
        worst_fill * 100.0,
        total_edges
    ))
}

/// Criterion 8: Wherever the target sits in the forward wedge of the source, the
/// source's forward sweep path meets one of the target's trailing sweep
/// paths at a vertex, and the spliced walk stays within the two wedge
/// extents combined.
fn c08_sweep_path_concatenation() -> CriterionResult {
    let mut pairs = 0usize;
    let mut via_c = 0usize;
    for &k in &[6usize, 8, 10, 12] {
        for (si, &n) in [13usize, 27, 40].iter().enumerate() {
            let seed = 8_000 + k as u64 * 10 + si as u64;
            let pts = uniform_square(n, seed).map_err(se)?;
            let h = build_layered(&pts, LayeredConfig::new(k, false).map_err(se)?).map_err(se)?;
            let bound = 90.0 + 180.0 / k as f64 + 1e-7; // theta_a + theta_b
            for (layer, gi) in h.layers() {
                let frame = h.frame(layer).expect("frame for built layer");
                let forward: Vec<_> = (0..n)
                    .map(|q| sweep_path(gi, frame, q, WedgeKind::A))
                    .collect::<amgraph::Result<_>>()
                    .map_err(se)?;
                let left: Vec<_> = (0..n)
                    .map(|t| sweep_path(gi, frame, t, WedgeKind::B))
                    .collect::<amgraph::Result<_>>()
                    .map_err(se)?;
                let right: Vec<_> = (0..n)
                    .map(|t| sweep_path(gi, frame, t, WedgeKind::C))
                    .collect::<amgraph::Result<_>>()
                    .map_err(se)?;
                for q in 0..n {
                    let wedge = frame.wedge(pts[q], WedgeKind::A);
                    for t in 0..n {
                        if t == q || !wedge.contains(pts[t]).map_err(se)? {
                            continue;
                        }
                        let b = splice_width(&forward[q].vertices, &left[t].vertices, &pts);
                        let ok_b = matches!(b, Some(w) if w <= bound);
                        let ok = if ok_b {
                            true
                        } else {
                            let c = splice_width(&forward[q].vertices, &right[t].vertices, &pts);
                            let hit = matches!(c, Some(w) if w <= bound);
                            via_c += hit as usize;
                            hit
                        };
                        ensure!(
                            ok,
                            "k={k} seed={seed} layer {layer} pair ({q},{t}): no trailing sweep \
                             path meets the forward one within width {bound}",
                        );
                        pairs += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{pairs} in-wedge pairs spliced within theta_a + theta_b ({via_c} needed the \
         second trailing side)"
    ))
}

/// Width of the walk `fwd[..=meet] ++ reverse(back[..meet])`, where `meet`
/// is the first vertex of `fwd` that `back` also visits. `back` runs from
/// the target toward the meeting vertex, so its prefix reversed continues
/// the walk down to the target.
fn splice_width(fwd: &[usize], back: &[usize], pts: &[Point]) -> Option<f64> {
    let pos: HashMap<usize, usize> = back.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for (ia, v) in fwd.iter().enumerate() {
        if let Some(&ib) = pos.get(v) {
            let mut walk: Vec<Point> = fwd[..=ia].iter().map(|&u| pts[u]).collect();
            walk.extend(back[..ib].iter().rev().map(|&u| pts[u]));
            return path_width(&walk).ok();
        }
    }
    None
}

/// Criterion 9: The marked-round construction hits width 90 + alpha with hop diameter
/// at most 2.
fn c09_sqrt_construction() -> CriterionResult {
    let mut built = 0usize;
    for &n in &[16usize, 36, 64] {
        for &alpha in &[30.0f64, 45.0] {
            for s in 0..3u64 {
                let seed = 9_000 + n as u64 * 10 + s;
                let pts = uniform_square(n, seed).map_err(se)?;
                let g = build_sqrt(&pts, alpha).map_err(se)?;
                let rep = verify_graph_width(&g, 90.0 + alpha, 1e-7).map_err(se)?;
                ensure!(
                    rep.passed,
                    "n={n} alpha={alpha} seed={seed}: width {} failed for pairs {:?}",
                    90.0 + alpha,
                    rep.failing
                );
                let d = hop_diameter(&g);
                ensure!(
                    d <= 2,
                    "n={n} alpha={alpha} seed={seed}: hop diameter {d} exceeds 2"
                );
                built += 1;
            }
        }
    }
    Ok(format!(
        "{built} builds (n in {{16,36,64}}, alpha in {{30,45}}): width <= 90 + alpha, hop \
         diameter <= 2"
    ))
}

fn hop_diameter(g: &GeometricGraph) -> usize {
    let adj = g.adjacency();
    let n = g.len();
    let mut worst = 0usize;
    for src in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        worst = worst.max(dist.into_iter().max().expect("nonempty graph"));
    }
    worst
}

/// Criterion 10: The helper-point construction reaches the requested width over the
/// original pairs, every chain shrinks by at least a quarter per step, and
/// the helper count stays within C * n * t * log2(mu/lambda) for C = 8.
fn c10_steiner_width() -> CriterionResult {
    const COUNT_FACTOR: f64 = 8.0;
    let mut worst_decay = 0.0f64;
    let mut worst_factor = 0.0f64;
    let mut built = 0usize;
    for &gamma in &[60.0f64, 90.0] {
        let cfg = SteinerConfig::new(gamma).map_err(se)?;
        for (s, &n) in [6usize, 9, 12, 10].iter().enumerate() {
            let seed = 10_000 + gamma as u64 + s as u64;
            let pts = uniform_square(n, seed).map_err(se)?;
            let (g, stats) = build_steiner_with_stats(&pts, &cfg).map_err(se)?;
            let rep = verify_graph_width(&g, gamma, 1e-7).map_err(se)?;
            ensure!(
                rep.passed,
                "gamma={gamma} n={n} seed={seed}: width failed for pairs {:?}",
                rep.failing
            );
            let decay = stats.worst_decay();
            ensure!(
                decay <= 0.75 + 1e-9,
                "gamma={gamma} n={n} seed={seed}: chain decay {decay} exceeds 3/4"
            );
            worst_decay = worst_decay.max(decay);
            let params = distance_params(&pts, gamma).map_err(se)?;
            let scale = n as f64 * cfg.t() as f64 * (params.mu / params.lambda).log2();
            let helpers = (g.len() - n) as f64;
            ensure!(
                helpers <= COUNT_FACTOR * scale,
                "gamma={gamma} n={n} seed={seed}: {helpers} helpers exceed {COUNT_FACTOR} * \
                 n*t*log2(mu/lambda) = {}",
                COUNT_FACTOR * scale
            );
            worst_factor = worst_factor.max(helpers / scale);
            built += 1;
        }
    }
    Ok(format!(
        "{built} builds (gamma in {{60,90}}, n <= 12): original pairs verify at gamma; worst \
         chain decay {worst_decay:.3} <= 0.75; helper count <= {COUNT_FACTOR}*n*t*log2(mu/lambda) \
         (worst observed factor {worst_factor:.2})"
    ))
}

/// Criterion 11: On every graph small enough to enumerate all simple paths, the
/// search-based minimum path width equals the brute force bit-for-bit.
fn c11_width_oracle_soundness() -> CriterionResult {
    let mut graphs = 0usize;
    let mut pairs = 0usize;
    for i in 0..200u64 {
        let n = 2 + (i as usize % 7);
        let seed = 11_000 + i;
        let pts = uniform_square(n, seed).map_err(se)?;
        let mut g = GeometricGraph::new(pts).map_err(se)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(0.5) {
                    g.add_edge(u, v).map_err(se)?;
                }
            }
        }
        for s in 0..n {
            for t in (s + 1)..n {
                let fast = min_path_width(&g, s, t);
                let slow = min_path_width_exhaustive(&g, s, t);
                match (fast, slow) {
                    (Ok(a), Ok(b)) => {
                        ensure!(
                            a == b,
                            "seed={seed} pair ({s},{t}): search {a} != brute force {b}"
                        );
                    }
                    (Err(Error::Disconnected { .. }), Err(Error::Disconnected { .. })) => {}
                    (a, b) => {
                        return Err(format!(
                            "seed={seed} pair ({s},{t}): search {a:?} vs brute force {b:?}"
                        ));
                    }
                }
                pairs += 1;
            }
        }
        graphs += 1;
    }
    Ok(format!(
        "{graphs} seeded graphs (n <= 8), {pairs} pairs: search equals all-simple-paths brute \
         force exactly"
    ))
}

/// Criterion 12: Measured spanning ratios stay under the constructions' bounds: 2 for
/// the six-cone graph, sqrt(2) for the width-90 construction.
fn c12_spanner_ratios() -> CriterionResult {
    let mut worst_theta = 0.0f64;
    for inst in theta6_suite()? {
        let r = inst.direct.spanning_ratio().map_err(se)?;
        ensure!(
            r <= 2.0 + 1e-9,
            "six-cone n={} seed={}: spanning ratio {r} exceeds 2",
            inst.n,
            inst.seed
        );
        worst_theta = worst_theta.max(r);
    }
    let mut worst_w90 = 0.0f64;
    let bound = std::f64::consts::SQRT_2 + 1e-9;
    for inst in width90_suite()? {
        let r = inst.g.spanning_ratio().map_err(se)?;
        ensure!(
            r <= bound,
            "width-90 n={} seed={}: spanning ratio {r} exceeds sqrt(2)",
            inst.n,
            inst.seed
        );
        worst_w90 = worst_w90.max(r);
    }
    Ok(format!(
        "six-cone worst ratio {worst_theta:.6} <= 2; width-90 worst ratio {worst_w90:.6} <= \
         sqrt(2) ~= 1.414214"
    ))
}
