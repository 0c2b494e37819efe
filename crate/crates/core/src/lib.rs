//! Constructions, local routing, and verification oracles for angle-monotone
//! geometric graphs.
//!
//! A geometric graph is *angle-monotone of width `γ`* when every ordered pair
//! of vertices is joined by a path whose edge vectors all fit inside one
//! closed wedge of angular extent `γ`. Such paths cannot back-track, so narrow
//! widths simultaneously bound dilation (a width-`γ` graph is a
//! `1/cos(γ/2)`-spanner) and enable simple greedy-style routing.
//!
//! The crate is organised around that single definition:
//!
//! * [`geometry`] — points, directions, wedges, convex-position utilities;
//! * [`graph`] — the shared [`GeometricGraph`] container, planarity and
//!   dilation checks, 2-hop [`LocalView`] extraction;
//! * [`oracle`] — width verification used as ground truth by every builder;
//! * [`sweep`] — triangle-frame sweep graphs, layered unions, Θ₆ cones;
//! * [`width90`] — width-90° constructions on convex-position machinery;
//! * [`routing`] — 2-local (and for Θ₆, 1-local) routing with bounded stretch;
//! * [`steiner`] — width-`γ` graphs that may add Steiner points;
//! * [`gen`] — deterministic seeded point-set generators;
//! * [`io`] / [`svg`] — file formats and rendering shared with the CLI.

pub mod error;
pub mod gen;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod routing;
pub mod steiner;
pub mod svg;
pub mod sweep;
pub mod width90;

pub use error::{Error, Result};
pub use geometry::{
    convex_hull, largest_convex_subset, minimal_cover_width, orientation, Direction, Line,
    Orientation, Point, Polyline, Wedge,
};
pub use graph::{GeometricGraph, LocalView, PlanarityReport};
pub use oracle::{
    graph_width_exact, has_width_path, min_path_width, min_path_width_exhaustive, path_width,
    verify_graph_width, WidthReport,
};
pub use routing::{
    edge_in_layer, route, route_step, route_theta6_1local, route_theta6_step, route_with_views,
    select_layer, GraphViews, RouteMode, RouteState, RouteStep, RouteTrace, StepCase, ViewProvider,
};
pub use steiner::{
    build_pair_graph, build_steiner, build_steiner_with_stats, distance_params, pair_separation,
    ChainRecord, DistanceParams, SteinerConfig, SteinerStats,
};
pub use sweep::{
    build_3sweep, build_layered, build_theta6_direct, nearest_in_wedge, sweep_path, LayeredConfig,
    LayeredGraph, SweepFrame, SweepPath, WedgeKind,
};
pub use width90::{
    build_convex_fan, build_convex_recursive, build_monotone_pair, build_one_sided,
    build_opposite_bend, build_same_bend, build_sqrt, build_width90, classify_path,
    decompose_four_paths, partition_convex_subsets, ClassifiedPath, ConvexPartition, PathClass,
};
