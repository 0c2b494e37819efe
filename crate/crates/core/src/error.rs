//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building, verifying, or routing.
#[derive(Debug, Error)]
pub enum Error {
    /// Two input points coincide. Constructions assume distinct sites.
    #[error("duplicate point at index {first} and {second}: ({x}, {y})")]
    DuplicatePoint {
        first: usize,
        second: usize,
        x: f64,
        y: f64,
    },

    /// NaN or infinite coordinate in the input.
    #[error("non-finite coordinate at index {index}")]
    NonFinitePoint { index: usize },

    /// A vertex index does not exist in the graph.
    #[error("vertex index {index} out of range (graph has {len} vertices)")]
    IndexOutOfRange { index: usize, len: usize },

    /// Attempted to add or query an edge from a vertex to itself.
    #[error("self-loop at vertex {index}")]
    SelfLoop { index: usize },

    /// Graph union requires both operands to share one vertex list.
    #[error("graphs have different point lists ({left} vs {right} vertices)")]
    MismatchedPointLists { left: usize, right: usize },

    /// No path between a pair that was required to be connected.
    #[error("graph is disconnected: no path from {from} to {to}")]
    Disconnected { from: usize, to: usize },

    /// A chain did not have the x/y-monotonicity or turn profile a builder
    /// requires.
    #[error("path does not match required class: {msg}")]
    ClassMismatch { msg: String },

    /// A query point fell outside every region of a fan decomposition.
    #[error("point {index} lies outside every admissible region: {msg}")]
    OutsideRegion { index: usize, msg: String },

    /// Chain handed to the one-sided builder bends both ways.
    #[error("chain is not one-sided: {msg}")]
    NotOneSided { msg: String },

    /// Points handed to the convex-position builder are not in convex
    /// position.
    #[error("points are not in convex position: {msg}")]
    NotConvexPosition { msg: String },

    /// A wedge containment query was made for its own apex.
    #[error("wedge containment is undefined for the apex itself")]
    ApexQuery,

    /// An operation needs at least one (or more) input points.
    #[error("empty input: {msg}")]
    EmptyInput { msg: String },

    /// A configuration value is outside its documented domain.
    #[error("invalid configuration: {msg}")]
    InvalidConfig { msg: String },

    /// Input too degenerate for the requested construction (for example a
    /// separation scale of zero).
    #[error("degenerate input: {msg}")]
    Degenerate { msg: String },

    /// Internal routing invariant violated — indicates a bug, surfaced
    /// instead of looping forever.
    #[error("routing invariant violated: {msg}")]
    RoutingInvariant { msg: String },

    /// A graph or point file could not be parsed.
    #[error("parse error at line {line}, field {field}: {msg}")]
    Parse {
        line: usize,
        field: usize,
        msg: String,
    },

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// Structurally invalid serialized graph (edge indices out of range,
    /// self-loops, …).
    #[error("malformed graph: {msg}")]
    MalformedGraph { msg: String },
}
