//! JSON file formats for point sets and graphs.
//!
//! Both formats are plain JSON objects with a fixed field order, so output is
//! byte-stable for identical inputs:
//!
//! * points file: `{"points": [[x, y], …]}`
//! * graph file:  `{"points": [[x, y], …], "edges": [[u, v], …], "steiner_from": k}`
//!
//! Loading re-validates everything (finite coordinates, distinct points, edge
//! indices in range, no self-loops), so a hand-edited file fails loudly
//! instead of corrupting later stages.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::GeometricGraph;

#[derive(Serialize, Deserialize)]
struct PointsFile {
    points: Vec<(f64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    points: Vec<(f64, f64)>,
    edges: Vec<(usize, usize)>,
    steiner_from: usize,
}

fn parse_error(e: &serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        field: e.column(),
        msg: e.to_string(),
    }
}

pub fn points_to_json(points: &[Point]) -> String {
    let file = PointsFile {
        points: points.iter().map(|p| (p.x, p.y)).collect(),
    };
    serde_json::to_string_pretty(&file).expect("points serialize")
}

pub fn points_from_json(text: &str) -> Result<Vec<Point>> {
    let file: PointsFile = serde_json::from_str(text).map_err(|e| parse_error(&e))?;
    let pts: Vec<Point> = file.points.iter().map(|&(x, y)| Point::new(x, y)).collect();
    for (i, p) in pts.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::NonFinitePoint { index: i });
        }
    }
    Ok(pts)
}

pub fn write_points(path: &Path, points: &[Point]) -> Result<()> {
    fs::write(path, points_to_json(points) + "\n")?;
    Ok(())
}

pub fn read_points(path: &Path) -> Result<Vec<Point>> {
    points_from_json(&fs::read_to_string(path)?)
}

pub fn graph_to_json(g: &GeometricGraph) -> String {
    let file = GraphFile {
        points: g.points().iter().map(|p| (p.x, p.y)).collect(),
        edges: g.edges().collect(),
        steiner_from: g.steiner_from(),
    };
    serde_json::to_string_pretty(&file).expect("graph serialize")
}

pub fn graph_from_json(text: &str) -> Result<GeometricGraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| parse_error(&e))?;
    let pts: Vec<Point> = file.points.iter().map(|&(x, y)| Point::new(x, y)).collect();
    let mut g = GeometricGraph::with_steiner(pts, file.steiner_from)?;
    for (u, v) in file.edges {
        g.add_edge(u, v).map_err(|e| Error::MalformedGraph {
            msg: format!("edge ({u}, {v}): {e}"),
        })?;
    }
    Ok(g)
}

pub fn write_graph(path: &Path, g: &GeometricGraph) -> Result<()> {
    fs::write(path, graph_to_json(g) + "\n")?;
    Ok(())
}

pub fn read_graph(path: &Path) -> Result<GeometricGraph> {
    graph_from_json(&fs::read_to_string(path)?)
}
