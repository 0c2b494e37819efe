//! Minimal SVG rendering for graphs and routed paths. Output is a
//! self-contained `<svg>` document with a flipped y-axis so the picture
//! matches mathematical orientation.

use std::fmt::Write as _;

use crate::geometry::Point;
use crate::graph::GeometricGraph;

#[derive(Debug, Clone)]
pub struct SvgOptions {
    /// Rendered width in pixels; height follows the aspect ratio.
    pub width_px: f64,
    /// Vertex path to overdraw in red (e.g. a routing result).
    pub highlight: Option<Vec<usize>>,
    /// Draw vertex indices next to the points.
    pub labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width_px: 800.0,
            highlight: None,
            labels: false,
        }
    }
}

/// Render the graph as an SVG document string.
pub fn render_svg(g: &GeometricGraph, opts: &SvgOptions) -> String {
    let pts = g.points();
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts {
        min_x = min_x.min(p.x);
        min_y = min_y.min(p.y);
        max_x = max_x.max(p.x);
        max_y = max_y.max(p.y);
    }
    if pts.is_empty() {
        (min_x, min_y, max_x, max_y) = (0.0, 0.0, 1.0, 1.0);
    }
    let span_x = (max_x - min_x).max(1e-9);
    let span_y = (max_y - min_y).max(1e-9);
    let margin = 0.05 * span_x.max(span_y);
    let scale = opts.width_px / (span_x + 2.0 * margin);
    let height_px = (span_y + 2.0 * margin) * scale;
    let tx = |p: Point| (p.x - min_x + margin) * scale;
    let ty = |p: Point| height_px - (p.y - min_y + margin) * scale;

    let r_site = 0.006 * opts.width_px;
    let r_steiner = 0.004 * opts.width_px;
    let stroke = 0.0015 * opts.width_px;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        opts.width_px, height_px, opts.width_px, height_px
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (u, v) in g.edges() {
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555" stroke-width="{}"/>"##,
            tx(pts[u]),
            ty(pts[u]),
            tx(pts[v]),
            ty(pts[v]),
            stroke
        );
    }
    if let Some(path) = &opts.highlight {
        for w in path.windows(2) {
            let (u, v) = (w[0], w[1]);
            let _ = writeln!(
                out,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#d62728" stroke-width="{}"/>"##,
                tx(pts[u]),
                ty(pts[u]),
                tx(pts[v]),
                ty(pts[v]),
                2.5 * stroke
            );
        }
    }
    for (i, &p) in pts.iter().enumerate() {
        let (r, fill) = if g.is_steiner(i) {
            (r_steiner, "#ff7f0e")
        } else {
            (r_site, "#1f77b4")
        };
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{}"/>"#,
            tx(p),
            ty(p),
            r,
            fill
        );
        if opts.labels {
            let _ = writeln!(
                out,
                r##"<text x="{}" y="{}" font-size="{}" fill="#333">{}</text>"##,
                tx(p) + 1.2 * r,
                ty(p) - 1.2 * r,
                2.5 * r,
                i
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_contains_all_elements() {
        let mut g = GeometricGraph::with_steiner(
            vec![
                Point::new(0.0, 0.0),
                Point::new(10.0, 0.0),
                Point::new(5.0, 5.0),
            ],
            2,
        )
        .unwrap();
        g.add_edge(0, 2).unwrap();
        g.add_edge(1, 2).unwrap();
        let svg = render_svg(
            &g,
            &SvgOptions {
                highlight: Some(vec![0, 2, 1]),
                labels: true,
                ..Default::default()
            },
        );
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<circle").count(), 3);
        // 2 graph edges + 2 highlighted segments.
        assert_eq!(svg.matches("<line").count(), 4);
        assert!(svg.contains("#ff7f0e"), "steiner point colour missing");
        // Deterministic output.
        let again = render_svg(
            &g,
            &SvgOptions {
                highlight: Some(vec![0, 2, 1]),
                labels: true,
                ..Default::default()
            },
        );
        assert_eq!(svg, again);
    }
}
