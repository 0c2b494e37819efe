//! Seeded point-set generators used by the CLI and the test suites.
//!
//! All randomness flows through ChaCha8 seeded from a caller-supplied `u64`,
//! so every generator is reproducible across platforms and runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::Point;

/// Minimum pairwise distance the generators enforce by resampling.
const MIN_SEPARATION: f64 = 1e-6;

fn push_distinct(pts: &mut Vec<Point>, mut sample: impl FnMut() -> Point) -> Result<()> {
    for _ in 0..10_000 {
        let p = sample();
        if pts.iter().all(|q| q.dist(p) >= MIN_SEPARATION) {
            pts.push(p);
            return Ok(());
        }
    }
    Err(Error::Degenerate {
        msg: "could not place a point away from the existing ones".into(),
    })
}

/// `n` points uniform in `[0, 100)²`.
pub fn uniform_square(n: usize, seed: u64) -> Result<Vec<Point>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        push_distinct(&mut pts, || {
            Point::new(rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0))
        })?;
    }
    Ok(pts)
}

/// `n` points in convex position: distinct angles on a circle of radius 50
/// centred at (50, 50), returned in counterclockwise order.
pub fn convex_position(n: usize, seed: u64) -> Result<Vec<Point>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut angles: Vec<f64> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut placed = false;
        for _ in 0..10_000 {
            let a: f64 = rng.gen_range(0.0..360.0);
            // Angles too close together produce near-collinear triples.
            if angles.iter().all(|&b| {
                let d = (a - b).abs();
                d.min(360.0 - d) >= 0.5
            }) {
                angles.push(a);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::Degenerate {
                msg: format!("cannot place {n} well-separated angles on a circle"),
            });
        }
    }
    angles.sort_by(f64::total_cmp);
    Ok(angles
        .into_iter()
        .map(|a| {
            let r = a.to_radians();
            Point::new(50.0 + 50.0 * r.cos(), 50.0 + 50.0 * r.sin())
        })
        .collect())
}

/// First `n` cells of a ⌈√n⌉×⌈√n⌉ grid with spacing 10, rotated by 6° so no
/// pair is axis-parallel. Fully deterministic; `seed` is accepted for
/// interface uniformity but unused.
pub fn grid(n: usize, _seed: u64) -> Result<Vec<Point>> {
    let side = (n as f64).sqrt().ceil() as usize;
    let mut pts = Vec::with_capacity(n);
    'outer: for row in 0..side {
        for col in 0..side {
            if pts.len() == n {
                break 'outer;
            }
            pts.push(Point::new(10.0 * col as f64, 10.0 * row as f64).rotate_deg(6.0));
        }
    }
    Ok(pts)
}

/// Gaussian clusters: ⌈n/10⌉ centres uniform in `[0, 100)²`, points spread
/// around them with σ = 3 per coordinate.
pub fn clustered(n: usize, seed: u64) -> Result<Vec<Point>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = n.div_ceil(10).max(1);
    let centers: Vec<Point> = (0..k)
        .map(|_| Point::new(rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
        .collect();
    let mut pts = Vec::with_capacity(n);
    for i in 0..n {
        let c = centers[i % k];
        push_distinct(&mut pts, || {
            Point::new(
                c.x + 3.0 * gaussian(&mut rng),
                c.y + 3.0 * gaussian(&mut rng),
            )
        })?;
    }
    Ok(pts)
}

/// Standard normal via Box–Muller; avoids pulling in a distributions crate
/// for one function.
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Named generator dispatch. Accepts the short names and the CLI's longer
/// `--dist` spellings.
pub fn generate(kind: &str, n: usize, seed: u64) -> Result<Vec<Point>> {
    match kind {
        "uniform" | "uniform-square" => uniform_square(n, seed),
        "convex" | "convex-position" => convex_position(n, seed),
        "grid" => grid(n, seed),
        "clustered" => clustered(n, seed),
        other => Err(Error::InvalidConfig {
            msg: format!("unknown point-set kind '{other}' (uniform|convex|grid|clustered)"),
        }),
    }
}
