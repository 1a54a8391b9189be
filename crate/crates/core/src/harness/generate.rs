//! Seeded instance generators. Every emitted set has been checked for
//! general position (collinearity only above 500 points); a failing draw is
//! redrawn under a derived seed.

use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::convex::ConvexChain;
use crate::error::{Error, Result};
use crate::geodesic::{check_geodesic_position, SimplePolygon};
use crate::geometry::{check_collinear, check_general_position, Colour, Point};

const RETRIES: u64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneratorKind {
    /// Uniform in the unit square.
    UniformSquare,
    /// Random convex polygon vertices, counterclockwise.
    ConvexChain,
    /// Vertices of a regular n-gon on the unit circle, perturbed.
    RegularNgon,
    /// `p = (0, 0)`, `q = (4, 0)` and `(n - 2) / 2` points on each side of
    /// their line, all within `perturbation` of the bisector `x = 2`.
    TwoCluster,
    /// A random star-shaped polygon with reflex vertices and points inside.
    PolygonUniform,
    /// A convex polygon around a cloud in `[-1, 1]^2`.
    PolygonConvex,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
    /// Jitter, relative to the bounding-box diagonal.
    #[serde(default = "default_perturbation")]
    pub perturbation: f64,
    /// Colour half the points red and half blue.
    #[serde(default)]
    pub bichromatic: bool,
    /// Polygon vertex count for the polygon kinds (default 16).
    #[serde(default)]
    pub vertices: Option<usize>,
}

fn default_perturbation() -> f64 {
    1e-6
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind,
            n,
            seed,
            perturbation: default_perturbation(),
            bichromatic: false,
            vertices: None,
        }
    }

    pub fn bichromatic(self) -> Self {
        GeneratorSpec {
            bichromatic: true,
            ..self
        }
    }

    pub fn with_vertices(self, m: usize) -> Self {
        GeneratorSpec {
            vertices: Some(m),
            ..self
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: GeneratorSpec,
    pub points: Vec<Point>,
    pub polygon: Option<SimplePolygon>,
    /// Draws rejected before this one.
    pub retries: u64,
}

pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    validate(spec)?;
    let mut last = None;
    for attempt in 0..RETRIES {
        let seed = spec.seed ^ attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match draw(spec, &mut rng).and_then(|inst| accept(spec, inst)) {
            Ok((mut points, polygon)) => {
                if spec.bichromatic {
                    colour(&mut points, &mut rng);
                }
                return Ok(Instance {
                    spec: *spec,
                    points,
                    polygon,
                    retries: attempt,
                });
            }
            Err(e) => last = Some(e),
        }
    }
    Err(Error::Consistency(format!(
        "generator {:?} n={} seed={} failed {RETRIES} draws; last: {}",
        spec.kind,
        spec.n,
        spec.seed,
        last.expect("at least one draw")
    )))
}

fn validate(spec: &GeneratorSpec) -> Result<()> {
    let n = spec.n;
    if n < 2 {
        return Err(Error::invalid(format!("need n >= 2, got {n}")));
    }
    if !(spec.perturbation > 0.0) || !spec.perturbation.is_finite() {
        return Err(Error::invalid(format!("perturbation must be positive, got {}", spec.perturbation)));
    }
    if spec.bichromatic && !n.is_multiple_of(2) {
        return Err(Error::invalid(format!("balanced colouring needs even n, got {n}")));
    }
    match spec.kind {
        GeneratorKind::TwoCluster if !(n - 2).is_multiple_of(2) => Err(Error::invalid(format!(
            "two clusters need n - 2 even, got n={n}"
        ))),
        GeneratorKind::ConvexChain | GeneratorKind::RegularNgon if n < 3 => {
            Err(Error::invalid(format!("convex kinds need n >= 3, got {n}")))
        }
        GeneratorKind::PolygonUniform | GeneratorKind::PolygonConvex => match spec.vertices {
            Some(m) if m < 3 => Err(Error::invalid(format!("polygon needs >= 3 vertices, got {m}"))),
            Some(m) if spec.kind == GeneratorKind::PolygonUniform && m < 5 => Err(Error::invalid(
                format!("a nonconvex star polygon needs >= 5 vertices, got {m}"),
            )),
            _ => Ok(()),
        },
        _ => Ok(()),
    }
}

type Draw = (Vec<Point>, Option<SimplePolygon>);

fn draw(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Result<Draw> {
    let n = spec.n;
    let eps = spec.perturbation;
    let m = spec.vertices.unwrap_or(16);
    Ok(match spec.kind {
        GeneratorKind::UniformSquare => {
            let pts = (0..n).map(|_| Point::new(rng.gen(), rng.gen())).collect();
            (jitter(pts, eps, rng), None)
        }
        GeneratorKind::ConvexChain => (jitter(valtr(n, rng), eps, rng), None),
        GeneratorKind::RegularNgon => {
            let pts = (0..n)
                .map(|i| {
                    let a = TAU * i as f64 / n as f64;
                    Point::new(a.cos(), a.sin())
                })
                .collect();
            (jitter(pts, eps, rng), None)
        }
        GeneratorKind::TwoCluster => {
            let k = (n - 2) / 2;
            let w = eps * 5.0;
            let mut pts = vec![Point::new(0.0, 0.0), Point::new(4.0, 0.0)];
            for sign in [1.0, -1.0] {
                for _ in 0..k {
                    pts.push(Point::new(2.0 + rng.gen_range(-w..w), sign * rng.gen_range(0.5..2.5)));
                }
            }
            (pts, None)
        }
        GeneratorKind::PolygonUniform => {
            let mut verts: Vec<Point> = (0..m)
                .map(|i| {
                    let a = TAU * (i as f64 + rng.gen_range(0.1..0.9)) / m as f64;
                    let r = rng.gen_range(0.35..1.0);
                    Point::new(r * a.cos(), r * a.sin())
                })
                .collect();
            // pull one vertex inside the triangle (origin, prev, next) so the
            // polygon always has a notch
            let k = rng.gen_range(0..m);
            let (a, b) = (verts[(k + m - 1) % m], verts[(k + 1) % m]);
            let u = verts[k];
            let (ex, ey) = (b.x - a.x, b.y - a.y);
            let t = (a.x * ey - a.y * ex) / (u.x * ey - u.y * ex);
            let shrink = t * rng.gen_range(0.3..0.8);
            verts[k] = Point::new(u.x * shrink, u.y * shrink);
            let poly = SimplePolygon::new(verts)?;
            if poly.is_convex() {
                return Err(Error::invalid("star polygon came out convex"));
            }
            let pts = sample_inside(&poly, n, rng);
            (pts, Some(poly))
        }
        GeneratorKind::PolygonConvex => {
            let verts: Vec<Point> = (0..m)
                .map(|i| {
                    let a = TAU * (i as f64 + rng.gen_range(0.2..0.8)) / m as f64;
                    Point::new(3.0 * a.cos(), 3.0 * a.sin())
                })
                .collect();
            let poly = SimplePolygon::new(verts)?;
            let pts = (0..n)
                .map(|_| Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            (pts, Some(poly))
        }
    })
}

/// Above this size the cubic cocircularity scan is skipped; jitter makes a
/// cocircular quadruple a measure-zero event and the exact predicates still
/// report one if it occurs.
const COCIRCULAR_SCAN_LIMIT: usize = 500;

fn accept(spec: &GeneratorSpec, (points, polygon): Draw) -> Result<Draw> {
    let report = if points.len() <= COCIRCULAR_SCAN_LIMIT {
        check_general_position(&points)?
    } else {
        check_collinear(&points)
    };
    if let Some(w) = report.witness {
        return Err(Error::degenerate(w, "generated points not in general position"));
    }
    if matches!(spec.kind, GeneratorKind::ConvexChain | GeneratorKind::RegularNgon) {
        ConvexChain::new(points.clone())?;
    }
    if let Some(poly) = &polygon {
        check_geodesic_position(poly, &points)?;
    }
    Ok((points, polygon))
}

fn jitter(points: Vec<Point>, eps: f64, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in &points {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let d = lo.dist(&hi).max(1.0) * eps;
    points
        .into_iter()
        .map(|p| Point::new(p.x + rng.gen_range(-d..d), p.y + rng.gen_range(-d..d)))
        .collect()
}

/// Random convex polygon: split sorted coordinates into two chains, pair
/// the resulting edge vectors at random, and chain them by angle.
fn valtr(n: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let mut edge_parts = || {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
        v.sort_by(f64::total_cmp);
        let (min, max) = (v[0], v[n - 1]);
        let (mut a, mut b) = (min, min);
        let mut parts = Vec::with_capacity(n);
        for &x in &v[1..n - 1] {
            if rng.gen_bool(0.5) {
                parts.push(x - a);
                a = x;
            } else {
                parts.push(b - x);
                b = x;
            }
        }
        parts.push(max - a);
        parts.push(b - max);
        parts
    };
    let xs = edge_parts();
    let mut ys = edge_parts();
    ys.shuffle(rng);
    let mut vecs: Vec<(f64, f64)> = xs.into_iter().zip(ys).collect();
    vecs.sort_by(|u, v| u.1.atan2(u.0).total_cmp(&v.1.atan2(v.0)));
    let mut pts = Vec::with_capacity(n);
    let (mut x, mut y) = (0.0, 0.0);
    for (dx, dy) in vecs {
        pts.push(Point::new(x, y));
        x += dx;
        y += dy;
    }
    pts
}

fn sample_inside(poly: &SimplePolygon, n: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let (lo, hi) = poly.bbox();
    let mut pts = Vec::with_capacity(n);
    while pts.len() < n {
        let p = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if poly.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

fn colour(points: &mut [Point], rng: &mut ChaCha8Rng) {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.shuffle(rng);
    let half = points.len() / 2;
    for (rank, &i) in idx.iter().enumerate() {
        points[i].colour = Some(if rank < half { Colour::Red } else { Colour::Blue });
    }
}
