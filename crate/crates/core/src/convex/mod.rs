//! Points in convex position.
//!
//! The farthest-point Voronoi diagram is built as the dual of the
//! farthest-point Delaunay triangulation of the hull polygon. Every diagram
//! vertex is the center of a disk through three hull points enclosing the
//! whole set, and the pairs on its triple split the remaining points into
//! two hull arcs whose sizes bound the pair's depth from below.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    circumcenter, ensure_finite, incircle_raw, orient_raw, BisectorFrame, Point, Sign,
};
use crate::profile::c_pair;
use crate::search::SearchReport;

/// Points in counterclockwise hull order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexChain {
    points: Vec<Point>,
}

impl ConvexChain {
    /// Every hull edge must have all other points strictly on its left.
    /// Input that is convex but not in hull order is rejected, not sorted.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let n = points.len();
        if n < 3 {
            return Err(Error::invalid(format!("convex chain needs at least 3 points, got {n}")));
        }
        ensure_finite(&points)?;
        for i in 0..n {
            let j = (i + 1) % n;
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                match orient_raw(&points[i], &points[j], &points[k]) {
                    Sign::Positive => {}
                    Sign::Zero => {
                        let mut w = vec![i, j, k];
                        w.sort_unstable();
                        return Err(Error::degenerate(w, "collinear hull points"));
                    }
                    Sign::Negative => {
                        return Err(Error::invalid(format!(
                            "point {k} lies right of hull edge ({i}, {j}); input is not in counterclockwise convex order"
                        )))
                    }
                }
            }
        }
        Ok(ConvexChain { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FpvdVertex {
    pub location: Point,
    /// Hull indices (0-based), increasing.
    pub triple: (usize, usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum EdgeEnd {
    Vertex(usize),
    /// Unbounded; the edge leaves its other end along this direction.
    Ray { dx: f64, dy: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FpvdEdge {
    /// The two points whose farthest regions meet along the edge.
    pub pair: (usize, usize),
    pub start: EdgeEnd,
    pub end: EdgeEnd,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FarthestVoronoi {
    pub vertices: Vec<FpvdVertex>,
    pub edges: Vec<FpvdEdge>,
}

/// Sizes of the two hull arcs strictly between `p_i` and `p_j` (1-based).
pub fn halfplane_counts(i: usize, j: usize, n: usize) -> Result<(usize, usize)> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::invalid(format!(
            "need 1 <= i < j <= n, got i={i}, j={j}, n={n}"
        )));
    }
    Ok((j - i - 1, n - (j - i) - 1))
}

/// Farthest-point Delaunay triangles, each `(i, k, j)` with `i < k < j`.
///
/// For a chord `(i, j)` the apex among `i+1..j` is the point whose
/// circumcenter with the chord lies lowest on the bisector (towards the
/// arc), so that its circle encloses the whole arc.
fn farthest_delaunay(points: &[Point]) -> Result<Vec<(usize, usize, usize)>> {
    let n = points.len();
    let mut out = Vec::with_capacity(n - 2);
    let mut stack = vec![(0, n - 1)];
    while let Some((i, j)) = stack.pop() {
        if j - i < 2 {
            continue;
        }
        let frame = BisectorFrame::new(points[i], points[j])?;
        let mut best = i + 1;
        let mut best_t = frame
            .param(&points[best])
            .map_err(|_| Error::degenerate(vec![i, best, j], "collinear hull points"))?;
        for k in i + 2..j {
            let t = frame
                .param(&points[k])
                .map_err(|_| Error::degenerate(vec![i, k, j], "collinear hull points"))?;
            match frame.compare(&t, &best_t) {
                Ordering::Less => {
                    best = k;
                    best_t = t;
                }
                Ordering::Equal => {
                    return Err(Error::degenerate(vec![i, best, k, j], "cocircular quadruple"))
                }
                Ordering::Greater => {}
            }
        }
        out.push((i, best, j));
        stack.push((best, j));
        stack.push((i, best));
    }
    Ok(out)
}

/// Farthest-point Voronoi diagram of a convex chain: `n - 2` vertices,
/// `2n - 3` edges of which `n` are rays (one per hull edge).
pub fn farthest_voronoi(chain: &ConvexChain) -> Result<FarthestVoronoi> {
    let pts = chain.points();
    let n = pts.len();
    let triangles = farthest_delaunay(pts)?;
    let mut vertices = Vec::with_capacity(triangles.len());
    // owner[(a, b)] lists the triangles incident to Delaunay edge (a, b)
    let mut owners: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
    for (t, &(i, k, j)) in triangles.iter().enumerate() {
        let c = circumcenter(&pts[i], &pts[k], &pts[j])?;
        vertices.push(FpvdVertex {
            location: c.point,
            triple: (i, k, j),
        });
        for e in [(i, k), (k, j), (i, j)] {
            owners.entry(e).or_default().push(t);
        }
    }
    let mut edges = Vec::with_capacity(2 * n - 3);
    for ((a, b), ts) in owners {
        match ts.as_slice() {
            [t0, t1] => edges.push(FpvdEdge {
                pair: (a, b),
                start: EdgeEnd::Vertex(*t0),
                end: EdgeEnd::Vertex(*t1),
            }),
            [t0] => {
                // hull edge; ccw direction is a -> b unless it is the closing edge
                let (from, to) = if b == a + 1 { (a, b) } else { (b, a) };
                let (dx, dy) = (pts[to].x - pts[from].x, pts[to].y - pts[from].y);
                edges.push(FpvdEdge {
                    pair: (a, b),
                    start: EdgeEnd::Vertex(*t0),
                    end: EdgeEnd::Ray { dx: -dy, dy: dx },
                });
            }
            _ => {
                return Err(Error::Consistency(format!(
                    "Delaunay edge ({a}, {b}) has {} incident triangles",
                    ts.len()
                )))
            }
        }
    }
    Ok(FarthestVoronoi { vertices, edges })
}

/// Every triple whose circumcircle strictly encloses all other points,
/// by direct in-circle tests. Cubic per triple; for validation.
pub fn brute_force_farthest_triples(chain: &ConvexChain) -> Vec<(usize, usize, usize)> {
    let pts = chain.points();
    let n = pts.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let encloses = (0..n)
                    .filter(|&x| x != i && x != j && x != k)
                    .all(|x| incircle_raw(&pts[i], &pts[j], &pts[k], &pts[x]) == Sign::Positive);
                if encloses {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

/// Which test selected the convex pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConvexRule {
    /// `min(|j - i|, n - |j - i|) - 1 >= n/3 + 1` held on a vertex pair.
    ArcTest,
    /// No vertex pair passed; the pair with the largest smaller arc was taken.
    LargestArc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexPair {
    pub report: SearchReport,
    /// Index of the diagram vertex that supplied the pair.
    pub vertex: usize,
    pub triple: (usize, usize, usize),
    pub rule: ConvexRule,
    /// Smaller of the two arc sizes of the pair.
    pub arc_bound: usize,
}

/// Scan the diagram vertices for a pair whose two hull arcs are both large.
///
/// Returns the first vertex pair passing the arc test; when none does,
/// the vertex pair with the largest smaller arc. `threshold_used` is
/// `ceil(n / 3)` and `certified` records whether the exact depth reaches it.
pub fn convex_pair(chain: &ConvexChain) -> Result<ConvexPair> {
    let n = chain.len();
    if n < 4 {
        return Err(Error::invalid(format!("convex pair needs at least 4 points, got {n}")));
    }
    let fpvd = farthest_voronoi(chain)?;
    let arc = |a: usize, b: usize| -> Result<(usize, usize)> {
        let (x, y) = halfplane_counts(a + 1, b + 1, n)?;
        Ok((x.min(y), (b - a).min(n - (b - a))))
    };
    let mut chosen: Option<(usize, (usize, usize), usize, ConvexRule)> = None;
    let mut fallback: Option<(usize, (usize, usize), usize)> = None;
    'scan: for (v, vert) in fpvd.vertices.iter().enumerate() {
        let (i, k, j) = vert.triple;
        for (a, b) in [(i, k), (k, j), (i, j)] {
            let (bound, gap) = arc(a, b)?;
            // gap - 1 >= n/3 + 1, exactly
            if gap >= 1 && 3 * (gap - 1) >= n + 3 {
                chosen = Some((v, (a, b), bound, ConvexRule::ArcTest));
                break 'scan;
            }
            if fallback.is_none_or(|f| bound > f.2) {
                fallback = Some((v, (a, b), bound));
            }
        }
    }
    let (vertex, pair, bound, rule) = match chosen {
        Some(c) => c,
        None => {
            let (v, p, b) = fallback.expect("at least one vertex");
            (v, p, b, ConvexRule::LargestArc)
        }
    };
    let floor_guarantee = n.div_ceil(3) - 1;
    if bound < floor_guarantee {
        return Err(Error::Consistency(format!(
            "best diagram pair ({}, {}) has arcs of only {bound}, below {floor_guarantee}",
            pair.0, pair.1
        )));
    }
    let stats = c_pair(chain.points(), pair.0, pair.1)?;
    if stats.c < bound {
        return Err(Error::Consistency(format!(
            "pair ({}, {}) has depth {} below its arc bound {bound}",
            pair.0, pair.1, stats.c
        )));
    }
    let threshold = n.div_ceil(3);
    Ok(ConvexPair {
        report: SearchReport {
            pair,
            stats,
            attempts: vertex + 1,
            threshold_used: threshold,
            accepted: rule == ConvexRule::ArcTest,
            certified: stats.c >= threshold,
        },
        vertex,
        triple: fpvd.vertices[vertex].triple,
        rule,
        arc_bound: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Circumcenter;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ngon(n: usize, seed: u64) -> ConvexChain {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = (0..n)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / n as f64 + rng.gen_range(-1e-3..1e-3);
                let r = 1.0 + rng.gen_range(-1e-3..1e-3);
                Point::new(r * a.cos(), r * a.sin())
            })
            .collect();
        ConvexChain::new(pts).unwrap()
    }

    #[test]
    fn halfplane_examples() {
        assert_eq!(halfplane_counts(2, 5, 10).unwrap(), (2, 6));
        assert_eq!(halfplane_counts(1, 2, 10).unwrap(), (0, 8));
        assert_eq!(halfplane_counts(1, 10, 10).unwrap(), (8, 0));
        assert!(halfplane_counts(0, 2, 10).is_err());
        assert!(halfplane_counts(3, 3, 10).is_err());
        assert!(halfplane_counts(3, 11, 10).is_err());
    }

    #[test]
    fn chain_validation() {
        let sq = vec![
            Point::new(0., 0.),
            Point::new(1., 0.),
            Point::new(1., 1.),
            Point::new(0., 1.),
        ];
        assert!(ConvexChain::new(sq.clone()).is_ok());
        let mut cw = sq.clone();
        cw.reverse();
        assert!(matches!(ConvexChain::new(cw), Err(Error::InvalidInput(_))));
        let shuffled = vec![sq[0], sq[2], sq[1], sq[3]];
        assert!(ConvexChain::new(shuffled).is_err());
        let mut inner = sq.clone();
        inner.push(Point::new(0.5, 0.5));
        assert!(ConvexChain::new(inner).is_err());
    }

    #[test]
    fn triangle_and_square() {
        let tri = ngon(3, 1);
        let f = farthest_voronoi(&tri).unwrap();
        assert_eq!(f.vertices.len(), 1);
        assert_eq!(f.vertices[0].triple, (0, 1, 2));
        assert_eq!(f.edges.len(), 3);
        let sq = ngon(4, 2);
        let f = farthest_voronoi(&sq).unwrap();
        assert_eq!(f.vertices.len(), 2);
        let mut got: Vec<_> = f.vertices.iter().map(|v| v.triple).collect();
        got.sort_unstable();
        assert_eq!(got, brute_force_farthest_triples(&sq));
    }

    #[test]
    fn matches_brute_force_and_encloses() {
        for seed in 0..10 {
            let n = 5 + seed as usize * 4;
            let chain = ngon(n, seed);
            let f = farthest_voronoi(&chain).unwrap();
            let mut got: Vec<_> = f.vertices.iter().map(|v| v.triple).collect();
            got.sort_unstable();
            assert_eq!(got, brute_force_farthest_triples(&chain));
            assert_eq!(f.edges.len(), 2 * n - 3);
            let rays = f.edges.iter().filter(|e| matches!(e.end, EdgeEnd::Ray { .. })).count();
            assert_eq!(rays, n);
        }
    }

    #[test]
    fn rays_leave_towards_the_pair_being_farthest() {
        let chain = ngon(9, 4);
        let pts = chain.points();
        let f = farthest_voronoi(&chain).unwrap();
        for e in &f.edges {
            if let (EdgeEnd::Vertex(v), EdgeEnd::Ray { dx, dy }) = (e.start, e.end) {
                let o = f.vertices[v].location;
                let far = Point::new(o.x + 100.0 * dx, o.y + 100.0 * dy);
                let d = |i: usize| far.dist2(&pts[i]);
                let (a, b) = e.pair;
                for x in 0..pts.len() {
                    if x != a && x != b {
                        assert!(d(x) < d(a).min(d(b)));
                    }
                }
            }
        }
    }

    #[test]
    fn vertex_equidistance() {
        let chain = ngon(12, 7);
        let pts = chain.points();
        for v in farthest_voronoi(&chain).unwrap().vertices {
            let (i, k, j) = v.triple;
            let c: Circumcenter = circumcenter(&pts[i], &pts[k], &pts[j]).unwrap();
            assert_eq!(c.point, v.location);
        }
    }

    #[test]
    fn convex_pair_on_polygons() {
        for n in [9usize, 12, 20, 31] {
            let chain = ngon(n, n as u64);
            let r = convex_pair(&chain).unwrap();
            assert!(r.report.stats.c >= r.arc_bound);
            assert!(r.report.stats.c + 1 >= n.div_ceil(3));
            assert_eq!(r.report.threshold_used, n.div_ceil(3));
        }
    }
}
