use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ensure_finite, orient_raw, Point, Sign};

/// A simple polygon with counterclockwise vertices, triangulated.
#[derive(Clone, Debug)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
    reflex: Vec<bool>,
    triangles: Vec<[usize; 3]>,
    /// `neighbors[t][e]` is the triangle across the edge from corner `e` to corner `e + 1`.
    neighbors: Vec<[Option<usize>; 3]>,
    convex: bool,
    bbox: (Point, Point),
}

#[derive(Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<[f64; 2]>,
}

fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient_raw(a, b, c).as_i32();
    let o2 = orient_raw(a, b, d).as_i32();
    let o3 = orient_raw(c, d, a).as_i32();
    let o4 = orient_raw(c, d, b).as_i32();
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    let within = |p: &Point, q: &Point, r: &Point| {
        r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
    };
    (o1 == 0 && within(a, b, c))
        || (o2 == 0 && within(a, b, d))
        || (o3 == 0 && within(c, d, a))
        || (o4 == 0 && within(c, d, b))
}

/// Closed containment in a counterclockwise triangle.
pub(crate) fn in_triangle(a: &Point, b: &Point, c: &Point, x: &Point) -> bool {
    orient_raw(a, b, x) != Sign::Negative
        && orient_raw(b, c, x) != Sign::Negative
        && orient_raw(c, a, x) != Sign::Negative
}

impl SimplePolygon {
    /// Validates (at least three vertices, counterclockwise, simple, no
    /// collinear consecutive vertices) and triangulates by ear clipping.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let m = vertices.len();
        if m < 3 {
            return Err(Error::invalid(format!("polygon needs at least 3 vertices, got {m}")));
        }
        ensure_finite(&vertices)?;
        let area2: f64 = (0..m)
            .map(|i| {
                let (a, b) = (vertices[i], vertices[(i + 1) % m]);
                a.x * b.y - a.y * b.x
            })
            .sum();
        let mut reflex = vec![false; m];
        for i in 0..m {
            let prev = vertices[(i + m - 1) % m];
            let next = vertices[(i + 1) % m];
            match orient_raw(&prev, &vertices[i], &next) {
                Sign::Zero => {
                    return Err(Error::degenerate(
                        vec![(i + m - 1) % m, i, (i + 1) % m],
                        "collinear consecutive polygon vertices",
                    ))
                }
                Sign::Negative => reflex[i] = true,
                Sign::Positive => {}
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                if j == i + 1 || (i == 0 && j == m - 1) {
                    continue;
                }
                let (a, b) = (vertices[i], vertices[(i + 1) % m]);
                let (c, d) = (vertices[j], vertices[(j + 1) % m]);
                if segments_intersect(&a, &b, &c, &d) {
                    return Err(Error::invalid(format!(
                        "polygon is not simple: edges {i} and {j} intersect"
                    )));
                }
            }
        }
        if area2 <= 0.0 {
            return Err(Error::invalid("polygon vertices must be in counterclockwise order"));
        }
        let triangles = ear_clip(&vertices)?;
        let neighbors = adjacency(&triangles)?;
        let mut lo = vertices[0];
        let mut hi = vertices[0];
        for v in &vertices {
            lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        Ok(SimplePolygon {
            convex: !reflex.iter().any(|&r| r),
            vertices,
            reflex,
            triangles,
            neighbors,
            bbox: (lo, hi),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: PolygonFile = serde_json::from_str(text)?;
        SimplePolygon::new(f.vertices.iter().map(|v| Point::new(v[0], v[1])).collect())
    }

    pub fn to_json(&self) -> String {
        let f = PolygonFile {
            vertices: self.vertices.iter().map(|v| [v.x, v.y]).collect(),
        };
        serde_json::to_string(&f).expect("plain data serializes")
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_reflex(&self, v: usize) -> bool {
        self.reflex[v]
    }

    pub fn reflex_count(&self) -> usize {
        self.reflex.iter().filter(|&&r| r).count()
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn neighbors(&self) -> &[[Option<usize>; 3]] {
        &self.neighbors
    }

    pub fn bbox(&self) -> (Point, Point) {
        self.bbox
    }

    /// Largest vertex-to-vertex distance.
    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut d: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                d = d.max(v[i].dist(&v[j]));
            }
        }
        d
    }

    pub(crate) fn corners(&self, t: usize) -> [Point; 3] {
        let [a, b, c] = self.triangles[t];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    /// A triangle containing `x` (closed), if any.
    pub fn locate(&self, x: &Point) -> Option<usize> {
        if !x.is_finite()
            || x.x < self.bbox.0.x
            || x.x > self.bbox.1.x
            || x.y < self.bbox.0.y
            || x.y > self.bbox.1.y
        {
            return None;
        }
        (0..self.triangles.len()).find(|&t| {
            let [a, b, c] = self.corners(t);
            in_triangle(&a, &b, &c, x)
        })
    }

    /// Closed containment.
    pub fn contains(&self, x: &Point) -> bool {
        self.locate(x).is_some()
    }

    pub(crate) fn locate_or_err(&self, x: &Point, what: &str) -> Result<usize> {
        self.locate(x).ok_or_else(|| {
            Error::invalid(format!("{what} ({}, {}) is outside the polygon", x.x, x.y))
        })
    }
}

fn ear_clip(vertices: &[Point]) -> Result<Vec<[usize; 3]>> {
    let mut ring: Vec<usize> = (0..vertices.len()).collect();
    let mut out = Vec::with_capacity(vertices.len() - 2);
    while ring.len() > 3 {
        let k = ring.len();
        let ear = (0..k).find(|&i| {
            let (a, b, c) = (ring[(i + k - 1) % k], ring[i], ring[(i + 1) % k]);
            let (pa, pb, pc) = (vertices[a], vertices[b], vertices[c]);
            orient_raw(&pa, &pb, &pc) == Sign::Positive
                && ring
                    .iter()
                    .filter(|&&v| v != a && v != b && v != c)
                    .all(|&v| !in_triangle(&pa, &pb, &pc, &vertices[v]))
        });
        let Some(i) = ear else {
            return Err(Error::degenerate(ring.clone(), "no ear found while triangulating"));
        };
        out.push([ring[(i + k - 1) % k], ring[i], ring[(i + 1) % k]]);
        ring.remove(i);
    }
    out.push([ring[0], ring[1], ring[2]]);
    Ok(out)
}

fn adjacency(triangles: &[[usize; 3]]) -> Result<Vec<[Option<usize>; 3]>> {
    let mut by_edge: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        for e in 0..3 {
            let (a, b) = (tri[e], tri[(e + 1) % 3]);
            by_edge.entry((a.min(b), a.max(b))).or_default().push((t, e));
        }
    }
    let mut nb = vec![[None; 3]; triangles.len()];
    for uses in by_edge.values() {
        match uses.as_slice() {
            [_] => {}
            [(t0, e0), (t1, e1)] => {
                nb[*t0][*e0] = Some(*t1);
                nb[*t1][*e1] = Some(*t0);
            }
            _ => return Err(Error::Consistency("triangulation edge shared by more than two triangles".into())),
        }
    }
    Ok(nb)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn l_shape() -> SimplePolygon {
        SimplePolygon::new(
            [(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)]
                .iter()
                .map(|&(x, y)| Point::new(x, y))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn l_shape_structure() {
        let p = l_shape();
        assert_eq!(p.triangles().len(), 4);
        assert_eq!(p.reflex_count(), 1);
        assert!(p.is_reflex(3));
        assert!(!p.is_convex());
        // dual graph is a tree: m - 3 interior edges
        let links: usize = p.neighbors().iter().map(|n| n.iter().flatten().count()).sum();
        assert_eq!(links / 2, 3);
        assert!(p.contains(&Point::new(0.5, 1.5)));
        assert!(p.contains(&Point::new(1.0, 1.0)));
        assert!(!p.contains(&Point::new(1.5, 1.5)));
    }

    #[test]
    fn rejects_bad_polygons() {
        let pts = |c: &[(f64, f64)]| c.iter().map(|&(x, y)| Point::new(x, y)).collect::<Vec<_>>();
        assert!(SimplePolygon::new(pts(&[(0., 0.), (1., 0.)])).is_err());
        // clockwise
        assert!(SimplePolygon::new(pts(&[(0., 0.), (0., 1.), (1., 0.)])).is_err());
        // bow tie
        assert!(SimplePolygon::new(pts(&[(0., 0.), (1., 1.), (1., 0.), (0., 1.)])).is_err());
        // collinear run
        assert!(SimplePolygon::new(pts(&[(0., 0.), (1., 0.), (2., 0.), (1., 1.)])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = l_shape();
        let q = SimplePolygon::from_json(&p.to_json()).unwrap();
        assert_eq!(p.vertices(), q.vertices());
    }

    #[test]
    fn comb_triangulates() {
        // a comb with several reflex notches
        let mut v = vec![Point::new(0., 0.), Point::new(10., 0.)];
        for i in (0..5).rev() {
            let x = 2.0 * i as f64;
            v.push(Point::new(x + 2.0, 4.0));
            v.push(Point::new(x + 1.5, 4.0 + 0.01 * i as f64));
            v.push(Point::new(x + 1.0, 1.0 + 0.1 * i as f64));
            v.push(Point::new(x + 0.5, 4.0 + 0.02 * i as f64));
        }
        v.push(Point::new(0., 4.2));
        let p = SimplePolygon::new(v).unwrap();
        assert_eq!(p.triangles().len(), p.len() - 2);
        let area: f64 = (0..p.triangles().len())
            .map(|t| {
                let [a, b, c] = p.corners(t);
                ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)) / 2.0
            })
            .sum();
        let m = p.len();
        let poly_area: f64 = (0..m)
            .map(|i| {
                let (a, b) = (p.vertices()[i], p.vertices()[(i + 1) % m]);
                a.x * b.y - a.y * b.x
            })
            .sum::<f64>()
            / 2.0;
        assert!((area - poly_area).abs() < 1e-9);
    }
}
