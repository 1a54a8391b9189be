use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::SimplePolygon;
use crate::error::{Error, Result};
use crate::geometry::{orient_raw, Point, Side, Sign};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicPath {
    /// Endpoints plus the polygon vertices the path bends at.
    pub waypoints: Vec<Point>,
    /// Polygon vertex index of each interior waypoint.
    pub bends: Vec<usize>,
    pub length: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Corner {
    p: Point,
    vertex: Option<usize>,
}

impl Corner {
    fn same(&self, o: &Corner) -> bool {
        match (self.vertex, o.vertex) {
            (Some(a), Some(b)) => a == b,
            _ => self.p.same_location(&o.p),
        }
    }
}

/// Dual-tree search rooted at the triangle holding a source point; answers
/// shortest-path queries from that source.
pub(crate) struct SourceTree<'a> {
    poly: &'a SimplePolygon,
    src: Point,
    root: usize,
    parent: Vec<Option<usize>>,
}

impl<'a> SourceTree<'a> {
    pub(crate) fn new(poly: &'a SimplePolygon, src: Point, root: usize) -> Self {
        let nt = poly.triangles().len();
        let mut parent = vec![None; nt];
        if !poly.is_convex() {
            let mut seen = vec![false; nt];
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(t) = queue.pop_front() {
                for nb in poly.neighbors()[t].iter().flatten() {
                    if !seen[*nb] {
                        seen[*nb] = true;
                        parent[*nb] = Some(t);
                        queue.push_back(*nb);
                    }
                }
            }
        }
        SourceTree {
            poly,
            src,
            root,
            parent,
        }
    }

    /// Triangles from the root to `t`.
    fn channel(&self, t: usize) -> Vec<usize> {
        let mut c = vec![t];
        let mut cur = t;
        while cur != self.root {
            cur = self.parent[cur].expect("dual graph is connected");
            c.push(cur);
        }
        c.reverse();
        c
    }

    pub(crate) fn distance(&self, dst: &Point, dst_tri: usize) -> f64 {
        if self.poly.is_convex() || dst_tri == self.root {
            return self.src.dist(dst);
        }
        self.path(dst, dst_tri).length
    }

    pub(crate) fn path(&self, dst: &Point, dst_tri: usize) -> GeodesicPath {
        let a = Corner {
            p: self.src,
            vertex: None,
        };
        let b = Corner {
            p: *dst,
            vertex: None,
        };
        if self.src.same_location(dst) {
            return GeodesicPath {
                waypoints: vec![self.src],
                bends: vec![],
                length: 0.0,
            };
        }
        let mut portals = vec![(a, a)];
        if !self.poly.is_convex() && dst_tri != self.root {
            let channel = self.channel(dst_tri);
            for w in channel.windows(2) {
                let (t, next) = (w[0], w[1]);
                let e = (0..3)
                    .find(|&e| self.poly.neighbors()[t][e] == Some(next))
                    .expect("consecutive channel triangles are adjacent");
                let tri = self.poly.triangles()[t];
                let (u, v) = (tri[e], tri[(e + 1) % 3]);
                let corner = |i: usize| Corner {
                    p: self.poly.vertices()[i],
                    vertex: Some(i),
                };
                // leaving t through u -> v, v is on the left
                portals.push((corner(v), corner(u)));
            }
        }
        portals.push((b, b));
        funnel(&portals)
    }
}

/// Whether `x` is on or past the ray `apex -> edge`, coming from the
/// `inner` side. A point on the opposite ray (the apex sits inside a flat
/// funnel) is not past it.
fn reaches(apex: &Point, edge: &Point, x: &Point, inner: Sign) -> bool {
    match orient_raw(apex, edge, x) {
        Sign::Zero => (edge.x - apex.x) * (x.x - apex.x) + (edge.y - apex.y) * (x.y - apex.y) > 0.0,
        s => s != inner,
    }
}

/// String pulling through a sequence of `(left, right)` portals.
fn funnel(portals: &[(Corner, Corner)]) -> GeodesicPath {
    let mut path = vec![portals[0].0];
    let mut apex = portals[0].0;
    let (mut left, mut left_i) = (portals[0].0, 0);
    let (mut right, mut right_i) = (portals[0].1, 0);
    let mut i = 1;
    while i < portals.len() {
        let (l, r) = portals[i];
        if orient_raw(&apex.p, &right.p, &r.p) != Sign::Negative {
            if apex.same(&right) || !reaches(&apex.p, &left.p, &r.p, Sign::Negative) {
                right = r;
                right_i = i;
            } else {
                path.push(left);
                apex = left;
                right = apex;
                right_i = left_i;
                i = left_i + 1;
                continue;
            }
        }
        if orient_raw(&apex.p, &left.p, &l.p) != Sign::Positive {
            if apex.same(&left) || !reaches(&apex.p, &right.p, &l.p, Sign::Positive) {
                left = l;
                left_i = i;
            } else {
                path.push(right);
                apex = right;
                left = apex;
                left_i = right_i;
                i = right_i + 1;
                continue;
            }
        }
        i += 1;
    }
    let end = portals[portals.len() - 1].0;
    if !path.last().expect("nonempty").same(&end) {
        path.push(end);
    }
    path.dedup_by(|a, b| a.p.same_location(&b.p));
    let waypoints: Vec<Point> = path.iter().map(|c| c.p).collect();
    let bends = path[1..path.len().saturating_sub(1)]
        .iter()
        .filter_map(|c| c.vertex)
        .collect();
    let length = waypoints.windows(2).map(|w| w[0].dist(&w[1])).sum();
    GeodesicPath {
        waypoints,
        bends,
        length,
    }
}

/// Shortest path inside the polygon between two points in it.
pub fn shortest_path(poly: &SimplePolygon, a: &Point, b: &Point) -> Result<GeodesicPath> {
    let ta = poly.locate_or_err(a, "path start")?;
    let tb = poly.locate_or_err(b, "path end")?;
    Ok(SourceTree::new(poly, *a, ta).path(b, tb))
}

pub fn geodesic_distance(poly: &SimplePolygon, a: &Point, b: &Point) -> Result<f64> {
    Ok(shortest_path(poly, a, b)?.length)
}

/// Whether `x` lies in the closed geodesic disk of radius `rho` about `o`.
pub fn geodesic_disk_contains(poly: &SimplePolygon, o: &Point, rho: f64, x: &Point) -> Result<bool> {
    if !(rho >= 0.0) || !rho.is_finite() {
        return Err(Error::invalid(format!("radius must be finite and >= 0, got {rho}")));
    }
    Ok(geodesic_distance(poly, o, x)? <= rho)
}

/// Rejects three points where one lies on the shortest path between the
/// other two. The cocircularity conditions of geodesic general position are
/// assumed, not checked.
pub fn check_geodesic_position(poly: &SimplePolygon, points: &[Point]) -> Result<()> {
    let locs = points
        .iter()
        .enumerate()
        .map(|(i, x)| poly.locate_or_err(x, &format!("point {i}")))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..points.len() {
        let tree = SourceTree::new(poly, points[i], locs[i]);
        for j in i + 1..points.len() {
            let g = tree.path(&points[j], locs[j]);
            for k in (0..points.len()).filter(|&k| k != i && k != j) {
                let x = &points[k];
                let on = g.waypoints.windows(2).any(|w| {
                    orient_raw(&w[0], &w[1], x) == Sign::Zero
                        && x.x >= w[0].x.min(w[1].x)
                        && x.x <= w[0].x.max(w[1].x)
                        && x.y >= w[0].y.min(w[1].y)
                        && x.y <= w[0].y.max(w[1].y)
                });
                if on {
                    let mut w = vec![i, j, k];
                    w.sort_unstable();
                    return Err(Error::degenerate(w, "point lies on a shortest path between two others"));
                }
            }
        }
    }
    Ok(())
}

/// Side of the extension path of `g(p, q)` that `x` lies on.
///
/// The paths `g(p, q)` and `g(p, x)` share a prefix of bends and then
/// leave the last shared waypoint in different directions; the turn between
/// those directions decides the side. Extensions beyond `p` and `q` fall out
/// of the same test.
pub fn side_of_geodesic(poly: &SimplePolygon, p: &Point, q: &Point, x: &Point) -> Result<Side> {
    if p.same_location(q) {
        return Err(Error::invalid("side test needs two distinct path endpoints"));
    }
    let gq = shortest_path(poly, p, q)?;
    let gx = shortest_path(poly, p, x)?;
    let shared = gq
        .bends
        .iter()
        .zip(&gx.bends)
        .take_while(|(a, b)| a == b)
        .count();
    let z = if shared == 0 {
        *p
    } else {
        poly.vertices()[gq.bends[shared - 1]]
    };
    let next_q = gq.bends.get(shared).map_or(*q, |&v| poly.vertices()[v]);
    let next_x = gx.bends.get(shared).map_or(*x, |&v| poly.vertices()[v]);
    if next_x.same_location(&z) {
        return Err(Error::degenerate(vec![], "point lies on the geodesic"));
    }
    match orient_raw(&z, &next_q, &next_x) {
        Sign::Positive => Ok(Side::Left),
        Sign::Negative => Ok(Side::Right),
        Sign::Zero => Err(Error::degenerate(
            vec![],
            format!("point ({}, {}) lies on the extension path", x.x, x.y),
        )),
    }
}
