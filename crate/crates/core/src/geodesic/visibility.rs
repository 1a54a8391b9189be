//! Reference shortest paths by Dijkstra over the visibility graph of the
//! polygon vertices and the two endpoints. Quadratic edges with a linear
//! visibility test each; for validation on small polygons.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::SimplePolygon;
use crate::error::Result;
use crate::geometry::{orient_raw, Point, Sign};

/// Whether the closed segment `ab` stays inside the closed polygon.
pub fn visible(poly: &SimplePolygon, a: &Point, b: &Point) -> bool {
    let v = poly.vertices();
    let m = v.len();
    // no proper crossing of any edge
    for i in 0..m {
        let (c, d) = (v[i], v[(i + 1) % m]);
        let o1 = orient_raw(a, b, &c).as_i32();
        let o2 = orient_raw(a, b, &d).as_i32();
        let o3 = orient_raw(&c, &d, a).as_i32();
        let o4 = orient_raw(&c, &d, b).as_i32();
        if o1 * o2 < 0 && o3 * o4 < 0 {
            return false;
        }
    }
    // split at vertices touching the segment; each piece is then wholly
    // inside or wholly outside, decided by its midpoint
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let mut cuts = vec![0.0, 1.0];
    if len2 > 0.0 {
        for w in v {
            if orient_raw(a, b, w).as_i32() == 0 {
                let t = ((w.x - a.x) * dx + (w.y - a.y) * dy) / len2;
                if t > 0.0 && t < 1.0 {
                    cuts.push(t);
                }
            }
        }
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    // edges on the segment's own line; pieces along them are boundary, and a
    // rounded midpoint could land just outside
    let along: Vec<(Point, Point)> = (0..m)
        .map(|i| (v[i], v[(i + 1) % m]))
        .filter(|(c, d)| orient_raw(a, b, c) == Sign::Zero && orient_raw(a, b, d) == Sign::Zero)
        .collect();
    cuts.windows(2).all(|w| {
        let t = 0.5 * (w[0] + w[1]);
        let mid = Point::new(a.x + t * dx, a.y + t * dy);
        along.iter().any(|(c, d)| {
            let (ex, ey) = (d.x - c.x, d.y - c.y);
            let s = ((mid.x - c.x) * ex + (mid.y - c.y) * ey) / (ex * ex + ey * ey);
            s > 0.0 && s < 1.0
        }) || poly.contains(&mid)
    })
}

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

/// Geodesic distance by Dijkstra over the visibility graph.
pub fn visibility_distance(poly: &SimplePolygon, a: &Point, b: &Point) -> Result<f64> {
    poly.locate_or_err(a, "path start")?;
    poly.locate_or_err(b, "path end")?;
    let mut nodes = vec![*a, *b];
    nodes.extend_from_slice(poly.vertices());
    let k = nodes.len();
    let mut dist = vec![f64::INFINITY; k];
    let mut done = vec![false; k];
    dist[0] = 0.0;
    let mut heap = BinaryHeap::from([Entry(0.0, 0)]);
    while let Some(Entry(d, u)) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if u == 1 {
            break;
        }
        for w in 0..k {
            if done[w] || w == u {
                continue;
            }
            let nd = d + nodes[u].dist(&nodes[w]);
            if nd < dist[w] && visible(poly, &nodes[u], &nodes[w]) {
                dist[w] = nd;
                heap.push(Entry(nd, w));
            }
        }
    }
    Ok(dist[1])
}
