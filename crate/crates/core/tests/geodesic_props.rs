use diskdepth::geodesic::visibility::{visibility_distance, visible};
use diskdepth::geodesic::{
    geodesic_c_pair_upper, geodesic_disk_contains, geodesic_distance, shortest_path,
    side_of_geodesic, EstimatorOptions, GeodesicEstimator, GeodesicPath, SimplePolygon,
};
use diskdepth::geometry::{orient, Point, Sign, Side};
use diskdepth::harness::{generate, GeneratorKind, GeneratorSpec};
use proptest::prelude::*;

fn polygon_instance(kind: GeneratorKind, n: usize, m: usize, seed: u64) -> (SimplePolygon, Vec<Point>) {
    let inst = generate(&GeneratorSpec::new(kind, n, seed).with_vertices(m)).unwrap();
    (inst.polygon.unwrap(), inst.points)
}

/// Point at fraction `t` of the path's length.
fn along(g: &GeodesicPath, t: f64) -> Point {
    let mut left = t * g.length;
    for w in g.waypoints.windows(2) {
        let d = w[0].dist(&w[1]);
        if left <= d || d == 0.0 {
            let s = if d == 0.0 { 0.0 } else { left / d };
            return Point::new(w[0].x + s * (w[1].x - w[0].x), w[0].y + s * (w[1].y - w[0].y));
        }
        left -= d;
    }
    *g.waypoints.last().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn funnel_matches_visibility_graph(seed in any::<u64>(), m in 5usize..30) {
        let (poly, pts) = polygon_instance(GeneratorKind::PolygonUniform, 6, m, seed);
        for a in &pts {
            for b in &pts {
                let g = shortest_path(&poly, a, b).unwrap();
                let v = visibility_distance(&poly, a, b).unwrap();
                prop_assert!((g.length - v).abs() <= 1e-9 * v.max(1.0), "{} vs {}", g.length, v);
                let sum: f64 = g.waypoints.windows(2).map(|w| w[0].dist(&w[1])).sum();
                prop_assert!((sum - g.length).abs() <= 1e-12 * sum.max(1.0));
                for w in g.waypoints.windows(2) {
                    prop_assert!(visible(&poly, &w[0], &w[1]));
                }
                prop_assert_eq!(g.bends.len() + 2, g.waypoints.len().max(2));
                for &v in &g.bends {
                    prop_assert!(poly.is_reflex(v));
                }
            }
        }
    }

    #[test]
    fn geodesic_triangles_are_convex(seed in any::<u64>(), m in 5usize..30) {
        let (poly, pts) = polygon_instance(GeneratorKind::PolygonUniform, 3, m, seed);
        let (a, b, c) = (pts[0], pts[1], pts[2]);
        let bound = geodesic_distance(&poly, &a, &b).unwrap().max(geodesic_distance(&poly, &a, &c).unwrap());
        let g = shortest_path(&poly, &b, &c).unwrap();
        for i in 0..=40 {
            let x = along(&g, i as f64 / 40.0);
            if let Ok(d) = geodesic_distance(&poly, &a, &x) {
                prop_assert!(d <= bound + 1e-9, "{} > {}", d, bound);
            }
        }
    }

    #[test]
    fn distance_grows_along_the_bisector(seed in any::<u64>(), m in 5usize..25) {
        let (poly, pts) = polygon_instance(GeneratorKind::PolygonUniform, 2, m, seed);
        let (p, q) = (pts[0], pts[1]);
        let f = |x: &Point| -> Option<(f64, f64)> {
            let dp = geodesic_distance(&poly, &p, x).ok()?;
            let dq = geodesic_distance(&poly, &q, x).ok()?;
            Some((dp - dq, dp))
        };
        let g = shortest_path(&poly, &p, &q).unwrap();
        let mid = along(&g, 0.5);
        let (a, b) = {
            let k = g.waypoints.iter().position(|w| geodesic_distance(&poly, &p, w).unwrap() >= g.length / 2.0).unwrap().max(1);
            (g.waypoints[k - 1], g.waypoints[k])
        };
        let len = a.dist(&b);
        let (ux, uy) = ((b.x - a.x) / len, (b.y - a.y) / len);
        let step = poly.diameter() / 400.0;
        let eps = 1e-7 * poly.diameter();
        for sign in [1.0, -1.0] {
            // march along the bisector: predict along the current normal,
            // then correct by bisection across it
            let (mut cur, mut dir) = (mid, (-uy * sign, ux * sign));
            let mut last = f(&cur).unwrap().1;
            for _ in 0..200 {
                let guess = Point::new(cur.x + step * dir.0, cur.y + step * dir.1);
                let (nx, ny) = (-dir.1, dir.0);
                let lo = Point::new(guess.x - step * nx, guess.y - step * ny);
                let hi = Point::new(guess.x + step * nx, guess.y + step * ny);
                let (Some((flo, _)), Some((fhi, _))) = (f(&lo), f(&hi)) else { break };
                if (flo < 0.0) == (fhi < 0.0) {
                    break;
                }
                let (mut l, mut h) = (lo, hi);
                for _ in 0..60 {
                    let mm = Point::new(0.5 * (l.x + h.x), 0.5 * (l.y + h.y));
                    let Some((fm, _)) = f(&mm) else { break };
                    if (fm < 0.0) == (flo < 0.0) { l = mm } else { h = mm }
                }
                let next = Point::new(0.5 * (l.x + h.x), 0.5 * (l.y + h.y));
                let Some((_, d)) = f(&next) else { break };
                prop_assert!(d >= last - eps, "distance fell from {} to {}", last, d);
                last = d;
                let dl = next.dist(&cur);
                dir = ((next.x - cur.x) / dl, (next.y - cur.y) / dl);
                cur = next;
            }
        }
    }

    #[test]
    fn convex_polygons_reduce_to_the_plane(seed in any::<u64>(), m in 3usize..20) {
        let (poly, pts) = polygon_instance(GeneratorKind::PolygonConvex, 8, m, seed);
        for a in &pts {
            for b in &pts {
                let g = shortest_path(&poly, a, b).unwrap();
                prop_assert!(g.bends.is_empty());
                prop_assert_eq!(g.length, a.dist(b));
                let r = 0.5 * a.dist(b);
                prop_assert_eq!(geodesic_disk_contains(&poly, a, r, b).unwrap(), a.dist(b) <= r);
            }
        }
        for x in &pts[2..] {
            let want = match orient(&pts[0], &pts[1], x).unwrap() {
                Sign::Positive => Side::Left,
                Sign::Negative => Side::Right,
                Sign::Zero => unreachable!("general position"),
            };
            prop_assert_eq!(side_of_geodesic(&poly, &pts[0], &pts[1], x).unwrap(), want);
        }
    }

    #[test]
    fn points_just_left_of_the_start_are_left(seed in any::<u64>(), m in 5usize..25) {
        let (poly, pts) = polygon_instance(GeneratorKind::PolygonUniform, 2, m, seed);
        let (p, q) = (pts[0], pts[1]);
        let g = shortest_path(&poly, &p, &q).unwrap();
        let next = g.waypoints[1];
        let d = p.dist(&next);
        let s = 1e-4 * d;
        let x = Point::new(p.x + s * (next.x - p.x) / d - s * (next.y - p.y) / d, p.y + s * (next.y - p.y) / d + s * (next.x - p.x) / d);
        prop_assume!(poly.contains(&x));
        prop_assert_eq!(side_of_geodesic(&poly, &p, &q, &x).unwrap(), Side::Left);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn estimates_are_sound_and_monotone(seed in any::<u64>(), m in 6usize..16) {
        let (poly, pts) = polygon_instance(GeneratorKind::PolygonUniform, 7, m, seed);
        let est = GeodesicEstimator::new(&poly, &pts, EstimatorOptions::default()).unwrap();
        let h = poly.diameter() / 16.0;
        let mut last = usize::MAX;
        for k in 0..3 {
            let e = est.estimate(0, 1, h / f64::from(1 << k)).unwrap();
            prop_assert!(e.upper_bound <= last);
            prop_assert_eq!(est.recount(e.pair, &e.witness).unwrap(), e.upper_bound);
            if let Some(t) = e.upper_bound_tilde {
                prop_assert!(t <= 5);
            }
            last = e.upper_bound;
        }
    }
}

#[test]
fn convex_estimate_matches_plane_on_a_cloud() {
    let (poly, pts) = polygon_instance(GeneratorKind::PolygonConvex, 8, 12, 11);
    let h = poly.diameter() / 100.0;
    for (p, q) in [(0, 1), (2, 5), (3, 7)] {
        let e = geodesic_c_pair_upper(&poly, &pts, p, q, h).unwrap();
        let exact = diskdepth::profile::c_pair(&pts, p, q).unwrap();
        assert!(e.upper_bound >= exact.c);
    }
}
