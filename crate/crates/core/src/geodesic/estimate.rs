use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::path::SourceTree;
use super::SimplePolygon;
use crate::error::{Error, Result};
use crate::geometry::{ensure_finite, Point};
use crate::profile::{c_pair, check_pair, PairStats, Target};
use crate::search::{draw_loop, threshold_k, Chromatic, SearchConfig, SearchReport, Setting, Verdict};

/// A concrete geodesic disk: everything within `radius` of `center`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessDisk {
    pub center: Point,
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicEstimate {
    pub pair: (usize, usize),
    /// Fewest other points found in a geodesic disk containing the pair.
    /// Never below the true depth.
    pub upper_bound: usize,
    /// Same for the two-sided depth, from disks centered on the sampled
    /// bisector; `None` when the grid never straddled the bisector.
    pub upper_bound_tilde: Option<usize>,
    pub resolution: f64,
    pub samples_evaluated: usize,
    pub witness: WitnessDisk,
    pub witness_tilde: Option<WitnessDisk>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimatorOptions {
    /// Rounds of local lattice refinement per grid level.
    pub refine_rounds: usize,
    /// Centers refined around per round.
    pub refine_centers: usize,
}

impl Default for EstimatorOptions {
    fn default() -> Self {
        EstimatorOptions {
            refine_rounds: 3,
            refine_centers: 8,
        }
    }
}

const BISECTION_STEPS: usize = 40;

struct Level {
    spacing: f64,
    nx: usize,
    ny: usize,
    /// Grid slot to center index, for slots inside the polygon.
    slot: Vec<Option<usize>>,
    centers: Vec<Point>,
    /// `dist[c * n + x]` = geodesic distance from center `c` to point `x`.
    dist: Vec<f64>,
}

/// Evaluates pairs of one point set in one polygon, caching the distance
/// tables of each grid level across pairs.
pub struct GeodesicEstimator<'a> {
    poly: &'a SimplePolygon,
    points: &'a [Point],
    locs: Vec<usize>,
    tol: f64,
    diameter: f64,
    opts: EstimatorOptions,
    levels: Mutex<HashMap<u64, Arc<Level>>>,
}

/// Distances closer than this to a radius are treated as ambiguous.
pub fn count_tolerance(poly: &SimplePolygon) -> f64 {
    1e-9 * (1.0 + poly.diameter())
}

struct Best {
    count: usize,
    witness: Option<WitnessDisk>,
}

impl Best {
    fn new() -> Self {
        Best {
            count: usize::MAX,
            witness: None,
        }
    }

    fn offer(&mut self, count: usize, center: Point, radius: f64) {
        if count < self.count {
            self.count = count;
            self.witness = Some(WitnessDisk { center, radius });
        }
    }
}

impl<'a> GeodesicEstimator<'a> {
    pub fn new(poly: &'a SimplePolygon, points: &'a [Point], opts: EstimatorOptions) -> Result<Self> {
        ensure_finite(points)?;
        let locs = points
            .iter()
            .enumerate()
            .map(|(i, x)| poly.locate_or_err(x, &format!("point {i}")))
            .collect::<Result<Vec<_>>>()?;
        Ok(GeodesicEstimator {
            poly,
            points,
            locs,
            tol: count_tolerance(poly),
            diameter: poly.diameter(),
            opts,
            levels: Mutex::new(HashMap::new()),
        })
    }

    pub fn polygon(&self) -> &SimplePolygon {
        self.poly
    }

    pub fn points(&self) -> &[Point] {
        self.points
    }

    fn distances_from(&self, o: &Point, tri: usize) -> Vec<f64> {
        let tree = SourceTree::new(self.poly, *o, tri);
        self.points
            .iter()
            .zip(&self.locs)
            .map(|(x, &t)| tree.distance(x, t))
            .collect()
    }

    fn level(&self, spacing: f64) -> Arc<Level> {
        if let Some(l) = self.levels.lock().expect("cache lock").get(&spacing.to_bits()) {
            return Arc::clone(l);
        }
        let (lo, hi) = self.poly.bbox();
        let nx = ((hi.x - lo.x) / spacing).floor() as usize + 1;
        let ny = ((hi.y - lo.y) / spacing).floor() as usize + 1;
        let located: Vec<Option<(Point, usize)>> = (0..nx * ny)
            .into_par_iter()
            .map(|s| {
                let c = Point::new(lo.x + (s % nx) as f64 * spacing, lo.y + (s / nx) as f64 * spacing);
                self.poly.locate(&c).map(|t| (c, t))
            })
            .collect();
        let mut slot = vec![None; nx * ny];
        let mut inside = Vec::new();
        for (s, l) in located.iter().enumerate() {
            if let Some(ct) = l {
                slot[s] = Some(inside.len());
                inside.push(*ct);
            }
        }
        let dist: Vec<f64> = inside
            .par_iter()
            .flat_map_iter(|(c, t)| self.distances_from(c, *t))
            .collect();
        let level = Arc::new(Level {
            spacing,
            nx,
            ny,
            slot,
            centers: inside.iter().map(|ct| ct.0).collect(),
            dist,
        });
        self.levels
            .lock()
            .expect("cache lock")
            .entry(spacing.to_bits())
            .or_insert(level)
            .clone()
    }

    fn count_c(&self, d: &[f64], p: usize, q: usize) -> (usize, f64) {
        let rho = d[p].max(d[q]);
        let count = d
            .iter()
            .enumerate()
            .filter(|&(x, &dx)| x != p && x != q && dx <= rho + self.tol)
            .count();
        (count, rho)
    }

    /// Conservative two-sided count for a disk (nearly) through both points.
    fn count_tilde(&self, d: &[f64], p: usize, q: usize) -> (usize, f64) {
        let rho = d[p].max(d[q]);
        let (mut lo, mut hi) = (0, 0);
        for (x, &dx) in d.iter().enumerate() {
            if x == p || x == q {
                continue;
            }
            if dx < rho - self.tol {
                lo += 1;
            }
            if dx <= rho + self.tol {
                hi += 1;
            }
        }
        let others = self.points.len() - 2;
        (hi.min(others - lo), rho)
    }

    /// Point where `d(., p) = d(., q)` between two centers of opposite sign.
    fn bisect(&self, mut a: Point, mut b: Point, fa_neg: bool, p: usize, q: usize) -> Option<(Point, usize)> {
        let diff = |o: &Point, t: usize| {
            let tree = SourceTree::new(self.poly, *o, t);
            tree.distance(&self.points[p], self.locs[p]) - tree.distance(&self.points[q], self.locs[q])
        };
        let mut tri = self.poly.locate(&a)?;
        for _ in 0..BISECTION_STEPS {
            let m = Point::new(0.5 * (a.x + b.x), 0.5 * (a.y + b.y));
            let t = self.poly.locate(&m)?;
            if (diff(&m, t) < 0.0) == fa_neg {
                a = m;
                tri = t;
            } else {
                b = m;
            }
        }
        Some((a, tri))
    }

    fn scan_level(
        &self,
        level: &Level,
        p: usize,
        q: usize,
        best: &mut Best,
        best_tilde: &mut Best,
    ) -> usize {
        let n = self.points.len();
        let mut evaluated = level.centers.len();
        let mut grid: Vec<(usize, usize)> = Vec::with_capacity(level.centers.len());
        for (c, center) in level.centers.iter().enumerate() {
            let (count, rho) = self.count_c(&level.dist[c * n..(c + 1) * n], p, q);
            best.offer(count, *center, rho);
            grid.push((count, c));
        }

        // local refinement around the lightest centers
        grid.sort_unstable();
        let mut seeds: Vec<Point> = grid
            .iter()
            .take(self.opts.refine_centers)
            .map(|&(_, c)| level.centers[c])
            .collect();
        for round in 1..=self.opts.refine_rounds {
            let step = level.spacing / (1u64 << round) as f64;
            let mut found: Vec<(usize, usize, Point)> = Vec::new();
            for s in &seeds {
                for i in -2i32..=2 {
                    for j in -2i32..=2 {
                        let o = Point::new(s.x + i as f64 * step, s.y + j as f64 * step);
                        let Some(t) = self.poly.locate(&o) else { continue };
                        let d = self.distances_from(&o, t);
                        let (count, rho) = self.count_c(&d, p, q);
                        best.offer(count, o, rho);
                        found.push((count, found.len(), o));
                    }
                }
            }
            evaluated += found.len();
            found.sort_by_key(|a| (a.0, a.1));
            seeds = found.iter().take(self.opts.refine_centers).map(|f| f.2).collect();
        }

        // bisector crossings on grid edges
        let sign = |c: usize| level.dist[c * n + p] - level.dist[c * n + q] < 0.0;
        for iy in 0..level.ny {
            for ix in 0..level.nx {
                let Some(a) = level.slot[iy * level.nx + ix] else { continue };
                let right = (ix + 1 < level.nx).then(|| level.slot[iy * level.nx + ix + 1]).flatten();
                let up = (iy + 1 < level.ny).then(|| level.slot[(iy + 1) * level.nx + ix]).flatten();
                for b in [right, up].into_iter().flatten() {
                    if sign(a) == sign(b) {
                        continue;
                    }
                    let Some((o, t)) = self.bisect(level.centers[a], level.centers[b], sign(a), p, q) else {
                        continue;
                    };
                    let d = self.distances_from(&o, t);
                    let (count, rho) = self.count_c(&d, p, q);
                    best.offer(count, o, rho);
                    let (tilde, rho) = self.count_tilde(&d, p, q);
                    best_tilde.offer(tilde, o, rho);
                    evaluated += 1;
                }
            }
        }
        evaluated
    }

    /// Grid spacings used at resolution `h`: `h * 2^j` up to a quarter of
    /// the polygon's diameter. Halving `h` keeps every spacing and adds one.
    fn spacings(&self, h: f64) -> Vec<f64> {
        let mut s = vec![h];
        let mut cur = h * 2.0;
        while cur <= self.diameter / 4.0 {
            s.push(cur);
            cur *= 2.0;
        }
        s
    }

    pub fn estimate(&self, p: usize, q: usize, h: f64) -> Result<GeodesicEstimate> {
        check_pair(self.points, p, q)?;
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::invalid(format!("resolution must be positive, got {h}")));
        }
        let (lo, hi) = self.poly.bbox();
        let cells = ((hi.x - lo.x) / h + 1.0) * ((hi.y - lo.y) / h + 1.0);
        if cells > 5e7 {
            return Err(Error::invalid(format!("resolution {h} needs {cells:.0} grid cells")));
        }
        let mut best = Best::new();
        let mut best_tilde = Best::new();
        let mut evaluated = 0;
        for s in self.spacings(h) {
            let level = self.level(s);
            evaluated += self.scan_level(&level, p, q, &mut best, &mut best_tilde);
        }
        let witness = match best.witness {
            Some(w) => w,
            None => {
                // no grid point landed inside; fall back to the pair's own midpoint test
                let o = self.points[p];
                let d = self.distances_from(&o, self.locs[p]);
                let (count, rho) = self.count_c(&d, p, q);
                best.offer(count, o, rho);
                evaluated += 1;
                best.witness.expect("just offered")
            }
        };
        Ok(GeodesicEstimate {
            pair: (p, q),
            upper_bound: best.count,
            upper_bound_tilde: best_tilde.witness.map(|_| best_tilde.count),
            resolution: h,
            samples_evaluated: evaluated,
            witness,
            witness_tilde: best_tilde.witness,
        })
    }

    /// Points other than the pair within the witness radius, recounted by
    /// fresh path queries with the estimator's tolerance.
    pub fn recount(&self, pair: (usize, usize), w: &WitnessDisk) -> Result<usize> {
        let t = self.poly.locate_or_err(&w.center, "witness center")?;
        let d = self.distances_from(&w.center, t);
        Ok(d
            .iter()
            .enumerate()
            .filter(|&(x, &dx)| x != pair.0 && x != pair.1 && dx <= w.radius + self.tol)
            .count())
    }
}

/// Upper bound on the geodesic depth of `(p, q)` from disks centered on a
/// grid of spacing `h` (and its coarser dyadic levels), local refinements,
/// and bisector crossings. Refining `h` never raises the bound.
pub fn geodesic_c_pair_upper(
    poly: &SimplePolygon,
    points: &[Point],
    p: usize,
    q: usize,
    h: f64,
) -> Result<GeodesicEstimate> {
    GeodesicEstimator::new(poly, points, EstimatorOptions::default())?.estimate(p, q, h)
}

fn estimate_value(e: &GeodesicEstimate, target: Target) -> usize {
    match target {
        Target::C => e.upper_bound,
        Target::CTilde => e.upper_bound_tilde.unwrap_or(0),
    }
}

/// Randomized search inside a polygon.
///
/// A drawn pair is accepted when its estimate at resolution `h` reaches the
/// threshold and the estimate at `h / 4` still does. In a convex polygon the
/// exact planar value is a lower bound on the geodesic one, so the pair is
/// certified when that value reaches the threshold and `stats` holds it;
/// elsewhere `stats` holds the refined estimates and nothing is certified.
pub fn geodesic_random_pair_search(
    estimator: &GeodesicEstimator,
    cfg: &SearchConfig,
    h: f64,
) -> Result<SearchReport> {
    cfg.validate()?;
    if cfg.setting != Setting::Polygon {
        return Err(Error::invalid("geodesic search needs the polygon setting"));
    }
    let points = estimator.points();
    let n = points.len();
    let threshold = threshold_k(n, cfg)?;
    if cfg.chromatic == Chromatic::Bichromatic {
        crate::search::colour_classes(points)?;
    }
    super::check_geodesic_position(estimator.polygon(), points)?;
    let convex = estimator.polygon().is_convex();
    draw_loop(points, cfg, threshold, |p, q| {
        let coarse = estimator.estimate(p, q, h)?;
        let mut value = estimate_value(&coarse, cfg.target);
        let mut est = PairStats {
            c: coarse.upper_bound,
            c_tilde: coarse.upper_bound_tilde.unwrap_or(0),
        };
        let mut accepted = false;
        if value >= threshold {
            let fine = estimator.estimate(p, q, h / 4.0)?;
            value = estimate_value(&fine, cfg.target);
            est = PairStats {
                c: fine.upper_bound,
                c_tilde: fine.upper_bound_tilde.unwrap_or(0),
            };
            accepted = value >= threshold;
        }
        let (stats, certified) = if convex {
            let exact = c_pair(points, p, q)?;
            (exact, accepted && exact.get(cfg.target) >= threshold)
        } else {
            (est, false)
        };
        Ok(Verdict {
            stats,
            value,
            accepted,
            certified,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[(f64, f64)]) -> SimplePolygon {
        SimplePolygon::new(c.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    fn s5_box() -> (SimplePolygon, Vec<Point>) {
        let pts = vec![
            Point::new(0., 0.),
            Point::new(4., 0.),
            Point::new(2., 1.),
            Point::new(2., -1.),
            Point::new(2., 3.),
        ];
        (poly(&[(-3., -4.), (7., -4.), (7., 6.), (-3., 6.)]), pts)
    }

    #[test]
    fn convex_box_matches_plane_value() {
        let (p, pts) = s5_box();
        let e = geodesic_c_pair_upper(&p, &pts, 0, 1, 0.05).unwrap();
        assert_eq!(e.upper_bound, 1);
        assert_eq!(e.upper_bound_tilde, Some(0));
        let est = GeodesicEstimator::new(&p, &pts, EstimatorOptions::default()).unwrap();
        assert_eq!(est.recount(e.pair, &e.witness).unwrap(), e.upper_bound);
    }

    #[test]
    fn two_points() {
        let (p, pts) = s5_box();
        let e = geodesic_c_pair_upper(&p, &pts[..2], 0, 1, 0.5).unwrap();
        assert_eq!(e.upper_bound, 0);
    }

    #[test]
    fn refinement_is_monotone() {
        let (p, pts) = s5_box();
        let est = GeodesicEstimator::new(&p, &pts, EstimatorOptions::default()).unwrap();
        for (a, b) in [(0, 2), (2, 4), (1, 3)] {
            let mut last = usize::MAX;
            for h in [1.0, 0.5, 0.25] {
                let e = est.estimate(a, b, h).unwrap();
                assert!(e.upper_bound <= last);
                last = e.upper_bound;
            }
        }
    }

    #[test]
    fn notch_pair_has_an_empty_disk() {
        // u and v sit on either side of a deep thin notch; the rest is far away
        let p = poly(&[
            (0., 0.),
            (10., 0.),
            (10., 1.),
            (5.1, 1.),
            (5.1, 9.),
            (4.9, 9.),
            (4.9, 1.),
            (0., 1.),
        ]);
        let _ = p;
        let q = poly(&[
            (0., 0.),
            (4.9, 0.),
            (4.9, 8.),
            (5.1, 8.),
            (5.1, 0.),
            (10., 0.),
            (10., 10.),
            (0., 10.),
        ]);
        let pts = vec![
            Point::new(4.8, 4.0),
            Point::new(5.2, 4.0),
            Point::new(0.5, 9.5),
            Point::new(9.5, 9.5),
            Point::new(0.5, 0.5),
            Point::new(9.5, 0.5),
        ];
        let e = geodesic_c_pair_upper(&q, &pts, 0, 1, 0.05).unwrap();
        assert_eq!(e.upper_bound, 0);
    }

    #[test]
    fn search_in_a_convex_polygon_certifies() {
        let (p, pts) = s5_box();
        let pts: Vec<Point> = pts
            .into_iter()
            .chain([Point::new(0.5, 2.2), Point::new(3.3, -2.1), Point::new(-1.2, 0.7)])
            .collect();
        let mut pts = pts;
        pts[4] = Point::new(2.1, 3.);
        let est = GeodesicEstimator::new(&p, &pts, EstimatorOptions::default()).unwrap();
        let cfg = SearchConfig {
            setting: Setting::Polygon,
            target: Target::C,
            seed: 3,
            ..SearchConfig::default()
        };
        let r = geodesic_random_pair_search(&est, &cfg, 0.5).unwrap();
        if r.certified {
            assert!(r.stats.c >= r.threshold_used);
        }
        let plane = SearchConfig {
            setting: Setting::Plane,
            ..cfg
        };
        assert!(geodesic_random_pair_search(&est, &plane, 0.5).is_err());
    }
}
