//! The invariant suite behind `diskdepth verify`: every module checked
//! against its oracle or structural property on small seeded instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::generate::{generate, GeneratorKind, GeneratorSpec};
use super::io::{points_from_json, points_to_json};
use crate::convex::{brute_force_farthest_triples, convex_pair, farthest_voronoi, ConvexChain};
use crate::diametral::{diametral_count, diametral_pair};
use crate::error::Result;
use crate::geodesic::visibility::visibility_distance;
use crate::geodesic::{geodesic_distance, EstimatorOptions, GeodesicEstimator};
use crate::geometry::{incircle, Sign};
use crate::profile::{brute_force_c_pair, c_pair, weight_profile, Target, WeightProfile};
use crate::search::{
    all_pairs_stats, decide_k, existence_bound, guaranteed_pair, maximize, Chromatic,
};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Unit steps, `weights[0] + weights[last] = n - 2`, and every value
/// between the two end weights present.
pub fn profile_structure(w: &WeightProfile) -> std::result::Result<(), String> {
    let ws = &w.weights;
    let n = w.n();
    if let Some(i) = ws.windows(2).position(|s| s[0].abs_diff(s[1]) != 1) {
        return Err(format!("step {i} of {:?} is not +-1", w.pair));
    }
    let (first, last) = (ws[0], ws[ws.len() - 1]);
    if first + last != n - 2 {
        return Err(format!("{:?}: end weights {first} + {last} != {}", w.pair, n - 2));
    }
    if let Some(k) = (first.min(last)..=first.max(last)).find(|k| !ws.contains(k)) {
        return Err(format!("{:?}: weight {k} missing", w.pair));
    }
    Ok(())
}

fn check(name: &'static str, f: impl FnOnce() -> Result<std::result::Result<String, String>>) -> Check {
    match f() {
        Ok(Ok(detail)) => Check {
            name,
            passed: true,
            detail,
        },
        Ok(Err(detail)) => Check {
            name,
            passed: false,
            detail,
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

pub fn run_verify(seed: u64) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sub = move || rng.gen::<u64>();
    let kinds = [
        GeneratorKind::UniformSquare,
        GeneratorKind::ConvexChain,
        GeneratorKind::TwoCluster,
    ];
    let seeds: Vec<u64> = (0..12).map(|_| sub()).collect();
    let mut checks = Vec::new();

    checks.push(check("sweep matches oracle", || {
        let mut pairs = 0;
        for (i, &s) in seeds.iter().enumerate() {
            let n = 6 + 2 * (i % 6);
            let pts = generate(&GeneratorSpec::new(kinds[i % 3], n, s))?.points;
            for p in 0..n {
                for q in p + 1..n {
                    let (a, b) = (c_pair(&pts, p, q)?, brute_force_c_pair(&pts, p, q)?);
                    if a != b {
                        return Ok(Err(format!("pair ({p}, {q}) seed {s}: {a:?} vs {b:?}")));
                    }
                    pairs += 1;
                }
            }
        }
        Ok(Ok(format!("{pairs} pairs")))
    }));

    checks.push(check("profile structure", || {
        let mut count = 0;
        for (i, &s) in seeds.iter().enumerate() {
            let pts = generate(&GeneratorSpec::new(kinds[i % 3], 14, s))?.points;
            for p in 0..pts.len() {
                for q in 0..pts.len() {
                    if p != q {
                        if let Err(e) = profile_structure(&weight_profile(&pts, p, q)?) {
                            return Ok(Err(e));
                        }
                        count += 1;
                    }
                }
            }
        }
        Ok(Ok(format!("{count} profiles")))
    }));

    checks.push(check("existence bound and decision consistency", || {
        for &s in &seeds[..4] {
            let pts = generate(&GeneratorSpec::new(GeneratorKind::UniformSquare, 20, s).bichromatic())?.points;
            for chromatic in [Chromatic::Mono, Chromatic::Bichromatic] {
                for target in [Target::C, Target::CTilde] {
                    let best = maximize(&pts, target, chromatic)?.stats.get(target);
                    let k_max = (0..=pts.len() - 2)
                        .rev()
                        .find_map(|k| match decide_k(&pts, k, target, chromatic) {
                            Ok(Some(_)) => Some(Ok(k)),
                            Ok(None) => None,
                            Err(e) => Some(Err(e)),
                        })
                        .transpose()?;
                    if k_max != Some(best) {
                        return Ok(Err(format!("seed {s}: decide gives {k_max:?}, maximize {best}")));
                    }
                }
            }
            let best = maximize(&pts, Target::CTilde, Chromatic::Mono)?.stats.c_tilde;
            if best < existence_bound(pts.len(), Chromatic::Mono) {
                return Ok(Err(format!("seed {s}: maximum {best} below the existence bound")));
            }
            let g = guaranteed_pair(&pts, Chromatic::Bichromatic)?;
            let m = all_pairs_stats(&pts)?;
            if m.get(g.pair.0, g.pair.1).is_none_or(|s| s.c_tilde < g.threshold_used) {
                return Ok(Err(format!("seed {s}: guaranteed pair below its threshold")));
            }
        }
        Ok(Ok("4 instances".into()))
    }));

    checks.push(check("farthest Voronoi and convex pair", || {
        for (i, &s) in seeds.iter().enumerate() {
            let kind = if i % 2 == 0 {
                GeneratorKind::ConvexChain
            } else {
                GeneratorKind::RegularNgon
            };
            let n = 9 + 3 * i;
            let chain = ConvexChain::new(generate(&GeneratorSpec::new(kind, n, s))?.points)?;
            let f = farthest_voronoi(&chain)?;
            let mut got: Vec<_> = f.vertices.iter().map(|v| v.triple).collect();
            got.sort_unstable();
            if got != brute_force_farthest_triples(&chain) {
                return Ok(Err(format!("{kind:?} n={n}: diagram differs from brute force")));
            }
            let pts = chain.points();
            for v in &f.vertices {
                let (a, b, c) = v.triple;
                for x in (0..n).filter(|&x| x != a && x != b && x != c) {
                    if incircle(&pts[a], &pts[b], &pts[c], &pts[x])? != Sign::Positive {
                        return Ok(Err(format!("vertex {:?} misses point {x}", v.triple)));
                    }
                }
            }
            let r = convex_pair(&chain)?;
            if r.report.stats.c < r.arc_bound {
                return Ok(Err(format!("n={n}: depth below arc bound")));
            }
        }
        Ok(Ok(format!("{} chains", seeds.len())))
    }));

    checks.push(check("diametral pair", || {
        for &s in &seeds {
            let pts = generate(&GeneratorSpec::new(GeneratorKind::UniformSquare, 30, s))?.points;
            let d = diametral_pair(&pts, s)?;
            let recount = diametral_count(&pts, d.pair.0, d.pair.1);
            if recount != d.count || 3 * d.count < pts.len() {
                return Ok(Err(format!("seed {s}: count {} recount {recount}", d.count)));
            }
        }
        Ok(Ok(format!("{} instances", seeds.len())))
    }));

    checks.push(check("geodesic paths and estimates", || {
        for &s in &seeds[..4] {
            let inst = generate(&GeneratorSpec::new(GeneratorKind::PolygonUniform, 8, s).with_vertices(12))?;
            let poly = inst.polygon.as_ref().expect("polygon kind");
            let pts = &inst.points;
            for a in pts {
                for b in pts {
                    let (g, v) = (geodesic_distance(poly, a, b)?, visibility_distance(poly, a, b)?);
                    if (g - v).abs() > 1e-9 * v.max(1.0) {
                        return Ok(Err(format!("seed {s}: funnel {g} vs visibility {v}")));
                    }
                }
            }
            let est = GeodesicEstimator::new(poly, pts, EstimatorOptions::default())?;
            let h = poly.diameter() / 20.0;
            let (mut coarse, fine) = (est.estimate(0, 1, h)?, est.estimate(0, 1, h / 2.0)?);
            if fine.upper_bound > coarse.upper_bound {
                return Ok(Err(format!("seed {s}: refinement raised the bound")));
            }
            coarse.upper_bound = est.recount(coarse.pair, &coarse.witness)?;
            if coarse.upper_bound != est.estimate(0, 1, h)?.upper_bound {
                return Ok(Err(format!("seed {s}: witness recount differs")));
            }
        }
        Ok(Ok("4 polygons".into()))
    }));

    checks.push(check("points file round trip", || {
        let pts = generate(&GeneratorSpec::new(GeneratorKind::UniformSquare, 50, seeds[0]).bichromatic())?.points;
        let text = points_to_json(&pts);
        Ok(if points_to_json(&points_from_json(&text)?) == text {
            Ok(format!("{} bytes", text.len()))
        } else {
            Err("serialization is not canonical".into())
        })
    }));

    VerifyReport { seed, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let r = run_verify(1);
        for c in &r.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
