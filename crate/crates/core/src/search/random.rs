use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{colour_classes, threshold_k, Chromatic, SearchConfig, SearchReport, Setting};
use crate::error::{Error, Result};
use crate::geometry::{ensure_finite, Point};
use crate::profile::{c_pair, PairStats};

/// Outcome of evaluating one drawn pair.
pub(crate) struct Verdict {
    pub stats: PairStats,
    /// Value compared against the threshold; may be an estimate.
    pub value: usize,
    pub accepted: bool,
    pub certified: bool,
}

/// Draws pairs with replacement until one is accepted or the budget runs
/// out. On failure the best evaluated pair is reported unaccepted.
pub(crate) fn draw_loop(
    points: &[Point],
    cfg: &SearchConfig,
    threshold: usize,
    mut eval: impl FnMut(usize, usize) -> Result<Verdict>,
) -> Result<SearchReport> {
    let n = points.len();
    let budget = cfg.budget(n);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let classes = match cfg.chromatic {
        Chromatic::Mono => None,
        Chromatic::Bichromatic => Some(colour_classes(points)?),
    };
    let mut best: Option<(usize, (usize, usize), Verdict)> = None;
    for attempt in 1..=budget {
        let (p, q) = match &classes {
            None => {
                let p = rng.gen_range(0..n);
                let mut q = rng.gen_range(0..n - 1);
                if q >= p {
                    q += 1;
                }
                (p, q)
            }
            Some((red, blue)) => (red[rng.gen_range(0..red.len())], blue[rng.gen_range(0..blue.len())]),
        };
        let pair = (p.min(q), p.max(q));
        let v = eval(pair.0, pair.1)?;
        if v.accepted {
            return Ok(SearchReport {
                pair,
                stats: v.stats,
                attempts: attempt,
                threshold_used: threshold,
                accepted: true,
                certified: v.certified,
            });
        }
        if best.as_ref().is_none_or(|b| v.value > b.0) {
            best = Some((v.value, pair, v));
        }
    }
    let (_, pair, v) = best.expect("budget is at least one draw");
    Ok(SearchReport {
        pair,
        stats: v.stats,
        attempts: budget,
        threshold_used: threshold,
        accepted: false,
        certified: false,
    })
}

/// Randomized search in the plane: draws uniform pairs (red-blue pairs when
/// bichromatic) and evaluates each exactly with [`c_pair`].
pub fn random_pair_search(points: &[Point], cfg: &SearchConfig) -> Result<SearchReport> {
    cfg.validate()?;
    if cfg.setting != Setting::Plane {
        return Err(Error::invalid(
            "polygon setting needs a polygon; use the geodesic search",
        ));
    }
    ensure_finite(points)?;
    let n = points.len();
    let threshold = threshold_k(n, cfg)?;
    if cfg.chromatic == Chromatic::Bichromatic {
        colour_classes(points)?;
    }
    draw_loop(points, cfg, threshold, |p, q| {
        let stats = c_pair(points, p, q)?;
        let value = stats.get(cfg.target);
        Ok(Verdict {
            stats,
            value,
            accepted: value >= threshold,
            certified: value >= threshold,
        })
    })
}
