use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::threshold::existence_root;
use super::{admissible_pairs, existence_bound, Chromatic, SearchReport};
use crate::error::{Error, Result};
use crate::geometry::{ensure_finite, Point};
use crate::profile::{c_pair, check_pair, has_extreme_segment, PairStats, Target};

/// Stats of every pair, stored as the strict upper triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairMatrix {
    pub n: usize,
    entries: Vec<PairStats>,
}

impl PairMatrix {
    fn index(n: usize, p: usize, q: usize) -> usize {
        // rows 0..p hold (n-1) + (n-2) + ... + (n-p) entries
        p * (2 * n - p - 1) / 2 + (q - p - 1)
    }

    /// Symmetric lookup; `None` on the diagonal or out of range.
    pub fn get(&self, p: usize, q: usize) -> Option<PairStats> {
        if p == q || p >= self.n || q >= self.n {
            return None;
        }
        let (a, b) = (p.min(q), p.max(q));
        Some(self.entries[Self::index(self.n, a, b)])
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), PairStats)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |p| (p + 1..n).map(move |q| (p, q)))
            .zip(self.entries.iter().copied())
    }
}

/// Runs the sweep for every pair, spread over the rayon pool.
pub fn all_pairs_stats(points: &[Point]) -> Result<PairMatrix> {
    let n = points.len();
    if n < 2 {
        return Err(Error::invalid(format!("need at least two points, got {n}")));
    }
    ensure_finite(points)?;
    let pairs = admissible_pairs(points, Chromatic::Mono)?;
    let entries = pairs
        .par_iter()
        .map(|&(p, q)| c_pair(points, p, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(PairMatrix { n, entries })
}

/// Deepest admissible pair for the target; ties go to the lexicographically
/// smallest pair. `threshold_used` is the existence bound for `n`.
pub fn maximize(points: &[Point], target: Target, chromatic: Chromatic) -> Result<SearchReport> {
    let n = points.len();
    if n < 3 {
        return Err(Error::invalid(format!("need at least three points, got {n}")));
    }
    ensure_finite(points)?;
    let pairs = admissible_pairs(points, chromatic)?;
    let stats = pairs
        .par_iter()
        .map(|&(p, q)| c_pair(points, p, q))
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for i in 1..pairs.len() {
        if stats[i].get(target) > stats[best].get(target) {
            best = i;
        }
    }
    let threshold = existence_bound(n, chromatic);
    let value = stats[best].get(target);
    Ok(SearchReport {
        pair: pairs[best],
        stats: stats[best],
        attempts: pairs.len(),
        threshold_used: threshold,
        accepted: value >= threshold,
        certified: value >= threshold,
    })
}

/// Set-only bit table shared across workers.
struct MarkTable {
    words: Vec<AtomicU64>,
}

impl MarkTable {
    fn new(len: usize) -> Self {
        MarkTable {
            words: (0..len.div_ceil(64)).map(|_| AtomicU64::new(0)).collect(),
        }
    }

    fn mark(&self, i: usize) {
        self.words[i / 64].fetch_or(1 << (i % 64), Ordering::Relaxed);
    }

    fn is_marked(&self, i: usize) -> bool {
        self.words[i / 64].load(Ordering::Relaxed) & (1 << (i % 64)) != 0
    }
}

/// First admissible pair (lexicographic) whose target value is at least `k`.
///
/// A pair is marked as soon as its bisector shows a segment of weight at
/// most `k - 1`, or, for the two-sided target, at least `n - k - 1`; these
/// are exactly the pairs falling short of `k`. Unmarked pairs are returned.
pub fn decide_k(
    points: &[Point],
    k: usize,
    target: Target,
    chromatic: Chromatic,
) -> Result<Option<(usize, usize)>> {
    let n = points.len();
    if n < 2 {
        return Err(Error::invalid(format!("need at least two points, got {n}")));
    }
    if k > n - 2 {
        return Err(Error::invalid(format!("k must lie in [0, {}], got {k}", n - 2)));
    }
    ensure_finite(points)?;
    let pairs = admissible_pairs(points, chromatic)?;
    if k == 0 {
        return Ok(pairs.first().copied());
    }
    let low = Some(k - 1);
    let high = match target {
        Target::C => None,
        Target::CTilde => Some(n - k - 1),
    };
    let marks = MarkTable::new(pairs.len());
    pairs.par_iter().enumerate().try_for_each(|(i, &(p, q))| {
        check_pair(points, p, q)?;
        if has_extreme_segment(points, p, q, low, high)? {
            marks.mark(i);
        }
        Ok::<(), Error>(())
    })?;
    Ok((0..pairs.len()).find(|&i| !marks.is_marked(i)).map(|i| pairs[i]))
}

/// A pair meeting the existence bound for the two-sided target.
///
/// Asks [`decide_k`] for `ceil` of the bound (`ceil(n / 6.8)` with two
/// colours). If no pair reaches it, retries with the floor of the exact
/// bound, which is all the existence argument promises for small `n`.
pub fn guaranteed_pair(points: &[Point], chromatic: Chromatic) -> Result<SearchReport> {
    let n = points.len();
    if n < 3 {
        return Err(Error::invalid(format!("need at least three points, got {n}")));
    }
    let target = Target::CTilde;
    let cap = (n - 2) / 2;
    let primary = existence_bound(n, chromatic).min(cap);
    let fallback = match chromatic {
        Chromatic::Mono => existence_root(n).floor().map_or(0, |k| k.max(0) as usize),
        Chromatic::Bichromatic => 5 * n / 34,
    }
    .min(primary);
    let mut attempts = 0;
    for k in [primary, fallback] {
        attempts += 1;
        if let Some((p, q)) = decide_k(points, k, target, chromatic)? {
            let stats = c_pair(points, p, q)?;
            if stats.c_tilde < k {
                return Err(Error::Consistency(format!(
                    "decision returned ({p}, {q}) with value {} below {k}",
                    stats.c_tilde
                )));
            }
            return Ok(SearchReport {
                pair: (p, q),
                stats,
                attempts,
                threshold_used: k,
                accepted: true,
                certified: true,
            });
        }
        if k == fallback {
            break;
        }
    }
    Err(Error::Consistency(format!(
        "no pair reaches the guaranteed depth {fallback} among {n} points"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Colour;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cloud(n: usize, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| Point::new(rng.gen::<f64>(), rng.gen::<f64>()))
            .collect()
    }

    // the five-point example with c nudged off the line through a and b
    fn s5() -> Vec<Point> {
        vec![
            Point::new(0., 0.),
            Point::new(4., 0.),
            Point::new(2., 1.),
            Point::new(2., -1.),
            Point::new(2.1, 3.),
        ]
    }

    #[test]
    fn matrix_indexing() {
        let pts = cloud(7, 2);
        let m = all_pairs_stats(&pts).unwrap();
        for ((p, q), s) in m.iter() {
            assert_eq!(m.get(p, q), Some(s));
            assert_eq!(m.get(q, p), Some(s));
            assert_eq!(s, c_pair(&pts, p, q).unwrap());
        }
        assert_eq!(m.get(3, 3), None);
        assert_eq!(m.iter().count(), 21);
        assert_eq!(all_pairs_stats(&s5()).unwrap().get(0, 1), Some(PairStats { c: 1, c_tilde: 0 }));
    }

    #[test]
    fn three_points() {
        let pts = cloud(3, 4);
        let m = all_pairs_stats(&pts).unwrap();
        assert!(m.iter().all(|(_, s)| s == PairStats::default()));
        let r = maximize(&pts, Target::C, Chromatic::Mono).unwrap();
        assert_eq!(r.pair, (0, 1));
        assert_eq!(r.stats.c, 0);
    }

    #[test]
    fn decide_matches_maximize() {
        for seed in 0..5 {
            let pts = cloud(25, seed);
            for target in [Target::C, Target::CTilde] {
                let best = maximize(&pts, target, Chromatic::Mono).unwrap().stats.get(target);
                assert!(decide_k(&pts, best, target, Chromatic::Mono).unwrap().is_some());
                if best < pts.len() - 2 {
                    assert!(decide_k(&pts, best + 1, target, Chromatic::Mono).unwrap().is_none());
                }
            }
        }
    }

    #[test]
    fn decide_examples() {
        assert!(decide_k(&s5(), 1, Target::C, Chromatic::Mono).unwrap().is_some());
        assert_eq!(decide_k(&s5(), 0, Target::C, Chromatic::Mono).unwrap(), Some((0, 1)));
        assert!(decide_k(&s5(), 4, Target::C, Chromatic::Mono).is_err());
    }

    #[test]
    fn guaranteed_pairs() {
        let pts = cloud(40, 8);
        let r = guaranteed_pair(&pts, Chromatic::Mono).unwrap();
        assert!(r.stats.c_tilde >= existence_bound(40, Chromatic::Mono));
        let mut pts = cloud(34, 9);
        for (i, p) in pts.iter_mut().enumerate() {
            p.colour = Some(if i % 2 == 0 { Colour::Red } else { Colour::Blue });
        }
        let r = guaranteed_pair(&pts, Chromatic::Bichromatic).unwrap();
        assert_ne!(pts[r.pair.0].colour, pts[r.pair.1].colour);
        assert!(r.stats.c_tilde >= 5);
        let r = guaranteed_pair(&s5(), Chromatic::Mono).unwrap();
        assert!(r.certified);
    }

    #[test]
    fn bichromatic_never_beats_mono() {
        let mut pts = cloud(20, 12);
        for (i, p) in pts.iter_mut().enumerate() {
            p.colour = Some(if i < 10 { Colour::Red } else { Colour::Blue });
        }
        for target in [Target::C, Target::CTilde] {
            let mono = maximize(&pts, target, Chromatic::Mono).unwrap();
            let bi = maximize(&pts, target, Chromatic::Bichromatic).unwrap();
            assert!(bi.stats.get(target) <= mono.stats.get(target));
        }
    }
}
