//! Segment weights along the bisector of a pair.
//!
//! The circumcenters of `p`, `q` and each third point cut the bisector
//! `b(p, q)` into `n - 1` open segments. Every disk through `p` and `q`
//! centered on one segment has the same points in its interior; that count
//! is the segment's weight. Sorting the circumcenters and walking them in
//! order updates the weight by one per event, which yields both depth
//! measures of the pair in `O(n log n)`.

mod oracle;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ensure_finite, BisectorFrame, BisectorParam, Point, Side, Sign};

pub use oracle::brute_force_c_pair;

/// The pair's two depth measures.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairStats {
    /// Fewest other points in a disk containing both points of the pair.
    pub c: usize,
    /// Fewest points on the thinner side (inside or outside) of a disk
    /// through both points of the pair.
    pub c_tilde: usize,
}

impl PairStats {
    pub fn get(&self, target: Target) -> usize {
        match target {
            Target::C => self.c,
            Target::CTilde => self.c_tilde,
        }
    }
}

/// Which depth measure a search optimizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    C,
    CTilde,
}

/// A circumcenter crossing on the bisector.
#[derive(Clone, Copy, Debug)]
pub struct TransitionEvent {
    pub third: usize,
    pub parameter: BisectorParam,
    pub side: Side,
}

#[derive(Clone, Debug)]
pub struct WeightProfile {
    pub pair: (usize, usize),
    /// Sorted by increasing bisector parameter.
    pub events: Vec<TransitionEvent>,
    /// `weights[i]` is the weight of the i-th segment; `weights[0]` is the
    /// unbounded segment on the right of `p -> q`.
    pub weights: Vec<usize>,
}

impl WeightProfile {
    pub fn n(&self) -> usize {
        self.weights.len() + 1
    }

    pub fn stats(&self) -> PairStats {
        let total = self.n() - 2;
        let c = self.weights.iter().copied().min().unwrap_or(0);
        let c_tilde = self
            .weights
            .iter()
            .map(|&w| w.min(total - w))
            .min()
            .unwrap_or(0);
        PairStats { c, c_tilde }
    }
}

pub(crate) fn check_pair(points: &[Point], p: usize, q: usize) -> Result<()> {
    let n = points.len();
    if n < 2 {
        return Err(Error::invalid(format!("need at least two points, got {n}")));
    }
    if p >= n || q >= n {
        return Err(Error::invalid(format!("pair ({p}, {q}) out of range for {n} points")));
    }
    if p == q {
        return Err(Error::invalid(format!("pair needs two distinct indices, got ({p}, {q})")));
    }
    Ok(())
}

/// Events of the pair, unsorted, plus the number of points on the right of `p -> q`.
fn collect_events(points: &[Point], p: usize, q: usize) -> Result<(Vec<TransitionEvent>, usize)> {
    let frame = BisectorFrame::new(points[p], points[q])
        .map_err(|_| Error::degenerate(vec![p, q], "coincident pair"))?;
    let mut events = Vec::with_capacity(points.len().saturating_sub(2));
    let mut right = 0;
    for (i, x) in points.iter().enumerate() {
        if i == p || i == q {
            continue;
        }
        let parameter = frame
            .param(x)
            .map_err(|_| Error::degenerate(vec![p, q, i], "collinear triple"))?;
        let side = match parameter.side() {
            Sign::Positive => Side::Left,
            _ => Side::Right,
        };
        if side == Side::Right {
            right += 1;
        }
        events.push(TransitionEvent {
            third: i,
            parameter,
            side,
        });
    }
    Ok((events, right))
}

fn sort_events(p: usize, q: usize, events: &mut [TransitionEvent]) -> Result<()> {
    let mut tie = None;
    events.sort_by(|a, b| {
        let o = a.parameter.cmp_exact(&b.parameter);
        if o.is_eq() && tie.is_none() {
            tie = Some((a.third, b.third));
        }
        o
    });
    if tie.is_none() {
        tie = events
            .windows(2)
            .find(|w| w[0].parameter.cmp_exact(&w[1].parameter).is_eq())
            .map(|w| (w[0].third, w[1].third));
    }
    match tie {
        Some((a, b)) => {
            let mut w = vec![p, q, a, b];
            w.sort_unstable();
            Err(Error::degenerate(w, "cocircular quadruple"))
        }
        None => Ok(()),
    }
}

/// Full weight profile of the pair `(p, q)`.
///
/// The sweep starts at the unbounded end on the right of `p -> q`, where
/// the disks tend to the open right half-plane. Crossing the circumcenter
/// of a left point adds it to the disk; crossing that of a right point
/// removes it.
pub fn weight_profile(points: &[Point], p: usize, q: usize) -> Result<WeightProfile> {
    check_pair(points, p, q)?;
    ensure_finite(points)?;
    let (mut events, right) = collect_events(points, p, q)?;
    sort_events(p, q, &mut events)?;

    let mut weights = Vec::with_capacity(events.len() + 1);
    let mut w = right;
    weights.push(w);
    for e in &events {
        match e.side {
            Side::Left => w += 1,
            Side::Right => w -= 1,
        }
        weights.push(w);
    }
    let left = events.len() - right;
    if w != left {
        return Err(Error::Consistency(format!(
            "sweep of ({p}, {q}) ended at weight {w}, expected {left} points on the left"
        )));
    }
    Ok(WeightProfile {
        pair: (p, q),
        events,
        weights,
    })
}

pub fn c_pair(points: &[Point], p: usize, q: usize) -> Result<PairStats> {
    Ok(weight_profile(points, p, q)?.stats())
}

/// Whether the bisector of `(p, q)` has a segment of weight `<= low` or
/// `>= high`. Returns as soon as one is found, and skips the sort when an
/// unbounded segment already qualifies.
pub(crate) fn has_extreme_segment(
    points: &[Point],
    p: usize,
    q: usize,
    low: Option<usize>,
    high: Option<usize>,
) -> Result<bool> {
    let hit = |w: usize| low.is_some_and(|l| w <= l) || high.is_some_and(|h| w >= h);
    let (mut events, right) = collect_events(points, p, q)?;
    let left = events.len() - right;
    if hit(right) || hit(left) {
        return Ok(true);
    }
    sort_events(p, q, &mut events)?;
    let mut w = right;
    for e in &events {
        match e.side {
            Side::Left => w += 1,
            Side::Right => w -= 1,
        }
        if hit(w) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s5() -> Vec<Point> {
        vec![
            Point::new(0., 0.),
            Point::new(4., 0.),
            Point::new(2., 1.),
            Point::new(2., -1.),
            Point::new(2., 3.),
        ]
    }

    #[test]
    fn s5_profile() {
        let prof = weight_profile(&s5(), 0, 1).unwrap();
        assert_eq!(prof.weights, vec![1, 2, 3, 2]);
        let order: Vec<usize> = prof.events.iter().map(|e| e.third).collect();
        assert_eq!(order, vec![2, 4, 3]);
        let offsets: Vec<f64> = prof.events.iter().map(|e| e.parameter.offset()).collect();
        assert_eq!(offsets[0], -1.5);
        assert!((offsets[1] - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(offsets[2], 1.5);
        assert_eq!(prof.events[0].side, Side::Left);
        assert_eq!(prof.events[2].side, Side::Right);
        // unbounded ends: right half-plane {b}, left half-plane {a, c}
        assert_eq!(prof.weights[0], 1);
        assert_eq!(*prof.weights.last().unwrap(), 2);
    }

    #[test]
    fn s5_c_pair() {
        assert_eq!(c_pair(&s5(), 0, 1).unwrap(), PairStats { c: 1, c_tilde: 0 });
        assert_eq!(c_pair(&s5(), 1, 0).unwrap(), PairStats { c: 1, c_tilde: 0 });
    }

    #[test]
    fn two_points() {
        let pts = vec![Point::new(0., 0.), Point::new(1., 1.)];
        let prof = weight_profile(&pts, 0, 1).unwrap();
        assert_eq!(prof.weights, vec![0]);
        assert!(prof.events.is_empty());
        assert_eq!(prof.stats(), PairStats::default());
    }

    #[test]
    fn three_points_have_zero_depth() {
        let pts = vec![Point::new(0., 0.), Point::new(3., 1.), Point::new(1., 2.)];
        for (p, q) in [(0, 1), (1, 2), (0, 2)] {
            assert_eq!(c_pair(&pts, p, q).unwrap(), PairStats::default());
        }
    }

    #[test]
    fn errors() {
        let pts = s5();
        assert!(matches!(weight_profile(&pts, 0, 0), Err(Error::InvalidInput(_))));
        assert!(matches!(weight_profile(&pts, 0, 9), Err(Error::InvalidInput(_))));
        let mut col = pts.clone();
        col.push(Point::new(8., 0.));
        match weight_profile(&col, 0, 1) {
            Err(Error::Degenerate { witness, .. }) => assert_eq!(witness, vec![0, 1, 5]),
            other => panic!("expected degeneracy, got {other:?}"),
        }
        let square = vec![
            Point::new(0., 0.),
            Point::new(2., 0.),
            Point::new(2., 2.),
            Point::new(0., 2.),
        ];
        match weight_profile(&square, 0, 1) {
            Err(Error::Degenerate { witness, .. }) => assert_eq!(witness, vec![0, 1, 2, 3]),
            other => panic!("expected degeneracy, got {other:?}"),
        }
    }

    #[test]
    fn extreme_segment_scan_matches_profile() {
        let pts = s5();
        let prof = weight_profile(&pts, 0, 1).unwrap();
        for low in 0..4 {
            let expect = prof.weights.iter().any(|&w| w <= low);
            assert_eq!(has_extreme_segment(&pts, 0, 1, Some(low), None).unwrap(), expect);
        }
        for high in 0..5 {
            let expect = prof.weights.iter().any(|&w| w >= high);
            assert_eq!(has_extreme_segment(&pts, 0, 1, None, Some(high)).unwrap(), expect);
        }
    }
}
