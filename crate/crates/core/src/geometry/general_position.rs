use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::predicates::{incircle_raw, orient_raw};
use super::{ensure_finite, BisectorFrame, BisectorParam, Point, Sign};
use crate::error::Result;

/// Sizes below this use the direct triple/quadruple scans.
const NAIVE_LIMIT: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralPositionReport {
    pub ok: bool,
    /// Offending indices: a pair of coincident points, a collinear triple,
    /// or a cocircular quadruple. Lexicographically first of its kind.
    pub witness: Option<Vec<usize>>,
}

impl GeneralPositionReport {
    fn pass() -> Self {
        GeneralPositionReport {
            ok: true,
            witness: None,
        }
    }

    fn fail(witness: Vec<usize>) -> Self {
        GeneralPositionReport {
            ok: false,
            witness: Some(witness),
        }
    }
}

/// No three points collinear and no four cocircular.
///
/// Collinear triples are searched before cocircular quadruples; within each
/// kind the reported witness is the lexicographically smallest index tuple,
/// whichever scan strategy runs.
pub fn check_general_position(points: &[Point]) -> Result<GeneralPositionReport> {
    ensure_finite(points)?;
    if points.len() < NAIVE_LIMIT {
        Ok(scan_naive(points))
    } else {
        Ok(scan_sorted(points))
    }
}

pub(crate) fn scan_naive(points: &[Point]) -> GeneralPositionReport {
    let n = points.len();
    if n == 2 && points[0].same_location(&points[1]) {
        return GeneralPositionReport::fail(vec![0, 1]);
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient_raw(&points[i], &points[j], &points[k]) == Sign::Zero {
                    return GeneralPositionReport::fail(vec![i, j, k]);
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    if incircle_raw(&points[i], &points[j], &points[k], &points[l]) == Sign::Zero {
                        return GeneralPositionReport::fail(vec![i, j, k, l]);
                    }
                }
            }
        }
    }
    GeneralPositionReport::pass()
}

/// Coincident points and collinear triples only, in `O(n^2 log n)`; for
/// inputs too large for the cocircularity scan.
pub(crate) fn check_collinear(points: &[Point]) -> GeneralPositionReport {
    match first_collinear(points) {
        Some(w) => GeneralPositionReport::fail(w),
        None => GeneralPositionReport::pass(),
    }
}

pub(crate) fn scan_sorted(points: &[Point]) -> GeneralPositionReport {
    if let Some(w) = first_collinear(points) {
        return GeneralPositionReport::fail(w);
    }
    if let Some(w) = first_cocircular(points) {
        return GeneralPositionReport::fail(w);
    }
    GeneralPositionReport::pass()
}

/// Smallest `(a, b)` over runs of equal elements in a sorted slice of
/// `(key, index)` entries.
fn smallest_tied_pair<T>(sorted: &[(T, usize)], eq: impl Fn(&T, &T) -> bool) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut start = 0;
    while start < sorted.len() {
        let mut end = start + 1;
        while end < sorted.len() && eq(&sorted[start].0, &sorted[end].0) {
            end += 1;
        }
        if end - start >= 2 {
            let mut idx: Vec<usize> = sorted[start..end].iter().map(|e| e.1).collect();
            idx.sort_unstable();
            let cand = (idx[0], idx[1]);
            best = Some(best.map_or(cand, |b| b.min(cand)));
        }
        start = end;
    }
    best
}

/// Directions from a pivot, folded into the half-open upper half-plane so
/// that opposite directions compare equal.
fn first_collinear(points: &[Point]) -> Option<Vec<usize>> {
    let n = points.len();
    for i in 0..n {
        let pivot = points[i];
        // (flip, index): flip = true when the raw direction was negated
        let mut dirs: Vec<(bool, usize)> = Vec::with_capacity(n - i - 1);
        let mut coincident = None;
        for j in i + 1..n {
            let (dx, dy) = (points[j].x - pivot.x, points[j].y - pivot.y);
            if dx == 0.0 && dy == 0.0 {
                coincident.get_or_insert(j);
                continue;
            }
            dirs.push((dy < 0.0 || (dy == 0.0 && dx < 0.0), j));
        }
        // a point coincident with the pivot is collinear with any other
        let dup_pair = coincident.and_then(|d| {
            (i + 1..n).find(|&k| k != d).map(|k| (d.min(k), d.max(k)))
        });
        let cmp = |a: &(bool, usize), b: &(bool, usize)| -> Ordering {
            let s = orient_raw(&pivot, &points[a.1], &points[b.1]).as_i32();
            let s = if a.0 != b.0 { -s } else { s };
            // a before b when b is counterclockwise from a
            0.cmp(&s)
        };
        let mut keyed: Vec<((bool, usize), usize)> = dirs.iter().map(|d| (*d, d.1)).collect();
        keyed.sort_by(|a, b| cmp(&a.0, &b.0));
        let tied = smallest_tied_pair(&keyed, |a, b| cmp(a, b) == Ordering::Equal);
        let best = match (tied, dup_pair) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if let Some((j, k)) = best {
            return Some(vec![i, j, k]);
        }
    }
    None
}

fn first_cocircular(points: &[Point]) -> Option<Vec<usize>> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            let frame = BisectorFrame::new(points[i], points[j]).ok()?;
            let mut keyed: Vec<(BisectorParam, usize)> = (j + 1..n)
                .map(|k| (frame.param(&points[k]).expect("collinear triples excluded"), k))
                .collect();
            keyed.sort_by(|a, b| frame.compare(&a.0, &b.0));
            if let Some((k, l)) =
                smallest_tied_pair(&keyed, |a, b| frame.compare(a, b) == Ordering::Equal)
            {
                return Some(vec![i, j, k, l]);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(c: &[(f64, f64)]) -> Vec<Point> {
        c.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn examples() {
        let r = check_general_position(&pts(&[(0., 0.), (1., 0.), (2., 0.)])).unwrap();
        assert_eq!(r, GeneralPositionReport::fail(vec![0, 1, 2]));
        let r = check_general_position(&pts(&[(0., 0.), (1., 0.), (0., 1.)])).unwrap();
        assert!(r.ok && r.witness.is_none());
        let r = check_general_position(&pts(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)])).unwrap();
        assert_eq!(r, GeneralPositionReport::fail(vec![0, 1, 2, 3]));
    }

    #[test]
    fn single_point_is_fine() {
        assert!(check_general_position(&pts(&[(3., 4.)])).unwrap().ok);
    }

    #[test]
    fn strategies_agree_on_witnesses() {
        let base = pts(&[
            (0.0, 0.0),
            (3.0, 1.0),
            (1.0, 5.0),
            (-2.0, 2.5),
            (4.0, 4.0),
            (6.0, 2.5),
            (2.0, -3.0),
            (5.0, -1.0),
        ]);
        assert_eq!(scan_naive(&base), scan_sorted(&base));
        // collinear with points 0 and 4 (on y = x), and an opposite-direction one
        let mut with_line = base.clone();
        with_line.push(Point::new(-1.5, -1.5));
        with_line.push(Point::new(2.0, 2.0));
        assert_eq!(scan_naive(&with_line), scan_sorted(&with_line));
        assert_eq!(scan_naive(&with_line).witness, Some(vec![0, 4, 8]));
        // cocircular: unit-circle points appended
        let mut circ = base.clone();
        for (x, y) in [(10.0, 0.0), (11.0, 1.0), (10.0, 2.0), (9.0, 1.0)] {
            circ.push(Point::new(x, y));
        }
        let naive = scan_naive(&circ);
        assert_eq!(naive, scan_sorted(&circ));
        assert!(!naive.ok);
    }
}
