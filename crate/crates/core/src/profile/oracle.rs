use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{check_pair, PairStats};
use crate::error::{Error, Result};
use crate::geometry::{ensure_finite, IntegerFrame, Point};

/// Reference evaluation of a pair by direct counting.
///
/// Computes every circumcenter of `p`, `q` and a third point in exact
/// homogeneous integer coordinates, orders them along the bisector by projection,
/// picks one center strictly inside each gap (and beyond both ends), and
/// counts the points strictly inside the disk through `p` and `q` there.
/// Cubic in spirit, meant for small inputs and tests.
pub fn brute_force_c_pair(points: &[Point], p: usize, q_idx: usize) -> Result<PairStats> {
    check_pair(points, p, q_idx)?;
    ensure_finite(points)?;
    let frame = IntegerFrame::for_points(points);
    let ints: Vec<(BigInt, BigInt)> = points.iter().map(|pt| frame.point(pt)).collect();
    let (px, py) = ints[p].clone();
    let rel: Vec<(BigInt, BigInt)> = ints.iter().map(|(x, y)| (x - &px, y - &py)).collect();
    let (ax, ay) = rel[q_idx].clone();
    if ax.is_zero() && ay.is_zero() {
        return Err(Error::degenerate(vec![p, q_idx], "coincident pair"));
    }
    let a2 = &ax * &ax + &ay * &ay;
    // direction of the bisector
    let (ux, uy) = (-&ay, ax.clone());

    // centers in homogeneous form (x, y, w) with w > 0, plus the projection
    // numerator on the bisector direction
    let mut centers: Vec<(BigInt, BigInt, BigInt, BigInt, usize)> = Vec::new();
    for (i, (bx, by)) in rel.iter().enumerate() {
        if i == p || i == q_idx {
            continue;
        }
        let mut w: BigInt = (&ax * by - &ay * bx) * 2;
        if w.is_zero() {
            return Err(Error::degenerate(vec![p, q_idx, i], "collinear triple"));
        }
        let b2 = bx * bx + by * by;
        let mut cx = by * &a2 - &ay * &b2;
        let mut cy = &ax * &b2 - bx * &a2;
        if w.is_negative() {
            w = -w;
            cx = -cx;
            cy = -cy;
        }
        let s = &cx * &ux + &cy * &uy;
        centers.push((cx, cy, w, s, i));
    }
    let along = |l: &(BigInt, BigInt, BigInt, BigInt, usize), r: &(BigInt, BigInt, BigInt, BigInt, usize)| {
        (&l.3 * &r.2).cmp(&(&r.3 * &l.2))
    };
    centers.sort_by(along);
    if let Some(w) = centers.windows(2).find(|w| along(&w[0], &w[1]).is_eq()) {
        let mut idx = vec![p, q_idx, w[0].4, w[1].4];
        idx.sort_unstable();
        return Err(Error::degenerate(idx, "cocircular quadruple"));
    }

    let mut candidates: Vec<(BigInt, BigInt, BigInt)> = Vec::new();
    match (centers.first(), centers.last()) {
        (Some(f), Some(l)) => {
            candidates.push((&f.0 - &f.2 * &ux, &f.1 - &f.2 * &uy, f.2.clone()));
            for w in centers.windows(2) {
                let (a, b) = (&w[0], &w[1]);
                candidates.push((&a.0 * &b.2 + &b.0 * &a.2, &a.1 * &b.2 + &b.1 * &a.2, &a.2 * &b.2 * 2));
            }
            candidates.push((&l.0 + &l.2 * &ux, &l.1 + &l.2 * &uy, l.2.clone()));
        }
        _ => candidates.push((ax.clone(), ay.clone(), BigInt::from(2))),
    }

    let total = points.len() - 2;
    let mut stats = PairStats {
        c: usize::MAX,
        c_tilde: usize::MAX,
    };
    for (cx, cy, w) in candidates {
        // |b - c|^2 - |c|^2 = |b|^2 - 2 b.c, scaled by w > 0
        let mut inside = 0;
        for (i, (bx, by)) in rel.iter().enumerate() {
            if i == p || i == q_idx {
                continue;
            }
            let diff: BigInt = (bx * bx + by * by) * &w - (bx * &cx + by * &cy) * 2;
            if diff.is_zero() {
                return Err(Error::Consistency(format!(
                    "point {i} on a candidate circle of ({p}, {q_idx})"
                )));
            }
            if diff.is_negative() {
                inside += 1;
            }
        }
        stats.c = stats.c.min(inside);
        stats.c_tilde = stats.c_tilde.min(inside.min(total - inside));
    }
    Ok(stats)
}
