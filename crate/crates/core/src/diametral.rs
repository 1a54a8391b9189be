//! Pairs whose diametral disk holds a third of the points.
//!
//! The smallest enclosing disk is supported by two or three points. With
//! two, it is their diametral disk. With three, the diametral disks of the
//! support triangle's sides cover it, so one of them holds at least a third.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    circumcenter, diametral_contains, ensure_finite, incircle_raw, orient_raw, Disk, Point, Sign,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnclosingDisk {
    pub disk: Disk,
    /// Indices of the points on the boundary that determine the disk.
    pub support: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
enum Support {
    Two(usize, usize),
    Three(usize, usize, usize),
}

impl Support {
    /// Exact closed containment.
    fn contains(&self, pts: &[Point], x: usize) -> bool {
        match *self {
            Support::Two(a, b) => diametral_contains(&pts[a], &pts[b], &pts[x]),
            Support::Three(a, b, c) => {
                let o = orient_raw(&pts[a], &pts[b], &pts[c]).as_i32();
                let s = incircle_raw(&pts[a], &pts[b], &pts[c], &pts[x]).as_i32();
                o * s >= 0
            }
        }
    }
}

/// Minimum enclosing disk by randomized incremental construction with
/// move-to-front; the seed fixes the insertion order.
pub fn smallest_enclosing_disk(points: &[Point], seed: u64) -> Result<EnclosingDisk> {
    let n = points.len();
    if n < 2 {
        return Err(Error::invalid(format!("need at least two points, got {n}")));
    }
    ensure_finite(points)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut disk = Support::Two(order[0], order[1]);
    let mut i = 2;
    while i < n {
        let pi = order[i];
        if disk.contains(points, pi) {
            i += 1;
            continue;
        }
        disk = Support::Two(order[0], pi);
        for j in 1..i {
            let pj = order[j];
            if disk.contains(points, pj) {
                continue;
            }
            disk = Support::Two(pi, pj);
            for &pk in &order[..j] {
                if disk.contains(points, pk) {
                    continue;
                }
                if orient_raw(&points[pi], &points[pj], &points[pk]) == Sign::Zero {
                    let mut w = vec![pi, pj, pk];
                    w.sort_unstable();
                    return Err(Error::degenerate(w, "collinear support triple"));
                }
                disk = Support::Three(pi, pj, pk);
            }
        }
        order[..=i].rotate_right(1);
        i += 1;
    }

    let (center, support) = match disk {
        Support::Two(a, b) => {
            let c = Point::new(
                0.5 * (points[a].x + points[b].x),
                0.5 * (points[a].y + points[b].y),
            );
            let mut s = vec![a, b];
            s.sort_unstable();
            (c, s)
        }
        Support::Three(a, b, c) => {
            let cc = circumcenter(&points[a], &points[b], &points[c])?;
            let mut s = vec![a, b, c];
            s.sort_unstable();
            (cc.point, s)
        }
    };
    let r2 = support
        .iter()
        .map(|&s| center.dist2(&points[s]))
        .fold(0.0, f64::max);
    Ok(EnclosingDisk {
        disk: Disk::new(center, r2)?,
        support,
    })
}

/// Points of `points` in the closed diametral disk of `(p, q)`, exactly.
pub fn diametral_count(points: &[Point], p: usize, q: usize) -> usize {
    points
        .iter()
        .filter(|x| diametral_contains(&points[p], &points[q], x))
        .count()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiametralPair {
    pub pair: (usize, usize),
    /// Points of the set (including the pair) in the closed diametral disk.
    pub count: usize,
    pub enclosing: EnclosingDisk,
    /// Every candidate pair with its count.
    pub candidates: Vec<((usize, usize), usize)>,
}

/// A pair whose closed diametral disk holds at least `ceil(n / 3)` points.
pub fn diametral_pair(points: &[Point], seed: u64) -> Result<DiametralPair> {
    let n = points.len();
    let enclosing = smallest_enclosing_disk(points, seed)?;
    let s = &enclosing.support;
    let pairs = match s.len() {
        2 => vec![(s[0], s[1])],
        _ => vec![(s[0], s[1]), (s[0], s[2]), (s[1], s[2])],
    };
    let candidates: Vec<((usize, usize), usize)> = pairs
        .iter()
        .map(|&(a, b)| ((a, b), diametral_count(points, a, b)))
        .collect();
    let mut best = candidates[0];
    for &c in &candidates[1..] {
        if c.1 > best.1 {
            best = c;
        }
    }
    let need = n.div_ceil(3);
    if best.1 < need {
        return Err(Error::Consistency(format!(
            "best diametral disk ({}, {}) holds {} points, fewer than {need}",
            best.0 .0, best.0 .1, best.1
        )));
    }
    Ok(DiametralPair {
        pair: best.0,
        count: best.1,
        enclosing,
        candidates,
    })
}
