//! Finding deep pairs: randomized search against a guaranteed fraction of
//! good pairs, the exhaustive maximizer, and the `k`-decision procedure.

mod exhaustive;
mod random;
mod threshold;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Colour, Point};
use crate::profile::{PairStats, Target};

pub use exhaustive::{all_pairs_stats, decide_k, guaranteed_pair, maximize, PairMatrix};
pub(crate) use random::{draw_loop, Verdict};
pub use random::random_pair_search;
pub use threshold::{existence_bound, threshold_k, GuaranteeBound};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Setting {
    Plane,
    Polygon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chromatic {
    Mono,
    Bichromatic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Draw until a pair passes or `max_attempts` is spent.
    ExpectedTime,
    /// Draw `ceil(ln n / ln(1 / (1 - alpha)))` pairs and stop.
    HighProbability,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub alpha: f64,
    pub target: Target,
    pub setting: Setting,
    pub chromatic: Chromatic,
    pub mode: Mode,
    pub seed: u64,
    /// Defaults to `ceil(64 / alpha)`.
    pub max_attempts: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            alpha: 0.5,
            target: Target::CTilde,
            setting: Setting::Plane,
            chromatic: Chromatic::Mono,
            mode: Mode::ExpectedTime,
            seed: 0,
            max_attempts: None,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::invalid(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.max_attempts == Some(0) {
            return Err(Error::invalid("max_attempts must be positive"));
        }
        Ok(())
    }

    /// Number of draws the search may spend on `n` points.
    pub fn budget(&self, n: usize) -> usize {
        match self.mode {
            Mode::ExpectedTime => self
                .max_attempts
                .unwrap_or_else(|| (64.0 / self.alpha).ceil() as usize),
            Mode::HighProbability => {
                let b = (n as f64).ln() / (1.0 / (1.0 - self.alpha)).ln();
                (b.ceil() as usize).max(1)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub pair: (usize, usize),
    pub stats: PairStats,
    pub attempts: usize,
    pub threshold_used: usize,
    /// The pair met the threshold by the search's own evaluation.
    pub accepted: bool,
    /// The pair provably meets the threshold.
    pub certified: bool,
}

/// Indices of the red and blue points; fails unless every point is coloured
/// and the two classes have equal size.
pub(crate) fn colour_classes(points: &[Point]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut red = Vec::new();
    let mut blue = Vec::new();
    for (i, p) in points.iter().enumerate() {
        match p.colour {
            Some(Colour::Red) => red.push(i),
            Some(Colour::Blue) => blue.push(i),
            None => return Err(Error::invalid(format!("point {i} has no colour"))),
        }
    }
    if red.len() != blue.len() {
        return Err(Error::invalid(format!(
            "unbalanced colours: {} red, {} blue",
            red.len(),
            blue.len()
        )));
    }
    Ok((red, blue))
}

/// Admissible pairs in lexicographic order.
pub(crate) fn admissible_pairs(points: &[Point], chromatic: Chromatic) -> Result<Vec<(usize, usize)>> {
    let n = points.len();
    match chromatic {
        Chromatic::Mono => Ok((0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .collect()),
        Chromatic::Bichromatic => {
            colour_classes(points)?;
            Ok((0..n)
                .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
                .filter(|&(p, q)| points[p].colour != points[q].colour)
                .collect())
        }
    }
}
