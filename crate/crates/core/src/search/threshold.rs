use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{Chromatic, SearchConfig, Setting};
use crate::error::{Error, Result};
use crate::geometry::to_rational;
use crate::profile::Target;

type Q = BigRational;

fn int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The smaller root `(b - sqrt(d)) / a` of a quadratic, `a > 0`, kept in
/// exact form so floors and ceilings are not at the mercy of rounding.
#[derive(Clone, Debug)]
pub(crate) struct Root {
    a: Q,
    b: Q,
    d: Q,
}

impl Root {
    fn new(a: Q, b: Q, d: Q) -> Self {
        debug_assert!(a.is_positive());
        Root { a, b, d }
    }

    fn real(&self) -> bool {
        !self.d.is_negative()
    }

    /// `k <= root`, i.e. `b - a k >= sqrt(d)`.
    fn at_least(&self, k: i64) -> bool {
        let lhs = &self.b - &self.a * int(k);
        !lhs.is_negative() && &lhs * &lhs >= self.d
    }

    fn approx(&self) -> f64 {
        let (a, b, d) = (
            self.a.to_f64().unwrap_or(f64::NAN),
            self.b.to_f64().unwrap_or(f64::NAN),
            self.d.to_f64().unwrap_or(f64::NAN),
        );
        (b - d.max(0.0).sqrt()) / a
    }

    /// Exact floor; `None` when the root is not real.
    pub(crate) fn floor(&self) -> Option<i64> {
        if !self.real() {
            return None;
        }
        let mut k = self.approx().floor() as i64;
        while !self.at_least(k) {
            k -= 1;
        }
        while self.at_least(k + 1) {
            k += 1;
        }
        Some(k)
    }

    /// Exact ceiling; `None` when the root is not real.
    pub(crate) fn ceil(&self) -> Option<i64> {
        let k = self.floor()?;
        let lhs = &self.b - &self.a * int(k);
        let exact = &lhs * &lhs == self.d;
        Some(if exact { k } else { k + 1 })
    }
}

/// Threshold `k` for a setting together with the configuration it was derived from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuaranteeBound {
    pub setting: Setting,
    pub chromatic: Chromatic,
    pub target: Target,
    pub k: usize,
}

fn cap(n: usize, target: Target) -> usize {
    match target {
        Target::C => n - 2,
        Target::CTilde => (n - 2) / 2,
    }
}

fn clamp(k: Option<i64>, n: usize, target: Target) -> usize {
    let top = cap(n, target);
    match k {
        None => top,
        Some(k) if k < 0 => 0,
        Some(k) => (k as usize).min(top),
    }
}

/// Smaller root of the counting inequality behind each threshold: the pairs
/// whose bisector carries a light segment must be fewer than a `1 - alpha`
/// fraction of all admissible pairs.
pub(crate) fn threshold_root(
    n: usize,
    alpha: f64,
    setting: Setting,
    chromatic: Chromatic,
    target: Target,
) -> Root {
    let a = to_rational(alpha);
    let n = int(n as i64);
    let n2 = &n * &n;
    match (setting, chromatic, target) {
        // 3(k+1)n - 3(k+1)(k+2) < (1 - alpha) n(n-1)/2
        (Setting::Plane, Chromatic::Mono, _) => {
            let e = (int(1) + int(2) * &a) * &n2 - (int(4) + int(2) * &a) * &n + int(15);
            Root::new(int(2), &n - int(3), e / int(3))
        }
        // 3(k+1)n - 3(k+1)(k+2) < (1 - alpha) (n/2)^2
        (Setting::Plane, Chromatic::Bichromatic, _) => {
            let e = (int(2) + &a) * &n2 - int(6) * &n + int(3);
            Root::new(int(2), &n - int(3), e / int(3))
        }
        (Setting::Polygon, Chromatic::Mono, Target::C) => {
            let d = (int(4) + int(5) * &a) * &n2 - (int(10) + int(5) * &a) * &n + frac(25, 4);
            Root::new(int(5), int(3) * &n - frac(5, 2), d)
        }
        (Setting::Polygon, Chromatic::Mono, Target::CTilde) => {
            let d = (int(37) + int(12) * &a) * &n2 - (int(72) + int(12) * &a) * &n + int(36);
            Root::new(int(12), int(7) * &n - int(6), d)
        }
        (Setting::Polygon, Chromatic::Bichromatic, Target::C) => {
            let d = (frac(13, 2) + frac(5, 2) * &a) * &n2 - int(15) * &n + frac(25, 4);
            Root::new(int(5), int(3) * &n - frac(5, 2), d)
        }
        // 7kn - 6k^2 - 6k < (1 - alpha) (n/2)^2
        (Setting::Polygon, Chromatic::Bichromatic, Target::CTilde) => {
            let d = (int(43) + int(6) * &a) * &n2 - int(84) * &n + int(36);
            Root::new(int(12), int(7) * &n - int(6), d)
        }
    }
}

impl GuaranteeBound {
    /// Accepts `alpha = 0` so the limiting constants can be evaluated.
    pub fn compute(
        n: usize,
        alpha: f64,
        setting: Setting,
        chromatic: Chromatic,
        target: Target,
    ) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("threshold needs n >= 3, got {n}")));
        }
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::invalid(format!("alpha must lie in [0, 1), got {alpha}")));
        }
        let root = threshold_root(n, alpha, setting, chromatic, target);
        Ok(GuaranteeBound {
            setting,
            chromatic,
            target,
            k: clamp(root.floor(), n, target),
        })
    }
}

/// Largest `k` such that at least an `alpha` fraction of admissible pairs
/// is guaranteed to reach `k` in the configured target.
pub fn threshold_k(n: usize, cfg: &SearchConfig) -> Result<usize> {
    cfg.validate()?;
    Ok(GuaranteeBound::compute(n, cfg.alpha, cfg.setting, cfg.chromatic, cfg.target)?.k)
}

/// Every set of `n` points has a pair at least this deep, in exact form:
/// `(n - 3)/2 - sqrt(((n - 2)^2 - 1)/12)`.
pub(crate) fn existence_root(n: usize) -> Root {
    let n = int(n as i64);
    let m = &n - int(2);
    Root::new(int(2), &n - int(3), (&m * &m - int(1)) / int(3))
}

/// `max(0, ceil(existence_root))` for one colour, `ceil(n / 6.8)` for two.
pub fn existence_bound(n: usize, chromatic: Chromatic) -> usize {
    match chromatic {
        Chromatic::Mono => existence_root(n).ceil().map_or(0, |k| k.max(0) as usize),
        Chromatic::Bichromatic => (5 * n).div_ceil(34),
    }
}
