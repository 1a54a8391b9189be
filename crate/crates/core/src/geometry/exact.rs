use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, Zero};

use super::Point;

/// Exact rational value of a finite double.
pub fn to_rational(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite coordinate")
}

/// Maps a set of doubles onto a common integer lattice: every value is
/// `mantissa * 2^exp`, so scaling by `2^-min_exp` makes all of them
/// integers without rounding. Differences, products and comparisons of
/// the scaled values then need no denominators.
#[derive(Clone, Copy, Debug)]
pub struct IntegerFrame {
    min_exp: i32,
}

impl IntegerFrame {
    pub fn for_points<'a>(points: impl IntoIterator<Item = &'a Point>) -> Self {
        let mut min_exp = i32::MAX;
        for p in points {
            for v in [p.x, p.y] {
                if v != 0.0 {
                    let (_, exp, _) = v.integer_decode();
                    min_exp = min_exp.min(exp as i32);
                }
            }
        }
        if min_exp == i32::MAX {
            min_exp = 0;
        }
        IntegerFrame { min_exp }
    }

    pub fn int(&self, v: f64) -> BigInt {
        if v == 0.0 {
            return BigInt::zero();
        }
        let (mantissa, exp, sign) = v.integer_decode();
        let shift = exp as i32 - self.min_exp;
        debug_assert!(shift >= 0, "value outside the frame");
        let mag = BigInt::from(mantissa) << (shift as usize);
        if sign < 0 {
            -mag
        } else {
            mag
        }
    }

    pub fn point(&self, p: &Point) -> (BigInt, BigInt) {
        (self.int(p.x), self.int(p.y))
    }
}
