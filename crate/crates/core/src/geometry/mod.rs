//! Planar primitives: points, disks, and exact predicates.
//!
//! All sign decisions (orientation, in-circle, ordering along a bisector)
//! are exact. A double-precision evaluation with a forward error bound is
//! tried first; only when the bound straddles zero is the expression
//! re-evaluated in arbitrary-precision rationals.

mod exact;
mod general_position;
mod predicates;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use exact::{to_rational, IntegerFrame};
pub use general_position::{check_general_position, GeneralPositionReport};
pub(crate) use general_position::check_collinear;
pub use predicates::{
    circumcenter, incircle, orient, BisectorFrame, BisectorParam, Circumcenter,
};
pub(crate) use predicates::{diametral_contains, incircle_raw, orient_raw};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Red,
    Blue,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    #[serde(default)]
    pub colour: Option<Colour>,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y, colour: None }
    }

    pub const fn coloured(x: f64, y: f64, colour: Colour) -> Self {
        Point {
            x,
            y,
            colour: Some(colour),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist2(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist2(other).sqrt()
    }

    /// Same location, ignoring colour.
    pub fn same_location(&self, other: &Point) -> bool {
        self.x == other.x && self.y == other.y
    }
}

pub(crate) fn ensure_finite(points: &[Point]) -> Result<()> {
    match points.iter().position(|p| !p.is_finite()) {
        Some(i) => Err(Error::invalid(format!(
            "point {i} has a non-finite coordinate ({}, {})",
            points[i].x, points[i].y
        ))),
        None => Ok(()),
    }
}

/// Sign of an exactly evaluated determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(v: f64) -> Self {
        if v > 0.0 {
            Sign::Positive
        } else if v < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Side of a directed line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Closed disk: boundary points are contained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point,
    pub radius_squared: f64,
}

impl Disk {
    pub fn new(center: Point, radius_squared: f64) -> Result<Self> {
        if !center.is_finite() || !radius_squared.is_finite() || radius_squared < 0.0 {
            return Err(Error::invalid(format!(
                "disk needs a finite center and radius_squared >= 0, got {radius_squared}"
            )));
        }
        Ok(Disk {
            center,
            radius_squared,
        })
    }

    /// Floating-point containment; use the exact predicates where the
    /// answer feeds a combinatorial decision.
    pub fn contains(&self, p: &Point) -> bool {
        self.center.dist2(p) <= self.radius_squared
    }
}
