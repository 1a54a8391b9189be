use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::exact::to_rational;
use super::{ensure_finite, Point, Sign};
use crate::error::{Error, Result};

/// Unit roundoff for round-to-nearest doubles.
const EPS: f64 = f64::EPSILON * 0.5;
const CCW_ERR: f64 = (3.0 + 16.0 * EPS) * EPS;
const ICC_ERR: f64 = (10.0 + 96.0 * EPS) * EPS;
/// Bounds below this are close enough to the subnormal range that the
/// relative error model no longer holds; go exact instead.
const UNDERFLOW_GUARD: f64 = 1e-280;

fn filtered(det: f64, bound: f64) -> Option<Sign> {
    if bound > UNDERFLOW_GUARD || bound == 0.0 {
        if det > bound {
            return Some(Sign::Positive);
        }
        if -det > bound {
            return Some(Sign::Negative);
        }
        if bound == 0.0 && det == 0.0 {
            return Some(Sign::Zero);
        }
    }
    None
}

fn rational_sign(v: &BigRational) -> Sign {
    if v.is_positive() {
        Sign::Positive
    } else if v.is_negative() {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

pub(crate) fn orient_raw(a: &Point, b: &Point, c: &Point) -> Sign {
    let detleft = (a.x - c.x) * (b.y - c.y);
    let detright = (a.y - c.y) * (b.x - c.x);
    let det = detleft - detright;
    let bound = CCW_ERR * (detleft.abs() + detright.abs());
    filtered(det, bound).unwrap_or_else(|| orient_exact(a, b, c))
}

fn orient_exact(a: &Point, b: &Point, c: &Point) -> Sign {
    let (ax, ay) = (to_rational(a.x), to_rational(a.y));
    let (bx, by) = (to_rational(b.x), to_rational(b.y));
    let (cx, cy) = (to_rational(c.x), to_rational(c.y));
    let det = (&bx - &ax) * (&cy - &ay) - (&by - &ay) * (&cx - &ax);
    rational_sign(&det)
}

/// Orientation of `c` relative to the directed line `a -> b`:
/// `Positive` when `c` is strictly to the left, `Negative` strictly to the
/// right, `Zero` when the three points are collinear.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Result<Sign> {
    ensure_finite(&[*a, *b, *c])?;
    Ok(orient_raw(a, b, c))
}

pub(crate) fn incircle_raw(a: &Point, b: &Point, c: &Point, d: &Point) -> Sign {
    let adx = a.x - d.x;
    let bdx = b.x - d.x;
    let cdx = c.x - d.x;
    let ady = a.y - d.y;
    let bdy = b.y - d.y;
    let cdy = c.y - d.y;

    let bdxcdy = bdx * cdy;
    let cdxbdy = cdx * bdy;
    let alift = adx * adx + ady * ady;

    let cdxady = cdx * ady;
    let adxcdy = adx * cdy;
    let blift = bdx * bdx + bdy * bdy;

    let adxbdy = adx * bdy;
    let bdxady = bdx * ady;
    let clift = cdx * cdx + cdy * cdy;

    let det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    let permanent = (bdxcdy.abs() + cdxbdy.abs()) * alift
        + (cdxady.abs() + adxcdy.abs()) * blift
        + (adxbdy.abs() + bdxady.abs()) * clift;
    filtered(det, ICC_ERR * permanent).unwrap_or_else(|| incircle_exact(a, b, c, d))
}

fn incircle_exact(a: &Point, b: &Point, c: &Point, d: &Point) -> Sign {
    let (dx, dy) = (to_rational(d.x), to_rational(d.y));
    let rel = |p: &Point| (to_rational(p.x) - &dx, to_rational(p.y) - &dy);
    let (adx, ady) = rel(a);
    let (bdx, bdy) = rel(b);
    let (cdx, cdy) = rel(c);
    let alift = &adx * &adx + &ady * &ady;
    let blift = &bdx * &bdx + &bdy * &bdy;
    let clift = &cdx * &cdx + &cdy * &cdy;
    let det = alift * (&bdx * &cdy - &cdx * &bdy)
        + blift * (&cdx * &ady - &adx * &cdy)
        + clift * (&adx * &bdy - &bdx * &ady);
    rational_sign(&det)
}

/// In-circle determinant sign. For `a, b, c` in counterclockwise order,
/// `Positive` means `d` is strictly inside their circumcircle, `Negative`
/// strictly outside, `Zero` cocircular. Swapping two of the first three
/// arguments flips the sign.
pub fn incircle(a: &Point, b: &Point, c: &Point, d: &Point) -> Result<Sign> {
    ensure_finite(&[*a, *b, *c, *d])?;
    if orient_raw(a, b, c) == Sign::Zero {
        return Err(Error::degenerate(
            vec![0, 1, 2],
            "in-circle test needs a non-collinear triangle",
        ));
    }
    Ok(incircle_raw(a, b, c, d))
}

/// Closed diametral-disk membership: `x` lies in the disk with segment
/// `pq` as diameter iff `(x - p) . (x - q) <= 0`.
pub(crate) fn diametral_contains(p: &Point, q: &Point, x: &Point) -> bool {
    let t1 = (x.x - p.x) * (x.x - q.x);
    let t2 = (x.y - p.y) * (x.y - q.y);
    let v = t1 + t2;
    let bound = 8.0 * EPS * (t1.abs() + t2.abs());
    let sign = filtered(v, bound).unwrap_or_else(|| {
        let (xx, xy) = (to_rational(x.x), to_rational(x.y));
        let v = (&xx - to_rational(p.x)) * (&xx - to_rational(q.x))
            + (&xy - to_rational(p.y)) * (&xy - to_rational(q.y));
        rational_sign(&v)
    });
    sign != Sign::Positive
}

/// Center of the circle through three points. The rounded location is in
/// `point`; `exact()` recomputes it in rationals from the stored vertices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circumcenter {
    pub point: Point,
    vertices: [Point; 3],
}

impl Circumcenter {
    pub fn vertices(&self) -> [Point; 3] {
        self.vertices
    }

    pub fn exact(&self) -> (BigRational, BigRational) {
        let [a, b, c] = self.vertices;
        let (ax, ay) = (to_rational(a.x), to_rational(a.y));
        let (bx, by) = (to_rational(b.x) - &ax, to_rational(b.y) - &ay);
        let (cx, cy) = (to_rational(c.x) - &ax, to_rational(c.y) - &ay);
        let b2 = &bx * &bx + &by * &by;
        let c2 = &cx * &cx + &cy * &cy;
        let d = (&bx * &cy - &by * &cx) * BigRational::from_integer(2.into());
        let ux = (&cy * &b2 - &by * &c2) / &d;
        let uy = (&bx * &c2 - &cx * &b2) / &d;
        (ax + ux, ay + uy)
    }

    /// Squared radius, rounded.
    pub fn radius_squared(&self) -> f64 {
        let [a, b, c] = self.vertices;
        (self.point.dist2(&a) + self.point.dist2(&b) + self.point.dist2(&c)) / 3.0
    }
}

pub fn circumcenter(a: &Point, b: &Point, c: &Point) -> Result<Circumcenter> {
    ensure_finite(&[*a, *b, *c])?;
    if orient_raw(a, b, c) == Sign::Zero {
        return Err(Error::degenerate(
            vec![0, 1, 2],
            "collinear points have no circumcenter",
        ));
    }
    let (bx, by) = (b.x - a.x, b.y - a.y);
    let (cx, cy) = (c.x - a.x, c.y - a.y);
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let d = 2.0 * (bx * cy - by * cx);
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    Ok(Circumcenter {
        point: Point::new(a.x + ux, a.y + uy),
        vertices: [*a, *b, *c],
    })
}

/// Coordinates along the bisector of `p` and `q`.
///
/// The bisector is parameterized as `m + t * perp(q - p)`, where `m` is the
/// midpoint of `pq` and `perp` rotates by +90 degrees, so increasing `t`
/// moves the center towards the left side of the directed line `p -> q`.
/// The circle through `p`, `q` and a third point `x` has its center at
/// `t = ((x - p) . (x - q)) / (2 * cross(q - p, x - p))`.
#[derive(Clone, Copy, Debug)]
pub struct BisectorFrame {
    p: Point,
    q: Point,
}

impl BisectorFrame {
    pub fn new(p: Point, q: Point) -> Result<Self> {
        ensure_finite(&[p, q])?;
        if p.same_location(&q) {
            return Err(Error::degenerate(vec![0, 1], "coincident points have no bisector"));
        }
        Ok(BisectorFrame { p, q })
    }

    pub fn p(&self) -> Point {
        self.p
    }

    pub fn q(&self) -> Point {
        self.q
    }

    /// Parameter of the circumcenter of `p`, `q`, `x`. Fails when `x` is on
    /// the line through `p` and `q`.
    pub fn param(&self, x: &Point) -> Result<BisectorParam> {
        let (p, q) = (self.p, self.q);
        let side = orient_raw(&p, &q, x);
        if side == Sign::Zero {
            return Err(Error::degenerate(
                vec![],
                format!("third point ({}, {}) is collinear with the pair", x.x, x.y),
            ));
        }
        let n1 = (x.x - p.x) * (x.x - q.x);
        let n2 = (x.y - p.y) * (x.y - q.y);
        let d1 = (q.x - p.x) * (x.y - p.y);
        let d2 = (q.y - p.y) * (x.x - p.x);
        Ok(BisectorParam {
            p,
            q,
            x: *x,
            num: n1 + n2,
            den: d1 - d2,
            num_mag: n1.abs() + n2.abs(),
            den_mag: d1.abs() + d2.abs(),
            side,
        })
    }

    /// Exact total order of two circumcenters along the bisector.
    pub fn compare(&self, a: &BisectorParam, b: &BisectorParam) -> Ordering {
        a.cmp_exact(b)
    }
}

/// Circumcenter position on a bisector with an exact comparison.
#[derive(Clone, Copy, Debug)]
pub struct BisectorParam {
    p: Point,
    q: Point,
    x: Point,
    num: f64,
    den: f64,
    num_mag: f64,
    den_mag: f64,
    side: Sign,
}

impl BisectorParam {
    /// Rounded `t` in units of `perp(q - p)`.
    pub fn approx(&self) -> f64 {
        self.num / (2.0 * self.den)
    }

    /// Rounded signed distance of the center from the midpoint of `pq`.
    pub fn offset(&self) -> f64 {
        self.approx() * self.p.dist(&self.q)
    }

    /// Exact `t` in units of `perp(q - p)`.
    pub fn exact(&self) -> BigRational {
        let (n, d) = self.exact_parts();
        n / (d * BigRational::from_integer(2.into()))
    }

    /// Side of the directed line `p -> q` on which the third point lies.
    pub fn side(&self) -> Sign {
        self.side
    }

    fn exact_parts(&self) -> (BigRational, BigRational) {
        let (px, py) = (to_rational(self.p.x), to_rational(self.p.y));
        let (qx, qy) = (to_rational(self.q.x), to_rational(self.q.y));
        let (xx, xy) = (to_rational(self.x.x), to_rational(self.x.y));
        let n = (&xx - &px) * (&xx - &qx) + (&xy - &py) * (&xy - &qy);
        let d = (&qx - &px) * (&xy - &py) - (&qy - &py) * (&xx - &px);
        (n, d)
    }

    /// Exact order of two circumcenters on the same bisector.
    pub fn cmp_exact(&self, other: &BisectorParam) -> Ordering {
        // t_a - t_b = (N_a D_b - N_b D_a) / (2 D_a D_b)
        let lhs = self.num * other.den - other.num * self.den;
        let bound = 32.0 * EPS * (self.num_mag * other.den_mag + other.num_mag * self.den_mag);
        let s = filtered(lhs, bound).unwrap_or_else(|| {
            let (na, da) = self.exact_parts();
            let (nb, db) = other.exact_parts();
            let v = na * db - nb * da;
            if v.is_zero() {
                Sign::Zero
            } else {
                rational_sign(&v)
            }
        });
        let s = s.as_i32() * self.side.as_i32() * other.side.as_i32();
        s.cmp(&0)
    }
}
