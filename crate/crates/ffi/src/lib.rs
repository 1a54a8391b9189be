//! C interface to `diskdepth`.
//!
//! Every fallible function returns a [`DdStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and
//! read with [`dd_last_error_message`]. Point sets and polygons are opaque
//! handles released with their `_free` function. Panics never cross the
//! boundary; they come back as `DD_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use diskdepth::convex::{convex_pair, ConvexChain};
use diskdepth::diametral::diametral_pair;
use diskdepth::geodesic::{geodesic_distance, EstimatorOptions, GeodesicEstimator, SimplePolygon};
use diskdepth::geometry::{Colour, Point};
use diskdepth::profile::{brute_force_c_pair, c_pair, PairStats, Target};
use diskdepth::search::{
    decide_k, maximize, random_pair_search, Chromatic, Mode, SearchConfig, SearchReport, Setting,
};
use diskdepth::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DdStatus {
    Ok = 0,
    InvalidInput = 1,
    Degenerate = 2,
    Consistency = 3,
    Io = 4,
    NullPointer = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DdTarget {
    C = 0,
    CTilde = 1,
}

impl From<DdTarget> for Target {
    fn from(t: DdTarget) -> Self {
        match t {
            DdTarget::C => Target::C,
            DdTarget::CTilde => Target::CTilde,
        }
    }
}

/// Colour codes for [`dd_point_set_new`].
pub const DD_COLOUR_NONE: i32 = 0;
pub const DD_COLOUR_RED: i32 = 1;
pub const DD_COLOUR_BLUE: i32 = 2;

pub struct DdPointSet {
    points: Vec<Point>,
}

pub struct DdPolygon {
    poly: SimplePolygon,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DdPairStats {
    pub c: usize,
    pub c_tilde: usize,
}

impl From<PairStats> for DdPairStats {
    fn from(s: PairStats) -> Self {
        DdPairStats {
            c: s.c,
            c_tilde: s.c_tilde,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DdSearchReport {
    pub p: usize,
    pub q: usize,
    pub stats: DdPairStats,
    pub attempts: usize,
    pub threshold_used: usize,
    pub accepted: bool,
    pub certified: bool,
}

impl From<SearchReport> for DdSearchReport {
    fn from(r: SearchReport) -> Self {
        DdSearchReport {
            p: r.pair.0,
            q: r.pair.1,
            stats: r.stats.into(),
            attempts: r.attempts,
            threshold_used: r.threshold_used,
            accepted: r.accepted,
            certified: r.certified,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DdSearchConfig {
    pub alpha: f64,
    pub target: DdTarget,
    pub bichromatic: bool,
    /// Stop after the high-probability budget instead of the expected one.
    pub high_probability: bool,
    pub seed: u64,
    /// 0 keeps the default budget.
    pub max_attempts: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DdDiametral {
    pub p: usize,
    pub q: usize,
    pub count: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DdGeodesicEstimate {
    pub upper_bound: usize,
    /// `SIZE_MAX` when no bisector sample was found.
    pub upper_bound_tilde: usize,
    pub samples_evaluated: usize,
    pub witness_x: f64,
    pub witness_y: f64,
    pub witness_radius: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DdStatus {
    match e {
        Error::InvalidInput(_) => DdStatus::InvalidInput,
        Error::Degenerate { .. } => DdStatus::Degenerate,
        Error::Consistency(_) => DdStatus::Consistency,
        Error::Io(_) | Error::Json(_) | Error::Csv(_) => DdStatus::Io,
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Error>) -> DdStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DdStatus::Ok,
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            DdStatus::Panic
        }
    }
}

macro_rules! nonnull {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            set_error(format!("null pointer: {}", stringify!($p)));
            return DdStatus::NullPointer;
        })+
    };
}

/// Message of the last failed call on this thread, or NULL. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn dd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a point set from `n` interleaved `x, y` pairs. `colours` may be
/// NULL or hold `n` colour codes.
///
/// # Safety
/// `xy` must point to `2 * n` doubles, `colours` (if not NULL) to `n` ints.
#[no_mangle]
pub unsafe extern "C" fn dd_point_set_new(
    xy: *const f64,
    colours: *const i32,
    n: usize,
    out: *mut *mut DdPointSet,
) -> DdStatus {
    nonnull!(xy, out);
    guard(|| {
        let xy = std::slice::from_raw_parts(xy, 2 * n);
        let cs = (!colours.is_null()).then(|| std::slice::from_raw_parts(colours, n));
        let mut points = Vec::with_capacity(n);
        for i in 0..n {
            let mut p = Point::new(xy[2 * i], xy[2 * i + 1]);
            if let Some(cs) = cs {
                p.colour = match cs[i] {
                    DD_COLOUR_NONE => None,
                    DD_COLOUR_RED => Some(Colour::Red),
                    DD_COLOUR_BLUE => Some(Colour::Blue),
                    c => return Err(Error::InvalidInput(format!("unknown colour code {c} at {i}"))),
                };
            }
            points.push(p);
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidInput(format!("point {i} is not finite")));
        }
        *out = Box::into_raw(Box::new(DdPointSet { points }));
        Ok(())
    })
}

/// # Safety
/// `set` must come from [`dd_point_set_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dd_point_set_free(set: *mut DdPointSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// # Safety
/// `set` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn dd_point_set_len(set: *const DdPointSet) -> usize {
    set.as_ref().map_or(0, |s| s.points.len())
}

/// Depth of the pair `(p, q)` by the bisector sweep, or by the brute-force
/// oracle when `oracle` is set.
///
/// # Safety
/// `set` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dd_c_pair(
    set: *const DdPointSet,
    p: usize,
    q: usize,
    oracle: bool,
    out: *mut DdPairStats,
) -> DdStatus {
    nonnull!(set, out);
    guard(|| {
        let pts = &(*set).points;
        let s = if oracle {
            brute_force_c_pair(pts, p, q)?
        } else {
            c_pair(pts, p, q)?
        };
        *out = s.into();
        Ok(())
    })
}

/// # Safety
/// `set` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dd_maximize(
    set: *const DdPointSet,
    target: DdTarget,
    bichromatic: bool,
    out: *mut DdSearchReport,
) -> DdStatus {
    nonnull!(set, out);
    guard(|| {
        let chromatic = if bichromatic {
            Chromatic::Bichromatic
        } else {
            Chromatic::Mono
        };
        *out = maximize(&(*set).points, target.into(), chromatic)?.into();
        Ok(())
    })
}

/// Writes a pair of depth at least `k` and sets `*found`, or clears it.
///
/// # Safety
/// `set` must be a live handle; `found` and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dd_decide_k(
    set: *const DdPointSet,
    k: usize,
    target: DdTarget,
    bichromatic: bool,
    found: *mut bool,
    p: *mut usize,
    q: *mut usize,
) -> DdStatus {
    nonnull!(set, found, p, q);
    guard(|| {
        let chromatic = if bichromatic {
            Chromatic::Bichromatic
        } else {
            Chromatic::Mono
        };
        match decide_k(&(*set).points, k, target.into(), chromatic)? {
            Some((a, b)) => {
                *found = true;
                *p = a;
                *q = b;
            }
            None => *found = false,
        }
        Ok(())
    })
}

/// Randomized planar search.
///
/// # Safety
/// `set` and `cfg` must be valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dd_random_pair_search(
    set: *const DdPointSet,
    cfg: *const DdSearchConfig,
    out: *mut DdSearchReport,
) -> DdStatus {
    nonnull!(set, cfg, out);
    guard(|| {
        let c = &*cfg;
        let cfg = SearchConfig {
            alpha: c.alpha,
            target: c.target.into(),
            setting: Setting::Plane,
            chromatic: if c.bichromatic {
                Chromatic::Bichromatic
            } else {
                Chromatic::Mono
            },
            mode: if c.high_probability {
                Mode::HighProbability
            } else {
                Mode::ExpectedTime
            },
            seed: c.seed,
            max_attempts: (c.max_attempts > 0).then_some(c.max_attempts),
        };
        *out = random_pair_search(&(*set).points, &cfg)?.into();
        Ok(())
    })
}

/// Pair for points given in counterclockwise convex position.
///
/// # Safety
/// `set` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dd_convex_pair(set: *const DdPointSet, out: *mut DdSearchReport) -> DdStatus {
    nonnull!(set, out);
    guard(|| {
        let chain = ConvexChain::new((*set).points.clone())?;
        *out = convex_pair(&chain)?.report.into();
        Ok(())
    })
}

/// # Safety
/// `set` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dd_diametral_pair(set: *const DdPointSet, seed: u64, out: *mut DdDiametral) -> DdStatus {
    nonnull!(set, out);
    guard(|| {
        let d = diametral_pair(&(*set).points, seed)?;
        *out = DdDiametral {
            p: d.pair.0,
            q: d.pair.1,
            count: d.count,
        };
        Ok(())
    })
}

/// Polygon from `m` interleaved counterclockwise vertices.
///
/// # Safety
/// `xy` must point to `2 * m` doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dd_polygon_new(xy: *const f64, m: usize, out: *mut *mut DdPolygon) -> DdStatus {
    nonnull!(xy, out);
    guard(|| {
        let xy = std::slice::from_raw_parts(xy, 2 * m);
        let verts = xy.chunks_exact(2).map(|c| Point::new(c[0], c[1])).collect();
        *out = Box::into_raw(Box::new(DdPolygon {
            poly: SimplePolygon::new(verts)?,
        }));
        Ok(())
    })
}

/// # Safety
/// `poly` must come from [`dd_polygon_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dd_polygon_free(poly: *mut DdPolygon) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dd_geodesic_distance(
    poly: *const DdPolygon,
    ax: f64,
    ay: f64,
    bx: f64,
    by: f64,
    out: *mut f64,
) -> DdStatus {
    nonnull!(poly, out);
    guard(|| {
        *out = geodesic_distance(&(*poly).poly, &Point::new(ax, ay), &Point::new(bx, by))?;
        Ok(())
    })
}

/// Upper bound on the geodesic depth of `(p, q)` at grid resolution `h`.
///
/// # Safety
/// `poly` and `set` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dd_geodesic_c_pair_upper(
    poly: *const DdPolygon,
    set: *const DdPointSet,
    p: usize,
    q: usize,
    h: f64,
    out: *mut DdGeodesicEstimate,
) -> DdStatus {
    nonnull!(poly, set, out);
    guard(|| {
        let est = GeodesicEstimator::new(&(*poly).poly, &(*set).points, EstimatorOptions::default())?;
        let e = est.estimate(p, q, h)?;
        *out = DdGeodesicEstimate {
            upper_bound: e.upper_bound,
            upper_bound_tilde: e.upper_bound_tilde.unwrap_or(usize::MAX),
            samples_evaluated: e.samples_evaluated,
            witness_x: e.witness.center.x,
            witness_y: e.witness.center.y,
            witness_radius: e.witness.radius,
        };
        Ok(())
    })
}
