//! Disk depth of point pairs.

pub mod error;
pub mod geometry;
pub mod profile;
pub mod search;
pub mod convex;
pub mod diametral;
pub mod geodesic;
pub mod harness;

pub use error::{Error, Result};
