use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geodesic::SimplePolygon;
use crate::geometry::Point;

/// `{"points":[{"x":..,"y":..,"colour":"red"|"blue"|null}, ..]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointsFile {
    pub points: Vec<Point>,
}

pub fn points_from_json(text: &str) -> Result<Vec<Point>> {
    let f: PointsFile = serde_json::from_str(text)?;
    Ok(f.points)
}

/// Canonical form: compact, shortest round-trip decimals.
pub fn points_to_json(points: &[Point]) -> String {
    serde_json::to_string(&PointsFile {
        points: points.to_vec(),
    })
    .expect("plain data serializes")
}

pub fn read_points(path: impl AsRef<Path>) -> Result<Vec<Point>> {
    points_from_json(&fs::read_to_string(path)?)
}

pub fn write_points(path: impl AsRef<Path>, points: &[Point]) -> Result<()> {
    Ok(fs::write(path, points_to_json(points) + "\n")?)
}

pub fn read_polygon(path: impl AsRef<Path>) -> Result<SimplePolygon> {
    SimplePolygon::from_json(&fs::read_to_string(path)?)
}

pub fn write_polygon(path: impl AsRef<Path>, poly: &SimplePolygon) -> Result<()> {
    Ok(fs::write(path, poly.to_json() + "\n")?)
}
