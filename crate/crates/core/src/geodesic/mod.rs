//! Disks inside a simple polygon under the shortest-path metric.

mod estimate;
mod path;
mod polygon;
pub mod visibility;

pub use estimate::{
    count_tolerance, geodesic_c_pair_upper, geodesic_random_pair_search, EstimatorOptions,
    GeodesicEstimate, GeodesicEstimator, WitnessDisk,
};
pub use path::{check_geodesic_position, geodesic_distance, geodesic_disk_contains, shortest_path, side_of_geodesic, GeodesicPath};
pub use polygon::SimplePolygon;
