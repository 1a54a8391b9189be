//! Generators, file formats, the experiment runner and the invariant suite.

pub mod experiment;
pub mod generate;
pub mod io;
pub mod verify;

pub use experiment::{run_experiment, write_outputs, Algorithm, ExperimentConfig, ExperimentGroup, ExperimentRecord};
pub use generate::{generate, GeneratorKind, GeneratorSpec, Instance};
pub use io::{points_from_json, points_to_json, read_points, read_polygon, write_points, write_polygon, PointsFile};
pub use verify::{profile_structure, run_verify, Check, VerifyReport};
