//! Batch runs over generated instances.
//!
//! A config lists groups of instances and the algorithms to run on each.
//! Cells run on the worker pool; records are collected in config order and
//! written once, so output order never depends on scheduling.

use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{generate, GeneratorKind, GeneratorSpec, Instance};
use crate::convex::{convex_pair, ConvexChain};
use crate::diametral::diametral_pair;
use crate::error::{Error, Result};
use crate::geodesic::{geodesic_random_pair_search, EstimatorOptions, GeodesicEstimator};
use crate::profile::Target;
use crate::search::{
    guaranteed_pair, maximize, random_pair_search, Chromatic, SearchConfig, SearchReport, Setting,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Exhaustive maximum of the two-sided depth.
    Maximize,
    /// Randomized search for the two-sided depth.
    Search,
    /// Exhaustive pair meeting the guaranteed bound.
    Guaranteed,
    ConvexPair,
    Diametral,
    GeoSearch,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Maximize => "maximize",
            Algorithm::Search => "search",
            Algorithm::Guaranteed => "guaranteed",
            Algorithm::ConvexPair => "convex-pair",
            Algorithm::Diametral => "diametral",
            Algorithm::GeoSearch => "geo-search",
        }
    }

    /// Reference ratio `value / n` for the plot data.
    pub fn reference_constant(self) -> f64 {
        match self {
            Algorithm::Maximize | Algorithm::Guaranteed => 1.0 / 4.7,
            Algorithm::ConvexPair | Algorithm::Diametral => 1.0 / 3.0,
            Algorithm::Search | Algorithm::GeoSearch => 1.0 / 10.9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentGroup {
    pub kind: GeneratorKind,
    pub n: Vec<usize>,
    pub seeds: Vec<u64>,
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub bichromatic: bool,
    #[serde(default)]
    pub perturbation: Option<f64>,
    #[serde(default)]
    pub vertices: Option<usize>,
    /// Success probability for the randomized searches.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Grid resolution for the geodesic search, relative to the polygon diameter.
    #[serde(default = "default_resolution")]
    pub resolution: f64,
}

fn default_alpha() -> f64 {
    0.5
}

fn default_resolution() -> f64 {
    1.0 / 40.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub groups: Vec<ExperimentGroup>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub generator: GeneratorSpec,
    pub algorithm: Algorithm,
    pub pair: (usize, usize),
    pub value: usize,
    pub threshold: usize,
    pub attempts: usize,
    pub certified: bool,
    pub wall_ms: f64,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    kind: GeneratorKind,
    n: usize,
    seed: u64,
    algorithm: &'a str,
    value: usize,
    threshold: usize,
    attempts: usize,
    ms: f64,
    certified: bool,
}

#[derive(Serialize)]
struct PlotRow<'a> {
    kind: GeneratorKind,
    algorithm: &'a str,
    n: usize,
    runs: usize,
    mean_ratio: f64,
    min_ratio: f64,
    reference: f64,
}

fn report_record(spec: &GeneratorSpec, algorithm: Algorithm, r: &SearchReport, target: Target) -> ExperimentRecord {
    ExperimentRecord {
        generator: *spec,
        algorithm,
        pair: r.pair,
        value: r.stats.get(target),
        threshold: r.threshold_used,
        attempts: r.attempts,
        certified: r.certified,
        wall_ms: 0.0,
    }
}

fn run_cell(inst: &Instance, group: &ExperimentGroup, algorithm: Algorithm) -> Result<ExperimentRecord> {
    let spec = &inst.spec;
    let pts = &inst.points;
    let chromatic = if group.bichromatic {
        Chromatic::Bichromatic
    } else {
        Chromatic::Mono
    };
    let cfg = SearchConfig {
        alpha: group.alpha,
        target: Target::CTilde,
        chromatic,
        seed: spec.seed,
        ..SearchConfig::default()
    };
    let start = Instant::now();
    let mut rec = match algorithm {
        Algorithm::Maximize => {
            let r = maximize(pts, Target::CTilde, chromatic)?;
            let mut rec = report_record(spec, algorithm, &r, Target::CTilde);
            rec.certified = rec.value >= rec.threshold;
            rec
        }
        Algorithm::Search => report_record(spec, algorithm, &random_pair_search(pts, &cfg)?, Target::CTilde),
        Algorithm::Guaranteed => report_record(spec, algorithm, &guaranteed_pair(pts, chromatic)?, Target::CTilde),
        Algorithm::ConvexPair => {
            let c = convex_pair(&ConvexChain::new(pts.clone())?)?;
            report_record(spec, algorithm, &c.report, Target::C)
        }
        Algorithm::Diametral => {
            let d = diametral_pair(pts, spec.seed)?;
            let threshold = pts.len().div_ceil(3);
            ExperimentRecord {
                generator: *spec,
                algorithm,
                pair: d.pair,
                value: d.count,
                threshold,
                attempts: d.candidates.len(),
                certified: d.count >= threshold,
                wall_ms: 0.0,
            }
        }
        Algorithm::GeoSearch => {
            let poly = inst
                .polygon
                .as_ref()
                .ok_or_else(|| Error::invalid(format!("{:?} instances have no polygon", spec.kind)))?;
            let est = GeodesicEstimator::new(poly, pts, EstimatorOptions::default())?;
            let cfg = SearchConfig {
                setting: Setting::Polygon,
                ..cfg
            };
            let h = group.resolution * poly.diameter();
            report_record(spec, algorithm, &geodesic_random_pair_search(&est, &cfg, h)?, Target::CTilde)
        }
    };
    rec.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(rec)
}

/// Runs every (instance, algorithm) cell of the config.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    let mut cells = Vec::new();
    for (g, group) in config.groups.iter().enumerate() {
        for &n in &group.n {
            for &seed in &group.seeds {
                let mut spec = GeneratorSpec::new(group.kind, n, seed);
                spec.bichromatic = group.bichromatic;
                spec.vertices = group.vertices;
                if let Some(eps) = group.perturbation {
                    spec.perturbation = eps;
                }
                cells.push((g, spec));
            }
        }
    }
    let instances: Vec<(usize, Instance)> = cells
        .par_iter()
        .map(|(g, spec)| Ok((*g, generate(spec)?)))
        .collect::<Result<_>>()?;
    let jobs: Vec<(&Instance, &ExperimentGroup, Algorithm)> = instances
        .iter()
        .flat_map(|(g, inst)| {
            let group = &config.groups[*g];
            group.algorithms.iter().map(move |&a| (inst, group, a))
        })
        .collect();
    jobs.par_iter()
        .map(|(inst, group, a)| run_cell(inst, group, *a))
        .collect()
}

/// Writes `records.json`, `results.csv` and `plot.csv` into `dir`.
pub fn write_outputs(dir: impl AsRef<Path>, records: &[ExperimentRecord]) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    fs::write(dir.join("records.json"), serde_json::to_string_pretty(records)? + "\n")?;

    let mut csv = csv::Writer::from_path(dir.join("results.csv"))?;
    for r in records {
        csv.serialize(CsvRow {
            kind: r.generator.kind,
            n: r.generator.n,
            seed: r.generator.seed,
            algorithm: r.algorithm.name(),
            value: r.value,
            threshold: r.threshold,
            attempts: r.attempts,
            ms: r.wall_ms,
            certified: r.certified,
        })?;
    }
    csv.flush()?;

    let mut groups: Vec<((GeneratorKind, Algorithm, usize), Vec<f64>)> = Vec::new();
    for r in records {
        let key = (r.generator.kind, r.algorithm, r.generator.n);
        let ratio = r.value as f64 / r.generator.n as f64;
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(ratio),
            None => groups.push((key, vec![ratio])),
        }
    }
    let mut plot = csv::Writer::from_path(dir.join("plot.csv"))?;
    for ((kind, algorithm, n), ratios) in &groups {
        plot.serialize(PlotRow {
            kind: *kind,
            algorithm: algorithm.name(),
            n: *n,
            runs: ratios.len(),
            mean_ratio: ratios.iter().sum::<f64>() / ratios.len() as f64,
            min_ratio: ratios.iter().copied().fold(f64::INFINITY, f64::min),
            reference: algorithm.reference_constant(),
        })?;
    }
    plot.flush()?;
    Ok(())
}
