use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use diskdepth::convex::{convex_pair, ConvexChain};
use diskdepth::diametral::diametral_pair;
use diskdepth::geodesic::{
    check_geodesic_position, geodesic_random_pair_search, shortest_path, EstimatorOptions,
    GeodesicEstimator,
};
use diskdepth::geometry::Point;
use diskdepth::harness::{
    generate, read_points, read_polygon, run_experiment, run_verify, write_outputs, write_points,
    write_polygon, ExperimentConfig, GeneratorKind, GeneratorSpec,
};
use diskdepth::profile::{brute_force_c_pair, c_pair, weight_profile, Target};
use diskdepth::search::{decide_k, maximize, random_pair_search, Chromatic, Mode, SearchConfig, Setting};
use diskdepth::Error;

#[derive(Parser)]
#[command(name = "diskdepth", version, about = "Disk depth of point pairs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    UniformSquare,
    ConvexChain,
    RegularNgon,
    TwoCluster,
    PolygonUniform,
    PolygonConvex,
}

impl From<KindArg> for GeneratorKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::UniformSquare => GeneratorKind::UniformSquare,
            KindArg::ConvexChain => GeneratorKind::ConvexChain,
            KindArg::RegularNgon => GeneratorKind::RegularNgon,
            KindArg::TwoCluster => GeneratorKind::TwoCluster,
            KindArg::PolygonUniform => GeneratorKind::PolygonUniform,
            KindArg::PolygonConvex => GeneratorKind::PolygonConvex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    C,
    Ctilde,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::C => Target::C,
            TargetArg::Ctilde => Target::CTilde,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Expected,
    HighProbability,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "expected")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "ctilde")]
    target: TargetArg,
    #[arg(long)]
    bichromatic: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_attempts: Option<usize>,
}

impl SearchArgs {
    fn config(&self, setting: Setting) -> SearchConfig {
        SearchConfig {
            alpha: self.alpha,
            target: self.target.into(),
            setting,
            chromatic: chromatic(self.bichromatic),
            mode: match self.mode {
                ModeArg::Expected => Mode::ExpectedTime,
                ModeArg::HighProbability => Mode::HighProbability,
            },
            seed: self.seed,
            max_attempts: self.max_attempts,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance; prints the points file unless --out is given.
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        epsilon: f64,
        #[arg(long)]
        bichromatic: bool,
        /// Polygon vertex count for the polygon kinds.
        #[arg(long)]
        vertices: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        polygon_out: Option<PathBuf>,
    },
    /// Depth of one pair.
    Cpair {
        #[command(flatten)]
        pair: PairArgs,
        /// Use the brute-force oracle instead of the sweep.
        #[arg(long)]
        oracle: bool,
    },
    /// Weight profile along the pair's bisector.
    Profile {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Randomized search for a deep pair.
    Search {
        #[arg(long)]
        points: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Deepest pair over all pairs.
    Maximize {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, value_enum, default_value = "ctilde")]
        target: TargetArg,
        #[arg(long)]
        bichromatic: bool,
    },
    /// A pair of depth at least k, if any.
    Decide {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "ctilde")]
        target: TargetArg,
        #[arg(long)]
        bichromatic: bool,
    },
    /// Pair from the farthest-point Voronoi diagram of points in convex position.
    ConvexPair {
        #[arg(long)]
        points: PathBuf,
        /// Assert that the points are listed in counterclockwise hull order.
        #[arg(long)]
        convex_order: bool,
    },
    /// Pair whose diametral disk holds a third of the points.
    Diametral {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Shortest path inside a polygon.
    GeoPath {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        from: Point,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        to: Point,
    },
    /// Upper bound on the geodesic depth of one pair.
    GeoCpair {
        #[arg(long)]
        polygon: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        resolution: f64,
        #[arg(long, default_value_t = 3)]
        refine_rounds: usize,
    },
    /// Randomized search inside a polygon.
    GeoSearch {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        resolution: f64,
        #[arg(long, default_value_t = 3)]
        refine_rounds: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Run the invariant suite; exits 2 if any check fails.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run an experiment config and write records.json, results.csv, plot.csv.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "experiment-out")]
        out: PathBuf,
    },
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or("expected x,y")?;
    let x: f64 = x.trim().parse().map_err(|e| format!("{e}"))?;
    let y: f64 = y.trim().parse().map_err(|e| format!("{e}"))?;
    Ok(Point::new(x, y))
}

fn chromatic(bi: bool) -> Chromatic {
    if bi {
        Chromatic::Bichromatic
    } else {
        Chromatic::Mono
    }
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(text: &str) -> diskdepth::Result<()> {
    use std::io::Write;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn print(v: &impl Serialize) -> diskdepth::Result<()> {
    emit(&serde_json::to_string_pretty(v)?)
}

enum Failure {
    Usage(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Gen {
            kind,
            n,
            seed,
            epsilon,
            bichromatic,
            vertices,
            out,
            polygon_out,
        } => {
            let spec = GeneratorSpec {
                kind: kind.into(),
                n,
                seed,
                perturbation: epsilon,
                bichromatic,
                vertices,
            };
            let inst = generate(&spec)?;
            match out {
                Some(path) => write_points(path, &inst.points)?,
                None => emit(&diskdepth::harness::points_to_json(&inst.points))?,
            }
            match (&inst.polygon, polygon_out) {
                (Some(poly), Some(path)) => write_polygon(path, poly)?,
                (Some(poly), None) => emit(&poly.to_json())?,
                _ => {}
            }
        }
        Cmd::Cpair { pair, oracle } => {
            let pts = read_points(&pair.points)?;
            let stats = if oracle {
                brute_force_c_pair(&pts, pair.p, pair.q)?
            } else {
                c_pair(&pts, pair.p, pair.q)?
            };
            print(&stats)?;
        }
        Cmd::Profile { pair } => {
            let pts = read_points(&pair.points)?;
            let w = weight_profile(&pts, pair.p, pair.q)?;
            #[derive(Serialize)]
            struct Out {
                pair: (usize, usize),
                weights: Vec<usize>,
                order: Vec<usize>,
                offsets: Vec<f64>,
            }
            print(&Out {
                pair: w.pair,
                weights: w.weights.clone(),
                order: w.events.iter().map(|e| e.third).collect(),
                offsets: w.events.iter().map(|e| e.parameter.offset()).collect(),
            })?;
        }
        Cmd::Search { points, search } => {
            let pts = read_points(points)?;
            print(&random_pair_search(&pts, &search.config(Setting::Plane))?)?;
        }
        Cmd::Maximize {
            points,
            target,
            bichromatic,
        } => {
            let pts = read_points(points)?;
            print(&maximize(&pts, target.into(), chromatic(bichromatic))?)?;
        }
        Cmd::Decide {
            points,
            k,
            target,
            bichromatic,
        } => {
            let pts = read_points(points)?;
            print(&decide_k(&pts, k, target.into(), chromatic(bichromatic))?)?;
        }
        Cmd::ConvexPair { points, convex_order } => {
            if !convex_order {
                return Err(Failure::Usage(
                    "convex-pair needs --convex-order to assert counterclockwise hull order".into(),
                ));
            }
            let chain = ConvexChain::new(read_points(points)?)?;
            print(&convex_pair(&chain)?)?;
        }
        Cmd::Diametral { points, seed } => {
            let pts = read_points(points)?;
            print(&diametral_pair(&pts, seed)?)?;
        }
        Cmd::GeoPath { polygon, from, to } => {
            let poly = read_polygon(polygon)?;
            print(&shortest_path(&poly, &from, &to)?)?;
        }
        Cmd::GeoCpair {
            polygon,
            pair,
            resolution,
            refine_rounds,
        } => {
            let poly = read_polygon(polygon)?;
            let pts = read_points(&pair.points)?;
            check_geodesic_position(&poly, &pts)?;
            let opts = EstimatorOptions {
                refine_rounds,
                ..EstimatorOptions::default()
            };
            let est = GeodesicEstimator::new(&poly, &pts, opts)?;
            print(&est.estimate(pair.p, pair.q, resolution)?)?;
        }
        Cmd::GeoSearch {
            polygon,
            points,
            resolution,
            refine_rounds,
            search,
        } => {
            let poly = read_polygon(polygon)?;
            let pts = read_points(points)?;
            let opts = EstimatorOptions {
                refine_rounds,
                ..EstimatorOptions::default()
            };
            let est = GeodesicEstimator::new(&poly, &pts, opts)?;
            print(&geodesic_random_pair_search(&est, &search.config(Setting::Polygon), resolution)?)?;
        }
        Cmd::Verify { seed } => {
            let report = run_verify(seed);
            for c in &report.checks {
                emit(&format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))?;
            }
            if !report.all_passed() {
                return Err(Failure::Invariant("invariant suite failed".into()));
            }
        }
        Cmd::Experiment { config, out } => {
            let text = std::fs::read_to_string(&config).map_err(Error::from)?;
            let cfg = ExperimentConfig::from_json(&text)?;
            let records = run_experiment(&cfg)?;
            write_outputs(&out, &records)?;
            let bad = records.iter().filter(|r| r.certified && r.value < r.threshold).count();
            eprintln!("{} records written to {}", records.len(), out.display());
            if bad > 0 {
                return Err(Failure::Invariant(format!("{bad} certified records below threshold")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Ok(t) = std::env::var("DISKDEPTH_THREADS") {
        match t.parse::<usize>() {
            Ok(k) if k > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            _ => {
                eprintln!("error: DISKDEPTH_THREADS must be a positive integer, got {t:?}");
                return ExitCode::from(1);
            }
        }
    }
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(m)) => {
            eprintln!("invariant failure: {m}");
            ExitCode::from(2)
        }
    }
}
