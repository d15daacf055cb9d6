use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use curveprox::harness::bench::{self, BenchOptions, Suite};
use curveprox::harness::render::{render_replan, render_scene};
use curveprox::harness::replan::{run_replan, ReplanSpec};
use curveprox::harness::scene::{self, QueryKind, QueryReport, Scene, SceneQuery};
use curveprox::harness::{trace_csv, OutputMode};
use curveprox::io::{from_json, CurveDoc, ObstacleDoc};
use curveprox::oracle::{sampled_arc_length, sampled_min_distance, sampled_min_distance_curves, Sampled};
use curveprox::{with_dimension, Curve, Error, Interval, QueryConfig, Result};

#[derive(Parser)]
#[command(name = "curveprox", version, about = "Certified distance, tolerance and collision queries for parametric curves")]
struct Cli {
    /// Absolute accuracy of the distance bounds.
    #[arg(long, global = true, default_value_t = 1e-10)]
    epsilon: f64,

    /// Safety margin for tolerance queries and the replanning demo.
    #[arg(long, global = true)]
    delta: Option<f64>,

    /// Seed for the replanning demo's sampler.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    output: OutputMode,

    /// Write the per-iteration bounds as CSV.
    #[arg(long, global = true, value_name = "PATH")]
    trace: Option<PathBuf>,

    /// Worker threads for replan and oracle runs.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Leave wall-clock columns out of the output.
    #[arg(long, global = true)]
    no_timing: bool,

    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_iterations: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pair {
    /// Curve document (JSON).
    #[arg(long)]
    curve: PathBuf,
    /// Convex obstacle document (JSON).
    #[arg(long, conflicts_with = "other", required_unless_present = "other")]
    obstacle: Option<PathBuf>,
    /// Second curve document (JSON).
    #[arg(long)]
    other: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum distance between a curve and an obstacle or second curve.
    Mindist(Pair),
    /// Whether the distance exceeds --delta.
    Tolerance(Pair),
    /// Whether the curve touches the obstacle or second curve.
    Collide(Pair),
    /// Run every query of a scene file.
    Scene {
        path: PathBuf,
        /// Also draw the scene with witness segments.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Classify random Bézier paths as colliding, unsafe or feasible.
    Replan {
        /// Spec file; the built-in two-obstacle demo when omitted.
        spec: Option<PathBuf>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Timing and iteration statistics as CSV.
    Bench {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        repetitions: usize,
        /// Only this instance.
        #[arg(long)]
        instance: Option<String>,
        /// Only this algorithm.
        #[arg(long)]
        algorithm: Option<String>,
    },
    /// Brute-force reference values on uniform parameter grids.
    Oracle {
        #[command(flatten)]
        pair: Pair,
        /// Grid size (per curve for curve pairs).
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Chord-sum arc length of a curve over [lo, hi].
    OracleArc {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        interval: Option<Vec<f64>>,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Draw a scene as SVG.
    Render {
        scene: PathBuf,
        #[arg(value_name = "OUTPUT")]
        svg: PathBuf,
        /// Draw hulls of each curve cut into 2^DEPTH pieces.
        #[arg(long, value_name = "DEPTH")]
        hulls: Option<u32>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        e => e,
    })
}

fn load_curve(path: &Path) -> Result<CurveDoc> {
    in_file(path, from_json(&read(path)?))
}

fn load_obstacle(path: &Path) -> Result<ObstacleDoc> {
    in_file(path, from_json(&read(path)?))
}

/// Wraps a single query into a one-query scene.
fn pair_scene(pair: &Pair, kind: QueryKind, delta: Option<f64>) -> Result<Scene> {
    let mut scene = Scene::default();
    scene.curves.insert("curve".into(), load_curve(&pair.curve)?);
    let target = match (&pair.obstacle, &pair.other) {
        (Some(o), _) => {
            scene.obstacles.insert("obstacle".into(), load_obstacle(o)?);
            "obstacle"
        }
        (None, Some(c)) => {
            scene.curves.insert("other".into(), load_curve(c)?);
            "other"
        }
        (None, None) => return Err(Error::InvalidConfig("need --obstacle or --other".into())),
    };
    scene.queries.push(SceneQuery {
        kind,
        subject: "curve".into(),
        target: target.into(),
        delta,
    });
    scene.validate()?;
    Ok(scene)
}

fn print_reports(reports: &[QueryReport], mode: OutputMode) {
    let text = match mode {
        OutputMode::Text => scene::reports_text(reports),
        OutputMode::Json => scene::reports_json(reports),
        OutputMode::Csv => scene::reports_csv(reports),
    };
    print!("{text}");
}

fn write_traces(path: &Path, reports: &[QueryReport]) -> Result<()> {
    let traced: Vec<&QueryReport> = reports.iter().filter(|r| r.trace.is_some()).collect();
    for r in &traced {
        let target = if traced.len() == 1 {
            path.to_path_buf()
        } else {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("trace");
            let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("csv");
            path.with_file_name(format!("{stem}.{}.{ext}", r.index))
        };
        write(&target, &trace_csv(r.trace.as_deref().unwrap_or_default()))?;
    }
    Ok(())
}

fn run_scene(cli: &Cli, scene: &Scene, cfg: &QueryConfig, svg: Option<&Path>) -> Result<u8> {
    let reports = scene.run(cfg, !cli.no_timing);
    print_reports(&reports, cli.output);
    if let Some(path) = &cli.trace {
        write_traces(path, &reports)?;
    }
    if let Some(path) = svg {
        write(path, &render_scene(scene, &reports, None)?)?;
    }
    for r in &reports {
        if let Some(msg) = &r.error {
            eprintln!("query {}: {msg}", r.index);
        }
    }
    Ok(scene::exit_code(&reports))
}

fn print_sampled(s: &Sampled, mode: OutputMode) {
    let params: Vec<f64> = std::iter::once(s.params.0).chain(s.params.1).collect();
    match mode {
        OutputMode::Text => println!("sampled minimum {:?} (overestimates by at most {:?}) at {params:?}", s.value, s.slack),
        OutputMode::Json => println!(
            "{}",
            serde_json::json!({"value": s.value, "slack": s.slack, "params": params})
        ),
        OutputMode::Csv => {
            println!("value,slack");
            println!("{:?},{:?}", s.value, s.slack);
        }
    }
}

fn run_oracle(pair: &Pair, samples: Option<usize>) -> Result<Sampled> {
    let doc = load_curve(&pair.curve)?;
    with_dimension!(doc.dimension, D => {
        let curve: Curve<D> = doc.to_curve()?;
        match (&pair.obstacle, &pair.other) {
            (Some(o), _) => {
                let o = load_obstacle(o)?.to_obstacle::<D>()?;
                sampled_min_distance(&curve, &o, samples.unwrap_or(1_000_000))
            }
            (None, Some(c)) => {
                let other: Curve<D> = load_curve(c)?.to_curve()?;
                sampled_min_distance_curves(&curve, &other, samples.unwrap_or(1000))
            }
            (None, None) => Err(Error::InvalidConfig("need --obstacle or --other".into())),
        }
    })
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}"))),
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let cfg = QueryConfig {
        epsilon: cli.epsilon,
        max_iterations: cli.max_iterations,
        record_trace: cli.trace.is_some(),
    };
    cfg.validate()?;
    match &cli.command {
        Command::Mindist(pair) => run_scene(cli, &pair_scene(pair, QueryKind::Mindist, None)?, &cfg, None),
        Command::Tolerance(pair) => {
            let delta = cli
                .delta
                .ok_or_else(|| Error::InvalidConfig("tolerance needs --delta".into()))?;
            run_scene(cli, &pair_scene(pair, QueryKind::Tolerance, Some(delta))?, &cfg, None)
        }
        Command::Collide(pair) => run_scene(cli, &pair_scene(pair, QueryKind::Collide, None)?, &cfg, None),
        Command::Scene { path, svg } => {
            let scene = in_file(path, Scene::parse(&read(path)?))?;
            run_scene(cli, &scene, &cfg, svg.as_deref())
        }
        Command::Replan { spec, samples, svg } => {
            let mut spec = match spec {
                Some(p) => in_file(p, from_json::<ReplanSpec>(&read(p)?))?,
                None => ReplanSpec::demo(),
            };
            if let Some(n) = samples {
                spec.sample_count = *n;
            }
            if let Some(seed) = cli.seed {
                spec.distribution.seed = seed;
            }
            if let Some(d) = cli.delta {
                spec.delta = d;
            }
            let start = std::time::Instant::now();
            let summary = run_replan(&spec, &cfg, cli.jobs)?;
            let elapsed = start.elapsed();
            match cli.output {
                OutputMode::Text => {
                    println!(
                        "{} samples: {} colliding, {} unsafe, {} feasible",
                        summary.samples, summary.colliding, summary.unsafe_, summary.feasible
                    );
                    if summary.undecided_queries > 0 {
                        println!("{} undecided queries resolved pessimistically", summary.undecided_queries);
                    }
                    if !cli.no_timing {
                        println!("{:.3} ms", elapsed.as_secs_f64() * 1e3);
                    }
                }
                OutputMode::Json => println!("{}", serde_json::to_string_pretty(&summary).expect("serializable")),
                OutputMode::Csv => {
                    println!("sample,class");
                    for s in &summary.details {
                        println!("{},{}", s.index, serde_json::to_value(s.class).expect("serializable").as_str().unwrap_or(""));
                    }
                }
            }
            if let Some(path) = svg {
                write(path, &render_replan(&spec, &summary)?)?;
            }
            Ok(if summary.undecided_queries > 0 { 3 } else { 0 })
        }
        Command::Bench {
            suite,
            repetitions,
            instance,
            algorithm,
        } => {
            let opts = BenchOptions {
                repetitions: *repetitions,
                timing: !cli.no_timing,
                instance: instance.clone(),
                algorithm: algorithm.clone(),
            };
            let rows = bench::run_bench(*suite, &opts, &cfg)?;
            match cli.output {
                OutputMode::Json => println!("{}", serde_json::to_string_pretty(&rows).expect("serializable")),
                _ => print!("{}", bench::rows_csv(&rows)),
            }
            Ok(0)
        }
        Command::Oracle { pair, samples } => {
            let s = with_pool(cli.jobs, || run_oracle(pair, *samples))??;
            print_sampled(&s, cli.output);
            Ok(0)
        }
        Command::OracleArc { curve, interval, samples } => {
            let doc = load_curve(curve)?;
            let value = with_dimension!(doc.dimension, D => {
                let c: Curve<D> = doc.to_curve()?;
                let q = match interval.as_deref() {
                    Some([lo, hi]) => Interval::new(*lo, *hi)?,
                    _ => c.domain(),
                };
                sampled_arc_length(&c, q, *samples)
            })?;
            match cli.output {
                OutputMode::Json => println!("{}", serde_json::json!({ "chord_sum": value })),
                OutputMode::Csv => println!("chord_sum\n{value:?}"),
                OutputMode::Text => println!("chord sum {value:?}"),
            }
            Ok(0)
        }
        Command::Render { scene, svg, hulls } => {
            let s = in_file(scene, Scene::parse(&read(scene)?))?;
            let reports = s.run(&cfg, false);
            write(svg, &render_scene(&s, &reports, *hulls)?)?;
            Ok(scene::exit_code(&reports))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Indeterminate { .. } | Error::GjkIterationLimit { .. } => 3,
                e if e.is_input_error() => 2,
                _ => 1,
            })
        }
    }
}
