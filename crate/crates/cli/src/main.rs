mod svg;

use std::fs;
use std::io::{self, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use orthocircles::arrangement::{face_histogram, nesting_forest, planarize, ArrangementError};
use orthocircles::audit::run_audit;
use orthocircles::file::{ArrangementFile, Meta};
use orthocircles::generators::{gen_random, generate, Family, FamilySpec};
use orthocircles::geom::{invert_gcircle, GeneralizedCircle};
use orthocircles::graphs::{degree_stats, intersection_graph};
use orthocircles::{validate, Arrangement, Circle, Point, Tolerance};

#[derive(Parser)]
#[command(
    name = "orthocircles",
    version,
    about = "Build, check and draw arrangements of orthogonal circles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated family as an arrangement file.
    Generate {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        /// Number of circles.
        #[arg(long)]
        n: Option<usize>,
        /// Number of chains (chain-grid only).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Validate a file and print face and graph statistics.
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
    },
    /// Check every bound on a file, or on a range of random seeds.
    Audit {
        #[arg(required_unless_present = "seeds")]
        path: Option<PathBuf>,
        /// Seed range `A..B` for a random campaign.
        #[arg(long, value_parser = parse_seeds, conflicts_with = "path", requires = "n")]
        seeds: Option<Range<u64>>,
        /// Circles per random arrangement.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Invert every circle of a file in a given circle.
    Invert {
        path: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        center: Point,
        #[arg(long)]
        radius: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a file as SVG.
    Render {
        path: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 800.0)]
        width: f64,
        /// Label each circle with its index.
        #[arg(long)]
        labels: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

/// Exit status 1: the input is well formed but fails a check.
/// Exit status 2: bad parameters, I/O or schema errors.
enum Failure {
    Rejected(String),
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: orthocircles::generators::GenError| e.to_string())
}

fn parse_seeds(s: &str) -> Result<Range<u64>, String> {
    let (a, b) = s.split_once("..").ok_or("expected a range A..B")?;
    let a: u64 = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if a >= b {
        return Err(format!("empty seed range {a}..{b}"));
    }
    Ok(a..b)
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or("expected x,y")?;
    let x: f64 = x.trim().parse().map_err(|e| format!("bad x: {e}"))?;
    let y: f64 = y.trim().parse().map_err(|e| format!("bad y: {e}"))?;
    Point::try_new(x, y).map_err(|e| e.to_string())
}

fn read_file(path: &Path) -> Result<ArrangementFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    ArrangementFile::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_output(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(usage),
    }
}

fn load(path: &Path) -> Result<(ArrangementFile, Result<Arrangement, ArrangementError>), Failure> {
    let file = read_file(path)?;
    let circles = file.to_circles().map_err(usage)?;
    let arr = validate(circles, Tolerance::default());
    Ok((file, arr))
}

fn cmd_generate(family: Family, n: Option<usize>, k: Option<usize>, seed: u64, output: Option<&Path>) -> Outcome {
    let size = match (family, n, k) {
        (Family::Flower, None, None) => 7,
        (Family::ChainGridKn, None, Some(k)) => k,
        (Family::ChainGridKn, _, _) => return Err(usage("chain-grid takes --k (number of chains), not --n")),
        (_, Some(n), None) => n,
        (_, _, Some(_)) => return Err(usage(format!("{family} takes --n, not --k"))),
        (_, None, None) => return Err(usage(format!("{family} needs --n"))),
    };
    let spec = FamilySpec::new(family, size).with_seed(seed);
    let generated = generate(&spec, Tolerance::default()).map_err(usage)?;
    let meta = Meta {
        family: Some(family.name().to_string()),
        seed: (family == Family::Random).then_some(seed),
        generator_params: Some(generated.params),
    };
    let file = ArrangementFile::from_circles(generated.arrangement.circles(), meta);
    write_output(output, &file.to_json())
}

#[derive(Serialize)]
struct Analysis {
    n: usize,
    vertices: usize,
    edges: usize,
    faces: usize,
    bounded_faces: usize,
    components: usize,
    histogram: orthocircles::arrangement::FaceHistogram,
    graph: orthocircles::graphs::DegreeStats,
    nesting_depth: usize,
}

fn cmd_analyze(path: &Path, format: ReportFormat) -> Outcome {
    let (_, arr) = load(path)?;
    let arr = match arr {
        Ok(arr) => arr,
        Err(ArrangementError::Invalid(report)) => return Err(Failure::Rejected(report.to_string())),
        Err(e) => return Err(usage(e)),
    };
    let p = planarize(&arr).map_err(|e| Failure::Rejected(e.to_string()))?;
    let histogram = face_histogram(&p);
    let a = Analysis {
        n: arr.len(),
        vertices: p.vertices.len(),
        edges: p.arcs.len(),
        faces: p.faces.len(),
        bounded_faces: histogram.bounded(),
        components: p.components,
        graph: degree_stats(&intersection_graph(&arr)),
        nesting_depth: nesting_forest(&arr).max_depth(),
        histogram,
    };
    let text = match format {
        ReportFormat::Json => serde_json::to_string_pretty(&a).map_err(usage)? + "\n",
        ReportFormat::Text => analysis_text(&a),
    };
    write_output(None, &text)
}

fn analysis_text(a: &Analysis) -> String {
    let mut head = format!("V={} E={} F={}", a.vertices, a.edges, a.faces);
    for (name, count) in [
        ("digons", a.histogram.digons()),
        ("triangles", a.histogram.triangles()),
        ("quadrangles", a.histogram.quadrangles()),
    ] {
        if count > 0 {
            head += &format!(" {name}={count}");
        }
    }
    let buckets: Vec<String> = a.histogram.by_degree.iter().map(|(d, c)| format!("{d}:{c}")).collect();
    format!(
        "{head}\nn={} components={} bounded={} with_holes={} histogram={{{}}}\n\
         graph: edges={} min_degree={} max_degree={} nesting_depth={}\n",
        a.n,
        a.components,
        a.bounded_faces,
        a.histogram.with_holes,
        buckets.join(", "),
        a.graph.edges,
        a.graph.min_degree,
        a.graph.max_degree,
        a.nesting_depth,
    )
}

fn cmd_audit(path: &Path) -> Outcome {
    let (_, arr) = load(path)?;
    let arr = arr.map_err(usage)?;
    let report = run_audit(&arr).map_err(usage)?;
    write_output(None, &(serde_json::to_string_pretty(&report).map_err(usage)? + "\n"))?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Rejected("audit failed".into()))
    }
}

#[derive(Serialize, Default)]
struct Campaign {
    n: usize,
    seeds: [u64; 2],
    runs: usize,
    failures: Vec<u64>,
    max_vertices: usize,
    max_faces: usize,
    max_digons: usize,
    max_triangles: usize,
    max_edges: usize,
    max_min_degree: usize,
    max_gauss_bonnet_residual: f64,
}

fn cmd_campaign(seeds: Range<u64>, n: usize) -> Outcome {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let tol = Tolerance::default();
    let reports: Vec<_> = seeds
        .clone()
        .into_par_iter()
        .map(|seed| (seed, run_audit(&gen_random(n, seed, tol))))
        .collect();
    let mut c = Campaign {
        n,
        seeds: [seeds.start, seeds.end],
        runs: reports.len(),
        ..Campaign::default()
    };
    for (seed, report) in reports {
        let Ok(r) = report else {
            c.failures.push(seed);
            continue;
        };
        if !r.pass {
            c.failures.push(seed);
        }
        c.max_vertices = c.max_vertices.max(r.vertices);
        c.max_faces = c.max_faces.max(r.faces);
        c.max_digons = c.max_digons.max(r.digons);
        c.max_triangles = c.max_triangles.max(r.triangles);
        c.max_edges = c.max_edges.max(r.graph.degrees.edges);
        c.max_min_degree = c.max_min_degree.max(r.graph.degrees.min_degree);
        c.max_gauss_bonnet_residual = c.max_gauss_bonnet_residual.max(r.gauss_bonnet.max_residual);
    }
    write_output(None, &(serde_json::to_string_pretty(&c).map_err(usage)? + "\n"))?;
    if c.failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Rejected(format!("{} seed(s) failed", c.failures.len())))
    }
}

fn cmd_invert(path: &Path, center: Point, radius: f64, output: Option<&Path>) -> Outcome {
    let inv = Circle::new(center, radius).map_err(usage)?;
    let file = read_file(path)?;
    let circles = file.to_circles().map_err(usage)?;
    let tol = Tolerance::default();
    let mut images = Vec::with_capacity(circles.len());
    for (i, c) in circles.iter().enumerate() {
        match invert_gcircle(&GeneralizedCircle::Circle(*c), &inv, &tol) {
            GeneralizedCircle::Circle(img) => images.push(img),
            GeneralizedCircle::Line(_) => {
                return Err(Failure::Rejected(format!(
                    "circle {i} passes through the inversion center and maps to a line; perturb --center"
                )))
            }
        }
    }
    let mut meta = file.meta.clone();
    meta.generator_params = Some(json!({
        "source": file.meta.generator_params,
        "inversion": { "cx": center.x, "cy": center.y, "r": radius },
    }));
    write_output(output, &ArrangementFile::from_circles(&images, meta).to_json())
}

fn cmd_render(path: &Path, output: Option<&Path>, width: f64, labels: bool) -> Outcome {
    if !(width.is_finite() && width > 0.0) {
        return Err(usage("--width must be positive"));
    }
    let file = read_file(path)?;
    let circles = file.to_circles().map_err(usage)?;
    write_output(output, &svg::render(&circles, width, labels))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Generate {
            family,
            n,
            k,
            seed,
            output,
        } => cmd_generate(family, n, k, seed, output.as_deref()),
        Command::Analyze { path, report } => cmd_analyze(&path, report),
        Command::Audit { path: Some(path), .. } => cmd_audit(&path),
        Command::Audit { path: None, seeds, n } => cmd_campaign(
            seeds.expect("clap enforces path or seeds"),
            n.expect("clap enforces --n"),
        ),
        Command::Invert {
            path,
            center,
            radius,
            output,
        } => cmd_invert(&path, center, radius, output.as_deref()),
        Command::Render {
            path,
            output,
            width,
            labels,
        } => cmd_render(&path, output.as_deref(), width, labels),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
