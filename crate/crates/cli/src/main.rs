//! `digisurf`: build LCL covers, take nerves, classify, compress, weigh.
//!
//! Commands read a file argument or stdin and write stdout (or `--out`), so
//! they compose: `digisurf gen --word torus --rows 4 --cols 4 | digisurf
//! nerve | digisurf compress | digisurf weight`.
//!
//! Exit codes: 0 success, 1 negative answer, 2 usage or input error,
//! 3 resource cutoff.

use std::fmt;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use digisurf::cover::{self, Cover, CoverError, PolygonWord};
use digisurf::manifold::{self, PairOrder, SphereVerdict, Surface};
use digisurf::{DigitalGraph, GraphError, ManifoldError};
use serde_json::json;

#[derive(Parser)]
#[command(name = "digisurf", version, about = "Digital models of closed surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a running-bond brick cover and verify it.
    Gen {
        #[arg(long)]
        word: String,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Intersection graph of a cover.
    Nerve {
        cover: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Classify a graph as a digital manifold.
    Check { graph: Option<PathBuf> },
    /// Contract simple pairs until none remain.
    Compress {
        graph: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the contraction trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Pick simple pairs in seeded random order instead of lexicographically.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Digital weight: point count after compression.
    Weight { graph: Option<PathBuf> },
    /// Compare two graphs up to isomorphism.
    Iso { a: PathBuf, b: PathBuf },
    /// Emit a named surface: minimal-1-sphere, minimal-2-sphere,
    /// icosahedron, king-torus:RxC, hex-torus:RxC.
    Surface {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// An error carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

fn fail(code: u8, message: impl Into<String>) -> anyhow::Error {
    Failure {
        code,
        message: message.into(),
    }
    .into()
}

fn graph_failure(e: GraphError) -> anyhow::Error {
    match e {
        GraphError::CliqueBudget { .. } => fail(3, e.to_string()),
        other => fail(2, other.to_string()),
    }
}

fn manifold_failure(e: ManifoldError) -> anyhow::Error {
    match e {
        ManifoldError::Graph(g) => graph_failure(g),
        ManifoldError::NotManifold(_) | ManifoldError::NotSurfaceOrCurve => fail(1, e.to_string()),
        other => fail(2, other.to_string()),
    }
}

fn cover_failure(e: CoverError) -> anyhow::Error {
    match e {
        CoverError::Lcl(report) => fail(1, format!("cover fails LCL verification\n{}", report.to_json())),
        CoverError::NotATiling(_) => fail(1, e.to_string()),
        other => fail(2, other.to_string()),
    }
}

fn read_input(path: Option<&PathBuf>) -> anyhow::Result<String> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| fail(2, format!("cannot read {}: {e}", p.display())))?;
        }
        _ => {
            io::stdin().read_to_string(&mut text).context("reading stdin")?;
        }
    }
    Ok(text)
}

fn write_output(path: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn read_graph(path: Option<&PathBuf>) -> anyhow::Result<DigitalGraph> {
    DigitalGraph::from_json(&read_input(path)?).map_err(graph_failure)
}

fn render(g: &DigitalGraph, format: Format) -> String {
    match format {
        Format::Json => g.to_json(),
        Format::Dot => g.to_dot(),
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Gen { word, rows, cols, out } => {
            let word: PolygonWord = word.parse().map_err(cover_failure)?;
            let cover = cover::generate_brick_cover(word, rows, cols).map_err(cover_failure)?;
            write_output(out.as_ref(), &cover.to_json())?;
            Ok(0)
        }
        Command::Nerve { cover, out, format } => {
            let cover = Cover::from_json(&read_input(cover.as_ref())?).map_err(cover_failure)?;
            let g = cover::nerve(&cover).map_err(cover_failure)?;
            write_output(out.as_ref(), &render(&g, format))?;
            Ok(0)
        }
        Command::Check { graph } => {
            let g = read_graph(graph.as_ref())?;
            let report = manifold::classify_manifold(&g);
            let chi = g.euler_characteristic().map_err(graph_failure)?;
            let sphere = match report.is_sphere {
                Some(SphereVerdict::Yes) => "sphere",
                Some(SphereVerdict::No) => "not a sphere",
                Some(SphereVerdict::Unknown) => "sphere unknown",
                None => "",
            };
            let summary = match report.dimension {
                Some(d) => format!("dimension {d}, {sphere}, χ={chi}"),
                None => "not a digital manifold".to_string(),
            };
            let out = json!({
                "summary": summary,
                "dimension": report.dimension,
                "is_sphere": report.is_sphere,
                "euler_characteristic": chi,
                "points": g.order(),
                "edges": g.size(),
                "compressed_points": report.compressed_order,
                "witnesses": report.witnesses,
            });
            write_output(None, &format!("{out}\n"))?;
            Ok(if report.dimension.is_some() { 0 } else { 1 })
        }
        Command::Compress { graph, out, trace, seed } => {
            let g = read_graph(graph.as_ref())?;
            let order = seed.map_or(PairOrder::Lexicographic, PairOrder::Seeded);
            let (c, t) = manifold::compress_with(&g, order).map_err(manifold_failure)?;
            if let Some(path) = trace {
                std::fs::write(&path, t.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            write_output(out.as_ref(), &c.to_json())?;
            Ok(0)
        }
        Command::Weight { graph } => {
            let g = read_graph(graph.as_ref())?;
            let w = manifold::digital_weight(&g).map_err(manifold_failure)?;
            write_output(None, &format!("{w}\n"))?;
            Ok(0)
        }
        Command::Iso { a, b } => {
            let (ga, gb) = (read_graph(Some(&a))?, read_graph(Some(&b))?);
            let same = ga.is_isomorphic(&gb);
            write_output(None, if same { "isomorphic\n" } else { "not-isomorphic\n" })?;
            Ok(if same { 0 } else { 1 })
        }
        Command::Surface { name, out, format } => {
            let surface: Surface = name.parse().map_err(|e: String| fail(2, e))?;
            let g = manifold::canonical_surface(surface).map_err(manifold_failure)?;
            write_output(out.as_ref(), &render(&g, format))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("digisurf: {e:#}");
            let code = e.downcast_ref::<Failure>().map_or(2, |f| f.code);
            ExitCode::from(code)
        }
    }
}
