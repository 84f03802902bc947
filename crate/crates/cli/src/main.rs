//! `pocketcut` command-line tool.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 pipeline error,
//! 4 ear queue exhausted (input outside the supported polygon class),
//! 5 validation failure.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pocketcut::bench::{bench, default_sizes, write_csv, Engine, Shape};
use pocketcut::io::{parse_off, parse_pocket, parse_problem, write_off, write_svg, write_triples};
use pocketcut::{build_constrained, classic_earcut, linear_earcut, validate_triangulation};
use pocketcut::{EarcutError, TriMesh};

#[derive(Parser, Debug)]
#[command(
    name = "pocketcut",
    version,
    about = "Constrained triangulation by segment insertion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Triangulate a problem file (points and segments) and write an OFF mesh.
    Triangulate {
        input: PathBuf,
        /// OFF output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also draw the mesh as SVG to this path.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Triangulate a single pocket polygon and validate the result.
    Pocket {
        input: PathBuf,
        #[arg(short, long, default_value = "linear")]
        engine: Engine,
        /// Triples output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time the earcut engines on the parametric polygons and emit CSV.
    Bench {
        #[arg(short, long, default_value = "linear")]
        engine: Engine,
        /// Restrict to one shape; both are run by default.
        #[arg(long)]
        shape: Option<Shape>,
        /// Comma-separated polygon sizes; 10, 20, ..., 1000 by default.
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u32).range(3..))]
        sizes: Option<Vec<u32>>,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u32).range(1..))]
        reps: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Audit an OFF mesh.
    Validate { mesh: PathBuf },
}

enum Failure {
    Usage(String),
    Pipeline(String),
    Class(String),
    Invalid(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Pipeline(_) => 3,
            Failure::Class(_) => 4,
            Failure::Invalid(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Pipeline(m) | Failure::Class(m) | Failure::Invalid(m) => m,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &[u8]) -> Result<(), Failure> {
    let res = match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => io::stdout().write_all(text).map_err(|e| e.to_string()),
    };
    res.map_err(Failure::Pipeline)
}

fn triangulate(input: &Path, output: Option<&Path>, svg: Option<&Path>) -> Result<(), Failure> {
    let text = read(input)?;
    let problem =
        parse_problem(&text).map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
    let mesh = build_constrained(&problem).map_err(|e| Failure::Pipeline(e.to_string()))?;
    emit(output, write_off(&mesh).as_bytes())?;
    if let Some(path) = svg {
        emit(Some(path), write_svg(&mesh).as_bytes())?;
    }
    Ok(())
}

fn pocket(input: &Path, engine: Engine, output: Option<&Path>) -> Result<(), Failure> {
    let text = read(input)?;
    let poly =
        parse_pocket(&text).map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
    let tris = match engine {
        Engine::Linear => linear_earcut(&poly),
        Engine::Classic => classic_earcut(&poly),
    };
    let tris = tris.map_err(|e| match e {
        EarcutError::EarQueueExhausted { .. } => Failure::Class(e.to_string()),
        EarcutError::NoEarFound { .. } => Failure::Pipeline(e.to_string()),
    })?;
    emit(output, write_triples(&tris).as_bytes())?;
    let report = validate_triangulation(&poly, &tris);
    if report.is_pass() {
        eprintln!("{engine}: {} triangles, pass", tris.len());
        Ok(())
    } else {
        Err(Failure::Invalid(format!("{engine}: {report}")))
    }
}

fn run_bench(
    engine: Engine,
    shape: Option<Shape>,
    sizes: Option<Vec<u32>>,
    reps: u32,
    seed: u64,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let sizes: Vec<usize> = match sizes {
        Some(s) => s.into_iter().map(|n| n as usize).collect(),
        None => default_sizes(),
    };
    let shapes = match shape {
        Some(s) => vec![s],
        None => vec![Shape::Collinear, Shape::Random],
    };
    let mut records = Vec::new();
    for shape in shapes {
        let rec = bench(engine, shape, &sizes, reps as usize, seed)
            .map_err(|e| Failure::Pipeline(e.to_string()))?;
        records.extend(rec);
    }
    let mut buf = Vec::new();
    write_csv(&records, &mut buf).map_err(|e| Failure::Pipeline(e.to_string()))?;
    emit(output, &buf)
}

fn validate(path: &Path) -> Result<(), Failure> {
    let text = read(path)?;
    let (points, faces) =
        parse_off(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let mesh = TriMesh::from_triangles_strict(points, &faces)
        .map_err(|e| Failure::Invalid(e.to_string()))?;
    mesh.audit().map_err(|e| Failure::Invalid(e.to_string()))?;
    eprintln!(
        "{} vertices, {} triangles, pass",
        mesh.vertex_count(),
        mesh.triangle_count()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Triangulate { input, output, svg } => {
            triangulate(&input, output.as_deref(), svg.as_deref())
        }
        Command::Pocket {
            input,
            engine,
            output,
        } => pocket(&input, engine, output.as_deref()),
        Command::Bench {
            engine,
            shape,
            sizes,
            reps,
            seed,
            output,
        } => run_bench(engine, shape, sizes, reps, seed, output.as_deref()),
        Command::Validate { mesh } => validate(&mesh),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
