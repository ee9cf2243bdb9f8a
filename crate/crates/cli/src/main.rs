use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

mod commands;

use commands::{
    BandCmd, ClassifyCmd, ComplexCmd, CrowdCmd, MatroidCmd, OrbitArgs, Outcome, PointsArgs, PolygonArgs,
    VerifyArgs,
};

#[derive(Parser)]
#[command(name = "funcrowd", version, about = "Bands, crowds and F1-structures on finite geometries")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, env = "FUNCROWD_JOBS", value_name = "N")]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Arithmetic and null sets of a band.
    #[command(subcommand)]
    Band(BandCmd),
    /// Enumerate points of a projective space, Grassmannian or flag variety.
    Points(PointsArgs),
    /// Matroids by bases and their comparison with K-points.
    #[command(subcommand)]
    Matroid(MatroidCmd),
    /// Special linear crowds.
    #[command(subcommand)]
    Crowd(CrowdCmd),
    /// The orbit a.x of a matrix on a point.
    Orbit(OrbitArgs),
    /// Flag complexes and the map induced by F_q -> K.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Build and certify an incidence geometry.
    Polygon(PolygonArgs),
    /// Classify F1-structures on small projective spaces.
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Run the acceptance suite.
    VerifyAll(VerifyArgs),
}

/// The invocation without the flags that must not change the report.
fn command_echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut kept = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if ["--out", "--jobs", "--format"].contains(&a.as_str()) {
            skip = true;
            continue;
        }
        if ["--out=", "--jobs=", "--format="].iter().any(|p| a.starts_with(p)) {
            continue;
        }
        kept.push(a);
    }
    kept.join(" ")
}

fn render(outcome: &Outcome, format: Format) -> String {
    let mut body: Map<String, Value> = outcome.body.clone();
    body.insert("command".into(), Value::String(command_echo()));
    body.insert("version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
    if !outcome.assertions.is_empty() {
        let a: Map<String, Value> = outcome.assertions.iter().map(|(k, v)| (k.clone(), Value::Bool(*v))).collect();
        body.insert("assertions".into(), Value::Object(a));
        body.insert("passed".into(), Value::Bool(outcome.passed()));
    }
    match (format, &outcome.text) {
        (Format::Text, Some(t)) => t.clone(),
        (Format::Text, None) => {
            let mut s = String::new();
            for (k, v) in &body {
                match v {
                    Value::String(x) => s.push_str(&format!("{k}: {x}\n")),
                    other => s.push_str(&format!("{k}: {other}\n")),
                }
            }
            s
        }
        (Format::Json, _) => {
            let mut s = serde_json::to_string_pretty(&Value::Object(body)).expect("json");
            s.push('\n');
            s
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Band(c) => commands::band(c),
        Command::Points(a) => commands::points(a),
        Command::Matroid(c) => commands::matroid(c),
        Command::Crowd(c) => commands::crowd(c),
        Command::Orbit(a) => commands::orbit_report(a),
        Command::Complex(c) => commands::complex(c),
        Command::Polygon(a) => commands::polygon(a),
        Command::Classify(c) => commands::classify(c),
        Command::VerifyAll(a) => commands::verify_all(a, cli.jobs),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let text = render(&outcome, cli.format);
    let written = match &cli.out {
        Some(path) => fs::write(path, text.as_bytes()).map_err(|e| format!("--out {}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    if outcome.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
