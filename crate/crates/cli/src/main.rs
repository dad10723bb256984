//! clarcube: exact Clar cover polynomials, resonance graphs, cube polynomials
//! and the verification suite tying them together.
//!
//! Results go to stdout (or `--out`), diagnostics to stderr. Exit codes:
//! 0 success with all verifications passing, 1 verification failure,
//! 2 usage or parse errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use clarcube_core::bijection::{self, VerificationReport};
use clarcube_core::hexsys::{self, HexagonalSystem, NAMED_SYSTEMS};
use clarcube_core::{clar, cube, matching, resonance, Error, Limits};

#[derive(Parser)]
#[command(name = "clarcube", version, about = "Exact Clar cover and cube polynomial engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural summary of a hexagonal system
    Info(SystemArgs),
    /// Number of Kekulé structures (perfect matchings)
    Kekule(SystemArgs),
    /// Clar covering (Zhang-Zhang) polynomial
    Zz(ZzArgs),
    /// Sextet polynomial
    Sextet(SystemArgs),
    /// Resonance graph as JSON, text summary, or DOT
    Resonance(ResonanceArgs),
    /// Cube polynomial of a resonance graph or of a plain JSON graph
    Cube(CubeArgs),
    /// Run every verification check against one system
    Verify(SystemArgs),
    /// Root report for the Clar covering polynomial
    Roots(SystemArgs),
    /// Check the derivative identity for a given order
    DerivativeCheck(DerivativeArgs),
    /// Check the fibonacene / Fibonacci cube correspondence
    Fibonacci(FibonacciArgs),
    /// List catalog systems, or emit one in .hex format
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Read a system from a .hex file
    #[arg(long, conflicts_with = "name")]
    input: Option<PathBuf>,
    /// Take a system from the catalog
    #[arg(long)]
    name: Option<String>,
    /// Size parameter for parametric catalog families
    #[arg(long)]
    n: Option<usize>,
    /// Seed for random_cata
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write results to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CapArgs {
    /// Cap on enumerated perfect matchings
    #[arg(long)]
    max_matchings: Option<usize>,
    /// Cap on enumerated Clar covers
    #[arg(long)]
    max_covers: Option<usize>,
    /// Cap on enumerated induced hypercubes
    #[arg(long)]
    max_cubes: Option<usize>,
}

impl CapArgs {
    fn limits(&self) -> Limits {
        let mut limits = Limits::default();
        if let Some(m) = self.max_matchings {
            limits.max_matchings = m;
        }
        if let Some(c) = self.max_covers {
            limits.max_covers = c;
        }
        if let Some(c) = self.max_cubes {
            limits.max_cubes = c;
        }
        limits
    }
}

#[derive(Args)]
struct SystemArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct ZzArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Coefficient basis: standard powers of x or powers of (x+1)
    #[arg(long, value_enum, default_value = "std")]
    basis: Basis,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    Std,
    Shifted,
}

#[derive(Args)]
struct ResonanceArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Also write a DOT rendering to this path
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Render the sextet orientation instead of the undirected graph
    #[arg(long)]
    directed: bool,
}

#[derive(Args)]
struct CubeArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Read a plain graph from JSON (`{"n": int, "edges": [[i,j],...]}`)
    /// instead of building a resonance graph
    #[arg(long, conflicts_with_all = ["input", "name"])]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct DerivativeArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Derivative order
    #[arg(long, default_value = "1")]
    s: usize,
}

#[derive(Args)]
struct FibonacciArgs {
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    caps: CapArgs,
    /// Fibonacene length
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct CatalogArgs {
    #[command(flatten)]
    output: OutputArgs,
    /// Emit this catalog entry as .hex text
    #[arg(long)]
    name: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Info(args) => {
            let (label, system) = load_system(&args.input)?;
            let limits = args.caps.limits();
            let kekule = matching::enumerate_perfect_matchings(&system, &limits)?.len();
            let payload = json!({
                "system": label,
                "cells": system.cells().len(),
                "vertices": system.vertex_count(),
                "edges": system.edge_count(),
                "hexagons": system.hexagon_count(),
                "generalized": system.generalized(),
                "kekule": kekule.to_string(),
            });
            let text = format!(
                "system: {label}\ncells: {}\nvertices: {}\nedges: {}\nhexagons: {}\ngeneralized: {}\nkekule structures: {kekule}\n",
                system.cells().len(),
                system.vertex_count(),
                system.edge_count(),
                system.hexagon_count(),
                system.generalized(),
            );
            emit(&args.output, &payload, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Kekule(args) => {
            let (_, system) = load_system(&args.input)?;
            let limits = args.caps.limits();
            let count = matching::enumerate_perfect_matchings(&system, &limits)?.len();
            emit(
                &args.output,
                &json!({ "kekule": count.to_string() }),
                &format!("{count}\n"),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Zz(args) => {
            let (_, system) = load_system(&args.system.input)?;
            let limits = args.system.caps.limits();
            let zz = clar::zz_polynomial(&system, &limits)?;
            match args.basis {
                Basis::Std => emit(&args.system.output, &zz.to_json(), &format!("{zz}\n"))?,
                Basis::Shifted => {
                    let shifted = zz.to_shifted();
                    emit(
                        &args.system.output,
                        &shifted.to_json(),
                        &format!("{shifted}\n"),
                    )?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sextet(args) => {
            let (_, system) = load_system(&args.input)?;
            let limits = args.caps.limits();
            let p = clar::sextet_polynomial(&system, &limits)?;
            emit(&args.output, &p.to_json(), &format!("{p}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Resonance(args) => {
            let (_, system) = load_system(&args.system.input)?;
            let limits = args.system.caps.limits();
            let rg = resonance::build_resonance_graph(&system, &limits)?;
            if let Some(path) = &args.dot {
                let dot = if args.directed {
                    resonance::dot_directed(&resonance::orient(&rg)?, &system)
                } else {
                    resonance::dot_undirected(&rg, &system)
                };
                fs::write(path, dot)?;
            }
            let payload = resonance::to_json(&rg, &system);
            let text = format!(
                "vertices: {}\nedges: {}\n",
                rg.vertex_count(),
                rg.edge_count()
            );
            emit(&args.system.output, &payload, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cube(args) => {
            let limits = args.system.caps.limits();
            let graph = if let Some(path) = &args.graph {
                let raw = fs::read_to_string(path)?;
                let value: serde_json::Value = serde_json::from_str(&raw)
                    .map_err(|e| Error::Invalid(format!("bad graph JSON: {e}")))?;
                cube::SimpleGraph::from_json(&value)?
            } else {
                let (_, system) = load_system(&args.system.input)?;
                resonance::build_resonance_graph(&system, &limits)?.to_simple_graph()
            };
            let p = cube::cube_polynomial(&graph, &limits)?;
            emit(&args.system.output, &p.to_json(), &format!("{p}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let (label, system) = load_system(&args.input)?;
            let limits = args.caps.limits();
            let report = bijection::full_verification(&label, &system, &limits)?;
            emit_report(&args.output, &report)
        }
        Command::Roots(args) => {
            let (_, system) = load_system(&args.input)?;
            let limits = args.caps.limits();
            let zz = clar::zz_polynomial(&system, &limits)?;
            let roots = zz.rational_roots()?;
            let minus_one = rational(-1);
            let minus_two = rational(-2);
            let high = zz.count_real_roots_from(&minus_one, true)?;
            let low = zz.count_real_roots(&minus_two, &minus_one, true, false)?;
            let root_entries: Vec<serde_json::Value> = roots
                .iter()
                .map(|r| {
                    json!({
                        "root": r.value.to_string(),
                        "t": r.t.as_ref().map(|t| t.to_string()),
                    })
                })
                .collect();
            let payload = json!({
                "polynomial": zz.to_json()["coeffs"],
                "rational_roots": root_entries,
                "real_roots_in_[-1,inf)": high,
                "real_roots_in_[-2,-1)": low,
            });
            let mut text = format!("zz = {zz}\nrational roots:\n");
            if roots.is_empty() {
                text.push_str("  (none)\n");
            }
            for r in &roots {
                match &r.t {
                    Some(t) => text.push_str(&format!("  {} = -(t+1)/t with t = {t}\n", r.value)),
                    None => text.push_str(&format!("  {} (not of the form -(t+1)/t)\n", r.value)),
                }
            }
            text.push_str(&format!("real roots in [-1, +inf): {high}\n"));
            text.push_str(&format!("real roots in [-2, -1): {low}\n"));
            emit(&args.output, &payload, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::DerivativeCheck(args) => {
            let (label, system) = load_system(&args.system.input)?;
            let limits = args.system.caps.limits();
            let mut report = VerificationReport::new(label);
            report.merge(bijection::verify_derivative(&system, args.s, &limits)?);
            emit_report(&args.system.output, &report.finalize())
        }
        Command::Fibonacci(args) => {
            let limits = args.caps.limits();
            let report = bijection::verify_fibonacene(args.n, &limits)?.finalize();
            emit_report(&args.output, &report)
        }
        Command::Catalog(args) => {
            if let Some(name) = &args.name {
                let system = hexsys::catalog(name, args.n, args.seed)?;
                let text = system.to_hex_text();
                let payload = json!({
                    "name": name,
                    "cells": system
                        .cells()
                        .iter()
                        .map(|c| json!([c.q, c.r]))
                        .collect::<Vec<_>>(),
                });
                emit(&args.output, &payload, &text)?;
            } else {
                let mut text = String::from("named systems:\n");
                for name in NAMED_SYSTEMS {
                    text.push_str(&format!("  {name}\n"));
                }
                text.push_str("parametric families:\n");
                text.push_str("  linear --n N\n  zigzag --n N\n  random_cata --n N --seed S\n");
                let payload = json!({
                    "named": NAMED_SYSTEMS,
                    "parametric": ["linear", "zigzag", "random_cata"],
                });
                emit(&args.output, &payload, &text)?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn rational(n: i64) -> clarcube_core::poly::Rational {
    clarcube_core::poly::Rational::from_integer(n.into())
}

fn load_system(input: &InputArgs) -> Result<(String, HexagonalSystem), Error> {
    match (&input.input, &input.name) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)?;
            let system = hexsys::parse_hex_file(&text)?;
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string());
            Ok((label, system))
        }
        (None, Some(name)) => {
            let system = hexsys::catalog(name, input.n, input.seed)?;
            let label = match (input.n, input.seed) {
                (Some(n), Some(seed)) => format!("{name}({n},seed={seed})"),
                (Some(n), None) => format!("{name}({n})"),
                _ => name.clone(),
            };
            Ok((label, system))
        }
        _ => Err(Error::Invalid(
            "give exactly one input source: --input FILE or --name NAME".into(),
        )),
    }
}

fn emit(output: &OutputArgs, payload: &serde_json::Value, text: &str) -> Result<(), Error> {
    let body = match output.format {
        Format::Json => format!("{}\n", serde_json::to_string(payload).expect("valid JSON")),
        Format::Text => text.to_string(),
    };
    match &output.out {
        Some(path) => fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn emit_report(output: &OutputArgs, report: &VerificationReport) -> Result<ExitCode, Error> {
    let mut text = format!("system: {}\n", report.system);
    for check in &report.checks {
        let verdict = if check.pass { "PASS" } else { "FAIL" };
        text.push_str(&format!("{verdict}  {}  ({} ms)\n", check.name, check.ms));
        if let Some(witness) = &check.witness {
            if !check.pass {
                text.push_str(&format!("      witness: {witness}\n"));
            }
        }
    }
    let passed = report.passed();
    text.push_str(&format!(
        "{}: {} checks\n",
        if passed { "all passed" } else { "FAILURES" },
        report.checks.len()
    ));
    emit(output, &report.to_json(), &text)?;
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
