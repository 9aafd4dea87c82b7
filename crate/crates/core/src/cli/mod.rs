//! Command-line front end.
//!
//! Exit codes: 0 success or affirmative answer, 1 negative answer, 2 usage or
//! input error, 3 degenerate configuration under `--strict`.

pub mod format;
pub mod plot;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::aabb::aabb_minimal;
use crate::cech::{cech_scale, is_cech_system, rips_scale, DEFAULT_ETA};
use crate::filtration::build_filtration;
use crate::geometry::{DiskSystem, Point, Tolerance};

pub use format::{parse_disk_system, DiskSystemFile, InputFormat, ParseError};

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "cech-kit/1";

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DEGENERATE: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "cech-kit", version, about = "Intersection properties of finite disk systems")]
struct Cli {
    /// Relative tolerance for membership and tangency tests.
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_REL)]
    tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Input format; inferred from the file extension when omitted.
    #[arg(long, global = true, value_enum)]
    input_format: Option<InputFormat>,

    /// Drop duplicate disks and disks containing another disk.
    #[arg(long, global = true)]
    preprocess: bool,

    /// Exit with code 3 when degenerate subsets were skipped.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether all disks share a common point.
    Check { input: PathBuf },
    /// Print the Vietoris-Rips scale.
    RipsScale { input: PathBuf },
    /// Compute the Čech scale by bisection.
    CechScale {
        #[arg(long, default_value_t = DEFAULT_ETA)]
        eta: f64,
        input: PathBuf,
    },
    /// Minimal axis-aligned bounding box of the intersection.
    Aabb { input: PathBuf },
    /// Generalized Čech filtration, one simplex per line.
    Filtration {
        #[arg(long)]
        max_dim: usize,
        #[arg(long, default_value_t = DEFAULT_ETA)]
        eta: f64,
        input: PathBuf,
    },
    /// SVG plot of a planar system with its poles and box.
    Plot {
        input: PathBuf,
        /// Write the SVG here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

struct Outcome {
    code: u8,
    degenerate_subsets: usize,
}

/// Runs the CLI with `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
                return EXIT_OK;
            }
            let _ = write!(err, "{text}");
            return EXIT_USAGE;
        }
    };
    match execute(&cli, out, err) {
        Ok(outcome) => {
            if outcome.degenerate_subsets > 0 {
                let _ = writeln!(
                    err,
                    "warning: {} degenerate subset(s) skipped (affinely dependent centers or identical disks)",
                    outcome.degenerate_subsets
                );
                if cli.strict {
                    return EXIT_DEGENERATE;
                }
            }
            outcome.code
        }
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn load(cli: &Cli, path: &Path) -> Result<DiskSystem, String> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map_err(|e| e.to_string())?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let format = cli.input_format.unwrap_or_else(|| {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => InputFormat::Json,
            _ => InputFormat::Csv,
        }
    });
    let system = parse_disk_system(&text, format).map_err(|e| format!("{}: {e}", path.display()))?;
    if cli.preprocess {
        let tol = Tolerance::new(cli.tol).map_err(|e| e.to_string())?;
        Ok(system.remove_dominated(tol).0)
    } else {
        Ok(system)
    }
}

/// Fixed-point with trailing zeros removed; `-0` prints as `0`.
fn fmt_num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.') } else { &s };
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

fn fmt_point(p: &Point) -> String {
    let coords: Vec<String> = p.iter().map(|&x| fmt_num(x)).collect();
    format!("({})", coords.join(","))
}

fn digits_for(eta: f64) -> usize {
    (-eta.log10()).ceil().clamp(6.0, 15.0) as usize
}

fn emit_json(out: &mut dyn Write, mut value: Value) -> Result<(), String> {
    value["schema"] = json!(SCHEMA);
    writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json values serialize"))
        .map_err(|e| e.to_string())
}

fn execute(cli: &Cli, out: &mut dyn Write, _err: &mut dyn Write) -> Result<Outcome, String> {
    let tol = Tolerance::new(cli.tol).map_err(|e| e.to_string())?;
    let io = |e: std::io::Error| e.to_string();
    let json = cli.format == OutputFormat::Json;
    match &cli.command {
        Command::Check { input } => {
            let system = load(cli, input)?;
            let d = is_cech_system(&system, tol);
            if json {
                emit_json(
                    out,
                    json!({
                        "command": "check",
                        "is_cech": d.is_cech,
                        "witness": d.witness.as_ref().map(|w| w.as_slice().to_vec()),
                        "generating_subset": d.generating_subset,
                        "degenerate_subsets": d.degenerate_subsets,
                    }),
                )?;
            } else if let Some(w) = &d.witness {
                writeln!(out, "TRUE witness={}", fmt_point(w)).map_err(io)?;
            } else {
                writeln!(out, "FALSE").map_err(io)?;
            }
            let code = if d.is_cech { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Outcome { code, degenerate_subsets: d.degenerate_subsets })
        }
        Command::RipsScale { input } => {
            let system = load(cli, input)?;
            let nu = rips_scale(&system);
            if json {
                emit_json(out, json!({ "command": "rips-scale", "rips_scale": nu }))?;
            } else {
                writeln!(out, "nu = {nu:.6}").map_err(io)?;
            }
            Ok(Outcome { code: EXIT_OK, degenerate_subsets: 0 })
        }
        Command::CechScale { eta, input } => {
            let system = load(cli, input)?;
            let r = cech_scale(&system, *eta, tol).map_err(|e| e.to_string())?;
            if json {
                emit_json(
                    out,
                    json!({
                        "command": "cech-scale",
                        "rips_scale": r.rips_scale,
                        "cech_scale": r.cech_scale,
                        "eta": r.eta,
                        "bracket": [r.bracket.0, r.bracket.1],
                        "iterations": r.iterations,
                        "exact": r.exact,
                        "witness": r.witness.as_ref().map(|w| w.as_slice().to_vec()),
                        "degenerate_subsets": r.degenerate_subsets,
                    }),
                )?;
            } else {
                let p = digits_for(*eta);
                writeln!(out, "nu = {:.p$}", r.rips_scale).map_err(io)?;
                writeln!(out, "mu = {:.p$}", r.cech_scale).map_err(io)?;
                writeln!(out, "bracket = [{:.p$}, {:.p$}]", r.bracket.0, r.bracket.1).map_err(io)?;
                writeln!(out, "iterations = {}", r.iterations).map_err(io)?;
            }
            Ok(Outcome { code: EXIT_OK, degenerate_subsets: r.degenerate_subsets })
        }
        Command::Aabb { input } => {
            let system = load(cli, input)?;
            let r = aabb_minimal(&system, tol);
            if json {
                let intervals = r.bbox.as_ref().map(|b| {
                    b.intervals().iter().map(|i| vec![i.lower, i.upper]).collect::<Vec<_>>()
                });
                emit_json(
                    out,
                    json!({
                        "command": "aabb",
                        "intersects": r.bbox.is_some(),
                        "box": intervals,
                        "degenerate": r.bbox.as_ref().map(|b| b.is_degenerate()),
                        "degenerate_subsets": r.degenerate_subsets,
                    }),
                )?;
            } else {
                match &r.bbox {
                    None => writeln!(out, "NO-INTERSECTION").map_err(io)?,
                    Some(b) => {
                        for (q, i) in b.intervals().iter().enumerate() {
                            writeln!(out, "x{}: [{}, {}]", q + 1, fmt_num(i.lower), fmt_num(i.upper))
                                .map_err(io)?;
                        }
                    }
                }
            }
            let code = if r.bbox.is_some() { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Outcome { code, degenerate_subsets: r.degenerate_subsets })
        }
        Command::Filtration { max_dim, eta, input } => {
            let system = load(cli, input)?;
            let f = build_filtration(&system, *max_dim, *eta, tol).map_err(|e| e.to_string())?;
            if json {
                let simplices: Vec<Value> = f
                    .simplices
                    .iter()
                    .map(|s| json!({ "vertices": s.vertices, "scale": s.scale }))
                    .collect();
                emit_json(
                    out,
                    json!({
                        "command": "filtration",
                        "max_dimension": f.max_dimension,
                        "eta": eta,
                        "index_map": f.index_map,
                        "simplices": simplices,
                    }),
                )?;
            } else {
                for s in &f.simplices {
                    let vs: Vec<String> = s.vertices.iter().map(|v| v.to_string()).collect();
                    writeln!(out, "{} {}", s.scale, vs.join(" ")).map_err(io)?;
                }
            }
            Ok(Outcome { code: EXIT_OK, degenerate_subsets: f.degenerate_subsets })
        }
        Command::Plot { input, output } => {
            let system = load(cli, input)?;
            if system.dim() != 2 {
                return Err(format!("plot requires a 2-dimensional system, got d = {}", system.dim()));
            }
            let r = aabb_minimal(&system, tol);
            let svg = plot::render_svg(&system, &r);
            match output {
                Some(path) => std::fs::write(path, svg).map_err(|e| format!("{}: {e}", path.display()))?,
                None => out.write_all(svg.as_bytes()).map_err(io)?,
            }
            Ok(Outcome { code: EXIT_OK, degenerate_subsets: r.degenerate_subsets })
        }
    }
}
