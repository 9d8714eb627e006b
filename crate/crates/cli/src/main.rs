//! Command-line front end for the `tracetris` library.
//!
//! Every subcommand produces either a human-readable text report or, with
//! `--json`, a machine-readable report with a stable schema:
//!
//! ```json
//! { "schema_version": 1, "command": "...", "result": { ... },
//!   "citations": [ ... ], "warnings": [ ... ] }
//! ```
//!
//! Exit codes: 0 on success, 2 for invalid input or a failed validation,
//! 1 for an internal invariant violation.

use std::panic;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use tracetris::catalog::{Catalog, FramingImage};
use tracetris::oracle::knot::KnotSpec;
use tracetris::oracle::GenusOracle;
use tracetris::surface::diagram::DiagramReport;
use tracetris::surface::schema::validate_diagram_text;
use tracetris::three_manifolds::m_three::{classify_m_builtin, MThreeParams};
use tracetris::tris_params::{admissible_types, genus_lower_bound_from_heegaard};

#[derive(Parser)]
#[command(name = "tracetris", version, about = "Trisection genus bounds for knot traces")]
struct Cli {
    /// Emit a machine-readable JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Read trace families from a directory of TOML files instead of the
    /// built-in catalog
    #[arg(long, global = true, value_name = "DIR")]
    catalog_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the admissible relative trisection types for a given genus
    Types {
        /// Trisection genus g
        #[arg(long)]
        genus: i64,
        /// Euler characteristic of the four-manifold (2 for a knot trace)
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        euler: i64,
    },
    /// Bound the trisection genus of a knot trace
    Genus {
        /// Knot: "U", "T(p,q)", "P(t1,...,tr)", "4_1", or "mirror: <knot>"
        #[arg(long)]
        knot: String,
        /// Integer framing of the 2-handle
        #[arg(long, allow_hyphen_values = true)]
        framing: i64,
    },
    /// Identify a boundary three-manifold from a surgery presentation
    #[command(subcommand)]
    Boundary(BoundaryCommand),
    /// Work with trisection diagram files
    #[command(subcommand)]
    Diagram(DiagramCommand),
    /// Instantiate a trace family from the catalog
    Family {
        /// Family name as listed in the catalog
        name: String,
        /// Comma-separated parameter assignments, e.g. "k=2,l=-3"
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        /// Run the full self-check suite on the instance
        #[arg(long)]
        check: bool,
    },
    /// Genus lower bound forced by the Heegaard genus of the boundary
    HeegaardBound {
        /// Heegaard genus of the boundary three-manifold
        #[arg(long)]
        heegaard: i64,
    },
}

#[derive(Subcommand)]
enum BoundaryCommand {
    /// The plumbed three-manifold M(a1, a2, a3)
    MThree {
        #[arg(long, allow_hyphen_values = true)]
        a1: i64,
        #[arg(long, allow_hyphen_values = true)]
        a2: i64,
        #[arg(long, allow_hyphen_values = true)]
        a3: i64,
    },
}

#[derive(Subcommand)]
enum DiagramCommand {
    /// Check a diagram file against the homological standardness tests
    Validate {
        /// Path to a trisection-diagram TOML file
        file: PathBuf,
    },
}

/// Machine-readable report envelope, shared by every subcommand.
#[derive(Serialize)]
struct Report {
    schema_version: u32,
    command: String,
    result: serde_json::Value,
    citations: Vec<String>,
    warnings: Vec<String>,
}

/// What a handler produces; rendering and exit status are decided in `main`.
struct Output {
    ok: bool,
    text: Vec<String>,
    result: serde_json::Value,
    citations: Vec<String>,
    warnings: Vec<String>,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    let outcome = panic::catch_unwind(panic::AssertUnwindSafe(|| run(&cli)));
    match outcome {
        Err(_) => {
            // catch_unwind already let the default hook print the panic text
            eprintln!("error: internal invariant violated");
            ExitCode::from(1)
        }
        Ok(Err(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Ok(out)) => {
            let mut rendered = String::new();
            if json {
                let report = Report {
                    schema_version: 1,
                    command: argv.join(" "),
                    result: out.result,
                    citations: out.citations,
                    warnings: out.warnings,
                };
                rendered = serde_json::to_string_pretty(&report).expect("report serializes");
                rendered.push('\n');
            } else {
                for line in &out.text {
                    rendered.push_str(line);
                    rendered.push('\n');
                }
                for w in &out.warnings {
                    rendered.push_str(&format!("note: {w}\n"));
                }
                for c in &out.citations {
                    rendered.push_str(&format!("cited: {c}\n"));
                }
            }
            emit(&rendered);
            ExitCode::from(if out.ok { 0 } else { 2 })
        }
    }
}

/// Writes the report, treating a closed pipe as a normal way for the
/// conversation to end rather than an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(text.as_bytes())
        .and_then(|()| stdout.flush())
        .is_err()
    {
        std::process::exit(0);
    }
}

fn run(cli: &Cli) -> Result<Output, String> {
    match &cli.command {
        Command::Types { genus, euler } => cmd_types(*genus, *euler),
        Command::Genus { knot, framing } => {
            cmd_genus(knot, *framing, cli.catalog_dir.as_deref())
        }
        Command::Boundary(BoundaryCommand::MThree { a1, a2, a3 }) => cmd_m_three(*a1, *a2, *a3),
        Command::Diagram(DiagramCommand::Validate { file }) => cmd_validate(file),
        Command::Family {
            name,
            params,
            check,
        } => cmd_family(name, params.as_deref(), *check, cli.catalog_dir.as_deref()),
        Command::HeegaardBound { heegaard } => cmd_heegaard_bound(*heegaard),
    }
}

fn load_catalog(dir: Option<&Path>) -> Result<Catalog, String> {
    match dir {
        Some(d) => Catalog::from_dir(d).map_err(|e| e.to_string()),
        None => Catalog::builtin().map_err(|e| e.to_string()),
    }
}

fn cmd_types(genus: i64, euler: i64) -> Result<Output, String> {
    let types = admissible_types(genus, euler);
    let mut text = vec![format!(
        "admissible (g,k;p,b) with g = {genus}, euler characteristic {euler}: {}",
        types.len()
    )];
    for t in &types {
        text.push(format!("  {t}"));
    }
    Ok(Output {
        ok: true,
        text,
        result: json!({
            "genus": genus,
            "euler": euler,
            "types": types,
        }),
        citations: vec![
            "derived: exhaustive scan of 2p+b-1 <= k <= g+p+b-1 against euler = g-3k+3p+2b-1"
                .to_string(),
        ],
        warnings: Vec::new(),
    })
}

fn cmd_genus(knot: &str, framing: i64, catalog_dir: Option<&Path>) -> Result<Output, String> {
    let spec = KnotSpec::parse(knot).map_err(|e| e.to_string())?;
    let oracle = GenusOracle::new(load_catalog(catalog_dir)?);
    let result = oracle.trace_genus(&spec, framing);
    let text = vec![
        format!("knot {spec}, framing {framing}"),
        format!("trisection genus: {result}"),
    ];
    Ok(Output {
        ok: true,
        text,
        result: json!({
            "knot": spec.to_string(),
            "framing": framing,
            "lower": result.lower,
            "upper": result.upper,
            "exact": result.exact,
        }),
        citations: result.citations,
        warnings: result.conditions,
    })
}

fn cmd_m_three(a1: i64, a2: i64, a3: i64) -> Result<Output, String> {
    let class = classify_m_builtin(&MThreeParams::new(a1, a2, a3)).map_err(|e| e.to_string())?;
    let text = vec![format!("M({a1},{a2},{a3}) = {class}")];
    Ok(Output {
        ok: true,
        text,
        result: json!({
            "a": [a1, a2, a3],
            "class": class,
        }),
        citations: vec![class.citation.clone()],
        warnings: class.conditions.clone(),
    })
}

fn cmd_validate(file: &Path) -> Result<Output, String> {
    let contents =
        std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let report = validate_diagram_text(&contents).map_err(|e| e.to_string())?;
    let mut out = Output {
        ok: report.pass,
        text: vec![format!("diagram {}", file.display())],
        result: serde_json::to_value(&report).expect("report serializes"),
        citations: Vec::new(),
        warnings: report.warnings.clone(),
    };
    push_report_lines(&mut out.text, &report);
    Ok(out)
}

fn cmd_family(
    name: &str,
    params: Option<&str>,
    check: bool,
    catalog_dir: Option<&Path>,
) -> Result<Output, String> {
    let catalog = load_catalog(catalog_dir)?;
    let family = catalog.get(name).map_err(|e| e.to_string())?;
    let pairs = parse_assignments(params.unwrap_or(""))?;
    let values = family.bind_named(&pairs).map_err(|e| e.to_string())?;
    let instance = family.instantiate(&values).map_err(|e| e.to_string())?;
    let report = if check {
        family.self_check(&values)
    } else {
        instance.report.clone()
    };

    let mut text = vec![format!("family {name}: type {}", family.ttype())];
    if !family.params().is_empty() {
        let bound: Vec<String> = family
            .params()
            .iter()
            .zip(&values)
            .map(|(n, v)| format!("{n}={v}"))
            .collect();
        text.push(format!("parameters: {}", bound.join(", ")));
    }
    text.push(format!(
        "knot {}, framing {}",
        instance.knot, instance.framing
    ));
    match family.realized_framings().map_err(|e| e.to_string())? {
        FramingImage::Single { framing } => {
            text.push(format!("framings realized: only {framing}"));
        }
        FramingImage::AllIntegers { via } => {
            text.push(format!("framings realized: every integer, via {via}"));
        }
        FramingImage::Unresolved { formula } => {
            text.push(format!("framings realized: unresolved ({formula})"));
        }
    }
    push_report_lines(&mut text, &report);

    Ok(Output {
        ok: report.pass,
        text,
        result: json!({
            "name": name,
            "type": family.ttype(),
            "params": pairs_json(family.params(), &values),
            "knot": instance.knot.to_string(),
            "framing": instance.framing,
            "report": report,
        }),
        citations: vec![family.metadata().citation.clone()],
        warnings: report.warnings.clone(),
    })
}

fn cmd_heegaard_bound(heegaard: i64) -> Result<Output, String> {
    let bound = genus_lower_bound_from_heegaard(heegaard).map_err(|e| e.to_string())?;
    Ok(Output {
        ok: true,
        text: vec![format!(
            "boundary Heegaard genus {heegaard} forces trisection genus at least {bound}"
        )],
        result: json!({
            "heegaard": heegaard,
            "genus_lower_bound": bound,
        }),
        citations: vec![
            "derived: a (g,k;p,b)-trisection induces a boundary Heegaard splitting of genus 2p+b-1"
                .to_string(),
        ],
        warnings: Vec::new(),
    })
}

fn push_report_lines(text: &mut Vec<String>, report: &DiagramReport) {
    for check in &report.checks {
        let tag = if check.pass { "PASS" } else { "FAIL" };
        text.push(format!("[{tag}] {}: {}", check.name, check.detail));
    }
    text.push(format!(
        "result: {}",
        if report.pass { "pass" } else { "fail" }
    ));
}

fn parse_assignments(s: &str) -> Result<Vec<(String, i64)>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("bad parameter assignment {part:?}; expected name=value"))?;
        let value: i64 = value
            .trim()
            .parse()
            .map_err(|_| format!("bad integer in parameter assignment {part:?}"))?;
        out.push((name.trim().to_string(), value));
    }
    Ok(out)
}

fn pairs_json(names: &[String], values: &[i64]) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> = names
        .iter()
        .zip(values)
        .map(|(n, v)| (n.clone(), json!(v)))
        .collect();
    serde_json::Value::Object(map)
}
