//! `lcd-agc`: construct LCD AG codes, measure distances, rerun the examples.
//!
//! Exit status: 0 on success, 1 on usage or input errors, 2 when a recipe
//! hypothesis fails, 3 when `reproduce` finds a mismatch.

mod recipe;
mod reproduce;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::Value;

use lcd_agc::agcode::{DistanceOptions, DistanceReport, LinearCode, Method};
use lcd_agc::constructions::ConstructionError;
use lcd_agc::linalg::{Matrix, MatrixJson};
use lcd_agc::riemann_roch::{rr_basis, speciality_index};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Ff(#[from] lcd_agc::function_field::FfError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Construction(e) if e.is_hypothesis_failure() => 2,
            _ => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "lcd-agc", version, about = "LCD algebraic geometry codes over small finite fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a code pair from a recipe and print its JSON report.
    Construct {
        #[arg(long)]
        field: String,
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        recipe: String,
        /// Recipe parameter, repeatable.
        #[arg(long = "param", value_parser = recipe::parse_kv)]
        params: Vec<(String, String)>,
        /// Also compute both minimum distances with this method.
        #[arg(long)]
        method: Option<Method>,
        #[arg(long, default_value_t = 1 << 28)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum distance of a code given as JSON (a report, a code or a matrix).
    Mindist {
        input: PathBuf,
        #[arg(long, default_value = "auto")]
        method: Method,
        #[arg(long, default_value_t = 1 << 28)]
        budget: u64,
    },
    /// Rerun the example manifest and print a pass/fail table.
    Reproduce {
        /// Example id, or `all`.
        #[arg(default_value = "all")]
        which: String,
        #[arg(long)]
        include_slow: bool,
        /// Replace the built-in manifest.
        #[arg(long)]
        manifest: Option<String>,
        /// Print the manifest in use and exit.
        #[arg(long)]
        dump_manifest: bool,
    },
    /// Riemann-Roch space of a divisor.
    Rr {
        #[arg(long)]
        field: String,
        #[arg(long)]
        curve: String,
        #[arg(long)]
        divisor: String,
    },
}

fn write_out(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|e| CliError::Io(p.display().to_string(), e)),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io("stdout".into(), e)),
            _ => Ok(()),
        },
    }
}

fn construct(
    field: &str,
    curve: Option<&str>,
    recipe_name: &str,
    params: Vec<(String, String)>,
    method: Option<Method>,
    budget: u64,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let curve = recipe::load_curve(field, curve, recipe_name)?;
    let map: BTreeMap<String, String> = params.into_iter().collect();
    let report = recipe::build(&curve, recipe_name, &map)?;
    let (d, dd) = match method {
        Some(m) => (Some(report.code.min_distance(m, budget)), Some(report.dual.min_distance(m, budget))),
        None => (None, None),
    };
    let json = serde_json::to_string_pretty(&report.to_json(d.as_ref(), dd.as_ref())).expect("report serializes");
    write_out(&json, out)
}

/// Matrices found in the input: `code` and `dual` of a report, or a single code.
fn matrices(v: &Value) -> Result<Vec<(String, MatrixJson, usize)>, CliError> {
    let one = |label: &str, m: &Value, design: usize| -> Result<(String, MatrixJson, usize), CliError> {
        let mj: MatrixJson = serde_json::from_value(m.clone()).map_err(|e| CliError::Usage(format!("{label}: {e}")))?;
        Ok((label.to_string(), mj, design))
    };
    let design = |c: &Value| c.pointer("/params/design_distance").and_then(Value::as_i64).unwrap_or(1).max(1) as usize;
    if let (Some(c), Some(d)) = (v.get("code"), v.get("dual")) {
        let mc = c.get("matrix").ok_or_else(|| CliError::Usage("code.matrix missing".into()))?;
        let md = d.get("matrix").ok_or_else(|| CliError::Usage("dual.matrix missing".into()))?;
        return Ok(vec![one("code", mc, design(c))?, one("dual", md, design(d))?]);
    }
    if let Some(m) = v.get("matrix") {
        return Ok(vec![one("code", m, design(v))?]);
    }
    Ok(vec![one("code", v, 1)?])
}

fn print_distance(label: &str, r: &DistanceReport, secs: f64) {
    let value = if r.exact { format!("d = {}", r.lower) } else { format!("d in [{}, {}]", r.lower, r.upper) };
    let method = serde_json::to_value(&r.method).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    println!("{label}: {value} exact={} method={method} work={} time={secs:.3}s", r.exact, r.work);
    if let Some(cols) = &r.dependent_columns {
        println!("{label}: dependent columns {cols:?}");
    }
}

fn mindist(input: &PathBuf, method: Method, budget: u64) -> Result<(), CliError> {
    let text = std::fs::read_to_string(input).map_err(|e| CliError::Io(input.display().to_string(), e))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", input.display())))?;
    for (label, mj, design) in matrices(&v)? {
        let m = Matrix::from_json(&mj).map_err(|e| CliError::Usage(format!("{label}: {e}")))?;
        let code = LinearCode::new(m);
        println!("{label}: n = {}, k = {}", code.n(), code.k());
        let t = Instant::now();
        let r = code.min_distance(&DistanceOptions { method, budget, lower_bound: design, stop_at_lower: false });
        print_distance(&label, &r, t.elapsed().as_secs_f64());
    }
    Ok(())
}

fn reproduce(which: &str, include_slow: bool, manifest: Option<&str>, dump: bool) -> Result<bool, CliError> {
    let entries = reproduce::load(manifest)?;
    if dump {
        println!("{}", serde_json::to_string_pretty(&entries).expect("manifest serializes"));
        return Ok(true);
    }
    let selected: Vec<_> = if which == "all" {
        entries.iter().collect()
    } else {
        let id: u32 = which.parse().map_err(|_| CliError::Usage(format!("`{which}` is not an example id or `all`")))?;
        let e: Vec<_> = entries.iter().filter(|e| e.id == id).collect();
        if e.is_empty() {
            return Err(CliError::Usage(format!("no example with id {id}")));
        }
        e
    };
    let mut passed = 0;
    for e in &selected {
        let o = reproduce::run_entry(e, include_slow);
        println!("{}", o.text);
        passed += o.passed as usize;
    }
    println!("{passed}/{} passed", selected.len());
    Ok(passed == selected.len())
}

fn rr(field: &str, curve: &str, divisor: &str) -> Result<(), CliError> {
    let c = recipe::load_curve(field, Some(curve), "")?;
    let g = lcd_agc::function_field::Divisor::parse(divisor, &c).map_err(|e| CliError::Usage(format!("--divisor: {e}")))?;
    let b = rr_basis(&c, &g)?;
    println!("genus {}", c.genus());
    println!("deg G = {}, l(G) = {}, i(G) = {}", g.degree(), b.dim(), speciality_index(&c, &g)?);
    for f in &b.functions {
        println!("  {}", f.render());
    }
    Ok(())
}

fn init_threads() {
    if let Some(n) = std::env::var("LCD_AGC_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    init_threads();
    let result = match cli.cmd {
        Cmd::Construct { field, curve, recipe, params, method, budget, out } => {
            construct(&field, curve.as_deref(), &recipe, params, method, budget, out.as_ref()).map(|_| true)
        }
        Cmd::Mindist { input, method, budget } => mindist(&input, method, budget).map(|_| true),
        Cmd::Reproduce { which, include_slow, manifest, dump_manifest } => {
            reproduce(&which, include_slow, manifest.as_deref(), dump_manifest)
        }
        Cmd::Rr { field, curve, divisor } => rr(&field, &curve, &divisor).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            if let CliError::Construction(ConstructionError::Hypothesis { clause, detail, checked, .. }) = &e {
                eprintln!("hypothesis failed: {clause} ({detail})");
                for h in checked {
                    eprintln!("  [{}] {}: {}", if h.passed { "ok" } else { "FAIL" }, h.clause, h.detail);
                }
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
