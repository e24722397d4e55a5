//! The built-in example manifest and its pass/fail runner.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use lcd_agc::agcode::{DistanceReport, GeneralizedAGCode, Method};
use lcd_agc::constructions::ConstructionReport;

use crate::recipe::{build, load_curve};
use crate::CliError;

pub const BUILTIN: &str = include_str!("../manifest.json");

/// Budget for entries marked slow when `--include-slow` is absent. Large
/// enough for every fast entry, too small for a 16^8 enumeration.
pub const FAST_BUDGET: u64 = 1 << 26;
pub const SLOW_BUDGET: u64 = 1 << 34;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Entry {
    pub id: u32,
    pub name: String,
    pub note: String,
    pub field: String,
    pub curve: String,
    pub recipe: String,
    pub params: BTreeMap<String, String>,
    pub code: Expect,
    pub dual: Expect,
}

/// Expected values for one side of a pair. `d` is an exact claim, `d_at_least`
/// a lower bound; neither set means the distance is not checked.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Expect {
    pub n: usize,
    pub k: usize,
    pub lcd: bool,
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default)]
    pub d_at_least: Option<usize>,
    #[serde(default)]
    pub method: Option<String>,
    #[serde(default)]
    pub slow: bool,
    #[serde(default)]
    pub flags: BTreeMap<String, bool>,
}

pub fn load(path: Option<&str>) -> Result<Vec<Entry>, CliError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Io(p.to_string(), e))?,
        None => BUILTIN.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("manifest: {e}")))
}

pub struct Outcome {
    pub passed: bool,
    pub text: String,
}

fn describe(d: &DistanceReport) -> String {
    if d.exact {
        format!("{}", d.lower)
    } else {
        format!("[{},{}]", d.lower, d.upper)
    }
}

/// Checks one side and returns its summary plus any mismatches.
fn check_side(label: &str, code: &GeneralizedAGCode, e: &Expect, include_slow: bool, diffs: &mut Vec<String>) -> String {
    let mut mismatch = |what: &str, want: String, got: String| diffs.push(format!("{label}.{what}: expected {want}, got {got}"));
    if code.n() != e.n {
        mismatch("n", e.n.to_string(), code.n().to_string());
    }
    if code.k() != e.k {
        mismatch("k", e.k.to_string(), code.k().to_string());
    }
    let lcd = code.is_lcd();
    if lcd != e.lcd {
        mismatch("lcd", e.lcd.to_string(), lcd.to_string());
    }
    let needs_distance = e.d.is_some() || !e.flags.is_empty();
    let method: Method = e.method.as_deref().unwrap_or("auto").parse().unwrap_or(Method::Auto);
    let budget = if e.slow && !include_slow { FAST_BUDGET } else { SLOW_BUDGET };
    let dist = if needs_distance { Some(code.min_distance(method, budget)) } else { None };
    let design = code.design_distance();
    let mut shown = format!("[{},{}", code.n(), code.k());
    match &dist {
        Some(d) => {
            shown.push_str(&format!(",{}]", describe(d)));
            if let Some(want) = e.d {
                let ok = if d.exact { d.lower == want } else { d.lower <= want && want <= d.upper };
                if !ok {
                    mismatch("d", want.to_string(), describe(d));
                }
                if !d.exact {
                    shown.push_str(" (bracket)");
                }
            }
        }
        None => shown.push_str(&format!("], d>={design}")),
    }
    if let Some(lo) = e.d_at_least {
        let proved = design >= lo as i64 || dist.as_ref().is_some_and(|d| d.lower >= lo);
        if !proved {
            mismatch("d_at_least", lo.to_string(), format!("design distance {design}"));
        }
    }
    if !e.flags.is_empty() {
        let flags = serde_json::to_value(code.params(dist.as_ref()).flags).expect("flags serialize");
        for (name, want) in &e.flags {
            match flags.get(name).and_then(|v| v.as_bool()) {
                Some(got) if got == *want => {}
                Some(got) => mismatch(&format!("flags.{name}"), want.to_string(), got.to_string()),
                None => mismatch(&format!("flags.{name}"), want.to_string(), "unknown flag".into()),
            }
        }
    }
    format!("{shown}{}", if lcd { " LCD" } else { "" })
}

pub fn run_entry(entry: &Entry, include_slow: bool) -> Outcome {
    let mut diffs = Vec::new();
    let built: Result<ConstructionReport, CliError> =
        load_curve(&entry.field, Some(&entry.curve), &entry.recipe).and_then(|c| build(&c, &entry.recipe, &entry.params));
    let summary = match built {
        Ok(rep) => {
            let a = check_side("code", &rep.code, &entry.code, include_slow, &mut diffs);
            let b = check_side("dual", &rep.dual, &entry.dual, include_slow, &mut diffs);
            if !rep.duality_holds() {
                diffs.push("duality: generator products are not zero".into());
            }
            format!("{a} / {b}")
        }
        Err(e) => {
            diffs.push(format!("construction failed: {e}"));
            "not built".into()
        }
    };
    let passed = diffs.is_empty();
    let mut text = format!("{:>2} {:<18} {:<14} {} {}", entry.id, entry.name, entry.recipe, summary, if passed { "PASS" } else { "FAIL" });
    for d in &diffs {
        let _ = write!(text, "\n     {d}");
    }
    Outcome { passed, text }
}
