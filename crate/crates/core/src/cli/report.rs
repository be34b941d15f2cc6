//! Report values and their three renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::extensions::{EnumerationMethod, ExtensionClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Cohomology,
    Extensions,
    Verify,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Full,
    Reduced,
    Closed,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Tsv,
    Pretty,
}

/// The validated job, echoed at the top of every report.
///
/// `coeff` holds the normalized invariant factors; `coeff_input` is the
/// string the user typed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Command,
    pub p: Option<u64>,
    pub nu: Option<u32>,
    pub eta: Option<u32>,
    pub coeff_input: String,
    pub coeff: Vec<u64>,
    pub degree: Option<usize>,
    pub method: Option<MethodChoice>,
    pub enumeration: Option<EnumerationMethod>,
    pub representatives: bool,
    pub max_v: Option<u64>,
    pub seed: Option<u64>,
    pub output: OutputFormat,
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub job: JobSpec,
    pub results: Vec<ResultRow>,
    /// Wall-clock milliseconds, present only when asked for so that
    /// reports stay byte-identical by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ResultRow {
    Cohomology(CohomologyRow),
    Extensions(ExtensionsRow),
    Verify(VerifyRow),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub p: u64,
    pub nu: u32,
    pub eta: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteValue {
    pub method: String,
    pub invariant_factors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agreement {
    pub first: String,
    pub second: String,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representative {
    /// Order of the cyclic summand it generates.
    pub order: u64,
    /// Values on the degree `n` generators of the full complex, one
    /// coordinate list per generator.
    pub values: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRow {
    pub member: Member,
    pub coeff: Vec<u64>,
    pub degree: usize,
    /// The common value when every computed route agrees.
    pub invariant_factors: Option<Vec<u64>>,
    pub routes: Vec<RouteValue>,
    pub agreement: Vec<Agreement>,
    /// `all-agree`, `disagree`, or the single route name.
    pub status: String,
    /// Routes that were requested but do not apply (infinite coefficients).
    pub skipped: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Representative>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionsRow {
    pub member: Member,
    pub coeff: Vec<u64>,
    pub method: EnumerationMethod,
    pub class_count: usize,
    /// `|H^2|` from the closed formulas, for comparison with `class_count`.
    pub h2_order: u64,
    pub classes: Vec<ExtensionClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub member: Member,
    pub coeff: Vec<u64>,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyRow {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn list(xs: &[u64]) -> String {
    let parts: Vec<String> = xs.iter().map(u64::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Renders `report`. JSON follows the field order of the types above, so
/// equal reports give identical bytes.
pub fn emit(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string(report).expect("reports always serialize");
            s.push('\n');
            s
        }
        OutputFormat::Tsv => tsv_lines(report).into_iter().map(|l| l.join("\t") + "\n").collect(),
        OutputFormat::Pretty => pretty(report),
    }
}

fn tsv_lines(report: &Report) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    for row in &report.results {
        match row {
            ResultRow::Cohomology(r) => out.push(vec![
                r.member.p.to_string(),
                r.member.nu.to_string(),
                r.member.eta.to_string(),
                list(&r.coeff),
                r.degree.to_string(),
                r.invariant_factors.as_deref().map(list).unwrap_or_else(|| "-".into()),
                r.status.clone(),
            ]),
            ResultRow::Extensions(r) => out.push(vec![
                r.member.p.to_string(),
                r.member.nu.to_string(),
                r.member.eta.to_string(),
                list(&r.coeff),
                "2".into(),
                r.class_count.to_string(),
                serde_json::to_value(r.method).expect("enum").as_str().unwrap_or_default().to_string(),
            ]),
            ResultRow::Verify(r) => {
                for c in &r.checks {
                    out.push(vec![
                        r.member.p.to_string(),
                        r.member.nu.to_string(),
                        r.member.eta.to_string(),
                        list(&r.coeff),
                        c.name.clone(),
                        if c.pass { "pass".into() } else { "fail".into() },
                    ]);
                }
            }
        }
    }
    out
}

fn pretty(report: &Report) -> String {
    let header: Vec<String> = match report.job.command {
        Command::Cohomology | Command::Table => ["p", "nu", "eta", "coeff", "degree", "H", "routes"],
        Command::Extensions => ["p", "nu", "eta", "coeff", "degree", "classes", "method"],
        Command::Verify => ["p", "nu", "eta", "coeff", "check", "result", ""],
    }
    .iter()
    .filter(|h| !h.is_empty())
    .map(|h| h.to_string())
    .collect();
    let mut rows = vec![header];
    rows.extend(tsv_lines(report));
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..ncols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut s = String::new();
    for r in &rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, x)| format!("{x:<w$}", w = widths[c])).collect();
        let _ = writeln!(s, "{}", cells.join("  ").trim_end());
    }
    if let Some(ms) = report.timing_ms {
        let _ = writeln!(s, "elapsed: {ms} ms");
    }
    s
}
