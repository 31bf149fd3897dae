//! Diagnosis aggregation and report emission.
//!
//! A [`Report`] collects the results of one `analyze` run. Its JSON form has
//! the top-level keys `task`, `global`, `local`, `approx`, `probe`, `rates`,
//! `diagnosis` and `timing`; sections that were not requested are `null`.
//! Rates are rounded to four decimals. Apart from `timing`, the report is a
//! deterministic function of the task, the options and the seed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::probe::{RateReport, StateOutcome};
use crate::topo::{GlobalVerdict, Verdict};

/// How often a (schema, variable) pair occurred in failed analyses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosisEntry {
    pub schema: String,
    pub var: String,
    pub count: usize,
}

/// Diagnosis pairs sorted by descending frequency, ties by name; once with
/// full variable names and once with variables grouped by their predicate
/// name (the name up to the first digit or parenthesis).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnosis {
    pub pairs: Vec<DiagnosisEntry>,
    pub predicates: Vec<DiagnosisEntry>,
}

impl Diagnosis {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Predicate-like prefix of a variable name: `b12` → `b`, `c_v1` → `c_v`.
/// Names starting with a digit are kept whole.
pub fn predicate_name(var: &str) -> &str {
    let end = var.find(|c: char| c.is_ascii_digit() || c == '(').unwrap_or(var.len());
    if end == 0 {
        var
    } else {
        &var[..end]
    }
}

fn sorted(counts: BTreeMap<(String, String), usize>) -> Vec<DiagnosisEntry> {
    let mut v: Vec<DiagnosisEntry> = counts
        .into_iter()
        .map(|((schema, var), count)| DiagnosisEntry { schema, var, count })
        .collect();
    v.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| (&a.schema, &a.var).cmp(&(&b.schema, &b.var))));
    v
}

/// Counts the diagnosis pairs of all failed verdicts. Each pair counts once
/// per verdict.
pub fn aggregate_diagnosis<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>) -> Diagnosis {
    let mut pairs = BTreeMap::new();
    let mut preds = BTreeMap::new();
    for v in verdicts.into_iter().filter(|v| v.applicable && !v.success) {
        let mut distinct: Vec<_> = v.diagnosis.iter().collect();
        distinct.sort();
        distinct.dedup();
        let mut distinct_preds: Vec<(String, String)> = distinct
            .iter()
            .map(|d| (d.schema.clone(), predicate_name(&d.var).to_string()))
            .collect();
        distinct_preds.dedup();
        for d in distinct {
            *pairs.entry((d.schema.clone(), d.var.clone())).or_insert(0) += 1;
        }
        for k in distinct_preds {
            *preds.entry(k).or_insert(0) += 1;
        }
    }
    Diagnosis {
        pairs: sorted(pairs),
        predicates: sorted(preds),
    }
}

/// Rounds a rate to four decimals.
pub fn round4(x: f64) -> f64 {
    (x * 10_000.0).round() / 10_000.0
}

/// Task metadata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskInfo {
    pub file: String,
    pub variables: usize,
    pub operators: usize,
    pub facts: usize,
    pub goal_facts: usize,
    pub warnings: Vec<String>,
}

/// Per-state results of one local method plus its rates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalSection {
    pub method: String,
    pub rate: RateReport,
    pub states: Vec<StateOutcome>,
}

/// Search-probing results.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeSection {
    pub sp: LocalSection,
    pub sp_limited: LocalSection,
    pub limited_budget: u64,
}

/// Wall-clock seconds per phase.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub parse: f64,
    pub static_analysis: f64,
    pub global: f64,
    pub sampling: f64,
    pub local: f64,
    pub probing: f64,
}

/// Sampling parameters and the success/dead-end rate of every method run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Rates {
    pub samples: usize,
    pub seed: u64,
    /// Fraction of sampled non-goal states without a relaxed plan.
    pub dead_end_rate: Option<f64>,
    /// Success rate per method (`None`: no non-goal sample).
    pub success: BTreeMap<String, Option<f64>>,
}

/// The full result of an `analyze` run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub task: TaskInfo,
    pub global: Option<GlobalVerdict>,
    pub local: Option<LocalSection>,
    pub approx: Option<LocalSection>,
    pub probe: Option<ProbeSection>,
    pub rates: Rates,
    pub diagnosis: Diagnosis,
    pub timing: Timing,
}

/// Output format of [`emit_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Rounds all rates of a section in place.
pub fn round_rates(rate: &mut RateReport) {
    rate.success_rate = rate.success_rate.map(round4);
    rate.dead_end_rate = rate.dead_end_rate.map(round4);
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "n/a".to_string(), |x| x.to_string())
}

fn rate_line(out: &mut String, r: &RateReport) {
    let bounds = r
        .bounds
        .map_or_else(|| "n/a".to_string(), |b| format!("{}/{:.2}/{}", b.min, b.mean, b.max));
    let _ = writeln!(
        out,
        "  {:<14} success {} ({}/{}), dead ends {}, bounds min/mean/max {}",
        r.method,
        opt(r.success_rate),
        r.successes,
        r.considered,
        opt(r.dead_end_rate),
        bounds
    );
}

/// Serializes a report as pretty JSON or human-readable text.
pub fn emit_report(r: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => emit_text(r).into_bytes(),
    }
}

fn emit_text(r: &Report) -> String {
    let mut out = String::new();
    let t = &r.task;
    let _ = writeln!(
        out,
        "task {}: {} variables, {} operators, {} facts, {} goal facts",
        t.file, t.variables, t.operators, t.facts, t.goal_facts
    );
    for w in &t.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    if let Some(g) = &r.global {
        let v = &g.verdict;
        let _ = writeln!(
            out,
            "global: {} bound {} branch {} ({}/{} dependency graphs successful, fraction {})",
            if v.success { "yes" } else { "no" },
            opt(v.bound),
            opt(v.branch),
            g.successful_graphs,
            g.total_graphs,
            g.fraction
        );
        if !g.vacuous_goal_vars.is_empty() {
            let _ = writeln!(out, "  goal variables without relevant transitions: {}", g.vacuous_goal_vars.join(", "));
        }
    }
    if r.local.is_some() || r.approx.is_some() || r.probe.is_some() {
        let _ = writeln!(
            out,
            "rates over {} samples (seed {}), dead-end rate {}:",
            r.rates.samples,
            r.rates.seed,
            opt(r.rates.dead_end_rate)
        );
    }
    for s in [&r.local, &r.approx].into_iter().flatten() {
        rate_line(&mut out, &s.rate);
    }
    if let Some(p) = &r.probe {
        rate_line(&mut out, &p.sp.rate);
        rate_line(&mut out, &p.sp_limited.rate);
    }
    if !r.diagnosis.is_empty() {
        let _ = writeln!(out, "diagnosis (schema, variable, count):");
        for d in r.diagnosis.pairs.iter().take(10) {
            let _ = writeln!(out, "  {} {} {}", d.schema, d.var, d.count);
        }
    }
    let tm = &r.timing;
    let _ = writeln!(
        out,
        "timing (s): parse {:.4}, static {:.4}, global {:.4}, sampling {:.4}, local {:.4}, probing {:.4}",
        tm.parse, tm.static_analysis, tm.global, tm.sampling, tm.local, tm.probing
    );
    out
}
