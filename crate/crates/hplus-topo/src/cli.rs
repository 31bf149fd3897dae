//! Command-line front end: `gen`, `analyze` and `verify`.
//!
//! Exit codes: 0 when the command completed (whatever the verdicts), 1 on
//! usage, input or parse errors, 2 when a state cap or search budget was
//! exhausted.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::benchgen::{generate, DomainParams};
use crate::error::OracleError;
use crate::probe::{self, Method, SampleSet};
use crate::relax::{PlanSource, DEFAULT_BUDGET};
use crate::report::{self, Format, LocalSection, ProbeSection, Rates, Report, TaskInfo, Timing};
use crate::task::{parse_task, Task};
use crate::topo::{Analyzer, Failure};

#[derive(Parser, Debug)]
#[command(name = "hplus-topo", version, about = "Static analysis of h+ local-search topology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a benchmark or example task file.
    Gen(GenArgs),
    /// Analyse a task: global verdict, sampled local verdicts, probing.
    Analyze(AnalyzeArgs),
    /// Check all analyses against the exhaustive state space.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Domain name (logistics, miconic, simple_tsp, movie, ferry, gripper,
    /// transport) or example1..example8.
    domain: String,
    /// Generator parameter `key=value`; repeatable.
    #[arg(long = "param", value_parser = parse_kv)]
    params: Vec<(String, String)>,
    /// Output file (standard output if omitted).
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Run the global analysis.
    #[arg(long)]
    global: bool,
    /// Run the guaranteed local analysis on the samples.
    #[arg(long)]
    local: bool,
    /// Run the approximate local analysis on the samples.
    #[arg(long)]
    approx: bool,
    /// Run search probing on the samples.
    #[arg(long)]
    probe: bool,
    /// Number of random-walk samples besides the initial state.
    #[arg(long = "R", default_value_t = 10)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relaxed-plan engine for the approximate analysis.
    #[arg(long, default_value = "ff")]
    plan_source: PlanSource,
    /// Node-expansion budget of the exact relaxed-plan engines.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Expansion budget of the bounded search probe.
    #[arg(long, default_value_t = probe::DEFAULT_PROBE_BUDGET)]
    probe_budget: u64,
    /// Write the JSON report to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Format of the report on standard output.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    file: PathBuf,
    /// Maximum number of reachable states to enumerate.
    #[arg(long, default_value_t = 100_000)]
    state_cap: usize,
    /// Write the verification report as JSON to this file.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn parse_kv(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    Ok((k.to_string(), v.to_string()))
}

/// Failure of a command, mapped to an exit code.
enum CliError {
    Usage(String),
    Exhausted(String),
}

impl CliError {
    fn report(self) -> i32 {
        match self {
            CliError::Usage(m) => {
                eprintln!("error: {m}");
                1
            }
            CliError::Exhausted(m) => {
                eprintln!("error: {m}");
                2
            }
        }
    }
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(bytes)
                .map_err(|e| CliError::Usage(format!("cannot write output: {e}")))
        }
    }
}

fn load_task(path: &Path) -> Result<Task, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_task(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => run_gen(a),
        Command::Analyze(a) => run_analyze(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => e.report(),
    }
}

fn run_gen(a: GenArgs) -> Result<(), CliError> {
    let params = DomainParams::parse(&a.domain, &a.params).map_err(|e| CliError::Usage(e.to_string()))?;
    let task = generate(&params).map_err(|e| CliError::Usage(e.to_string()))?;
    write_output(a.output.as_deref(), task.to_json().as_bytes())
}

fn local_section(analyzer: &Analyzer<'_>, samples: &SampleSet, method: Method) -> LocalSection {
    let states = probe::evaluate(analyzer, samples, method);
    let mut rate = probe::summarize(method, &states);
    report::round_rates(&mut rate);
    LocalSection {
        method: method.name(),
        rate,
        states,
    }
}

fn budget_hit(section: &Option<LocalSection>) -> bool {
    section.iter().flat_map(|s| &s.states).any(|o| {
        o.verdict
            .as_ref()
            .is_some_and(|v| v.failures.contains(&Failure::BudgetExceeded))
    })
}

fn run_analyze(a: AnalyzeArgs) -> Result<(), CliError> {
    let (mut global, mut local, mut approx, mut probing) = (a.global, a.local, a.approx, a.probe);
    if !(global || local || approx || probing) {
        (global, local, approx, probing) = (true, true, true, true);
    }
    let mut timing = Timing::default();
    let clock = Instant::now();
    let task = load_task(&a.file)?;
    timing.parse = clock.elapsed().as_secs_f64();

    let clock = Instant::now();
    let analyzer = Analyzer::new(&task).with_budget(a.budget);
    timing.static_analysis = clock.elapsed().as_secs_f64();

    let clock = Instant::now();
    let global_verdict = global.then(|| {
        let mut g = analyzer.analyze_global();
        g.fraction = report::round4(g.fraction);
        g
    });
    timing.global = clock.elapsed().as_secs_f64();

    let clock = Instant::now();
    let samples = if local || approx || probing {
        match probe::sample_states(&task, a.r, a.seed) {
            Ok(s) => Some(s),
            Err(e) => {
                eprintln!("warning: no sampling: {e}");
                None
            }
        }
    } else {
        None
    };
    timing.sampling = clock.elapsed().as_secs_f64();

    let clock = Instant::now();
    let local_sec = samples
        .as_ref()
        .filter(|_| local)
        .map(|s| local_section(&analyzer, s, Method::Guaranteed));
    let approx_sec = samples
        .as_ref()
        .filter(|_| approx)
        .map(|s| local_section(&analyzer, s, Method::Approx(a.plan_source)));
    timing.local = clock.elapsed().as_secs_f64();

    let clock = Instant::now();
    let probe_sec = samples.as_ref().filter(|_| probing).map(|s| ProbeSection {
        sp: local_section(&analyzer, s, Method::Sp),
        sp_limited: local_section(&analyzer, s, Method::SpLimited(a.probe_budget)),
        limited_budget: a.probe_budget,
    });
    timing.probing = clock.elapsed().as_secs_f64();

    let mut rates = Rates {
        samples: samples.as_ref().map_or(0, |s| s.states.len()),
        seed: a.seed,
        ..Rates::default()
    };
    let sections = [&local_sec, &approx_sec]
        .into_iter()
        .flatten()
        .chain(probe_sec.iter().flat_map(|p| [&p.sp, &p.sp_limited]));
    for s in sections {
        rates.dead_end_rate = s.rate.dead_end_rate;
        rates.success.insert(s.method.clone(), s.rate.success_rate);
    }

    let verdicts = global_verdict
        .iter()
        .flat_map(|g| g.graphs.iter().map(|o| &o.verdict))
        .chain(
            [&local_sec, &approx_sec]
                .into_iter()
                .flatten()
                .flat_map(|s| s.states.iter().filter_map(|o| o.verdict.as_ref())),
        );
    let diagnosis = report::aggregate_diagnosis(verdicts);
    let exhausted = budget_hit(&local_sec) || budget_hit(&approx_sec);

    let report = Report {
        task: TaskInfo {
            file: a.file.display().to_string(),
            variables: task.num_vars(),
            operators: task.num_ops(),
            facts: task.num_facts(),
            goal_facts: task.goal().len(),
            warnings: task.lint(),
        },
        global: global_verdict,
        local: local_sec,
        approx: approx_sec,
        probe: probe_sec,
        rates,
        diagnosis,
        timing,
    };
    let format = match a.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    write_output(None, &report::emit_report(&report, format))?;
    if let Some(p) = &a.json {
        write_output(Some(p), &report::emit_report(&report, Format::Json))?;
    }
    if exhausted {
        return Err(CliError::Exhausted(format!(
            "relaxed-plan budget of {} expansions exhausted on some states",
            a.budget
        )));
    }
    Ok(())
}

fn run_verify(a: VerifyArgs) -> Result<(), CliError> {
    let task = load_task(&a.file)?;
    let report = crate::oracle::verify_analyzers(&task, a.state_cap).map_err(|e| match e {
        OracleError::CapExceeded { .. } | OracleError::Budget(_) => CliError::Exhausted(e.to_string()),
    })?;
    let init = &report.records[0];
    println!(
        "states {} (in scope {}), local minima {}, max exit distance {}",
        report.states,
        report.in_scope,
        report.local_minima,
        report.max_exit_distance.map_or("n/a".into(), |d| d.to_string())
    );
    println!(
        "initial state: h+ {}, local minimum {}, exit distance {}",
        init.h_plus.map_or("inf".into(), |h| h.to_string()),
        init.local_minimum,
        init.exit_distance.map_or("inf".into(), |d| d.to_string())
    );
    println!(
        "global: {} bound {}",
        if report.global_success { "yes" } else { "no" },
        report.global_bound.map_or("n/a".into(), |b| b.to_string())
    );
    println!(
        "soundness violations {}, false negatives guaranteed {} approx(exact) {}, approx(ff) false positives {}",
        report.violations.len(),
        report.guaranteed_false_negatives,
        report.approx_exact_false_negatives,
        report.approx_ff_false_positives.len()
    );
    for v in &report.violations {
        println!(
            "  violation: {:?} at {} claimed bound {} (local minimum {}, exit distance {:?})",
            v.analysis, v.state, v.bound, v.local_minimum, v.exit_distance
        );
    }
    if let Some(p) = &a.json {
        let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
        s.push('\n');
        write_output(Some(p), s.as_bytes())?;
    }
    Ok(())
}
