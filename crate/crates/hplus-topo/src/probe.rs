//! Random-walk state sampling, success-rate statistics and search probing.
//!
//! Sample sets consist of the initial state plus `R` random-walk endpoints.
//! Each walk draws its length uniformly from `0..=5·h^FF(s_I)` and then
//! applies uniformly chosen applicable operators; walk `i` uses its own RNG
//! stream derived from the seed, so results do not depend on how states are
//! later processed.
//!
//! Search probing is a breadth-first search on the current `h^FF` plateau
//! (optionally restricted to helpful actions) for a state with a strictly
//! better successor.

use std::collections::{HashSet, VecDeque};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::relax::{h_ff, PlanSource};
use crate::task::{State, Task};
use crate::topo::{Analyzer, Verdict};

/// Default expansion budget of the bounded probe.
pub const DEFAULT_PROBE_BUDGET: u64 = 10_000;

/// The initial state has no relaxed plan, so walk lengths are undefined.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the initial state is a dead end (no relaxed plan)")]
pub struct InitialDeadEnd;

/// The initial state plus `R` random-walk endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSet {
    pub states: Vec<State>,
    pub seed: u64,
    /// Drawn length of each walk (excluding the initial state).
    pub walk_lengths: Vec<usize>,
    /// Steps actually taken; smaller than the drawn length when the walk hit
    /// a state without applicable operators.
    pub steps_taken: Vec<usize>,
}

impl SampleSet {
    /// Number of walks whose drawn length could not be completed.
    pub fn truncated_walks(&self) -> usize {
        self.walk_lengths.iter().zip(&self.steps_taken).filter(|(a, b)| a != b).count()
    }
}

/// Samples `r` states by random walks from the initial state.
pub fn sample_states(task: &Task, r: usize, seed: u64) -> Result<SampleSet, InitialDeadEnd> {
    let h0 = h_ff(task, task.init()).value.ok_or(InitialDeadEnd)?;
    let max_len = 5 * h0;
    let mut states = vec![task.init().clone()];
    let mut walk_lengths = Vec::with_capacity(r);
    let mut steps_taken = Vec::with_capacity(r);
    for i in 0..r {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let len = rng.random_range(0..=max_len);
        let mut s = task.init().clone();
        let mut taken = 0;
        for _ in 0..len {
            let ops = task.applicable_ops(&s);
            if ops.is_empty() {
                break;
            }
            let o = ops[rng.random_range(0..ops.len())];
            s = task.apply_unchecked(&s, o);
            taken += 1;
        }
        states.push(s);
        walk_lengths.push(len);
        steps_taken.push(taken);
    }
    Ok(SampleSet {
        states,
        seed,
        walk_lengths,
        steps_taken,
    })
}

/// Limit on a search probe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeLimit {
    Unlimited,
    Expansions(u64),
    WallClock(Duration),
}

/// Outcome of a search probe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub found: bool,
    pub expansions: u64,
    /// BFS depth of the expanded state that had an improving successor.
    pub depth: Option<usize>,
}

/// Breadth-first search from `s` over states with the same `h^FF` value,
/// succeeding at the first expanded state with a successor of strictly
/// smaller `h^FF`. With `helpful_only`, successors are generated by helpful
/// actions only. Returns `found = false` for goal states and dead ends.
pub fn search_probe(task: &Task, s: &State, limit: ProbeLimit, helpful_only: bool) -> ProbeResult {
    let fail = |expansions| ProbeResult {
        found: false,
        expansions,
        depth: None,
    };
    let root = h_ff(task, s);
    let Some(h0) = root.value.filter(|&h| h > 0) else {
        return fail(0);
    };
    let started = Instant::now();
    let mut seen: HashSet<State> = HashSet::from([s.clone()]);
    let mut queue = VecDeque::from([(s.clone(), 0usize, root.helpful)]);
    let mut expansions = 0u64;
    while let Some((cur, depth, helpful)) = queue.pop_front() {
        match limit {
            ProbeLimit::Expansions(b) if expansions >= b => return fail(b),
            ProbeLimit::WallClock(d) if started.elapsed() >= d => return fail(expansions),
            _ => {}
        }
        expansions += 1;
        let ops = if helpful_only { helpful } else { task.applicable_ops(&cur) };
        for o in ops {
            let next = task.apply_unchecked(&cur, o);
            if seen.contains(&next) {
                continue;
            }
            let ff = h_ff(task, &next);
            match ff.value {
                Some(h) if h < h0 => {
                    return ProbeResult {
                        found: true,
                        expansions,
                        depth: Some(depth),
                    }
                }
                Some(h) if h == h0 => {
                    seen.insert(next.clone());
                    queue.push_back((next, depth + 1, ff.helpful));
                }
                _ => {}
            }
        }
    }
    fail(expansions)
}

/// Per-state method whose success rate is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Approx(PlanSource),
    Guaranteed,
    /// Unlimited search probing with helpful-actions pruning.
    Sp,
    /// Search probing bounded by an expansion budget.
    SpLimited(u64),
}

impl Method {
    pub fn name(&self) -> String {
        match self {
            Method::Approx(src) => format!("approx-{}", src),
            Method::Guaranteed => "guaranteed".to_string(),
            Method::Sp => "sp".to_string(),
            Method::SpLimited(_) => "sp-limited".to_string(),
        }
    }
}

/// Outcome of one method on one sample state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateOutcome {
    pub state: String,
    pub goal: bool,
    pub dead_end: bool,
    pub success: bool,
    pub bound: Option<u64>,
    /// Present for the analyses, absent for probing.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeResult>,
}

/// Minimum, mean and maximum of the bounds returned on successes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundStats {
    pub min: u64,
    pub mean: f64,
    pub max: u64,
}

/// Success and dead-end rates of one method over a sample set. Goal states
/// are excluded from the denominator; rates are `None` when no non-goal
/// state was sampled.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub method: String,
    pub samples: usize,
    pub considered: usize,
    pub successes: usize,
    pub dead_ends: usize,
    pub success_rate: Option<f64>,
    pub dead_end_rate: Option<f64>,
    pub bounds: Option<BoundStats>,
}

/// Runs `method` on every sample state, in parallel; the result order
/// follows the sample order.
pub fn evaluate(analyzer: &Analyzer<'_>, samples: &SampleSet, method: Method) -> Vec<StateOutcome> {
    let task = analyzer.task;
    samples
        .states
        .par_iter()
        .map(|s| {
            let goal = task.is_goal(s);
            let dead_end = !goal && h_ff(task, s).value.is_none();
            let (verdict, probe) = match method {
                Method::Approx(src) => (Some(analyzer.analyze_state_approx(s, src)), None),
                Method::Guaranteed => (Some(analyzer.analyze_state_guaranteed(s)), None),
                Method::Sp => (None, Some(search_probe(task, s, ProbeLimit::Unlimited, true))),
                Method::SpLimited(b) => (None, Some(search_probe(task, s, ProbeLimit::Expansions(b), true))),
            };
            let success = !goal && verdict.as_ref().map_or_else(|| probe.is_some_and(|p| p.found), |v| v.success);
            StateOutcome {
                state: task.state_key(s),
                goal,
                dead_end,
                success,
                bound: verdict.as_ref().and_then(|v| v.bound),
                verdict,
                probe,
            }
        })
        .collect()
}

/// Summarizes per-state outcomes into rates.
pub fn summarize(method: Method, outcomes: &[StateOutcome]) -> RateReport {
    let considered: Vec<&StateOutcome> = outcomes.iter().filter(|o| !o.goal).collect();
    let n = considered.len();
    let successes = considered.iter().filter(|o| o.success).count();
    let dead_ends = considered.iter().filter(|o| o.dead_end).count();
    let bounds: Vec<u64> = considered.iter().filter(|o| o.success).filter_map(|o| o.bound).collect();
    let rate = |k: usize| (n > 0).then(|| k as f64 / n as f64);
    RateReport {
        method: method.name(),
        samples: outcomes.len(),
        considered: n,
        successes,
        dead_ends,
        success_rate: rate(successes),
        dead_end_rate: rate(dead_ends),
        bounds: (!bounds.is_empty()).then(|| BoundStats {
            min: *bounds.iter().min().expect("nonempty"),
            mean: bounds.iter().sum::<u64>() as f64 / bounds.len() as f64,
            max: *bounds.iter().max().expect("nonempty"),
        }),
    }
}

/// Runs `method` over the samples and reports its rates.
pub fn rate_report(analyzer: &Analyzer<'_>, samples: &SampleSet, method: Method) -> RateReport {
    summarize(method, &evaluate(analyzer, samples, method))
}
