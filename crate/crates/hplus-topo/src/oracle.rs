//! Brute-force ground truth on small tasks.
//!
//! The reachable state space is enumerated breadth-first, a heuristic value
//! (exact `h⁺` by default) is computed for every state, and local minima and
//! exit distances are derived literally from their definitions:
//!
//! * a state `s` with `0 < h(s) < ∞` is a local minimum iff no state
//!   reachable from `s` along arcs that keep `h` equal to `h(s)` has a
//!   successor with strictly smaller `h` (a monotone path that drops below
//!   `h(s)` cannot come back, so monotone paths to exits stay on the
//!   plateau);
//! * an exit is a state with a strictly better successor; the exit distance
//!   is the length of a shortest path, over all arcs, to an exit of the
//!   same `h` value — equivalently, the distance to the nearest strictly
//!   better state minus one.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{BudgetExceeded, OracleError};
use crate::relax::{h_ff, h_plus_exact, RelaxedTask, DEFAULT_BUDGET};
use crate::task::{OpId, State, Task};
use crate::topo::{Analyzer, Verdict};

/// The reachable state space of a task.
#[derive(Clone, Debug)]
pub struct StateSpace {
    /// States in BFS order; index 0 is the initial state.
    pub states: Vec<State>,
    /// Outgoing arcs per state, labeled with the operator.
    pub arcs: Vec<Vec<(OpId, usize)>>,
    index: HashMap<State, usize>,
}

impl StateSpace {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Index of a reachable state.
    pub fn index_of(&self, s: &State) -> Option<usize> {
        self.index.get(s).copied()
    }

    fn reverse_arcs(&self) -> Vec<Vec<usize>> {
        let mut rev = vec![Vec::new(); self.len()];
        for (i, out) in self.arcs.iter().enumerate() {
            for &(_, j) in out {
                rev[j].push(i);
            }
        }
        rev
    }
}

/// Enumerates the states reachable from the initial state.
pub fn enumerate(task: &Task, cap: usize) -> Result<StateSpace, OracleError> {
    let mut states = vec![task.init().clone()];
    let mut index = HashMap::from([(task.init().clone(), 0)]);
    let mut arcs = Vec::new();
    let mut next = 0;
    while next < states.len() {
        let s = states[next].clone();
        let mut out = Vec::new();
        for o in task.applicable_ops(&s) {
            let t = task.apply_unchecked(&s, o);
            let j = match index.get(&t) {
                Some(&j) => j,
                None => {
                    if states.len() == cap {
                        return Err(OracleError::CapExceeded { cap });
                    }
                    index.insert(t.clone(), states.len());
                    states.push(t);
                    states.len() - 1
                }
            };
            out.push((o, j));
        }
        arcs.push(out);
        next += 1;
    }
    Ok(StateSpace { states, arcs, index })
}

/// Exact `h⁺` of every state, computed in parallel.
pub fn h_plus_all(task: &Task, ss: &StateSpace, budget: u64) -> Result<Vec<Option<usize>>, BudgetExceeded> {
    let rt = RelaxedTask::new(task);
    ss.states
        .par_iter()
        .map(|s| crate::relax::h_plus_exact_from(&rt, &task.state_facts(s), budget).map(|p| p.map(|ops| ops.len())))
        .collect()
}

/// `h^FF` of every state, computed in parallel.
pub fn h_ff_all(task: &Task, ss: &StateSpace) -> Vec<Option<usize>> {
    ss.states.par_iter().map(|s| h_ff(task, s).value).collect()
}

/// Per-state topology under a heuristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyFacts {
    pub h: Vec<Option<usize>>,
    /// Meaningful only for states with `0 < h < ∞`; false elsewhere.
    pub local_minimum: Vec<bool>,
    /// Exit distance; `None` is infinity (and is used for states with
    /// `h = 0` or `h = ∞`, where exits are undefined).
    pub exit_distance: Vec<Option<usize>>,
    /// Length of a shortest monotone path to an exit; `None` for local
    /// minima and states outside `0 < h < ∞`.
    pub monotone_exit_distance: Vec<Option<usize>>,
}

impl TopologyFacts {
    /// Whether the topology question is posed for state `i`.
    pub fn in_scope(&self, i: usize) -> bool {
        self.h[i].is_some_and(|h| h > 0)
    }
}

fn improving(h: &[Option<usize>], i: usize, j: usize) -> bool {
    matches!((h[i], h[j]), (Some(a), Some(b)) if b < a)
}

/// Derives local minima and exit distances from per-state heuristic values.
pub fn topology(ss: &StateSpace, h: Vec<Option<usize>>) -> TopologyFacts {
    let n = ss.len();
    let rev = ss.reverse_arcs();
    let exits: Vec<bool> = (0..n).map(|i| ss.arcs[i].iter().any(|&(_, j)| improving(&h, i, j))).collect();

    // Monotone exit distance: reverse BFS from all exits along arcs that
    // keep h constant.
    let mut monotone = vec![None; n];
    let mut queue = VecDeque::new();
    for i in (0..n).filter(|&i| exits[i]) {
        monotone[i] = Some(0);
        queue.push_back(i);
    }
    while let Some(j) = queue.pop_front() {
        let d = monotone[j].expect("queued states have a distance");
        for &i in &rev[j] {
            if monotone[i].is_none() && h[i] == h[j] {
                monotone[i] = Some(d + 1);
                queue.push_back(i);
            }
        }
    }

    // Exit distance: per heuristic level v, reverse BFS over all arcs from
    // every state with h < v.
    let mut levels: Vec<usize> = h.iter().flatten().copied().filter(|&v| v > 0).collect();
    levels.sort_unstable();
    levels.dedup();
    let mut exit_distance = vec![None; n];
    for v in levels {
        let mut dist: Vec<Option<usize>> = vec![None; n];
        let mut queue = VecDeque::new();
        for i in (0..n).filter(|&i| h[i].is_some_and(|x| x < v)) {
            dist[i] = Some(0);
            queue.push_back(i);
        }
        while let Some(j) = queue.pop_front() {
            let d = dist[j].expect("queued states have a distance");
            for &i in &rev[j] {
                if dist[i].is_none() {
                    dist[i] = Some(d + 1);
                    queue.push_back(i);
                }
            }
        }
        for i in (0..n).filter(|&i| h[i] == Some(v)) {
            exit_distance[i] = dist[i].map(|d| d - 1);
        }
    }

    let in_scope = |i: usize| h[i].is_some_and(|x| x > 0);
    let local_minimum = (0..n).map(|i| in_scope(i) && monotone[i].is_none()).collect();
    let monotone_exit_distance = (0..n).map(|i| monotone[i].filter(|_| in_scope(i))).collect();
    TopologyFacts {
        local_minimum,
        exit_distance,
        monotone_exit_distance,
        h,
    }
}

/// A shortest monotone path from state `i` to an exit followed by the
/// improving step, as operators; `None` if `i` is a local minimum or out of
/// scope.
pub fn monotone_exit_path(ss: &StateSpace, topo: &TopologyFacts, i: usize) -> Option<Vec<OpId>> {
    topo.monotone_exit_distance[i]?;
    let h = &topo.h;
    let mut path = Vec::new();
    let mut cur = i;
    loop {
        if let Some(&(o, _)) = ss.arcs[cur].iter().find(|&&(_, j)| improving(h, cur, j)) {
            path.push(o);
            return Some(path);
        }
        let d = topo.monotone_exit_distance[cur].expect("on the monotone path");
        let &(o, j) = ss.arcs[cur]
            .iter()
            .find(|&&(_, j)| h[j] == h[cur] && topo.monotone_exit_distance[j] == Some(d - 1))
            .expect("distance decreases along the path");
        path.push(o);
        cur = j;
    }
}

/// Length of a shortest plan, or `None` if no goal state is reachable.
pub fn plan_length_optimal(task: &Task, cap: usize) -> Result<Option<usize>, OracleError> {
    let ss = enumerate(task, cap)?;
    let mut dist = vec![None; ss.len()];
    dist[0] = Some(0);
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        if task.is_goal(&ss.states[i]) {
            return Ok(dist[i]);
        }
        for &(_, j) in &ss.arcs[i] {
            if dist[j].is_none() {
                dist[j] = Some(dist[i].expect("visited") + 1);
                queue.push_back(j);
            }
        }
    }
    Ok(None)
}

/// Which analysis made an unsound claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claimant {
    Global,
    Guaranteed,
    ApproxExact,
}

/// An analysis claimed "no local minimum, exit distance ≤ bound" for a
/// state where this is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub analysis: Claimant,
    pub state: String,
    pub bound: u64,
    pub local_minimum: bool,
    pub exit_distance: Option<usize>,
}

/// Ground truth and analysis results for one state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StateRecord {
    pub state: String,
    pub h_plus: Option<usize>,
    pub local_minimum: bool,
    pub exit_distance: Option<usize>,
    pub guaranteed: Option<u64>,
    pub approx_exact: Option<u64>,
    pub approx_ff: Option<u64>,
}

/// Result of checking the analyses against the oracle on every reachable
/// state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub states: usize,
    pub in_scope: usize,
    pub local_minima: usize,
    pub max_exit_distance: Option<usize>,
    pub global_success: bool,
    pub global_bound: Option<u64>,
    /// Unsound claims; must be empty.
    pub violations: Vec<Violation>,
    /// In-scope states that are not local minima but where the analysis
    /// failed.
    pub guaranteed_false_negatives: usize,
    pub approx_exact_false_negatives: usize,
    /// States where the FF-plan-driven approximate analysis claimed success
    /// wrongly (informational: that analysis is not sound).
    pub approx_ff_false_positives: Vec<String>,
    pub records: Vec<StateRecord>,
}

impl VerificationReport {
    pub fn is_sound(&self) -> bool {
        self.violations.is_empty()
    }
}

fn claim_holds(bound: u64, lm: bool, ed: Option<usize>) -> bool {
    !lm && ed.is_some_and(|d| d as u64 <= bound)
}

/// Enumerates the task, computes exact `h⁺` topology and checks every claim
/// of the global, guaranteed-local and exact-plan approximate analyses.
pub fn verify_analyzers(task: &Task, cap: usize) -> Result<VerificationReport, OracleError> {
    verify_with(&Analyzer::new(task), cap)
}

/// As [`verify_analyzers`], with a prepared analyzer.
pub fn verify_with(analyzer: &Analyzer<'_>, cap: usize) -> Result<VerificationReport, OracleError> {
    let task = analyzer.task;
    let ss = enumerate(task, cap)?;
    let topo = topology(&ss, h_plus_all(task, &ss, DEFAULT_BUDGET)?);
    let global = analyzer.analyze_global();
    let g_bound = global.verdict.success.then(|| global.verdict.bound.unwrap_or(0));

    let records: Vec<(StateRecord, Vec<Violation>, [bool; 2], bool)> = (0..ss.len())
        .into_par_iter()
        .map(|i| {
            let s = &ss.states[i];
            let key = task.state_key(s);
            let lm = topo.local_minimum[i];
            let ed = topo.exit_distance[i];
            let in_scope = topo.in_scope(i);
            let bound_of = |v: Verdict| v.success.then(|| v.bound.unwrap_or(0));
            let (guaranteed, approx_exact, approx_ff) = if in_scope {
                let exact = match h_plus_exact(task, s, analyzer.budget, None) {
                    Ok((_, Some(plan))) => bound_of(analyzer.analyze_plan(s, &plan.ops)),
                    _ => None,
                };
                (
                    bound_of(analyzer.analyze_state_guaranteed(s)),
                    exact,
                    bound_of(analyzer.analyze_state_approx(s, crate::relax::PlanSource::Ff)),
                )
            } else {
                (None, None, None)
            };
            let mut violations = Vec::new();
            if in_scope {
                for (who, b) in [
                    (Claimant::Global, g_bound),
                    (Claimant::Guaranteed, guaranteed),
                    (Claimant::ApproxExact, approx_exact),
                ] {
                    if let Some(b) = b.filter(|&b| !claim_holds(b, lm, ed)) {
                        violations.push(Violation {
                            analysis: who,
                            state: key.clone(),
                            bound: b,
                            local_minimum: lm,
                            exit_distance: ed,
                        });
                    }
                }
            }
            let fneg = [
                in_scope && !lm && guaranteed.is_none(),
                in_scope && !lm && approx_exact.is_none(),
            ];
            let ff_fp = in_scope && approx_ff.is_some_and(|b| !claim_holds(b, lm, ed));
            let rec = StateRecord {
                state: key,
                h_plus: topo.h[i],
                local_minimum: lm,
                exit_distance: ed,
                guaranteed,
                approx_exact,
                approx_ff,
            };
            (rec, violations, fneg, ff_fp)
        })
        .collect();

    let mut report = VerificationReport {
        states: ss.len(),
        in_scope: (0..ss.len()).filter(|&i| topo.in_scope(i)).count(),
        local_minima: topo.local_minimum.iter().filter(|&&b| b).count(),
        max_exit_distance: (0..ss.len()).filter(|&i| topo.in_scope(i)).filter_map(|i| topo.exit_distance[i]).max(),
        global_success: global.verdict.success,
        global_bound: g_bound,
        violations: Vec::new(),
        guaranteed_false_negatives: 0,
        approx_exact_false_negatives: 0,
        approx_ff_false_positives: Vec::new(),
        records: Vec::with_capacity(ss.len()),
    };
    for (rec, violations, fneg, ff_fp) in records {
        report.violations.extend(violations);
        report.guaranteed_false_negatives += fneg[0] as usize;
        report.approx_exact_false_negatives += fneg[1] as usize;
        if ff_fp {
            report.approx_ff_false_positives.push(rec.state.clone());
        }
        report.records.push(rec);
    }
    Ok(report)
}
