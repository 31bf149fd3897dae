//! The global, guaranteed-local and approximate-local analyses.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Analyzer, Branch, DiagnosisPair, Failure, Verdict};
use crate::relax::{self, reorder_behind, PlanSource, RelaxedPlan};
use crate::task::{OpId, State, VarId};

/// Outcome of checking one dependency graph within an analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphOutcome {
    pub x0: String,
    pub o0: String,
    pub verdict: Verdict,
}

/// Result of the global analysis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlobalVerdict {
    pub verdict: Verdict,
    pub total_graphs: usize,
    pub successful_graphs: usize,
    /// Fraction of successful global dependency graphs (1 when there are
    /// none).
    pub fraction: f64,
    /// Goal variables without any relevant transition.
    pub vacuous_goal_vars: Vec<String>,
    pub graphs: Vec<GraphOutcome>,
}

fn combine_bound(outcomes: &[(u64, Branch)]) -> (u64, Branch) {
    let max_cost = outcomes.iter().map(|o| o.0).max().unwrap_or(0);
    let branch = outcomes.iter().map(|o| o.1).max().expect("nonempty outcomes");
    let all_minus_one = outcomes.iter().all(|o| o.1.subtracts_one());
    (if all_minus_one { max_cost.saturating_sub(1) } else { max_cost }, branch)
}

impl Analyzer<'_> {
    /// Enumerates all global dependency graphs (one per goal variable and
    /// operator responsible for a relevant transition on it) and succeeds
    /// iff all are successful. Does not stop at the first failure.
    pub fn analyze_global(&self) -> GlobalVerdict {
        let task = self.task;
        let st = &self.structure;
        let mut graphs = Vec::new();
        let mut vacuous = Vec::new();
        let mut costs = Vec::new();
        let mut failures = Vec::new();
        let mut diagnosis = Vec::new();
        for x0 in task.goal().vars() {
            let ops: BTreeSet<OpId> = st
                .dtg(x0)
                .iter()
                .filter(|&&t| st.class(t).relevant)
                .map(|&t| st.transition(t).rop)
                .collect();
            if ops.is_empty() {
                vacuous.push(task.var_name(x0).to_string());
            }
            for o0 in ops {
                let g = self.build_gdg(x0, o0).expect("relevant transition exists");
                let verdict = self.check_dg_success(&g, None);
                if verdict.success {
                    let cost = self.graph_cost(&g).expect("successful graphs are acyclic");
                    costs.push((cost, verdict.branch.expect("success has a branch")));
                } else {
                    failures.extend(verdict.failures.iter().cloned());
                    diagnosis.extend(verdict.diagnosis.iter().cloned());
                }
                graphs.push(GraphOutcome {
                    x0: task.var_name(x0).to_string(),
                    o0: task.op(o0).name.clone(),
                    verdict,
                });
            }
        }
        let total = graphs.len();
        let ok = graphs.iter().filter(|g| g.verdict.success).count();
        let verdict = if ok < total {
            Verdict::failed(failures, diagnosis)
        } else if costs.is_empty() {
            Verdict {
                applicable: true,
                success: true,
                bound: Some(0),
                ..Verdict::default()
            }
        } else {
            let (bound, branch) = combine_bound(&costs);
            Verdict::succeeded(branch, bound)
        };
        GlobalVerdict {
            verdict,
            total_graphs: total,
            successful_graphs: ok,
            fraction: if total == 0 { 1.0 } else { ok as f64 / total as f64 },
            vacuous_goal_vars: vacuous,
            graphs,
        }
    }

    /// Guaranteed local analysis of `s`: looks for a goal variable `x0`
    /// such that the local dependency graph of every relevant transition
    /// leaving `s(x0)` is successful, minimizing the bound over such `x0`.
    pub fn analyze_state_guaranteed(&self, s: &State) -> Verdict {
        let task = self.task;
        let st = &self.structure;
        if task.is_goal(s) {
            return Verdict::not_applicable();
        }
        if relax::h_ff(task, s).value.is_none() {
            return Verdict::failed(vec![Failure::DeadEnd], Vec::new());
        }
        let mut best: Option<(u64, Branch)> = None;
        let mut failures = Vec::new();
        let mut diagnosis = Vec::new();
        for x0 in task.goal().vars() {
            let ops: BTreeSet<OpId> = st.relevant_from(x0, s.get(x0)).map(|t| st.transition(t).rop).collect();
            if ops.is_empty() {
                if task.goal().get(x0) != Some(s.get(x0)) {
                    failures.push(Failure::NoRelevantTransition {
                        var: task.var_name(x0).to_string(),
                    });
                }
                continue;
            }
            let mut outcomes = Vec::new();
            for o0 in ops {
                let Ok(g) = self.build_ldg(s, x0, o0) else {
                    outcomes.clear();
                    break;
                };
                let v = self.check_dg_success(&g, Some(s));
                if !v.success {
                    failures.extend(v.failures);
                    diagnosis.extend(v.diagnosis);
                    outcomes.clear();
                    break;
                }
                let cost = self.graph_cost(&g).expect("successful graphs are acyclic");
                outcomes.push((cost, v.branch.expect("success has a branch")));
            }
            if outcomes.is_empty() {
                continue;
            }
            let candidate = combine_bound(&outcomes);
            if best.is_none_or(|b| candidate.0 < b.0) {
                best = Some(candidate);
            }
        }
        match best {
            Some((bound, branch)) => Verdict::succeeded(branch, bound),
            None => {
                if failures.is_empty() {
                    failures.push(Failure::NoCandidate);
                }
                diagnosis.sort();
                diagnosis.dedup();
                Verdict::failed(failures, diagnosis)
            }
        }
    }

    /// Relaxed plan for `s` from the chosen engine. `Ok(None)` when `s` is a
    /// relaxed dead end.
    pub fn relaxed_plan(&self, s: &State, source: PlanSource) -> Result<Option<RelaxedPlan>, crate::error::BudgetExceeded> {
        match source {
            PlanSource::Ff => Ok(relax::h_ff(self.task, s).plan),
            PlanSource::Exact => Ok(relax::h_plus_exact(self.task, s, self.budget, None)?.1),
            PlanSource::Parallel => relax::parallel_optimal_relaxed_plan(self.task, s, self.budget),
        }
    }

    /// Approximate local analysis of `s` driven by a relaxed plan from
    /// `source`.
    pub fn analyze_state_approx(&self, s: &State, source: PlanSource) -> Verdict {
        if self.task.is_goal(s) {
            return Verdict::not_applicable();
        }
        match self.relaxed_plan(s, source) {
            Err(_) => Verdict::failed(vec![Failure::BudgetExceeded], Vec::new()),
            Ok(None) => Verdict::failed(vec![Failure::DeadEnd], Vec::new()),
            Ok(Some(plan)) => self.analyze_plan(s, &plan.ops),
        }
    }

    /// Approximate local analysis of `s` with a given relaxed plan: tries
    /// every pivot operator in plan order and every variable it moves,
    /// stopping at the first successful optimal rplan dependency graph.
    pub fn analyze_plan(&self, s: &State, plan: &[OpId]) -> Verdict {
        let task = self.task;
        if task.is_goal(s) {
            return Verdict::not_applicable();
        }
        let mut failures = Vec::new();
        let mut diagnosis: Vec<DiagnosisPair> = Vec::new();
        for (i, &o0) in plan.iter().enumerate() {
            let eff_vars: Vec<VarId> = task.op(o0).eff.vars().collect();
            for x0 in eff_vars {
                let Ok(_) = self.pivot_transition(s, x0, o0) else {
                    continue;
                };
                let fact = (x0, task.op(o0).eff.get(x0).expect("x0 is affected"));
                let used = task.goal().contains(fact) || plan[i + 1..].iter().any(|&o| task.op(o).pre.contains(fact));
                if !used {
                    continue;
                }
                let (reordered, pivot) = reorder_behind(task, s, plan, i);
                let g = self
                    .build_odg_plus(s, &reordered, pivot, x0)
                    .expect("pivot transition was validated");
                let v = self.check_odg_success(&g, s, &reordered, pivot);
                if v.success {
                    return v;
                }
                failures.extend(v.failures);
                diagnosis.extend(v.diagnosis);
            }
        }
        if failures.is_empty() {
            failures.push(Failure::NoCandidate);
        }
        Verdict::failed(failures, diagnosis)
    }
}
