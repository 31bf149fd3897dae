//! FF-style relaxed plan extraction.

use std::collections::BTreeSet;

use super::{PlanSource, RelaxedPlan, RelaxedTask};
use crate::task::{FactSet, OpId, State, Task};

/// Result of the FF heuristic on one state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FfResult {
    /// Plan length, `None` when no relaxed plan exists.
    pub value: Option<usize>,
    pub plan: Option<RelaxedPlan>,
    /// Applicable operators achieving a first-layer subgoal.
    pub helpful: Vec<OpId>,
}

/// First-appearance layers of facts and operators in the relaxed planning
/// graph built from `start`. Unreached entries are `usize::MAX`.
pub(crate) fn rpg_layers(rt: &RelaxedTask, start: &FactSet) -> (Vec<usize>, Vec<usize>) {
    let mut fact_layer = vec![usize::MAX; rt.num_facts];
    let mut op_layer = vec![usize::MAX; rt.num_ops()];
    let mut unsat: Vec<usize> = rt.pre.iter().map(Vec::len).collect();
    let mut frontier: Vec<usize> = start.ones().collect();
    for &f in &frontier {
        fact_layer[f] = 0;
    }
    let mut ready: Vec<OpId> = (0..rt.num_ops()).filter(|&o| unsat[o] == 0).collect();
    let mut layer = 0;
    loop {
        for f in std::mem::take(&mut frontier) {
            for &o in &rt.pre_of[f] {
                unsat[o] -= 1;
                if unsat[o] == 0 {
                    ready.push(o);
                }
            }
        }
        if ready.is_empty() {
            break;
        }
        ready.sort_unstable();
        for o in std::mem::take(&mut ready) {
            op_layer[o] = layer;
            for &e in &rt.eff[o] {
                if fact_layer[e] == usize::MAX {
                    fact_layer[e] = layer + 1;
                    frontier.push(e);
                }
            }
        }
        layer += 1;
    }
    (fact_layer, op_layer)
}

/// Computes `h^FF(s)`, its relaxed plan and helpful actions.
pub fn h_ff(task: &Task, s: &State) -> FfResult {
    h_ff_relaxed(&RelaxedTask::new(task), &task.state_facts(s))
}

pub(crate) fn h_ff_relaxed(rt: &RelaxedTask, start: &FactSet) -> FfResult {
    let (fact_layer, op_layer) = rpg_layers(rt, start);
    if rt.goal.iter().any(|&g| fact_layer[g] == usize::MAX) {
        return FfResult {
            value: None,
            plan: None,
            helpful: Vec::new(),
        };
    }
    let top = rt.goal.iter().map(|&g| fact_layer[g]).max().unwrap_or(0);
    let mut goals: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); top + 1];
    for &g in &rt.goal {
        goals[fact_layer[g]].insert(g);
    }
    // marked[i] holds facts made true at layer i by selected operators.
    let mut marked: Vec<FactSet> = vec![FactSet::with_capacity(rt.num_facts); top + 1];
    let mut first_layer_goals: BTreeSet<usize> = goals.get(1).cloned().unwrap_or_default();
    let mut chosen: Vec<(usize, OpId)> = Vec::new();
    for i in (1..=top).rev() {
        let layer_goals: Vec<usize> = goals[i].iter().copied().collect();
        for g in layer_goals {
            if marked[i].contains(g) {
                continue;
            }
            let best = (0..rt.num_ops())
                .filter(|&o| op_layer[o] == i - 1 && rt.eff[o].contains(&g))
                .min_by_key(|&o| (rt.pre[o].iter().map(|&p| fact_layer[p]).sum::<usize>(), o))
                .expect("a fact first reached at layer i has an achiever at layer i-1");
            chosen.push((i - 1, best));
            for &p in &rt.pre[best] {
                let l = fact_layer[p];
                if l > 0 && !marked[l].contains(p) && goals[l].insert(p) && l == 1 {
                    first_layer_goals.insert(p);
                }
            }
            for &e in &rt.eff[best] {
                marked[i].insert(e);
                marked[i - 1].insert(e);
            }
        }
    }
    chosen.sort_by_key(|&(l, _)| l);
    let ops: Vec<OpId> = chosen.into_iter().map(|(_, o)| o).collect();
    let helpful: Vec<OpId> = (0..rt.num_ops())
        .filter(|&o| op_layer[o] == 0 && rt.eff[o].iter().any(|e| first_layer_goals.contains(e)))
        .collect();
    FfResult {
        value: Some(ops.len()),
        plan: Some(RelaxedPlan {
            ops,
            source: PlanSource::Ff,
        }),
        helpful,
    }
}
