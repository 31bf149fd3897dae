//! Exact `h⁺`: A* over relaxed fact sets with the landmark-cut bound.

use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap, HashSet};

use super::lmcut::lm_cut_masked;
use super::{PlanSource, RelaxedPlan, RelaxedTask};
use crate::error::BudgetExceeded;
use crate::task::{FactSet, OpId, State, Task};

/// Optimal relaxed plan length and a witnessing plan for `s`; `(None, None)`
/// when no relaxed plan exists. With `forced_first`, only relaxed plans
/// starting with that operator are considered (`None` if it is not
/// applicable in `s`).
pub fn h_plus_exact(
    task: &Task,
    s: &State,
    budget: u64,
    forced_first: Option<OpId>,
) -> Result<(Option<usize>, Option<RelaxedPlan>), BudgetExceeded> {
    let rt = RelaxedTask::new(task);
    let mut start = task.state_facts(s);
    let mut prefix = Vec::new();
    if let Some(o) = forced_first {
        if !rt.applicable(&start, o) {
            return Ok((None, None));
        }
        rt.apply(&mut start, o);
        prefix.push(o);
    }
    match h_plus_exact_from(&rt, &start, budget)? {
        Some(mut ops) => {
            prefix.append(&mut ops);
            Ok((
                Some(prefix.len()),
                Some(RelaxedPlan {
                    ops: prefix,
                    source: PlanSource::Exact,
                }),
            ))
        }
        None => Ok((None, None)),
    }
}

struct Node {
    facts: FactSet,
    parent: usize,
    op: OpId,
    g: u32,
}

/// Optimal relaxed plan from an arbitrary fact set, or `None` if none
/// exists.
pub fn h_plus_exact_from(rt: &RelaxedTask, start: &FactSet, budget: u64) -> Result<Option<Vec<OpId>>, BudgetExceeded> {
    let relevant = rt.backward_relevant_ops();
    let Some(h0) = lm_cut_masked(rt, start, Some(&relevant)) else {
        return Ok(None);
    };
    let mut nodes = vec![Node {
        facts: start.clone(),
        parent: usize::MAX,
        op: usize::MAX,
        g: 0,
    }];
    let mut best_g: HashMap<FactSet, u32> = HashMap::new();
    best_g.insert(start.clone(), 0);
    // Ordered by f, then by larger g (deeper nodes first), then insertion.
    let mut open = BinaryHeap::new();
    open.push(Reverse((h0, Reverse(0u32), 0usize)));
    let mut expansions = 0u64;
    while let Some(Reverse((_, _, id))) = open.pop() {
        let (facts, g) = (nodes[id].facts.clone(), nodes[id].g);
        if best_g.get(&facts).is_some_and(|&b| b < g) {
            continue;
        }
        if rt.goal_reached(&facts) {
            let mut ops = Vec::new();
            let mut cur = id;
            while nodes[cur].parent != usize::MAX {
                ops.push(nodes[cur].op);
                cur = nodes[cur].parent;
            }
            ops.reverse();
            return Ok(Some(ops));
        }
        expansions += 1;
        if expansions > budget {
            return Err(BudgetExceeded { budget });
        }
        for o in 0..rt.num_ops() {
            if !relevant[o] || !rt.applicable(&facts, o) || !rt.adds_new(&facts, o) {
                continue;
            }
            let mut next = facts.clone();
            rt.apply(&mut next, o);
            let ng = g + 1;
            match best_g.entry(next.clone()) {
                Entry::Occupied(mut e) => {
                    if *e.get() <= ng {
                        continue;
                    }
                    e.insert(ng);
                }
                Entry::Vacant(e) => {
                    e.insert(ng);
                }
            }
            let Some(h) = lm_cut_masked(rt, &next, Some(&relevant)) else {
                continue;
            };
            nodes.push(Node {
                facts: next,
                parent: id,
                op: o,
                g: ng,
            });
            open.push(Reverse((ng + h, Reverse(ng), nodes.len() - 1)));
        }
    }
    Ok(None)
}

/// Enumerates distinct optimal relaxed plans for `s` (as operator sets,
/// each sequenced by repeatedly picking the lowest-index applicable
/// operator), up to `limit` plans. Returns an empty list when no relaxed
/// plan exists.
pub fn optimal_relaxed_plans(task: &Task, s: &State, budget: u64, limit: usize) -> Result<Vec<RelaxedPlan>, BudgetExceeded> {
    let rt = RelaxedTask::new(task);
    let start = task.state_facts(s);
    let Some(best) = h_plus_exact_from(&rt, &start, budget)? else {
        return Ok(Vec::new());
    };
    let bound = best.len() as u32;
    let relevant = rt.backward_relevant_ops();
    let mut found: Vec<Vec<OpId>> = Vec::new();
    let mut seen: HashSet<Vec<OpId>> = HashSet::new();
    let mut expansions = 0u64;
    let mut path: Vec<OpId> = Vec::new();
    let mut stack_facts: Vec<FactSet> = vec![start.clone()];
    dfs(
        &rt,
        &relevant,
        bound,
        budget,
        limit,
        &mut expansions,
        &mut path,
        &mut stack_facts,
        &mut seen,
        &mut found,
    )?;
    Ok(found
        .into_iter()
        .map(|set| RelaxedPlan {
            ops: sequence_greedily(&rt, &start, set),
            source: PlanSource::Exact,
        })
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    rt: &RelaxedTask,
    relevant: &[bool],
    bound: u32,
    budget: u64,
    limit: usize,
    expansions: &mut u64,
    path: &mut Vec<OpId>,
    stack_facts: &mut Vec<FactSet>,
    seen: &mut HashSet<Vec<OpId>>,
    found: &mut Vec<Vec<OpId>>,
) -> Result<(), BudgetExceeded> {
    if found.len() >= limit {
        return Ok(());
    }
    let facts = stack_facts.last().expect("stack holds the current fact set").clone();
    if rt.goal_reached(&facts) {
        let mut set = path.clone();
        set.sort_unstable();
        if seen.insert(set.clone()) {
            found.push(set);
        }
        return Ok(());
    }
    let g = path.len() as u32;
    match lm_cut_masked(rt, &facts, Some(relevant)) {
        Some(h) if g + h <= bound => {}
        _ => return Ok(()),
    }
    *expansions += 1;
    if *expansions > budget {
        return Err(BudgetExceeded { budget });
    }
    for o in 0..rt.num_ops() {
        if !relevant[o] || !rt.applicable(&facts, o) || !rt.adds_new(&facts, o) {
            continue;
        }
        // Canonical ordering: an operator with a smaller index than its
        // predecessor may only follow it if it was not applicable before.
        if let Some(&last) = path.last() {
            let before = &stack_facts[stack_facts.len() - 2];
            if o < last && rt.applicable(before, o) {
                continue;
            }
        }
        let mut next = facts.clone();
        rt.apply(&mut next, o);
        path.push(o);
        stack_facts.push(next);
        dfs(rt, relevant, bound, budget, limit, expansions, path, stack_facts, seen, found)?;
        stack_facts.pop();
        path.pop();
        if found.len() >= limit {
            break;
        }
    }
    Ok(())
}

/// Orders a set of operators by repeatedly applying the lowest-index
/// applicable one.
fn sequence_greedily(rt: &RelaxedTask, start: &FactSet, mut set: Vec<OpId>) -> Vec<OpId> {
    let mut facts = start.clone();
    let mut out = Vec::with_capacity(set.len());
    while !set.is_empty() {
        let i = set
            .iter()
            .position(|&o| rt.applicable(&facts, o))
            .expect("a relaxed plan can always be sequenced");
        let o = set.remove(i);
        rt.apply(&mut facts, o);
        out.push(o);
    }
    out
}
