//! Relaxed plans of minimum parallel depth.
//!
//! The minimum number of parallel relaxed steps equals the depth `D` of the
//! goal in the relaxed planning graph. Among layered plans with `D` layers
//! (every operator of a layer applicable in the facts at the layer's
//! start), we search for one with the fewest operators.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use super::ff::rpg_layers;
use super::lmcut::lm_cut_masked;
use super::{PlanSource, RelaxedPlan, RelaxedTask};
use crate::error::BudgetExceeded;
use crate::task::{FactSet, OpId, State, Task};

/// Depth of the goal in the relaxed planning graph from `start`, or `None`
/// if the goal is relaxed-unreachable.
pub fn rpg_depth(rt: &RelaxedTask, start: &FactSet) -> Option<usize> {
    let (fact_layer, _) = rpg_layers(rt, start);
    rt.goal
        .iter()
        .map(|&g| (fact_layer[g] != usize::MAX).then_some(fact_layer[g]))
        .try_fold(0usize, |acc, l| l.map(|l| acc.max(l)))
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    layer: usize,
    layer_start: FactSet,
    facts: FactSet,
    last: Option<OpId>,
}

struct Node {
    key: Key,
    parent: usize,
    op: Option<OpId>,
    g: u32,
}

/// A relaxed plan for `s` with the minimum number of parallel steps and,
/// among those, the fewest operators; `None` if no relaxed plan exists.
/// Operators are listed layer by layer, in index order within a layer.
pub fn parallel_optimal_relaxed_plan(task: &Task, s: &State, budget: u64) -> Result<Option<RelaxedPlan>, BudgetExceeded> {
    let rt = RelaxedTask::new(task);
    let start = task.state_facts(s);
    let Some(depth) = rpg_depth(&rt, &start) else {
        return Ok(None);
    };
    let relevant = rt.backward_relevant_ops();
    let root = Key {
        layer: 0,
        layer_start: start.clone(),
        facts: start.clone(),
        last: None,
    };
    let mut nodes = vec![Node {
        key: root.clone(),
        parent: usize::MAX,
        op: None,
        g: 0,
    }];
    let mut best: HashMap<Key, u32> = HashMap::new();
    best.insert(root, 0);
    let mut open = BinaryHeap::new();
    open.push(Reverse((0u32, Reverse(0u32), 0usize)));
    let mut expansions = 0u64;
    while let Some(Reverse((_, _, id))) = open.pop() {
        let key = nodes[id].key.clone();
        let g = nodes[id].g;
        if best.get(&key).is_some_and(|&b| b < g) {
            continue;
        }
        if rt.goal_reached(&key.facts) {
            let mut ops = Vec::new();
            let mut cur = id;
            while nodes[cur].parent != usize::MAX {
                if let Some(o) = nodes[cur].op {
                    ops.push(o);
                }
                cur = nodes[cur].parent;
            }
            ops.reverse();
            return Ok(Some(RelaxedPlan {
                ops,
                source: PlanSource::Parallel,
            }));
        }
        expansions += 1;
        if expansions > budget {
            return Err(BudgetExceeded { budget });
        }
        let mut successors: Vec<(Key, Option<OpId>, u32)> = Vec::new();
        let first = key.last.map_or(0, |l| l + 1);
        for o in (first..rt.num_ops()).filter(|&o| relevant[o]) {
            if rt.applicable(&key.layer_start, o) && rt.adds_new(&key.facts, o) {
                let mut facts = key.facts.clone();
                rt.apply(&mut facts, o);
                successors.push((
                    Key {
                        layer: key.layer,
                        layer_start: key.layer_start.clone(),
                        facts,
                        last: Some(o),
                    },
                    Some(o),
                    g + 1,
                ));
            }
        }
        if key.facts != key.layer_start && key.layer + 1 < depth {
            let remaining = depth - (key.layer + 1);
            if rpg_depth(&rt, &key.facts).is_some_and(|d| d <= remaining) {
                successors.push((
                    Key {
                        layer: key.layer + 1,
                        layer_start: key.facts.clone(),
                        facts: key.facts.clone(),
                        last: None,
                    },
                    None,
                    g,
                ));
            }
        }
        for (k, op, ng) in successors {
            if best.get(&k).is_some_and(|&b| b <= ng) {
                continue;
            }
            let Some(h) = lm_cut_masked(&rt, &k.facts, Some(&relevant)) else {
                continue;
            };
            best.insert(k.clone(), ng);
            nodes.push(Node {
                key: k,
                parent: id,
                op,
                g: ng,
            });
            open.push(Reverse((ng + h, Reverse(ng), nodes.len() - 1)));
        }
    }
    Ok(None)
}
