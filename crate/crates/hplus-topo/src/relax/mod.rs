//! Delete-relaxation engines.
//!
//! * [`h_ff`]: FF-style relaxed planning graph with greedy plan extraction
//!   and helpful actions.
//! * [`h_plus_exact`]: provably optimal relaxed plans (A* over fact sets
//!   guided by an admissible landmark-cut bound).
//! * [`optimal_relaxed_plans`]: enumeration of distinct optimal relaxed
//!   plans.
//! * [`parallel_optimal_relaxed_plan`]: a relaxed plan of minimum parallel
//!   depth, and among those of minimum length.
//! * [`reorder_behind`]: moves prefix operators behind a pivot where the
//!   plan stays valid.

mod exact;
mod ff;
mod lmcut;
mod parallel;

use serde::{Deserialize, Serialize};

use crate::task::{FactSet, OpId, State, Task};

pub use exact::{h_plus_exact, h_plus_exact_from, optimal_relaxed_plans};
pub use ff::{h_ff, FfResult};
pub use lmcut::lm_cut;
pub use parallel::{parallel_optimal_relaxed_plan, rpg_depth};

/// Default node-expansion budget for the exact engines.
pub const DEFAULT_BUDGET: u64 = 200_000;

/// Which engine produced a relaxed plan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlanSource {
    Ff,
    Exact,
    Parallel,
}

impl std::str::FromStr for PlanSource {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ff" => Ok(PlanSource::Ff),
            "exact" => Ok(PlanSource::Exact),
            "parallel" => Ok(PlanSource::Parallel),
            other => Err(format!("unknown plan source `{other}` (expected ff, exact or parallel)")),
        }
    }
}

impl std::fmt::Display for PlanSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PlanSource::Ff => "ff",
            PlanSource::Exact => "exact",
            PlanSource::Parallel => "parallel",
        })
    }
}

/// A sequence of operators forming a relaxed plan for some state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RelaxedPlan {
    pub ops: Vec<OpId>,
    pub source: PlanSource,
}

impl RelaxedPlan {
    /// Plan length.
    pub fn value(&self) -> usize {
        self.ops.len()
    }

    /// Operator names, in order.
    pub fn names(&self, task: &Task) -> Vec<String> {
        self.ops.iter().map(|&o| task.op(o).name.clone()).collect()
    }
}

/// Dense fact-id view of a task used by the relaxation engines.
#[derive(Clone, Debug)]
pub struct RelaxedTask {
    pub num_facts: usize,
    pub pre: Vec<Vec<usize>>,
    pub eff: Vec<Vec<usize>>,
    pub goal: Vec<usize>,
    /// Operators having the fact in their precondition.
    pub pre_of: Vec<Vec<OpId>>,
}

impl RelaxedTask {
    pub fn new(task: &Task) -> RelaxedTask {
        let ids = |p: &crate::task::PartialState| p.iter().map(|f| task.fact_id(f)).collect::<Vec<_>>();
        let pre: Vec<Vec<usize>> = task.operators().iter().map(|o| ids(&o.pre)).collect();
        let eff: Vec<Vec<usize>> = task.operators().iter().map(|o| ids(&o.eff)).collect();
        let mut pre_of = vec![Vec::new(); task.num_facts()];
        for (o, p) in pre.iter().enumerate() {
            for &f in p {
                pre_of[f].push(o);
            }
        }
        RelaxedTask {
            num_facts: task.num_facts(),
            pre,
            eff,
            goal: ids(task.goal()),
            pre_of,
        }
    }

    pub fn num_ops(&self) -> usize {
        self.pre.len()
    }

    pub fn applicable(&self, f: &FactSet, o: OpId) -> bool {
        self.pre[o].iter().all(|&p| f.contains(p))
    }

    pub fn adds_new(&self, f: &FactSet, o: OpId) -> bool {
        self.eff[o].iter().any(|&e| !f.contains(e))
    }

    pub fn apply(&self, f: &mut FactSet, o: OpId) {
        for &e in &self.eff[o] {
            f.insert(e);
        }
    }

    pub fn goal_reached(&self, f: &FactSet) -> bool {
        self.goal.iter().all(|&g| f.contains(g))
    }

    /// Operators that can contribute to reaching the goal: the closure of
    /// achievers of goal facts and of preconditions of contributing
    /// operators.
    pub fn backward_relevant_ops(&self) -> Vec<bool> {
        let mut fact_rel = vec![false; self.num_facts];
        let mut op_rel = vec![false; self.num_ops()];
        let mut stack: Vec<usize> = Vec::new();
        for &g in &self.goal {
            if !fact_rel[g] {
                fact_rel[g] = true;
                stack.push(g);
            }
        }
        let mut achievers = vec![Vec::new(); self.num_facts];
        for (o, e) in self.eff.iter().enumerate() {
            for &f in e {
                achievers[f].push(o);
            }
        }
        while let Some(f) = stack.pop() {
            for &o in &achievers[f] {
                if !op_rel[o] {
                    op_rel[o] = true;
                    for &p in &self.pre[o] {
                        if !fact_rel[p] {
                            fact_rel[p] = true;
                            stack.push(p);
                        }
                    }
                }
            }
        }
        op_rel
    }
}

/// Whether `ops` is a relaxed plan from the fact set `start`.
pub fn is_relaxed_plan_from(rt: &RelaxedTask, start: &FactSet, ops: &[OpId]) -> bool {
    let mut f = start.clone();
    for &o in ops {
        if !rt.applicable(&f, o) {
            return false;
        }
        rt.apply(&mut f, o);
    }
    rt.goal_reached(&f)
}

/// Whether `ops` is a relaxed plan for the state `s`.
pub fn is_relaxed_plan(task: &Task, s: &State, ops: &[OpId]) -> bool {
    is_relaxed_plan_from(&RelaxedTask::new(task), &task.state_facts(s), ops)
}

/// Moves operators preceding the pivot behind it where the plan stays a
/// valid relaxed plan. Predecessors are scanned from nearest to farthest;
/// each accepted operator is inserted directly behind the pivot. Returns the
/// re-ordered plan and the new pivot index.
pub fn reorder_behind(task: &Task, s: &State, plan: &[OpId], pivot: usize) -> (Vec<OpId>, usize) {
    let rt = RelaxedTask::new(task);
    let start = task.state_facts(s);
    let mut ops = plan.to_vec();
    let mut p = pivot;
    for j in (0..pivot).rev() {
        let mut candidate = ops.clone();
        let o = candidate.remove(j);
        // The pivot shifts one position to the left.
        candidate.insert(p, o);
        if is_relaxed_plan_from(&rt, &start, &candidate) {
            ops = candidate;
            p -= 1;
        }
    }
    (ops, p)
}
