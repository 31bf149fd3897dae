//! Success test for local and global dependency graphs.

use std::collections::BTreeSet;

use super::graph::{DepGraph, DepGraphKind};
use super::{Analyzer, Branch, DiagnosisPair, Failure, Verdict};
use crate::task::{State, VarId};

impl Analyzer<'_> {
    /// Transitive support-graph successors of `x` (reachable by at least one
    /// arc; `x` itself is included only if it lies on a cycle).
    pub fn sg_transitive_successors(&self, x: VarId) -> BTreeSet<VarId> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<VarId> = self.structure.sg_successors(x).iter().copied().collect();
        while let Some(y) = stack.pop() {
            if seen.insert(y) {
                stack.extend(self.structure.sg_successors(y).iter().copied());
            }
        }
        seen
    }

    /// Checks whether a local (`s` given) or global (`s` absent) dependency
    /// graph is successful and computes its bound.
    pub fn check_dg_success(&self, g: &DepGraph, s: Option<&State>) -> Verdict {
        let task = self.task;
        let st = &self.structure;
        let schema = task.op(g.o0).schema().to_string();
        let op_name = task.op(g.o0).name.clone();
        let mut failures = Vec::new();
        let mut diagnosis = Vec::new();

        let cyclic = g.cyclic_vars();
        if !cyclic.is_empty() {
            failures.push(Failure::Cycle {
                op: op_name.clone(),
                vars: cyclic.iter().map(|&v| task.var_name(v).to_string()).collect(),
            });
            for &v in cyclic.iter().filter(|&&v| v != g.x0) {
                diagnosis.push(DiagnosisPair {
                    schema: schema.clone(),
                    var: task.var_name(v).to_string(),
                });
            }
        }

        if g.kind == DepGraphKind::Ldg {
            let s = s.expect("local dependency graphs need a state");
            if task.goal().get(g.x0) == Some(s.get(g.x0)) {
                failures.push(Failure::LeafAtGoal {
                    var: task.var_name(g.x0).to_string(),
                });
            }
            for y in self.sg_transitive_successors(g.x0) {
                if task.goal().get(y).is_some_and(|d| d != s.get(y)) {
                    failures.push(Failure::UnachievedGoalSuccessor {
                        var: task.var_name(g.x0).to_string(),
                        successor: task.var_name(y).to_string(),
                    });
                    break;
                }
            }
        }

        let class = st.class(g.t0);
        let branch = if class.self_irrelevant_seff_deletes {
            Some(Branch::SelfIrrelevant3a)
        } else if class.replaceable_seff_deletes {
            Some(Branch::Replaceable3b)
        } else if class.recoverable_seff_deletes {
            Some(Branch::Recoverable3c)
        } else {
            None
        };
        if branch.is_none() {
            let harmed: Vec<_> = class
                .context
                .iter()
                .filter(|&&f| st.is_needed_except(task, f, g.o0))
                .copied()
                .collect();
            failures.push(Failure::PivotDeletes {
                op: op_name.clone(),
                facts: harmed.iter().map(|&f| task.fact_name(f)).collect(),
            });
            let vars: BTreeSet<VarId> = st.transition(g.t0).seff.vars().collect();
            for v in vars {
                diagnosis.push(DiagnosisPair {
                    schema: schema.clone(),
                    var: task.var_name(v).to_string(),
                });
            }
        }

        for x in g.non_leaf() {
            let bad = st.dtg(x).iter().copied().find(|&t| {
                let c = st.class(t);
                !(!c.relevant || c.self_irrelevant_deletes || (c.invertible && self.harmless_side_effects(g, t)))
            });
            if let Some(t) = bad {
                failures.push(Failure::Transition {
                    op: op_name.clone(),
                    var: task.var_name(x).to_string(),
                    transition: self.transition_name(t),
                });
                diagnosis.push(DiagnosisPair {
                    schema: schema.clone(),
                    var: task.var_name(x).to_string(),
                });
            }
        }

        if !failures.is_empty() {
            diagnosis.sort();
            diagnosis.dedup();
            return Verdict::failed(failures, diagnosis);
        }
        let branch = branch.expect("no failure recorded implies a branch");
        let bound = self.cost_bound(g, branch).expect("acyclic graph");
        Verdict::succeeded(branch, bound)
    }
}
