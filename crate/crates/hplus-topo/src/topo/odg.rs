//! Success test for optimal rplan dependency graphs.

use std::collections::BTreeSet;

use super::graph::{DepGraph, DepGraphKind};
use super::{Analyzer, Branch, DiagnosisPair, Failure, Verdict};
use crate::relax::{is_relaxed_plan_from, RelaxedTask};
use crate::structure::prevail_and_effect;
use crate::task::{Fact, OpId, State};

/// The fact sets used to decide whether the pivot's deletes are harmless.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PivotSets {
    /// Facts possibly deleted by the pivot transition.
    pub c0: BTreeSet<Fact>,
    /// Facts possibly needed by the relaxed plan after the pivot.
    pub r1: BTreeSet<Fact>,
    /// Facts true after relaxed execution of the prefix.
    pub f0: BTreeSet<Fact>,
    /// Facts certainly (or achievably) true right after the pivot.
    pub s1: BTreeSet<Fact>,
    /// The plan suffix after operator replacement.
    pub suffix: Vec<OpId>,
}

impl PivotSets {
    /// `R₁⁺ ∩ C₀ ∩ F₀`.
    pub fn critical(&self) -> BTreeSet<Fact> {
        self.r1
            .iter()
            .filter(|f| self.c0.contains(f) && self.f0.contains(f))
            .copied()
            .collect()
    }
}

impl Analyzer<'_> {
    /// Computes the pivot sets for an optimal rplan graph built from `plan`
    /// with the pivot at `pivot`. Suffix operators whose precondition
    /// intersects `C₀` are replaced by an operator with the same effect
    /// variables, the same effects outside `C₀` variables and a
    /// precondition disjoint from `C₀`, whenever the plan stays a relaxed
    /// plan of the same length.
    pub fn pivot_sets(&self, g: &DepGraph, s: &State, plan: &[OpId], pivot: usize) -> PivotSets {
        let task = self.task;
        let st = &self.structure;
        let o0 = g.o0;
        let x0 = g.x0;
        let mut c0: BTreeSet<Fact> = BTreeSet::from([(x0, s.get(x0))]);
        c0.extend(st.class(g.t0).context.iter().copied());
        let c0_vars: BTreeSet<usize> = c0.iter().map(|f| f.0).collect();

        // Operator replacement in the suffix.
        let rt = RelaxedTask::new(task);
        let start = task.state_facts(s);
        let mut plan: Vec<OpId> = plan.to_vec();
        for i in pivot + 1..plan.len() {
            let op = task.op(plan[i]);
            if !op.pre.iter().any(|f| c0.contains(&f)) {
                continue;
            }
            let replacement = task.operators().iter().enumerate().find(|(j, alt)| {
                *j != plan[i]
                    && !alt.pre.iter().any(|f| c0.contains(&f))
                    && alt.eff.vars().eq(op.eff.vars())
                    && alt
                        .eff
                        .iter()
                        .all(|(v, d)| c0_vars.contains(&v) || op.eff.get(v) == Some(d))
                    && !plan.contains(j)
                    && {
                        let mut cand = plan.clone();
                        cand[i] = *j;
                        is_relaxed_plan_from(&rt, &start, &cand)
                    }
            });
            if let Some((j, _)) = replacement {
                plan[i] = j;
            }
        }

        let prefix = &plan[..pivot];
        let induced_rops: BTreeSet<OpId> = g
            .odtgs
            .values()
            .flat_map(|d| d.induced.iter().map(|&t| st.transition(t).rop))
            .collect();
        let mut r1: BTreeSet<Fact> = task.goal().iter().collect();
        for (i, &o) in plan.iter().enumerate() {
            if i != pivot {
                r1.extend(task.op(o).pre.iter());
            }
        }
        for &o in &induced_rops {
            r1.extend(task.op(o).pre.iter());
        }
        let mut f0: BTreeSet<Fact> = s.0.iter().enumerate().map(|(v, &d)| (v, d)).collect();
        for &o in prefix {
            f0.extend(task.op(o).eff.iter());
        }
        let mut s1: BTreeSet<Fact> = prevail_and_effect(task, o0).iter().collect();
        let moved: BTreeSet<usize> = std::iter::once(o0)
            .chain(prefix.iter().copied())
            .chain(induced_rops.iter().copied())
            .flat_map(|o| task.op(o).eff.vars().collect::<Vec<_>>())
            .collect();
        for (v, &d) in s.0.iter().enumerate() {
            if !moved.contains(&v) {
                s1.insert((v, d));
            }
        }
        let non_leaf: BTreeSet<usize> = g.non_leaf().collect();
        if !task.op(o0).eff.vars().any(|v| non_leaf.contains(&v)) {
            s1.extend(f0.iter().filter(|f| non_leaf.contains(&f.0)).copied());
        }
        PivotSets {
            c0,
            r1,
            f0,
            s1,
            suffix: plan[pivot + 1..].to_vec(),
        }
    }

    /// Facts of `target` not re-achieved by the maximal suffix subsequence
    /// whose macro-precondition lies within `S₁`.
    pub fn unrecovered(&self, sets: &PivotSets, target: &BTreeSet<Fact>) -> BTreeSet<Fact> {
        let mut achieved: BTreeSet<Fact> = BTreeSet::new();
        for &o in &sets.suffix {
            let op = self.task.op(o);
            if op
                .pre
                .iter()
                .all(|f| achieved.contains(&f) || sets.s1.contains(&f))
            {
                achieved.extend(op.eff.iter());
            }
        }
        target.difference(&achieved).copied().collect()
    }

    /// Checks whether an optimal rplan dependency graph is successful and
    /// computes its bound.
    pub fn check_odg_success(&self, g: &DepGraph, s: &State, plan: &[OpId], pivot: usize) -> Verdict {
        debug_assert_eq!(g.kind, DepGraphKind::OdgPlus);
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

        let sets = self.pivot_sets(g, s, plan, pivot);
        let critical = sets.critical();
        let missing = self.unrecovered(&sets, &critical);
        let start_irrelevant = !sets.r1.contains(&(g.x0, s.get(g.x0)));
        let class = st.class(g.t0);
        let branch = if missing.is_empty() {
            Some(Branch::Recovered2a)
        } else if start_irrelevant && class.replaceable_seff_deletes {
            Some(Branch::Replaceable2b)
        } else if start_irrelevant && class.recoverable_seff_deletes {
            Some(Branch::Recoverable2c)
        } else {
            None
        };
        if branch.is_none() {
            failures.push(Failure::PivotDeletes {
                op: op_name.clone(),
                facts: missing.iter().map(|&f| task.fact_name(f)).collect(),
            });
            let vars: BTreeSet<usize> = missing.iter().map(|f| f.0).collect();
            for v in vars {
                if v == g.x0 && class.invertible {
                    continue;
                }
                diagnosis.push(DiagnosisPair {
                    schema: schema.clone(),
                    var: task.var_name(v).to_string(),
                });
            }
        }

        for (&x, odtg) in &g.odtgs {
            for t in odtg.transitions() {
                let c = st.class(t);
                let ok = c.self_irrelevant_deletes
                    || ((c.invertible || odtg.is_induced(t)) && self.harmless_side_effects(g, t));
                if !ok {
                    failures.push(Failure::Transition {
                        op: op_name.clone(),
                        var: task.var_name(x).to_string(),
                        transition: self.transition_name(t),
                    });
                    diagnosis.push(DiagnosisPair {
                        schema: schema.clone(),
                        var: task.var_name(x).to_string(),
                    });
                    break;
                }
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

    /// `var: from -> to (op)` rendering of a transition.
    pub fn transition_name(&self, t: usize) -> String {
        let tr = self.structure.transition(t);
        format!(
            "{}: {} -> {} ({})",
            self.task.var_name(tr.var),
            self.task.value_name(tr.var, tr.from),
            self.task.value_name(tr.var, tr.to),
            self.task.op(tr.rop).name
        )
    }
}
