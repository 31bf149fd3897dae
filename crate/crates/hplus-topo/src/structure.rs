//! Domain transition graphs, the support graph, graph metrics, and the
//! static classification of transitions.
//!
//! Every operator contributes one labeled arc per affected variable (or one
//! arc per possible source value when the variable is not constrained by the
//! precondition). Each arc is classified once, up front: relevance,
//! invertibility, and the side-effect-delete taxonomy (irrelevant,
//! self-irrelevant, replaceable, recoverable) that the dependency-graph
//! analyses consult.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use petgraph::algo::dijkstra;
use petgraph::graph::{DiGraph, NodeIndex};
use rayon::prelude::*;

use crate::task::{Fact, FactSet, OpId, PartialState, Task, Value, VarId};

/// Index of a transition in [`Structure::transitions`].
pub type TrId = usize;

/// Default cap on the number of context tuples enumerated per transition.
pub const DEFAULT_CONTEXT_CAP: usize = 4096;

/// A labeled arc `(from, to)` of the domain transition graph of `var`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub var: VarId,
    pub from: Value,
    pub to: Value,
    /// Responsible operator.
    pub rop: OpId,
    /// Outside conditions: the precondition of `rop` without `var`.
    pub cond: PartialState,
    /// Side effects: the effect of `rop` without `var`.
    pub seff: PartialState,
}

/// Static classification of a transition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransitionClass {
    pub relevant: bool,
    pub invertible: bool,
    /// Inverse arcs `(to, from)` whose conditions are contained in ours.
    pub inverse_witnesses: Vec<TrId>,
    pub irrelevant_seff_deletes: bool,
    pub self_irrelevant_seff_deletes: bool,
    pub self_irrelevant_deletes: bool,
    pub replaceable_seff_deletes: bool,
    pub recoverable_seff_deletes: bool,
    /// Recovering operator chosen for each context tuple, aligned with
    /// `context_tuples`; empty when recoverability does not hold or holds
    /// because the side-effect deletes are irrelevant.
    pub recovering_ops: Vec<OpId>,
    /// All facts possibly deleted by the side effects.
    pub context: Vec<Fact>,
    /// Every combination of context values, or `None` if the number of
    /// combinations exceeds the cap.
    pub context_tuples: Option<Vec<PartialState>>,
}

/// DTGs, support graph and transition classification of a task.
#[derive(Clone, Debug)]
pub struct Structure {
    transitions: Vec<Transition>,
    classes: Vec<TransitionClass>,
    by_var: Vec<Vec<TrId>>,
    sg_succ: Vec<BTreeSet<VarId>>,
    sg_pred: Vec<BTreeSet<VarId>>,
    dtg_diameter: Vec<usize>,
    /// Facts in the goal or in some operator precondition.
    needed: FactSet,
    /// For each fact id, the operators having it in their precondition.
    pre_users: Vec<Vec<OpId>>,
    goal_facts: FactSet,
}

impl Structure {
    /// Builds DTGs, the support graph, and classifies every transition with
    /// the default context cap.
    pub fn new(task: &Task) -> Structure {
        Self::with_context_cap(task, DEFAULT_CONTEXT_CAP)
    }

    /// As [`Structure::new`] with an explicit context-tuple cap.
    pub fn with_context_cap(task: &Task, cap: usize) -> Structure {
        let transitions = build_transitions(task);
        let mut by_var = vec![Vec::new(); task.num_vars()];
        for (i, t) in transitions.iter().enumerate() {
            by_var[t.var].push(i);
        }
        let mut pre_users = vec![Vec::new(); task.num_facts()];
        let mut needed = FactSet::with_capacity(task.num_facts());
        let mut goal_facts = FactSet::with_capacity(task.num_facts());
        for (o, op) in task.operators().iter().enumerate() {
            for f in op.pre.iter() {
                pre_users[task.fact_id(f)].push(o);
                needed.insert(task.fact_id(f));
            }
        }
        for f in task.goal().iter() {
            needed.insert(task.fact_id(f));
            goal_facts.insert(task.fact_id(f));
        }
        let mut s = Structure {
            transitions,
            classes: Vec::new(),
            by_var,
            sg_succ: vec![BTreeSet::new(); task.num_vars()],
            sg_pred: vec![BTreeSet::new(); task.num_vars()],
            dtg_diameter: Vec::new(),
            needed,
            pre_users,
            goal_facts,
        };
        let classes: Vec<TransitionClass> = (0..s.transitions.len())
            .into_par_iter()
            .map(|t| s.classify(task, t, cap))
            .collect();
        s.classes = classes;
        for (t, tr) in s.transitions.iter().enumerate() {
            if s.classes[t].relevant {
                for x in tr.cond.vars() {
                    s.sg_succ[x].insert(tr.var);
                    s.sg_pred[tr.var].insert(x);
                }
            }
        }
        s.dtg_diameter = (0..task.num_vars())
            .map(|v| diameter(&s.dtg_graph(task, v, |_| true)))
            .collect();
        s
    }

    /// All transitions of all variables.
    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, t: TrId) -> &Transition {
        &self.transitions[t]
    }

    pub fn class(&self, t: TrId) -> &TransitionClass {
        &self.classes[t]
    }

    /// Transitions of `DTG_var`.
    pub fn dtg(&self, var: VarId) -> &[TrId] {
        &self.by_var[var]
    }

    /// Transitions of `DTG_var` taken by operator `o`.
    pub fn transitions_of(&self, var: VarId, o: OpId) -> impl Iterator<Item = TrId> + '_ {
        self.by_var[var]
            .iter()
            .copied()
            .filter(move |&t| self.transitions[t].rop == o)
    }

    /// Support-graph successors of `x`.
    pub fn sg_successors(&self, x: VarId) -> &BTreeSet<VarId> {
        &self.sg_succ[x]
    }

    /// Support-graph predecessors of `x`.
    pub fn sg_predecessors(&self, x: VarId) -> &BTreeSet<VarId> {
        &self.sg_pred[x]
    }

    /// The support graph as a petgraph graph; node `i` is variable `i`.
    pub fn support_graph(&self) -> DiGraph<VarId, ()> {
        let mut g = DiGraph::new();
        let nodes: Vec<NodeIndex> = (0..self.sg_succ.len()).map(|v| g.add_node(v)).collect();
        for (x, succ) in self.sg_succ.iter().enumerate() {
            for &y in succ {
                g.add_edge(nodes[x], nodes[y], ());
            }
        }
        g
    }

    /// Whether the support graph contains a directed cycle.
    pub fn support_graph_is_cyclic(&self) -> bool {
        petgraph::algo::is_cyclic_directed(&self.support_graph())
    }

    /// `diam(DTG_var)`.
    pub fn dtg_diameter(&self, var: VarId) -> usize {
        self.dtg_diameter[var]
    }

    /// The sub-graph of `DTG_var` restricted to the transitions accepted by
    /// `keep`, over all values of the variable. Node `d` is value `d`.
    pub fn dtg_graph(&self, task: &Task, var: VarId, mut keep: impl FnMut(TrId) -> bool) -> DiGraph<Value, TrId> {
        let mut g = DiGraph::new();
        let nodes: Vec<NodeIndex> = (0..task.domain_size(var)).map(|d| g.add_node(d)).collect();
        for &t in &self.by_var[var] {
            if keep(t) {
                let tr = &self.transitions[t];
                g.add_edge(nodes[tr.from], nodes[tr.to], t);
            }
        }
        g
    }

    /// Whether the fact is in the goal or some operator precondition.
    pub fn is_needed(&self, task: &Task, f: Fact) -> bool {
        self.needed.contains(task.fact_id(f))
    }

    /// Whether the fact is in the goal or the precondition of some operator
    /// other than `except`.
    pub fn is_needed_except(&self, task: &Task, f: Fact, except: OpId) -> bool {
        let id = task.fact_id(f);
        self.goal_facts.contains(id) || self.pre_users[id].iter().any(|&o| o != except)
    }

    /// Operators with the fact in their precondition.
    pub fn pre_users(&self, task: &Task, f: Fact) -> &[OpId] {
        &self.pre_users[task.fact_id(f)]
    }

    /// Whether the fact is a goal fact.
    pub fn is_goal_fact(&self, task: &Task, f: Fact) -> bool {
        self.goal_facts.contains(task.fact_id(f))
    }

    /// Relevant transitions of `var` leaving `from`.
    pub fn relevant_from(&self, var: VarId, from: Value) -> impl Iterator<Item = TrId> + '_ {
        self.by_var[var].iter().copied().filter(move |&t| {
            self.transitions[t].from == from && self.classes[t].relevant
        })
    }

    fn classify(&self, task: &Task, t: TrId, cap: usize) -> TransitionClass {
        let tr = &self.transitions[t];
        let rop = task.op(tr.rop);
        let relevant = self.is_needed(task, (tr.var, tr.to));
        let inverse_witnesses: Vec<TrId> = self.by_var[tr.var]
            .iter()
            .copied()
            .filter(|&u| {
                let inv = &self.transitions[u];
                inv.from == tr.to && inv.to == tr.from && inv.cond.iter().all(|f| tr.cond.contains(f))
            })
            .collect();

        // Per side effect, the facts it may delete.
        let per_seff: Vec<Vec<Fact>> = tr
            .seff
            .iter()
            .map(|(y, d)| match rop.pre.get(y) {
                Some(p) => vec![(y, p)],
                None => (0..task.domain_size(y)).filter(|&e| e != d).map(|e| (y, e)).collect(),
            })
            .collect();
        let context: Vec<Fact> = per_seff.iter().flatten().copied().collect();
        let n_tuples = per_seff
            .iter()
            .try_fold(1usize, |acc, v| acc.checked_mul(v.len()).filter(|&n| n <= cap));
        let context_tuples = n_tuples.map(|_| cartesian(&per_seff));

        let irrelevant_seff_deletes = context.iter().all(|&f| !self.is_needed(task, f));
        let self_irrelevant_seff_deletes = context
            .iter()
            .all(|&f| !self.is_needed_except(task, f, tr.rop));
        let self_irrelevant_deletes =
            self_irrelevant_seff_deletes && !self.is_needed_except(task, (tr.var, tr.from), tr.rop);

        let prev_eff = prevail_and_effect(task, tr.rop);
        let within_prev_eff = |p: &PartialState| p.iter().all(|f| prev_eff.contains(f));

        let replaceable_seff_deletes = context.iter().all(|&f| !self.is_goal_fact(task, f))
            && task.operators().iter().enumerate().all(|(o, op)| {
                o == tr.rop
                    || !op.pre.iter().any(|f| context.contains(&f))
                    || task
                        .operators()
                        .iter()
                        .any(|alt| alt.eff == op.eff && within_prev_eff(&alt.pre))
            });

        let mut recovering_ops = Vec::new();
        let clause1 = if irrelevant_seff_deletes {
            true
        } else if let Some(tuples) = &context_tuples {
            tuples.iter().all(|psi| {
                let found = task.operators().iter().enumerate().find(|(_, op)| {
                    within_prev_eff(&op.pre)
                        && op.eff.iter().all(|f| psi.contains(f))
                        && psi
                            .iter()
                            .filter(|&f| self.is_needed_except(task, f, tr.rop))
                            .all(|f| op.eff.contains(f))
                });
                if let Some((o, _)) = found {
                    recovering_ops.push(o);
                    true
                } else {
                    false
                }
            })
        } else {
            false
        };
        let clause2 = clause1
            && tr.seff.iter().all(|f| {
                !self.is_goal_fact(task, f)
                    && self
                        .pre_users(task, f)
                        .iter()
                        .all(|o| recovering_ops.contains(o))
            });
        let recoverable_seff_deletes = clause1 && clause2;
        if !recoverable_seff_deletes {
            recovering_ops.clear();
        }

        TransitionClass {
            relevant,
            invertible: !inverse_witnesses.is_empty(),
            inverse_witnesses,
            irrelevant_seff_deletes,
            self_irrelevant_seff_deletes,
            self_irrelevant_deletes,
            replaceable_seff_deletes,
            recoverable_seff_deletes,
            recovering_ops,
            context,
            context_tuples,
        }
    }

    /// Plain-text DOT listing of all DTGs and the support graph.
    pub fn to_dot(&self, task: &Task) -> String {
        let mut out = String::from("digraph structure {\n");
        for v in 0..task.num_vars() {
            let _ = writeln!(out, "  subgraph \"cluster_{}\" {{", task.var_name(v));
            for &t in &self.by_var[v] {
                let tr = &self.transitions[t];
                let _ = writeln!(
                    out,
                    "    \"{}\" -> \"{}\" [label=\"{}\"];",
                    task.fact_name((v, tr.from)),
                    task.fact_name((v, tr.to)),
                    task.op(tr.rop).name
                );
            }
            out.push_str("  }\n");
        }
        for (x, succ) in self.sg_succ.iter().enumerate() {
            for &y in succ {
                let _ = writeln!(out, "  \"{}\" -> \"{}\" [style=bold];", task.var_name(x), task.var_name(y));
            }
        }
        out.push_str("}\n");
        out
    }

    /// Adjacency JSON: per-variable DTG arcs and the support graph.
    pub fn to_json(&self, task: &Task) -> serde_json::Value {
        let dtgs: serde_json::Map<String, serde_json::Value> = (0..task.num_vars())
            .map(|v| {
                let arcs: Vec<serde_json::Value> = self.by_var[v]
                    .iter()
                    .map(|&t| {
                        let tr = &self.transitions[t];
                        serde_json::json!({
                            "from": task.value_name(v, tr.from),
                            "to": task.value_name(v, tr.to),
                            "op": task.op(tr.rop).name,
                            "relevant": self.classes[t].relevant,
                            "invertible": self.classes[t].invertible,
                        })
                    })
                    .collect();
                (task.var_name(v).to_string(), serde_json::Value::Array(arcs))
            })
            .collect();
        let sg: serde_json::Map<String, serde_json::Value> = self
            .sg_succ
            .iter()
            .enumerate()
            .map(|(x, succ)| {
                (
                    task.var_name(x).to_string(),
                    serde_json::json!(succ.iter().map(|&y| task.var_name(y)).collect::<Vec<_>>()),
                )
            })
            .collect();
        serde_json::json!({ "dtgs": dtgs, "support_graph": sg })
    }
}

/// `prev_o ∪ eff_o` as a partial state (the two parts have disjoint
/// variables).
pub fn prevail_and_effect(task: &Task, o: OpId) -> PartialState {
    let op = task.op(o);
    let facts = op.prevail().iter().chain(op.eff.iter()).collect();
    PartialState::from_facts(facts).expect("prevail and effect have disjoint variables")
}

fn build_transitions(task: &Task) -> Vec<Transition> {
    let mut out = Vec::new();
    for (o, op) in task.operators().iter().enumerate() {
        for (x, to) in op.eff.iter() {
            let seff = op.eff.without_vars(|v| v == x);
            match op.pre.get(x) {
                Some(from) => out.push(Transition {
                    var: x,
                    from,
                    to,
                    rop: o,
                    cond: op.pre.without_vars(|v| v == x),
                    seff,
                }),
                None => {
                    for from in (0..task.domain_size(x)).filter(|&c| c != to) {
                        out.push(Transition {
                            var: x,
                            from,
                            to,
                            rop: o,
                            cond: op.pre.clone(),
                            seff: seff.clone(),
                        });
                    }
                }
            }
        }
    }
    out
}

fn cartesian(choices: &[Vec<Fact>]) -> Vec<PartialState> {
    let mut acc: Vec<Vec<Fact>> = vec![Vec::new()];
    for options in choices {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&f| {
                    let mut p = prefix.clone();
                    p.push(f);
                    p
                })
            })
            .collect();
    }
    acc.into_iter()
        .map(|facts| PartialState::from_facts(facts).expect("one fact per side-effect variable"))
        .collect()
}

/// Maximum shortest-path distance over ordered vertex pairs `(v, v')` with
/// `v'` reachable from `v`; 0 for graphs without arcs.
pub fn diameter<N, E>(g: &DiGraph<N, E>) -> usize {
    g.node_indices()
        .map(|v| {
            dijkstra(g, v, None, |_| 1usize)
                .values()
                .copied()
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// The `|V| − 1` over-approximation of the longest simple path.
pub fn max_path_bound<N, E>(g: &DiGraph<N, E>) -> usize {
    g.node_count().saturating_sub(1)
}
