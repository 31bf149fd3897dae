//! Dependency-graph construction.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::graph::DiGraph;

use super::Analyzer;
use crate::error::GraphError;
use crate::structure::TrId;
use crate::task::{OpId, State, Value, VarId};

/// Which kind of dependency graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DepGraphKind {
    /// Built from an optimal relaxed plan for a state.
    OdgPlus,
    /// Built from a state and the support graph.
    Ldg,
    /// Built from the task alone.
    Gdg,
}

/// The part of a non-leaf variable's DTG traversed by the plan prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdtgPlus {
    pub var: VarId,
    /// Values true at some point during the prefix.
    pub values: BTreeSet<Value>,
    /// Relevant transitions taken by prefix operators.
    pub original: Vec<TrId>,
    /// Relevant inverses of original transitions.
    pub induced: Vec<TrId>,
}

impl OdtgPlus {
    /// Original and induced transitions.
    pub fn transitions(&self) -> impl Iterator<Item = TrId> + '_ {
        self.original.iter().chain(self.induced.iter()).copied()
    }

    pub fn is_induced(&self, t: TrId) -> bool {
        self.induced.contains(&t)
    }
}

/// A dependency graph with unique leaf `x0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepGraph {
    pub kind: DepGraphKind,
    pub x0: VarId,
    /// Pivot transition on `x0`.
    pub t0: TrId,
    /// Pivot operator, responsible for `t0`.
    pub o0: OpId,
    pub vertices: BTreeSet<VarId>,
    pub arcs: BTreeSet<(VarId, VarId)>,
    /// Per non-leaf variable fragments (optimal rplan graphs only).
    pub odtgs: BTreeMap<VarId, OdtgPlus>,
}

impl DepGraph {
    fn leaf(kind: DepGraphKind, x0: VarId, t0: TrId, o0: OpId) -> DepGraph {
        DepGraph {
            kind,
            x0,
            t0,
            o0,
            vertices: BTreeSet::from([x0]),
            arcs: BTreeSet::new(),
            odtgs: BTreeMap::new(),
        }
    }

    /// Non-leaf vertices.
    pub fn non_leaf(&self) -> impl Iterator<Item = VarId> + '_ {
        self.vertices.iter().copied().filter(move |&v| v != self.x0)
    }

    /// Successors of `x` in the graph.
    pub fn successors(&self, x: VarId) -> impl Iterator<Item = VarId> + '_ {
        self.arcs.iter().filter(move |a| a.0 == x).map(|a| a.1)
    }

    /// The graph as a petgraph graph; node weights are variables.
    pub fn to_digraph(&self) -> DiGraph<VarId, ()> {
        let mut g = DiGraph::new();
        let idx: BTreeMap<VarId, _> = self.vertices.iter().map(|&v| (v, g.add_node(v))).collect();
        for &(a, b) in &self.arcs {
            g.add_edge(idx[&a], idx[&b], ());
        }
        g
    }

    /// Variables lying on some cycle.
    pub fn cyclic_vars(&self) -> BTreeSet<VarId> {
        let g = self.to_digraph();
        petgraph::algo::tarjan_scc(&g)
            .into_iter()
            .filter(|scc| scc.len() > 1 || g.contains_edge(scc[0], scc[0]))
            .flatten()
            .map(|n| g[n])
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        !petgraph::algo::is_cyclic_directed(&self.to_digraph())
    }
}

impl Analyzer<'_> {
    /// The transition `(s(x0), eff_o0(x0))` taken by `o0`, if it exists and
    /// is relevant.
    pub(crate) fn pivot_transition(&self, s: &State, x0: VarId, o0: OpId) -> Result<TrId, GraphError> {
        let op = self.task.op(o0);
        let Some(c) = op.eff.get(x0) else {
            return Err(GraphError::PivotNotMoving);
        };
        if c == s.get(x0) {
            return Err(GraphError::PivotNotMoving);
        }
        let t0 = self
            .structure
            .transitions_of(x0, o0)
            .find(|&t| self.structure.transition(t).from == s.get(x0))
            .ok_or(GraphError::PivotNotMoving)?;
        if !self.structure.class(t0).relevant {
            return Err(GraphError::PivotNotRelevant);
        }
        Ok(t0)
    }

    /// Builds the optimal rplan dependency graph for the plan `plan` (a
    /// relaxed plan for `s`), the pivot at `pivot`, and leaf `x0`.
    pub fn build_odg_plus(&self, s: &State, plan: &[OpId], pivot: usize, x0: VarId) -> Result<DepGraph, GraphError> {
        let task = self.task;
        let st = &self.structure;
        let o0 = plan[pivot];
        let t0 = self.pivot_transition(s, x0, o0)?;
        let prefix = &plan[..pivot];
        let mut g = DepGraph::leaf(super::DepGraphKind::OdgPlus, x0, t0, o0);
        for (x, d) in task.op(o0).pre.iter() {
            if d != s.get(x) {
                g.vertices.insert(x);
                g.arcs.insert((x, x0));
            }
        }
        let mut worklist: Vec<VarId> = g.non_leaf().collect();
        while let Some(xp) = worklist.pop() {
            for &o in prefix {
                let op = task.op(o);
                let Some(d) = op.eff.get(xp) else { continue };
                if !st.is_needed(task, (xp, d)) {
                    continue;
                }
                for (x, p) in op.pre.iter() {
                    if x != xp && p != s.get(x) {
                        g.arcs.insert((x, xp));
                        if g.vertices.insert(x) && x != x0 {
                            worklist.push(x);
                        }
                    }
                }
            }
        }
        let non_leaf: Vec<VarId> = g.non_leaf().collect();
        for x in non_leaf {
            let odtg = self.build_odtg(s, prefix, x, &g.vertices, x0);
            g.odtgs.insert(x, odtg);
        }
        Ok(g)
    }

    fn build_odtg(&self, s: &State, prefix: &[OpId], x: VarId, vertices: &BTreeSet<VarId>, x0: VarId) -> OdtgPlus {
        let task = self.task;
        let st = &self.structure;
        let ops: Vec<OpId> = prefix.iter().copied().filter(|&o| task.op(o).eff.has_var(x)).collect();
        let mut values = BTreeSet::from([s.get(x)]);
        for &o in &ops {
            values.insert(task.op(o).eff.get(x).expect("filtered on affecting x"));
        }
        let mut original = Vec::new();
        for &o in &ops {
            for t in st.transitions_of(x, o) {
                let tr = st.transition(t);
                if st.class(t).relevant && values.contains(&tr.from) && !original.contains(&t) {
                    original.push(t);
                }
            }
        }
        let passes = |t: TrId| {
            let c = st.class(t);
            c.irrelevant_seff_deletes && st.transition(t).seff.vars().all(|y| y == x0 || !vertices.contains(&y))
        };
        let mut induced = Vec::new();
        for &t in &original {
            let inverses: Vec<TrId> = st
                .class(t)
                .inverse_witnesses
                .iter()
                .copied()
                .filter(|&u| st.class(u).relevant)
                .collect();
            let chosen: Vec<TrId> = inverses.iter().copied().filter(|&u| passes(u)).collect();
            let chosen = if chosen.is_empty() {
                inverses.first().copied().into_iter().collect()
            } else {
                chosen
            };
            for u in chosen {
                if !original.contains(&u) && !induced.contains(&u) {
                    induced.push(u);
                }
            }
        }
        OdtgPlus {
            var: x,
            values,
            original,
            induced,
        }
    }

    /// Builds the local dependency graph for `s`, goal variable `x0` and the
    /// relevant transition `(s(x0), c)` taken by `o0`.
    pub fn build_ldg(&self, s: &State, x0: VarId, o0: OpId) -> Result<DepGraph, GraphError> {
        if !self.task.goal().has_var(x0) {
            return Err(GraphError::NotGoalVariable);
        }
        let t0 = self.pivot_transition(s, x0, o0)?;
        let mut g = DepGraph::leaf(DepGraphKind::Ldg, x0, t0, o0);
        for (x, d) in self.task.op(o0).pre.iter() {
            if d != s.get(x) {
                g.vertices.insert(x);
                g.arcs.insert((x, x0));
            }
        }
        self.close_under_support_graph(&mut g);
        Ok(g)
    }

    /// Builds the global dependency graph for goal variable `x0` and an
    /// operator `o0` responsible for a relevant transition on `x0`.
    pub fn build_gdg(&self, x0: VarId, o0: OpId) -> Result<DepGraph, GraphError> {
        if !self.task.goal().has_var(x0) {
            return Err(GraphError::NotGoalVariable);
        }
        let t0 = self
            .structure
            .transitions_of(x0, o0)
            .find(|&t| self.structure.class(t).relevant)
            .ok_or(GraphError::PivotNotRelevant)?;
        let mut g = DepGraph::leaf(DepGraphKind::Gdg, x0, t0, o0);
        for x in self.task.op(o0).pre.vars() {
            if x != x0 {
                g.vertices.insert(x);
                g.arcs.insert((x, x0));
            }
        }
        self.close_under_support_graph(&mut g);
        Ok(g)
    }

    fn close_under_support_graph(&self, g: &mut DepGraph) {
        let mut worklist: Vec<VarId> = g.non_leaf().collect();
        while let Some(xp) = worklist.pop() {
            for &x in self.structure.sg_predecessors(xp) {
                g.arcs.insert((x, xp));
                if g.vertices.insert(x) && x != g.x0 {
                    worklist.push(x);
                }
            }
        }
    }
}
