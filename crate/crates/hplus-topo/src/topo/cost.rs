//! Exit-distance cost functions over dependency graphs.

use std::collections::BTreeMap;

use petgraph::algo::toposort;

use super::graph::{DepGraph, DepGraphKind, OdtgPlus};
use super::{Analyzer, Branch};
use crate::error::GraphError;
use crate::structure::{diameter, TrId};
use crate::task::VarId;

impl Analyzer<'_> {
    /// Whether a transition has no harmful side effects for the graph:
    /// irrelevant side-effect deletes and no side effect on a non-leaf
    /// vertex.
    pub(crate) fn harmless_side_effects(&self, g: &DepGraph, t: TrId) -> bool {
        let st = &self.structure;
        st.class(t).irrelevant_seff_deletes
            && st
                .transition(t)
                .seff
                .vars()
                .all(|y| y == g.x0 || !g.vertices.contains(&y))
    }

    /// `diam(oDTG⁺_x)`.
    pub fn odtg_diameter(&self, odtg: &OdtgPlus) -> usize {
        let keep: Vec<TrId> = odtg.transitions().collect();
        diameter(&self.structure.dtg_graph(self.task, odtg.var, |t| keep.contains(&t)))
    }

    /// Whether `x` may use DTG short-cuts in an optimal rplan graph: all
    /// fragment transitions are invertible or induced with harmless side
    /// effects, and every other DTG transition is irrelevant or has no
    /// conditions and irrelevant side-effect deletes.
    pub fn in_v_star(&self, g: &DepGraph, x: VarId) -> bool {
        let st = &self.structure;
        let Some(odtg) = g.odtgs.get(&x) else {
            return false;
        };
        let fragment_ok = odtg
            .transitions()
            .all(|t| (st.class(t).invertible || odtg.is_induced(t)) && self.harmless_side_effects(g, t));
        fragment_ok
            && st.dtg(x).iter().all(|&t| {
                odtg.transitions().any(|u| u == t)
                    || !st.class(t).relevant
                    || (st.transition(t).cond.is_empty() && st.class(t).irrelevant_seff_deletes)
            })
    }

    /// Whether `x` may use `diam(DTG_x)` in a local or global graph: every
    /// DTG transition is irrelevant, or invertible without conditions and
    /// with harmless side effects.
    pub fn in_v_star_star(&self, g: &DepGraph, x: VarId) -> bool {
        let st = &self.structure;
        st.dtg(x).iter().all(|&t| {
            !st.class(t).relevant
                || (st.class(t).invertible && st.transition(t).cond.is_empty() && self.harmless_side_effects(g, t))
        })
    }

    /// Per-variable multiplier of the cost function.
    pub fn cost_factor(&self, g: &DepGraph, x: VarId) -> u64 {
        let st = &self.structure;
        match g.kind {
            DepGraphKind::OdgPlus => {
                let d = self.odtg_diameter(&g.odtgs[&x]);
                if self.in_v_star(g, x) {
                    d.min(st.dtg_diameter(x)) as u64
                } else {
                    d as u64
                }
            }
            DepGraphKind::Ldg | DepGraphKind::Gdg => {
                if self.in_v_star_star(g, x) {
                    st.dtg_diameter(x) as u64
                } else {
                    (self.task.domain_size(x) - 1) as u64
                }
            }
        }
    }

    /// The graph cost: leaf counts 1; every other vertex counts its factor
    /// times the summed cost of its successors. Saturates at `u64::MAX`.
    pub fn graph_cost(&self, g: &DepGraph) -> Result<u64, GraphError> {
        let dg = self.dep_digraph(g);
        let order = toposort(&dg, None).map_err(|_| GraphError::Cyclic)?;
        let mut cost: BTreeMap<VarId, u64> = BTreeMap::new();
        for n in order.into_iter().rev() {
            let x = dg[n];
            let c = if x == g.x0 {
                1
            } else {
                let sum = g
                    .successors(x)
                    .fold(0u64, |acc, y| acc.saturating_add(cost[&y]));
                self.cost_factor(g, x).saturating_mul(sum)
            };
            cost.insert(x, c);
        }
        Ok(cost.values().fold(0u64, |acc, &c| acc.saturating_add(c)))
    }

    /// Exit-distance bound implied by a successful graph with the given
    /// branch.
    pub fn cost_bound(&self, g: &DepGraph, branch: Branch) -> Result<u64, GraphError> {
        let c = self.graph_cost(g)?;
        Ok(if branch.subtracts_one() { c.saturating_sub(1) } else { c })
    }

    fn dep_digraph(&self, g: &DepGraph) -> petgraph::graph::DiGraph<VarId, ()> {
        g.to_digraph()
    }
}
