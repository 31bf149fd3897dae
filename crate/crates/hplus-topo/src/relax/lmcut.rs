//! Landmark-cut lower bound on the relaxed plan length (unit costs).
//!
//! Used internally by the exact engines to prune search; it is admissible,
//! i.e. never exceeds `h⁺` of the fact set it is evaluated on.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::RelaxedTask;
use crate::task::FactSet;

const INF: u32 = u32::MAX;

/// Landmark-cut bound from the fact set `start`; `None` if the goal is
/// relaxed-unreachable.
pub fn lm_cut(rt: &RelaxedTask, start: &FactSet) -> Option<u32> {
    lm_cut_masked(rt, start, None)
}

/// As [`lm_cut`], ignoring operators whose `enabled` entry is false.
pub(crate) fn lm_cut_masked(rt: &RelaxedTask, start: &FactSet, enabled: Option<&[bool]>) -> Option<u32> {
    if rt.goal_reached(start) {
        return Some(0);
    }
    let n_ops = rt.num_ops();
    // The goal is modeled as an extra operator with index n_ops and zero
    // cost; its single effect is a virtual fact with index num_facts.
    let goal_fact = rt.num_facts;
    let mut cost: Vec<u32> = (0..=n_ops)
        .map(|o| if o == n_ops { 0 } else { 1 })
        .collect();
    let on = |o: usize| o == n_ops || enabled.is_none_or(|e| e[o]);
    let pre = |o: usize| -> &[usize] { if o == n_ops { &rt.goal } else { &rt.pre[o] } };
    let mut total = 0u32;
    let mut hmax = vec![INF; rt.num_facts + 1];
    let mut pcf: Vec<Option<usize>> = vec![None; n_ops + 1];
    loop {
        // h^max under current costs, recording precondition choice functions.
        hmax.iter_mut().for_each(|h| *h = INF);
        let mut unsat: Vec<usize> = (0..=n_ops).map(|o| pre(o).len()).collect();
        let mut op_val = vec![0u32; n_ops + 1];
        pcf.iter_mut().for_each(|p| *p = None);
        let mut heap = BinaryHeap::new();
        for f in start.ones() {
            hmax[f] = 0;
            heap.push(Reverse((0u32, f)));
        }
        let relax_op = |o: usize, hmax: &mut Vec<u32>, heap: &mut BinaryHeap<Reverse<(u32, usize)>>, op_val: &[u32]| {
            let c = op_val[o] + cost[o];
            let effs: &[usize] = if o == n_ops { std::slice::from_ref(&goal_fact) } else { &rt.eff[o] };
            for &e in effs {
                if c < hmax[e] {
                    hmax[e] = c;
                    heap.push(Reverse((c, e)));
                }
            }
        };
        for (o, _) in unsat.iter().enumerate().filter(|&(o, &u)| u == 0 && on(o)) {
            relax_op(o, &mut hmax, &mut heap, &op_val);
        }
        while let Some(Reverse((h, f))) = heap.pop() {
            if h > hmax[f] || f == goal_fact {
                continue;
            }
            let users: Vec<usize> = rt.pre_of[f]
                .iter()
                .copied()
                .chain(rt.goal.contains(&f).then_some(n_ops))
                .collect();
            for o in users {
                if !on(o) || unsat[o] == 0 {
                    continue;
                }
                unsat[o] -= 1;
                if h >= op_val[o] {
                    op_val[o] = h;
                    pcf[o] = Some(f);
                }
                if unsat[o] == 0 {
                    relax_op(o, &mut hmax, &mut heap, &op_val);
                }
            }
        }
        if hmax[goal_fact] == INF {
            return None;
        }
        if hmax[goal_fact] == 0 {
            return Some(total);
        }
        // Goal zone: facts reaching the goal through zero-cost operators.
        let mut goal_zone = vec![false; rt.num_facts + 1];
        goal_zone[goal_fact] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for o in 0..=n_ops {
                if !on(o) || unsat[o] != 0 || cost[o] != 0 {
                    continue;
                }
                let Some(p) = pcf[o] else { continue };
                if goal_zone[p] {
                    continue;
                }
                let effs: &[usize] = if o == n_ops { std::slice::from_ref(&goal_fact) } else { &rt.eff[o] };
                if effs.iter().any(|&e| goal_zone[e]) {
                    goal_zone[p] = true;
                    changed = true;
                }
            }
        }
        // Facts reachable from the start without entering the goal zone.
        // Operators without preconditions hang off a virtual root that is
        // always in this region.
        let mut before = vec![false; rt.num_facts + 1];
        let mut stack: Vec<usize> = start.ones().filter(|&f| !goal_zone[f]).collect();
        for &f in &stack {
            before[f] = true;
        }
        let reached = |o: usize| on(o) && unsat[o] == 0;
        let mut frontier_ops: Vec<usize> = (0..n_ops).filter(|&o| reached(o) && pre(o).is_empty()).collect();
        loop {
            for o in frontier_ops.drain(..) {
                for &e in &rt.eff[o] {
                    if !goal_zone[e] && !before[e] {
                        before[e] = true;
                        stack.push(e);
                    }
                }
            }
            let Some(f) = stack.pop() else { break };
            for &o in &rt.pre_of[f] {
                if reached(o) && pcf[o] == Some(f) {
                    frontier_ops.push(o);
                }
            }
        }
        let cut: Vec<usize> = (0..n_ops)
            .filter(|&o| {
                reached(o)
                    && pcf[o].is_none_or(|p| before[p])
                    && rt.eff[o].iter().any(|&e| goal_zone[e])
            })
            .collect();
        let m = cut.iter().map(|&o| cost[o]).min().expect("a nonempty cut exists while the goal costs more than 0");
        debug_assert!(m > 0);
        total += m;
        for o in cut {
            cost[o] -= m;
        }
    }
}

