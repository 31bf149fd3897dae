//! Property tests over seeded random tasks.

use hplus_topo::benchgen::random_task;
use hplus_topo::oracle::{enumerate, h_plus_all, monotone_exit_path, topology, verify_analyzers};
use hplus_topo::probe::{sample_states, search_probe, ProbeLimit};
use hplus_topo::relax::{h_ff, h_plus_exact, is_relaxed_plan, lm_cut, reorder_behind, RelaxedTask};
use hplus_topo::{parse_task, Task};
use proptest::prelude::*;

const CAP: usize = 10_000;
const BUDGET: u64 = 1_000_000;

fn task() -> impl Strategy<Value = Task> {
    (1usize..=5, 2usize..=4, 1usize..=14, any::<u64>())
        .prop_map(|(vars, domain, ops, seed)| random_task(vars, domain, ops, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn json_round_trip(t in task()) {
        prop_assert_eq!(parse_task(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn analyses_are_sound(t in task()) {
        let r = verify_analyzers(&t, CAP).unwrap();
        prop_assert!(r.is_sound(), "{:?}", r.violations);
    }

    #[test]
    fn heuristic_ordering(t in task()) {
        let rt = RelaxedTask::new(&t);
        let ss = enumerate(&t, CAP).unwrap();
        for s in &ss.states {
            let (hp, plan) = h_plus_exact(&t, s, BUDGET, None).unwrap();
            let ff = h_ff(&t, s);
            let lb = lm_cut(&rt, &t.state_facts(s));
            prop_assert_eq!(hp.is_some(), ff.value.is_some());
            prop_assert_eq!(hp.is_some(), lb.is_some());
            if let (Some(hp), Some(plan), Some(hf), Some(lb)) = (hp, plan, ff.value, lb) {
                prop_assert!(lb as usize <= hp && hp <= hf);
                prop_assert!(is_relaxed_plan(&t, s, &plan.ops));
                prop_assert!(is_relaxed_plan(&t, s, &ff.plan.unwrap().ops));
                prop_assert!(ff.helpful.iter().all(|&o| t.applicable(s, o)));
            }
        }
    }

    #[test]
    fn reordering_keeps_plans_valid(t in task(), pick in any::<prop::sample::Index>()) {
        let Ok((Some(_), Some(plan))) = h_plus_exact(&t, t.init(), BUDGET, None) else { return Ok(()) };
        if plan.ops.is_empty() {
            return Ok(());
        }
        let pivot = pick.index(plan.ops.len());
        let (re, p) = reorder_behind(&t, t.init(), &plan.ops, pivot);
        prop_assert!(is_relaxed_plan(&t, t.init(), &re));
        prop_assert_eq!(re[p], plan.ops[pivot]);
        prop_assert!(p <= pivot);
        let (mut a, mut b) = (re.clone(), plan.ops.clone());
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn topology_is_consistent(t in task()) {
        let ss = enumerate(&t, CAP).unwrap();
        let topo = topology(&ss, h_plus_all(&t, &ss, BUDGET).unwrap());
        for i in 0..ss.len() {
            if !topo.in_scope(i) {
                prop_assert!(topo.exit_distance[i].is_none());
                continue;
            }
            let path = monotone_exit_path(&ss, &topo, i);
            prop_assert_eq!(path.is_none(), topo.local_minimum[i]);
            if let (Some(path), Some(ed)) = (path, topo.exit_distance[i]) {
                prop_assert!(ed < path.len());
            }
        }
    }

    #[test]
    fn probing_and_sampling(t in task(), seed in any::<u64>()) {
        let Ok(samples) = sample_states(&t, 12, seed) else { return Ok(()) };
        prop_assert_eq!(&samples, &sample_states(&t, 12, seed).unwrap());
        for s in &samples.states {
            let unlimited = search_probe(&t, s, ProbeLimit::Unlimited, true).found;
            for budget in [1, 3] {
                let limited = search_probe(&t, s, ProbeLimit::Expansions(budget), true);
                prop_assert!(!limited.found || unlimited);
                prop_assert!(limited.expansions <= budget);
            }
        }
    }
}
