//! Dependency-graph construction, success tests, costs and the analyses.

use std::collections::BTreeSet;

use hplus_topo::benchgen::{generate, generate_example, DomainParams};
use hplus_topo::relax::PlanSource;
use hplus_topo::topo::{Analyzer, Branch, DepGraphKind, Failure};
use hplus_topo::Task;

fn vars(t: &Task, names: &[&str]) -> BTreeSet<usize> {
    names.iter().map(|n| t.var_id(n).unwrap()).collect()
}

fn ops(t: &Task, names: &[&str]) -> Vec<usize> {
    names.iter().map(|n| t.op_id(n).unwrap_or_else(|| panic!("no operator {n}"))).collect()
}

fn gripper(balls: usize) -> Task {
    generate(&DomainParams::Gripper { balls }).unwrap()
}

#[test]
fn pivot_applicable_in_state_gives_single_vertex() {
    let t = gripper(1);
    let a = Analyzer::new(&t);
    let plan = ops(&t, &["pickup 1 b1 L", "move L R", "drop 1 b1 R"]);
    let g = a.build_odg_plus(t.init(), &plan, 0, t.var_id("b1").unwrap()).unwrap();
    assert_eq!(g.kind, DepGraphKind::OdgPlus);
    assert_eq!(g.vertices, vars(&t, &["b1"]));
    assert!(g.arcs.is_empty());
}

#[test]
fn gripper_drop_after_move_depends_on_robot_only() {
    let t = gripper(1);
    let a = Analyzer::new(&t);
    let s = t.state_from(&[("ro", "L"), ("f1", "0"), ("f2", "1"), ("b1", "1")]);
    let plan = ops(&t, &["move L R", "drop 1 b1 R"]);
    let (b1, ro) = (t.var_id("b1").unwrap(), t.var_id("ro").unwrap());
    let g = a.build_odg_plus(&s, &plan, 1, b1).unwrap();
    assert_eq!(g.vertices, vars(&t, &["b1", "ro"]));
    assert_eq!(g.arcs, BTreeSet::from([(ro, b1)]));
    let v = a.check_odg_success(&g, &s, &plan, 1);
    assert!(v.success && v.bound.unwrap() <= 1, "{v:?}");
}

#[test]
fn gripper_pickup_deletes_are_recovered_by_the_suffix() {
    let t = gripper(3);
    let a = Analyzer::new(&t);
    let plan = ops(
        &t,
        &["pickup 1 b1 L", "pickup 2 b2 L", "pickup 1 b3 L", "move L R", "drop 1 b1 R", "drop 2 b2 R", "drop 1 b3 R"],
    );
    let g = a.build_odg_plus(t.init(), &plan, 0, t.var_id("b1").unwrap()).unwrap();
    let v = a.check_odg_success(&g, t.init(), &plan, 0);
    assert!(v.success, "{v:?}");
    assert_eq!(v.branch, Some(Branch::Recovered2a));
}

#[test]
fn pivot_errors() {
    let t = gripper(1);
    let a = Analyzer::new(&t);
    let plan = ops(&t, &["pickup 1 b1 L", "move L R", "drop 1 b1 R"]);
    // `move` does not change b1.
    assert!(a.build_odg_plus(t.init(), &plan, 1, t.var_id("b1").unwrap()).is_err());
    // `pickup` changes f1 to 0, which is in no goal or precondition.
    assert!(a.build_odg_plus(t.init(), &plan, 0, t.var_id("f1").unwrap()).is_err());
}

#[test]
fn example8_parallel_graph_uses_the_v_route() {
    let t = generate_example(8, 3, 0).unwrap();
    let a = Analyzer::new(&t);
    let plan = a.relaxed_plan(t.init(), PlanSource::Parallel).unwrap().unwrap();
    let x = t.var_id("x").unwrap();
    let pivot = plan.ops.iter().position(|&o| t.op(o).eff.has_var(x)).unwrap();
    let g = a.build_odg_plus(t.init(), &plan.ops, pivot, x).unwrap();
    assert_eq!(g.vertices, vars(&t, &["x", "v1", "v2", "v3", "v4", "v5"]));
    let v = a.check_odg_success(&g, t.init(), &plan.ops, pivot);
    assert!(v.success && v.bound == Some(5), "the documented false positive: {v:?}");
}

#[test]
fn example4_pivot_side_effect_is_diagnosed() {
    let t = generate_example(4, 3, 0).unwrap();
    let v = Analyzer::new(&t).analyze_state_approx(t.init(), PlanSource::Exact);
    assert!(!v.success);
    assert!(
        v.diagnosis.iter().any(|d| d.schema == "y12" && d.var == "x"),
        "{:?}",
        v.diagnosis
    );
}

#[test]
fn global_graph_costs() {
    let l = generate(&DomainParams::Logistics { cities: 1, locations: 3, airplanes: 0, packages: 1, seed: 0 }).unwrap();
    let a = Analyzer::new(&l);
    let p = l.var_id("p1").unwrap();
    let load = l.operators().iter().position(|o| o.schema() == "unload").unwrap();
    let g = a.build_gdg(p, load).unwrap();
    assert_eq!(g.vertices, vars(&l, &["p1", "t1"]));
    assert_eq!(a.graph_cost(&g).unwrap(), 2, "1 + 1 * 1");

    let m = generate(&DomainParams::Miconic { floors: 3, passengers: 1, seed: 0 }).unwrap();
    let a = Analyzer::new(&m);
    let s = m.var_id("s1").unwrap();
    let depart = m.operators().iter().position(|o| o.schema() == "depart").unwrap();
    let g = a.build_gdg(s, depart).unwrap();
    assert_eq!(a.graph_cost(&g).unwrap(), 4);
    assert_eq!(a.analyze_global().verdict.bound, Some(3));

    for n in [1usize, 2, 3] {
        let e = generate_example(6, n, 0).unwrap();
        let a = Analyzer::new(&e);
        let x0 = e.var_id("x0").unwrap();
        let o = e.operators().iter().position(|o| o.eff.has_var(x0)).unwrap();
        let g = a.build_gdg(x0, o).unwrap();
        let expected: u64 = 1 + (1..=n as u32).map(|i| 4u64.pow(i)).sum::<u64>();
        assert_eq!(a.graph_cost(&g).unwrap(), expected);
    }
}

#[test]
fn simple_tsp_global_graph() {
    let t = generate(&DomainParams::SimpleTsp { locations: 4, seed: 0 }).unwrap();
    let a = Analyzer::new(&t);
    let v = t.var_id("v_l3").unwrap();
    let o = t.op_id("move l1 l3").unwrap();
    let g = a.build_gdg(v, o).unwrap();
    assert_eq!(g.vertices, vars(&t, &["v_l3", "p"]));
}

#[test]
fn local_graph_with_satisfied_preconditions_is_trivial() {
    let t = gripper(1);
    let a = Analyzer::new(&t);
    let g = a.build_ldg(t.init(), t.var_id("b1").unwrap(), t.op_id("pickup 1 b1 L").unwrap()).unwrap();
    assert_eq!(g.vertices, vars(&t, &["b1"]));
}

#[test]
fn example2_global_graph_is_cyclic() {
    let t = generate_example(2, 5, 0).unwrap();
    let a = Analyzer::new(&t);
    let y = t.var_id("y").unwrap();
    let o = t.op_id("y15").unwrap();
    let g = a.build_gdg(y, o).unwrap();
    assert!(g.vertices.contains(&t.var_id("x").unwrap()) && g.vertices.contains(&y));
    assert!(!g.is_acyclic());
    let v = a.check_dg_success(&g, None);
    assert!(!v.success);
    assert!(v.failures.iter().any(|f| matches!(f, Failure::Cycle { .. })), "{:?}", v.failures);

    let global = a.analyze_global();
    assert!(!global.verdict.success);
    assert!(global.fraction < 1.0);
    assert!(global.verdict.failures.iter().any(|f| matches!(f, Failure::Cycle { .. })));
}

#[test]
fn global_branches() {
    let l = generate(&DomainParams::Logistics { cities: 2, locations: 2, airplanes: 1, packages: 2, seed: 0 }).unwrap();
    let g = Analyzer::new(&l).analyze_global();
    assert!(g.verdict.success);
    assert!(g.graphs.iter().all(|o| o.verdict.branch == Some(Branch::SelfIrrelevant3a)));

    let m = generate(&DomainParams::Movie { snacks: 2, c2: false, seed: 0 }).unwrap();
    let g = Analyzer::new(&m).analyze_global();
    assert!(g.verdict.success);
    let re = g.graphs.iter().find(|o| o.x0 == "re").expect("graph for re");
    assert_eq!(re.verdict.branch, Some(Branch::Recoverable3c));
    assert_eq!(g.verdict.bound, Some(1));
}

#[test]
fn guaranteed_local_analysis() {
    let l = generate(&DomainParams::Logistics { cities: 1, locations: 3, airplanes: 0, packages: 2, seed: 3 }).unwrap();
    let a = Analyzer::new(&l);
    let ss = hplus_topo::oracle::enumerate(&l, 10_000).unwrap();
    for s in &ss.states {
        let v = a.analyze_state_guaranteed(s);
        if l.is_goal(s) {
            assert!(!v.applicable);
        } else {
            assert!(v.success && v.bound.unwrap() <= 1, "{}: {v:?}", l.state_key(s));
        }
    }

    // Carrying a ball supports picking up a ball: b1 supports itself.
    let g = gripper(2);
    let v = Analyzer::new(&g).analyze_state_guaranteed(g.init());
    assert!(!v.success);
    assert!(
        v.failures.iter().any(|f| matches!(f,
            Failure::UnachievedGoalSuccessor { var, successor } if var == "b1" && successor == "b1")),
        "{:?}",
        v.failures
    );
}

#[test]
fn dead_end_states_fail() {
    let mut b = hplus_topo::task::TaskBuilder::new();
    b.var("x", ["a", "b", "c"]).init("x", "a").goal("x", "c");
    b.op("ab", &[("x", "a")], &[("x", "b")]);
    let t = b.build().unwrap();
    let a = Analyzer::new(&t);
    for v in [a.analyze_state_guaranteed(t.init()), a.analyze_state_approx(t.init(), PlanSource::Exact)] {
        assert!(!v.success);
        assert_eq!(v.failures, vec![Failure::DeadEnd]);
    }
}
