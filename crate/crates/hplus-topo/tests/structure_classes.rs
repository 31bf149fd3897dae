//! DTGs, support graph, transition classification and diameters.

use hplus_topo::benchgen::{generate, generate_example, DomainParams};
use hplus_topo::structure::{diameter, max_path_bound, Structure, Transition, TransitionClass};
use hplus_topo::Task;
use petgraph::graph::DiGraph;

fn find<'a>(t: &Task, st: &'a Structure, var: &str, from: &str, to: &str, op: &str) -> (&'a Transition, &'a TransitionClass) {
    let x = t.var_id(var).unwrap();
    let (a, b) = (t.value_id(x, from).unwrap(), t.value_id(x, to).unwrap());
    let o = t.op_id(op).unwrap();
    let id = st
        .dtg(x)
        .iter()
        .copied()
        .find(|&i| {
            let tr = st.transition(i);
            tr.from == a && tr.to == b && tr.rop == o
        })
        .unwrap_or_else(|| panic!("no transition {var}: {from}->{to} by {op}"));
    (st.transition(id), st.class(id))
}

fn logistics() -> Task {
    generate(&DomainParams::Logistics { cities: 1, locations: 3, airplanes: 0, packages: 2, seed: 0 }).unwrap()
}

#[test]
fn gripper_pickup_transition_labels() {
    let t = generate(&DomainParams::Gripper { balls: 1 }).unwrap();
    let st = Structure::new(&t);
    let (tr, _) = find(&t, &st, "b1", "L", "1", "pickup 1 b1 L");
    let ro = t.var_id("ro").unwrap();
    let f1 = t.var_id("f1").unwrap();
    assert_eq!(tr.cond.facts(), &[(ro, t.value_id(ro, "L").unwrap()), (f1, t.value_id(f1, "1").unwrap())]);
    assert_eq!(tr.seff.facts(), &[(f1, t.value_id(f1, "0").unwrap())]);
}

#[test]
fn effect_without_precondition_yields_arcs_from_every_other_value() {
    let t = generate(&DomainParams::SimpleTsp { locations: 3, seed: 0 }).unwrap();
    let st = Structure::new(&t);
    let v = t.var_id("v_l2").unwrap();
    let o = t.op_id("move l1 l2").unwrap();
    let arcs: Vec<&Transition> = st.transitions_of(v, o).map(|i| st.transition(i)).collect();
    assert_eq!(arcs.len(), 1);
    assert_eq!((arcs[0].from, arcs[0].to), (t.value_id(v, "0").unwrap(), t.value_id(v, "1").unwrap()));
    let p = t.var_id("p").unwrap();
    assert_eq!(arcs[0].cond.get(p), t.value_id(p, "l1"));
    assert_eq!(arcs[0].seff.get(p), t.value_id(p, "l2"));
}

#[test]
fn untouched_variable_has_no_arcs() {
    let mut b = hplus_topo::task::TaskBuilder::new();
    b.var("x", ["a", "b"]).var("idle", ["0", "1"]).init("x", "a").init("idle", "0").goal("x", "b");
    b.op("go", &[("x", "a")], &[("x", "b")]);
    let t = b.build().unwrap();
    let st = Structure::new(&t);
    assert!(st.dtg(t.var_id("idle").unwrap()).is_empty());
    assert_eq!(st.dtg_diameter(t.var_id("idle").unwrap()), 0);
}

#[test]
fn relevance() {
    let t = generate(&DomainParams::Miconic { floors: 2, passengers: 1, seed: 0 }).unwrap();
    let st = Structure::new(&t);
    let depart = t.operators().iter().find(|o| o.schema() == "depart").unwrap().name.clone();
    let (_, boarded_off) = find(&t, &st, "b1", "1", "0", &depart);
    assert!(!boarded_off.relevant, "b_i=0 is in no goal or precondition");
    let (_, served) = find(&t, &st, "s1", "0", "1", &depart);
    assert!(served.relevant, "transition to a goal value");
    assert!(served.self_irrelevant_seff_deletes, "b_i=1 is only needed by its own depart");

    let g = generate(&DomainParams::Gripper { balls: 1 }).unwrap();
    let gs = Structure::new(&g);
    let (_, drop) = find(&g, &gs, "b1", "1", "R", "drop 1 b1 R");
    assert!(drop.relevant);
}

#[test]
fn logistics_load_is_invertible_without_side_effects() {
    let t = logistics();
    let st = Structure::new(&t);
    let (tr, c) = find(&t, &st, "p1", "c1l1", "t1", "load t1 c1l1 p1");
    assert!(tr.seff.is_empty());
    assert!(c.invertible);
    let inv = st.transition(c.inverse_witnesses[0]);
    assert_eq!((inv.from, inv.to), (tr.to, tr.from));
    assert!(inv.cond.iter().all(|f| tr.cond.contains(f)));
}

#[test]
fn movie_rewind_has_recoverable_side_effect_deletes() {
    let t = generate(&DomainParams::Movie { snacks: 2, c2: false, seed: 0 }).unwrap();
    let st = Structure::new(&t);
    let (_, c) = find(&t, &st, "re", "0", "1", "rewindOther");
    assert!(c.recoverable_seff_deletes);
    assert!(!c.irrelevant_seff_deletes, "c0=1 is a goal fact");
    assert_eq!(c.recovering_ops, vec![t.op_id("resetCounter").unwrap()]);
}

#[test]
fn simple_tsp_visit_has_replaceable_side_effect_deletes() {
    let t = generate(&DomainParams::SimpleTsp { locations: 4, seed: 0 }).unwrap();
    let st = Structure::new(&t);
    let (_, c) = find(&t, &st, "v_l2", "0", "1", "move l1 l2");
    assert!(c.replaceable_seff_deletes);
    assert!(!c.irrelevant_seff_deletes, "p=l1 is needed by the other moves out of l1");
}

#[test]
fn support_graph_shapes() {
    let t = logistics();
    let st = Structure::new(&t);
    let truck = t.var_id("t1").unwrap();
    for v in 0..t.num_vars() {
        let succ = st.sg_successors(v);
        if v == truck {
            assert_eq!(succ.iter().copied().collect::<Vec<_>>(), vec![t.var_id("p1").unwrap(), t.var_id("p2").unwrap()]);
        } else {
            assert!(succ.is_empty(), "packages support nothing");
        }
    }
    assert!(!st.support_graph_is_cyclic());

    let e2 = generate_example(2, 5, 0).unwrap();
    let s2 = Structure::new(&e2);
    let (x, y) = (e2.var_id("x").unwrap(), e2.var_id("y").unwrap());
    assert!(s2.sg_successors(x).contains(&y) && s2.sg_successors(y).contains(&x));
    assert!(s2.support_graph_is_cyclic());

    let mut b = hplus_topo::task::TaskBuilder::new();
    b.var("x", ["a", "b"]).var("y", ["a", "b"]).init("x", "a").init("y", "a");
    b.op("fx", &[], &[("x", "b")]).op("fy", &[], &[("y", "b")]);
    let free = b.build().unwrap();
    assert_eq!(Structure::new(&free).support_graph().edge_count(), 0);
}

fn line(n: usize) -> DiGraph<(), ()> {
    let mut g = DiGraph::new();
    let v: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for w in v.windows(2) {
        g.add_edge(w[0], w[1], ());
        g.add_edge(w[1], w[0], ());
    }
    g
}

#[test]
fn diameters() {
    assert_eq!(diameter(&line(5)), 4);
    assert_eq!(diameter(&line(1)), 0);
    let mut complete = DiGraph::<(), ()>::new();
    let v: Vec<_> = (0..4).map(|_| complete.add_node(())).collect();
    for &a in &v {
        for &b in &v {
            if a != b {
                complete.add_edge(a, b, ());
            }
        }
    }
    assert_eq!(diameter(&complete), 1);
    assert_eq!(max_path_bound(&complete), 3);
    assert_eq!(max_path_bound(&line(2)), 1);

    let t = logistics();
    let st = Structure::new(&t);
    let truck = t.var_id("t1").unwrap();
    assert_eq!(st.dtg_diameter(truck), 1, "trucks move between any two locations of a city");
    assert_eq!(max_path_bound(&st.dtg_graph(&t, truck, |_| true)), 2, "N - 1 for N = 3 locations");
}
