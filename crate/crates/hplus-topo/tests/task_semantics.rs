//! Parsing, validation and (relaxed) execution semantics.

use hplus_topo::benchgen::{generate, generate_example, DomainParams};
use hplus_topo::relax::{is_relaxed_plan, RelaxedTask};
use hplus_topo::{parse_task, Task, TaskError};

fn gripper(balls: usize) -> Task {
    generate(&DomainParams::Gripper { balls }).unwrap()
}

fn movie(c2: bool) -> Task {
    generate(&DomainParams::Movie { snacks: 2, c2, seed: 0 }).unwrap()
}

const MINIMAL: &str = r#"{
  "variables": [{"name": "x", "domain": ["a", "b"]}],
  "init": {"x": "a"},
  "goal": {"x": "b"},
  "operators": [{"name": "flip", "pre": {"x": "a"}, "eff": {"x": "b"}}]
}"#;

#[test]
fn minimal_file_parses() {
    let t = parse_task(MINIMAL).unwrap();
    assert_eq!(t.num_vars(), 1);
    assert_eq!(t.num_ops(), 1);
    assert_eq!(t.op(0).schema(), "flip");
}

#[test]
fn generated_task_round_trips_through_json() {
    let t = gripper(2);
    assert_eq!(parse_task(&t.to_json()).unwrap(), t);
}

#[test]
fn pre_equal_to_eff_is_rejected() {
    let text = MINIMAL.replace(r#""eff": {"x": "b"}"#, r#""eff": {"x": "a"}"#);
    assert!(matches!(parse_task(&text), Err(TaskError::PreEqualsEff { .. })));
}

#[test]
fn domain_of_size_one_is_rejected() {
    let text = MINIMAL.replace(r#"["a", "b"]"#, r#"["a"]"#);
    assert!(matches!(parse_task(&text), Err(TaskError::DomainTooSmall { size: 1, .. })));
}

#[test]
fn unknown_names_and_syntax_errors_are_reported() {
    let unknown_value = MINIMAL.replace(r#""goal": {"x": "b"}"#, r#""goal": {"x": "z"}"#);
    assert!(matches!(parse_task(&unknown_value), Err(TaskError::UnknownValue { .. })));
    let unknown_var = MINIMAL.replace(r#""goal": {"x": "b"}"#, r#""goal": {"q": "b"}"#);
    assert!(matches!(parse_task(&unknown_var), Err(TaskError::UnknownVariable { .. })));
    let missing_init = MINIMAL.replace(r#""init": {"x": "a"}"#, r#""init": {}"#);
    assert!(matches!(parse_task(&missing_init), Err(TaskError::MissingInit(_))));
    let empty_eff = MINIMAL.replace(r#""eff": {"x": "b"}"#, r#""eff": {}"#);
    assert!(matches!(parse_task(&empty_eff), Err(TaskError::EmptyEffect(_))));
    match parse_task("{ \"variables\": [") {
        Err(TaskError::Parse { line, .. }) => assert!(line >= 1),
        other => panic!("expected parse error, got {other:?}"),
    }
}

#[test]
fn empty_precondition_is_always_applicable() {
    let t = movie(true);
    let snack = t.op_id("getSnack 1").unwrap();
    assert!(t.op(snack).pre.is_empty());
    assert!(t.applicable(t.init(), snack));
}

#[test]
fn gripper_pickup_applicability_and_effect() {
    let t = gripper(1);
    let pickup = t.op_id("pickup 1 b1 L").unwrap();
    assert!(t.applicable(t.init(), pickup));
    let s = t.apply(t.init(), pickup).unwrap();
    assert_eq!(s, t.state_from(&[("ro", "L"), ("f1", "0"), ("f2", "1"), ("b1", "1")]));
    assert!(!t.applicable(&s, pickup));
    assert!(t.apply(&s, pickup).is_err());
}

#[test]
fn movie_rewind_other_sets_counter_to_zero() {
    let t = movie(false);
    let o = t.op_id("rewindOther").unwrap();
    let mut s = t.init().clone();
    s = t.apply_unchecked(&s, o);
    assert_eq!(t.value_name(t.var_id("re").unwrap(), s.get(t.var_id("re").unwrap())), "1");
    assert_eq!(t.value_name(t.var_id("c0").unwrap(), s.get(t.var_id("c0").unwrap())), "0");
}

#[test]
fn effect_equal_to_current_values_is_a_fixed_point() {
    let t = movie(true);
    let o = t.op_id("resetCounter").unwrap();
    let s = t.apply_unchecked(t.init(), o);
    assert_eq!(t.apply_unchecked(&s, o), s);
}

#[test]
fn relaxed_execution_only_grows() {
    let t = gripper(2);
    let f = t.state_facts(t.init());
    for o in t.applicable_ops(t.init()) {
        let g = t.relaxed_apply(&f, o).unwrap();
        assert!(g.is_superset(&f));
        assert!(g.count_ones(..) >= f.count_ones(..));
        assert_eq!(t.relaxed_apply(&g, o).unwrap(), g, "relaxed application is idempotent");
    }
}

#[test]
fn example2_only_optimal_relaxed_plan_reaches_goal() {
    let t = generate_example(2, 5, 0).unwrap();
    let plan = [t.op_id("x12").unwrap(), t.op_id("y15").unwrap()];
    assert!(is_relaxed_plan(&t, t.init(), &plan));
    let rt = RelaxedTask::new(&t);
    let mut f = t.state_facts(t.init());
    for o in plan {
        rt.apply(&mut f, o);
    }
    assert!(rt.goal_reached(&f));
}

#[test]
fn goal_test() {
    let t = gripper(1);
    assert!(!t.is_goal(t.init()));
    let names = ["pickup 1 b1 L", "move L R", "drop 1 b1 R"];
    let s = names.iter().fold(t.init().clone(), |s, n| t.apply(&s, t.op_id(n).unwrap()).unwrap());
    assert!(t.is_goal(&s));
    let empty_goal = parse_task(&MINIMAL.replace(r#""goal": {"x": "b"}"#, r#""goal": {}"#)).unwrap();
    assert!(empty_goal.is_goal(empty_goal.init()));
}
