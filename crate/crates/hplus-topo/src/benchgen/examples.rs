//! Small hand-made tasks showing where the analyses' guarantees end:
//! operators not respected by the relaxation (1), local minima caused by a
//! cyclic support graph (2), by a non-invertible transition (3) or by a side
//! effect (4), non-monotone exit paths under the diameter shortcut (5),
//! exponential exit distances (6), exit paths much longer than plans (7),
//! and unsound verdicts from non-optimal relaxed plans (8).
//!
//! Operators are named after the variable they move and the indices of the
//! start and end value, e.g. `x12` moves `x` from `c1` to `c2`. Indices of
//! two digits or more are separated by underscores (`y1_12`).

use super::{built, require};
use crate::error::GenError;
use crate::task::{Task, TaskBuilder};

type Facts = Vec<(String, String)>;

fn f(var: impl Into<String>, val: impl Into<String>) -> (String, String) {
    (var.into(), val.into())
}

/// Operator name for moving `var` from value index `i` to `j`.
fn arc(var: &str, i: impl ToString, j: impl ToString) -> String {
    let (i, j) = (i.to_string(), j.to_string());
    if i.len() == 1 && j.len() == 1 {
        format!("{var}{i}{j}")
    } else {
        format!("{var}{i}_{j}")
    }
}

fn values(prefix: &str, range: impl IntoIterator<Item = usize>) -> Vec<String> {
    range.into_iter().map(|i| format!("{prefix}{i}")).collect()
}

/// Adds the pair of operators moving `var` between `a` and `b` (named by
/// indices `ia`, `ib`), both under `cond`.
fn both_ways(tb: &mut TaskBuilder, var: &str, (ia, a): (String, &str), (ib, b): (String, &str), cond: &[(String, String)]) {
    one_way(tb, var, (ia.clone(), a), (ib.clone(), b), cond);
    one_way(tb, var, (ib, b), (ia, a), cond);
}

fn one_way(tb: &mut TaskBuilder, var: &str, (ia, a): (String, &str), (ib, b): (String, &str), cond: &[(String, String)]) {
    let pre: Facts = std::iter::once(f(var, a)).chain(cond.iter().cloned()).collect();
    tb.op_with(arc(var, ia, ib), pre, [f(var, b)]);
}

/// Line `prefix{lo}..prefix{hi}` of unconditional invertible moves.
fn line(tb: &mut TaskBuilder, var: &str, prefix: &str, lo: usize, hi: usize) {
    for i in lo..hi {
        let (a, b) = (format!("{prefix}{i}"), format!("{prefix}{}", i + 1));
        both_ways(tb, var, (i.to_string(), &a), ((i + 1).to_string(), &b), &[]);
    }
}

/// Generates example `number` (1..=8) with size `n` and, for example 5,
/// the extra length parameter `k`.
pub fn generate_example(number: u8, n: usize, k: usize) -> Result<Task, GenError> {
    match number {
        1 => example1(),
        2 => example2(n),
        3 => example3(n),
        4 => example4(n),
        5 => example5(n, k),
        6 => example6(n, false),
        7 => example6(n, true),
        8 => example8(n),
        _ => Err(GenError::InvalidParam(format!("example number must be 1..=8, got {number}"))),
    }
}

/// `x` moves `c1 → c2` under `d1` and `c2 → c3` under `d3`, or directly
/// `c1 → c3` under `d7`; `y` is an unconditional line `d1..d7` starting at
/// `d3`. The relaxed plan heads for `d1`, the real plan for `d7`.
fn example1() -> Result<Task, GenError> {
    let mut b = TaskBuilder::new();
    b.var("x", values("c", 1..=3)).init("x", "c1").goal("x", "c3");
    b.var("y", values("d", 1..=7)).init("y", "d3");
    both_ways(&mut b, "x", ("1".into(), "c1"), ("2".into(), "c2"), &[f("y", "d1")]);
    both_ways(&mut b, "x", ("2".into(), "c2"), ("3".into(), "c3"), &[f("y", "d3")]);
    both_ways(&mut b, "x", ("1".into(), "c1"), ("3".into(), "c3"), &[f("y", "d7")]);
    line(&mut b, "y", "d", 1, 7);
    built(&b)
}

/// `x ∈ {c1, c2}` moves under `d1`; `y` is a line `d1..dn` plus a shortcut
/// `d1 ↔ dn` under `c1`. Goal `x = c2, y = dn`.
fn example2(n: usize) -> Result<Task, GenError> {
    require(n >= 5, || format!("example2 needs n >= 5, got {n}"))?;
    let dn = format!("d{n}");
    let mut b = TaskBuilder::new();
    b.var("x", values("c", 1..=2)).init("x", "c1").goal("x", "c2");
    b.var("y", values("d", 1..=n)).init("y", "d1").goal("y", dn.as_str());
    both_ways(&mut b, "x", ("1".into(), "c1"), ("2".into(), "c2"), &[f("y", "d1")]);
    line(&mut b, "y", "d", 1, n);
    both_ways(&mut b, "y", ("1".into(), "d1"), (n.to_string(), &dn), &[f("x", "c1")]);
    built(&b)
}

/// `x` moves `c1 ↔ c2` under `d2` and `c2 ↔ c3` under `d1`; `y` is an
/// unconditional circle `d1..dn` whose arc `d1 → d2` has no inverse.
fn example3(n: usize) -> Result<Task, GenError> {
    require(n >= 3, || format!("example3 needs n >= 3, got {n}"))?;
    let mut b = TaskBuilder::new();
    b.var("x", values("c", 1..=3)).init("x", "c1").goal("x", "c3");
    b.var("y", values("d", 1..=n)).init("y", "d1");
    both_ways(&mut b, "x", ("1".into(), "c1"), ("2".into(), "c2"), &[f("y", "d2")]);
    both_ways(&mut b, "x", ("2".into(), "c2"), ("3".into(), "c3"), &[f("y", "d1")]);
    one_way(&mut b, "y", ("1".into(), "d1"), ("2".into(), "d2"), &[]);
    line(&mut b, "y", "d", 2, n);
    let dn = format!("d{n}");
    both_ways(&mut b, "y", (n.to_string(), &dn), ("1".into(), "d1"), &[]);
    built(&b)
}

/// `x` is an unconditional line `c1..cn` with shortcuts `cn ↔ ci` under
/// `d1` for `i < n-1` (the unconditional line arc already links `c(n-1)`
/// and `cn`); `y12` moves `y` from `d1` to `d2` with the side effect
/// `x = cn`. Goal `x = c1, y = d2`.
fn example4(n: usize) -> Result<Task, GenError> {
    require(n >= 3, || format!("example4 needs n >= 3, got {n}"))?;
    let cn = format!("c{n}");
    let mut b = TaskBuilder::new();
    b.var("x", values("c", 1..=n)).init("x", "c1").goal("x", "c1");
    b.var("y", values("d", 1..=2)).init("y", "d1").goal("y", "d2");
    line(&mut b, "x", "c", 1, n);
    for i in 1..n - 1 {
        let ci = format!("c{i}");
        both_ways(&mut b, "x", (n.to_string(), &cn), (i.to_string(), &ci), &[f("y", "d1")]);
    }
    b.op_with("y12", [f("y", "d1")], [f("y", "d2"), f("x", cn.as_str())]);
    b.op_with("y21", [f("y", "d2")], [f("y", "d1")]);
    built(&b)
}

/// `x ∈ {c0, c1}` moves under `y = d_m` (`m = 2k + 2n`); `y` is a line
/// `d0..d_m` whose first `2k` moves alternate between the conditions
/// `z = e_2n` and `z = e0` and whose last `2n` moves are conditioned on
/// `e1..e_2n` in turn; `z` is an unconditional circle `e0..e_2n, e'`.
/// Goal `x = c1, y = d0, z = e0`.
fn example5(n: usize, k: usize) -> Result<Task, GenError> {
    require(n >= 1, || "example5 needs n >= 1".into())?;
    require(k >= 1, || "example5 needs k >= 1".into())?;
    let m = 2 * k + 2 * n;
    let (dm, e2n) = (format!("d{m}"), format!("e{}", 2 * n));
    let mut b = TaskBuilder::new();
    b.var("x", values("c", 0..=1)).init("x", "c0").goal("x", "c1");
    b.var("y", values("d", 0..=m)).init("y", "d0").goal("y", "d0");
    let mut z_domain = values("e", 0..=2 * n);
    z_domain.push("e'".into());
    b.var("z", z_domain).init("z", "e0").goal("z", "e0");
    both_ways(&mut b, "x", ("0".into(), "c0"), ("1".into(), "c1"), &[f("y", dm.as_str())]);
    for i in 1..=m {
        let cond = if i <= 2 * k {
            if i % 2 == 1 {
                e2n.clone()
            } else {
                "e0".to_string()
            }
        } else {
            format!("e{}", i - 2 * k)
        };
        let (a, c) = (format!("d{}", i - 1), format!("d{i}"));
        both_ways(&mut b, "y", ((i - 1).to_string(), &a), (i.to_string(), &c), &[f("z", cond)]);
    }
    line(&mut b, "z", "e", 0, 2 * n);
    both_ways(&mut b, "z", ((2 * n).to_string(), &e2n), ("'".into(), "e'"), &[]);
    both_ways(&mut b, "z", ("'".into(), "e'"), ("0".into(), "e0"), &[]);
    built(&b)
}

/// `x0 ∈ {c1, c2}` moves under `x1 = c5`; every `x_i` (`1 ≤ i ≤ n`) is a
/// line `c1..c5` whose moves alternately require `x_{i+1} = c5` and
/// `x_{i+1} = c1` (`x_n` moves freely). Goal `x0 = c2` and `x_i = c1`.
/// With `detour`, `x0` can also reach `c2` unconditionally along
/// `c1, c'1, .., c'(4n+1), c2`.
fn example6(n: usize, detour: bool) -> Result<Task, GenError> {
    require(n >= 1, || "examples 6 and 7 need n >= 1".into())?;
    let mut b = TaskBuilder::new();
    let mut x0_domain = values("c", 1..=2);
    if detour {
        x0_domain.extend((1..=4 * n + 1).map(|j| format!("c'{j}")));
    }
    b.var("x0", x0_domain).init("x0", "c1").goal("x0", "c2");
    for i in 1..=n {
        let v = format!("x{i}");
        b.var(v.as_str(), values("c", 1..=5)).init(v.as_str(), "c1").goal(v.as_str(), "c1");
    }
    both_ways(&mut b, "x0", ("1".into(), "c1"), ("2".into(), "c2"), &[f("x1", "c5")]);
    if detour {
        let path: Vec<String> = std::iter::once("c1".to_string())
            .chain((1..=4 * n + 1).map(|j| format!("c'{j}")))
            .chain(std::iter::once("c2".to_string()))
            .collect();
        let idx = |v: &str| v.trim_start_matches('c').to_string();
        for w in path.windows(2) {
            both_ways(&mut b, "x0", (idx(&w[0]), &w[0]), (idx(&w[1]), &w[1]), &[]);
        }
    }
    for i in 1..=n {
        let v = format!("x{i}");
        for j in 1..5 {
            let cond: Facts = if i == n {
                Vec::new()
            } else {
                let target = if j % 2 == 1 { "c5" } else { "c1" };
                vec![f(format!("x{}", i + 1), target)]
            };
            let (a, c) = (format!("c{j}"), format!("c{}", j + 1));
            both_ways(&mut b, &v, (j.to_string(), &a), ((j + 1).to_string(), &c), &cond);
        }
    }
    built(&b)
}

/// `x` reaches its goal `c2` either directly under `y = d2`, where `y`
/// moves under `z = e_n` and `z` is a line `e1..e_n` whose last arc has no
/// inverse; or via `c'`, entered under `v_1 = .. = v_{n+2} = 1`. Goals
/// `x = c2, z = e1, v_i = 0`.
fn example8(n: usize) -> Result<Task, GenError> {
    require(n >= 3, || format!("example8 needs n >= 3, got {n}"))?;
    let en = format!("e{n}");
    let mut b = TaskBuilder::new();
    b.var("x", ["c1", "c'", "c2"]).init("x", "c1").goal("x", "c2");
    b.var("y", values("d", 1..=2)).init("y", "d1");
    b.var("z", values("e", 1..=n)).init("z", "e1").goal("z", "e1");
    for i in 1..=n + 2 {
        let v = format!("v{i}");
        b.var(v.as_str(), ["0", "1"]).init(v.as_str(), "0").goal(v.as_str(), "0");
    }
    both_ways(&mut b, "x", ("1".into(), "c1"), ("2".into(), "c2"), &[f("y", "d2")]);
    let all_v: Facts = (1..=n + 2).map(|i| f(format!("v{i}"), "1")).collect();
    both_ways(&mut b, "x", ("1".into(), "c1"), ("'".into(), "c'"), &all_v);
    both_ways(&mut b, "x", ("'".into(), "c'"), ("2".into(), "c2"), &[]);
    both_ways(&mut b, "y", ("1".into(), "d1"), ("2".into(), "d2"), &[f("z", en.as_str())]);
    line(&mut b, "z", "e", 1, n - 1);
    let en1 = format!("e{}", n - 1);
    one_way(&mut b, "z", ((n - 1).to_string(), &en1), (n.to_string(), &en), &[]);
    for i in 1..=n + 2 {
        let v = format!("v{i}");
        both_ways(&mut b, &v, ("0".into(), "0"), ("1".into(), "1"), &[]);
    }
    built(&b)
}
