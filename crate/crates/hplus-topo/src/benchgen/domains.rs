//! Benchmark domain generators.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{built, require, RoadMap};
use crate::error::GenError;
use crate::task::{Task, TaskBuilder};

type Facts = Vec<(String, String)>;

fn f(var: impl Into<String>, val: impl Into<String>) -> (String, String) {
    (var.into(), val.into())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pick<'a>(rng: &mut ChaCha8Rng, xs: &'a [String]) -> &'a String {
    xs.choose(rng).expect("nonempty choice set")
}

pub(super) fn logistics(
    cities: usize,
    locations: usize,
    airplanes: usize,
    packages: usize,
    seed: u64,
) -> Result<Task, GenError> {
    require(cities >= 1, || "logistics needs cities >= 1".into())?;
    require(locations >= 2, || "logistics needs locations >= 2 per city".into())?;
    require(packages >= 1, || "logistics needs packages >= 1".into())?;
    require(cities == 1 || airplanes >= 1, || "logistics with several cities needs airplanes >= 1".into())?;
    require(airplanes == 0 || cities >= 2, || "airplanes need at least two cities (airports)".into())?;
    let mut rng = rng(seed);
    let loc = |c: usize, l: usize| format!("c{c}l{l}");
    let all_locs: Vec<String> = (1..=cities).flat_map(|c| (1..=locations).map(move |l| loc(c, l))).collect();
    // (name, reachable locations)
    let mut vehicles: Vec<(String, Vec<String>)> = (1..=cities)
        .map(|c| (format!("t{c}"), (1..=locations).map(|l| loc(c, l)).collect()))
        .collect();
    let airports: Vec<String> = (1..=cities).map(|c| loc(c, 1)).collect();
    vehicles.extend((1..=airplanes).map(|a| (format!("a{a}"), airports.clone())));

    let mut b = TaskBuilder::new();
    let pkg_domain: Vec<String> = all_locs.iter().cloned().chain(vehicles.iter().map(|v| v.0.clone())).collect();
    for p in 1..=packages {
        b.var(format!("p{p}"), pkg_domain.clone());
    }
    for (v, ls) in &vehicles {
        b.var(v.clone(), ls.clone());
    }
    for p in 1..=packages {
        let (init, goal) = (pick(&mut rng, &all_locs).clone(), pick(&mut rng, &all_locs).clone());
        b.init(format!("p{p}"), init).goal(format!("p{p}"), goal);
    }
    for (v, ls) in &vehicles {
        b.init(v.clone(), pick(&mut rng, ls).clone());
    }
    for (v, ls) in &vehicles {
        for l1 in ls {
            for l2 in ls.iter().filter(|l2| *l2 != l1) {
                b.op_with(format!("move {v} {l1} {l2}"), [f(v, l1)], [f(v, l2)]);
            }
        }
        for l in ls {
            for p in 1..=packages {
                let pv = format!("p{p}");
                b.op_with(format!("load {v} {l} {pv}"), [f(v, l), f(&pv, l)], [f(&pv, v)]);
                b.op_with(format!("unload {v} {l} {pv}"), [f(v, l), f(&pv, v)], [f(&pv, l)]);
            }
        }
    }
    built(&b)
}

pub(super) fn miconic(floors: usize, passengers: usize, seed: u64) -> Result<Task, GenError> {
    require(floors >= 2, || "miconic needs floors >= 2".into())?;
    require(passengers >= 1, || "miconic needs passengers >= 1".into())?;
    let mut rng = rng(seed);
    let fl: Vec<String> = (1..=floors).map(|i| format!("f{i}")).collect();
    let mut b = TaskBuilder::new();
    b.var("e", fl.clone()).init("e", pick(&mut rng, &fl).clone());
    for i in 1..=passengers {
        b.var(format!("b{i}"), ["0", "1"]).init(format!("b{i}"), "0");
        b.var(format!("s{i}"), ["0", "1"])
            .init(format!("s{i}"), "0")
            .goal(format!("s{i}"), "1");
    }
    for l1 in &fl {
        for l2 in fl.iter().filter(|l2| *l2 != l1) {
            b.op_with(format!("move {l1} {l2}"), [f("e", l1)], [f("e", l2)]);
        }
    }
    for i in 1..=passengers {
        let origin = rng.random_range(0..floors);
        let dest = (origin + rng.random_range(1..floors)) % floors;
        let (o, d) = (&fl[origin], &fl[dest]);
        let (bi, si) = (format!("b{i}"), format!("s{i}"));
        b.op_with(format!("board {o} p{i}"), [f("e", o)], [f(&bi, "1")]);
        b.op_with(
            format!("depart {d} p{i}"),
            [f("e", d), f(&bi, "1")],
            [f(&bi, "0"), f(&si, "1")],
        );
    }
    built(&b)
}

pub(super) fn simple_tsp(locations: usize, seed: u64) -> Result<Task, GenError> {
    require(locations >= 2, || "simple_tsp needs locations >= 2".into())?;
    let mut rng = rng(seed);
    let ls: Vec<String> = (1..=locations).map(|i| format!("l{i}")).collect();
    let mut b = TaskBuilder::new();
    b.var("p", ls.clone()).init("p", pick(&mut rng, &ls).clone());
    for l in &ls {
        b.var(format!("v_{l}"), ["0", "1"])
            .init(format!("v_{l}"), "0")
            .goal(format!("v_{l}"), "1");
    }
    for l1 in &ls {
        for l2 in ls.iter().filter(|l2| *l2 != l1) {
            b.op_with(format!("move {l1} {l2}"), [f("p", l1)], [f("p", l2), f(format!("v_{l2}"), "1")]);
        }
    }
    built(&b)
}

pub(super) fn movie(snacks: usize, c2: bool, seed: u64) -> Result<Task, GenError> {
    require(snacks >= 1, || "movie needs snacks >= 1".into())?;
    let mut rng = rng(seed);
    let mut coin = || if rng.random_bool(0.5) { "1" } else { "0" };
    let mut b = TaskBuilder::new();
    b.var("c0", ["1", "0"]).init("c0", coin()).goal("c0", "1");
    b.var("c2", ["1", "0"]).init("c2", if c2 { "1" } else { "0" });
    b.var("re", ["1", "0"]).init("re", coin()).goal("re", "1");
    for i in 1..=snacks {
        b.var(format!("h{i}"), ["1", "0"])
            .init(format!("h{i}"), coin())
            .goal(format!("h{i}"), "1");
    }
    if c2 {
        b.op_with("rewindTwo", [f("c2", "1")], [f("re", "1")]);
    } else {
        b.op_with("rewindOther", [f("c2", "0")], [f("re", "1"), f("c0", "0")]);
    }
    b.op_with("resetCounter", Facts::new(), [f("c0", "1")]);
    for i in 1..=snacks {
        b.op_with(format!("getSnack {i}"), Facts::new(), [f(format!("h{i}"), "1")]);
    }
    built(&b)
}

pub(super) fn ferry(locations: usize, cars: usize, ferry_goal: bool, seed: u64) -> Result<Task, GenError> {
    require(locations >= 2, || "ferry needs locations >= 2".into())?;
    require(cars >= 1, || "ferry needs cars >= 1".into())?;
    let mut rng = rng(seed);
    let ls: Vec<String> = (1..=locations).map(|i| format!("l{i}")).collect();
    let car_domain: Vec<String> = ls.iter().cloned().chain(["ferry".to_string()]).collect();
    let mut b = TaskBuilder::new();
    b.var("f", ls.clone()).init("f", pick(&mut rng, &ls).clone());
    b.var("e", ["1", "0"]).init("e", "1");
    for c in 1..=cars {
        b.var(format!("c{c}"), car_domain.clone());
    }
    for c in 1..=cars {
        let (init, goal) = (pick(&mut rng, &ls).clone(), pick(&mut rng, &ls).clone());
        b.init(format!("c{c}"), init).goal(format!("c{c}"), goal);
    }
    if ferry_goal {
        b.goal("f", pick(&mut rng, &ls).clone());
    }
    for l1 in &ls {
        for l2 in ls.iter().filter(|l2| *l2 != l1) {
            b.op_with(format!("sail {l1} {l2}"), [f("f", l1)], [f("f", l2)]);
        }
    }
    for l in &ls {
        for c in 1..=cars {
            let cv = format!("c{c}");
            b.op_with(
                format!("board {l} {cv}"),
                [f("f", l), f(&cv, l), f("e", "1")],
                [f(&cv, "ferry"), f("e", "0")],
            );
            b.op_with(
                format!("debark {l} {cv}"),
                [f("f", l), f(&cv, "ferry")],
                [f(&cv, l), f("e", "1")],
            );
        }
    }
    built(&b)
}

pub(super) fn gripper(balls: usize) -> Result<Task, GenError> {
    require(balls >= 1, || "gripper needs balls >= 1".into())?;
    let mut b = TaskBuilder::new();
    b.var("ro", ["L", "R"]).init("ro", "L");
    for g in ["f1", "f2"] {
        b.var(g, ["1", "0"]).init(g, "1");
    }
    for i in 1..=balls {
        b.var(format!("b{i}"), ["L", "R", "1", "2"])
            .init(format!("b{i}"), "L")
            .goal(format!("b{i}"), "R");
    }
    b.op_with("move L R", [f("ro", "L")], [f("ro", "R")]);
    b.op_with("move R L", [f("ro", "R")], [f("ro", "L")]);
    for i in 1..=balls {
        let bv = format!("b{i}");
        for g in ["1", "2"] {
            let fg = format!("f{g}");
            for l in ["L", "R"] {
                b.op_with(
                    format!("pickup {g} {bv} {l}"),
                    [f("ro", l), f(&bv, l), f(&fg, "1")],
                    [f(&bv, g), f(&fg, "0")],
                );
            }
        }
    }
    for i in 1..=balls {
        let bv = format!("b{i}");
        for g in ["1", "2"] {
            let fg = format!("f{g}");
            for l in ["L", "R"] {
                b.op_with(
                    format!("drop {g} {bv} {l}"),
                    [f("ro", l), f(&bv, g)],
                    [f(&bv, l), f(&fg, "1")],
                );
            }
        }
    }
    built(&b)
}

/// Undirected road edges `(i, j)`, `i < j`, over locations `0..n`.
pub(super) fn road_edges(n: usize, roads: RoadMap) -> Vec<(usize, usize)> {
    match roads {
        RoadMap::Line => (0..n - 1).map(|i| (i, i + 1)).collect(),
        RoadMap::Cycle if n <= 2 => (0..n - 1).map(|i| (i, i + 1)).collect(),
        RoadMap::Cycle => (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect(),
        RoadMap::Complete => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
    }
}

#[allow(clippy::too_many_arguments)]
pub(super) fn transport(
    locations: usize,
    vehicles: usize,
    packages: usize,
    capacity: usize,
    roads: RoadMap,
    vehicle_goals: bool,
    seed: u64,
) -> Result<Task, GenError> {
    require(locations >= 2, || "transport needs locations >= 2".into())?;
    require(vehicles >= 1, || "transport needs vehicles >= 1".into())?;
    require(packages >= 1, || "transport needs packages >= 1".into())?;
    require(capacity >= 1, || "transport needs capacity >= 1".into())?;
    let mut rng = rng(seed);
    let ls: Vec<String> = (1..=locations).map(|i| format!("l{i}")).collect();
    let vs: Vec<String> = (1..=vehicles).map(|i| format!("v{i}")).collect();
    let caps: Vec<String> = (0..=capacity).map(|c| c.to_string()).collect();
    let pkg_domain: Vec<String> = ls.iter().chain(&vs).cloned().collect();
    let mut b = TaskBuilder::new();
    for p in 1..=packages {
        b.var(format!("p{p}"), pkg_domain.clone());
    }
    for v in &vs {
        b.var(v.clone(), ls.clone());
    }
    for v in &vs {
        b.var(format!("c_{v}"), caps.clone()).init(format!("c_{v}"), capacity.to_string());
    }
    for p in 1..=packages {
        let (init, goal) = (pick(&mut rng, &ls).clone(), pick(&mut rng, &ls).clone());
        b.init(format!("p{p}"), init).goal(format!("p{p}"), goal);
    }
    for v in &vs {
        b.init(v.clone(), pick(&mut rng, &ls).clone());
    }
    if vehicle_goals {
        for v in &vs {
            b.goal(v.clone(), pick(&mut rng, &ls).clone());
        }
    }
    let edges = road_edges(locations, roads);
    for v in &vs {
        for &(i, j) in &edges {
            for (a, z) in [(i, j), (j, i)] {
                b.op_with(format!("drive {v} {} {}", ls[a], ls[z]), [f(v, &ls[a])], [f(v, &ls[z])]);
            }
        }
    }
    for v in &vs {
        let cv = format!("c_{v}");
        for l in &ls {
            for p in 1..=packages {
                let pv = format!("p{p}");
                for c in 1..=capacity {
                    b.op_with(
                        format!("pickup {v} {l} {pv} {c}"),
                        [f(v, l), f(&pv, l), f(&cv, c.to_string())],
                        [f(&pv, v), f(&cv, (c - 1).to_string())],
                    );
                }
                for c in 0..capacity {
                    b.op_with(
                        format!("drop {v} {l} {pv} {c}"),
                        [f(v, l), f(&pv, v), f(&cv, c.to_string())],
                        [f(&pv, l), f(&cv, (c + 1).to_string())],
                    );
                }
            }
        }
    }
    built(&b)
}
