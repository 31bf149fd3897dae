//! Search probing: breadth-first search over the h^FF plateau of sampled
//! states, with and without an expansion budget.
//!
//! ```text
//! cargo run --example search_probe
//! ```

use hplus_topo::benchgen::{generate, generate_example, DomainParams};
use hplus_topo::probe::{sample_states, search_probe, ProbeLimit};

fn main() {
    let tasks = [
        ("ferry", generate(&DomainParams::Ferry { locations: 4, cars: 3, ferry_goal: true, seed: 2 })),
        ("example 3", generate_example(3, 6, 0)),
    ];
    for (name, task) in tasks {
        let task = task.expect("valid parameters");
        let samples = sample_states(&task, 30, 2).expect("solvable initial state");
        let (mut full, mut limited, mut expansions) = (0, 0, 0);
        for s in &samples.states {
            let r = search_probe(&task, s, ProbeLimit::Unlimited, true);
            full += usize::from(r.found);
            expansions += r.expansions;
            limited += usize::from(search_probe(&task, s, ProbeLimit::Expansions(2), true).found);
        }
        println!(
            "{name:<10} exits found: unlimited {full}/{n}, 2 expansions {limited}/{n}; {expansions} expansions in total",
            n = samples.states.len()
        );
    }
}
