//! Checks every analysis claim against brute-force ground truth.
//!
//! ```text
//! cargo run --example verify_oracle
//! ```

use hplus_topo::benchgen::{generate, generate_example, DomainParams};
use hplus_topo::oracle::verify_analyzers;

fn main() {
    let tasks = [
        ("logistics", generate(&DomainParams::Logistics { cities: 1, locations: 3, airplanes: 0, packages: 2, seed: 0 })),
        ("gripper", generate(&DomainParams::Gripper { balls: 3 })),
        ("example 2", generate_example(2, 6, 0)),
        ("example 8", generate_example(8, 3, 0)),
    ];
    for (name, task) in tasks {
        let task = task.expect("valid parameters");
        let r = verify_analyzers(&task, 100_000).expect("enumerable");
        println!(
            "{name:<10} states {:>5}  local minima {:>3}  max ed {:?}  violations {}  missed: guaranteed {} approx {}  ff false positives {}",
            r.states,
            r.local_minima,
            r.max_exit_distance,
            r.violations.len(),
            r.guaranteed_false_negatives,
            r.approx_exact_false_negatives,
            r.approx_ff_false_positives.len()
        );
    }
}
