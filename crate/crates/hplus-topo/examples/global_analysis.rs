//! Guaranteed global analysis on the domains where it always succeeds,
//! and on a worked example where it must fail.
//!
//! ```text
//! cargo run --example global_analysis
//! ```

use hplus_topo::benchgen::{generate, DomainParams};
use hplus_topo::topo::Analyzer;

fn main() {
    let cases = [
        ("logistics", DomainParams::Logistics { cities: 3, locations: 3, airplanes: 2, packages: 6, seed: 1 }),
        ("miconic", DomainParams::Miconic { floors: 6, passengers: 5, seed: 2 }),
        ("movie (c2=1)", DomainParams::Movie { snacks: 5, c2: true, seed: 3 }),
        ("movie (c2=0)", DomainParams::Movie { snacks: 5, c2: false, seed: 3 }),
        ("simple-tsp", DomainParams::SimpleTsp { locations: 6, seed: 4 }),
        ("example 2", DomainParams::Example { number: 2, n: 5, k: 0 }),
    ];
    for (name, params) in cases {
        let task = generate(&params).expect("valid parameters");
        let g = Analyzer::new(&task).analyze_global();
        match g.verdict.bound {
            Some(b) if g.verdict.success => println!(
                "{name:<14} yes, exit distance <= {b} ({} dependency graphs)",
                g.total_graphs
            ),
            _ => println!(
                "{name:<14} no ({}/{} dependency graphs successful): {:?}",
                g.successful_graphs,
                g.total_graphs,
                g.verdict.failures.first()
            ),
        }
    }
}
