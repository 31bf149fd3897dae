//! Aggregates failure diagnoses over every reachable state: which action
//! schema harms which variable.
//!
//! ```text
//! cargo run --example diagnosis
//! ```

use hplus_topo::benchgen::{generate, DomainParams, RoadMap};
use hplus_topo::oracle::enumerate;
use hplus_topo::relax::PlanSource;
use hplus_topo::report::aggregate_diagnosis;
use hplus_topo::topo::Analyzer;

fn main() {
    let task = generate(&DomainParams::Transport {
        locations: 4,
        vehicles: 1,
        packages: 2,
        capacity: 1,
        roads: RoadMap::Line,
        vehicle_goals: true,
        seed: 0,
    })
    .expect("valid parameters");
    let analyzer = Analyzer::new(&task);
    let states = enumerate(&task, 100_000).expect("enumerable").states;
    let verdicts: Vec<_> = states.iter().map(|s| analyzer.analyze_state_guaranteed(s)).collect();
    let d = aggregate_diagnosis(&verdicts);
    println!("{} states; guaranteed analysis diagnosis:", states.len());
    for e in d.predicates.iter().take(5) {
        println!("  {:>5}  {} harms {}", e.count, e.schema, e.var);
    }
    let verdicts: Vec<_> = states.iter().map(|s| analyzer.analyze_state_approx(s, PlanSource::Exact)).collect();
    println!("approximate analysis diagnosis:");
    for e in aggregate_diagnosis(&verdicts).predicates.iter().take(5) {
        println!("  {:>5}  {} harms {}", e.count, e.schema, e.var);
    }
}
