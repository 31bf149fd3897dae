//! Guaranteed and approximate local analysis on sampled states, reported
//! as success rates.
//!
//! ```text
//! cargo run --example local_analysis
//! ```

use hplus_topo::benchgen::{generate, DomainParams, RoadMap};
use hplus_topo::probe::{rate_report, sample_states, Method};
use hplus_topo::relax::PlanSource;
use hplus_topo::topo::Analyzer;

fn main() {
    let domains = [
        ("gripper", DomainParams::Gripper { balls: 6 }),
        ("ferry", DomainParams::Ferry { locations: 4, cars: 4, ferry_goal: false, seed: 0 }),
        (
            "transport",
            DomainParams::Transport {
                locations: 6,
                vehicles: 2,
                packages: 3,
                capacity: 2,
                roads: RoadMap::Cycle,
                vehicle_goals: false,
                seed: 0,
            },
        ),
    ];
    let methods = [Method::Guaranteed, Method::Approx(PlanSource::Ff), Method::Approx(PlanSource::Exact)];
    for (name, params) in domains {
        let task = generate(&params).expect("valid parameters");
        let analyzer = Analyzer::new(&task);
        let samples = sample_states(&task, 50, 0).expect("solvable initial state");
        for m in methods {
            let r = rate_report(&analyzer, &samples, m);
            let rate = r.success_rate.map_or("n/a".to_string(), |x| format!("{:.1}%", 100.0 * x));
            let bounds = r.bounds.map_or(String::new(), |b| format!(" bounds {}..{}", b.min, b.max));
            println!("{name:<10} {:<16} {rate:>7}{bounds}", r.method);
        }
    }
}
