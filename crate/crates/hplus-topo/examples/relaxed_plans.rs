//! The relaxed-plan engines on the example where their choice matters:
//! h^FF, an exact optimal plan, and a parallel-optimal plan.
//!
//! ```text
//! cargo run --example relaxed_plans
//! ```

use hplus_topo::benchgen::generate_example;
use hplus_topo::relax::{h_ff, h_plus_exact, parallel_optimal_relaxed_plan};
use hplus_topo::topo::Analyzer;
use hplus_topo::relax::PlanSource;

fn main() {
    let task = generate_example(8, 3, 0).expect("valid parameters");
    let s = task.init();
    let ff = h_ff(&task, s);
    let (h, exact) = h_plus_exact(&task, s, 1_000_000, None).expect("small task");
    let parallel = parallel_optimal_relaxed_plan(&task, s, 1_000_000).expect("small task");
    println!("h^FF = {:?}: {:?}", ff.value, ff.plan.map(|p| p.names(&task)));
    println!("h+   = {:?}: {:?}", h, exact.map(|p| p.names(&task)));
    println!("parallel-optimal: {:?}", parallel.map(|p| p.names(&task)));

    let analyzer = Analyzer::new(&task);
    for source in [PlanSource::Exact, PlanSource::Parallel] {
        let v = analyzer.analyze_state_approx(s, source);
        println!("approximate analysis with {source} plan: success {} bound {:?}", v.success, v.bound);
    }
}
