//! Generates one small instance of every benchmark domain and worked
//! example, printing its size; with a directory argument, also writes the
//! task files there.
//!
//! ```text
//! cargo run --example generate_benchmarks [-- OUT_DIR]
//! ```

use std::path::PathBuf;

use hplus_topo::benchgen::{generate, DomainParams, DOMAIN_NAMES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args_os().nth(1).map(PathBuf::from);
    if let Some(dir) = &out {
        std::fs::create_dir_all(dir)?;
    }
    println!("{:<12} {:>5} {:>5} {:>6} {:>5}", "domain", "vars", "ops", "facts", "goal");
    for name in DOMAIN_NAMES {
        let task = generate(&DomainParams::parse(name, &[])?)?;
        println!(
            "{:<12} {:>5} {:>5} {:>6} {:>5}",
            name,
            task.num_vars(),
            task.num_ops(),
            task.num_facts(),
            task.goal().len()
        );
        if let Some(dir) = &out {
            std::fs::write(dir.join(format!("{name}.json")), task.to_json())?;
        }
    }
    Ok(())
}
