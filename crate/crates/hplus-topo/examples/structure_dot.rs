//! Prints the domain transition graphs and the support graph of a task as
//! Graphviz DOT.
//!
//! ```text
//! cargo run --example structure_dot [-- TASK_FILE] | dot -Tsvg > structure.svg
//! ```

use hplus_topo::benchgen::generate_example;
use hplus_topo::parse_task;
use hplus_topo::structure::Structure;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let task = match std::env::args().nth(1) {
        Some(path) => parse_task(&std::fs::read_to_string(path)?)?,
        None => generate_example(2, 5, 0)?,
    };
    print!("{}", Structure::new(&task).to_dot(&task));
    Ok(())
}
