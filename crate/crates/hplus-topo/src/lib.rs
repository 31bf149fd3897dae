//! Static analysis of `h⁺` local-search topology for finite-domain planning
//! tasks.
//!
//! The crate predicts whether the optimal delete-relaxation heuristic `h⁺`
//! has local minima on a task, and bounds exit distances, using causal-graph
//! criteria:
//!
//! * [`task`]: the finite-domain task model, execution semantics and the
//!   JSON task format.
//! * [`benchgen`]: generators for benchmark domains and worked examples.
//! * [`structure`]: domain transition graphs, the support graph and
//!   transition classification.
//! * [`relax`]: relaxed-plan engines (FF extraction, exact `h⁺`,
//!   parallel-optimal plans).
//! * [`topo`]: dependency graphs, success tests, cost bounds and the global,
//!   guaranteed-local and approximate-local analyses.
//! * [`probe`]: random-walk sampling, success rates and search probing.
//! * [`oracle`]: brute-force state-space ground truth and soundness
//!   verification.
//! * [`report`]: diagnosis aggregation and report emission.
//! * [`cli`]: the command-line front end.

pub mod benchgen;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod probe;
pub mod relax;
pub mod report;
pub mod structure;
pub mod task;
pub mod topo;

pub use error::{BudgetExceeded, GenError, GraphError, OracleError, TaskError};
pub use task::{parse_task, Fact, OpId, Operator, PartialState, State, Task, TaskBuilder, Value, VarId};
