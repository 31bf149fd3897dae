//! Dependency graphs, their success conditions, exit-distance bounds, and
//! the three topology analyses:
//!
//! * global ([`Analyzer::analyze_global`]): "yes, d" only if no state has
//!   a local minimum and every exit distance is at most `d`;
//! * guaranteed local ([`Analyzer::analyze_state_guaranteed`]): "yes, d"
//!   only if the given state is not a local minimum and its exit distance
//!   is at most `d`;
//! * approximate local ([`Analyzer::analyze_state_approx`]): the same
//!   claim derived from a relaxed plan; sound when the plan is optimal.

mod analysis;
mod cost;
mod dg;
mod graph;
mod odg;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::structure::Structure;
use crate::task::Task;

pub use analysis::{GlobalVerdict, GraphOutcome};
pub use graph::{DepGraph, DepGraphKind, OdtgPlus};
pub use odg::PivotSets;

/// Which success condition made a dependency graph successful.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    /// Relevant deletes of the pivot are recovered by the plan suffix.
    #[serde(rename = "2a")]
    Recovered2a,
    /// Start value irrelevant; pivot has replaceable side-effect deletes.
    #[serde(rename = "2b")]
    Replaceable2b,
    /// Start value irrelevant; pivot has recoverable side-effect deletes.
    #[serde(rename = "2c")]
    Recoverable2c,
    /// Pivot has self-irrelevant side-effect deletes.
    #[serde(rename = "3a")]
    SelfIrrelevant3a,
    /// Pivot has replaceable side-effect deletes.
    #[serde(rename = "3b")]
    Replaceable3b,
    /// Pivot has recoverable side-effect deletes.
    #[serde(rename = "3c")]
    Recoverable3c,
}

impl Branch {
    /// Whether the exit-distance bound is the graph cost minus one.
    pub fn subtracts_one(self) -> bool {
        !matches!(self, Branch::Recoverable2c | Branch::Recoverable3c)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Branch::Recovered2a => "2a",
            Branch::Replaceable2b => "2b",
            Branch::Recoverable2c => "2c",
            Branch::SelfIrrelevant3a => "3a",
            Branch::Replaceable3b => "3b",
            Branch::Recoverable3c => "3c",
        };
        f.write_str(s)
    }
}

/// Why an analysis or a dependency graph did not succeed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Failure {
    /// No relaxed plan exists for the state.
    DeadEnd,
    /// The relaxed-plan engine ran out of budget.
    BudgetExceeded,
    /// No pivot candidate qualified.
    NoCandidate,
    /// The dependency graph has a cycle through the listed variables.
    Cycle { op: String, vars: Vec<String> },
    /// Relevant deletes of the pivot are not covered by any branch.
    PivotDeletes { op: String, facts: Vec<String> },
    /// A transition of a non-leaf variable violates the side-effect
    /// conditions.
    Transition { op: String, var: String, transition: String },
    /// The leaf variable already has its goal value.
    LeafAtGoal { var: String },
    /// A transitive support-graph successor of the leaf is an unachieved
    /// goal.
    UnachievedGoalSuccessor { var: String, successor: String },
    /// A goal variable offers no relevant transition out of its value.
    NoRelevantTransition { var: String },
}

/// A diagnosis pair: action schema of the pivot and the variable it harms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagnosisPair {
    pub schema: String,
    pub var: String,
}

/// Result of checking one dependency graph or analysing one state.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    /// False when the analysis does not apply (goal states).
    pub applicable: bool,
    pub success: bool,
    pub branch: Option<Branch>,
    /// Exit-distance bound, present on success.
    pub bound: Option<u64>,
    pub failures: Vec<Failure>,
    pub diagnosis: Vec<DiagnosisPair>,
}

impl Verdict {
    pub(crate) fn not_applicable() -> Verdict {
        Verdict {
            applicable: false,
            ..Verdict::default()
        }
    }

    pub(crate) fn failed(failures: Vec<Failure>, diagnosis: Vec<DiagnosisPair>) -> Verdict {
        Verdict {
            applicable: true,
            success: false,
            branch: None,
            bound: None,
            failures,
            diagnosis,
        }
    }

    pub(crate) fn succeeded(branch: Branch, bound: u64) -> Verdict {
        Verdict {
            applicable: true,
            success: true,
            branch: Some(branch),
            bound: Some(bound),
            failures: Vec::new(),
            diagnosis: Vec::new(),
        }
    }
}

/// Runs the analyses on one task. Holds the task's static structure so it
/// is computed once.
pub struct Analyzer<'t> {
    pub task: &'t Task,
    pub structure: Structure,
    /// Node-expansion budget for exact relaxed-plan engines.
    pub budget: u64,
}

impl<'t> Analyzer<'t> {
    pub fn new(task: &'t Task) -> Analyzer<'t> {
        Analyzer {
            task,
            structure: Structure::new(task),
            budget: crate::relax::DEFAULT_BUDGET,
        }
    }

    /// Sets the exact-engine budget.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}
