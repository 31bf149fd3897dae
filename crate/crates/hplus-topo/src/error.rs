//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised while parsing or validating a task, or while executing
/// operators on states.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaskError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("duplicate value `{value}` in domain of `{var}`")]
    DuplicateValue { var: String, value: String },
    #[error("variable `{var}` has domain size {size} (at least 2 values required)")]
    DomainTooSmall { var: String, size: usize },
    #[error("{context}: unknown variable `{name}`")]
    UnknownVariable { context: String, name: String },
    #[error("{context}: unknown value `{value}` for variable `{var}`")]
    UnknownValue {
        context: String,
        var: String,
        value: String,
    },
    #[error("initial state does not assign variable `{0}`")]
    MissingInit(String),
    #[error("operator `{0}` has an empty effect")]
    EmptyEffect(String),
    #[error("operator `{op}` has pre(x)=eff(x) on variable `{var}`")]
    PreEqualsEff { op: String, var: String },
    #[error("operator `{0}` is not applicable")]
    Inapplicable(String),
    #[error("invalid task: {0}")]
    Invalid(String),
}

/// Invalid generator parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("unknown domain `{0}`")]
    UnknownDomain(String),
}

/// A search exceeded its node-expansion budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget of {budget} expansions exceeded")]
pub struct BudgetExceeded {
    pub budget: u64,
}

/// Errors raised by dependency-graph construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("pivot transition is not relevant")]
    PivotNotRelevant,
    #[error("pivot operator does not change x0 from its current value")]
    PivotNotMoving,
    #[error("variable x0 is not a goal variable")]
    NotGoalVariable,
    #[error("dependency graph is cyclic")]
    Cyclic,
}

/// Errors raised by the brute-force oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("state space exceeds the cap of {cap} states")]
    CapExceeded { cap: usize },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}
