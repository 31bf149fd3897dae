//! Finite-domain planning tasks: representation, validation, real and
//! relaxed execution semantics, and the JSON task-file format.
//!
//! Variables and values are opaque identifiers in the file format and are
//! mapped to dense indices in declaration order. A *fact* is a
//! `(variable, value)` pair; a [`State`] assigns exactly one value to every
//! variable, while a [`FactSet`] (a relaxed state) may hold several values of
//! the same variable and only ever grows under relaxed application.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::TaskError;

/// Index of a variable in declaration order.
pub type VarId = usize;
/// Index of a value within its variable's domain.
pub type Value = usize;
/// Index of an operator in declaration order.
pub type OpId = usize;
/// A variable/value pair.
pub type Fact = (VarId, Value);
/// A relaxed state: a set of facts, indexed by [`Task::fact_id`].
pub type FactSet = FixedBitSet;

/// A partial assignment, stored sorted by variable with at most one value
/// per variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialState(Vec<Fact>);

impl PartialState {
    /// Builds a partial assignment, rejecting two different values for the
    /// same variable. Duplicate identical facts are merged.
    pub fn from_facts(mut facts: Vec<Fact>) -> Result<Self, Fact> {
        facts.sort_unstable();
        facts.dedup();
        for w in facts.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(w[1]);
            }
        }
        Ok(PartialState(facts))
    }

    /// The empty assignment.
    pub fn empty() -> Self {
        PartialState(Vec::new())
    }

    /// Value assigned to `var`, if any.
    pub fn get(&self, var: VarId) -> Option<Value> {
        self.0
            .binary_search_by_key(&var, |f| f.0)
            .ok()
            .map(|i| self.0[i].1)
    }

    /// Whether `var` is assigned.
    pub fn has_var(&self, var: VarId) -> bool {
        self.get(var).is_some()
    }

    /// Whether the fact is part of this assignment.
    pub fn contains(&self, fact: Fact) -> bool {
        self.get(fact.0) == Some(fact.1)
    }

    /// Iterates over the facts in variable order.
    pub fn iter(&self) -> impl Iterator<Item = Fact> + '_ {
        self.0.iter().copied()
    }

    /// Iterates over the assigned variables in order.
    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().map(|f| f.0)
    }

    /// Number of assigned variables.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether no variable is assigned.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether every fact holds in the (total) state.
    pub fn holds_in(&self, s: &State) -> bool {
        self.0.iter().all(|&(v, d)| s.0[v] == d)
    }

    /// Restriction to the variables not satisfying `drop`.
    pub fn without_vars(&self, mut drop: impl FnMut(VarId) -> bool) -> PartialState {
        PartialState(self.0.iter().copied().filter(|f| !drop(f.0)).collect())
    }

    /// Raw facts slice.
    pub fn facts(&self) -> &[Fact] {
        &self.0
    }
}

/// A total assignment of values to all variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(pub Vec<Value>);

impl State {
    /// Value of `var` in this state.
    pub fn get(&self, var: VarId) -> Value {
        self.0[var]
    }
}

/// A finite-domain variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub domain: Vec<String>,
}

/// An operator: precondition and (nonempty) effect partial assignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub name: String,
    pub pre: PartialState,
    pub eff: PartialState,
}

impl Operator {
    /// The action-schema name: first whitespace-separated token of the name.
    pub fn schema(&self) -> &str {
        self.name.split_whitespace().next().unwrap_or("")
    }

    /// The prevail condition: precondition restricted to variables the
    /// operator does not affect.
    pub fn prevail(&self) -> PartialState {
        self.pre.without_vars(|v| self.eff.has_var(v))
    }
}

/// A validated planning task.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    variables: Vec<Variable>,
    init: State,
    goal: PartialState,
    operators: Vec<Operator>,
    offsets: Vec<usize>,
}

impl Task {
    /// Validates the components and builds a task.
    pub fn new(
        variables: Vec<Variable>,
        init: State,
        goal: PartialState,
        operators: Vec<Operator>,
    ) -> Result<Task, TaskError> {
        let mut names = HashSet::new();
        for v in &variables {
            if !names.insert(v.name.as_str()) {
                return Err(TaskError::DuplicateVariable(v.name.clone()));
            }
            if v.domain.len() < 2 {
                return Err(TaskError::DomainTooSmall {
                    var: v.name.clone(),
                    size: v.domain.len(),
                });
            }
            let mut vals = HashSet::new();
            for d in &v.domain {
                if !vals.insert(d.as_str()) {
                    return Err(TaskError::DuplicateValue {
                        var: v.name.clone(),
                        value: d.clone(),
                    });
                }
            }
        }
        if init.0.len() != variables.len() {
            return Err(TaskError::Invalid(format!(
                "initial state assigns {} values for {} variables",
                init.0.len(),
                variables.len()
            )));
        }
        let in_range = |f: Fact| f.0 < variables.len() && f.1 < variables[f.0].domain.len();
        for (v, &d) in init.0.iter().enumerate() {
            if !in_range((v, d)) {
                return Err(TaskError::Invalid(format!(
                    "initial value index {d} out of range for variable `{}`",
                    variables[v].name
                )));
            }
        }
        if !goal.iter().all(in_range) {
            return Err(TaskError::Invalid("goal refers to an undeclared fact".into()));
        }
        for o in &operators {
            if o.eff.is_empty() {
                return Err(TaskError::EmptyEffect(o.name.clone()));
            }
            if !o.pre.iter().chain(o.eff.iter()).all(in_range) {
                return Err(TaskError::Invalid(format!(
                    "operator `{}` refers to an undeclared fact",
                    o.name
                )));
            }
            for (v, d) in o.eff.iter() {
                if o.pre.get(v) == Some(d) {
                    return Err(TaskError::PreEqualsEff {
                        op: o.name.clone(),
                        var: variables[v].name.clone(),
                    });
                }
            }
        }
        let mut offsets = Vec::with_capacity(variables.len() + 1);
        let mut acc = 0;
        for v in &variables {
            offsets.push(acc);
            acc += v.domain.len();
        }
        offsets.push(acc);
        Ok(Task {
            variables,
            init,
            goal,
            operators,
            offsets,
        })
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn domain_size(&self, var: VarId) -> usize {
        self.variables[var].domain.len()
    }

    pub fn init(&self) -> &State {
        &self.init
    }

    pub fn goal(&self) -> &PartialState {
        &self.goal
    }

    pub fn operators(&self) -> &[Operator] {
        &self.operators
    }

    pub fn op(&self, o: OpId) -> &Operator {
        &self.operators[o]
    }

    pub fn num_ops(&self) -> usize {
        self.operators.len()
    }

    /// Looks up a variable by name.
    pub fn var_id(&self, name: &str) -> Option<VarId> {
        self.variables.iter().position(|v| v.name == name)
    }

    /// Looks up a value of `var` by name.
    pub fn value_id(&self, var: VarId, name: &str) -> Option<Value> {
        self.variables[var].domain.iter().position(|d| d == name)
    }

    /// Looks up an operator by its full name.
    pub fn op_id(&self, name: &str) -> Option<OpId> {
        self.operators.iter().position(|o| o.name == name)
    }

    /// Builds a fact from names, panicking on unknown identifiers; intended
    /// for tests and examples.
    pub fn fact(&self, var: &str, value: &str) -> Fact {
        let v = self
            .var_id(var)
            .unwrap_or_else(|| panic!("unknown variable `{var}`"));
        let d = self
            .value_id(v, value)
            .unwrap_or_else(|| panic!("unknown value `{value}` of `{var}`"));
        (v, d)
    }

    /// Builds a state from `(variable, value)` names, starting from the
    /// initial state for unmentioned variables.
    pub fn state_from(&self, assignment: &[(&str, &str)]) -> State {
        let mut s = self.init.clone();
        for (var, val) in assignment {
            let (v, d) = self.fact(var, val);
            s.0[v] = d;
        }
        s
    }

    /// Total number of facts.
    pub fn num_facts(&self) -> usize {
        self.offsets[self.variables.len()]
    }

    /// Dense index of a fact.
    pub fn fact_id(&self, fact: Fact) -> usize {
        self.offsets[fact.0] + fact.1
    }

    /// Inverse of [`Task::fact_id`].
    pub fn fact_of(&self, id: usize) -> Fact {
        let v = self.offsets.partition_point(|&o| o <= id) - 1;
        (v, id - self.offsets[v])
    }

    /// The facts of a state as a relaxed state.
    pub fn state_facts(&self, s: &State) -> FactSet {
        let mut f = FixedBitSet::with_capacity(self.num_facts());
        for (v, &d) in s.0.iter().enumerate() {
            f.insert(self.fact_id((v, d)));
        }
        f
    }

    /// Whether every fact of `p` is contained in the fact set.
    pub fn holds_in_facts(&self, p: &PartialState, f: &FactSet) -> bool {
        p.iter().all(|fact| f.contains(self.fact_id(fact)))
    }

    /// Whether `o` is applicable in `s` (`pre_o ⊆ s`).
    pub fn applicable(&self, s: &State, o: OpId) -> bool {
        self.operators[o].pre.holds_in(s)
    }

    /// Applies `o` to `s`.
    pub fn apply(&self, s: &State, o: OpId) -> Result<State, TaskError> {
        if !self.applicable(s, o) {
            return Err(TaskError::Inapplicable(self.operators[o].name.clone()));
        }
        Ok(self.apply_unchecked(s, o))
    }

    /// Applies `o` to `s` without checking the precondition.
    pub fn apply_unchecked(&self, s: &State, o: OpId) -> State {
        let mut next = s.clone();
        for (v, d) in self.operators[o].eff.iter() {
            next.0[v] = d;
        }
        next
    }

    /// Operators applicable in `s`, in declaration order.
    pub fn applicable_ops(&self, s: &State) -> Vec<OpId> {
        (0..self.operators.len())
            .filter(|&o| self.applicable(s, o))
            .collect()
    }

    /// Relaxed application: `f ∪ eff_o`.
    pub fn relaxed_apply(&self, f: &FactSet, o: OpId) -> Result<FactSet, TaskError> {
        if !self.holds_in_facts(&self.operators[o].pre, f) {
            return Err(TaskError::Inapplicable(self.operators[o].name.clone()));
        }
        let mut next = f.clone();
        self.add_effects(&mut next, o);
        Ok(next)
    }

    /// Adds the effects of `o` to `f` in place.
    pub fn add_effects(&self, f: &mut FactSet, o: OpId) {
        for fact in self.operators[o].eff.iter() {
            f.insert(self.fact_id(fact));
        }
    }

    /// Whether `s` satisfies the goal.
    pub fn is_goal(&self, s: &State) -> bool {
        self.goal.holds_in(s)
    }

    /// `var=value` rendering of a fact.
    pub fn fact_name(&self, (v, d): Fact) -> String {
        format!("{}={}", self.variables[v].name, self.variables[v].domain[d])
    }

    /// Name of a variable.
    pub fn var_name(&self, v: VarId) -> &str {
        &self.variables[v].name
    }

    /// Name of a value.
    pub fn value_name(&self, v: VarId, d: Value) -> &str {
        &self.variables[v].domain[d]
    }

    /// Canonical state key: `var=value` pairs sorted by variable name and
    /// joined with `;`.
    pub fn state_key(&self, s: &State) -> String {
        let mut parts: Vec<(&str, &str)> = s
            .0
            .iter()
            .enumerate()
            .map(|(v, &d)| (self.var_name(v), self.value_name(v, d)))
            .collect();
        parts.sort_unstable();
        parts
            .iter()
            .map(|(v, d)| format!("{v}={d}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Non-fatal observations about the task, such as duplicate operators.
    pub fn lint(&self) -> Vec<String> {
        let mut seen: BTreeMap<(&PartialState, &PartialState), &str> = BTreeMap::new();
        let mut warnings = Vec::new();
        for o in &self.operators {
            if let Some(first) = seen.insert((&o.pre, &o.eff), &o.name) {
                warnings.push(format!(
                    "operator `{}` duplicates operator `{first}`",
                    o.name
                ));
            }
        }
        warnings
    }

    /// Renders the task in the JSON task-file format.
    pub fn to_json(&self) -> String {
        let file = TaskFile::from_task(self);
        serde_json::to_string_pretty(&file).expect("task serialization cannot fail")
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "task with {} variables, {} operators, {} goal facts",
            self.num_vars(),
            self.num_ops(),
            self.goal.len()
        )
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TaskFile {
    variables: Vec<VariableFile>,
    init: BTreeMap<String, String>,
    goal: BTreeMap<String, String>,
    operators: Vec<OperatorFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VariableFile {
    name: String,
    domain: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorFile {
    name: String,
    #[serde(default)]
    pre: BTreeMap<String, String>,
    eff: BTreeMap<String, String>,
}

impl TaskFile {
    fn from_task(t: &Task) -> TaskFile {
        let assignment = |p: &PartialState| -> BTreeMap<String, String> {
            p.iter()
                .map(|(v, d)| (t.var_name(v).to_string(), t.value_name(v, d).to_string()))
                .collect()
        };
        TaskFile {
            variables: t
                .variables
                .iter()
                .map(|v| VariableFile {
                    name: v.name.clone(),
                    domain: v.domain.clone(),
                })
                .collect(),
            init: t
                .init
                .0
                .iter()
                .enumerate()
                .map(|(v, &d)| (t.var_name(v).to_string(), t.value_name(v, d).to_string()))
                .collect(),
            goal: assignment(&t.goal),
            operators: t
                .operators
                .iter()
                .map(|o| OperatorFile {
                    name: o.name.clone(),
                    pre: assignment(&o.pre),
                    eff: assignment(&o.eff),
                })
                .collect(),
        }
    }
}

/// Parses and validates a task file.
pub fn parse_task(text: &str) -> Result<Task, TaskError> {
    let file: TaskFile = serde_json::from_str(text).map_err(|e| TaskError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let variables: Vec<Variable> = file
        .variables
        .into_iter()
        .map(|v| Variable {
            name: v.name,
            domain: v.domain,
        })
        .collect();
    // Resolve names only after basic variable validation so errors about
    // malformed domains take precedence over lookup failures.
    let probe = Task::new(
        variables.clone(),
        State(vec![0; variables.len()]),
        PartialState::empty(),
        Vec::new(),
    )?;
    let resolve = |context: &str, map: &BTreeMap<String, String>| -> Result<PartialState, TaskError> {
        let mut facts = Vec::with_capacity(map.len());
        for (var, val) in map {
            let v = probe.var_id(var).ok_or_else(|| TaskError::UnknownVariable {
                context: context.to_string(),
                name: var.clone(),
            })?;
            let d = probe.value_id(v, val).ok_or_else(|| TaskError::UnknownValue {
                context: context.to_string(),
                var: var.clone(),
                value: val.clone(),
            })?;
            facts.push((v, d));
        }
        Ok(PartialState::from_facts(facts).expect("map keys are unique"))
    };
    let init_partial = resolve("init", &file.init)?;
    let mut init = vec![0; variables.len()];
    for (v, var) in variables.iter().enumerate() {
        init[v] = init_partial
            .get(v)
            .ok_or_else(|| TaskError::MissingInit(var.name.clone()))?;
    }
    let goal = resolve("goal", &file.goal)?;
    let mut operators = Vec::with_capacity(file.operators.len());
    for o in file.operators {
        let ctx = format!("operator `{}`", o.name);
        operators.push(Operator {
            pre: resolve(&ctx, &o.pre)?,
            eff: resolve(&ctx, &o.eff)?,
            name: o.name,
        });
    }
    Task::new(variables, State(init), goal, operators)
}

/// Operator name, precondition and effect, given by name.
type NamedOperator = (String, Vec<(String, String)>, Vec<(String, String)>);

/// Convenience builder used by generators: variables, operators and
/// assignments are given by name.
#[derive(Default)]
pub struct TaskBuilder {
    variables: Vec<Variable>,
    init: Vec<(String, String)>,
    goal: Vec<(String, String)>,
    operators: Vec<NamedOperator>,
}

impl TaskBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a variable with the given domain.
    pub fn var<S: Into<String>>(&mut self, name: impl Into<String>, domain: impl IntoIterator<Item = S>) -> &mut Self {
        self.variables.push(Variable {
            name: name.into(),
            domain: domain.into_iter().map(Into::into).collect(),
        });
        self
    }

    /// Sets an initial value.
    pub fn init(&mut self, var: impl Into<String>, val: impl Into<String>) -> &mut Self {
        self.init.push((var.into(), val.into()));
        self
    }

    /// Adds a goal fact.
    pub fn goal(&mut self, var: impl Into<String>, val: impl Into<String>) -> &mut Self {
        self.goal.push((var.into(), val.into()));
        self
    }

    /// Adds an operator with named precondition and effect facts.
    pub fn op(&mut self, name: impl Into<String>, pre: &[(&str, &str)], eff: &[(&str, &str)]) -> &mut Self {
        let conv = |xs: &[(&str, &str)]| xs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        self.operators.push((name.into(), conv(pre), conv(eff)));
        self
    }

    /// Adds an operator from owned or borrowed name pairs.
    pub fn op_with<K, V>(
        &mut self,
        name: impl Into<String>,
        pre: impl IntoIterator<Item = (K, V)>,
        eff: impl IntoIterator<Item = (K, V)>,
    ) -> &mut Self
    where
        K: Into<String>,
        V: Into<String>,
    {
        let conv = |xs: Vec<(K, V)>| xs.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        self.operators
            .push((name.into(), conv(pre.into_iter().collect()), conv(eff.into_iter().collect())));
        self
    }

    /// Resolves names and validates.
    pub fn build(&self) -> Result<Task, TaskError> {
        let to_map = |xs: &[(String, String)]| -> BTreeMap<String, String> { xs.iter().cloned().collect() };
        let file = TaskFile {
            variables: self
                .variables
                .iter()
                .map(|v| VariableFile {
                    name: v.name.clone(),
                    domain: v.domain.clone(),
                })
                .collect(),
            init: to_map(&self.init),
            goal: to_map(&self.goal),
            operators: self
                .operators
                .iter()
                .map(|(name, pre, eff)| OperatorFile {
                    name: name.clone(),
                    pre: to_map(pre),
                    eff: to_map(eff),
                })
                .collect(),
        };
        parse_task(&serde_json::to_string(&file).expect("builder serialization cannot fail"))
    }
}
