//! Core STRIPS data model: predicates, actions, atoms, states, problems.
//!
//! Everything is immutable after construction and cheap to clone at
//! household scale. Names are normalized to lowercase by the parser; the
//! structs themselves do not re-normalize.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Root of the type hierarchy when a type is declared without a parent.
pub const TYPE_OBJECT: &str = "object";

/// Predicate declaration: name plus parameter types (arity is implicit).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateSchema {
    pub name: String,
    pub param_types: Vec<String>,
}

impl PredicateSchema {
    pub fn arity(&self) -> usize {
        self.param_types.len()
    }
}

/// A term inside an action schema: a `?variable` or a constant name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Var(String),
    Const(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "?{v}"),
            Term::Const(c) => write!(f, "{c}"),
        }
    }
}

/// Unground atom appearing in action preconditions and effects.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchemaAtom {
    pub predicate: String,
    pub args: Vec<Term>,
}

/// Signed unground atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchemaLiteral {
    pub atom: SchemaAtom,
    pub positive: bool,
}

/// Typed action parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameter {
    pub name: String,
    pub ty: String,
}

/// STRIPS action schema with typed parameters, signed preconditions, and
/// positive add/delete effect sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSchema {
    pub name: String,
    pub params: Vec<Parameter>,
    pub preconditions: Vec<SchemaLiteral>,
    pub add_effects: Vec<SchemaAtom>,
    pub del_effects: Vec<SchemaAtom>,
}

/// A predicate applied to concrete objects, e.g. `on(cup, table)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroundAtom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl GroundAtom {
    pub fn new(predicate: impl Into<String>, args: &[&str]) -> Self {
        GroundAtom {
            predicate: predicate.into(),
            args: args.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.args.is_empty() {
            write!(f, "{}", self.predicate)
        } else {
            write!(f, "{}({})", self.predicate, self.args.join(", "))
        }
    }
}

/// Signed ground atom, used in goals and ground preconditions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroundLiteral {
    pub atom: GroundAtom,
    pub positive: bool,
}

impl GroundLiteral {
    pub fn pos(atom: GroundAtom) -> Self {
        GroundLiteral { atom, positive: true }
    }

    pub fn neg(atom: GroundAtom) -> Self {
        GroundLiteral { atom, positive: false }
    }
}

impl fmt::Display for GroundLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.atom)
        } else {
            write!(f, "not {}", self.atom)
        }
    }
}

/// Closed-world symbolic state: the set of atoms that hold. Anything
/// absent is false.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolicState {
    atoms: BTreeSet<GroundAtom>,
}

impl SymbolicState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = GroundAtom>) -> Self {
        SymbolicState { atoms: atoms.into_iter().collect() }
    }

    pub fn contains(&self, atom: &GroundAtom) -> bool {
        self.atoms.contains(atom)
    }

    pub fn insert(&mut self, atom: GroundAtom) -> bool {
        self.atoms.insert(atom)
    }

    pub fn remove(&mut self, atom: &GroundAtom) -> bool {
        self.atoms.remove(atom)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroundAtom> {
        self.atoms.iter()
    }

    pub fn atoms(&self) -> &BTreeSet<GroundAtom> {
        &self.atoms
    }

    pub fn union(&self, extra: impl IntoIterator<Item = GroundAtom>) -> SymbolicState {
        let mut out = self.clone();
        out.atoms.extend(extra);
        out
    }
}

impl FromIterator<GroundAtom> for SymbolicState {
    fn from_iter<T: IntoIterator<Item = GroundAtom>>(iter: T) -> Self {
        SymbolicState { atoms: iter.into_iter().collect() }
    }
}

/// Fully instantiated action: schema effects with objects substituted in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundAction {
    pub name: String,
    pub args: Vec<String>,
    pub preconditions: Vec<GroundLiteral>,
    pub add_effects: BTreeSet<GroundAtom>,
    pub del_effects: BTreeSet<GroundAtom>,
}

impl GroundAction {
    /// `name(arg, ...)` display form, also the sort key for deterministic
    /// tie-breaking in search.
    pub fn signature(&self) -> String {
        if self.args.is_empty() {
            self.name.clone()
        } else {
            format!("{}({})", self.name, self.args.join(", "))
        }
    }
}

impl fmt::Display for GroundAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signature())
    }
}

/// Planning domain: types, predicates, action schemas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub name: String,
    pub requirements: Vec<String>,
    /// Child type -> parent type. `object` is the implicit root.
    pub types: BTreeMap<String, String>,
    pub predicates: BTreeMap<String, PredicateSchema>,
    pub actions: BTreeMap<String, ActionSchema>,
}

impl Domain {
    pub fn predicate(&self, name: &str) -> Option<&PredicateSchema> {
        self.predicates.get(name)
    }

    pub fn action(&self, name: &str) -> Option<&ActionSchema> {
        self.actions.get(name)
    }

    /// True when `ty` equals `ancestor` or derives from it.
    pub fn is_subtype(&self, ty: &str, ancestor: &str) -> bool {
        if ancestor == TYPE_OBJECT || ty == ancestor {
            return true;
        }
        let mut cur = ty;
        while let Some(parent) = self.types.get(cur) {
            if parent == ancestor {
                return true;
            }
            if parent == TYPE_OBJECT {
                return false;
            }
            cur = parent;
        }
        false
    }
}

/// Planning problem: typed objects, initial state, signed goal literals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Problem {
    pub name: String,
    pub domain_name: String,
    /// Object name -> declared type.
    pub objects: BTreeMap<String, String>,
    pub init: SymbolicState,
    pub goal: BTreeSet<GroundLiteral>,
}

/// Ordered action sequence; cost is plan length.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Plan {
    pub actions: Vec<GroundAction>,
}

impl Plan {
    pub fn cost(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }
}

impl fmt::Display for Plan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.actions.iter().enumerate() {
            writeln!(f, "{i}: {a}")?;
        }
        Ok(())
    }
}
