//! Grounding and state-transition semantics.

use super::ast::*;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GroundError {
    #[error("action {action} is not applicable: {literal} does not hold")]
    PreconditionViolated { action: String, literal: String },
    #[error("unknown object `{0}` in grounding")]
    UnknownObject(String),
    #[error("unknown action schema `{0}`")]
    UnknownAction(String),
    #[error("action {action} expects {want} arguments, got {got}")]
    ArgCount { action: String, want: usize, got: usize },
    #[error("argument {object} of type {object_type} does not satisfy parameter type {param_type}")]
    ArgType { object: String, object_type: String, param_type: String },
}

/// True iff every positive precondition is in `state` and no negative
/// precondition is.
pub fn applicable(state: &SymbolicState, action: &GroundAction) -> bool {
    action.preconditions.iter().all(|lit| state.contains(&lit.atom) == lit.positive)
}

/// STRIPS successor: `(state \ del) ∪ add`. Errors when the action's
/// preconditions do not hold.
pub fn apply(state: &SymbolicState, action: &GroundAction) -> Result<SymbolicState, GroundError> {
    if let Some(lit) = action
        .preconditions
        .iter()
        .find(|lit| state.contains(&lit.atom) != lit.positive)
    {
        return Err(GroundError::PreconditionViolated {
            action: action.signature(),
            literal: lit.to_string(),
        });
    }
    Ok(apply_unchecked(state, action))
}

/// Successor without the applicability check; used by search where
/// applicability was already established.
pub fn apply_unchecked(state: &SymbolicState, action: &GroundAction) -> SymbolicState {
    let mut atoms: BTreeSet<GroundAtom> = state.atoms().clone();
    for atom in &action.del_effects {
        atoms.remove(atom);
    }
    for atom in &action.add_effects {
        atoms.insert(atom.clone());
    }
    SymbolicState::from_atoms(atoms)
}

/// True iff all positive goal literals hold in `state` and no negative
/// goal literal does.
pub fn satisfies<'a>(
    state: &SymbolicState,
    goal: impl IntoIterator<Item = &'a GroundLiteral>,
) -> bool {
    goal.into_iter().all(|lit| state.contains(&lit.atom) == lit.positive)
}

fn substitute(atom: &SchemaAtom, binding: &BTreeMap<&str, &str>) -> GroundAtom {
    GroundAtom {
        predicate: atom.predicate.clone(),
        args: atom
            .args
            .iter()
            .map(|t| match t {
                Term::Var(v) => binding[v.as_str()].to_string(),
                Term::Const(c) => c.clone(),
            })
            .collect(),
    }
}

/// Instantiate one schema with the given argument objects, checking arity
/// and types against the domain's hierarchy.
pub fn ground_action(
    domain: &Domain,
    objects: &BTreeMap<String, String>,
    name: &str,
    args: &[&str],
) -> Result<GroundAction, GroundError> {
    let schema = domain.action(name).ok_or_else(|| GroundError::UnknownAction(name.into()))?;
    if schema.params.len() != args.len() {
        return Err(GroundError::ArgCount {
            action: name.into(),
            want: schema.params.len(),
            got: args.len(),
        });
    }
    let mut binding: BTreeMap<&str, &str> = BTreeMap::new();
    for (param, obj) in schema.params.iter().zip(args) {
        let obj_ty = objects
            .get(*obj)
            .ok_or_else(|| GroundError::UnknownObject(obj.to_string()))?;
        if !domain.is_subtype(obj_ty, &param.ty) {
            return Err(GroundError::ArgType {
                object: obj.to_string(),
                object_type: obj_ty.clone(),
                param_type: param.ty.clone(),
            });
        }
        binding.insert(param.name.as_str(), obj);
    }
    Ok(instantiate(schema, args, &binding))
}

fn instantiate(schema: &ActionSchema, args: &[&str], binding: &BTreeMap<&str, &str>) -> GroundAction {
    GroundAction {
        name: schema.name.clone(),
        args: args.iter().map(|s| s.to_string()).collect(),
        preconditions: schema
            .preconditions
            .iter()
            .map(|lit| GroundLiteral {
                atom: substitute(&lit.atom, binding),
                positive: lit.positive,
            })
            .collect(),
        add_effects: schema.add_effects.iter().map(|a| substitute(a, binding)).collect(),
        del_effects: schema.del_effects.iter().map(|a| substitute(a, binding)).collect(),
    }
}

/// All type-correct ground instances of every schema, sorted by
/// `(name, args)` so downstream search expands deterministically.
pub fn ground_all_actions(domain: &Domain, objects: &BTreeMap<String, String>) -> Vec<GroundAction> {
    let mut out = Vec::new();
    let object_list: Vec<(&String, &String)> = objects.iter().collect();
    for schema in domain.actions.values() {
        let mut candidate_args: Vec<Vec<&str>> = vec![Vec::new()];
        for param in &schema.params {
            let mut next = Vec::new();
            for partial in &candidate_args {
                for (obj, ty) in &object_list {
                    if domain.is_subtype(ty, &param.ty) {
                        let mut ext = partial.clone();
                        ext.push(obj.as_str());
                        next.push(ext);
                    }
                }
            }
            candidate_args = next;
        }
        for args in candidate_args {
            let binding: BTreeMap<&str, &str> = schema
                .params
                .iter()
                .map(|p| p.name.as_str())
                .zip(args.iter().copied())
                .collect();
            out.push(instantiate(schema, &args, &binding));
        }
    }
    out.sort_by(|a, b| (&a.name, &a.args).cmp(&(&b.name, &b.args)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pddl::parser::parse_domain;

    fn mini() -> (Domain, BTreeMap<String, String>) {
        let d = parse_domain(
            r#"(define (domain mini)
                 (:requirements :strips :typing :negative-preconditions)
                 (:types item - object)
                 (:predicates (inview ?o - item) (hand_empty) (inhand ?o - item))
                 (:action grasp
                   :parameters (?o - item)
                   :precondition (and (inview ?o) (hand_empty))
                   :effect (and (inhand ?o) (not (hand_empty)))))"#,
        )
        .unwrap();
        let mut objects = BTreeMap::new();
        objects.insert("cup".to_string(), "item".to_string());
        objects.insert("knife".to_string(), "item".to_string());
        (d, objects)
    }

    #[test]
    fn applicability_follows_preconditions() {
        let (d, objs) = mini();
        let grasp_cup = ground_action(&d, &objs, "grasp", &["cup"]).unwrap();
        let state = SymbolicState::from_atoms([
            GroundAtom::new("inview", &["cup"]),
            GroundAtom::new("hand_empty", &[]),
        ]);
        assert!(applicable(&state, &grasp_cup));
        assert!(!applicable(&SymbolicState::new(), &grasp_cup));

        let holding = SymbolicState::from_atoms([
            GroundAtom::new("inview", &["knife"]),
            GroundAtom::new("inhand", &["cup"]),
        ]);
        let grasp_knife = ground_action(&d, &objs, "grasp", &["knife"]).unwrap();
        assert!(!applicable(&holding, &grasp_knife));
    }

    #[test]
    fn apply_matches_set_formula() {
        let (d, objs) = mini();
        let grasp = ground_action(&d, &objs, "grasp", &["cup"]).unwrap();
        let state = SymbolicState::from_atoms([
            GroundAtom::new("inview", &["cup"]),
            GroundAtom::new("hand_empty", &[]),
        ]);
        let next = apply(&state, &grasp).unwrap();
        assert!(next.contains(&GroundAtom::new("inhand", &["cup"])));
        assert!(!next.contains(&GroundAtom::new("hand_empty", &[])));
        // |state'| = |state| - |del ∩ state| + |add \ state|
        assert_eq!(next.len(), state.len() - 1 + 1);

        let err = apply(&SymbolicState::new(), &grasp).unwrap_err();
        assert!(matches!(err, GroundError::PreconditionViolated { .. }));
    }

    #[test]
    fn apply_with_empty_effects_is_identity() {
        let action = GroundAction {
            name: "noop".into(),
            args: vec![],
            preconditions: vec![],
            add_effects: BTreeSet::new(),
            del_effects: BTreeSet::new(),
        };
        let state = SymbolicState::from_atoms([GroundAtom::new("p", &["a"])]);
        assert_eq!(apply(&state, &action).unwrap(), state);
    }

    #[test]
    fn satisfies_goal_semantics() {
        let state = SymbolicState::from_atoms([GroundAtom::new("inhand", &["cup"])]);
        let pos = [GroundLiteral::pos(GroundAtom::new("inhand", &["cup"]))];
        assert!(satisfies(&state, &pos));
        // Empty goal is vacuously true.
        assert!(satisfies(&state, &[]));
        let neg = [GroundLiteral::neg(GroundAtom::new("inhand", &["cup"]))];
        assert!(!satisfies(&state, &neg));
    }

    #[test]
    fn grounding_respects_types() {
        let (d, mut objs) = mini();
        objs.insert("shelf".to_string(), "object".to_string());
        let err = ground_action(&d, &objs, "grasp", &["shelf"]).unwrap_err();
        assert!(matches!(err, GroundError::ArgType { .. }));
        let all = ground_all_actions(&d, &objs);
        // Only the two items ground the single-parameter grasp schema.
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].args, vec!["cup".to_string()]);
    }
}
