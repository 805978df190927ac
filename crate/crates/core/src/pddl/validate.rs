//! Plan validation: sequential applicability plus goal satisfaction,
//! reporting the first violation index. Serves as the oracle for the
//! executor's state bookkeeping.

use super::ast::*;
use super::ground::{applicable, apply_unchecked, satisfies};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanViolation {
    /// Action at this index was not applicable in the state it met.
    InapplicableAction(usize),
    /// All actions applied but the final state misses the goal; the index
    /// equals the plan length.
    GoalUnsatisfied(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub violation: Option<PlanViolation>,
}

impl ValidationReport {
    pub fn first_failure_index(&self) -> Option<usize> {
        match self.violation {
            Some(PlanViolation::InapplicableAction(i)) => Some(i),
            Some(PlanViolation::GoalUnsatisfied(i)) => Some(i),
            None => None,
        }
    }
}

/// Validate `plan` from `init` against `goal`.
pub fn validate_plan(init: &SymbolicState, plan: &Plan, goal: &[GroundLiteral]) -> ValidationReport {
    let mut state = init.clone();
    for (i, action) in plan.actions.iter().enumerate() {
        if !applicable(&state, action) {
            return ValidationReport {
                valid: false,
                violation: Some(PlanViolation::InapplicableAction(i)),
            };
        }
        state = apply_unchecked(&state, action);
    }
    if satisfies(&state, goal) {
        ValidationReport { valid: true, violation: None }
    } else {
        ValidationReport {
            valid: false,
            violation: Some(PlanViolation::GoalUnsatisfied(plan.actions.len())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pddl::parser::parse_domain;
    use crate::pddl::ground::ground_action;
    use std::collections::BTreeMap;

    fn fixture() -> (Domain, BTreeMap<String, String>, SymbolicState) {
        let d = parse_domain(
            r#"(define (domain mini)
                 (:requirements :strips :typing :negative-preconditions)
                 (:types item - object)
                 (:predicates (inview ?o - item) (hand_empty) (inhand ?o - item) (stowed ?o - item))
                 (:action look
                   :parameters (?o - item)
                   :precondition (not (inview ?o))
                   :effect (inview ?o))
                 (:action grasp
                   :parameters (?o - item)
                   :precondition (and (inview ?o) (hand_empty))
                   :effect (and (inhand ?o) (not (hand_empty))))
                 (:action stow
                   :parameters (?o - item)
                   :precondition (inhand ?o)
                   :effect (and (stowed ?o) (hand_empty) (not (inhand ?o)))))"#,
        )
        .unwrap();
        let mut objects = BTreeMap::new();
        objects.insert("cup".to_string(), "item".to_string());
        let init = SymbolicState::from_atoms([GroundAtom::new("hand_empty", &[])]);
        (d, objects, init)
    }

    #[test]
    fn valid_sequence_passes() {
        let (d, objs, init) = fixture();
        let plan = Plan {
            actions: vec![
                ground_action(&d, &objs, "look", &["cup"]).unwrap(),
                ground_action(&d, &objs, "grasp", &["cup"]).unwrap(),
                ground_action(&d, &objs, "stow", &["cup"]).unwrap(),
            ],
        };
        let goal = [GroundLiteral::pos(GroundAtom::new("stowed", &["cup"]))];
        let report = validate_plan(&init, &plan, &goal);
        assert!(report.valid);
        assert_eq!(report.first_failure_index(), None);
    }

    #[test]
    fn swapped_dependent_actions_fail_at_swap_index() {
        let (d, objs, init) = fixture();
        // grasp before look: grasp needs inview which look provides.
        let plan = Plan {
            actions: vec![
                ground_action(&d, &objs, "grasp", &["cup"]).unwrap(),
                ground_action(&d, &objs, "look", &["cup"]).unwrap(),
            ],
        };
        let goal = [GroundLiteral::pos(GroundAtom::new("inhand", &["cup"]))];
        let report = validate_plan(&init, &plan, &goal);
        assert!(!report.valid);
        assert_eq!(
            report.violation,
            Some(PlanViolation::InapplicableAction(0))
        );
    }

    #[test]
    fn empty_plan_with_satisfied_goal() {
        let (_, _, init) = fixture();
        let goal = [GroundLiteral::pos(GroundAtom::new("hand_empty", &[]))];
        let report = validate_plan(&init, &Plan::default(), &goal);
        assert!(report.valid);
    }

    #[test]
    fn goal_unsatisfied_reports_plan_length() {
        let (d, objs, init) = fixture();
        let plan = Plan {
            actions: vec![ground_action(&d, &objs, "look", &["cup"]).unwrap()],
        };
        let goal = [GroundLiteral::pos(GroundAtom::new("inhand", &["cup"]))];
        let report = validate_plan(&init, &plan, &goal);
        assert_eq!(report.violation, Some(PlanViolation::GoalUnsatisfied(1)));
    }
}
