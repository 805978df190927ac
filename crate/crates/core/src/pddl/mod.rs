//! STRIPS-with-typing PDDL subset: parsing, state-transition semantics,
//! forward-search planning, and plan validation.

mod ast;
pub mod ground;
pub mod parser;
pub mod search;
pub mod serialize;
pub mod validate;

pub use ast::{
    ActionSchema, Domain, GroundAction, GroundAtom, GroundLiteral, Parameter, Plan,
    PredicateSchema, Problem, SchemaAtom, SchemaLiteral, SymbolicState, Term, TYPE_OBJECT,
};
pub use ground::{applicable, apply, ground_action, ground_all_actions, satisfies, GroundError};
pub use parser::{parse_domain, parse_literal_text, parse_problem, ParseError};
pub use search::{plan, plan_problem, PlanFailure, PlannerConfig, SearchMode};
pub use serialize::{serialize_domain, serialize_problem};
pub use validate::{validate_plan, PlanViolation, ValidationReport};

#[cfg(test)]
mod planner_tests {
    use super::*;
    use std::collections::{BTreeMap, HashSet, VecDeque};

    const DOMAIN: &str = r#"
(define (domain mini)
  (:requirements :strips :typing :negative-preconditions)
  (:types item - object)
  (:predicates (inview ?o - item) (hand_empty) (inhand ?o - item) (on_table ?o - item) (wished ?o - item))
  (:action look
    :parameters (?o - item)
    :precondition (not (inview ?o))
    :effect (inview ?o))
  (:action grasp
    :parameters (?o - item)
    :precondition (and (inview ?o) (hand_empty) (on_table ?o))
    :effect (and (inhand ?o) (not (hand_empty)) (not (on_table ?o))))
  (:action put
    :parameters (?o - item)
    :precondition (inhand ?o)
    :effect (and (on_table ?o) (hand_empty) (not (inhand ?o)))))
"#;

    fn setup() -> (Domain, BTreeMap<String, String>) {
        let d = parse_domain(DOMAIN).unwrap();
        let mut objs = BTreeMap::new();
        for o in ["cup", "knife"] {
            objs.insert(o.to_string(), "item".to_string());
        }
        (d, objs)
    }

    /// Independent brute-force BFS over full symbolic states. Kept free of
    /// the planner's bitset machinery on purpose: it only uses the public
    /// applicable/apply operations.
    fn bfs_oracle(
        domain: &Domain,
        objects: &BTreeMap<String, String>,
        init: &SymbolicState,
        goal: &[GroundLiteral],
    ) -> Option<usize> {
        let actions = ground_all_actions(domain, objects);
        let mut seen: HashSet<SymbolicState> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(init.clone());
        queue.push_back((init.clone(), 0usize));
        while let Some((state, depth)) = queue.pop_front() {
            if satisfies(&state, goal) {
                return Some(depth);
            }
            for a in &actions {
                if applicable(&state, a) {
                    let next = apply(&state, a).unwrap();
                    if seen.insert(next.clone()) {
                        queue.push_back((next, depth + 1));
                    }
                }
            }
        }
        None
    }

    #[test]
    fn one_step_plan_matches_bfs_oracle() {
        let (d, objs) = setup();
        let init = SymbolicState::from_atoms([
            GroundAtom::new("on_table", &["cup"]),
            GroundAtom::new("hand_empty", &[]),
            GroundAtom::new("inview", &["cup"]),
        ]);
        let goal = [GroundLiteral::pos(GroundAtom::new("inhand", &["cup"]))];
        let p = plan(&d, &objs, &init, &goal, &PlannerConfig::optimal()).unwrap();
        assert_eq!(p.cost(), 1);
        assert_eq!(p.actions[0].signature(), "grasp(cup)");
        assert_eq!(bfs_oracle(&d, &objs, &init, &goal), Some(1));
    }

    #[test]
    fn satisfied_goal_yields_empty_plan() {
        let (d, objs) = setup();
        let init = SymbolicState::from_atoms([GroundAtom::new("hand_empty", &[])]);
        let goal = [GroundLiteral::pos(GroundAtom::new("hand_empty", &[]))];
        for config in [PlannerConfig::default(), PlannerConfig::optimal()] {
            assert!(plan(&d, &objs, &init, &goal, &config).unwrap().is_empty());
        }
    }

    #[test]
    fn unreachable_goal_is_proven_unsolvable() {
        let (d, objs) = setup();
        let init = SymbolicState::from_atoms([GroundAtom::new("hand_empty", &[])]);
        // No action ever adds `wished`.
        let goal = [GroundLiteral::pos(GroundAtom::new("wished", &["cup"]))];
        let err = plan(&d, &objs, &init, &goal, &PlannerConfig::optimal()).unwrap_err();
        assert!(matches!(err, PlanFailure::Unsolvable { .. }), "{err}");
        assert_eq!(bfs_oracle(&d, &objs, &init, &goal), None);
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let (d, objs) = setup();
        let init = SymbolicState::from_atoms([GroundAtom::new("hand_empty", &[])]);
        let goal = [GroundLiteral::pos(GroundAtom::new("wished", &["cup"]))];
        let config = PlannerConfig { mode: SearchMode::Optimal, node_budget: 1 };
        let err = plan(&d, &objs, &init, &goal, &config).unwrap_err();
        assert_eq!(err, PlanFailure::BudgetExhausted { budget: 1 });
    }

    #[test]
    fn greedy_plans_validate_and_optimal_matches_oracle() {
        let (d, objs) = setup();
        let init = SymbolicState::from_atoms([
            GroundAtom::new("on_table", &["cup"]),
            GroundAtom::new("on_table", &["knife"]),
            GroundAtom::new("hand_empty", &[]),
        ]);
        let goal = [
            GroundLiteral::pos(GroundAtom::new("inhand", &["knife"])),
            GroundLiteral::pos(GroundAtom::new("inview", &["cup"])),
        ];
        for config in [PlannerConfig::default(), PlannerConfig::optimal()] {
            let p = plan(&d, &objs, &init, &goal, &config).unwrap();
            assert!(validate_plan(&init, &p, &goal).valid, "mode {:?}", config.mode);
        }
        let optimal = plan(&d, &objs, &init, &goal, &PlannerConfig::optimal()).unwrap();
        assert_eq!(Some(optimal.cost()), bfs_oracle(&d, &objs, &init, &goal));
    }

    #[test]
    fn plans_are_deterministic() {
        let (d, objs) = setup();
        let init = SymbolicState::from_atoms([
            GroundAtom::new("on_table", &["cup"]),
            GroundAtom::new("on_table", &["knife"]),
            GroundAtom::new("hand_empty", &[]),
        ]);
        let goal = [GroundLiteral::pos(GroundAtom::new("inhand", &["cup"]))];
        let first = plan(&d, &objs, &init, &goal, &PlannerConfig::default()).unwrap();
        for _ in 0..5 {
            let again = plan(&d, &objs, &init, &goal, &PlannerConfig::default()).unwrap();
            assert_eq!(first, again);
        }
    }

    #[test]
    fn negative_goal_literals_supported() {
        let (d, objs) = setup();
        let init = SymbolicState::from_atoms([
            GroundAtom::new("inhand", &["cup"]),
        ]);
        let goal = [
            GroundLiteral::neg(GroundAtom::new("inhand", &["cup"])),
            GroundLiteral::pos(GroundAtom::new("on_table", &["cup"])),
        ];
        let p = plan(&d, &objs, &init, &goal, &PlannerConfig::optimal()).unwrap();
        assert_eq!(p.cost(), 1);
        assert!(validate_plan(&init, &p, &goal).valid);
    }
}
